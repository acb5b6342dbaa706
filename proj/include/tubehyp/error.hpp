#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace tubehyp {

enum class Errc {
  invalid_domain,
  hull_undecidable,
  unknown_builtin,
  bad_params,
  point_not_in_domain,
  unsupported_base,
  invalid_witness,
  empty_source,
  witness_invalid,
  containment_fails,
  degree_too_high,
  zero_vector,
  unbounded_viewport,
  invalid_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<long> k = std::nullopt)
      : std::runtime_error(message), code_(code), k_(k)
  {
  }

  Errc code() const noexcept { return code_; }
  /// Scale index the failure refers to, when there is one.
  std::optional<long> k() const noexcept { return k_; }

 private:
  Errc code_;
  std::optional<long> k_;
};

}  // namespace tubehyp
