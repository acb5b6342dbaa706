#pragma once

// Line-oriented text format for tube bases (".dom" files).
//
//   # comment
//   domain "fig1"              optional header, first declaration
//   strip 0 2                  | halfplane LO | polybase (x, y) (x, y) (x, y)...
//   slit -1 1 2                x1 lo hi
//   polygon (0, 1/2) (1, 1/2) (1/2, 3/4)
//   bump top x0=-1 w=1/2 h=1
//
// Numbers are decimals or p/q fractions and are read as exact rationals.

#include "tubehyp/geometry.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace tubehyp {

struct DomainSpecSource {
  std::string text;
  std::string origin = "<inline>";
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string origin, int line, int column, std::string message, std::string snippet);

  const std::string& origin() const noexcept { return origin_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& snippet() const noexcept { return snippet_; }

 private:
  std::string origin_;
  int line_;
  int column_;
  std::string message_;
  std::string snippet_;
};

Domain parse_domain(const DomainSpecSource& source);

/// Canonical text: header, base, then obstacles in canonical order; LF endings.
std::string serialize_domain(const Domain& domain);

/// Parameters of the smooth two-bump variant.
struct SmoothVariantParams {
  Rational top_x0 = -1;
  Rational top_w = Rational(1, 2);
  Rational top_h = 1;
  Rational bottom_x0 = 1;
  Rational bottom_w = Rational(1, 2);
  Rational bottom_h = 1;
  /// Reject heights that push a bump past the midline {x2 = 1}.
  bool touch = true;
};

/// "fig1", "fig2-smooth", "strip", "square". Throws Error(unknown_builtin) or
/// Error(bad_params).
Domain builtin(std::string_view name, const SmoothVariantParams& params = {});

}  // namespace tubehyp
