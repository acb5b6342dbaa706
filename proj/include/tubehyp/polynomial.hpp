#pragma once

// Univariate polynomials over Q with exact real-root counting (Sturm chains).

#include "tubehyp/rational.hpp"

#include <optional>
#include <vector>

namespace tubehyp {

class Polynomial {
 public:
  Polynomial() = default;
  /// coeffs[i] multiplies t^i. Trailing zeros are dropped.
  explicit Polynomial(std::vector<Rational> coeffs);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({0, 1}); }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// p / gcd(p, p'): same distinct roots, all simple.
Polynomial squarefree_part(const Polynomial& p);

/// Sturm chain of a squarefree polynomial.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& squarefree);

  int variations(const Rational& x) const;
  /// Number of distinct roots in (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  const Polynomial& base() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

/// Some root of p in the closed interval [lo, hi], located to within `width`
/// (exact when the root is found at a rational probe point). Nothing when p
/// has no root there. The zero polynomial reports lo.
std::optional<Rational> root_in(const Polynomial& p, const Rational& lo, const Rational& hi,
                                const Rational& width = Rational(1, 1000000000000L));

/// A point of [lo, hi] where p < 0, or nothing when p >= 0 on the whole interval.
std::optional<Rational> negative_point(const Polynomial& p, const Rational& lo, const Rational& hi);

}  // namespace tubehyp
