#pragma once

// Horizontal-segment scans and line/curve witnesses near a base point.
//
// For a scale k the relevant objects live over t in [-k, k]:
//  * heights b with [-k, k] x {b} inside D (admissible heights),
//  * affine graphs t -> c t + d inside D with |c t + d - a2| <= 1/k,
//  * polynomial graphs with the same bound.

#include "tubehyp/geometry.hpp"
#include "tubehyp/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tubehyp {

/// Open interval (lo, hi); hi unset means +infinity.
struct OpenInterval {
  Rational lo;
  std::optional<Rational> hi;

  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Sorted, pairwise disjoint union of nonempty open intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(OpenInterval single);

  const std::vector<OpenInterval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  bool contains(const Rational& x) const;

  /// Removes a closed interval [lo, hi] (lo <= hi).
  void subtract_closed(const Rational& lo, const Rational& hi);

  /// Distance from x to the closure; nothing when the set is empty.
  std::optional<Rational> distance_to(const Rational& x) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<OpenInterval> intervals_;
};

/// Exact set of heights b for which the closed segment [-k, k] x {b} lies in D
/// (conservative for bumps). Polygonal bases too narrow for [-k, k] give the
/// empty set.
IntervalSet admissible_heights(const Domain& domain, long k);

struct LoebRecord {
  long k = 0;
  IntervalSet admissible;
  /// Distance from a2 to the admissible set; nothing means infinite.
  std::optional<Rational> gap;
};

enum class LoebVerdict { condition_holds_up_to_kmax, condition_fails_at };

struct LoebReport {
  Point2 a;
  long k_max = 0;
  std::vector<LoebRecord> records;
  LoebVerdict verdict = LoebVerdict::condition_holds_up_to_kmax;
  long failing_k = 0;  // set when verdict is condition_fails_at
  bool loeb_normalized = false;
};

/// Scans k = 1..k_max with the schedule gap <= 1/k. Throws
/// Error(point_not_in_domain) when a is outside D.
LoebReport loeb_scan(const Domain& domain, const Point2& a, long k_max);

/// Graph of t -> c t + d over [-k, k] near the base point a.
struct AffineWitness {
  long k = 1;
  Rational c;
  Rational d;
  Point2 a;

  friend bool operator==(const AffineWitness&, const AffineWitness&) = default;
};

enum class WitnessFailure { none, bound_violation, containment_violation };

struct WitnessVerdict {
  WitnessFailure failure = WitnessFailure::none;
  /// Parameter t where the failure was located (approximate for irrational roots).
  std::optional<Rational> t;
  /// Point of the graph outside D, for containment violations.
  std::optional<Point2> point;
  std::string detail;

  bool valid() const noexcept { return failure == WitnessFailure::none; }
};

WitnessVerdict verify_affine_witness(const Domain& domain, const AffineWitness& witness);

struct WitnessSearchOptions {
  int grid = 201;
};

/// Deterministic search: the horizontal line through a, then lines through
/// pairs of perturbed obstacle endpoints, then a grid over the diamond
/// k|c| + |d - a2| <= 1/k. Within a stage candidates are tried by increasing
/// |c|, then |d - a2|. Throws Error(point_not_in_domain).
std::optional<AffineWitness> find_affine_witness(const Domain& domain, const Point2& a, long k,
                                                 const WitnessSearchOptions& options = {});

inline constexpr int kMaxCurveDegree = 8;

/// Polynomial graph t -> sum coeffs[i] t^i over [-k, k].
struct CurveWitness {
  long k = 1;
  Point2 a;
  std::vector<Rational> coeffs;
};

/// Exact: bound via Sturm root isolation, containment via exact crossings with
/// slit and polygon edges; bumps are checked conservatively. Throws
/// Error(degree_too_high) above degree 8.
WitnessVerdict verify_curve_witness(const Domain& domain, const CurveWitness& witness);

}  // namespace tubehyp
