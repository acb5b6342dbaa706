#pragma once

// Shared generators for property tests.

#include "tubehyp/geometry.hpp"

#include <random>
#include <vector>

namespace tubehyp::testing {

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 16)
{
  std::uniform_int_distribution<long> den_dist(1, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
  Rational r(num_dist(rng), den);
  r.canonicalize();
  return r;
}

inline Point2 random_point(std::mt19937_64& rng, long lo1, long hi1, long lo2, long hi2, long max_den = 16)
{
  return {random_rational(rng, lo1, hi1, max_den), random_rational(rng, lo2, hi2, max_den)};
}

/// Random valid domain over a strip, half-plane or square base, with slits
/// and axis-aligned or triangular polygon obstacles.
inline Domain random_polygonal_domain(std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> pick(0, 2);
  const int base_kind = pick(rng);
  ConvexBase base;
  if (base_kind == 0)
    base = Strip{0, 2};
  else if (base_kind == 1)
    base = HalfPlane{Rational(-1, 2)};
  else
    base = ConvexPolygon{{{-3, 0}, {3, 0}, {3, 2}, {-3, 2}}};

  std::vector<Obstacle> obstacles;
  std::uniform_int_distribution<int> count(0, 4);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (pick(rng) != 0) {
      Rational x1 = random_rational(rng, -3, 3, 4);
      Rational lo = random_rational(rng, 0, 1, 4);
      Rational hi = lo + random_rational(rng, 1, 4, 4) / 4;
      if (hi > 2) hi = 2;
      obstacles.push_back(VerticalSlit{x1, lo, hi});
    } else {
      Rational x = random_rational(rng, -3, 2, 4);
      Rational y = random_rational(rng, 0, 1, 4);
      Rational s = Rational(1, 4) + random_rational(rng, 0, 1, 4) / 2;
      if (pick(rng) == 0)
        obstacles.push_back(Polygon{{{x, y}, {x + s, y}, {x + s, y + s}, {x, y + s}}});
      else
        obstacles.push_back(Polygon{{{x, y}, {x + s, y}, {x + s / 2, y + s}}});
    }
  }
  return Domain(base, obstacles, "random");
}

}  // namespace tubehyp::testing
