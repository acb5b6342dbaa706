#include "doctest.h"
#include "support.hpp"
#include "tubehyp/dsl.hpp"
#include "tubehyp/error.hpp"
#include "tubehyp/geometry.hpp"

#include <cmath>

using namespace tubehyp;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

Segment2 closed_segment(Point2 p, Point2 q) { return {std::move(p), std::move(q), Openness::closed}; }

}  // namespace

TEST_CASE("contains on the slit domain")
{
  const Domain fig1 = builtin("fig1");
  CHECK(contains(fig1, {0, 1}));
  CHECK_FALSE(contains(fig1, {-1, q(3, 2)}));
  CHECK_FALSE(contains(fig1, {0, -1}));
  CHECK_FALSE(contains(fig1, {1, q(1, 2)}));
  // Slit endpoints are part of the removed closed sets.
  CHECK_FALSE(contains(fig1, {-1, 1}));
  CHECK_FALSE(contains(fig1, {1, 1}));
  CHECK(contains(fig1, {-1, q(99, 100)}));
  CHECK(contains(fig1, {1, q(101, 100)}));
  CHECK_FALSE(contains(fig1, {5, 2}));
}

TEST_CASE("segment_in_domain examples")
{
  const Domain fig1 = builtin("fig1");

  auto hit = segment_in_domain(fig1, closed_segment({-1, 1}, {1, 1}));
  REQUIRE_FALSE(hit.inside);
  REQUIRE(hit.witness);
  CHECK(*hit.witness == Point2{-1, 1});

  CHECK(segment_in_domain(fig1, closed_segment({-2, q(3, 4)}, {2, q(5, 4)})).inside);
  CHECK(segment_in_domain(fig1, closed_segment({0, 1}, {0, 1})).inside);

  // The open version of a segment whose endpoints touch the slits.
  CHECK(segment_in_domain(fig1, {{-1, 1}, {1, 1}, Openness::open}).inside);
  // Open segment running along the base boundary.
  CHECK_FALSE(segment_in_domain(fig1, {{2, 0}, {3, 0}, Openness::open}).inside);
  // Open segment grazing a slit in its interior.
  CHECK_FALSE(segment_in_domain(fig1, {{-2, q(3, 2)}, {0, q(3, 2)}, Openness::open}).inside);
}

TEST_CASE("segment collinear with a slit")
{
  const Domain fig1 = builtin("fig1");
  auto v = segment_in_domain(fig1, closed_segment({-1, q(1, 2)}, {-1, q(3, 2)}));
  REQUIRE_FALSE(v.inside);
  CHECK(*v.witness == Point2{-1, 1});
  CHECK(segment_in_domain(fig1, closed_segment({-1, q(1, 4)}, {-1, q(3, 4)})).inside);
}

TEST_CASE("polygon obstacles")
{
  const Domain d(Strip{0, 2}, {Polygon{{{0, q(1, 2)}, {1, q(1, 2)}, {1, q(3, 2)}, {0, q(3, 2)}}}});
  CHECK_FALSE(contains(d, {q(1, 2), 1}));
  CHECK_FALSE(contains(d, {0, 1}));
  CHECK(contains(d, {-q(1, 100), 1}));
  auto v = segment_in_domain(d, closed_segment({-1, 1}, {2, 1}));
  REQUIRE_FALSE(v.inside);
  CHECK(*v.witness == Point2{0, 1});
  CHECK(segment_in_domain(d, closed_segment({-1, q(1, 4)}, {2, q(1, 4)})).inside);
  CHECK(segment_in_domain(d, closed_segment({-1, q(1, 2)}, {-q(1, 2), q(1, 2)})).inside);
  // Ending exactly on a vertex touches the closed polygon.
  CHECK_FALSE(segment_in_domain(d, closed_segment({-1, q(1, 2)}, {0, q(1, 2)})).inside);
  CHECK(segment_in_domain(d, {{-1, q(1, 2)}, {0, q(1, 2)}, Openness::open}).inside);
  CHECK_FALSE(segment_in_domain(d, closed_segment({-1, 0 + q(1, 4)}, {1, q(3, 4)})).inside);
}

TEST_CASE("ellipse_in_domain examples")
{
  const Domain fig1 = builtin("fig1");
  const Domain strip = builtin("strip");
  CHECK(ellipse_in_domain(fig1, {{0, 1}, {3, q(1, 3)}, {0, 0}}));
  CHECK(ellipse_in_domain(strip, {{0, 1}, {0, 1}, {1, 0}}));
  CHECK_FALSE(ellipse_in_domain(strip, {{0, 1}, {0, 2}, {0, 0}}));

  // Nondegenerate ellipses against slits.
  CHECK_FALSE(ellipse_in_domain(fig1, {{0, 1}, {2, 0}, {0, q(1, 2)}}));
  CHECK(ellipse_in_domain(fig1, {{0, 1}, {1, 0}, {0, q(1, 2)}}));
  // The open unit disk at (0,1) has both slit tips on its boundary circle.
  CHECK(ellipse_in_domain(fig1, {{0, 1}, {1, 0}, {0, 1}}));
  CHECK_FALSE(ellipse_in_domain(fig1, {{0, 1}, {q(101, 100), 0}, {0, 1}}));
  // Ellipse swallowed by a polygon obstacle.
  const Domain box(Strip{0, 2}, {Polygon{{{-2, q(1, 4)}, {2, q(1, 4)}, {2, q(7, 4)}, {-2, q(7, 4)}}}});
  CHECK_FALSE(ellipse_in_domain(box, {{0, 1}, {q(1, 10), 0}, {0, q(1, 10)}}));
}

TEST_CASE("collinear ellipse axes use the exact irrational half-length")
{
  const Domain strip = builtin("strip");
  // u = v = (0, 1/2): the set is the open vertical segment of half-length sqrt(2)/2 < 1.
  CHECK(ellipse_in_domain(strip, {{0, 1}, {0, q(1, 2)}, {0, q(1, 2)}}));
  // u = v = (0, 3/4): half-length 3 sqrt(2)/4 > 1.
  CHECK_FALSE(ellipse_in_domain(strip, {{0, 1}, {0, q(3, 4)}, {0, q(3, 4)}}));
  // u = (0, 3/5), v = (0, 4/5): half-length exactly 1, open segment stays inside.
  CHECK(ellipse_in_domain(strip, {{0, 1}, {0, q(3, 5)}, {0, q(4, 5)}}));
  CHECK(ellipse_in_domain(strip, {{0, 1}, {0, 0}, {0, 0}}));
  CHECK_FALSE(ellipse_in_domain(builtin("fig1"), {{-1, q(3, 2)}, {0, 0}, {0, 0}}));
}

TEST_CASE("hull_classify")
{
  auto r = hull_classify(builtin("fig1"));
  CHECK(r.kind == HullCase::case_i);
  CHECK(r.hull == ConvexBase{Strip{0, 2}});
  CHECK(hull_classify(Domain(HalfPlane{0}, {})).hull == ConvexBase{HalfPlane{0}});
  CHECK(hull_classify(builtin("square")).hull == builtin("square").base());
  const Domain corner(ConvexPolygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
                      {Polygon{{{0, 0}, {q(1, 2), 0}, {0, q(1, 2)}}}});
  CHECK_THROWS_AS(hull_classify(corner), Error);
}

TEST_CASE("sampled hull oracle: points of fig1 accumulate everywhere in the strip")
{
  // Independent check that the strip is the hull: every probe point of the
  // strip is a convex combination of two points of D on a vertical line
  // shifted away from the slits.
  const Domain fig1 = builtin("fig1");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Point2 p = testing::random_point(rng, -3, 3, 0, 2, 64);
    if (p.x2 == 0 || p.x2 == 2) continue;
    const Point2 left{p.x1 - 5, p.x2};
    const Point2 right{p.x1 + 5, p.x2};
    CHECK(contains(fig1, left));
    CHECK(contains(fig1, right));
  }
}

TEST_CASE("bump_height values")
{
  const Bump b{BumpSide::top, 0, 1, 1};
  CHECK(bump_height(b, 0.0) == doctest::Approx(1.0));
  CHECK(bump_height(b, 1.0) == 0.0);
  CHECK(bump_height(b, -1.0) == 0.0);
  CHECK(bump_height(b, 0.5) == doctest::Approx(0.716531).epsilon(1e-6));
  CHECK(bump_height(b, 0.5) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-15));
  const Bump scaled_bump{BumpSide::bottom, q(3, 2), q(1, 4), q(1, 3)};
  CHECK(bump_height(scaled_bump, Rational(3, 2)) == doctest::Approx(1.0 / 3.0));
  CHECK(bump_height(scaled_bump, Rational(7, 4)) == 0.0);
}

TEST_CASE("bump_height is even, increasing up to the peak, and flat at the support edges")
{
  const Bump b{BumpSide::top, q(-1), q(1, 2), 1};
  const double x0 = -1.0, w = 0.5;
  for (int i = 1; i < 1000; ++i) {
    const double d = w * i / 1000.0;
    CHECK(bump_height(b, x0 - d) == doctest::Approx(bump_height(b, x0 + d)).epsilon(1e-14));
    CHECK(bump_height(b, x0 - d) < bump_height(b, x0 - d + w / 1000.0));
  }
  const double h = 1e-3;
  for (double edge : {x0 - w, x0 + w}) {
    auto f = [&](double x) { return bump_height(b, x); };
    const double d1 = (f(edge + h) - f(edge - h)) / (2 * h);
    const double d2 = (f(edge + h) - 2 * f(edge) + f(edge - h)) / (h * h);
    const double d3 = (f(edge + 2 * h) - 2 * f(edge + h) + 2 * f(edge - h) - f(edge - 2 * h)) / (2 * h * h * h);
    CHECK(std::abs(d1) < 1e-6);
    CHECK(std::abs(d2) < 1e-6);
    CHECK(std::abs(d3) < 1e-6);
  }
}

TEST_CASE("bump obstacles in the smooth variant")
{
  const Domain fig2 = builtin("fig2-smooth");
  CHECK(contains(fig2, {0, 1}));
  CHECK_FALSE(contains(fig2, {-1, 1}));  // top bump peak
  CHECK_FALSE(contains(fig2, {1, 1}));   // bottom bump peak
  CHECK(contains(fig2, {-1, q(99, 100)}));
  CHECK(contains(fig2, {1, q(101, 100)}));

  CHECK_FALSE(segment_in_domain(fig2, closed_segment({-2, 1}, {2, 1})).inside);
  const auto line = segment_in_domain(fig2, closed_segment({-2, q(3, 4)}, {2, q(5, 4)}));
  CHECK(line.inside);
  const auto blocked = segment_in_domain(fig2, closed_segment({-2, q(5, 4)}, {0, q(5, 4)}));
  REQUIRE_FALSE(blocked.inside);
  CHECK(blocked.witness_verified);
  CHECK_FALSE(contains(fig2, *blocked.witness));

  CHECK(ellipse_in_domain(fig2, {{0, 1}, {2, q(1, 4)}, {0, 0}}));
  CHECK_FALSE(ellipse_in_domain(fig2, {{0, 1}, {2, 0}, {0, q(1, 10)}}));
  CHECK(ellipse_in_domain(fig2, {{0, 1}, {q(1, 4), 0}, {0, q(1, 4)}}));
}

TEST_CASE("domain validation")
{
  CHECK_THROWS_AS(Domain(Strip{2, 0}, {}), Error);
  CHECK_THROWS_AS(Domain(Strip{0, 2}, {VerticalSlit{0, 1, 3}}), Error);
  CHECK_THROWS_AS(Domain(Strip{0, 2}, {VerticalSlit{0, 1, 1}}), Error);
  CHECK_THROWS_AS(Domain(Strip{0, 2}, {Polygon{{{0, 1}, {1, 1}, {2, 1}}}}), Error);
  CHECK_THROWS_AS(Domain(Strip{0, 2}, {Polygon{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}}), Error);
  CHECK_THROWS_AS(Domain(HalfPlane{0}, {Bump{BumpSide::top, 0, 1, 1}}), Error);
  CHECK_THROWS_AS(Domain(ConvexPolygon{{{0, 0}, {1, 0}, {1, 1}, {q(1, 2), q(1, 4)}}}, {}), Error);
  CHECK_NOTHROW(Domain(ConvexPolygon{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}, {}));
}

TEST_CASE("property: exactness oracle on random polygonal domains")
{
  std::mt19937_64 rng(20240601);
  for (int round = 0; round < 12; ++round) {
    const Domain d = testing::random_polygonal_domain(rng);
    for (int j = 0; j < 6; ++j) {
      const Point2 p = testing::random_point(rng, -4, 4, -1, 3, 8);
      const Point2 r = testing::random_point(rng, -4, 4, -1, 3, 8);
      const auto verdict = segment_in_domain(d, closed_segment(p, r));
      if (verdict.inside) {
        for (int i = 0; i <= 10000; ++i) {
          const Rational t(i, 10000);
          if (!contains(d, p + scaled(r - p, t))) {
            FAIL("inside verdict contradicted at t = " << to_string(t));
            break;
          }
        }
      } else {
        REQUIRE(verdict.witness);
        CHECK_FALSE(contains(d, *verdict.witness));
      }
    }
  }
}

TEST_CASE("property: monotonicity and obstacle additivity")
{
  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    const Domain d = testing::random_polygonal_domain(rng);
    const Point2 p = testing::random_point(rng, -4, 4, 0, 2, 8);
    const Point2 r = testing::random_point(rng, -4, 4, 0, 2, 8);
    const auto whole = segment_in_domain(d, closed_segment(p, r));
    const Rational t0 = testing::random_rational(rng, 0, 1, 10);
    const Rational t1 = testing::random_rational(rng, 0, 1, 10);
    const auto part = segment_in_domain(d, closed_segment(p + scaled(r - p, t0), p + scaled(r - p, t1)));
    if (whole.inside) CHECK(part.inside);

    std::vector<Obstacle> more = d.obstacles();
    more.push_back(VerticalSlit{testing::random_rational(rng, -3, 3, 4), 0, 1});
    const Domain bigger(d.base(), more);
    if (!whole.inside) CHECK_FALSE(segment_in_domain(bigger, closed_segment(p, r)).inside);
  }
}

TEST_CASE("property: degenerate ellipse agrees with the open segment")
{
  std::mt19937_64 rng(1234);
  const std::vector<Domain> domains{builtin("fig1"), builtin("strip"), builtin("square"),
                                    testing::random_polygonal_domain(rng)};
  for (const auto& d : domains) {
    for (int i = 0; i < 200; ++i) {
      const Point2 c = testing::random_point(rng, -2, 2, 0, 2, 12);
      const Vec2 u = testing::random_point(rng, -3, 3, -1, 1, 12);
      const bool by_ellipse = ellipse_in_domain(d, {c, u, {0, 0}});
      const bool by_segment = segment_in_domain(d, {c + scaled(u, -1), c + u, Openness::open}).inside;
      CHECK(by_ellipse == by_segment);
    }
  }
}

TEST_CASE("property: nondegenerate ellipse containment matches dense sampling")
{
  // Oracle: sample the closed ellipse slightly shrunk; any sample outside D
  // must be reported as not contained.
  std::mt19937_64 rng(4321);
  const Domain fig1 = builtin("fig1");
  for (int i = 0; i < 200; ++i) {
    const Point2 c = testing::random_point(rng, -2, 2, 0, 2, 8);
    if (!contains(fig1, c)) continue;
    const Vec2 u = testing::random_point(rng, -2, 2, -1, 1, 8);
    const Vec2 v = testing::random_point(rng, -1, 1, -1, 1, 8);
    const bool claimed = ellipse_in_domain(fig1, {c, u, v});
    bool sampled_ok = true;
    for (int a = 0; a < 64 && sampled_ok; ++a) {
      for (int r = 1; r <= 8; ++r) {
        const double th = 2 * M_PI * a / 64;
        const Rational x = from_double(0.999 * r / 8 * std::cos(th));
        const Rational y = from_double(0.999 * r / 8 * std::sin(th));
        if (!contains(fig1, c + scaled(u, x) + scaled(v, y))) {
          sampled_ok = false;
          break;
        }
      }
    }
    if (claimed) CHECK(sampled_ok);
  }
}
