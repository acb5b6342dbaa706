#include "doctest.h"
#include "support.hpp"
#include "tubehyp/certificate.hpp"
#include "tubehyp/dsl.hpp"
#include "tubehyp/error.hpp"

#include <cmath>
#include <complex>

using namespace tubehyp;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

Errc code_of(const std::function<void()>& fn)
{
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::invalid_argument;
}

std::vector<AffineWitness> reference_witnesses(long lo, long hi)
{
  std::vector<AffineWitness> ws;
  for (long k = lo; k <= hi; ++k) ws.push_back({k, q(1, k * k), 1, {0, 1}});
  return ws;
}

}  // namespace

TEST_CASE("re_footprint examples")
{
  const Ellipse2 e1 = re_footprint(example1_map(3));
  CHECK(e1.center == Point2{0, 1});
  CHECK(e1.u == Point2{3, q(1, 3)});
  CHECK(e1.v == Point2{0, 0});

  HoloAffineMap rot;
  rot.p = {0, 0};
  rot.q = {0, 0};
  rot.alpha = {0, 1};
  rot.beta = {1, 0};
  const Ellipse2 e2 = re_footprint(rot);
  CHECK(e2.center == Point2{0, 0});
  CHECK(e2.u == Point2{0, 1});
  CHECK(e2.v == Point2{-1, 0});

  HoloAffineMap point;
  point.p = {q(1, 3), 5};
  point.q = {q(2, 3), -7};
  const Ellipse2 e3 = re_footprint(point);
  CHECK(e3.center == Point2{q(1, 3), q(2, 3)});
  CHECK(e3.u == Point2{0, 0});
  CHECK(e3.v == Point2{0, 0});
}

TEST_CASE("derivative norms")
{
  CHECK(derivative_norm(example1_map(1)) == doctest::Approx(1.414214).epsilon(1e-6));
  const auto f = map_from_witness({3, q(1, 9), 1, {0, 1}});
  // (1/2) |(3, 1/3)| = sqrt(9 + 1/9) / 2
  CHECK(derivative_norm(f) == doctest::Approx(1.509231).epsilon(1e-6));
  CHECK(derivative_norm(HoloAffineMap{}) == 0.0);

  // Exact identities.
  for (long k = 1; k <= 200; ++k) {
    CHECK(derivative_norm_sq(example1_map(k)) == Rational(k * k) + q(1, k * k));
    const Rational c = q(1, k * k);
    CHECK(derivative_norm_sq(map_from_witness({k, c, 1, {0, 1}})) == (Rational(k * k) + k * k * c * c) / 4);
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const long k = 1 + static_cast<long>(rng() % 30);
    const Point2 a = testing::random_point(rng, -3, 3, -3, 3);
    const Rational c = testing::random_rational(rng, -1, 1) / (2 * k * k);
    const Rational d = a.x2 + testing::random_rational(rng, -1, 1) / (2 * k);
    const Rational kk(k);
    CHECK(derivative_norm_sq(map_from_witness({k, c, d, a})) == (kk * kk + kk * kk * c * c) / 4);
  }
}

TEST_CASE("map_from_witness coefficients")
{
  const auto f = map_from_witness({3, q(1, 9), 1, {0, 1}});
  CHECK(f.alpha == Complex{q(3, 2), 0});
  CHECK(f.beta == Complex{q(1, 6), 0});
  CHECK(f.p == Complex{0, 0});
  CHECK(f.q == Complex{1, 0});

  const auto flat = map_from_witness({6, 0, 1, {0, 1}});
  CHECK(flat.alpha == Complex{3, 0});
  CHECK(flat.beta == Complex{0, 0});

  // Footprint of the a = (2, 1), k = 8 disk spans x1 in (-2, 6).
  const auto shifted = map_from_witness({8, 0, 1, {2, 1}});
  const Ellipse2 e = re_footprint(shifted);
  CHECK(e.center.x1 - e.u.x1 == -2);
  CHECK(e.center.x1 + e.u.x1 == 6);

  CHECK(code_of([] { map_from_witness({2, 1, 1, {0, 1}}); }) == Errc::invalid_witness);
}

TEST_CASE("example1 maps")
{
  const auto f1 = example1_map(1);
  CHECK(f1.alpha == Complex{1, 0});
  CHECK(f1.beta == Complex{1, 0});
  const auto f5 = example1_map(5);
  CHECK(f5.alpha == Complex{5, 0});
  CHECK(f5.beta == Complex{q(1, 5), 0});
  const Domain fig1 = builtin("fig1");
  const auto f2 = re_footprint(example1_map(2));
  CHECK(f2.center - f2.u == Point2{-2, q(1, 2)});
  CHECK(f2.center + f2.u == Point2{2, q(3, 2)});
  CHECK(ellipse_in_domain(fig1, f2));
}

TEST_CASE("build_certificate examples")
{
  const Domain fig1 = builtin("fig1");
  const Point2 a{0, 1};

  // The reference family is a valid witness from k = 2 on.
  const auto cert = build_certificate(fig1, a, WitnessListSource{reference_witnesses(2, 50)});
  REQUIRE(cert.entries.size() == 49);
  for (const auto& e : cert.entries) {
    const double k = static_cast<double>(e.k);
    CHECK(derivative_norm(e.map) == doctest::Approx(k / 2 * std::sqrt(1 + 1 / (k * k * k * k))).epsilon(1e-14));
  }
  CHECK(cert.k_min_containment == 2);
  // Every per-entry check passes, but the excess (k/2)(sqrt(1 + 1/k^4) - 1)
  // decays, which pulls the fitted slope just under 1/2.
  const auto ref = verify_certificate(fig1, cert);
  CHECK(ref.failure == CertificateFailure::slope_too_small);
  CHECK(ref.growth_slope == doctest::Approx(0.49988).epsilon(1e-5));

  // The family found by the search uses much smaller slopes and passes.
  std::vector<AffineWitness> found;
  for (long k = 1; k <= 20; ++k) found.push_back(*find_affine_witness(fig1, a, k));
  const auto searched = verify_certificate(fig1, build_certificate(fig1, a, WitnessListSource{found}));
  CHECK(searched.valid());
  CHECK(searched.growth_slope >= kMinGrowthSlope);

  // At k = 1 the closed witness segment touches the strip boundary.
  const Error err = [&] {
    try {
      build_certificate(fig1, a, WitnessListSource{reference_witnesses(1, 5)});
    } catch (const Error& e) {
      return e;
    }
    return Error(Errc::invalid_argument, "no error");
  }();
  CHECK(err.code() == Errc::witness_invalid);
  CHECK(err.k() == 1);

  const auto ex1 = build_certificate(fig1, a, Example1Source{{1, 1000}});
  REQUIRE(ex1.entries.size() == 1000);
  const auto v = verify_certificate(fig1, ex1);
  CHECK(v.valid());
  CHECK(v.growth_slope == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& e : ex1.entries) {
    const double k = static_cast<double>(e.k);
    CHECK(std::abs(derivative_norm(e.map) - std::sqrt(k * k + 1 / (k * k))) <= 1e-12);
  }

  CHECK(code_of([&] { build_certificate(fig1, a, WitnessListSource{}); }) == Errc::empty_source);
  CHECK(code_of([&] { build_certificate(fig1, a, Example1Source{{3, 2}}); }) == Errc::empty_source);
}

TEST_CASE("verify_certificate failures")
{
  const Domain fig1 = builtin("fig1");
  auto cert = build_certificate(fig1, {0, 1}, WitnessListSource{reference_witnesses(2, 10)});
  // k = 4 replaced by a horizontal disk whose footprint (-2, 1)-(2, 1) hits the slit end (-1, 1).
  for (auto& e : cert.entries)
    if (e.k == 4) e.map = map_from_witness({4, 0, 1, {0, 1}});
  const auto v = verify_certificate(fig1, cert);
  CHECK(v.failure == CertificateFailure::containment_violation);
  CHECK(v.k == 4);

  // At k = 1 the horizontal footprint (-1/2, 1)-(1/2, 1) stays clear of both slits.
  CHECK(ellipse_in_domain(fig1, re_footprint(map_from_witness({1, 0, 1, {0, 1}}))));

  auto single = build_certificate(fig1, {0, 1}, Example1Source{{3, 3}});
  CHECK(verify_certificate(fig1, single).failure == CertificateFailure::too_few_entries);

  auto shuffled = build_certificate(fig1, {0, 1}, Example1Source{{1, 4}});
  std::swap(shuffled.entries[1], shuffled.entries[2]);
  CHECK(verify_certificate(fig1, shuffled).failure == CertificateFailure::not_increasing);

  auto far = build_certificate(fig1, {0, 1}, Example1Source{{1, 4}});
  far.a = {0, q(1, 2)};
  CHECK(verify_certificate(fig1, far).failure == CertificateFailure::proximity_violation);

  auto weak = build_certificate(fig1, {0, 1}, Example1Source{{1, 4}});
  weak.entries[2].map.alpha = {1, 0};
  CHECK(verify_certificate(fig1, weak).failure == CertificateFailure::norm_too_small);
}

TEST_CASE("strip certificate grows with slope one half")
{
  const Domain strip = builtin("strip");
  std::vector<AffineWitness> ws;
  for (long k = 1; k <= 30; ++k) ws.push_back({k, 0, 1, {0, 1}});
  const auto cert = build_certificate(strip, {0, 1}, WitnessListSource{ws});
  const auto v = verify_certificate(strip, cert);
  CHECK(v.valid());
  CHECK(v.growth_slope == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("certificate JSON round trip")
{
  const Domain fig1 = builtin("fig1");
  const auto cert = build_certificate(fig1, {0, 1}, WitnessListSource{reference_witnesses(2, 20)});
  const std::string text = certificate_to_json(cert);
  const Certificate back = certificate_from_json(text);
  CHECK(back.domain == cert.domain);
  CHECK(back.a == cert.a);
  CHECK(back.entries == cert.entries);
  CHECK(back.k_min_containment == cert.k_min_containment);
  CHECK(certificate_to_json(back) == text);
  CHECK(text.find("\"1/40\"") != std::string::npos);

  CHECK_THROWS_AS(certificate_from_json("{"), Error);
  CHECK_THROWS_AS(certificate_from_json("{\"domain\": 3}"), Error);
  std::string bad = text;
  bad.replace(bad.find("\"1/40\""), 6, "\"1/0\"");
  CHECK_THROWS_AS(certificate_from_json(bad), Error);
}

TEST_CASE("property: certificate JSON round-trips on random certificates")
{
  std::mt19937_64 rng(4242);
  using tubehyp::testing::random_polygonal_domain;
  using tubehyp::testing::random_rational;
  std::uniform_int_distribution<int> count(0, 6);
  for (int i = 0; i < 1000; ++i) {
    Certificate cert{random_polygonal_domain(rng), tubehyp::testing::random_point(rng, -5, 5, -5, 5, 64), {}, 1};
    long k = 0;
    for (int n = count(rng); n > 0; --n) {
      k += 1 + count(rng);
      HoloAffineMap f;
      f.p = {random_rational(rng, -9, 9, 1000), 0};
      f.q = {random_rational(rng, -9, 9, 1000), 0};
      f.alpha = {random_rational(rng, -99, 99, 1 << 20), random_rational(rng, -9, 9, 7)};
      f.beta = {random_rational(rng, -1, 1, 999983), random_rational(rng, -9, 9, 3)};
      cert.entries.push_back({k, f});
    }
    cert.k_min_containment = 1 + count(rng);
    const std::string text = certificate_to_json(cert);
    const Certificate back = certificate_from_json(text);
    CHECK(back.domain == cert.domain);
    CHECK(back.a == cert.a);
    CHECK(back.entries == cert.entries);
    CHECK(back.k_min_containment == cert.k_min_containment);
    CHECK(certificate_to_json(back) == text);
  }
}

TEST_CASE("footprint contains every image point")
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int m = 0; m < 1000; ++m) {
    HoloAffineMap f;
    f.p = {testing::random_rational(rng, -3, 3), testing::random_rational(rng, -3, 3)};
    f.q = {testing::random_rational(rng, -3, 3), testing::random_rational(rng, -3, 3)};
    f.alpha = {testing::random_rational(rng, -3, 3), testing::random_rational(rng, -3, 3)};
    f.beta = {testing::random_rational(rng, -3, 3), testing::random_rational(rng, -3, 3)};
    const Ellipse2 e = re_footprint(f);
    const double cx = to_double(e.center.x1), cy = to_double(e.center.x2);
    const double ux = to_double(e.u.x1), uy = to_double(e.u.x2);
    const double vx = to_double(e.v.x1), vy = to_double(e.v.x2);
    const std::complex<double> p(to_double(f.p.re), to_double(f.p.im)), qq(to_double(f.q.re), to_double(f.q.im));
    const std::complex<double> al(to_double(f.alpha.re), to_double(f.alpha.im));
    const std::complex<double> be(to_double(f.beta.re), to_double(f.beta.im));
    for (int s = 0; s < 1000; ++s) {
      std::complex<double> z(unit(rng), unit(rng));
      if (std::abs(z) >= 1.0) z /= std::abs(z) * 1.000001;
      const double w1 = (p + al * z).real(), w2 = (qq + be * z).real();
      // Parametrization: Re f(z) = center + x u + y v with (x, y) = (Re z, Im z).
      CHECK(std::abs(cx + z.real() * ux + z.imag() * vx - w1) <= 1e-12 * (1 + std::abs(w1)));
      CHECK(std::abs(cy + z.real() * uy + z.imag() * vy - w2) <= 1e-12 * (1 + std::abs(w2)));
    }
    // Conversely each ellipse sample is realized by z = x + i y.
    for (int s = 0; s < 16; ++s) {
      const double th = 2 * M_PI * s / 16, r = 0.999;
      const std::complex<double> z(r * std::cos(th), r * std::sin(th));
      const double ex = cx + z.real() * ux + z.imag() * vx;
      CHECK(std::abs((p + al * z).real() - ex) <= 1e-6);
    }
  }
}

TEST_CASE("imaginary parts of p and q do not matter")
{
  const Domain fig1 = builtin("fig1");
  auto cert = build_certificate(fig1, {0, 1}, Example1Source{{1, 30}});
  const auto before = verify_certificate(fig1, cert);
  std::mt19937_64 rng(8);
  for (auto& e : cert.entries) {
    const auto footprint = re_footprint(e.map);
    e.map.p.im = testing::random_rational(rng, -100, 100);
    e.map.q.im = testing::random_rational(rng, -100, 100);
    const auto moved = re_footprint(e.map);
    CHECK(moved.center == footprint.center);
    CHECK(moved.u == footprint.u);
    CHECK(moved.v == footprint.v);
  }
  const auto after = verify_certificate(fig1, cert);
  CHECK(after.valid() == before.valid());
  CHECK(after.growth_slope == before.growth_slope);
}
