#include "doctest.h"
#include "tubehyp/dsl.hpp"
#include "tubehyp/error.hpp"
#include "tubehyp/report.hpp"

#include <regex>

using namespace tubehyp;
using nlohmann::json;

namespace {

Rational q(long n, long d = 1) { return ratio(n, d); }

std::size_t count_of(const std::string& text, const std::string& needle)
{
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("render fig1 with a point and the Gamma_2 witness")
{
  const std::vector<Overlay> overlays{PointOverlay{{0, 1}}, WitnessLineOverlay{2, q(1, 4), 1}};
  const std::string svg = render_svg(builtin("fig1"), overlays);
  CHECK(count_of(svg, "class=\"slit\"") == 2);
  CHECK(count_of(svg, "class=\"witness\"") == 1);
  CHECK(count_of(svg, "Gamma_2") >= 1);
  CHECK(count_of(svg, "class=\"point\"") == 1);
  // Witness endpoints: (-2, 1/2) and (2, 3/2), drawn with x2 flipped.
  CHECK(svg.find("M -2.000000000,-0.500000000 L 2.000000000,-1.500000000") != std::string::npos);
  CHECK(render_svg(builtin("fig1"), overlays) == svg);
}

TEST_CASE("render fig2-smooth shows two filled bumps touching the midline")
{
  const std::string svg = render_svg(builtin("fig2-smooth"), {});
  CHECK(count_of(svg, "class=\"bump\"") == 2);
  CHECK(count_of(svg, "fill=\"#808080\"") == 2);
  // Each bump's sampled peak sits on x2 = 1 (drawn as -1).
  CHECK(count_of(svg, ",-1.000000000") >= 2);
}

TEST_CASE("render is independent of overlay order and formats fixed decimals")
{
  const Domain d = builtin("fig1");
  const std::vector<Overlay> a{PointOverlay{{0, 1}}, WitnessLineOverlay{3, q(1, 9), 1},
                               FootprintOverlay{example1_map(2)}};
  const std::vector<Overlay> b{FootprintOverlay{example1_map(2)}, WitnessLineOverlay{3, q(1, 9), 1},
                               PointOverlay{{0, 1}}};
  const std::string svg = render_svg(d, a);
  CHECK(svg == render_svg(d, b));
  CHECK(svg.find("-0.000000000") == std::string::npos);
  CHECK_FALSE(std::regex_search(svg, std::regex(R"(\d[eE][-+]?\d)")));
  const std::regex number(R"(-?\d+\.\d+)");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), number); it != std::sregex_iterator(); ++it) {
    const std::string s = it->str();
    CHECK(s.size() - s.find('.') - 1 == 9);
  }
}

TEST_CASE("half-plane rendering needs a clip height")
{
  const Domain d(HalfPlane{0}, {VerticalSlit{0, 1, 2}});
  try {
    render_svg(d, {});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unbounded_viewport);
  }
  RenderOptions options;
  options.clip = 3;
  CHECK(render_svg(d, {}, options).find("class=\"slit\"") != std::string::npos);
}

TEST_CASE("report envelopes")
{
  const Domain fig1 = builtin("fig1");
  ReportEnvelope env;
  env.command = "check";
  env.domain_canonical = serialize_domain(fig1);
  env.payload = to_json(loeb_scan(fig1, {0, 1}, 20));
  const std::string text = report_json(env);
  const json doc = json::parse(text);
  CHECK(doc["payload"]["verdict"] == "condition_fails_at");
  CHECK(doc["payload"]["k"] == 1);
  CHECK(doc["tool_version"] == kToolVersion);
  CHECK(text == report_json(env));

  // Keys come out sorted.
  const auto first = text.find("\"command\"");
  CHECK(first < text.find("\"domain_canonical\""));
  CHECK(text.find("\"domain_canonical\"") < text.find("\"exit_code_hint\""));
  CHECK(text.find("\"exit_code_hint\"") < text.find("\"payload\""));

  ReportEnvelope empty;
  empty.command = "examples";
  CHECK(json::parse(report_json(empty))["payload"].is_null());
}

TEST_CASE("report payload encodings")
{
  const json strip = to_json(loeb_scan(builtin("strip"), {0, 1}, 3));
  CHECK(strip["verdict"] == "condition_holds_up_to_kmax");
  CHECK_FALSE(strip.contains("k"));
  CHECK(strip["records"][0]["admissible"][0] == json::array({"0", "2"}));
  CHECK(strip["records"][0]["gap"] == "0");

  const Domain hp(HalfPlane{0}, {});
  const json half = to_json(loeb_scan(hp, {0, 1}, 1));
  CHECK(half["records"][0]["admissible"][0][1] == "inf");

  const json f = to_json(example1_map(4));
  CHECK(f["alpha"] == json::array({"4", "0"}));
  CHECK(f["beta"] == json::array({"1/4", "0"}));

  ProbeReport growth;
  growth.verdict = ProbeVerdict::unbounded_growth_evidence;
  CHECK(to_json(growth)["bound_estimate_M"] == "inf");
}
