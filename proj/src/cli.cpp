#include "tubehyp/cli.hpp"

#include "tubehyp/dsl.hpp"
#include "tubehyp/error.hpp"
#include "tubehyp/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tubehyp::cli {

namespace {

using nlohmann::json;

/// Usage problems found after CLI11 parsing (bad point syntax, missing files).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep)
{
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Rational rational_arg(const std::string& text, const std::string& what)
{
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
}

std::vector<Rational> rational_list(const std::string& text, std::size_t n, const std::string& what)
{
  const auto parts = split(text, ',');
  if (parts.size() != n) throw UsageError(what + ": expected " + std::to_string(n) + " comma-separated numbers");
  std::vector<Rational> out;
  for (const auto& p : parts) out.push_back(rational_arg(p, what));
  return out;
}

Point2 point_arg(const std::string& text, const std::string& what)
{
  const auto v = rational_list(text, 2, what);
  return {v[0], v[1]};
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UsageError("cannot write '" + path + "'");
}

Domain load_domain(const std::string& arg)
{
  static const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) return builtin(arg.substr(prefix.size()));
  return parse_domain({read_file(arg), arg});
}

/// "1..20" or "1,2,5".
std::vector<long> scale_list(const std::string& text)
{
  std::vector<long> out;
  const auto to_long = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("--scales: '" + text + "' is not a range or list of integers");
    }
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const long lo = to_long(text.substr(0, dots)), hi = to_long(text.substr(dots + 2));
    if (lo > hi) throw UsageError("--scales: empty range");
    for (long k = lo; k <= hi; ++k) out.push_back(k);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(to_long(p));
  }
  return out;
}

std::uint64_t seed_from_env()
{
  const char* env = std::getenv(kSeedEnv);
  if (!env || !*env) return kDefaultProbeSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(kSeedEnv) + ": '" + env + "' is not an unsigned integer");
  }
}

void require_range(long lo, long hi)
{
  if (lo < 1 || hi < lo) throw UsageError("k range must satisfy 1 <= kmin <= kmax");
}

struct Outcome {
  ReportEnvelope envelope;
  int code = kExitOk;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Kobayashi hyperbolicity toolkit for tube domains over planar bases", "tubehyp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  std::string report_path;
  app.add_option("--report", report_path, "Write the JSON report here instead of stdout");

  std::string domain_arg, point_text;
  long k = 0, kmin = 1, kmax = 20;

  auto* check = app.add_subcommand("check", "Scan the segment condition for k = 1..kmax");
  check->add_option("domain", domain_arg, "Domain file or builtin:NAME")->required();
  check->add_option("--a", point_text, "Base point X,Y")->required();
  check->add_option("--kmax", kmax, "Largest scale")->check(CLI::PositiveNumber);

  auto* witness = app.add_subcommand("witness", "Search affine witnesses");
  witness->add_option("domain", domain_arg, "Domain file or builtin:NAME")->required();
  witness->add_option("--a", point_text, "Base point X,Y")->required();
  auto* k_opt = witness->add_option("--k", k, "Single scale")->check(CLI::PositiveNumber);
  auto* wkmin = witness->add_option("--kmin", kmin, "First scale")->check(CLI::PositiveNumber);
  auto* wkmax = witness->add_option("--kmax", kmax, "Last scale")->check(CLI::PositiveNumber);
  k_opt->excludes(wkmin)->excludes(wkmax);
  int grid = WitnessSearchOptions{}.grid;
  witness->add_option("--grid", grid, "Grid size of the last search stage")->check(CLI::Range(2, 100001));

  std::string source = "witness", cert_path;
  auto* certify = app.add_subcommand("certify", "Build a non-hyperbolicity certificate");
  certify->add_option("domain", domain_arg, "Domain file or builtin:NAME")->required();
  certify->add_option("--a", point_text, "Base point X,Y")->required();
  certify->add_option("--source", source, "witness or example1")->check(CLI::IsMember({"witness", "example1"}));
  certify->add_option("--kmin", kmin, "First scale")->check(CLI::PositiveNumber);
  certify->add_option("--kmax", kmax, "Last scale")->check(CLI::PositiveNumber);
  certify->add_option("--out", cert_path, "Certificate output path")->required();

  auto* verify = app.add_subcommand("verify", "Verify a certificate file");
  verify->add_option("certificate", cert_path, "Certificate JSON")->required();

  std::string scales_text = "1..20", direction_text;
  std::optional<std::uint64_t> seed;
  int multistarts = ProbeConfig{}.multistarts;
  double radius = 0.0;
  auto* probe = app.add_subcommand("probe", "Probe derivative growth of affine disks");
  probe->add_option("domain", domain_arg, "Domain file or builtin:NAME")->required();
  probe->add_option("--a", point_text, "Base point X,Y")->required();
  probe->add_option("--scales", scales_text, "Scales as LO..HI or a comma list");
  probe->add_option("--seed", seed, "Random seed (overrides TUBEHYP_SEED)");
  probe->add_option("--multistarts", multistarts, "Random starts per scale")->check(CLI::PositiveNumber);
  probe->add_option("--radius", radius, "Neighborhood radius for the disk center")->check(CLI::NonNegativeNumber);
  probe->add_option("--direction", direction_text, "Also bound the metric in direction V1,V2");

  std::vector<std::string> witness_lines, point_texts;
  std::vector<long> footprints;
  std::string clip_text, svg_path;
  auto* render = app.add_subcommand("render", "Draw the domain and overlays as SVG");
  render->add_option("domain", domain_arg, "Domain file or builtin:NAME")->required();
  render->add_option("--point", point_texts, "Mark a point X,Y");
  render->add_option("--witness-line", witness_lines, "Draw the graph of c t + d over [-k, k], given as K,C,D");
  render->add_option("--footprint-example1", footprints, "Draw the footprint of the k-th explicit disk");
  render->add_option("--clip", clip_text, "Upper viewport edge for half-plane bases");
  render->add_option("--out", svg_path, "SVG output path (stdout when absent)");

  std::string example_name;
  auto* examples = app.add_subcommand("examples", "List builtin domains or print one");
  examples->add_option("name", example_name, "Builtin name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "tubehyp: " << e.what() << "\n" << "run 'tubehyp --help' for usage\n";
    return kExitUsage;
  }

  Outcome result;
  ReportEnvelope& env = result.envelope;
  try {
    if (check->parsed()) {
      env.command = "check";
      const Domain d = load_domain(domain_arg);
      env.domain_canonical = serialize_domain(d);
      env.payload = to_json(loeb_scan(d, point_arg(point_text, "--a"), kmax));
    } else if (witness->parsed()) {
      env.command = "witness";
      const Domain d = load_domain(domain_arg);
      env.domain_canonical = serialize_domain(d);
      const Point2 a = point_arg(point_text, "--a");
      if (*k_opt) kmin = kmax = k;
      require_range(kmin, kmax);
      json found = json::array();
      long missing = 0;
      for (long j = kmin; j <= kmax; ++j) {
        const auto w = find_affine_witness(d, a, j, {grid});
        if (w) {
          found.push_back({{"k", j}, {"found", true}, {"witness", to_json(*w)},
                           {"verdict", to_json(verify_affine_witness(d, *w))}});
        } else {
          found.push_back({{"k", j}, {"found", false}});
          ++missing;
        }
      }
      env.payload = {{"a", to_json(a)}, {"results", std::move(found)}, {"not_found", missing}};
    } else if (certify->parsed()) {
      env.command = "certify";
      const Domain d = load_domain(domain_arg);
      env.domain_canonical = serialize_domain(d);
      const Point2 a = point_arg(point_text, "--a");
      require_range(kmin, kmax);
      CertificateSource src = Example1Source{{kmin, kmax}};
      if (source == "witness") {
        WitnessListSource list;
        for (long j = kmin; j <= kmax; ++j) {
          const auto w = find_affine_witness(d, a, j);
          if (!w) throw Error(Errc::witness_invalid, "no affine witness found at k = " + std::to_string(j), j);
          list.witnesses.push_back(*w);
        }
        src = std::move(list);
      }
      const Certificate cert = build_certificate(d, a, src);
      const CertificateVerdict verdict = verify_certificate(d, cert);
      write_file(cert_path, certificate_to_json(cert));
      env.payload = {{"certificate", cert_path},
                     {"source", source},
                     {"entries", cert.entries.size()},
                     {"k_min_containment", cert.k_min_containment},
                     {"verdict", to_json(verdict)}};
    } else if (verify->parsed()) {
      env.command = "verify";
      Certificate cert = [&] {
        try {
          return certificate_from_json(read_file(cert_path));
        } catch (const UsageError&) {
          throw;
        } catch (const ParseError&) {
          throw;
        } catch (const std::exception& e) {
          throw UsageError("malformed certificate '" + cert_path + "': " + e.what());
        }
      }();
      env.domain_canonical = serialize_domain(cert.domain);
      const CertificateVerdict verdict = verify_certificate(cert.domain, cert);
      env.payload = to_json(verdict);
      if (!verdict.valid()) result.code = kExitInvalid;
    } else if (probe->parsed()) {
      env.command = "probe";
      const Domain d = load_domain(domain_arg);
      env.domain_canonical = serialize_domain(d);
      const Point2 a = point_arg(point_text, "--a");
      ProbeConfig cfg;
      cfg.scale_list = scale_list(scales_text);
      cfg.seed = seed ? *seed : seed_from_env();
      cfg.multistarts = multistarts;
      cfg.neighborhood_radius = radius;
      json payload = to_json(probe_scales(d, a, cfg));
      payload["seed"] = cfg.seed;
      if (!direction_text.empty()) {
        const Vec2 v = point_arg(direction_text, "--direction");
        const double bound = kobayashi_upper_bound(d, a, v, cfg);
        payload["direction"] = to_json(v);
        payload["kobayashi_upper_bound"] = std::isinf(bound) ? json("inf") : json(bound);
      }
      env.payload = std::move(payload);
    } else if (render->parsed()) {
      env.command = "render";
      const Domain d = load_domain(domain_arg);
      env.domain_canonical = serialize_domain(d);
      std::vector<Overlay> overlays;
      for (const auto& p : point_texts) overlays.push_back(PointOverlay{point_arg(p, "--point")});
      for (const auto& w : witness_lines) {
        const auto parts = split(w, ',');
        if (parts.size() != 3) throw UsageError("--witness-line: expected K,C,D");
        const Rational kk = rational_arg(parts[0], "--witness-line");
        if (kk.get_den() != 1 || kk < 1 || !kk.get_num().fits_slong_p())
          throw UsageError("--witness-line: K must be a positive integer");
        overlays.push_back(
            WitnessLineOverlay{kk.get_num().get_si(), rational_arg(parts[1], "--witness-line"), rational_arg(parts[2], "--witness-line")});
      }
      for (long j : footprints) {
        if (j < 1) throw UsageError("--footprint-example1: K must be positive");
        overlays.push_back(FootprintOverlay{example1_map(j)});
      }
      RenderOptions options;
      if (!clip_text.empty()) options.clip = rational_arg(clip_text, "--clip");
      const std::string svg = render_svg(d, overlays, options);
      if (svg_path.empty()) {
        out << svg;
        return kExitOk;
      }
      write_file(svg_path, svg);
      env.payload = {{"svg", svg_path}, {"overlays", overlays.size()}};
    } else if (examples->parsed()) {
      env.command = "examples";
      if (example_name.empty()) {
        env.payload = {{"builtins", {"fig1", "fig2-smooth", "square", "strip"}}};
      } else {
        const Domain d = builtin(example_name);
        env.domain_canonical = serialize_domain(d);
        env.payload = {{"name", example_name}, {"dom", serialize_domain(d)}};
      }
    }
  } catch (const UsageError& e) {
    err << "tubehyp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.origin() << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n  " << e.snippet() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "tubehyp: " << errc_name(e.code()) << ": " << e.what();
    if (e.k()) err << " (k = " << *e.k() << ")";
    err << "\n";
    return kExitUsage;
  }

  env.exit_code_hint = result.code;
  const std::string text = report_json(env);
  if (report_path.empty()) {
    out << text;
  } else {
    try {
      write_file(report_path, text);
    } catch (const UsageError& e) {
      err << "tubehyp: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return result.code;
}

}  // namespace tubehyp::cli
