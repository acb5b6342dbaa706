#pragma once

// Command-line front end.
//
//   tubehyp check    DOMAIN --a X,Y [--kmax N]
//   tubehyp witness  DOMAIN --a X,Y (--k N | --kmin N --kmax N)
//   tubehyp certify  DOMAIN --a X,Y [--source witness|example1] --kmin N --kmax N --out CERT.json
//   tubehyp verify   CERT.json
//   tubehyp probe    DOMAIN --a X,Y [--scales 1..20] [--seed S] [--direction V1,V2]
//   tubehyp render   DOMAIN [--point X,Y] [--witness-line K,C,D]... [--footprint-example1 K]... [--clip H] [--out F.svg]
//   tubehyp examples [NAME]
//
// DOMAIN is a path to a .dom file or builtin:NAME. Every command prints one
// JSON report envelope to stdout (or to --report FILE). Exit codes: 0 when the
// analysis completed, whatever its verdict; 1 when a supplied certificate fails
// verification; 2 for usage, parse and analysis errors.

#include <ostream>
#include <string>
#include <vector>

namespace tubehyp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that replaces the default probe seed (--seed wins).
inline constexpr const char* kSeedEnv = "TUBEHYP_SEED";

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tubehyp::cli
