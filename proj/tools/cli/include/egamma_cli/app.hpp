#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egamma::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kUsage = 2,
    kIoError = 3,
    kStrictCap = 4,
};

struct RunConfig {
    std::string subcommand;
    long n_max = 20;
    long p_max = 3;
    std::vector<long> m_list;  // empty: subcommand default
    long frac_bits = 53;
    double tol = 1e-12;
    long prec_cap = 0;  // 0: EGAMMA_PREC_CAP or the built-in default
    std::string format = "csv";
    std::string out;
    std::string checkpoint;
    unsigned workers = 1;
    int digits = 15;
    std::string method = "classic";
    std::string suite = "all";
    bool strict = false;
};

/// Parses `args` (without the program name) and runs the subcommand.
/// Primary output goes to --out when given, else to `out`; diagnostics go
/// to `err`. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already validated configuration.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace egamma::cli
