#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nildiag::tools {

enum class Command { Split, Verify, Rcf, Oracle, Selftest };

struct RunConfig {
    Command command = Command::Selftest;
    std::optional<std::string> field;  ///< must agree with the input file when both are given
    std::string mode = "diag-split";
    std::optional<unsigned> subfield_degree;
    std::optional<std::string> a_override;  ///< hexadecimal field element
    std::uint64_t seed = 20240601;
    bool json = false;
    std::string input;                ///< matrix or certificate path; "-" reads stdin
    std::optional<std::string> out;   ///< artifact path; stdout when unset
    unsigned oracle_potency = 4;
    unsigned oracle_nil_index = 2;
    std::set<int> criteria;  ///< selftest subset; empty runs all
    bool timing = true;      ///< selftest: print wall time per criterion
};

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitInternal = 3,
};

/// Executes one command. Artifacts go to config.out or `out`; diagnostics to
/// `err`. Never throws; maps errors to exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nildiag::tools
