#include <iostream>

#include <CLI11.hpp>

#include "nildiag_tools/app.hpp"

using nildiag::tools::Command;
using nildiag::tools::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Square-zero plus diagonalizable (or potent) splits of matrices over GF(2^m)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string a_text;
    std::string field_text;
    unsigned subfield = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--field", field_text, "Field designation, e.g. gf(2^3) or gf(2^3)[modulus=0xb]");
        sub->add_flag("--json", cfg.json, "Machine-readable output");
        sub->add_option("--out", cfg.out, "Write the artifact to this path instead of stdout");
    };

    auto* split = app.add_subcommand("split", "Split a matrix into N + D and emit a certificate");
    split->add_option("input", cfg.input, "Matrix file ('-' for stdin)")->required();
    split->add_option("--mode", cfg.mode, "diag-split | potent4-f2 | potent-subfield")
        ->check(CLI::IsMember({"diag-split", "potent4-f2", "potent-subfield"}));
    split->add_option("--subfield-degree", subfield, "Degree d of the subfield GF(2^d) for potent-subfield");
    split->add_option("--a", a_text, "Override the free parameter a (hexadecimal)");
    common(split);

    auto* verify = app.add_subcommand("verify", "Re-check a certificate independently");
    verify->add_option("input", cfg.input, "Certificate file ('-' for stdin)")->required();
    common(verify);

    auto* rcf = app.add_subcommand("rcf", "Invariant factors and a rational canonical basis");
    rcf->add_option("input", cfg.input, "Matrix file ('-' for stdin)")->required();
    common(rcf);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive search for E^p = E with (A + E)^k = 0 over GF(2)");
    oracle->add_option("input", cfg.input, "Matrix file ('-' for stdin)")->required();
    oracle->add_option("--potency", cfg.oracle_potency, "p")->check(CLI::IsMember({2u, 4u}));
    oracle->add_option("--nil-index", cfg.oracle_nil_index, "k")->check(CLI::Range(1u, 4u));
    common(oracle);

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--seed", cfg.seed, "Seed for the randomized suites");
    selftest->add_option("--criteria", cfg.criteria, "Subset of criteria to run (1-9)")->check(CLI::Range(1, 9));
    selftest->add_flag("!--no-timing", cfg.timing, "Omit wall times so output is reproducible byte for byte");
    common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nildiag::tools::kExitUsage;
    }

    if (*split) cfg.command = Command::Split;
    if (*verify) cfg.command = Command::Verify;
    if (*rcf) cfg.command = Command::Rcf;
    if (*oracle) cfg.command = Command::Oracle;
    if (*selftest) cfg.command = Command::Selftest;
    if (!field_text.empty()) cfg.field = field_text;
    if (!a_text.empty()) cfg.a_override = a_text;
    if (subfield != 0) cfg.subfield_degree = subfield;

    return nildiag::tools::run(cfg, std::cout, std::cerr);
}
