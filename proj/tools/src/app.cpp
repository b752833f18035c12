#include "nildiag_tools/app.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "nildiag/canonical.hpp"
#include "nildiag/certificate.hpp"
#include "nildiag/errors.hpp"
#include "nildiag/splitter.hpp"
#include "nildiag/verify.hpp"
#include "nildiag_tools/acceptance.hpp"

namespace nildiag::tools {

using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path.empty()) throw PreconditionError("missing input file");
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw PreconditionError("cannot open '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (!cfg.out) {
        out << text;
        return;
    }
    std::ofstream f(*cfg.out, std::ios::binary);
    if (!f) throw PreconditionError("cannot write '" + *cfg.out + "'");
    f << text;
}

Mat load_matrix(const RunConfig& cfg) {
    Mat a = parse_matrix(read_input(cfg.input));
    if (cfg.field && !(parse_field(*cfg.field) == a.field())) {
        throw PreconditionError("--field " + *cfg.field + " does not match the input field " + a.field().designation());
    }
    return a;
}

Fe parse_a(const FieldSpec& f, const std::string& text) {
    std::string_view s = text;
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    std::uint32_t v = 0;
    if (s.empty() || s.size() > 8) throw PreconditionError("invalid --a value '" + text + "'");
    for (char c : s) {
        const int d = std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                      : (c >= 'a' && c <= 'f')                    ? c - 'a' + 10
                      : (c >= 'A' && c <= 'F')                    ? c - 'A' + 10
                                                                  : -1;
        if (d < 0) throw PreconditionError("invalid --a value '" + text + "'");
        v = v * 16 + static_cast<std::uint32_t>(d);
    }
    if (!f.contains(Fe{v})) throw PreconditionError("--a value " + text + " is not in " + f.designation());
    return Fe{v};
}

json report_json(const CheckReport& r) {
    json eig = json::array();
    for (const Root& x : r.eigenvalues) eig.push_back({{"value", to_hex(x.value)}, {"multiplicity", x.multiplicity}});
    return {
        {"sum_ok", r.sum_ok},
        {"square_zero_ok", r.square_zero_ok},
        {"diagonalizable_ok", r.diagonalizable_ok ? json(*r.diagonalizable_ok) : json(nullptr)},
        {"potency_ok", r.potency_ok},
        {"potency_claimed", r.potency_claimed},
        {"eigenvalues", eig},
        {"failures", r.failures},
        {"pass", r.all_ok()},
    };
}

std::string report_text(const CheckReport& r) {
    std::ostringstream os;
    auto flag = [](bool b) { return b ? "ok" : "FAIL"; };
    os << "sum (A = N + D):        " << flag(r.sum_ok) << "\n";
    os << "square-zero (N^2 = 0):  " << flag(r.square_zero_ok) << "\n";
    os << "potency (D^" << r.potency_claimed << " = D):" << std::string(r.potency_claimed < 10 ? 6 : 5, ' ')
       << flag(r.potency_ok) << "\n";
    if (r.diagonalizable_ok) os << "diagonalizable:         " << flag(*r.diagonalizable_ok) << "\n";
    if (!r.eigenvalues.empty()) {
        os << "eigenvalues:           ";
        for (const Root& x : r.eigenvalues) os << " " << to_hex(x.value) << "^" << x.multiplicity;
        os << "\n";
    }
    for (const std::string& f : r.failures) os << "failure: " << f << "\n";
    os << (r.all_ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

int cmd_split(const RunConfig& cfg, std::ostream& out) {
    const Mat a = load_matrix(cfg);
    SplitOptions opts;
    opts.mode = parse_mode(cfg.mode);
    opts.subfield_degree = cfg.subfield_degree;
    if (cfg.a_override) opts.a = parse_a(a.field(), *cfg.a_override);
    const SplitCertificate cert = split(a, opts);
    if (cfg.json) {
        emit(cfg, out, certificate_to_json(cert));
    } else {
        std::ostringstream os;
        os << "mode " << to_string(cert.mode) << "\n";
        os << "potency " << cert.potency_s << "\n";
        for (const BlockRecord& b : cert.blocks) {
            os << "block offset " << b.offset << " factor " << format_poly(b.factor) << " route " << b.route;
            if (b.a) os << " a " << to_hex(*b.a);
            os << "\n";
        }
        os << "N\n" << format_matrix(cert.n) << "D\n" << format_matrix(cert.d);
        emit(cfg, out, os.str());
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const SplitCertificate cert = certificate_from_json(read_input(cfg.input));
    const CheckReport rep = check_certificate(cert.a, cert);
    emit(cfg, out, cfg.json ? report_json(rep).dump(2) + "\n" : report_text(rep));
    return rep.all_ok() ? kExitOk : kExitCheckFailed;
}

int cmd_rcf(const RunConfig& cfg, std::ostream& out) {
    const Mat a = load_matrix(cfg);
    const RcfResult r = rcf(a);
    if (cfg.json) {
        json factors = json::array();
        for (const Poly& f : r.factors) factors.push_back(format_poly(f));
        emit(cfg, out, json{{"field", a.field().designation()}, {"invariant_factors", factors},
                            {"basis", format_matrix(r.basis)}, {"blocks", format_matrix(r.blocks)}}
                               .dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const Poly& f : r.factors) os << "factor " << format_poly(f) << "\n";
        os << "basis\n" << format_matrix(r.basis) << "blocks\n" << format_matrix(r.blocks);
        emit(cfg, out, os.str());
    }
    return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
    const Mat a = load_matrix(cfg);
    const OracleResult r = brute_force_exists(a, cfg.oracle_nil_index, cfg.oracle_potency);
    if (cfg.json) {
        emit(cfg, out, json{{"exists", r.exists}, {"candidates", r.candidates}, {"potency", cfg.oracle_potency},
                            {"nil_index", cfg.oracle_nil_index},
                            {"witness_E", r.witness_e ? json(format_matrix(*r.witness_e)) : json(nullptr)}}
                               .dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "E^" << cfg.oracle_potency << " = E, (A + E)^" << cfg.oracle_nil_index << " = 0: "
           << (r.exists ? "exists" : "none") << " (" << r.candidates << " candidates)\n";
        if (r.witness_e) os << "witness E\n" << format_matrix(*r.witness_e);
        emit(cfg, out, os.str());
    }
    return kExitOk;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
    const auto results = run_acceptance(cfg.seed, cfg.criteria, nullptr);
    bool all = true;
    std::ostringstream os;
    if (cfg.json) {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            all = all && r.pass;
        }
        os << json{{"seed", cfg.seed}, {"criteria", arr}, {"pass", all}}.dump(2) << "\n";
    } else {
        os << "seed " << cfg.seed << "\n";
        for (const auto& r : results) {
            os << format_result(r, cfg.timing) << "\n";
            all = all && r.pass;
        }
        os << (all ? "ALL PASS" : "FAILURES") << "\n";
    }
    emit(cfg, out, os.str());
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Split: return cmd_split(config, out);
            case Command::Verify: return cmd_verify(config, out);
            case Command::Rcf: return cmd_rcf(config, out);
            case Command::Oracle: return cmd_oracle(config, out);
            case Command::Selftest: return cmd_selftest(config, out);
        }
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConstructionError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace nildiag::tools
