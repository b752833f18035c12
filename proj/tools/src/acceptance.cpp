#include "nildiag_tools/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "nildiag/canonical.hpp"
#include "nildiag/errors.hpp"
#include "nildiag/splitter.hpp"
#include "nildiag/verify.hpp"

namespace nildiag::tools {

Fe random_element(const FieldSpec& f, Rng& rng) { return Fe{static_cast<std::uint32_t>(rng() & (f.q() - 1))}; }

Mat random_matrix(const FieldSpec& f, std::size_t n, Rng& rng) {
    Mat m(f, n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m(r, c) = random_element(f, rng);
    }
    return m;
}

Mat random_invertible(const FieldSpec& f, std::size_t n, Rng& rng) {
    while (true) {
        Mat m = random_matrix(f, n, rng);
        if (rank(m) == n) return m;
    }
}

Poly random_monic(const FieldSpec& f, std::size_t n, Rng& rng) {
    std::vector<Fe> lower(n);
    for (Fe& x : lower) x = random_element(f, rng);
    return Poly::monic_from_lower(f, lower);
}

Mat random_derogatory(const FieldSpec& f, std::size_t n, Rng& rng) {
    if (n < 2) return random_matrix(f, n, rng);
    // two-factor chain g | g*h with deg g = d1 >= 1, 2*d1 + deg h = n
    const std::size_t d1 = 1 + rng() % (n / 2);
    const Poly g = random_monic(f, d1, rng);
    const Poly h = random_monic(f, n - 2 * d1, rng);
    const Mat blocks = direct_sum(companion_of(g), companion_of(g * h));
    return conjugate(random_invertible(f, n, rng), blocks);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
    std::uint64_t total = 0;
    std::uint64_t failed = 0;
    std::string first_failure;

    void record(bool ok, const std::string& what) {
        ++total;
        if (!ok) {
            if (failed == 0) first_failure = what;
            ++failed;
        }
    }
    std::string summary() const {
        std::string s = std::to_string(total - failed) + "/" + std::to_string(total);
        if (failed) s += "; first failure: " + first_failure;
        return s;
    }
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::seed_seq seq{seed, seed >> 32, a, b, c};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (std::uint64_t{words[0]} << 32) | words[1];
}

std::string describe(const FieldSpec& f, std::size_t n, std::size_t i) {
    return f.designation() + " n=" + std::to_string(n) + " #" + std::to_string(i);
}

template <class Fn>
std::string guarded(Fn&& fn) {
    try {
        fn();
        return {};
    } catch (const std::exception& e) {
        return e.what();
    }
}

const std::vector<unsigned> kMainDegrees{2, 3, 4};

// Criteria 1 and 2 share instances; one pass produces both tallies.
void main_suite(std::uint64_t seed, Tally& diag, Tally& potency, std::ostream* log) {
    for (unsigned m : kMainDegrees) {
        const FieldSpec f = make_field(m);
        for (std::size_t n = 1; n <= 12; ++n) {
            Rng rng(derive_seed(seed, 1, m, n));
            for (std::size_t i = 0; i < 1000; ++i) {
                // every fourth instance is built derogatory on purpose
                const Mat a = i % 4 == 3 ? random_derogatory(f, n, rng) : random_matrix(f, n, rng);
                const std::string where = describe(f, n, i);
                std::optional<SplitCertificate> cert;
                const std::string err = guarded([&] { cert = split_any(a); });
                if (!cert) {
                    diag.record(false, where + ": " + err);
                    potency.record(false, where + ": " + err);
                    continue;
                }
                const bool sum = cert->n + cert->d == a;
                const bool sq = (cert->n * cert->n).is_zero();
                const bool split = splits_distinct(minimal_polynomial(cert->d));
                diag.record(sum && sq && split, where + (sum ? "" : " sum") + (sq ? "" : " N^2") + (split ? "" : " minpoly"));
                potency.record(pow(cert->d, f.q()) == cert->d, where + " D^q != D");
            }
            if (log) *log << "  [1,2] " << f.designation() << " n=" << n << " done\n" << std::flush;
        }
    }
}

Tally f2_suite(std::uint64_t seed, std::ostream* log) {
    Tally t;
    const FieldSpec f = make_field(1);
    for (std::size_t n = 1; n <= 16; ++n) {
        Rng rng(derive_seed(seed, 3, n));
        for (std::size_t i = 0; i < 1000; ++i) {
            const Mat a = i % 4 == 3 ? random_derogatory(f, n, rng) : random_matrix(f, n, rng);
            const std::string where = describe(f, n, i);
            std::optional<SplitCertificate> cert;
            const std::string err = guarded([&] { cert = split_f2(a); });
            if (!cert) {
                t.record(false, where + ": " + err);
                continue;
            }
            const bool in_f2 = std::all_of(cert->n.entries().begin(), cert->n.entries().end(), [](Fe x) { return x.bits() <= 1; }) &&
                               std::all_of(cert->d.entries().begin(), cert->d.entries().end(), [](Fe x) { return x.bits() <= 1; });
            const bool ok = cert->n + cert->d == a && (cert->n * cert->n).is_zero() && pow(cert->d, 4) == cert->d && in_f2;
            t.record(ok, where);
        }
        if (log) *log << "  [3] n=" << n << " done\n" << std::flush;
    }
    return t;
}

Tally golden_suite() {
    Tally t;
    const FieldSpec f2 = make_field(1);
    const FieldSpec f4 = make_field(2);

    // x^4 + x^3 + 1
    {
        const Mat a(f2, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}});
        const Mat n(f2, {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
        const Mat d(f2, {{1, 1, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}});
        std::optional<SplitCertificate> cert;
        const std::string err = guarded([&] { cert = split_f2(a); });
        t.record(cert && cert->n == n && cert->d == d && (n * n).is_zero() && pow(d, 4) == d, "quartic x^4+x^3+1 " + err);
    }
    // order 3 over GF(2), all coefficient triples
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
        const std::uint32_t u0 = bits & 1, u1 = (bits >> 1) & 1, u2 = (bits >> 2) & 1;
        const Mat a(f2, {{0, 0, u0}, {1, 0, u1}, {0, 1, u2}});
        const Mat d(f2, {{0, 0, u2 ^ 1}, {1, 0, u2}, {0, 1, u2}});
        const Mat n(f2, {{0, 0, u2 ^ 1 ^ u0}, {0, 0, u2 ^ u1}, {0, 0, 0}});
        std::optional<SplitCertificate> cert;
        const std::string err = guarded([&] { cert = split_f2(a); });
        t.record(cert && cert->n == n && cert->d == d, "order-3 triple " + std::to_string(bits) + " " + err);
    }
    // order 2, both trace cases, over GF(4)
    for (std::uint32_t u0 = 0; u0 < 4; ++u0) {
        for (std::uint32_t u1 = 0; u1 < 4; ++u1) {
            const Mat a(f4, {{0, u0}, {1, u1}});
            std::optional<SplitCertificate> cert;
            const std::string err = guarded([&] { cert = split_any(a); });
            bool ok = false;
            if (cert && u1 != 0) {
                ok = cert->n == Mat(f4, {{0, u0}, {0, 0}}) && cert->d == Mat(f4, {{0, 0}, {1, u1}});
            } else if (cert) {
                const Fe v = f4.sqrt(Fe{u0});
                ok = cert->n == Mat(f4, {{v.bits(), f4.mul(v, v).bits()}, {1, v.bits()}}) && cert->d == Mat::scalar(f4, 2, v);
            }
            t.record(ok, "order-2 u0=" + std::to_string(u0) + " u1=" + std::to_string(u1) + " " + err);
        }
    }
    // x^2 + x + 1 over GF(2): D^2 = D
    {
        const Mat a(f2, {{0, 1}, {1, 1}});
        std::optional<SplitCertificate> cert;
        guarded([&] { cert = split_f2(a); });
        t.record(cert && cert->n == Mat(f2, {{0, 1}, {0, 0}}) && cert->d == Mat(f2, {{0, 0}, {1, 1}}) &&
                     pow(cert->d, 2) == cert->d,
                 "order-2 x^2+x+1 over gf(2)");
    }
    // n = 2, trace 0, subfield improvement: N' = [[0,1+u],[0,0]], D' = [[0,1],[1,0]]
    const FieldSpec f16 = make_field(4);
    for (std::uint32_t u = 0; u < 16; ++u) {
        const Mat a(f16, {{0, u}, {1, 0}});
        std::optional<SplitCertificate> cert;
        const std::string err = guarded([&] { cert = split_subfield(a, 2); });
        const Mat n(f16, {{0, u ^ 1}, {0, 0}});
        const Mat d(f16, {{0, 1}, {1, 0}});
        t.record(cert && cert->n == n && cert->d == d && (n * n).is_zero() && pow(d, 3) == d && cert->potency_s == 3,
                 "subfield order-2 u=" + std::to_string(u) + " " + err);
    }
    return t;
}

Tally impossibility_suite(double& worst_seconds) {
    Tally t;
    const FieldSpec f2 = make_field(1);
    const Mat a(f2, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}});
    const Mat b(f2, {{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}});
    worst_seconds = 0.0;
    for (const auto& [name, m] : {std::pair{"A", a}, std::pair{"B", b}}) {
        for (const auto& [nil, pot, expect] : {std::tuple{3u, 2u, false}, std::tuple{2u, 4u, true}}) {
            const auto t0 = Clock::now();
            const OracleResult r = brute_force_exists(m, nil, pot);
            const double s = std::chrono::duration<double>(Clock::now() - t0).count();
            worst_seconds = std::max(worst_seconds, s);
            const bool witness_ok = !r.exists || (pow(*r.witness_e, pot) == *r.witness_e && pow(m + *r.witness_e, nil).is_zero());
            t.record(r.exists == expect && r.candidates <= 65536 && witness_ok && s < 60.0,
                     std::string(name) + " E^" + std::to_string(pot) + "=E, N^" + std::to_string(nil) + "=0");
        }
    }
    return t;
}

std::vector<Fe> distinct_roots(const Poly& p) {
    std::vector<Fe> out;
    for (const Root& r : roots(p)) out.push_back(r.value);
    return out;
}

Tally eigenvalue_suite(std::uint64_t seed, std::ostream* log) {
    Tally t;
    // order classes: the small cases, then each residue class mod 4 among orders 5..12
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> classes{
        {"order 2", {2}},   {"order 3", {3}},    {"order 4", {4}},    {"4k", {8, 12}},
        {"4k+1", {5, 9}},   {"4k+2", {6, 10}},   {"4k+3", {7, 11}},
    };
    for (unsigned m : {2u, 3u}) {
        const FieldSpec f = make_field(m);
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            const auto& [label, orders] = classes[ci];
            Rng rng(derive_seed(seed, 6, m, ci));
            for (std::size_t i = 0; i < 200; ++i) {
                const std::size_t n = orders[i % orders.size()];
                std::vector<Fe> lower(n);
                for (Fe& x : lower) x = random_element(f, rng);
                if (i % 2 == 1) lower[n - 1] = kZero;  // both trace cases
                const Poly poly = Poly::monic_from_lower(f, lower);
                const Mat a = conjugate(random_invertible(f, n, rng), companion_of(poly));
                const std::string where = f.designation() + " " + label + " n=" + std::to_string(n) + " #" + std::to_string(i);
                std::optional<SplitCertificate> cert;
                const std::string err = guarded([&] { cert = split_any(a); });
                if (!cert || cert->blocks.size() != 1) {
                    t.record(false, where + ": " + err);
                    continue;
                }
                const Poly chi = charpoly(cert->d);
                std::size_t total = 0;
                for (const Root& r : roots(chi)) total += r.multiplicity;
                t.record(total == n && distinct_roots(chi) == cert->blocks.front().expected_eigenvalues,
                         where + " route " + cert->blocks.front().route);
            }
        }
        if (log) *log << "  [6] " << f.designation() << " done\n" << std::flush;
    }
    return t;
}

Tally subfield_suite(std::uint64_t seed) {
    Tally t;
    const FieldSpec f = make_field(4);
    const unsigned d = 2;
    std::vector<Fe> sub, outside;
    for (std::uint32_t x = 0; x < f.q(); ++x) (f.in_subfield(Fe{x}, d) ? sub : outside).push_back(Fe{x});
    Rng rng(derive_seed(seed, 7));
    auto pick = [&rng](const std::vector<Fe>& v) { return v[rng() % v.size()]; };

    auto run_valid = [&](const std::string& label, std::size_t n, std::uint64_t expect_s, auto&& shape) {
        for (std::size_t i = 0; i < 200; ++i) {
            std::vector<Fe> lower(n);
            for (Fe& x : lower) x = random_element(f, rng);
            shape(lower);
            const Mat a = conjugate(random_invertible(f, n, rng), companion_of(Poly::monic_from_lower(f, lower)));
            std::optional<SplitCertificate> cert;
            const std::string err = guarded([&] { cert = split_subfield(a, d); });
            bool ok = false;
            if (cert) {
                const CheckReport rep = check_certificate(a, *cert);
                ok = rep.all_ok() && cert->potency_s == expect_s && pow(cert->d, expect_s) == cert->d;
                if (expect_s == 4) ok = ok && pow(cert->d, 4) == cert->d;
            }
            t.record(ok, label + " n=" + std::to_string(n) + " #" + std::to_string(i) + " " + err);
        }
    };
    // (i) n = 2, trace 0
    run_valid("case i", 2, 3, [](std::vector<Fe>& u) { u[1] = kZero; });
    // (ii) n = 4k+2, trace 0, u_{n-2} in K
    for (std::size_t n : {6u, 10u}) {
        run_valid("case ii", n, 4, [&](std::vector<Fe>& u) {
            u[n - 1] = kZero;
            u[n - 2] = pick(sub);
        });
    }
    // (iii) remaining shapes with the trace in K
    for (std::size_t n : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        run_valid("case iii", n, 4, [&](std::vector<Fe>& u) {
            u[n - 1] = pick(sub);
            if (n == 2 && u[1].is_zero()) u[1] = kOne;
        });
    }
    // violations must raise, never certify
    auto run_violation = [&](const std::string& label, std::size_t n, auto&& shape) {
        for (std::size_t i = 0; i < 200; ++i) {
            std::vector<Fe> lower(n);
            for (Fe& x : lower) x = random_element(f, rng);
            shape(lower);
            const Mat a = companion_of(Poly::monic_from_lower(f, lower));
            std::string message;
            try {
                split_subfield(a, d);
                message = "certificate emitted";
            } catch (const PreconditionError& e) {
                message = e.what();
            }
            t.record(message == "subfield hypothesis violated", label + " n=" + std::to_string(n) + ": " + message);
        }
    };
    run_violation("violation iii", 3, [&](std::vector<Fe>& u) { u[2] = pick(outside); });
    run_violation("violation ii", 6, [&](std::vector<Fe>& u) {
        u[5] = kZero;
        u[4] = pick(outside);
    });
    return t;
}

Tally oracle_suite() {
    Tally t;
    const FieldSpec f2 = make_field(1);
    auto check = [&](const Mat& a, const std::string& where) {
        const bool exists = brute_force_exists(a, 2, 4).exists;
        std::optional<SplitCertificate> cert;
        const std::string err = guarded([&] { cert = split_f2(a); });
        const bool verified = cert && check_certificate(a, *cert).all_ok();
        t.record(exists == cert.has_value() && (!cert || verified), where + " " + err);
    };
    for (std::uint32_t bits = 0; bits < 512; ++bits) {
        Mat a(f2, 3, 3);
        for (std::size_t k = 0; k < 9; ++k) a(k / 3, k % 3) = Fe{(bits >> k) & 1U};
        check(a, "order-3 pattern " + std::to_string(bits));
    }
    for (std::uint32_t bits = 0; bits < 16; ++bits) {
        std::vector<Fe> lower(4);
        for (std::size_t k = 0; k < 4; ++k) lower[k] = Fe{(bits >> k) & 1U};
        check(companion_of(Poly::monic_from_lower(f2, lower)), "quartic companion " + std::to_string(bits));
    }
    return t;
}

Tally rcf_suite(std::uint64_t seed, std::ostream* log) {
    Tally t;
    for (unsigned m : kMainDegrees) {
        const FieldSpec f = make_field(m);
        for (std::size_t n = 1; n <= 12; ++n) {
            Rng rng(derive_seed(seed, 9, m, n));
            for (std::size_t i = 0; i < 500; ++i) {
                const Mat a = i % 4 == 3 ? random_derogatory(f, n, rng) : random_matrix(f, n, rng);
                std::optional<RcfResult> r;
                const std::string err = guarded([&] { r = rcf(a); });
                bool ok = r.has_value();
                if (ok) {
                    ok = rank(r->basis) == n && inverse(r->basis) * a * r->basis == r->blocks;
                    Poly prod = Poly::constant(f, kOne);
                    std::size_t off = 0;
                    Mat blocks(f, n, n);
                    for (std::size_t j = 0; j < r->factors.size(); ++j) {
                        const Poly& fj = r->factors[j];
                        ok = ok && fj.is_monic() && fj.degree() >= 1;
                        if (j + 1 < r->factors.size()) ok = ok && divrem(r->factors[j + 1], fj).second.is_zero();
                        place_block(blocks, companion_of(fj), off, off);
                        off += static_cast<std::size_t>(fj.degree());
                        prod = prod * fj;
                    }
                    ok = ok && off == n && blocks == r->blocks;
                    ok = ok && prod == characteristic_polynomial(a);
                    ok = ok && r->factors.back() == minimal_polynomial(a);
                }
                t.record(ok, describe(f, n, i) + " " + err);
            }
            if (log) *log << "  [9] " << f.designation() << " n=" << n << " done\n" << std::flush;
        }
    }
    return t;
}

}  // namespace

std::string format_result(const CriterionResult& r, bool with_timing) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  (" << r.detail << ")";
    if (with_timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.1f s]", r.seconds);
        os << buf;
    }
    return os.str();
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::set<int>& only, std::ostream* log) {
    auto wanted = [&](int id) { return only.empty() || only.count(id) > 0; };
    std::vector<CriterionResult> out;
    auto timed = [&](int id, const std::string& name, const std::function<Tally()>& body,
                     const std::function<bool(const Tally&, double)>& extra = {}) {
        const auto t0 = Clock::now();
        const Tally t = body();
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        const bool pass = t.failed == 0 && t.total > 0 && (!extra || extra(t, s));
        out.push_back({id, name, pass, t.summary(), s});
        if (log) *log << format_result(out.back()) << "\n" << std::flush;
    };

    if (wanted(1) || wanted(2)) {
        Tally diag, potency;
        const auto t0 = Clock::now();
        main_suite(seed, diag, potency, log);
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (wanted(1)) {
            out.push_back({1, "diagonalizable + square-zero over gf(4), gf(8), gf(16)", diag.failed == 0 && s < 300.0,
                           diag.summary() + (s < 300.0 ? "" : "; over the 5 minute budget"), s});
            if (log) *log << format_result(out.back()) << "\n";
        }
        if (wanted(2)) {
            out.push_back({2, "D^q = D on the same instances", potency.failed == 0, potency.summary(), s});
            if (log) *log << format_result(out.back()) << "\n";
        }
    }
    if (wanted(3)) timed(3, "4-potent + square-zero over gf(2), n = 1..16", [&] { return f2_suite(seed, log); });
    if (wanted(4)) timed(4, "golden decompositions", [] { return golden_suite(); });
    if (wanted(5)) {
        double worst = 0.0;
        timed(5, "impossibility and existence by exhaustive search", [&] { return impossibility_suite(worst); });
    }
    if (wanted(6)) timed(6, "eigenvalue sets per residue class", [&] { return eigenvalue_suite(seed, log); });
    if (wanted(7)) timed(7, "subfield potency over gf(16), d = 2", [&] { return subfield_suite(seed); });
    if (wanted(8)) timed(8, "oracle agreement over gf(2)", [] { return oracle_suite(); });
    if (wanted(9)) timed(9, "rational canonical form contract", [&] { return rcf_suite(seed, log); });
    return out;
}

}  // namespace nildiag::tools
