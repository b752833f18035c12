#include "nildiag/verify.hpp"

#include <algorithm>

#include "nildiag/errors.hpp"

namespace nildiag {

Poly minimal_polynomial(const Mat& m) {
    const FieldSpec& F = m.field();
    const std::size_t n = m.order();
    std::vector<Vec> flat;
    Mat power = Mat::identity(F, n);
    for (std::size_t k = 0; k <= n; ++k) {
        flat.push_back(power.entries());
        const Mat cols = Mat::from_columns(F, flat);
        const std::vector<Vec> kernel = nullspace(cols);
        if (!kernel.empty()) {
            // the dependence involves the newest power with a nonzero coefficient
            Poly p(F, kernel.front());
            return p.monic();
        }
        power = power * m;
    }
    throw ConstructionError("minimal_polynomial: no dependence found up to degree n");
}

Poly characteristic_polynomial(const Mat& m) {
    const FieldSpec& F = m.field();
    const std::size_t n = m.order();
    // coefficients from the leading one down; signs vanish in characteristic 2
    std::vector<Fe> vect{kOne};
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Fe> t{kOne, m(r, r)};
        if (r > 0) {
            Vec col(r);
            for (std::size_t i = 0; i < r; ++i) col[i] = m(i, r);
            for (std::size_t k = 0; k < r; ++k) {
                Fe dot = kZero;
                for (std::size_t j = 0; j < r; ++j) dot = F.add(dot, F.mul(m(r, j), col[j]));
                t.push_back(dot);
                Vec next(r, kZero);
                for (std::size_t i = 0; i < r; ++i) {
                    for (std::size_t j = 0; j < r; ++j) next[i] = F.add(next[i], F.mul(m(i, j), col[j]));
                }
                col = std::move(next);
            }
        }
        std::vector<Fe> out(r + 2, kZero);
        for (std::size_t i = 0; i < r + 2; ++i) {
            for (std::size_t j = 0; j <= std::min(i, r); ++j) out[i] = F.add(out[i], F.mul(t[i - j], vect[j]));
        }
        vect = std::move(out);
    }
    std::reverse(vect.begin(), vect.end());
    return Poly(F, std::move(vect));
}

CheckReport check_certificate(const Mat& a, const SplitCertificate& cert) {
    if (!(a.field() == cert.n.field()) || !(a.field() == cert.d.field())) throw PreconditionError("field mismatch");
    if (a.order() != cert.n.order() || a.order() != cert.d.order()) throw PreconditionError("order mismatch");

    CheckReport rep;
    rep.potency_claimed = cert.potency_s;
    rep.sum_ok = cert.n + cert.d == a;
    if (!rep.sum_ok) rep.failures.emplace_back("sum: A != N + D");
    rep.square_zero_ok = (cert.n * cert.n).is_zero();
    if (!rep.square_zero_ok) rep.failures.emplace_back("square-zero: N^2 != 0");

    if (cert.potency_s >= 2) {
        rep.potency_ok = pow(cert.d, cert.potency_s) == cert.d;
        if (!rep.potency_ok) rep.failures.emplace_back("potency: D^" + std::to_string(cert.potency_s) + " != D");
    } else {
        rep.failures.emplace_back("potency: no exponent claimed");
    }

    if (cert.mode == Mode::DiagSplit || cert.diagonalizable) {
        const Poly mu = minimal_polynomial(cert.d);
        const bool diag = splits_distinct(mu);
        rep.diagonalizable_ok = diag;
        if (!diag) {
            rep.failures.emplace_back("diagonalizable: minimal polynomial of D has a repeated or missing root");
        } else {
            const std::size_t n = a.order();
            std::size_t total = 0;
            for (const Root& r : roots(mu)) {
                const std::size_t mult = nullspace(cert.d.shifted(r.value)).size();
                rep.eigenvalues.push_back({r.value, mult});
                total += mult;
            }
            if (total != n) rep.failures.emplace_back("diagonalizable: eigenspaces do not span");
            std::vector<Root> claimed = cert.eigenvalues;
            if (!claimed.empty() && claimed != rep.eigenvalues) {
                rep.failures.emplace_back("eigenvalues: claimed multiset differs from D");
            }
        }
    }
    return rep;
}

OracleResult brute_force_exists(const Mat& a, unsigned nil_index_max, unsigned potency) {
    const FieldSpec& F = a.field();
    if (F.q() != 2) throw PreconditionError("brute_force_exists requires gf(2^1)");
    const std::size_t n = a.order();
    if (n > 4) throw PreconditionError("search space limit");
    if (potency < 2 || nil_index_max < 1) throw PreconditionError("brute_force_exists: invalid exponents");

    OracleResult out;
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    Mat e(F, n, n);
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        ++out.candidates;
        for (std::size_t k = 0; k < n * n; ++k) e(k / n, k % n) = Fe{static_cast<std::uint32_t>((bits >> k) & 1U)};
        if (pow(e, potency) != e) continue;
        if (!pow(a + e, nil_index_max).is_zero()) continue;
        out.exists = true;
        out.witness_e = e;
        break;
    }
    return out;
}

std::uint64_t enumerate_square_zero(std::size_t n, const FieldSpec& field, const std::function<void(const Mat&)>& sink) {
    const std::size_t cells = n * n;
    const unsigned m = field.m();
    if (cells * m > 24) throw PreconditionError("search space limit");
    const std::uint64_t total = std::uint64_t{1} << (cells * m);
    const std::uint32_t mask = field.q() - 1;
    std::uint64_t count = 0;
    Mat x(field, n, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        for (std::size_t k = 0; k < cells; ++k) {
            x(k / n, k % n) = Fe{static_cast<std::uint32_t>(idx >> (k * m)) & mask};
        }
        if (!(x * x).is_zero()) continue;
        ++count;
        if (sink) sink(x);
    }
    return count;
}

}  // namespace nildiag
