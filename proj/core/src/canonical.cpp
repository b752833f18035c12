#include "nildiag/canonical.hpp"

#include "nildiag/errors.hpp"

namespace nildiag {

Mat companion_of(const Poly& f) {
    if (!f.is_monic() || f.degree() < 1) throw PreconditionError("companion_of: polynomial must be monic of degree >= 1");
    const auto n = static_cast<std::size_t>(f.degree());
    Mat c(f.field(), n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = kOne;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = f.coeff(i);
    return c;
}

bool is_companion(const Mat& m) {
    if (!m.is_square()) return false;
    const std::size_t n = m.rows();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c + 1 < n; ++c) {
            if (m(r, c) != (r == c + 1 ? kOne : kZero)) return false;
        }
    }
    return true;
}

Mat krylov(const Mat& a, const Vec& v, std::size_t k) {
    std::vector<Vec> cols;
    cols.reserve(k);
    Vec w = v;
    for (std::size_t i = 0; i < k; ++i) {
        cols.push_back(w);
        if (i + 1 < k) w = a.apply(w);
    }
    Mat out(a.field(), v.size(), k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t r = 0; r < v.size(); ++r) out(r, c) = cols[c][r];
    }
    return out;
}

namespace {

// p(A) v by Horner's rule.
Vec apply_poly(const Mat& a, const Poly& p, const Vec& v) {
    const FieldSpec& F = a.field();
    Vec acc(v.size(), kZero);
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = a.apply(acc);
        const Fe c = p.coeffs()[i];
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) acc[j] = F.add(acc[j], F.mul(c, v[j]));
    }
    return acc;
}

class SmithReducer {
public:
    explicit SmithReducer(const Mat& a) : a_(a), n_(a.order()), F_(a.field()) {
        cells_.reserve(n_ * n_);
        for (std::size_t r = 0; r < n_; ++r) {
            for (std::size_t c = 0; c < n_; ++c) {
                // x*delta - a(r, c); subtraction is addition in characteristic 2
                std::vector<Fe> coeffs{a(r, c)};
                if (r == c) coeffs.push_back(kOne);
                cells_.emplace_back(F_, std::move(coeffs));
            }
        }
        for (std::size_t j = 0; j < n_; ++j) {
            Vec e(n_, kZero);
            e[j] = kOne;
            gens_.push_back(std::move(e));
        }
    }

    void run() {
        for (std::size_t t = 0; t < n_; ++t) reduce_at(t);
    }

    Poly diagonal(std::size_t t) const { return at(t, t); }
    const Vec& generator(std::size_t t) const { return gens_[t]; }

private:
    Poly& at(std::size_t r, std::size_t c) { return cells_[r * n_ + c]; }
    const Poly& at(std::size_t r, std::size_t c) const { return cells_[r * n_ + c]; }

    // Row operations act on U in U (xI - A) V = S; the generators track the
    // columns of U^{-1} evaluated at A, so each row operation is mirrored as
    // the inverse column operation on gens_.
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < n_; ++c) std::swap(at(i, c), at(j, c));
        std::swap(gens_[i], gens_[j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < n_; ++r) std::swap(at(r, i), at(r, j));
    }
    // row i += p * row j
    void add_row_multiple(std::size_t i, std::size_t j, const Poly& p) {
        for (std::size_t c = 0; c < n_; ++c) {
            if (!at(j, c).is_zero()) at(i, c) = at(i, c) + p * at(j, c);
        }
        const Vec pg = apply_poly(a_, p, gens_[i]);
        for (std::size_t k = 0; k < n_; ++k) gens_[j][k] = F_.add(gens_[j][k], pg[k]);
    }
    // col i += p * col j
    void add_col_multiple(std::size_t i, std::size_t j, const Poly& p) {
        for (std::size_t r = 0; r < n_; ++r) {
            if (!at(r, j).is_zero()) at(r, i) = at(r, i) + p * at(r, j);
        }
    }

    void reduce_at(std::size_t t) {
        while (true) {
            // pivot: nonzero entry of least degree, first in row-major order
            std::size_t pr = n_, pc = n_;
            int best = -1;
            for (std::size_t r = t; r < n_; ++r) {
                for (std::size_t c = t; c < n_; ++c) {
                    const Poly& p = at(r, c);
                    if (!p.is_zero() && (best < 0 || p.degree() < best)) best = p.degree(), pr = r, pc = c;
                }
            }
            if (best < 0) throw ConstructionError("rcf: characteristic matrix is singular");
            swap_rows(t, pr);
            swap_cols(t, pc);

            bool clean = true;
            for (std::size_t r = t + 1; r < n_; ++r) {
                if (at(r, t).is_zero()) continue;
                auto [q, rem] = divrem(at(r, t), at(t, t));
                add_row_multiple(r, t, q);
                if (!rem.is_zero()) clean = false;
            }
            for (std::size_t c = t + 1; c < n_; ++c) {
                if (at(t, c).is_zero()) continue;
                auto [q, rem] = divrem(at(t, c), at(t, t));
                add_col_multiple(c, t, q);
                if (!rem.is_zero()) clean = false;
            }
            if (!clean) continue;

            std::size_t bad_row = n_;
            for (std::size_t r = t + 1; r < n_ && bad_row == n_; ++r) {
                for (std::size_t c = t + 1; c < n_; ++c) {
                    if (!divrem(at(r, c), at(t, t)).second.is_zero()) {
                        bad_row = r;
                        break;
                    }
                }
            }
            if (bad_row == n_) break;
            add_row_multiple(t, bad_row, Poly::constant(F_, kOne));
        }
        const Fe lead = at(t, t).leading();
        if (lead != kOne) {
            at(t, t) = at(t, t).scaled(F_.inv(lead));
            for (Fe& x : gens_[t]) x = F_.mul(x, lead);
        }
    }

    const Mat& a_;
    std::size_t n_;
    FieldSpec F_;
    std::vector<Poly> cells_;
    std::vector<Vec> gens_;
};

}  // namespace

RcfResult rcf(const Mat& a) {
    const std::size_t n = a.order();
    const FieldSpec& F = a.field();
    SmithReducer smith(a);
    smith.run();

    std::vector<Poly> factors;
    std::vector<Vec> gens;
    for (std::size_t t = 0; t < n; ++t) {
        Poly d = smith.diagonal(t);
        if (d.degree() < 1) continue;
        factors.push_back(std::move(d));
        gens.push_back(smith.generator(t));
    }

    // Prefer e1 as the generator of a cyclic space, so companion input maps
    // to itself with the identity basis.
    if (factors.size() == 1) {
        Vec e1(n, kZero);
        e1[0] = kOne;
        if (rank(krylov(a, e1, n)) == n) gens[0] = e1;
    }

    std::vector<Vec> cols;
    Mat blocks(F, n, n);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto d = static_cast<std::size_t>(factors[i].degree());
        Vec w = gens[i];
        for (std::size_t j = 0; j < d; ++j) {
            cols.push_back(w);
            w = a.apply(w);
        }
        place_block(blocks, companion_of(factors[i]), offset, offset);
        offset += d;
    }
    if (offset != n) throw ConstructionError("rcf: invariant factor degrees do not sum to the order");
    Mat basis = Mat::from_columns(F, cols);
    if (!(a * basis == basis * blocks) || rank(basis) != n) throw ConstructionError("rcf: basis check failed");
    return {std::move(factors), std::move(basis), std::move(blocks)};
}

Poly charpoly(const Mat& a) {
    Poly p = Poly::constant(a.field(), kOne);
    for (const Poly& f : rcf(a).factors) p = p * f;
    return p;
}

Poly minpoly(const Mat& a) {
    RcfResult r = rcf(a);
    return r.factors.back();
}

bool is_nonderogatory(const Mat& a) { return rcf(a).factors.size() == 1; }

Recompanion recompanion_cyclic(const Mat& a) {
    const std::size_t n = a.order();
    Vec e1(n, kZero);
    e1[0] = kOne;
    Mat q = krylov(a, e1, n);
    if (rank(q) != n) throw PreconditionError("not cyclic");
    Mat c = inverse(q) * a * q;
    if (!is_companion(c)) throw ConstructionError("recompanion_cyclic: result is not a companion matrix");
    return {std::move(q), std::move(c)};
}

}  // namespace nildiag
