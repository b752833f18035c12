#include "nildiag/splitter.hpp"

#include <algorithm>
#include <functional>

#include "nildiag/canonical.hpp"
#include "nildiag/errors.hpp"

namespace nildiag {

const std::uint16_t kF2QuarticFallback[8] = {0x77, 0x833, 0x50, 0xff, 0x10, 0x33, 0x90, 0x858};

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::DiagSplit: return "diag-split";
        case Mode::Potent4F2: return "potent4-f2";
        case Mode::PotentSubfield: return "potent-subfield";
    }
    return "?";
}

Mode parse_mode(std::string_view text) {
    if (text == "diag-split") return Mode::DiagSplit;
    if (text == "potent4-f2") return Mode::Potent4F2;
    if (text == "potent-subfield") return Mode::PotentSubfield;
    throw PreconditionError("unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(AtomKind kind) {
    switch (kind) {
        case AtomKind::D1: return "D1";
        case AtomKind::D2: return "D2";
        case AtomKind::D3: return "D3";
        case AtomKind::D4: return "D4";
    }
    return "?";
}

namespace {

using Admissible = std::function<bool(Fe)>;

class Arith {
public:
    explicit Arith(const FieldSpec& f) : F(f) {}
    Fe add(Fe x, Fe y) const { return F.add(x, y); }
    Fe add(Fe x, Fe y, Fe z) const { return F.add(F.add(x, y), z); }
    Fe mul(Fe x, Fe y) const { return F.mul(x, y); }
    Fe sq(Fe x) const { return F.mul(x, x); }
    /// a^2 + a
    Fe h(Fe a) const { return F.add(sq(a), a); }
    /// a^2 + a + 1
    Fe h1(Fe a) const { return F.add(h(a), kOne); }

    const FieldSpec& F;
};

std::vector<Fe> sorted_set(std::vector<Fe> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

/// Smallest admissible a outside `forbidden`, or the validated override.
Fe choose_a(const FieldSpec& F, const std::vector<Fe>& forbidden, const std::optional<Fe>& override_a,
            const Admissible& allowed, std::string_view none_message) {
    auto ok = [&](Fe x) {
        return std::find(forbidden.begin(), forbidden.end(), x) == forbidden.end() && (!allowed || allowed(x));
    };
    if (override_a) {
        if (!F.contains(*override_a) || !ok(*override_a)) {
            throw PreconditionError("inadmissible a = " + to_hex(*override_a) + " for this block");
        }
        return *override_a;
    }
    for (std::uint32_t bits = 0; bits < F.q(); ++bits) {
        if (ok(Fe{bits})) return Fe{bits};
    }
    throw PreconditionError(std::string(none_message));
}

Mat atom_d2(const FieldSpec& F, Fe u1) {
    Mat d(F, 2, 2);
    d(1, 0) = kOne;
    d(1, 1) = u1;
    return d;
}

Mat atom_d3(const FieldSpec& F, Fe u2, Fe a) {
    const Arith k(F);
    Mat d(F, 3, 3);
    d(1, 0) = kOne;
    d(2, 1) = kOne;
    d(0, 2) = k.mul(k.h(a), k.add(u2, kOne));
    d(1, 2) = k.add(u2, k.h1(a));
    d(2, 2) = u2;
    return d;
}

Mat atom_d4(const FieldSpec& F, Fe a) {
    const Arith k(F);
    Mat d(F, 4, 4);
    d(1, 0) = kOne;
    d(2, 1) = kOne;
    d(3, 2) = kOne;
    d(1, 3) = k.h(a);
    d(2, 3) = k.h1(a);
    return d;
}

std::size_t atom_size(AtomKind kind) {
    switch (kind) {
        case AtomKind::D1: return 1;
        case AtomKind::D2: return 2;
        case AtomKind::D3: return 3;
        case AtomKind::D4: return 4;
    }
    return 0;
}

/// Where the coupling entries of a non-final atom go. `ul` is the companion
/// coefficient in the atom's last row, `last` that row, n the order.
///   LastTwoRows:  D(last-1, n-1) = D(last, n-1) = ul
///   RowsTwoFour:  D(last-2, n-1) = D(last, n-1) = ul
///   KernelVector: ul times the 0-eigenvector of the atom, in column n-1
///   Staggered:    D(last-1, n-2) = D(last, n-1) = ul
enum class Coupling { LastTwoRows, RowsTwoFour, KernelVector, Staggered };

struct LargePlan {
    std::string route;
    Normalization normalization;
    std::vector<AtomKind> atoms;
    Coupling coupling;
    Fe expected_trace;  ///< trace of the normalized companion
    std::vector<Fe> eigenvalues;
};

void require_post(bool ok, const std::string& what) {
    if (!ok) throw ConstructionError("construction error: " + what);
}

/// Assembles D for a normalized companion `c` with the given atom layout.
Mat assemble(const Mat& c, const std::vector<AtomKind>& atoms, Coupling coupling, Fe a) {
    const FieldSpec& F = c.field();
    const Arith k(F);
    const std::size_t n = c.order();
    Mat d(F, n, n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const AtomKind kind = atoms[i];
        const std::size_t size = atom_size(kind);
        switch (kind) {
            case AtomKind::D1: break;
            case AtomKind::D2: place_block(d, atom_d2(F, kOne), pos, pos); break;
            case AtomKind::D3: place_block(d, atom_d3(F, kZero, a), pos, pos); break;
            case AtomKind::D4: place_block(d, atom_d4(F, a), pos, pos); break;
        }
        const bool final_atom = i + 1 == atoms.size();
        if (!final_atom) {
            const std::size_t last = pos + size - 1;
            const Fe ul = c(last, n - 1);
            switch (coupling) {
                case Coupling::LastTwoRows:
                    d(last - 1, n - 1) = ul;
                    d(last, n - 1) = ul;
                    break;
                case Coupling::RowsTwoFour:
                    d(last - 2, n - 1) = ul;
                    d(last, n - 1) = ul;
                    break;
                case Coupling::KernelVector:
                    if (kind == AtomKind::D4) {
                        d(pos, n - 1) = k.mul(k.h(a), ul);
                        d(pos + 1, n - 1) = k.mul(k.h1(a), ul);
                    }
                    d(last, n - 1) = ul;
                    break;
                case Coupling::Staggered:
                    d(last - 1, n - 2) = ul;
                    d(last, n - 1) = ul;
                    break;
            }
        }
        pos += size;
    }
    if (pos != n) throw ConstructionError("construction error: atom layout does not cover the block");
    return d;
}

std::vector<AtomKind> repeat_then(std::size_t fours, std::initializer_list<AtomKind> tail) {
    std::vector<AtomKind> v(fours, AtomKind::D4);
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
}

/// Orders >= 5: normalize trace by scaling or shifting, return to companion
/// form, assemble D from atoms, derive N = A + D, undo the normalization.
BlockSplit split_large(const Poly& f, Fe a) {
    const FieldSpec& F = f.field();
    const Arith k(F);
    const auto n = static_cast<std::size_t>(f.degree());
    const std::size_t quarter = n / 4;
    const Fe c = f.coeff(n - 1);
    using K = AtomKind;
    const Fe ca = k.mul(c, a);

    LargePlan plan;
    switch (n % 4) {
        case 0:
            if (!c.is_zero()) {
                plan = {"4k-a", {Normalization::Kind::Scale, c}, repeat_then(quarter - 2, {K::D3, K::D3, K::D2}),
                        Coupling::LastTwoRows, kOne, {kZero, c, ca, k.add(ca, c)}};
            } else {
                std::vector<K> atoms{K::D1};
                for (std::size_t i = 0; i + 1 < quarter; ++i) atoms.push_back(K::D4);
                atoms.push_back(K::D3);
                plan = {"4k-b", {}, atoms, Coupling::KernelVector, kZero, {kZero, kOne, a, k.add(a, kOne)}};
            }
            break;
        case 1: {
            const Fe beta = k.add(c, kOne);
            plan = {"4k+1", {Normalization::Kind::Shift, beta}, repeat_then(quarter - 1, {K::D3, K::D2}),
                    Coupling::LastTwoRows, kOne, {c, beta, k.add(c, a), k.add(c, a, kOne)}};
            break;
        }
        case 2:
            if (!c.is_zero()) {
                plan = {"4k+2-a", {Normalization::Kind::Scale, c}, repeat_then(quarter, {K::D2}), Coupling::RowsTwoFour,
                        kOne, {kZero, c, ca, k.add(ca, c)}};
            } else {
                // b^2 = w + a^2 + a + 1 with w the coefficient of x^{n-2}
                const Fe b = F.sqrt(k.add(f.coeff(n - 2), k.h1(a)));
                plan = {"4k+2-b", {Normalization::Kind::Shift, b}, repeat_then(quarter - 1, {K::D3, K::D3}),
                        Coupling::Staggered, kZero, {b, k.add(b, kOne), k.add(b, a), k.add(b, a, kOne)}};
                // with no D4 atom (order 6) nothing contributes the eigenvalue b
                if (quarter == 1) plan.eigenvalues.erase(plan.eigenvalues.begin());
            }
            break;
        case 3:
            plan = {"4k+3", {Normalization::Kind::Shift, c}, repeat_then(quarter, {K::D3}), Coupling::KernelVector,
                    kZero, {c, k.add(c, kOne), k.add(c, a), k.add(c, a, kOne)}};
            break;
    }

    const Mat comp = companion_of(f);
    Mat normalized = comp;
    switch (plan.normalization.kind) {
        case Normalization::Kind::None: break;
        case Normalization::Kind::Scale: normalized = comp.scaled(F.inv(plan.normalization.value)); break;
        case Normalization::Kind::Shift: normalized = comp.shifted(plan.normalization.value); break;
    }
    Recompanion rc = recompanion_cyclic(normalized);
    const Mat& cn = rc.companion;
    require_post(cn(n - 1, n - 1) == plan.expected_trace, "normalized trace mismatch in route " + plan.route);
    if (plan.route == "4k+2-b") {
        require_post(cn(n - 2, n - 1) == k.h1(a), "shifted coefficient mismatch in route 4k+2-b");
    }

    const Mat dn = assemble(cn, plan.atoms, plan.coupling, a);
    const Mat nn = cn + dn;
    require_post((nn * nn).is_zero(), "N^2 != 0 in route " + plan.route);

    const Mat q_inv = inverse(rc.basis);
    Mat d = rc.basis * dn * q_inv;
    Mat nmat = rc.basis * nn * q_inv;
    switch (plan.normalization.kind) {
        case Normalization::Kind::None: break;
        case Normalization::Kind::Scale:
            d = d.scaled(plan.normalization.value);
            nmat = nmat.scaled(plan.normalization.value);
            break;
        case Normalization::Kind::Shift: d = d.shifted(plan.normalization.value); break;
    }

    BlockRecord rec{f, 0, plan.route, a, plan.normalization, {}, sorted_set(plan.eigenvalues)};
    std::size_t pos = 0;
    for (AtomKind kind : plan.atoms) {
        rec.layout.push_back({kind, pos});
        pos += atom_size(kind);
    }
    return {std::move(nmat), std::move(d), std::move(rec)};
}

/// Companion split over a field with q >= 4. `allowed` restricts a.
BlockSplit split_companion_impl(const Poly& f, const std::optional<Fe>& override_a, const Admissible& allowed,
                                std::string_view none_message) {
    const FieldSpec& F = f.field();
    if (!f.is_monic() || f.degree() < 1) throw PreconditionError("block polynomial must be monic of degree >= 1");
    const Arith k(F);
    const auto n = static_cast<std::size_t>(f.degree());
    const Mat c = companion_of(f);
    auto u = [&](std::size_t i) { return f.coeff(i); };

    if (n == 1) {
        return {Mat::zero(F, 1), c, {f, 0, "order1", std::nullopt, {}, {{AtomKind::D1, 0}}, {u(0)}}};
    }
    if (n == 2) {
        Mat nmat(F, 2, 2);
        Mat d(F, 2, 2);
        if (!u(1).is_zero()) {
            nmat(0, 1) = u(0);
            d = atom_d2(F, u(1));
            return {nmat, d, {f, 0, "case2-trace-nonzero", std::nullopt, {}, {{AtomKind::D2, 0}}, sorted_set({kZero, u(1)})}};
        }
        const Fe v = F.sqrt(u(0));
        nmat = Mat(F, 2, 2, {v, k.sq(v), kOne, v});
        d = Mat::scalar(F, 2, v);
        return {nmat, d, {f, 0, "case2-trace-zero", std::nullopt, {}, {{AtomKind::D2, 0}}, {v}}};
    }
    if (F.q() < 4) throw PreconditionError("field too small: use potent4-f2 mode");

    if (n == 3) {
        const Fe a = choose_a(F, {u(2), k.add(u(2), kOne)}, override_a, allowed, none_message);
        Mat d = atom_d3(F, u(2), a);
        Mat nmat = c + d;
        return {nmat, d,
                {f, 0, "case3", a, {}, {{AtomKind::D3, 0}}, sorted_set({a, k.add(a, kOne), k.add(u(2), kOne)})}};
    }
    if (n == 4) {
        const Fe u3 = u(3);
        if (!u3.is_zero()) {
            const Fe a = choose_a(F, {kZero, u3}, override_a, allowed, none_message);
            const Fe s = k.add(a, u3);
            const Fe s2 = k.add(k.sq(a), k.sq(u3));
            Mat nmat(F, 4, 4);
            nmat(1, 0) = kOne;
            nmat(2, 2) = s;
            nmat(2, 3) = s2;
            nmat(3, 2) = kOne;
            nmat(3, 3) = s;
            Mat d(F, 4, 4);
            d(0, 3) = u(0);
            d(1, 3) = u(1);
            d(2, 1) = kOne;
            d(2, 2) = s;
            d(2, 3) = k.add(u(2), s2);
            d(3, 3) = a;
            require_post(nmat + d == c, "case4a sum");
            return {nmat, d, {f, 0, "case4a", a, {}, {{AtomKind::D4, 0}}, sorted_set({kZero, a, s})}};
        }
        const Fe a = choose_a(F, {kZero, kOne}, override_a, allowed, none_message);
        Mat d = atom_d4(F, a);
        Mat nmat = c + d;
        return {nmat, d,
                {f, 0, "case4b", a, {}, {{AtomKind::D4, 0}}, sorted_set({kZero, kOne, a, k.add(a, kOne)})}};
    }
    const Fe a = choose_a(F, {kZero, kOne}, override_a, allowed, none_message);
    return split_large(f, a);
}

void check_block(const BlockSplit& s, const Mat& c) {
    require_post(s.n + s.d == c, "A != N + D in route " + s.record.route);
    require_post((s.n * s.n).is_zero(), "N^2 != 0 in route " + s.record.route);
}

FieldSpec gf4() { return make_field(2); }

Poly embed(const Poly& f, const FieldSpec& to) {
    return Poly(to, f.coeffs());  // GF(2) elements 0, 1 keep their bit patterns
}

Mat project(const Mat& m, const FieldSpec& to) {
    for (Fe x : m.entries()) {
        if (x.bits() > 1) throw ConstructionError("projection failure");
    }
    return Mat(to, m.rows(), m.cols(), m.entries());
}

/// N = P (+N_i) P^{-1}, D = P (+D_i) P^{-1}; block records get their offsets.
SplitCertificate assemble_certificate(Mode mode, const Mat& a, const RcfResult& r, std::vector<BlockSplit> parts) {
    const FieldSpec& F = a.field();
    const std::size_t n = a.order();
    Mat nsum(F, n, n);
    Mat dsum(F, n, n);
    std::vector<BlockRecord> records;
    std::size_t offset = 0;
    for (BlockSplit& part : parts) {
        place_block(nsum, part.n, offset, offset);
        place_block(dsum, part.d, offset, offset);
        part.record.offset = offset;
        for (Atom& atom : part.record.layout) atom.position += offset;
        offset += part.n.order();
        records.push_back(std::move(part.record));
    }
    const Mat p_inv = inverse(r.basis);
    return SplitCertificate{mode, a, r.basis * nsum * p_inv, r.basis * dsum * p_inv, std::move(records)};
}

void finish_emission(SplitCertificate& cert, const std::vector<Mat>& block_ds) {
    cert.sum_ok = cert.n + cert.d == cert.a;
    cert.square_zero_ok = (cert.n * cert.n).is_zero();
    cert.potency_ok = pow(cert.d, cert.potency_s) == cert.d;
    require_post(cert.sum_ok, "A != N + D");
    require_post(cert.square_zero_ok, "N^2 != 0");
    require_post(cert.potency_ok, "D^" + std::to_string(cert.potency_s) + " != D");
    if (cert.mode == Mode::DiagSplit) {
        // over GF(q), D^q = D is equivalent to the minimal polynomial of D
        // dividing x^q - x, i.e. D diagonalizable over the base field
        cert.diagonalizable = true;
        const FieldSpec& F = cert.a.field();
        Poly chi = Poly::constant(F, kOne);
        for (const Mat& d : block_ds) chi = chi * charpoly(d);
        cert.eigenvalues = roots(chi);
    }
}

}  // namespace

BlockSplit split_companion(const Poly& f, const SplitOptions& opts) {
    if (f.field().q() < 4) throw PreconditionError("field too small: use potent4-f2 mode");
    BlockSplit s = split_companion_impl(f, opts.a, {}, "no admissible a");
    check_block(s, companion_of(f));
    require_post(pow(s.d, f.field().q()) == s.d, "D is not diagonalizable in route " + s.record.route);
    return s;
}

BlockSplit split_companion_f2(const Poly& f) {
    const FieldSpec& F2 = f.field();
    if (F2.m() != 1) throw PreconditionError("potent4-f2 mode requires gf(2^1)");
    if (!f.is_monic() || f.degree() < 1) throw PreconditionError("block polynomial must be monic of degree >= 1");
    const auto n = static_cast<std::size_t>(f.degree());
    const Mat c = companion_of(f);
    BlockSplit s{Mat::zero(F2, n), Mat::zero(F2, n), {f, 0, "", std::nullopt, {}, {}, {}}};

    if (n <= 2) {
        s = split_companion_impl(f, std::nullopt, {}, "");
    } else if (n == 4 && f.coeff(3) == kOne) {
        const std::uint32_t idx = f.coeff(0).bits() | (f.coeff(1).bits() << 1) | (f.coeff(2).bits() << 2);
        s.record.layout = {{AtomKind::D4, 0}};
        // x^4 + x^3 + 1: explicit split
        const Mat quartic_n(F2, {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
        const Mat quartic_d(F2, {{1, 1, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}});
        if (idx == 0b001) {
            s.n = quartic_n;
            s.d = quartic_d;
            s.record.route = "f2-quartic-x4+x3+1";
        } else if (idx == 0b111) {
            // x^4 + x^3 + x^2 + x + 1: C + Id has characteristic polynomial x^4 + x^3 + 1
            Recompanion rc = recompanion_cyclic(c.shifted(kOne));
            require_post(rc.companion == companion_of(Poly(F2, {kOne, kZero, kZero, kOne, kOne})),
                         "shifted quartic is not x^4 + x^3 + 1");
            const Mat q_inv = inverse(rc.basis);
            s.n = rc.basis * quartic_n * q_inv;
            s.d = (rc.basis * quartic_d * q_inv).shifted(kOne);
            s.record.route = "f2-quartic-shift";
            s.record.normalization = {Normalization::Kind::Shift, kOne};
        } else {
            const std::uint16_t bits = kF2QuarticFallback[idx];
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t col = 0; col < 4; ++col) s.n(r, col) = Fe{(bits >> (4 * r + col)) & 1U};
            }
            s.d = c + s.n;
            s.record.route = "f2-quartic-table";
        }
    } else {
        // run the GF(4) construction with a^2 + a + 1 = 0 and project back
        const FieldSpec F4 = gf4();
        BlockSplit big = split_companion_impl(embed(f, F4), Fe{0b10}, {}, "");
        check_block(big, companion_of(embed(f, F4)));
        s.n = project(big.n, F2);
        s.d = project(big.d, F2);
        s.record = big.record;
        s.record.factor = f;
        s.record.route = "f2-via-gf4-" + s.record.route;
        s.record.expected_eigenvalues.clear();
    }
    check_block(s, c);
    require_post(pow(s.d, 4) == s.d, "D^4 != D in route " + s.record.route);
    return s;
}

SplitCertificate split_any(const Mat& a, const SplitOptions& opts) {
    if (a.field().q() < 4) throw PreconditionError("field too small: use potent4-f2 mode");
    const RcfResult r = rcf(a);
    std::vector<BlockSplit> parts;
    std::vector<Mat> block_ds;
    for (const Poly& f : r.factors) {
        parts.push_back(split_companion(f, opts));
        block_ds.push_back(parts.back().d);
    }
    SplitCertificate cert = assemble_certificate(Mode::DiagSplit, a, r, std::move(parts));
    cert.potency_s = a.field().q();
    finish_emission(cert, block_ds);
    return cert;
}

SplitCertificate split_f2(const Mat& a) {
    if (a.field().m() != 1) throw PreconditionError("potent4-f2 mode requires gf(2^1)");
    const RcfResult r = rcf(a);
    std::vector<BlockSplit> parts;
    for (const Poly& f : r.factors) parts.push_back(split_companion_f2(f));
    SplitCertificate cert = assemble_certificate(Mode::Potent4F2, a, r, std::move(parts));
    cert.potency_s = 4;
    finish_emission(cert, {});
    return cert;
}

SplitCertificate split_subfield(const Mat& a, unsigned d, const SplitOptions& opts) {
    const FieldSpec& F = a.field();
    if (F.q() < 4) throw PreconditionError("field too small: use potent4-f2 mode");
    if (d < 2 || F.m() % d != 0) throw PreconditionError("not a subfield");
    if (a.order() < 2) throw PreconditionError("potent-subfield mode requires order >= 2");
    const RcfResult r = rcf(a);
    if (r.factors.size() != 1) throw PreconditionError("matrix is derogatory");
    const Poly& f = r.factors.front();
    const auto n = static_cast<std::size_t>(f.degree());
    const Fe tr = f.coeff(n - 1);
    auto in_k = [&F, d](Fe x) { return F.in_subfield(x, d); };

    BlockSplit part{Mat::zero(F, n), Mat::zero(F, n), {f, 0, "", std::nullopt, {}, {}, {}}};
    std::uint64_t s = std::uint64_t{1} << d;
    if (n == 2 && tr.is_zero()) {
        part.n(0, 1) = F.add(kOne, f.coeff(0));
        part.d = Mat(F, {{0, 1}, {1, 0}});
        part.record.route = "subfield-order2-trace-zero";
        part.record.layout = {{AtomKind::D2, 0}};
        s = 3;
    } else {
        const bool case_ii = n % 4 == 2 && n > 2 && tr.is_zero();
        const Fe required = case_ii ? f.coeff(n - 2) : tr;
        if (!in_k(required)) throw PreconditionError("subfield hypothesis violated");
        part = split_companion_impl(f, opts.a, in_k, "no admissible a in subfield");
        check_block(part, companion_of(f));
    }
    if (pow(part.d, s) != part.d) throw ConstructionError("construction error: D^s != D in subfield route");

    SplitCertificate cert = assemble_certificate(Mode::PotentSubfield, a, r, {std::move(part)});
    cert.potency_s = s;
    finish_emission(cert, {});
    return cert;
}

SplitCertificate split(const Mat& a, const SplitOptions& opts) {
    switch (opts.mode) {
        case Mode::DiagSplit:
            if (a.field().q() < 4) throw PreconditionError("field too small: use potent4-f2 mode");
            return split_any(a, opts);
        case Mode::Potent4F2:
            if (opts.a) throw PreconditionError("potent4-f2 mode fixes a to the generator of GF(4); --a is not accepted");
            return split_f2(a);
        case Mode::PotentSubfield:
            if (!opts.subfield_degree) throw PreconditionError("potent-subfield mode requires a subfield degree");
            return split_subfield(a, *opts.subfield_degree, opts);
    }
    throw PreconditionError("unknown mode");
}

}  // namespace nildiag
