#include "nildiag/poly.hpp"

#include <charconv>

#include "nildiag/errors.hpp"

namespace nildiag {

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
    if (!(a == b)) throw PreconditionError("field mismatch: " + a.designation() + " vs " + b.designation());
}

Poly::Poly(FieldSpec field, std::vector<Fe> coeffs) : field_(field), coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(FieldSpec field, Fe c) { return Poly(field, {c}); }

Poly Poly::monomial(FieldSpec field, std::size_t k, Fe c) {
    std::vector<Fe> v(k + 1, kZero);
    v[k] = c;
    return Poly(field, std::move(v));
}

Poly Poly::monic_from_lower(FieldSpec field, const std::vector<Fe>& lower) {
    std::vector<Fe> v(lower);
    v.push_back(kOne);
    return Poly(field, std::move(v));
}

void Poly::trim() noexcept {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Fe Poly::eval(Fe x) const noexcept {
    Fe acc = kZero;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
}

Poly Poly::scaled(Fe c) const {
    std::vector<Fe> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field_.mul(coeffs_[i], c);
    return Poly(field_, std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(leading()));
}

Poly Poly::derivative() const {
    std::vector<Fe> v;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(i % 2 == 1 ? coeffs_[i] : kZero);
    return Poly(field_, std::move(v));
}

Poly operator+(const Poly& f, const Poly& g) {
    require_same_field(f.field_, g.field_);
    std::vector<Fe> v(std::max(f.coeffs_.size(), g.coeffs_.size()), kZero);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.field_.add(f.coeff(i), g.coeff(i));
    return Poly(f.field_, std::move(v));
}

Poly operator*(const Poly& f, const Poly& g) {
    require_same_field(f.field_, g.field_);
    if (f.is_zero() || g.is_zero()) return Poly(f.field_);
    const FieldSpec& F = f.field_;
    std::vector<Fe> v(f.coeffs_.size() + g.coeffs_.size() - 1, kZero);
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
        if (f.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < g.coeffs_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(f.coeffs_[i], g.coeffs_[j]));
    }
    return Poly(F, std::move(v));
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    require_same_field(f.field(), g.field());
    if (g.is_zero()) throw PreconditionError("division by zero polynomial");
    const FieldSpec& F = f.field();
    if (f.degree() < g.degree()) return {Poly(F), f};

    std::vector<Fe> rem = f.coeffs();
    const auto dg = static_cast<std::size_t>(g.degree());
    std::vector<Fe> quot(rem.size() - dg, kZero);
    const Fe lead_inv = F.inv(g.leading());
    for (std::size_t i = rem.size(); i-- > dg;) {
        if (rem[i].is_zero()) continue;
        const Fe c = F.mul(rem[i], lead_inv);
        quot[i - dg] = c;
        for (std::size_t j = 0; j <= dg; ++j) rem[i - dg + j] = F.add(rem[i - dg + j], F.mul(c, g.coeff(j)));
    }
    rem.resize(dg);
    return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly gcd(const Poly& f, const Poly& g) {
    Poly a = f;
    Poly b = g;
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly mulmod(const Poly& f, const Poly& g, const Poly& mod) { return divrem(f * g, mod).second; }

Poly shift(const Poly& f, Fe b) {
    // Horner in the shifted variable: f(x + b) = (...(c_n (x+b) + c_{n-1})(x+b) + ...)
    const FieldSpec& F = f.field();
    const Poly x_plus_b(F, {b, kOne});
    Poly acc(F);
    for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * x_plus_b + Poly::constant(F, f.coeffs()[i]);
    return acc;
}

bool splits_distinct(const Poly& f) {
    if (f.is_zero()) throw PreconditionError("splits_distinct: zero polynomial");
    if (!f.is_monic()) throw PreconditionError("splits_distinct: polynomial must be monic");
    if (f.degree() == 0) return true;
    const FieldSpec& F = f.field();
    const Poly x_mod = divrem(Poly::monomial(F, 1), f).second;
    Poly power = x_mod;
    for (unsigned i = 0; i < F.m(); ++i) power = mulmod(power, power, f);
    return power == x_mod;
}

std::vector<Root> roots(const Poly& f) {
    if (f.is_zero()) throw PreconditionError("roots: zero polynomial");
    const FieldSpec& F = f.field();
    if (F.m() > 16) throw PreconditionError("field scan limit");
    std::vector<Root> out;
    Poly rest = f;
    for (std::uint32_t bits = 0; bits < F.q() && rest.degree() > 0; ++bits) {
        const Fe r{bits};
        const Poly linear(F, {r, kOne});
        std::size_t mult = 0;
        while (rest.degree() > 0 && rest.eval(r).is_zero()) {
            rest = divrem(rest, linear).first;
            ++mult;
        }
        if (mult > 0) out.push_back({r, mult});
    }
    return out;
}

std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) out.push_back(',');
        out += to_hex(f.coeffs()[i]);
    }
    return out;
}

Poly parse_poly(const FieldSpec& field, std::string_view text) {
    std::vector<Fe> coeffs;
    const char* const origin = text.data();
    while (true) {
        const std::size_t comma = text.find(',');
        std::string_view tok = text.substr(0, comma);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        const auto col = static_cast<std::size_t>(tok.data() - origin) + 1;
        if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) tok.remove_prefix(2);
        std::uint32_t v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, 16);
        if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size()) {
            throw ParseError("bad polynomial coefficient", 1, col);
        }
        if (!field.contains(Fe{v})) throw ParseError("coefficient outside the field", 1, col);
        coeffs.push_back(Fe{v});
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return Poly(field, std::move(coeffs));
}

}  // namespace nildiag
