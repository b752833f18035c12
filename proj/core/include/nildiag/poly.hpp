#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nildiag/gf2m.hpp"

namespace nildiag {

/// Dense univariate polynomial over GF(2^m). coeff(i) is the coefficient of
/// x^i. Stored trimmed: the leading coefficient is nonzero, and the zero
/// polynomial has no coefficients (degree -1).
class Poly {
public:
    explicit Poly(FieldSpec field) : field_(field) {}
    Poly(FieldSpec field, std::vector<Fe> coeffs);

    static Poly constant(FieldSpec field, Fe c);
    /// x^k
    static Poly monomial(FieldSpec field, std::size_t k, Fe c = kOne);
    /// Monic polynomial x^n + u_{n-1} x^{n-1} + ... + u_0 from (u_0, ..., u_{n-1}).
    static Poly monic_from_lower(FieldSpec field, const std::vector<Fe>& lower);

    const FieldSpec& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == kOne; }
    bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == kOne; }
    /// Zero beyond the degree.
    Fe coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : kZero; }
    Fe leading() const noexcept { return coeffs_.empty() ? kZero : coeffs_.back(); }
    const std::vector<Fe>& coeffs() const noexcept { return coeffs_; }

    Fe eval(Fe x) const noexcept;
    Poly monic() const;
    /// Formal derivative. In characteristic 2 every even-degree term vanishes,
    /// so f' = 0 does not imply f is constant (e.g. f = x^2 + 1).
    Poly derivative() const;

    friend Poly operator+(const Poly& f, const Poly& g);
    friend Poly operator-(const Poly& f, const Poly& g) { return f + g; }
    friend Poly operator*(const Poly& f, const Poly& g);
    Poly scaled(Fe c) const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim() noexcept;

    FieldSpec field_;
    std::vector<Fe> coeffs_;
};

/// (quotient, remainder) with deg(remainder) < deg(divisor). Throws
/// PreconditionError("division by zero polynomial").
std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& f, const Poly& g);
/// Product modulo `mod`.
Poly mulmod(const Poly& f, const Poly& g, const Poly& mod);
/// f(x + b).
Poly shift(const Poly& f, Fe b);

/// True iff f divides x^q - x, i.e. f is squarefree and splits into
/// linear factors over GF(q). f must be monic.
bool splits_distinct(const Poly& f);

struct Root {
    Fe value;
    std::size_t multiplicity;
    friend bool operator==(const Root&, const Root&) = default;
};

/// All roots in the base field with multiplicities, ascending by element
/// order. Scans the whole field, so q is limited to 2^16.
std::vector<Root> roots(const Poly& f);

/// "u0,u1,...,un" in hexadecimal, low degree first. The zero polynomial is "0".
std::string format_poly(const Poly& f);
Poly parse_poly(const FieldSpec& field, std::string_view text);

void require_same_field(const FieldSpec& a, const FieldSpec& b);

}  // namespace nildiag
