#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nildiag {

/// Element of GF(2^m) in polynomial basis: bit i is the coefficient of t^i.
/// Equality is bit-pattern equality; ordering is unsigned integer order of
/// the pattern, which is the canonical order used whenever a "smallest
/// admissible" element is selected.
class Fe {
public:
    constexpr Fe() = default;
    constexpr explicit Fe(std::uint32_t bits) : bits_(bits) {}

    constexpr std::uint32_t bits() const noexcept { return bits_; }
    constexpr bool is_zero() const noexcept { return bits_ == 0; }

    friend constexpr bool operator==(Fe, Fe) = default;
    friend constexpr auto operator<=>(Fe, Fe) = default;

private:
    std::uint32_t bits_ = 0;
};

inline constexpr Fe kZero{0};
inline constexpr Fe kOne{1};

/// Largest extension degree supported by the built-in modulus table.
inline constexpr unsigned kMaxDegree = 16;

/// Lexicographically smallest irreducible polynomial of each degree 1..16,
/// with the degree-m bit set. Index 0 is unused.
inline constexpr std::array<std::uint32_t, kMaxDegree + 1> kDefaultModuli = {
    0x0,    0x2,    0x7,    0xb,    0x13,   0x25,   0x43,   0x83,    0x11b,
    0x203,  0x409,  0x805,  0x1009, 0x201b, 0x4021, 0x8003, 0x1002b,
};

/// The field GF(2^m) = F_2[t] / (modulus). Immutable once built; obtain one
/// through make_field, which validates the modulus.
class FieldSpec {
public:
    unsigned m() const noexcept { return m_; }
    std::uint32_t modulus() const noexcept { return modulus_; }
    std::uint32_t q() const noexcept { return std::uint32_t{1} << m_; }

    bool contains(Fe x) const noexcept { return x.bits() < q(); }

    Fe add(Fe x, Fe y) const noexcept { return Fe{x.bits() ^ y.bits()}; }
    Fe mul(Fe x, Fe y) const noexcept;
    Fe pow(Fe x, std::uint64_t e) const noexcept;
    /// Throws PreconditionError("division by zero") for x = 0.
    Fe inv(Fe x) const;
    /// Unique y with y^2 = x, computed as x^(2^(m-1)).
    Fe sqrt(Fe x) const noexcept;
    /// True iff x lies in the subfield with 2^d elements. d must divide m.
    bool in_subfield(Fe x, unsigned d) const;

    /// The designation string, e.g. "gf(2^2)[modulus=0x7]".
    std::string designation() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    friend FieldSpec make_field(unsigned m, std::optional<std::uint32_t> modulus);
    FieldSpec(unsigned m, std::uint32_t modulus) : m_(m), modulus_(modulus) {}

    unsigned m_ = 1;
    std::uint32_t modulus_ = 0x2;
};

/// Builds GF(2^m). Without an explicit modulus the default table entry is
/// used. Throws PreconditionError("invalid degree") for m = 0 or m > 16 and
/// PreconditionError("invalid modulus") for a reducible or wrong-degree one.
FieldSpec make_field(unsigned m, std::optional<std::uint32_t> modulus = std::nullopt);

/// Parses "gf(2^m)" or "gf(2^m)[modulus=0xHH]" (case-insensitive).
FieldSpec parse_field(std::string_view designation);

/// Irreducibility over F_2 by trial division against every polynomial of
/// degree 1..deg/2. `poly` is a bit pattern.
bool is_irreducible_f2(std::uint64_t poly) noexcept;

/// Lowercase hexadecimal without prefix, e.g. Fe{10} -> "a".
std::string to_hex(Fe x);

}  // namespace nildiag
