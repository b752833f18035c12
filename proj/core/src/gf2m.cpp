#include "nildiag/gf2m.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

#include "nildiag/errors.hpp"

namespace nildiag {

namespace {

int degree_of(std::uint64_t p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t f2_mod(std::uint64_t a, std::uint64_t b) noexcept {
    const int db = degree_of(b);
    for (int da = degree_of(a); da >= db; da = degree_of(a)) a ^= b << (da - db);
    return a;
}

}  // namespace

bool is_irreducible_f2(std::uint64_t poly) noexcept {
    const int d = degree_of(poly);
    if (d < 1) return false;
    for (std::uint64_t divisor = 2; degree_of(divisor) <= d / 2; ++divisor) {
        if (f2_mod(poly, divisor) == 0) return false;
    }
    return true;
}

Fe FieldSpec::mul(Fe x, Fe y) const noexcept {
    // carry-less product, then reduce from the top bit down
    std::uint64_t a = x.bits();
    std::uint64_t b = y.bits();
    std::uint64_t prod = 0;
    while (b != 0) {
        if (b & 1U) prod ^= a;
        a <<= 1;
        b >>= 1;
    }
    const std::uint64_t mod = modulus_;
    for (int bit = 2 * static_cast<int>(m_) - 2; bit >= static_cast<int>(m_); --bit) {
        if ((prod >> bit) & 1U) prod ^= mod << (bit - static_cast<int>(m_));
    }
    return Fe{static_cast<std::uint32_t>(prod)};
}

Fe FieldSpec::pow(Fe x, std::uint64_t e) const noexcept {
    Fe result = kOne;
    Fe base = x;
    while (e != 0) {
        if (e & 1U) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Fe FieldSpec::inv(Fe x) const {
    if (x.is_zero()) throw PreconditionError("division by zero");
    return pow(x, q() - 2);
}

Fe FieldSpec::sqrt(Fe x) const noexcept {
    Fe y = x;
    for (unsigned i = 1; i < m_; ++i) y = mul(y, y);
    return y;
}

bool FieldSpec::in_subfield(Fe x, unsigned d) const {
    if (d == 0 || m_ % d != 0) throw PreconditionError("not a subfield");
    Fe y = x;
    for (unsigned i = 0; i < d; ++i) y = mul(y, y);
    return y == x;
}

std::string FieldSpec::designation() const {
    std::ostringstream out;
    out << "gf(2^" << m_ << ")[modulus=0x" << std::hex << modulus_ << "]";
    return out.str();
}

FieldSpec make_field(unsigned m, std::optional<std::uint32_t> modulus) {
    if (m == 0 || m > kMaxDegree) throw PreconditionError("invalid degree");
    const std::uint32_t mod = modulus.value_or(kDefaultModuli[m]);
    if (degree_of(mod) != static_cast<int>(m) || !is_irreducible_f2(mod)) {
        throw PreconditionError("invalid modulus");
    }
    return FieldSpec{m, mod};
}

FieldSpec parse_field(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(static_cast<char>(std::tolower(ch)));
    }
    auto fail = [&] { return PreconditionError("invalid field designation '" + std::string(text) + "'"); };

    constexpr std::string_view head = "gf(2^";
    if (s.rfind(head, 0) != 0) throw fail();
    std::size_t pos = head.size();
    unsigned m = 0;
    auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), m);
    if (ec != std::errc{} || p == s.data() + s.size() || *p != ')') throw fail();
    pos = static_cast<std::size_t>(p - s.data()) + 1;

    std::optional<std::uint32_t> modulus;
    if (pos != s.size()) {
        constexpr std::string_view tag = "[modulus=0x";
        if (s.compare(pos, tag.size(), tag) != 0) throw fail();
        pos += tag.size();
        std::uint32_t value = 0;
        auto [q, ec2] = std::from_chars(s.data() + pos, s.data() + s.size(), value, 16);
        if (ec2 != std::errc{} || q + 1 != s.data() + s.size() || *q != ']') throw fail();
        modulus = value;
    }
    return make_field(m, modulus);
}

std::string to_hex(Fe x) {
    char buf[16];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x.bits(), 16);
    return std::string(buf, p);
}

}  // namespace nildiag
