#include "pcpmw/field.hpp"

#include <array>

namespace pcpmw {

namespace {

int poly_degree(std::uint64_t p) {
    // degree of the zero polynomial is reported as -1
    if (p == 0) return -1;
    return 63 - __builtin_clzll(p);
}

// remainder of a modulo b over F2[x], b != 0
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    int db = poly_degree(b);
    while (a != 0 && poly_degree(a) >= db) {
        a ^= b << (poly_degree(a) - db);
    }
    return a;
}

// Lexicographically smallest irreducible polynomial of each degree 1..32.
// Index r-1; bit i = coefficient of x^i.
constexpr std::array<std::uint64_t, 32> kDefaultModuli = {
    0x2,         0x7,         0xb,         0x13,
    0x25,        0x43,        0x83,        0x11b,
    0x203,       0x409,       0x805,       0x1009,
    0x201b,      0x4021,      0x8003,      0x1002b,
    0x20009,     0x40009,     0x80027,     0x100009,
    0x200005,    0x400003,    0x800021,    0x100001b,
    0x2000009,   0x400001b,   0x8000027,   0x10000003,
    0x20000005,  0x40000003,  0x80000009,  0x10000008d,
};

} // namespace

Field::Field(unsigned r, std::uint64_t modulus_bits) : r_(r), modulus_(modulus_bits) {
    if (r < 1 || r > 32) throw DegreeMismatch("extension degree must be in 1..32");
    if (poly_degree(modulus_bits) != static_cast<int>(r))
        throw DegreeMismatch("modulus degree differs from extension degree");
    for (unsigned d = 1; d <= r / 2; ++d) {
        for (std::uint64_t cand = std::uint64_t(1) << d; cand < (std::uint64_t(1) << (d + 1)); ++cand) {
            if (poly_mod(modulus_bits, cand) == 0)
                throw ReducibleModulus("modulus divisible by a degree-" + std::to_string(d) + " polynomial");
        }
    }
    q_ = std::uint64_t(1) << r;
    mask_ = q_ - 1;
}

Field Field::with_default_modulus(unsigned r) {
    return Field(r, default_modulus(r));
}

std::uint64_t Field::default_modulus(unsigned r) {
    if (r < 1 || r > 32) throw DegreeMismatch("extension degree must be in 1..32");
    return kDefaultModuli[r - 1];
}

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
    // carry-less product, reducing on the fly so intermediates stay below 2^r
    std::uint64_t acc = 0;
    while (b != 0) {
        if (b & 1) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a & q_) a ^= modulus_;
    }
    return acc;
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a == 0) throw ZeroInverse("zero has no multiplicative inverse");
    // extended Euclid over F2[x]: maintain s*a + t*modulus = rem (t untracked)
    std::uint64_t r0 = modulus_, r1 = a;
    std::uint64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        // divide r0 by r1 one monomial at a time
        std::uint64_t quot_applied_r = r0, quot_applied_s = s0;
        int d1 = poly_degree(r1);
        while (quot_applied_r != 0 && poly_degree(quot_applied_r) >= d1) {
            int shift = poly_degree(quot_applied_r) - d1;
            quot_applied_r ^= r1 << shift;
            quot_applied_s ^= s1 << shift;
        }
        r0 = r1; r1 = quot_applied_r;
        s0 = s1; s1 = quot_applied_s;
    }
    // r0 == 1 since the modulus is irreducible; s0 is a polynomial of degree < r
    return poly_mod(s0, modulus_);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t acc = 1;
    while (e != 0) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

std::string Field::to_hex(std::uint64_t v) const {
    check_value(v);
    static const char* digits = "0123456789abcdef";
    unsigned n = hex_digits();
    std::string out(n, '0');
    for (unsigned i = 0; i < n; ++i) {
        out[n - 1 - i] = digits[(v >> (4 * i)) & 0xf];
    }
    return out;
}

std::uint64_t Field::from_hex(std::string_view s) const {
    if (s.size() != hex_digits()) throw InputError("field element hex string has wrong length");
    std::uint64_t v = 0;
    for (char c : s) {
        unsigned d;
        if (c >= '0' && c <= '9') d = unsigned(c - '0');
        else if (c >= 'a' && c <= 'f') d = unsigned(c - 'a') + 10;
        else throw InputError("field element hex string has invalid digit");
        v = (v << 4) | d;
    }
    check_value(v);
    return v;
}

} // namespace pcpmw
