#pragma once

// Binary extension fields GF(2^r) for 1 <= r <= 32, in the polynomial basis.
// An element is the bit pattern of its coefficient vector: bit i holds the
// coefficient of x^i. Addition is XOR; multiplication is carry-less product
// followed by reduction modulo an irreducible polynomial of degree r.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "pcpmw/errors.hpp"

namespace pcpmw {

class Field {
public:
    // modulus_bits encodes the reduction polynomial with bit i = coeff of x^i;
    // its degree must be exactly r and it must be irreducible over F2.
    // Irreducibility is verified by trial division against every polynomial
    // of degree 1..r/2, so a bad table entry cannot slip through silently.
    Field(unsigned r, std::uint64_t modulus_bits);

    // Shipped modulus table: the lexicographically smallest irreducible
    // polynomial of each degree, so identical fields arise on every machine.
    static Field with_default_modulus(unsigned r);
    static std::uint64_t default_modulus(unsigned r);

    unsigned r() const { return r_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t modulus_bits() const { return modulus_; }

    bool operator==(const Field& o) const { return r_ == o.r_ && modulus_ == o.modulus_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    // Raw operations on bit patterns. Values must have all bits >= r clear.
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a ^ b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const; // extended Euclid on F2[x]; throws ZeroInverse
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    // Uniform element. q divides the generator's range exactly, so masking
    // the low r bits introduces no bias. The caller owns the stream.
    std::uint64_t sample(std::mt19937_64& rng) const { return rng() & mask_; }

    void check_value(std::uint64_t v) const {
        if (v & ~mask_) throw DegreeMismatch("value has bits beyond extension degree");
    }

    // Lowercase hex, exactly ceil(r/4) digits; bit i of the value is the
    // coefficient of x^i.
    std::string to_hex(std::uint64_t v) const;
    std::uint64_t from_hex(std::string_view s) const;
    unsigned hex_digits() const { return (r_ + 3) / 4; }

private:
    unsigned r_;
    std::uint64_t modulus_;
    std::uint64_t q_;
    std::uint64_t mask_;
};

// Value-type element pinned to a Field. Mixed-field arithmetic throws
// SpecMismatch. The Field must outlive its elements.
class FieldElement {
public:
    FieldElement(const Field& f, std::uint64_t v) : field_(&f), v_(v) { f.check_value(v); }

    const Field& field() const { return *field_; }
    std::uint64_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        same_field(o);
        return FieldElement(*field_, field_->add(v_, o.v_), nocheck{});
    }
    FieldElement operator*(const FieldElement& o) const {
        same_field(o);
        return FieldElement(*field_, field_->mul(v_, o.v_), nocheck{});
    }
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inverse() const { return FieldElement(*field_, field_->inv(v_), nocheck{}); }

    bool operator==(const FieldElement& o) const { same_field(o); return v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string to_hex() const { return field_->to_hex(v_); }

private:
    struct nocheck {};
    FieldElement(const Field& f, std::uint64_t v, nocheck) : field_(&f), v_(v) {}

    void same_field(const FieldElement& o) const {
        if (*field_ != *o.field_) throw SpecMismatch("elements of different fields");
    }

    const Field* field_;
    std::uint64_t v_;
};

} // namespace pcpmw
