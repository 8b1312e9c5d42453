#pragma once

// Polynomial algebra over GF(2^r): dense univariate polynomials, sparse
// multivariate polynomials, affine lines in F_q^m, functions on the Boolean
// cube and their multilinear extensions, and the two restriction operators
// the proof system is built from (restriction to a line, partial sums over
// a suffix of the cube).

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pcpmw/field.hpp"

namespace pcpmw {

class UnivariatePoly {
public:
    // coeffs[i] is the coefficient of X^i; trailing zeros are allowed and
    // meaningful: the vector length fixes the degree bound.
    UnivariatePoly(const Field& f, std::vector<std::uint64_t> coeffs);

    const Field& field() const { return *field_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    std::size_t degree_bound() const { return coeffs_.size() - 1; }

    std::uint64_t eval(std::uint64_t x) const; // Horner

    bool operator==(const UnivariatePoly& o) const;

private:
    const Field* field_;
    std::vector<std::uint64_t> coeffs_;
};

// Horner evaluation of a bare coefficient vector (coeffs[i] is the
// coefficient of X^i), without constructing a UnivariatePoly.
std::uint64_t eval_univariate(const Field& f, std::span<const std::uint64_t> coeffs,
                              std::uint64_t x);

// Lagrange interpolation through (x, y) pairs with pairwise distinct x.
// The result has degree bound #points - 1.
UnivariatePoly interpolate(const Field& f,
                           std::span<const std::pair<std::uint64_t, std::uint64_t>> points);

// Exponent vectors are dense (one entry per variable); monomials with zero
// coefficient are never stored.
class MultivariatePoly {
public:
    MultivariatePoly(const Field& f, unsigned num_vars, unsigned total_degree_bound);

    const Field& field() const { return *field_; }
    unsigned num_vars() const { return num_vars_; }
    unsigned total_degree_bound() const { return total_degree_bound_; }
    const std::map<std::vector<std::uint32_t>, std::uint64_t>& monomials() const { return monomials_; }

    // accumulates; erases the monomial if the sum cancels
    void add_term(std::vector<std::uint32_t> exponents, std::uint64_t coeff);

    std::uint64_t eval(std::span<const std::uint64_t> point) const;

    MultivariatePoly operator*(const MultivariatePoly& o) const;
    MultivariatePoly operator+(const MultivariatePoly& o) const;

    // substitutes the first variable and reindexes the rest down by one
    MultivariatePoly specialize_first(std::uint64_t value) const;

    // embeds into a polynomial on total_vars variables, shifting this
    // polynomial's variables up by var_offset
    MultivariatePoly embed(unsigned total_vars, unsigned var_offset) const;

    bool operator==(const MultivariatePoly& o) const;

private:
    const Field* field_;
    unsigned num_vars_;
    unsigned total_degree_bound_;
    std::map<std::vector<std::uint32_t>, std::uint64_t> monomials_;
};

// A function {0,1}^m -> F_q. Cube points are indexed by the integer whose
// binary digits are (a_1 .. a_m) with a_1 most significant.
struct CubeFunction {
    const Field* field;
    unsigned m;
    std::vector<std::uint64_t> values; // size 2^m

    CubeFunction(const Field& f, unsigned m_);
    std::uint64_t& at_index(std::size_t idx) { return values[idx]; }
    static std::size_t index_of(std::span<const int> bits);
};

// The unique multilinear polynomial agreeing with A on the cube, assembled
// from the basis chi_1(x) = x, chi_0(x) = 1 + x (characteristic 2).
MultivariatePoly multilinear_extension(const CubeFunction& A);

// Canonical affine line {a*t + b : t in F_q} in F_q^m. pivot is the first
// index with a[pivot] != 0; canonical form scales a so a[pivot] = 1 and
// shifts b so b[pivot] = 0, which makes (a, b) unique per point set.
struct Line {
    std::vector<std::uint64_t> a, b;
    unsigned pivot;

    bool operator==(const Line& o) const { return a == o.a && b == o.b; }
    bool operator<(const Line& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

struct LineThrough {
    Line line;
    std::uint64_t t_alpha, t_beta; // parameters of the two defining points
};

// Canonical line through two distinct points, plus where the points land on
// it. Throws DegeneratePoints when alpha == beta.
LineThrough line_through(const Field& f,
                         std::span<const std::uint64_t> alpha,
                         std::span<const std::uint64_t> beta);

std::vector<std::uint64_t> line_point(const Field& f, const Line& line, std::uint64_t t);

// Parameter of a point known to lie on the line (its pivot coordinate).
// Throws DimensionMismatch if the point is not on the line.
std::uint64_t line_parameter(const Field& f, const Line& line, std::span<const std::uint64_t> x);

// All canonical lines of F_q^m: q^(m-1) * (q^m - 1) / (q - 1) of them,
// in deterministic lexicographic order.
std::vector<Line> enumerate_lines(const Field& f, unsigned m);

// Restriction of g to the line, computed by sampling degree_bound + 1
// parameters and interpolating. Requires total_degree_bound < q.
UnivariatePoly restrict_to_line(const MultivariatePoly& g, const Line& line);

// Partial sum over the trailing cube: fixes the first j variables to prefix,
// keeps variable j+1 free, and sums all later variables over {0,1}:
//   g_prefix(z) = sum_{b in {0,1}^(M-j-1)} g(prefix, z, b).
// The prefix must leave at least one variable free.
UnivariatePoly partial_sum(const MultivariatePoly& g, std::span<const std::uint64_t> prefix);

} // namespace pcpmw
