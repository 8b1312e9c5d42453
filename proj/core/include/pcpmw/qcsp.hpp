#pragma once

// Systems of homogeneous quadratic equations over GF(2^r), the circuit
// encoding of 3SAT into such systems, and Reed-Muller style soundness
// boosting. An instance asks for an assignment maximizing the fraction of
// satisfied equations p_j(z) = c_j where every monomial of p_j has degree
// exactly two.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pcpmw/field.hpp"
#include "pcpmw/rational.hpp"

namespace pcpmw {

// sum of c_{s,t} * z_s * z_t, stored upper-triangular: terms are keyed by
// (s, t) with s <= t, zero coefficients dropped. Indices are 0-based.
class QuadraticPolynomial {
public:
    QuadraticPolynomial(const Field& f, unsigned num_vars);

    const Field& field() const { return *field_; }
    unsigned num_vars() const { return num_vars_; }
    const std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t>& terms() const {
        return terms_;
    }

    void add_term(std::uint32_t s, std::uint32_t t, std::uint64_t coeff);
    std::uint64_t coeff(std::uint32_t s, std::uint32_t t) const; // 0 when absent

    std::uint64_t eval(std::span<const std::uint64_t> assignment) const;

private:
    const Field* field_;
    unsigned num_vars_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> terms_;
};

struct QcspInstance {
    const Field* field;
    unsigned num_vars;
    std::vector<QuadraticPolynomial> lhs;
    std::vector<std::uint64_t> rhs;

    std::size_t num_equations() const { return lhs.size(); }
};

// Exact fraction of equations satisfied by the assignment.
Rational evaluate_qcsp(const QcspInstance& inst, std::span<const std::uint64_t> assignment);

struct BruteForceOptResult {
    Rational opt;
    std::vector<std::uint64_t> witness; // lexicographically least maximizer
    std::uint64_t satisfied;            // equations satisfied by the witness
};

// Exact maximum over all q^n assignments. Throws BudgetExceeded when
// q^n > budget. Deterministic regardless of worker count.
BruteForceOptResult brute_force_opt(const QcspInstance& inst,
                                    std::uint64_t budget = std::uint64_t(1) << 24,
                                    unsigned workers = 1);

// --- 3SAT ---

// Clauses hold exactly three signed 1-based literals; repeating a literal
// inside a clause is allowed and is how narrower clauses are padded.
struct SatFormula {
    unsigned num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

// DIMACS CNF reader. Clauses of fewer than three literals are rejected
// unless pad_clauses is set, in which case the last literal is repeated;
// clauses of more than three literals are always rejected.
SatFormula parse_dimacs(std::istream& in, bool pad_clauses);

bool formula_satisfied(const SatFormula& phi, const std::vector<bool>& assignment);

// The verification circuit encoded as equations. The wiring depends only on
// (num clauses, num vars); the formula itself enters exclusively through
// right-hand-side constants, which is what makes the left-hand side eligible
// for pre-processing. Gate order and tree shapes are fixed and deterministic.
struct SatReduction {
    QcspInstance instance;
    unsigned formula_vars = 0;  // instance variables 0..formula_vars-1 are the assignment
    unsigned z0_index = 0;      // homogenizer, pinned to 1 by z0 * z0 = 1
    unsigned y0_index = 0;      // circuit output wire, pinned to 1

    // wiring metadata needed to evaluate the circuit on a Boolean assignment
    unsigned num_clauses = 0;
    std::vector<std::vector<std::uint32_t>> gate_inputs; // per wire, in creation order
    std::vector<std::uint32_t> gate_output;
    std::vector<int> gate_kind; // 0 = xor, 1 = and, 2 = or

    // the full instance assignment induced by a Boolean formula assignment
    std::vector<std::uint64_t> circuit_assignment(const std::vector<bool>& a) const;
};

// Reduction with the following concrete circuit. Inputs x_j (free), plus
// pinned selector inputs sel_{ij} = [var j occurs in clause i] and
// sgn_{ij} = [var j occurs negated in clause i]. Literal values are
// lit_{ij} = x_j xor sgn_{ij}; clause i is the OR-tree over the selected
// literals sel_{ij} and lit_{ij}; the output y0 is the AND-tree over the
// clauses and is pinned to 1. Free inputs additionally carry x_j^2 = x_j,
// confining every perfect solution to Boolean values; without this the
// system acquires spurious solutions outside {0,1} for some fields.
// The returned instance has OPT = 1 iff phi is satisfiable.
SatReduction reduce_3sat_to_qcspp(const SatFormula& phi, const Field& f);

// Appends dummy variables pinned to zero (z_dummy * z0 = 0) until the
// variable count is a power of two. z0_index names the homogenizer variable
// used on the pinning rows.
QcspInstance pad_to_power_of_two(const QcspInstance& inst, unsigned z0_index);
// Same padding up to an explicit target count (the low-degree encoding needs
// exactly 2^m variables).
QcspInstance pad_to_variable_count(const QcspInstance& inst, unsigned target,
                                   unsigned z0_index);

// Reed-Muller soundness boosting: one output equation per field point t,
//   sum_i t^(i-1) p_i = sum_i t^(i-1) c_i.
// Perfect satisfiability is preserved; an assignment violating any input
// equation satisfies at most (k-1)/q of the outputs, because its violation
// vector is the coefficient list of a nonzero polynomial of degree <= k-1.
// Requires k <= q.
QcspInstance boost_soundness(const QcspInstance& inst);

// --- serialization ---

std::string qcsp_to_json(const QcspInstance& inst);
QcspInstance qcsp_from_json(const Field& f, const std::string& text);

} // namespace pcpmw
