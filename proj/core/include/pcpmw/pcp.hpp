#pragma once

// Points-and-lines proof system for quadratic systems over GF(2^r) whose
// variables are indexed by the Boolean cube {0,1}^m. A proof commits three
// tables: the values of an assignment polynomial f on all of F_q^m, its
// restriction to every line, and, per equation, the partial-sum polynomials
// of h_i(x, y) = c_i(x, y) f(x) f(y) for every evaluation prefix. The
// verifier reads O(1) entries per randomness draw and checks four
// identities: both endpoints of a random line against the line polynomial,
// the claimed total sum, the chain of partial-sum consistencies, and the
// fully evaluated final point.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcpmw/poly.hpp"
#include "pcpmw/qcsp.hpp"
#include "pcpmw/rational.hpp"

namespace pcpmw {

// Index of a point of F_q^m with the first coordinate most significant.
std::uint64_t point_index(const Field& f, std::span<const std::uint64_t> x);
std::vector<std::uint64_t> index_point(const Field& f, unsigned m, std::uint64_t idx);

// Multilinear extensions of the per-equation coefficient tables: equation
// sum_{s<=t} c_{s,t} z_s z_t becomes the cube function on {0,1}^(2m) whose
// value at (bits(s), bits(t)) is c_{s,t} for s <= t and 0 below the
// diagonal. Requires num_vars == 2^m.
std::vector<MultivariatePoly> build_coefficient_extensions(const QcspInstance& inst, unsigned m);

// Instance plus everything the verifier can pre-process before seeing a
// proof: the coefficient extensions depend only on the left-hand sides.
struct PcpContext {
    const QcspInstance* instance;
    unsigned m;
    std::vector<MultivariatePoly> coeff_ext;
};

PcpContext make_pcp_context(const QcspInstance& inst, unsigned m);

struct PcpTables {
    const Field* field;
    unsigned m;
    // f on all of F_q^m, in point-index order
    std::vector<std::uint64_t> points;
    // per canonical line, the coefficients of a degree <= m univariate
    std::map<Line, std::vector<std::uint64_t>> lines;
    // per equation, per prefix (a_1 .. a_j) with 0 <= j <= 2m-1, the
    // coefficients of a degree <= 4m univariate in the next variable
    std::vector<std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> sums;
};

// Builds the three tables honestly from a satisfying assignment; throws
// NotSatisfying otherwise. The honest tables are accepted with probability
// one on every admissible randomness draw.
PcpTables honest_prover(const PcpContext& ctx, std::span<const std::uint64_t> assignment);

// One randomness draw: an equation index and 2m field elements, read as
// alpha = first m coordinates, beta = last m. Draws with alpha == beta are
// outside the protocol (sampling resamples them; enumeration skips them).
struct PcpRandomness {
    std::size_t i = 0;
    std::vector<std::uint64_t> coords;
};

enum class PcpStep { LowDegreeAlpha, LowDegreeBeta, SumClaim, Consistency, FinalPoint };

struct Verdict {
    bool accepted = false;
    std::optional<PcpStep> failed_step;
    unsigned consistency_j = 0; // set when failed_step == Consistency
};

Verdict pcp_verify(const PcpTables& t, const PcpContext& ctx, const PcpRandomness& rho);

// Re-runs exactly one of the verifier's checks in isolation.
bool pcp_step_holds(const PcpTables& t, const PcpContext& ctx, const PcpRandomness& rho,
                    PcpStep step, unsigned consistency_j = 0);

// The low-degree side test on its own: does the committed line polynomial
// agree with the committed value of f at x? x must lie on the line.
bool low_degree_test(const PcpTables& t, std::span<const std::uint64_t> x, const Line& line);

// --- stand-alone sum-check ---

// Committed round polynomials for the claim sum_{cube} g = claimed_sum
// on M variables: one univariate per prefix of length 0 .. M-1.
struct SumCheckTable {
    const Field* field = nullptr;
    unsigned M = 0;
    std::uint64_t claimed_sum = 0;
    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> polys;
};

SumCheckTable honest_sum_check_table(const MultivariatePoly& g);

struct SumCheckVerdict {
    bool accepted = false;
    // 0: sum claim failed; 1..M-1: consistency at that round; M: final check
    std::optional<unsigned> failed_round;
};

SumCheckVerdict sum_check_verify(const std::function<std::uint64_t(std::span<const std::uint64_t>)>& g,
                                 std::uint64_t claimed_sum,
                                 const SumCheckTable& table,
                                 std::span<const std::uint64_t> x);

// --- acceptance probability ---

struct AcceptanceEstimate {
    bool exact = false;
    Rational exact_value;     // meaningful when exact
    std::uint64_t accepted = 0;
    std::uint64_t total = 0;
    double estimate = 0.0;    // accepted / total as a double
    double wilson_lo = 0.0;   // 95% Wilson interval (sampled mode)
    double wilson_hi = 0.0;
};

// Exact mode enumerates every admissible randomness draw: all equations
// times all coordinate vectors with alpha != beta. Requires
// k * q^(2m) <= budget. Sampled mode runs the given number of trials, each
// on its own seed-derived stream, so results are independent of execution
// order and worker count.
AcceptanceEstimate estimate_acceptance(const PcpTables& t, const PcpContext& ctx, bool exact,
                                       std::uint64_t trials, std::uint64_t seed,
                                       std::uint64_t budget = std::uint64_t(1) << 24,
                                       unsigned workers = 1);

// Deterministic per-index randomness stream (split from a base seed).
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);
PcpRandomness sample_randomness(const PcpContext& ctx, std::mt19937_64& rng);
// Uniform value in [0, n), rejection-sampled so the result does not depend
// on the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

// --- adversarial table constructions ---

// Re-randomizes round(fraction * q^m) point entries (adding a nonzero
// delta each), leaving lines and sums untouched.
PcpTables adversary_corrupt_points(const PcpTables& base, double fraction, std::uint64_t seed);

// Replaces every equation's partial sums with the honest sums of g_prime
// (a polynomial on 2m variables). The sums are internally consistent but
// defend a different function, so rejection happens at the sum claim or
// the final point.
PcpTables adversary_wrong_polynomial(const PcpContext& ctx, const PcpTables& base,
                                     const MultivariatePoly& g_prime);

// All three tables filled with uniform garbage.
PcpTables adversary_random_tables(const PcpContext& ctx, std::uint64_t seed);

// --- serialization ---

// Writes points.txt, lines.txt, sums.txt and manifest.json (with SHA-256
// digests of the other three) into the directory.
void save_tables(const PcpTables& t, const std::string& dir);

// Reloads a table directory, verifying the digests recorded in the
// manifest; a mismatch throws InputError.
PcpTables load_tables(const Field& f, const std::string& dir);

} // namespace pcpmw
