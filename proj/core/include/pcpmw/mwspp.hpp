#pragma once

// Minimum-weight-solution encoding of a layered instance over F_2: fixed
// parity forms (vertex, allowable-part, and edge rows) pin consistency, and
// the weight of a solution counts multiplicity-weighted variable forms. Only
// the allowable rows' right-hand sides depend on the input, so everything
// else can be prepared in advance. Also: the nearest-codeword restatement,
// brute-force oracles for tiny explicit instances, and the randomized
// decoder that rounds a low-weight solution back to a labeling.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcpmw/hlcpp.hpp"
#include "pcpmw/rational.hpp"

namespace pcpmw {

struct MwsppFixedRow {
    std::vector<std::uint64_t> cols; // sorted, distinct column indices
    bool rhs = false;
};

struct MwsppVarRow {
    std::vector<std::uint64_t> cols;
    BigInt multiplicity = 1; // q~ / q_j, never expanded
};

// Fully materialized binary system. One column per (vertex, label id);
// columns are laid out vertex-major in (layer, index) order.
struct MwsppExplicit {
    std::uint64_t num_cols = 0;
    std::vector<MwsppFixedRow> fixed_rows;
    std::vector<MwsppVarRow> variable_rows;
    // column -> (vertex, label id), and the reverse lookup
    std::vector<std::pair<VertexRef, std::uint64_t>> col_meaning;
    std::map<std::pair<VertexRef, std::uint64_t>, std::uint64_t> var_index;
    // indices into fixed_rows whose rhs depends on the allowable values
    std::vector<std::size_t> allowable_row_indices;
    BigInt q_tilde = 1; // product of layer sizes; normalizes weights
};

// Reference-only handle: constraints are evaluated on demand against the
// layered instance, never materialized.
struct MwsppImplicit {
    const HlcppView* view = nullptr;
};

// w_{v,l} = 1 exactly for the listed label ids (sorted, distinct). Vertices
// absent from the map have no nonzero labels.
struct NonzeroLabelSet {
    std::map<VertexRef, std::vector<std::uint64_t>> sets;
};

// Explicit mode materializes every row; requires the total label-domain
// volume (sum over layers of layer size * domain size) to fit the budget.
MwsppExplicit build_mwspp_explicit(const HlcppView& view, std::uint64_t budget = 1 << 20);
MwsppImplicit build_mwspp_implicit(const HlcppView& view);

// Singleton set per vertex, straight from a labeling that satisfies every
// hyperedge and allowable part. Throws NotSatisfying otherwise, or when a
// vertex is unlabeled.
NonzeroLabelSet honest_solution(const HlcppView& view, const Labeling& L);

struct FixedFormViolation {
    enum class Family { VertexParity, Allowable, Edge };
    Family family = Family::VertexParity;
    VertexRef u;             // the row's vertex (edge rows: the lower endpoint)
    std::uint64_t slot = 0;  // edge rows: forward slot at u
    std::uint64_t a = 0;     // allowable rows: the part; edge rows: the range element
};

struct FixedFormReport {
    std::vector<FixedFormViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Implicit check: vertex parity on layers >= 1, allowable-part parities on
// layer 0, and per-edge per-range-element parity equality. Edges without a
// target and product constraints with zero weight are not many-to-many and
// carry no rows.
FixedFormReport check_fixed_forms(const HlcppView& view, const NonzeroLabelSet& sol);
// Explicit check: indices of fixed rows violated by the bit vector.
std::vector<std::size_t> check_fixed_forms(const MwsppExplicit& inst, const std::vector<bool>& x);

// The bit vector an explicit instance assigns to a label-set solution.
// Throws MissingTableEntry when a (vertex, label) pair has no column.
std::vector<bool> solution_bits(const MwsppExplicit& inst, const NonzeroLabelSet& sol);

// Normalized weight: sum over layers of (nonzero labels in the layer) / (layer
// size). The honest solution weighs exactly the number of layers.
Rational solution_weight(const HlcppView& view, const NonzeroLabelSet& sol);
// Unnormalized weight of a bit vector: sum of multiplicities of variable rows
// with odd support overlap (each row is a singleton here, so this is the
// multiplicity-weighted popcount).
BigInt solution_weight(const MwsppExplicit& inst, const std::vector<bool>& x);
Rational normalized_weight(const MwsppExplicit& inst, const std::vector<bool>& x);

struct MinWeightResult {
    BigInt weight;
    std::vector<bool> witness; // lexicographically least among the minima
};

// Exhaustive minimum over the affine solution space of the fixed system.
// Throws InfeasibleTarget when no x satisfies it, BudgetExceeded when the
// search space exceeds the budget.
MinWeightResult brute_force_min_weight(const MwsppExplicit& inst,
                                       std::uint64_t budget = std::uint64_t(1) << 24,
                                       unsigned workers = 1);

// Uniform independent label choice per vertex, deterministic per seed.
// Throws EmptySet when a vertex's set is empty (a parity violation upstream).
Labeling randomized_decode(const HlcppView& view, const NonzeroLabelSet& sol, std::uint64_t seed);

struct MarkovReport {
    std::uint64_t threshold = 0; // rho
    std::vector<VertexRef> removed;
    std::map<unsigned, Rational> per_layer_removed_fraction;
    Rational normalized_weight;
    Rational bound;     // normalized_weight / rho
    bool within = true; // every layer's removed fraction <= bound
};

// Removes vertices holding more than rho nonzero labels. The per-layer
// removed fraction obeys the Markov bound weight/rho.
std::pair<NonzeroLabelSet, MarkovReport> markov_prune(const HlcppView& view,
                                                      const NonzeroLabelSet& sol,
                                                      std::uint64_t rho);

struct CollisionReport {
    std::uint64_t rho = 0;
    std::vector<std::pair<VertexRef, std::uint64_t>> removed; // (u, slot)
    std::map<unsigned, Rational> per_layer_removed_fraction;
    std::map<unsigned, Rational> per_layer_bound; // max_agreements * rho^2 / q
    bool within = true;
};

// Removes edges whose lower endpoint holds two nonzero labels that collide
// under pi. Solutions capped at rho labels per vertex lose at most a
// max_agreements * rho^2 / q fraction of each layer's edges.
CollisionReport collision_filter(const HlcppView& view, const NonzeroLabelSet& sol,
                                 std::uint64_t rho);

// Exact probability that independent uniform choices from the nonzero sets
// satisfy the hyperedge (every surviving edge plus the allowable part).
// Hyperedge vertex sets form trees, so this is a tree product. Vertices with
// no nonzero labels give probability zero.
Rational hyperedge_decode_probability(const HlcppView& view, const NonzeroLabelSet& sol,
                                      std::uint64_t h,
                                      const std::vector<std::pair<VertexRef, std::uint64_t>>*
                                          removed_edges = nullptr);

// Nearest-codeword restatement: the code is spanned by the images of the
// homogeneous solutions under the multiplicity-expanded variable rows, and
// the target is the image of one particular solution.
struct NcpInstance {
    std::uint64_t length = 0;
    std::vector<std::vector<bool>> generator; // rows span the code
    std::vector<bool> target;
};

// Throws InfeasibleTarget when the fixed system has no solution, and
// BudgetExceeded when the expanded length overflows the budget.
NcpInstance mwspp_to_ncp(const MwsppExplicit& inst, std::uint64_t budget = 1 << 20);

struct NcpResult {
    BigInt distance;
    std::vector<bool> combo; // generator-row selector achieving it
};

NcpResult brute_force_ncp(const NcpInstance& ncp, std::uint64_t budget = std::uint64_t(1) << 24,
                          unsigned workers = 1);

// Text round-trip: header "mwspp <cols> <fixed> <var>", then one row per
// line as sorted column indices, fixed rows suffixed "= <bit>", variable
// rows suffixed "* <multiplicity>".
std::string mwspp_to_text(const MwsppExplicit& inst);
MwsppExplicit mwspp_from_text(const std::string& text);
std::string ncp_to_text(const NcpInstance& ncp);
NcpInstance ncp_from_text(const std::string& text);

// Reverse embedding: one selector variable per generator row plus one pinned
// variable carrying the target, so codeword weight becomes solution weight.
MwsppExplicit ncp_to_mwspp(const NcpInstance& ncp);

} // namespace pcpmw
