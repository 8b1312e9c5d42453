#pragma once

// Layered label-cover view of the proof system. Vertices are table entries
// (partial-sum prefixes, lines, points), edges carry many-to-many constraints
// given by a pair of maps (pi on the lower endpoint, sigma on the upper) into
// F_q, and each hyperedge bundles the 2m+3 vertices and 2m+2 edges one
// verifier randomness draw would read. Layer-0 labels are partitioned by
// p(0)+p(1); the allowable part is the equation's right-hand side, the only
// input-dependent piece of the construction.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pcpmw/pcp.hpp"
#include "pcpmw/poly.hpp"
#include "pcpmw/qcsp.hpp"
#include "pcpmw/rational.hpp"

namespace pcpmw {

// A label is a coefficient vector over the field: length 4m+1 on sum layers,
// m+1 on the lines layer, 1 on the points layer.
using Label = std::vector<std::uint64_t>;

struct VertexRef {
    unsigned layer = 0;
    std::uint64_t index = 0;
    auto operator<=>(const VertexRef&) const = default;
};

// Edge constraint: satisfied by labels (l, l') iff pi(l) == sigma(l').
struct ConstraintDescriptor {
    enum class Kind {
        EvalVsSum,             // pi: p -> p(a);  sigma: p' -> p'(0) + p'(1)
        EvalVsWeightedProduct, // pi: p -> p(a);  sigma: g -> c * g(t_alpha) * g(t_beta)
        EvalVsValue,           // pi: g -> g(t);  sigma: identity on a field element
        ExplicitMaps,          // pi/sigma: table lookup by label id (synthetic instances)
    };
    Kind kind = Kind::EvalVsSum;
    std::uint64_t a = 0;       // pi evaluation point (EvalVsSum, EvalVsWeightedProduct)
    std::uint64_t c = 0;       // product weight; zero marks a constraint the
                               // construction ignores (not many-to-many)
    std::uint64_t t_alpha = 0;
    std::uint64_t t_beta = 0;
    std::uint64_t t = 0;       // pi evaluation point (EvalVsValue)
    std::vector<std::uint64_t> pi_table, sigma_table;
};

std::uint64_t descriptor_pi(const Field& f, const ConstraintDescriptor& d, const Label& l);
std::uint64_t descriptor_sigma(const Field& f, const ConstraintDescriptor& d, const Label& l);
// The evaluation point of pi when pi is an evaluation map; nullopt for
// ExplicitMaps.
std::optional<std::uint64_t> descriptor_pi_point(const ConstraintDescriptor& d);

struct HlcppEdge {
    VertexRef u, v;        // v is meaningful only when has_target
    std::uint64_t slot = 0; // forward-edge index at u: the next coordinate / line parameter
    bool has_target = true; // false: the alpha == beta slot, which keeps pi (and
                            // the smoothness denominator) but has no constraint
    ConstraintDescriptor d;
};

// Partition value of a layer-0 label: p(0) + p(1).
std::uint64_t partition_value(const Field& f, const Label& l);

// Read-only interface shared by the proof-system-backed instance and the
// synthetic instances used to exercise defects. Hyperedges are indexed by a
// dense universe [0, num_hyperedges); pruned ones stay indexable so pruned
// fractions and pre/post comparisons are cheap.
class HlcppView {
public:
    virtual ~HlcppView() = default;

    virtual const Field& field() const = 0;
    virtual unsigned num_layers() const = 0;
    virtual std::uint64_t layer_size(unsigned layer) const = 0;
    virtual std::size_t label_len(unsigned layer) const = 0;
    // Max agreements between two distinct labels under pi evaluation (the
    // layer's degree bound); numerator of the layer's smoothness delta.
    virtual unsigned max_agreements(unsigned layer) const = 0;

    virtual std::vector<HlcppEdge> forward_edges(VertexRef u) const = 0;

    virtual std::uint64_t num_hyperedges() const = 0;
    virtual bool hyperedge_pruned(std::uint64_t h) const = 0;
    // Degenerate draws (alpha == beta) have no line or point vertices; they
    // contribute only their sum-layer vertices and edges.
    virtual bool hyperedge_degenerate(std::uint64_t h) const = 0;
    virtual std::vector<VertexRef> hyperedge_vertices(std::uint64_t h) const = 0;
    virtual std::vector<HlcppEdge> hyperedge_edges(std::uint64_t h) const = 0;

    virtual std::uint64_t allowable_value(std::uint64_t l0_index) const = 0;

    // Label ids enumerate coefficient vectors little-endian in the field
    // size: id = sum coeffs[i] * q^i.
    BigInt label_domain_size(unsigned layer) const;
    std::uint64_t label_id(unsigned layer, const Label& l) const;
    Label label_from_id(unsigned layer, std::uint64_t id) const;
    // Throws BudgetExceeded when q^label_len exceeds the budget.
    std::vector<Label> enumerate_labels(unsigned layer, std::uint64_t budget) const;
};

// The instance a quadratic system induces: layers 0..2m-1 hold (i, prefix)
// vertices, layer 2m the canonical lines, layer 2m+1 the points of F_q^m.
// Hyperedge h encodes (i, coords) as i * q^{2m} + point_index(coords).
class PcpHlcpp : public HlcppView {
public:
    explicit PcpHlcpp(const PcpContext& ctx);

    const Field& field() const override;
    unsigned num_layers() const override { return 2 * m_ + 2; }
    std::uint64_t layer_size(unsigned layer) const override;
    std::size_t label_len(unsigned layer) const override;
    unsigned max_agreements(unsigned layer) const override;
    std::vector<HlcppEdge> forward_edges(VertexRef u) const override;
    std::uint64_t num_hyperedges() const override;
    bool hyperedge_pruned(std::uint64_t h) const override;
    bool hyperedge_degenerate(std::uint64_t h) const override;
    std::vector<VertexRef> hyperedge_vertices(std::uint64_t h) const override;
    std::vector<HlcppEdge> hyperedge_edges(std::uint64_t h) const override;
    std::uint64_t allowable_value(std::uint64_t l0_index) const override;

    const PcpContext& context() const { return *ctx_; }
    unsigned m() const { return m_; }
    bool pruned() const { return pruned_; }
    const std::vector<Line>& lines() const { return lines_; }

    PcpRandomness hyperedge_randomness(std::uint64_t h) const;
    std::uint64_t hyperedge_index(const PcpRandomness& rho) const;

private:
    friend std::pair<PcpHlcpp, struct PruneReport> prune_degenerate(const PcpHlcpp& v);

    const PcpContext* ctx_;
    unsigned m_;
    bool pruned_ = false;
    std::vector<Line> lines_;
    std::map<Line, std::uint64_t> line_index_;
    std::vector<std::uint64_t> qpow_; // q^0 .. q^{2m}
};

struct PruneReport {
    std::uint64_t total = 0;
    std::uint64_t degenerate = 0;   // alpha == beta draws
    std::uint64_t zero_weight = 0;  // c_i(alpha, beta) == 0, alpha != beta
    Rational pruned_fraction;
    // per equation, the number of zero-weight draws (Schwartz-Zippel bounds
    // each by 2m * q^{2m-1} when the extension is nonzero)
    std::vector<std::uint64_t> zero_weight_per_equation;
};

// Marks degenerate and zero-weight hyperedges as pruned; the returned view
// shares the context but answers hyperedge_pruned accordingly.
std::pair<PcpHlcpp, PruneReport> prune_degenerate(const PcpHlcpp& v);

// Hand-built instance for defect injection and explicit encodings: arbitrary
// layer shapes, explicit edges and hyperedges.
class SyntheticHlcpp : public HlcppView {
public:
    struct LayerSpec {
        std::uint64_t size = 0;
        std::size_t label_len = 1;
        unsigned max_agreements = 1;
    };
    struct Hyperedge {
        std::vector<VertexRef> vertices;
        std::vector<std::size_t> edge_ids; // indices into the edge list
        bool pruned = false;
        bool degenerate = false;
    };

    SyntheticHlcpp(const Field& f, std::vector<LayerSpec> layers,
                   std::vector<std::uint64_t> allowable);

    // Edges must connect consecutive layers; slot is the forward index at u.
    std::size_t add_edge(VertexRef u, VertexRef v, std::uint64_t slot, ConstraintDescriptor d);
    void add_hyperedge(Hyperedge h);

    const Field& field() const override { return *f_; }
    unsigned num_layers() const override { return unsigned(layers_.size()); }
    std::uint64_t layer_size(unsigned layer) const override { return layers_.at(layer).size; }
    std::size_t label_len(unsigned layer) const override { return layers_.at(layer).label_len; }
    unsigned max_agreements(unsigned layer) const override { return layers_.at(layer).max_agreements; }
    std::vector<HlcppEdge> forward_edges(VertexRef u) const override;
    std::uint64_t num_hyperedges() const override { return hypers_.size(); }
    bool hyperedge_pruned(std::uint64_t h) const override { return hypers_.at(h).pruned; }
    bool hyperedge_degenerate(std::uint64_t h) const override { return hypers_.at(h).degenerate; }
    std::vector<VertexRef> hyperedge_vertices(std::uint64_t h) const override;
    std::vector<HlcppEdge> hyperedge_edges(std::uint64_t h) const override;
    std::uint64_t allowable_value(std::uint64_t l0_index) const override { return allowable_.at(l0_index); }

    void set_allowable(std::vector<std::uint64_t> allowable) { allowable_ = std::move(allowable); }

private:
    const Field* f_;
    std::vector<LayerSpec> layers_;
    std::vector<std::uint64_t> allowable_;
    std::vector<HlcppEdge> edges_;
    std::map<VertexRef, std::vector<std::size_t>> forward_;
    std::vector<Hyperedge> hypers_;
};

struct Labeling {
    std::map<VertexRef, Label> labels;
};

// Honest labels straight from the prover's tables: partial-sum coefficient
// vectors, line restrictions, point values. Throws NotSatisfying unless the
// tables came from a satisfying assignment (checked via the instance).
Labeling labeling_from_assignment(const PcpHlcpp& view, std::span<const std::uint64_t> assignment);
Labeling labeling_from_tables(const PcpHlcpp& view, const PcpTables& t);

bool edge_satisfied(const Field& f, const HlcppEdge& e, const Label& lu, const Label& lv);

// A hyperedge is satisfied when every contained edge (with a target) is
// satisfied and its layer-0 label lies in the allowable part. Unlabeled
// vertices count as unsatisfied.
bool evaluate_hyperedge(const HlcppView& view, const Labeling& L, std::uint64_t h);

// Exact fraction of non-pruned hyperedges satisfied.
Rational evaluate_labeling(const HlcppView& view, const Labeling& L);

struct SmoothnessReport {
    bool structural_pass = true;
    // first offending vertex with a reason, when the structural check fails
    std::optional<std::pair<VertexRef, std::string>> structural_failure;
    std::map<unsigned, Rational> delta; // per layer: max_agreements / q
    std::uint64_t sampled_pairs = 0;
    unsigned max_collisions = 0;        // worst sampled pair, over its q forward edges
    bool sampled_pass = true;           // every pair's collisions <= layer bound
};

// Structural: every vertex with forward edges evaluates pi at pairwise
// distinct points covering F_q (explicit-map vertices instead get an
// exhaustive pairwise check). Statistical: sampled random label pairs,
// counting collisions over the vertex's forward edges exactly.
SmoothnessReport check_smoothness(const HlcppView& view, std::uint64_t sampled_pairs,
                                  std::uint64_t seed);

struct UniformityReport {
    bool condition1_exact = true; // per-layer per-vertex hyperedge counts constant
    bool condition2_exact = true; // per layer pair, per-edge hyperedge counts constant
    std::vector<std::pair<std::uint64_t, std::uint64_t>> vertex_count_range; // per layer (min, max)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edge_count_range;   // per layer pair
    // max over layers of (max - min) / max vertex counts; 0 when uniform
    Rational deviation;
};

// Exact counting over all hyperedges (pruned ones excluded). Throws
// BudgetExceeded when hyperedges * vertices-per-hyperedge exceeds budget.
UniformityReport check_uniformity(const HlcppView& view,
                                  std::uint64_t budget = std::uint64_t(1) << 28);

// Structural serialization: layer shapes, allowable values, pruned ids.
std::string hlcpp_structure_to_json(const HlcppView& view);
std::string labeling_to_json(const Field& f, const Labeling& L);
Labeling labeling_from_json(const Field& f, const std::string& text);

} // namespace pcpmw
