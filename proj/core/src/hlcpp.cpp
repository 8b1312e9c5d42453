#include "pcpmw/hlcpp.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace pcpmw {

std::uint64_t descriptor_pi(const Field& f, const ConstraintDescriptor& d, const Label& l) {
    switch (d.kind) {
        case ConstraintDescriptor::Kind::EvalVsSum:
        case ConstraintDescriptor::Kind::EvalVsWeightedProduct:
            return eval_univariate(f, l, d.a);
        case ConstraintDescriptor::Kind::EvalVsValue:
            return eval_univariate(f, l, d.t);
        case ConstraintDescriptor::Kind::ExplicitMaps: {
            std::uint64_t id = 0, pw = 1;
            for (std::uint64_t c : l) { id += c * pw; pw *= f.q(); }
            if (id >= d.pi_table.size()) throw DimensionMismatch("label id outside explicit pi table");
            return d.pi_table[id];
        }
    }
    throw Error("unknown constraint kind");
}

std::uint64_t descriptor_sigma(const Field& f, const ConstraintDescriptor& d, const Label& l) {
    switch (d.kind) {
        case ConstraintDescriptor::Kind::EvalVsSum:
            return f.add(eval_univariate(f, l, 0), eval_univariate(f, l, 1));
        case ConstraintDescriptor::Kind::EvalVsWeightedProduct:
            return f.mul(d.c, f.mul(eval_univariate(f, l, d.t_alpha),
                                    eval_univariate(f, l, d.t_beta)));
        case ConstraintDescriptor::Kind::EvalVsValue:
            if (l.empty()) throw DimensionMismatch("point label must hold one field element");
            return l[0];
        case ConstraintDescriptor::Kind::ExplicitMaps: {
            std::uint64_t id = 0, pw = 1;
            for (std::uint64_t c : l) { id += c * pw; pw *= f.q(); }
            if (id >= d.sigma_table.size()) throw DimensionMismatch("label id outside explicit sigma table");
            return d.sigma_table[id];
        }
    }
    throw Error("unknown constraint kind");
}

std::optional<std::uint64_t> descriptor_pi_point(const ConstraintDescriptor& d) {
    switch (d.kind) {
        case ConstraintDescriptor::Kind::EvalVsSum:
        case ConstraintDescriptor::Kind::EvalVsWeightedProduct:
            return d.a;
        case ConstraintDescriptor::Kind::EvalVsValue:
            return d.t;
        case ConstraintDescriptor::Kind::ExplicitMaps:
            return std::nullopt;
    }
    return std::nullopt;
}

std::uint64_t partition_value(const Field& f, const Label& l) {
    return f.add(eval_univariate(f, l, 0), eval_univariate(f, l, 1));
}

// --- HlcppView label ids ---

BigInt HlcppView::label_domain_size(unsigned layer) const {
    BigInt size = 1;
    for (std::size_t i = 0; i < label_len(layer); ++i) size *= field().q();
    return size;
}

std::uint64_t HlcppView::label_id(unsigned layer, const Label& l) const {
    if (l.size() != label_len(layer)) throw DimensionMismatch("label length does not match layer");
    std::uint64_t id = 0, pw = 1;
    for (std::uint64_t c : l) { id += c * pw; pw *= field().q(); }
    return id;
}

Label HlcppView::label_from_id(unsigned layer, std::uint64_t id) const {
    Label l(label_len(layer));
    for (auto& c : l) { c = id % field().q(); id /= field().q(); }
    return l;
}

std::vector<Label> HlcppView::enumerate_labels(unsigned layer, std::uint64_t budget) const {
    BigInt size = label_domain_size(layer);
    if (size > budget) throw BudgetExceeded("label domain exceeds budget");
    std::uint64_t n = size.convert_to<std::uint64_t>();
    std::vector<Label> out;
    out.reserve(n);
    for (std::uint64_t id = 0; id < n; ++id) out.push_back(label_from_id(layer, id));
    return out;
}

// --- PcpHlcpp ---

PcpHlcpp::PcpHlcpp(const PcpContext& ctx) : ctx_(&ctx), m_(ctx.m) {
    const Field& f = *ctx.instance->field;
    lines_ = enumerate_lines(f, m_);
    for (std::uint64_t i = 0; i < lines_.size(); ++i) line_index_.emplace(lines_[i], i);
    qpow_.resize(2 * m_ + 1);
    qpow_[0] = 1;
    for (unsigned j = 1; j <= 2 * m_; ++j) qpow_[j] = qpow_[j - 1] * f.q();
}

const Field& PcpHlcpp::field() const { return *ctx_->instance->field; }

std::uint64_t PcpHlcpp::layer_size(unsigned layer) const {
    std::uint64_t k = ctx_->instance->lhs.size();
    if (layer <= 2 * m_ - 1) return k * qpow_[layer];
    if (layer == 2 * m_) return lines_.size();
    if (layer == 2 * m_ + 1) return qpow_[m_];
    throw DimensionMismatch("layer out of range");
}

std::size_t PcpHlcpp::label_len(unsigned layer) const {
    if (layer <= 2 * m_ - 1) return std::size_t(4) * m_ + 1;
    if (layer == 2 * m_) return std::size_t(m_) + 1;
    if (layer == 2 * m_ + 1) return 1;
    throw DimensionMismatch("layer out of range");
}

unsigned PcpHlcpp::max_agreements(unsigned layer) const {
    if (layer <= 2 * m_ - 1) return 4 * m_;
    if (layer == 2 * m_) return m_;
    if (layer == 2 * m_ + 1) return 0;
    throw DimensionMismatch("layer out of range");
}

std::vector<HlcppEdge> PcpHlcpp::forward_edges(VertexRef u) const {
    const Field& f = field();
    std::vector<HlcppEdge> out;
    if (u.layer >= 2 * m_ + 1) return out;
    out.reserve(f.q());
    if (u.layer == 2 * m_) {
        const Line& line = lines_.at(u.index);
        for (std::uint64_t t = 0; t < f.q(); ++t) {
            HlcppEdge e;
            e.u = u;
            e.v = {2 * m_ + 1, point_index(f, line_point(f, line, t))};
            e.slot = t;
            e.d.kind = ConstraintDescriptor::Kind::EvalVsValue;
            e.d.t = t;
            out.push_back(std::move(e));
        }
        return out;
    }
    std::uint64_t i = u.index / qpow_[u.layer];
    std::uint64_t prefix_num = u.index % qpow_[u.layer];
    if (u.layer + 1 <= 2 * m_ - 1) {
        for (std::uint64_t a = 0; a < f.q(); ++a) {
            HlcppEdge e;
            e.u = u;
            e.v = {u.layer + 1, i * qpow_[u.layer + 1] + prefix_num * f.q() + a};
            e.slot = a;
            e.d.kind = ConstraintDescriptor::Kind::EvalVsSum;
            e.d.a = a;
            out.push_back(std::move(e));
        }
        return out;
    }
    // layer 2m-1: completing the draw determines the line through alpha and
    // beta; the alpha == beta slot keeps pi but has no target
    auto prefix = index_point(f, 2 * m_ - 1, prefix_num);
    for (std::uint64_t a = 0; a < f.q(); ++a) {
        std::vector<std::uint64_t> coords = prefix;
        coords.push_back(a);
        auto alpha = std::span<const std::uint64_t>(coords).first(m_);
        auto beta = std::span<const std::uint64_t>(coords).last(m_);
        HlcppEdge e;
        e.u = u;
        e.slot = a;
        e.d.kind = ConstraintDescriptor::Kind::EvalVsWeightedProduct;
        e.d.a = a;
        if (std::equal(alpha.begin(), alpha.end(), beta.begin())) {
            e.has_target = false;
        } else {
            LineThrough lt = line_through(f, alpha, beta);
            e.v = {2 * m_, line_index_.at(lt.line)};
            e.d.c = ctx_->coeff_ext[i].eval(coords);
            e.d.t_alpha = lt.t_alpha;
            e.d.t_beta = lt.t_beta;
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::uint64_t PcpHlcpp::num_hyperedges() const {
    return std::uint64_t(ctx_->instance->lhs.size()) * qpow_[2 * m_];
}

PcpRandomness PcpHlcpp::hyperedge_randomness(std::uint64_t h) const {
    PcpRandomness rho;
    rho.i = h / qpow_[2 * m_];
    rho.coords = index_point(field(), 2 * m_, h % qpow_[2 * m_]);
    return rho;
}

std::uint64_t PcpHlcpp::hyperedge_index(const PcpRandomness& rho) const {
    return rho.i * qpow_[2 * m_] + point_index(field(), rho.coords);
}

bool PcpHlcpp::hyperedge_degenerate(std::uint64_t h) const {
    PcpRandomness rho = hyperedge_randomness(h);
    auto alpha = std::span<const std::uint64_t>(rho.coords).first(m_);
    auto beta = std::span<const std::uint64_t>(rho.coords).last(m_);
    return std::equal(alpha.begin(), alpha.end(), beta.begin());
}

bool PcpHlcpp::hyperedge_pruned(std::uint64_t h) const {
    if (!pruned_) return false;
    if (hyperedge_degenerate(h)) return true;
    PcpRandomness rho = hyperedge_randomness(h);
    return ctx_->coeff_ext[rho.i].eval(rho.coords) == 0;
}

std::vector<VertexRef> PcpHlcpp::hyperedge_vertices(std::uint64_t h) const {
    const Field& f = field();
    PcpRandomness rho = hyperedge_randomness(h);
    std::vector<VertexRef> out;
    out.reserve(2 * m_ + 3);
    std::uint64_t prefix_num = 0;
    out.push_back({0, rho.i});
    for (unsigned j = 1; j <= 2 * m_ - 1; ++j) {
        prefix_num = prefix_num * f.q() + rho.coords[j - 1];
        out.push_back({j, rho.i * qpow_[j] + prefix_num});
    }
    if (!hyperedge_degenerate(h)) {
        auto alpha = std::span<const std::uint64_t>(rho.coords).first(m_);
        auto beta = std::span<const std::uint64_t>(rho.coords).last(m_);
        LineThrough lt = line_through(f, alpha, beta);
        out.push_back({2 * m_, line_index_.at(lt.line)});
        out.push_back({2 * m_ + 1, point_index(f, alpha)});
        out.push_back({2 * m_ + 1, point_index(f, beta)});
    }
    return out;
}

std::vector<HlcppEdge> PcpHlcpp::hyperedge_edges(std::uint64_t h) const {
    const Field& f = field();
    PcpRandomness rho = hyperedge_randomness(h);
    std::vector<HlcppEdge> out;
    out.reserve(2 * m_ + 2);
    std::uint64_t prefix_num = 0;
    for (unsigned j = 0; j + 1 <= 2 * m_ - 1; ++j) {
        HlcppEdge e;
        e.u = {j, rho.i * qpow_[j] + prefix_num};
        prefix_num = prefix_num * f.q() + rho.coords[j];
        e.v = {j + 1, rho.i * qpow_[j + 1] + prefix_num};
        e.slot = rho.coords[j];
        e.d.kind = ConstraintDescriptor::Kind::EvalVsSum;
        e.d.a = rho.coords[j];
        out.push_back(std::move(e));
    }
    HlcppEdge last;
    last.u = {2 * m_ - 1, rho.i * qpow_[2 * m_ - 1] + prefix_num};
    last.slot = rho.coords[2 * m_ - 1];
    last.d.kind = ConstraintDescriptor::Kind::EvalVsWeightedProduct;
    last.d.a = rho.coords[2 * m_ - 1];
    if (hyperedge_degenerate(h)) {
        last.has_target = false;
        out.push_back(std::move(last));
        return out;
    }
    auto alpha = std::span<const std::uint64_t>(rho.coords).first(m_);
    auto beta = std::span<const std::uint64_t>(rho.coords).last(m_);
    LineThrough lt = line_through(f, alpha, beta);
    std::uint64_t line_idx = line_index_.at(lt.line);
    last.v = {2 * m_, line_idx};
    last.d.c = ctx_->coeff_ext[rho.i].eval(rho.coords);
    last.d.t_alpha = lt.t_alpha;
    last.d.t_beta = lt.t_beta;
    out.push_back(std::move(last));
    for (bool second : {false, true}) {
        HlcppEdge e;
        e.u = {2 * m_, line_idx};
        e.v = {2 * m_ + 1, point_index(f, second ? beta : alpha)};
        e.slot = second ? lt.t_beta : lt.t_alpha;
        e.d.kind = ConstraintDescriptor::Kind::EvalVsValue;
        e.d.t = e.slot;
        out.push_back(std::move(e));
    }
    return out;
}

std::uint64_t PcpHlcpp::allowable_value(std::uint64_t l0_index) const {
    return ctx_->instance->rhs.at(l0_index);
}

std::pair<PcpHlcpp, PruneReport> prune_degenerate(const PcpHlcpp& v) {
    PcpHlcpp pruned = v;
    pruned.pruned_ = true;
    PruneReport rep;
    rep.total = v.num_hyperedges();
    rep.zero_weight_per_equation.assign(v.context().instance->lhs.size(), 0);
    for (std::uint64_t h = 0; h < rep.total; ++h) {
        if (v.hyperedge_degenerate(h)) {
            ++rep.degenerate;
            continue;
        }
        PcpRandomness rho = v.hyperedge_randomness(h);
        if (v.context().coeff_ext[rho.i].eval(rho.coords) == 0) {
            ++rep.zero_weight;
            ++rep.zero_weight_per_equation[rho.i];
        }
    }
    rep.pruned_fraction = Rational(rep.degenerate + rep.zero_weight, rep.total);
    return {std::move(pruned), std::move(rep)};
}

// --- SyntheticHlcpp ---

SyntheticHlcpp::SyntheticHlcpp(const Field& f, std::vector<LayerSpec> layers,
                               std::vector<std::uint64_t> allowable)
    : f_(&f), layers_(std::move(layers)), allowable_(std::move(allowable)) {
    if (layers_.size() < 2) throw DimensionMismatch("a layered instance needs at least two layers");
    if (allowable_.size() != layers_[0].size)
        throw DimensionMismatch("one allowable value per layer-0 vertex");
}

std::size_t SyntheticHlcpp::add_edge(VertexRef u, VertexRef v, std::uint64_t slot,
                                     ConstraintDescriptor d) {
    if (v.layer != u.layer + 1) throw DimensionMismatch("edges connect consecutive layers");
    if (u.index >= layers_.at(u.layer).size || v.index >= layers_.at(v.layer).size)
        throw DimensionMismatch("edge endpoint outside its layer");
    HlcppEdge e;
    e.u = u;
    e.v = v;
    e.slot = slot;
    e.d = std::move(d);
    edges_.push_back(std::move(e));
    forward_[u].push_back(edges_.size() - 1);
    return edges_.size() - 1;
}

void SyntheticHlcpp::add_hyperedge(Hyperedge h) {
    for (std::size_t id : h.edge_ids) {
        if (id >= edges_.size()) throw DimensionMismatch("hyperedge references a nonexistent edge");
    }
    hypers_.push_back(std::move(h));
}

std::vector<HlcppEdge> SyntheticHlcpp::forward_edges(VertexRef u) const {
    std::vector<HlcppEdge> out;
    auto it = forward_.find(u);
    if (it == forward_.end()) return out;
    out.reserve(it->second.size());
    for (std::size_t id : it->second) out.push_back(edges_[id]);
    return out;
}

std::vector<VertexRef> SyntheticHlcpp::hyperedge_vertices(std::uint64_t h) const {
    return hypers_.at(h).vertices;
}

std::vector<HlcppEdge> SyntheticHlcpp::hyperedge_edges(std::uint64_t h) const {
    std::vector<HlcppEdge> out;
    out.reserve(hypers_.at(h).edge_ids.size());
    for (std::size_t id : hypers_.at(h).edge_ids) out.push_back(edges_[id]);
    return out;
}

// --- labelings ---

Labeling labeling_from_tables(const PcpHlcpp& view, const PcpTables& t) {
    const Field& f = view.field();
    const unsigned m = view.m();
    Labeling L;
    for (std::size_t i = 0; i < t.sums.size(); ++i) {
        for (const auto& [prefix, coeffs] : t.sums[i]) {
            unsigned layer = unsigned(prefix.size());
            std::uint64_t prefix_num = 0;
            for (std::uint64_t a : prefix) prefix_num = prefix_num * f.q() + a;
            std::uint64_t base = 1;
            for (unsigned j = 0; j < layer; ++j) base *= f.q();
            L.labels[{layer, i * base + prefix_num}] = coeffs;
        }
    }
    for (std::uint64_t li = 0; li < view.lines().size(); ++li) {
        L.labels[{2 * m, li}] = t.lines.at(view.lines()[li]);
    }
    for (std::uint64_t p = 0; p < t.points.size(); ++p) {
        L.labels[{2 * m + 1, p}] = Label{t.points[p]};
    }
    return L;
}

Labeling labeling_from_assignment(const PcpHlcpp& view, std::span<const std::uint64_t> assignment) {
    PcpTables t = honest_prover(view.context(), assignment);
    return labeling_from_tables(view, t);
}

bool edge_satisfied(const Field& f, const HlcppEdge& e, const Label& lu, const Label& lv) {
    return descriptor_pi(f, e.d, lu) == descriptor_sigma(f, e.d, lv);
}

bool evaluate_hyperedge(const HlcppView& view, const Labeling& L, std::uint64_t h) {
    const Field& f = view.field();
    for (const HlcppEdge& e : view.hyperedge_edges(h)) {
        if (!e.has_target) continue;
        auto iu = L.labels.find(e.u);
        auto iv = L.labels.find(e.v);
        if (iu == L.labels.end() || iv == L.labels.end()) return false;
        if (!edge_satisfied(f, e, iu->second, iv->second)) return false;
    }
    for (const VertexRef& v : view.hyperedge_vertices(h)) {
        if (v.layer != 0) continue;
        auto it = L.labels.find(v);
        if (it == L.labels.end()) return false;
        if (partition_value(f, it->second) != view.allowable_value(v.index)) return false;
    }
    return true;
}

Rational evaluate_labeling(const HlcppView& view, const Labeling& L) {
    std::uint64_t live = 0, satisfied = 0;
    for (std::uint64_t h = 0; h < view.num_hyperedges(); ++h) {
        if (view.hyperedge_pruned(h)) continue;
        ++live;
        if (evaluate_hyperedge(view, L, h)) ++satisfied;
    }
    if (live == 0) return Rational(0);
    return Rational(satisfied, live);
}

// --- smoothness ---

namespace {

bool structural_vertex_check(const HlcppView& view, VertexRef u,
                             const std::vector<HlcppEdge>& edges, std::string& why) {
    const Field& f = view.field();
    std::vector<std::uint64_t> points;
    bool any_explicit = false;
    for (const HlcppEdge& e : edges) {
        if (auto p = descriptor_pi_point(e.d)) points.push_back(*p);
        else any_explicit = true;
    }
    if (!points.empty()) {
        std::sort(points.begin(), points.end());
        if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
            why = "duplicate pi evaluation point";
            return false;
        }
        // a full forward fan must cover F_q exactly
        if (points.size() == f.q() && (points.front() != 0 || points.back() != f.q() - 1)) {
            why = "pi evaluation points do not cover the field";
            return false;
        }
    }
    if (any_explicit) {
        // tiny domains only: exhaustive pairwise collision counts
        auto labels = view.enumerate_labels(u.layer, 1 << 12);
        for (std::size_t x = 0; x < labels.size(); ++x) {
            for (std::size_t y = x + 1; y < labels.size(); ++y) {
                unsigned collisions = 0;
                for (const HlcppEdge& e : edges) {
                    if (descriptor_pi(f, e.d, labels[x]) == descriptor_pi(f, e.d, labels[y]))
                        ++collisions;
                }
                if (collisions > view.max_agreements(u.layer)) {
                    why = "a label pair collides on too many forward edges";
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

SmoothnessReport check_smoothness(const HlcppView& view, std::uint64_t sampled_pairs,
                                  std::uint64_t seed) {
    const Field& f = view.field();
    SmoothnessReport rep;
    unsigned layers_with_edges = view.num_layers() - 1;
    for (unsigned layer = 0; layer < layers_with_edges; ++layer) {
        rep.delta[layer] = Rational(view.max_agreements(layer), f.q());
        for (std::uint64_t idx = 0; idx < view.layer_size(layer); ++idx) {
            VertexRef u{layer, idx};
            auto edges = view.forward_edges(u);
            if (edges.empty()) continue;
            std::string why;
            if (!structural_vertex_check(view, u, edges, why)) {
                rep.structural_pass = false;
                if (!rep.structural_failure) rep.structural_failure = {u, why};
            }
        }
    }
    rep.sampled_pairs = sampled_pairs;
    std::mt19937_64 rng = trial_stream(seed, 0);
    for (std::uint64_t s = 0; s < sampled_pairs; ++s) {
        unsigned layer = unsigned(uniform_below(rng, layers_with_edges));
        VertexRef u{layer, uniform_below(rng, view.layer_size(layer))};
        auto edges = view.forward_edges(u);
        if (edges.empty()) continue;
        Label l(view.label_len(layer)), lp;
        for (auto& c : l) c = f.sample(rng);
        do {
            lp.assign(view.label_len(layer), 0);
            for (auto& c : lp) c = f.sample(rng);
        } while (lp == l);
        unsigned collisions = 0;
        for (const HlcppEdge& e : edges) {
            if (descriptor_pi(f, e.d, l) == descriptor_pi(f, e.d, lp)) ++collisions;
        }
        rep.max_collisions = std::max(rep.max_collisions, collisions);
        if (collisions > view.max_agreements(layer)) rep.sampled_pass = false;
    }
    return rep;
}

// --- uniformity ---

UniformityReport check_uniformity(const HlcppView& view, std::uint64_t budget) {
    const Field& f = view.field();
    const unsigned layers = view.num_layers();
    std::uint64_t total = view.num_hyperedges();
    if (total > budget / (layers + 1)) throw BudgetExceeded("hyperedge enumeration exceeds budget");

    std::vector<std::vector<std::uint64_t>> vertex_counts(layers);
    for (unsigned j = 0; j < layers; ++j) vertex_counts[j].assign(view.layer_size(j), 0);
    // edge key at lower layer j: u.index * q + slot
    std::vector<std::map<std::uint64_t, std::uint64_t>> edge_counts(layers - 1);

    for (std::uint64_t h = 0; h < total; ++h) {
        if (view.hyperedge_pruned(h)) continue;
        for (const VertexRef& v : view.hyperedge_vertices(h)) {
            ++vertex_counts[v.layer][v.index];
        }
        for (const HlcppEdge& e : view.hyperedge_edges(h)) {
            ++edge_counts[e.u.layer][e.u.index * f.q() + e.slot];
        }
    }

    UniformityReport rep;
    rep.deviation = Rational(0);
    for (unsigned j = 0; j < layers; ++j) {
        auto [mn, mx] = std::minmax_element(vertex_counts[j].begin(), vertex_counts[j].end());
        rep.vertex_count_range.emplace_back(*mn, *mx);
        if (*mn != *mx) rep.condition1_exact = false;
        if (*mx > 0) {
            Rational dev(*mx - *mn, *mx);
            if (dev > rep.deviation) rep.deviation = dev;
        }
    }
    for (unsigned j = 0; j + 1 < layers; ++j) {
        // the edge universe: every forward slot of every layer-j vertex
        std::uint64_t mn = std::numeric_limits<std::uint64_t>::max(), mx = 0;
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            for (const HlcppEdge& e : view.forward_edges({j, idx})) {
                auto it = edge_counts[j].find(idx * f.q() + e.slot);
                std::uint64_t c = it == edge_counts[j].end() ? 0 : it->second;
                mn = std::min(mn, c);
                mx = std::max(mx, c);
            }
        }
        if (mn == std::numeric_limits<std::uint64_t>::max()) mn = mx = 0;
        rep.edge_count_range.emplace_back(mn, mx);
        if (mn != mx) rep.condition2_exact = false;
    }
    return rep;
}

// --- serialization ---

std::string hlcpp_structure_to_json(const HlcppView& view) {
    const Field& f = view.field();
    nlohmann::ordered_json j;
    j["field"]["r"] = f.r();
    {
        std::ostringstream mod;
        mod << std::hex << f.modulus_bits();
        j["field"]["modulus"] = mod.str();
    }
    j["num_layers"] = view.num_layers();
    j["layers"] = nlohmann::ordered_json::array();
    for (unsigned layer = 0; layer < view.num_layers(); ++layer) {
        j["layers"].push_back({{"size", view.layer_size(layer)},
                               {"label_len", view.label_len(layer)},
                               {"max_agreements", view.max_agreements(layer)}});
    }
    j["num_hyperedges"] = view.num_hyperedges();
    auto pruned = nlohmann::ordered_json::array();
    for (std::uint64_t h = 0; h < view.num_hyperedges(); ++h) {
        if (view.hyperedge_pruned(h)) pruned.push_back(h);
    }
    j["pruned"] = std::move(pruned);
    auto allowable = nlohmann::ordered_json::array();
    for (std::uint64_t v = 0; v < view.layer_size(0); ++v) {
        allowable.push_back(f.to_hex(view.allowable_value(v)));
    }
    j["allowable"] = std::move(allowable);
    return j.dump(2) + "\n";
}

std::string labeling_to_json(const Field& f, const Labeling& L) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [v, label] : L.labels) {
        std::string hex;
        for (std::size_t i = 0; i < label.size(); ++i) {
            if (i) hex.push_back(',');
            hex += f.to_hex(label[i]);
        }
        arr.push_back({{"layer", v.layer}, {"index", v.index}, {"coeffs", hex}});
    }
    nlohmann::ordered_json j;
    j["labels"] = std::move(arr);
    return j.dump(2) + "\n";
}

Labeling labeling_from_json(const Field& f, const std::string& text) {
    Labeling L;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        for (const auto& entry : j.at("labels")) {
            VertexRef v{entry.at("layer").get<unsigned>(), entry.at("index").get<std::uint64_t>()};
            Label label;
            std::string hex = entry.at("coeffs").get<std::string>();
            std::size_t start = 0;
            while (start <= hex.size()) {
                std::size_t pos = hex.find(',', start);
                std::string tok = pos == std::string::npos ? hex.substr(start)
                                                           : hex.substr(start, pos - start);
                label.push_back(f.from_hex(tok));
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
            L.labels[v] = std::move(label);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad labeling: ") + e.what());
    }
    return L;
}

} // namespace pcpmw
