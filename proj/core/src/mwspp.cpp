#include "pcpmw/mwspp.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>

#include "pcpmw/parallel.hpp"
#include "pcpmw/pcp.hpp"

namespace pcpmw {

namespace {

// Product constraints with zero weight are not many-to-many; they carry no
// rows and the decoder ignores them.
bool edge_ignored(const HlcppEdge& e) {
    return !e.has_target ||
           (e.d.kind == ConstraintDescriptor::Kind::EvalVsWeightedProduct && e.d.c == 0);
}

std::vector<HlcppEdge> sorted_forward_edges(const HlcppView& view, VertexRef u) {
    auto edges = view.forward_edges(u);
    std::stable_sort(edges.begin(), edges.end(),
                     [](const HlcppEdge& a, const HlcppEdge& b) { return a.slot < b.slot; });
    return edges;
}

const std::vector<std::uint64_t>* find_set(const NonzeroLabelSet& sol, VertexRef v) {
    auto it = sol.sets.find(v);
    return it == sol.sets.end() ? nullptr : &it->second;
}

} // namespace

MwsppExplicit build_mwspp_explicit(const HlcppView& view, std::uint64_t budget) {
    const Field& f = view.field();
    const unsigned layers = view.num_layers();

    BigInt volume = 0;
    for (unsigned j = 0; j < layers; ++j) {
        if (view.layer_size(j) == 0) throw DimensionMismatch("empty layer");
        volume += BigInt(view.layer_size(j)) * view.label_domain_size(j);
    }
    if (volume > budget) throw BudgetExceeded("label domain volume exceeds explicit budget");

    MwsppExplicit inst;
    std::vector<std::uint64_t> domain(layers);
    for (unsigned j = 0; j < layers; ++j) {
        domain[j] = view.label_domain_size(j).convert_to<std::uint64_t>();
        inst.q_tilde *= view.layer_size(j);
    }

    std::map<VertexRef, std::uint64_t> base;
    std::uint64_t next = 0;
    for (unsigned j = 0; j < layers; ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            VertexRef v{j, idx};
            base[v] = next;
            for (std::uint64_t id = 0; id < domain[j]; ++id) {
                inst.col_meaning.emplace_back(v, id);
                inst.var_index[{v, id}] = next + id;
            }
            next += domain[j];
        }
    }
    inst.num_cols = next;

    // vertex parity rows (layer 0 is covered by the allowable rows summed)
    for (unsigned j = 1; j < layers; ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            MwsppFixedRow row;
            std::uint64_t b = base[{j, idx}];
            row.cols.resize(domain[j]);
            for (std::uint64_t id = 0; id < domain[j]; ++id) row.cols[id] = b + id;
            row.rhs = true;
            inst.fixed_rows.push_back(std::move(row));
        }
    }

    // allowable-part rows; only their right-hand sides depend on the input
    for (std::uint64_t idx = 0; idx < view.layer_size(0); ++idx) {
        std::uint64_t b = base[{0, idx}];
        std::uint64_t want = view.allowable_value(idx);
        for (std::uint64_t a = 0; a < f.q(); ++a) {
            MwsppFixedRow row;
            for (std::uint64_t id = 0; id < domain[0]; ++id) {
                if (partition_value(f, view.label_from_id(0, id)) == a) row.cols.push_back(b + id);
            }
            row.rhs = (a == want);
            inst.allowable_row_indices.push_back(inst.fixed_rows.size());
            inst.fixed_rows.push_back(std::move(row));
        }
    }

    // edge rows: one per (edge, range element), right-hand side always zero
    for (unsigned j = 0; j + 1 < layers; ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            VertexRef u{j, idx};
            for (const HlcppEdge& e : sorted_forward_edges(view, u)) {
                if (edge_ignored(e)) continue;
                std::uint64_t bu = base[e.u], bv = base[e.v];
                for (std::uint64_t a = 0; a < f.q(); ++a) {
                    MwsppFixedRow row;
                    for (std::uint64_t id = 0; id < domain[e.u.layer]; ++id) {
                        if (descriptor_pi(f, e.d, view.label_from_id(e.u.layer, id)) == a)
                            row.cols.push_back(bu + id);
                    }
                    for (std::uint64_t id = 0; id < domain[e.v.layer]; ++id) {
                        if (descriptor_sigma(f, e.d, view.label_from_id(e.v.layer, id)) == a)
                            row.cols.push_back(bv + id);
                    }
                    if (row.cols.empty()) continue;
                    inst.fixed_rows.push_back(std::move(row));
                }
            }
        }
    }

    for (unsigned j = 0; j < layers; ++j) {
        BigInt mult = inst.q_tilde / view.layer_size(j);
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            std::uint64_t b = base[{j, idx}];
            for (std::uint64_t id = 0; id < domain[j]; ++id) {
                inst.variable_rows.push_back({{b + id}, mult});
            }
        }
    }
    return inst;
}

MwsppImplicit build_mwspp_implicit(const HlcppView& view) { return {&view}; }

NonzeroLabelSet honest_solution(const HlcppView& view, const Labeling& L) {
    if (evaluate_labeling(view, L) != Rational(1))
        throw NotSatisfying("labeling does not satisfy every live hyperedge");
    NonzeroLabelSet sol;
    for (unsigned j = 0; j < view.num_layers(); ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            VertexRef v{j, idx};
            auto it = L.labels.find(v);
            if (it == L.labels.end()) throw NotSatisfying("labeling leaves a vertex unlabeled");
            sol.sets[v] = {view.label_id(j, it->second)};
        }
    }
    return sol;
}

FixedFormReport check_fixed_forms(const HlcppView& view, const NonzeroLabelSet& sol) {
    const Field& f = view.field();
    FixedFormReport rep;
    for (unsigned j = 1; j < view.num_layers(); ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            const auto* set = find_set(sol, {j, idx});
            std::size_t n = set ? set->size() : 0;
            if (n % 2 == 0)
                rep.violations.push_back({FixedFormViolation::Family::VertexParity, {j, idx}, 0, 0});
        }
    }
    for (std::uint64_t idx = 0; idx < view.layer_size(0); ++idx) {
        VertexRef v{0, idx};
        const auto* set = find_set(sol, v);
        std::vector<unsigned> parity(f.q(), 0);
        if (set) {
            for (std::uint64_t id : *set)
                parity[partition_value(f, view.label_from_id(0, id))] ^= 1;
        }
        std::uint64_t want = view.allowable_value(idx);
        for (std::uint64_t a = 0; a < f.q(); ++a) {
            if (parity[a] != (a == want ? 1u : 0u))
                rep.violations.push_back({FixedFormViolation::Family::Allowable, v, 0, a});
        }
    }
    for (unsigned j = 0; j + 1 < view.num_layers(); ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            VertexRef u{j, idx};
            for (const HlcppEdge& e : sorted_forward_edges(view, u)) {
                if (edge_ignored(e)) continue;
                std::vector<unsigned> pu(f.q(), 0), pv(f.q(), 0);
                if (const auto* su = find_set(sol, e.u)) {
                    for (std::uint64_t id : *su)
                        pu[descriptor_pi(f, e.d, view.label_from_id(e.u.layer, id))] ^= 1;
                }
                if (const auto* sv = find_set(sol, e.v)) {
                    for (std::uint64_t id : *sv)
                        pv[descriptor_sigma(f, e.d, view.label_from_id(e.v.layer, id))] ^= 1;
                }
                for (std::uint64_t a = 0; a < f.q(); ++a) {
                    if (pu[a] != pv[a])
                        rep.violations.push_back(
                            {FixedFormViolation::Family::Edge, u, e.slot, a});
                }
            }
        }
    }
    return rep;
}

std::vector<std::size_t> check_fixed_forms(const MwsppExplicit& inst,
                                           const std::vector<bool>& x) {
    if (x.size() != inst.num_cols) throw DimensionMismatch("solution length != column count");
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < inst.fixed_rows.size(); ++r) {
        bool acc = false;
        for (std::uint64_t c : inst.fixed_rows[r].cols) acc ^= x[c];
        if (acc != inst.fixed_rows[r].rhs) out.push_back(r);
    }
    return out;
}

std::vector<bool> solution_bits(const MwsppExplicit& inst, const NonzeroLabelSet& sol) {
    std::vector<bool> x(inst.num_cols, false);
    for (const auto& [v, set] : sol.sets) {
        for (std::uint64_t id : set) {
            auto it = inst.var_index.find({v, id});
            if (it == inst.var_index.end())
                throw MissingTableEntry("no column for (vertex, label)");
            x[it->second] = true;
        }
    }
    return x;
}

Rational solution_weight(const HlcppView& view, const NonzeroLabelSet& sol) {
    Rational w = 0;
    for (const auto& [v, set] : sol.sets) {
        if (v.layer >= view.num_layers()) throw DimensionMismatch("vertex outside the instance");
        w += Rational(set.size(), view.layer_size(v.layer));
    }
    return w;
}

BigInt solution_weight(const MwsppExplicit& inst, const std::vector<bool>& x) {
    if (x.size() != inst.num_cols) throw DimensionMismatch("solution length != column count");
    BigInt w = 0;
    for (const MwsppVarRow& row : inst.variable_rows) {
        bool acc = false;
        for (std::uint64_t c : row.cols) acc ^= x[c];
        if (acc) w += row.multiplicity;
    }
    return w;
}

Rational normalized_weight(const MwsppExplicit& inst, const std::vector<bool>& x) {
    return Rational(solution_weight(inst, x)) / Rational(inst.q_tilde);
}

// --- brute force over the fixed system ---

namespace {

// Reduced row echelon form of (B_f | t) over F_2, then a particular solution
// and a nullspace basis.
struct F2Solution {
    std::vector<bool> x0;
    std::vector<std::vector<bool>> basis;
};

F2Solution solve_fixed(const MwsppExplicit& inst) {
    const std::uint64_t n = inst.num_cols;
    const std::size_t words = std::size_t((n + 63) / 64);
    struct Row {
        std::vector<std::uint64_t> bits;
        bool rhs;
    };
    std::vector<Row> rows;
    rows.reserve(inst.fixed_rows.size());
    for (const MwsppFixedRow& fr : inst.fixed_rows) {
        Row row{std::vector<std::uint64_t>(words, 0), fr.rhs};
        for (std::uint64_t c : fr.cols) row.bits[c >> 6] ^= std::uint64_t(1) << (c & 63);
        rows.push_back(std::move(row));
    }
    auto get = [&](const Row& r, std::uint64_t c) {
        return (r.bits[c >> 6] >> (c & 63)) & 1;
    };
    std::vector<std::int64_t> pivot_row_of_col(n, -1);
    std::size_t rank = 0;
    for (std::uint64_t c = 0; c < n && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && !get(rows[p], c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && get(rows[i], c)) {
                for (std::size_t w = 0; w < words; ++w) rows[i].bits[w] ^= rows[rank].bits[w];
                rows[i].rhs ^= rows[rank].rhs;
            }
        }
        pivot_row_of_col[c] = std::int64_t(rank);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i) {
        if (rows[i].rhs) throw InfeasibleTarget("fixed system has no solution");
    }
    F2Solution sol;
    sol.x0.assign(n, false);
    for (std::uint64_t c = 0; c < n; ++c) {
        if (pivot_row_of_col[c] >= 0) sol.x0[c] = rows[pivot_row_of_col[c]].rhs;
    }
    for (std::uint64_t fc = 0; fc < n; ++fc) {
        if (pivot_row_of_col[fc] >= 0) continue;
        std::vector<bool> v(n, false);
        v[fc] = true;
        for (std::uint64_t c = 0; c < n; ++c) {
            if (pivot_row_of_col[c] >= 0 && get(rows[pivot_row_of_col[c]], fc)) v[c] = true;
        }
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

} // namespace

MinWeightResult brute_force_min_weight(const MwsppExplicit& inst, std::uint64_t budget,
                                       unsigned workers) {
    F2Solution sys = solve_fixed(inst);
    const std::size_t nullity = sys.basis.size();
    if (nullity >= 63 || (std::uint64_t(1) << nullity) > budget)
        throw BudgetExceeded("solution space exceeds brute-force budget");
    const std::uint64_t total = std::uint64_t(1) << nullity;

    using Best = std::optional<MinWeightResult>;
    auto map_chunk = [&](std::uint64_t lo, std::uint64_t hi) -> Best {
        Best best;
        std::vector<bool> x(inst.num_cols);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            x = sys.x0;
            for (std::size_t b = 0; b < nullity; ++b) {
                if ((mask >> b) & 1) {
                    for (std::uint64_t c = 0; c < inst.num_cols; ++c)
                        if (sys.basis[b][c]) x[c] = !x[c];
                }
            }
            BigInt w = solution_weight(inst, x);
            if (!best || w < best->weight || (w == best->weight && x < best->witness))
                best = MinWeightResult{std::move(w), x};
        }
        return best;
    };
    auto combine = [](Best& acc, Best chunk) {
        if (!chunk) return;
        if (!acc || chunk->weight < acc->weight ||
            (chunk->weight == acc->weight && chunk->witness < acc->witness))
            acc = std::move(chunk);
    };
    Best best = parallel_reduce<Best>(0, total, workers, std::nullopt, map_chunk, combine);
    return *best;
}

Labeling randomized_decode(const HlcppView& view, const NonzeroLabelSet& sol,
                           std::uint64_t seed) {
    std::mt19937_64 rng = trial_stream(seed, 0);
    Labeling L;
    for (const auto& [v, set] : sol.sets) {
        if (set.empty()) throw EmptySet("vertex has no nonzero label");
        std::uint64_t pick = set[uniform_below(rng, set.size())];
        L.labels[v] = view.label_from_id(v.layer, pick);
    }
    return L;
}

std::pair<NonzeroLabelSet, MarkovReport> markov_prune(const HlcppView& view,
                                                      const NonzeroLabelSet& sol,
                                                      std::uint64_t rho) {
    if (rho == 0) throw InputError("the label-count threshold must be positive");
    MarkovReport rep;
    rep.threshold = rho;
    rep.normalized_weight = solution_weight(view, sol);
    rep.bound = rep.normalized_weight / rho;
    NonzeroLabelSet out;
    std::map<unsigned, std::uint64_t> removed_per_layer;
    for (const auto& [v, set] : sol.sets) {
        if (set.size() > rho) {
            rep.removed.push_back(v);
            ++removed_per_layer[v.layer];
        } else {
            out.sets[v] = set;
        }
    }
    for (unsigned layer = 0; layer < view.num_layers(); ++layer) {
        std::uint64_t count = removed_per_layer.count(layer) ? removed_per_layer[layer] : 0;
        Rational frac(count, view.layer_size(layer));
        rep.per_layer_removed_fraction[layer] = frac;
        if (frac > rep.bound) rep.within = false;
    }
    return {std::move(out), std::move(rep)};
}

CollisionReport collision_filter(const HlcppView& view, const NonzeroLabelSet& sol,
                                 std::uint64_t rho) {
    const Field& f = view.field();
    CollisionReport rep;
    rep.rho = rho;
    std::map<unsigned, std::uint64_t> total_per_layer, removed_per_layer;
    for (unsigned j = 0; j + 1 < view.num_layers(); ++j) {
        for (std::uint64_t idx = 0; idx < view.layer_size(j); ++idx) {
            VertexRef u{j, idx};
            const auto* set = find_set(sol, u);
            for (const HlcppEdge& e : sorted_forward_edges(view, u)) {
                if (edge_ignored(e)) continue;
                ++total_per_layer[j];
                if (!set || set->size() < 2) continue;
                std::vector<std::uint64_t> vals;
                vals.reserve(set->size());
                for (std::uint64_t id : *set)
                    vals.push_back(descriptor_pi(f, e.d, view.label_from_id(j, id)));
                std::sort(vals.begin(), vals.end());
                if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) {
                    rep.removed.emplace_back(u, e.slot);
                    ++removed_per_layer[j];
                }
            }
        }
    }
    for (const auto& [layer, total] : total_per_layer) {
        std::uint64_t rem = removed_per_layer.count(layer) ? removed_per_layer[layer] : 0;
        Rational frac(rem, total);
        Rational bound = Rational(view.max_agreements(layer)) * rho * rho / f.q();
        rep.per_layer_removed_fraction[layer] = frac;
        rep.per_layer_bound[layer] = bound;
        if (frac > bound) rep.within = false;
    }
    return rep;
}

Rational hyperedge_decode_probability(
    const HlcppView& view, const NonzeroLabelSet& sol, std::uint64_t h,
    const std::vector<std::pair<VertexRef, std::uint64_t>>* removed_edges) {
    const Field& f = view.field();
    auto vertices = view.hyperedge_vertices(h);
    auto all_edges = view.hyperedge_edges(h);

    std::map<VertexRef, std::size_t> local;
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;

    std::vector<HlcppEdge> edges;
    for (const HlcppEdge& e : all_edges) {
        if (edge_ignored(e)) continue;
        if (removed_edges &&
            std::find(removed_edges->begin(), removed_edges->end(),
                      std::make_pair(e.u, e.slot)) != removed_edges->end())
            continue;
        edges.push_back(e);
    }

    // full set sizes form the denominator; the allowable part filters which
    // layer-0 choices count as successes
    BigInt denom = 1;
    std::vector<std::vector<std::uint64_t>> admissible(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto* set = find_set(sol, vertices[i]);
        if (!set || set->empty()) return Rational(0);
        denom *= BigInt(set->size());
        for (std::uint64_t id : *set) {
            if (vertices[i].layer == 0 &&
                partition_value(f, view.label_from_id(0, id)) !=
                    view.allowable_value(vertices[i].index))
                continue;
            admissible[i].push_back(id);
        }
    }

    std::vector<std::vector<std::size_t>> incident(vertices.size());
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        incident[local.at(edges[ei].u)].push_back(ei);
        incident[local.at(edges[ei].v)].push_back(ei);
    }

    // orient each component as a rooted tree; a re-encountered vertex means a
    // cycle, which the construction never produces
    std::vector<std::vector<std::size_t>> child_edges(vertices.size());
    std::vector<bool> visited(vertices.size(), false);
    std::vector<std::size_t> roots;
    for (std::size_t s = 0; s < vertices.size(); ++s) {
        if (visited[s]) continue;
        roots.push_back(s);
        visited[s] = true;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{s, edges.size()}};
        while (!stack.empty()) {
            auto [i, via] = stack.back();
            stack.pop_back();
            for (std::size_t ei : incident[i]) {
                if (ei == via) continue;
                const HlcppEdge& e = edges[ei];
                std::size_t other = local.at(e.u) == i ? local.at(e.v) : local.at(e.u);
                if (visited[other])
                    throw DimensionMismatch("hyperedge constraint graph has a cycle");
                visited[other] = true;
                child_edges[i].push_back(ei);
                stack.emplace_back(other, ei);
            }
        }
    }

    std::vector<std::vector<Label>> adm_labels(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::uint64_t id : admissible[i])
            adm_labels[i].push_back(view.label_from_id(vertices[i].layer, id));
    }

    // count(i, ai): satisfying assignments of the subtree below vertex i when
    // it takes its ai-th admissible label
    std::vector<std::vector<std::optional<BigInt>>> memo(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) memo[i].resize(admissible[i].size());
    std::function<const BigInt&(std::size_t, std::size_t)> count =
        [&](std::size_t i, std::size_t ai) -> const BigInt& {
        if (memo[i][ai]) return *memo[i][ai];
        BigInt prod = 1;
        for (std::size_t ei : child_edges[i]) {
            const HlcppEdge& e = edges[ei];
            std::size_t other = local.at(e.u) == i ? local.at(e.v) : local.at(e.u);
            BigInt sum = 0;
            for (std::size_t oi = 0; oi < adm_labels[other].size(); ++oi) {
                const Label& lu = local.at(e.u) == i ? adm_labels[i][ai] : adm_labels[other][oi];
                const Label& lv = local.at(e.u) == i ? adm_labels[other][oi] : adm_labels[i][ai];
                if (edge_satisfied(f, e, lu, lv)) sum += count(other, oi);
            }
            prod *= sum;
            if (prod == 0) break;
        }
        memo[i][ai] = std::move(prod);
        return *memo[i][ai];
    };

    BigInt numer = 1;
    for (std::size_t s : roots) {
        BigInt comp = 0;
        for (std::size_t ai = 0; ai < adm_labels[s].size(); ++ai) comp += count(s, ai);
        numer *= comp;
        if (numer == 0) break;
    }
    return Rational(numer) / Rational(denom);
}

// --- nearest-codeword restatement ---

NcpInstance mwspp_to_ncp(const MwsppExplicit& inst, std::uint64_t budget) {
    F2Solution sys = solve_fixed(inst);
    BigInt length = 0;
    for (const MwsppVarRow& row : inst.variable_rows) length += row.multiplicity;
    if (length > budget) throw BudgetExceeded("expanded code length exceeds budget");

    NcpInstance ncp;
    ncp.length = length.convert_to<std::uint64_t>();
    auto image = [&](const std::vector<bool>& x) {
        std::vector<bool> out;
        out.reserve(ncp.length);
        for (const MwsppVarRow& row : inst.variable_rows) {
            bool acc = false;
            for (std::uint64_t c : row.cols) acc ^= x[c];
            std::uint64_t reps = row.multiplicity.convert_to<std::uint64_t>();
            out.insert(out.end(), reps, acc);
        }
        return out;
    };
    ncp.target = image(sys.x0);
    ncp.generator.reserve(sys.basis.size());
    for (const auto& b : sys.basis) ncp.generator.push_back(image(b));
    return ncp;
}

NcpResult brute_force_ncp(const NcpInstance& ncp, std::uint64_t budget, unsigned workers) {
    const std::size_t k = ncp.generator.size();
    if (k >= 63 || (std::uint64_t(1) << k) > budget)
        throw BudgetExceeded("codeword enumeration exceeds budget");
    const std::size_t words = (ncp.length + 63) / 64;
    auto pack = [&](const std::vector<bool>& v) {
        std::vector<std::uint64_t> out(words, 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) out[i >> 6] |= std::uint64_t(1) << (i & 63);
        return out;
    };
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(k);
    for (const auto& g : ncp.generator) rows.push_back(pack(g));
    std::vector<std::uint64_t> target = pack(ncp.target);

    using Best = std::optional<NcpResult>;
    auto map_chunk = [&](std::uint64_t lo, std::uint64_t hi) -> Best {
        Best best;
        std::vector<std::uint64_t> acc(words);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            acc = target;
            for (std::size_t b = 0; b < k; ++b) {
                if ((mask >> b) & 1)
                    for (std::size_t w = 0; w < words; ++w) acc[w] ^= rows[b][w];
            }
            std::uint64_t dist = 0;
            for (std::uint64_t w : acc) dist += std::uint64_t(std::popcount(w));
            std::vector<bool> combo(k);
            for (std::size_t b = 0; b < k; ++b) combo[b] = (mask >> b) & 1;
            BigInt d = dist;
            if (!best || d < best->distance ||
                (d == best->distance && combo < best->combo))
                best = NcpResult{std::move(d), std::move(combo)};
        }
        return best;
    };
    auto combine = [](Best& acc, Best chunk) {
        if (!chunk) return;
        if (!acc || chunk->distance < acc->distance ||
            (chunk->distance == acc->distance && chunk->combo < acc->combo))
            acc = std::move(chunk);
    };
    Best best = parallel_reduce<Best>(0, std::uint64_t(1) << k, workers, std::nullopt,
                                      map_chunk, combine);
    return *best;
}

// --- text round-trip ---

std::string mwspp_to_text(const MwsppExplicit& inst) {
    std::ostringstream out;
    out << "mwspp " << inst.num_cols << ' ' << inst.fixed_rows.size() << ' '
        << inst.variable_rows.size() << '\n';
    for (const MwsppFixedRow& row : inst.fixed_rows) {
        for (std::uint64_t c : row.cols) out << c << ' ';
        out << "= " << (row.rhs ? 1 : 0) << '\n';
    }
    for (const MwsppVarRow& row : inst.variable_rows) {
        for (std::uint64_t c : row.cols) out << c << ' ';
        out << "* " << row.multiplicity << '\n';
    }
    return out.str();
}

MwsppExplicit mwspp_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    MwsppExplicit inst;
    std::size_t num_fixed = 0, num_var = 0;
    if (!(in >> magic >> inst.num_cols >> num_fixed >> num_var) || magic != "mwspp")
        throw InputError("bad header");
    auto read_cols = [&](std::vector<std::uint64_t>& cols, char stop) {
        std::string tok;
        while (in >> tok) {
            if (tok.size() == 1 && tok[0] == stop) return true;
            try {
                std::uint64_t c = std::stoull(tok);
                if (c >= inst.num_cols) throw InputError("column index out of range");
                cols.push_back(c);
            } catch (const std::logic_error&) {
                throw InputError("bad column index");
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < num_fixed; ++i) {
        MwsppFixedRow row;
        int bit = 0;
        if (!read_cols(row.cols, '=') || !(in >> bit) || (bit != 0 && bit != 1))
            throw InputError("bad fixed row");
        row.rhs = bit == 1;
        inst.fixed_rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < num_var; ++i) {
        MwsppVarRow row;
        std::string mult;
        if (!read_cols(row.cols, '*') || !(in >> mult)) throw InputError("bad variable row");
        try {
            row.multiplicity = BigInt(mult);
        } catch (const std::runtime_error&) {
            throw InputError("bad multiplicity");
        }
        if (row.multiplicity < 1) throw InputError("multiplicity must be positive");
        inst.variable_rows.push_back(std::move(row));
    }
    return inst;
}

std::string ncp_to_text(const NcpInstance& ncp) {
    std::ostringstream out;
    out << "ncp " << ncp.generator.size() << ' ' << ncp.length << '\n';
    auto line = [&](const std::vector<bool>& v) {
        for (bool b : v) out << (b ? '1' : '0');
        out << '\n';
    };
    for (const auto& g : ncp.generator) line(g);
    line(ncp.target);
    return out.str();
}

NcpInstance ncp_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    std::size_t k = 0;
    NcpInstance ncp;
    if (!(in >> magic >> k >> ncp.length) || magic != "ncp") throw InputError("bad header");
    auto read_row = [&](std::vector<bool>& row) {
        std::string bits;
        if (!(in >> bits) || bits.size() != ncp.length) throw InputError("bad codeword row");
        row.resize(ncp.length);
        for (std::size_t i = 0; i < ncp.length; ++i) {
            if (bits[i] != '0' && bits[i] != '1') throw InputError("bad codeword row");
            row[i] = bits[i] == '1';
        }
    };
    ncp.generator.resize(k);
    for (auto& g : ncp.generator) read_row(g);
    read_row(ncp.target);
    return ncp;
}

MwsppExplicit ncp_to_mwspp(const NcpInstance& ncp) {
    MwsppExplicit inst;
    const std::uint64_t k = ncp.generator.size();
    inst.num_cols = k + 1; // k selectors plus the pinned carrier
    MwsppFixedRow pin;
    pin.cols = {k};
    pin.rhs = true;
    inst.fixed_rows.push_back(std::move(pin));
    for (std::uint64_t pos = 0; pos < ncp.length; ++pos) {
        MwsppVarRow row;
        for (std::uint64_t i = 0; i < k; ++i)
            if (ncp.generator[i][pos]) row.cols.push_back(i);
        if (ncp.target[pos]) row.cols.push_back(k);
        if (row.cols.empty()) continue; // identically zero coordinate
        inst.variable_rows.push_back(std::move(row));
    }
    inst.q_tilde = 1;
    return inst;
}

} // namespace pcpmw
