// Acceptance gate: ten exact, self-timed criteria covering completeness,
// exhaustive soundness counts, structural properties, the cross-encoding
// equivalences, the rounding accounting, the parameter regime arithmetic,
// and the pre-processing byte-diff contract. One line per criterion; the
// process exits 0 iff every criterion passes. All tolerances are exact
// comparisons over rationals and integers; the only inexactness anywhere is
// the wall-clock budget, which is reported but not enforced.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcpmw/field.hpp"
#include "pcpmw/hlcpp.hpp"
#include "pcpmw/mwspp.hpp"
#include "pcpmw/pcp.hpp"
#include "pcpmw/pipeline.hpp"
#include "pcpmw/poly.hpp"
#include "pcpmw/qcsp.hpp"
#include "pcpmw/rational.hpp"

namespace {

using namespace pcpmw;

struct Check {
    bool pass = true;
    std::vector<std::string> failures;
    std::string measured;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            failures.push_back(what);
        }
    }
};

// z0 pinned, x Boolean and pinned true; satisfied by (1, 1)
QcspInstance two_var_instance(const Field& f) {
    QcspInstance inst;
    inst.field = &f;
    inst.num_vars = 2;
    QuadraticPolynomial pin(f, 2), boole(f, 2), truth(f, 2);
    pin.add_term(0, 0, 1);
    boole.add_term(1, 1, 1);
    boole.add_term(0, 1, 1);
    truth.add_term(0, 1, 1);
    inst.lhs = {pin, boole, truth};
    inst.rhs = {1, 0, 1};
    return inst;
}

// z0, two Boolean inputs whose product is pinned true, one dummy variable
// pinned to zero; satisfied by (1, 1, 1, 0)
QcspInstance four_var_instance(const Field& f) {
    QcspInstance inst;
    inst.field = &f;
    inst.num_vars = 4;
    auto add = [&](std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>
                       terms,
                   std::uint64_t rhs) {
        QuadraticPolynomial p(f, 4);
        for (const auto& [s, t, c] : terms) p.add_term(s, t, c);
        inst.lhs.push_back(std::move(p));
        inst.rhs.push_back(rhs);
    };
    add({{0, 0, 1}}, 1);
    add({{1, 1, 1}, {0, 1, 1}}, 0);
    add({{2, 2, 1}, {0, 2, 1}}, 0);
    add({{1, 2, 1}}, 1);
    add({{0, 3, 1}}, 0);
    return inst;
}

// x pinned to both field values at once; no assignment satisfies all three
QcspInstance contradictory_instance(const Field& f) {
    QcspInstance inst;
    inst.field = &f;
    inst.num_vars = 2;
    QuadraticPolynomial pin(f, 2), zero(f, 2), one(f, 2);
    pin.add_term(0, 0, 1);
    zero.add_term(0, 1, 1);
    one.add_term(0, 1, 1);
    inst.lhs = {pin, zero, one};
    inst.rhs = {1, 0, 1};
    return inst;
}

// --- criterion 1: field and polynomial laws ---

Check field_poly_laws() {
    Check c;
    std::uint64_t exhaustive_cases = 0, random_cases = 0;

    // exhaustive algebra for every field of size at most 16
    for (unsigned r = 1; r <= 4; ++r) {
        Field f = Field::with_default_modulus(r);
        std::uint64_t q = std::uint64_t(1) << r;
        for (std::uint64_t a = 0; a < q; ++a) {
            for (std::uint64_t b = 0; b < q; ++b) {
                c.expect(f.add(a, b) == f.add(b, a), "add commutes");
                c.expect(f.mul(a, b) == f.mul(b, a), "mul commutes");
                c.expect(f.mul(f.add(a, b), f.add(a, b)) == f.add(f.mul(a, a), f.mul(b, b)),
                         "squaring is additive");
                for (std::uint64_t d = 0; d < q; ++d) {
                    c.expect(f.add(f.add(a, b), d) == f.add(a, f.add(b, d)), "add associates");
                    c.expect(f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d)), "mul associates");
                    c.expect(f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d)),
                             "mul distributes");
                    ++exhaustive_cases;
                }
            }
            if (a != 0) {
                c.expect(f.mul(a, f.inv(a)) == 1, "inverse");
                c.expect(f.pow(a, q - 1) == 1, "multiplicative order divides q-1");
            }
            c.expect(f.pow(a, q) == a, "Frobenius fixed points");
        }
    }

    // ten thousand random triples per law, split over four larger fields
    for (unsigned r : {8u, 16u, 24u, 32u}) {
        Field f = Field::with_default_modulus(r);
        std::mt19937_64 rng(1000 + r);
        for (int i = 0; i < 2500; ++i) {
            std::uint64_t a = f.sample(rng), b = f.sample(rng), d = f.sample(rng);
            c.expect(f.add(f.add(a, b), d) == f.add(a, f.add(b, d)), "add associates (random)");
            c.expect(f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d)), "mul associates (random)");
            c.expect(f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d)),
                     "mul distributes (random)");
            c.expect(f.mul(f.add(a, b), f.add(a, b)) == f.add(f.mul(a, a), f.mul(b, b)),
                     "squaring is additive (random)");
            if (a != 0) c.expect(f.mul(a, f.inv(a)) == 1, "inverse (random)");
            ++random_cases;
        }
    }

    // extension agreement on the cube: the multilinear extension reproduces
    // the cube function it came from, with individual degrees at most one
    {
        Field f = Field::with_default_modulus(4);
        std::mt19937_64 rng(77);
        for (unsigned m = 1; m <= 3; ++m) {
            for (int trial = 0; trial < 800; ++trial) {
                CubeFunction A(f, m);
                for (auto& v : A.values) v = f.sample(rng);
                MultivariatePoly ext = multilinear_extension(A);
                for (const auto& [expo, coeff] : ext.monomials()) {
                    (void)coeff;
                    for (auto e : expo) c.expect(e <= 1, "extension is multilinear");
                }
                for (std::size_t idx = 0; idx < A.values.size(); ++idx) {
                    std::vector<std::uint64_t> pt(m);
                    for (unsigned j = 0; j < m; ++j) pt[j] = (idx >> (m - 1 - j)) & 1;
                    c.expect(ext.eval(pt) == A.values[idx], "extension agrees on the cube");
                    ++random_cases;
                }
            }
        }
    }

    // line-restriction consistency: the restricted univariate matches the
    // polynomial at every parameter of every canonical line
    for (unsigned r : {2u, 3u}) {
        Field f = Field::with_default_modulus(r);
        std::uint64_t q = std::uint64_t(1) << r;
        std::mt19937_64 rng(200 + r);
        std::vector<Line> lines = enumerate_lines(f, 2);
        for (int trial = 0; trial < 20; ++trial) {
            MultivariatePoly g(f, 2, 2);
            for (int t = 0; t < 6; ++t) {
                std::uint32_t e0 = std::uint32_t(rng() % 2), e1 = std::uint32_t(rng() % 2);
                g.add_term({e0, e1}, f.sample(rng));
            }
            for (const Line& line : lines) {
                UnivariatePoly rest = restrict_to_line(g, line);
                for (std::uint64_t t = 0; t < q; ++t) {
                    c.expect(rest.eval(t) == g.eval(line_point(f, line, t)),
                             "line restriction agrees pointwise");
                    ++random_cases;
                }
            }
        }
    }

    // partial-sum consistency: s_p(0) + s_p(1) equals the previous round's
    // polynomial at the newly fixed coordinate, and the empty prefix sums to
    // the full cube total
    {
        Field f = Field::with_default_modulus(3);
        std::mt19937_64 rng(99);
        const unsigned M = 4;
        for (int trial = 0; trial < 110; ++trial) {
            MultivariatePoly g(f, M, 3);
            for (int t = 0; t < 10; ++t) {
                std::vector<std::uint32_t> expo(M, 0);
                unsigned budget = 3;
                for (unsigned j = 0; j < M; ++j) {
                    std::uint32_t e = std::uint32_t(rng() % (budget + 1));
                    expo[j] = e;
                    budget -= e;
                }
                g.add_term(expo, f.sample(rng));
            }
            std::uint64_t cube_total = 0;
            for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << M); ++idx) {
                std::vector<std::uint64_t> pt(M);
                for (unsigned j = 0; j < M; ++j) pt[j] = (idx >> (M - 1 - j)) & 1;
                cube_total = f.add(cube_total, g.eval(pt));
            }
            UnivariatePoly top = partial_sum(g, std::vector<std::uint64_t>{});
            c.expect(f.add(top.eval(0), top.eval(1)) == cube_total,
                     "empty prefix sums to the cube total");
            for (int probe = 0; probe < 100; ++probe) {
                std::size_t len = 1 + rng() % (M - 1);
                std::vector<std::uint64_t> prefix(len);
                for (auto& v : prefix) v = f.sample(rng);
                UnivariatePoly cur = partial_sum(g, prefix);
                std::vector<std::uint64_t> parent(prefix.begin(), prefix.end() - 1);
                UnivariatePoly prev = partial_sum(g, parent);
                c.expect(f.add(cur.eval(0), cur.eval(1)) == prev.eval(prefix.back()),
                         "round consistency identity");
                ++random_cases;
            }
        }
    }

    std::ostringstream m;
    m << exhaustive_cases << " exhaustive + " << random_cases << " random cases";
    c.measured = m.str();
    return c;
}

// --- criterion 2: proof-table completeness ---

Check completeness() {
    Check c;
    std::ostringstream m;

    {
        Field f(4, Field::default_modulus(4));
        QcspInstance boosted = boost_soundness(two_var_instance(f));
        QcspInstance padded = pad_to_power_of_two(boosted, 0);
        PcpContext ctx = make_pcp_context(padded, 1);
        std::vector<std::uint64_t> witness{1, 1};
        PcpTables tables = honest_prover(ctx, witness);
        AcceptanceEstimate est = estimate_acceptance(tables, ctx, true, 0, 1);
        c.expect(est.exact, "exhaustive mode");
        c.expect(est.total == 16 * (256 - 16), "admissible draw count at q=16, m=1");
        c.expect(est.accepted == est.total, "every draw accepted");
        c.expect(est.exact_value == Rational(1), "acceptance probability exactly one");
        m << est.accepted << "/" << est.total << " draws exact";
    }

    {
        Field f(3, Field::default_modulus(3));
        QcspInstance boosted = boost_soundness(four_var_instance(f));
        QcspInstance padded = pad_to_power_of_two(boosted, 0);
        PcpContext ctx = make_pcp_context(padded, 2);
        std::vector<std::uint64_t> witness{1, 1, 1, 0};
        PcpTables tables = honest_prover(ctx, witness);
        const std::uint64_t trials = 100000;
        AcceptanceEstimate est = estimate_acceptance(tables, ctx, false, trials, 42);
        c.expect(!est.exact, "sampled mode");
        c.expect(est.total == trials, "trial count");
        c.expect(est.accepted == trials, "zero rejections at q=8, m=2");
        m << "; " << est.accepted << "/" << est.total << " trials sampled";
    }

    c.measured = m.str();
    return c;
}

// --- criterion 3: exhaustive sum-check adversary bound ---

Check sum_check_bound() {
    Check c;
    PipelineConfig cfg;
    cfg.r = 4;
    cfg.trials = 50;
    PipelineResult res = run_soundness_experiments(cfg);
    c.expect(res.exit_code == 0, "experiment harness exit code");
    c.expect(res.checks_passed, "experiment harness internal checks");

    nlohmann::json report = nlohmann::json::parse(res.report_json);
    const nlohmann::json* sc = nullptr;
    for (const auto& st : report.at("stages"))
        if (st.at("name") == "sum-check") sc = &st;
    c.expect(sc != nullptr, "sum-check stage present");
    if (!sc) return c;

    c.expect(sc->at("bound") == "1/4", "bound is rounds*degree*arity over field size");
    const auto& rows = sc->at("adversaries");
    c.expect(rows.is_array() && rows.size() >= 100, "at least one hundred adversaries");
    long long worst = 0;
    for (const auto& row : rows) {
        long long accepted = row.at("accepted").get<long long>();
        long long total = row.at("total").get<long long>();
        c.expect(total == 256, "exhaustive count over all challenge points");
        c.expect(accepted * 16 <= 4 * total, "adversary within the 4/16 bound");
        worst = std::max(worst, accepted);
    }
    c.expect(sc->at("worst_accepted").get<long long>() == worst, "reported worst matches rows");
    c.expect(worst == 16, "worst adversary accepted on exactly 16 of 256 points");

    std::ostringstream m;
    m << rows.size() << " adversaries exhaustive, worst " << worst << "/256 vs bound 64/256";
    c.measured = m.str();
    return c;
}

// --- criterion 4: soundness boosting on a contradictory system ---

Check boosting_gap() {
    Check c;
    Field f(4, Field::default_modulus(4));
    QcspInstance base = contradictory_instance(f);
    BruteForceOptResult base_opt = brute_force_opt(base);
    c.expect(base_opt.opt == Rational(2, 3), "base optimum is 2/3");
    c.expect(base_opt.opt < Rational(1), "base system unsatisfiable");

    QcspInstance boosted = boost_soundness(base);
    c.expect(boosted.num_equations() == 16, "one output per field element");

    std::uint64_t max_satisfied = 0;
    const std::size_t k = base.num_equations();
    for (std::uint64_t z0 = 0; z0 < 16; ++z0) {
        for (std::uint64_t x = 0; x < 16; ++x) {
            std::vector<std::uint64_t> z{z0, x};
            std::uint64_t satisfied = 0;
            for (std::size_t i = 0; i < boosted.num_equations(); ++i)
                if (boosted.lhs[i].eval(z) == boosted.rhs[i]) ++satisfied;
            c.expect(satisfied <= k - 1, "imperfect assignment satisfies at most k-1 outputs");
            max_satisfied = std::max(max_satisfied, satisfied);
        }
    }
    Rational opt(max_satisfied, 16);
    c.expect(opt <= Rational(3, 16), "boosted optimum at most k/q");
    BruteForceOptResult boosted_opt = brute_force_opt(boosted);
    c.expect(boosted_opt.opt == opt, "exhaustive search agrees with the per-assignment count");

    std::ostringstream m;
    m << "all 256 assignments, max " << max_satisfied << "/16 outputs, optimum " << opt
      << " <= 3/16";
    c.measured = m.str();
    return c;
}

// --- criterion 5: layered-graph uniformity and smoothness ---

Check layered_structure() {
    Check c;
    std::ostringstream m;

    {
        Field f(3, Field::default_modulus(3));
        QcspInstance padded = pad_to_power_of_two(boost_soundness(two_var_instance(f)), 0);
        PcpContext ctx = make_pcp_context(padded, 1);
        PcpHlcpp view(ctx);
        UniformityReport uni = check_uniformity(view);
        c.expect(uni.condition1_exact, "per-vertex hyperedge counts constant");
        c.expect(uni.condition2_exact, "per-edge hyperedge counts constant");
        c.expect(uni.deviation == Rational(0), "zero deviation");
        m << "uniformity exact at q=8, m=1 (deviation " << uni.deviation << ")";

        PcpTables tables = honest_prover(ctx, std::vector<std::uint64_t>{1, 1});
        Labeling L = labeling_from_tables(view, tables);
        c.expect(evaluate_labeling(view, L) == Rational(1),
                 "honest labeling satisfies every hyperedge");
        m << "; honest labeling 1";
    }

    unsigned combos = 0;
    for (unsigned r : {3u, 4u}) {
        for (unsigned mm : {1u, 2u}) {
            Field f(r, Field::default_modulus(r));
            QcspInstance base = mm == 1 ? two_var_instance(f) : four_var_instance(f);
            QcspInstance padded = pad_to_power_of_two(boost_soundness(base), 0);
            PcpContext ctx = make_pcp_context(padded, mm);
            PcpHlcpp view(ctx);
            SmoothnessReport rep = check_smoothness(view, 200, 5);
            c.expect(rep.structural_pass, "structural smoothness");
            c.expect(!rep.structural_failure.has_value(), "no offending vertex");
            c.expect(rep.sampled_pass, "sampled collision counts within layer bounds");
            for (unsigned layer = 0; layer + 1 < view.num_layers(); ++layer)
                c.expect(rep.delta.at(layer) ==
                             Rational(view.max_agreements(layer), std::uint64_t(1) << r),
                         "per-layer smoothness parameter");
            ++combos;
        }
    }
    m << "; smoothness structural at " << combos << " (q, m) combinations";
    c.measured = m.str();
    return c;
}

// --- criterion 6: honest minimum-weight solution ---

Check honest_weight() {
    Check c;
    std::ostringstream m;
    for (unsigned r : {3u, 4u}) {
        Field f(r, Field::default_modulus(r));
        QcspInstance padded = pad_to_power_of_two(boost_soundness(two_var_instance(f)), 0);
        PcpContext ctx = make_pcp_context(padded, 1);
        PcpHlcpp view(ctx);
        PcpTables tables = honest_prover(ctx, std::vector<std::uint64_t>{1, 1});
        Labeling L = labeling_from_tables(view, tables);
        NonzeroLabelSet sol = honest_solution(view, L);
        FixedFormReport rep = check_fixed_forms(view, sol);
        c.expect(rep.ok(), "zero fixed-form violations");
        Rational w = solution_weight(view, sol);
        c.expect(w == Rational(view.num_layers()), "normalized weight equals the layer count");
        c.expect(w == Rational(4), "normalized weight exactly 2m+2 at m=1");
        m << (r == 3 ? "" : "; ") << "q=" << (1u << r) << ": weight " << w << ", violations "
          << rep.violations.size();
    }
    c.measured = m.str();
    return c;
}

// --- criterion 7: minimum-weight versus nearest-codeword optima ---

Check cross_encoding_optima() {
    Check c;
    std::mt19937_64 rng(4242);
    unsigned agreements = 0;
    const unsigned trials = 50;
    for (unsigned trial = 0; trial < trials; ++trial) {
        std::uint64_t n = 6 + rng() % 9; // 6 .. 14 columns
        MwsppExplicit ex;
        ex.num_cols = n;
        ex.q_tilde = 1;
        std::vector<bool> xstar(n);
        for (auto&& b : xstar) b = rng() & 1;
        std::uint64_t fixed = 1 + rng() % 4, var = 3 + rng() % n;
        auto random_cols = [&]() {
            std::set<std::uint64_t> s;
            std::uint64_t want = 1 + rng() % 4;
            while (s.size() < want) s.insert(rng() % n);
            return std::vector<std::uint64_t>(s.begin(), s.end());
        };
        for (std::uint64_t i = 0; i < fixed; ++i) {
            MwsppFixedRow row;
            row.cols = random_cols();
            bool parity = false;
            for (auto col : row.cols) parity = parity ^ xstar[col];
            row.rhs = parity; // feasible by construction
            ex.fixed_rows.push_back(std::move(row));
        }
        for (std::uint64_t i = 0; i < var; ++i) {
            MwsppVarRow row;
            row.cols = random_cols();
            row.multiplicity = 1 + rng() % 3;
            ex.variable_rows.push_back(std::move(row));
        }
        MinWeightResult direct = brute_force_min_weight(ex);
        NcpInstance ncp = mwspp_to_ncp(ex);
        BigInt expanded = 0;
        for (const auto& row : ex.variable_rows) expanded += row.multiplicity;
        c.expect(BigInt(ncp.length) == expanded, "codeword length is the expanded row count");
        NcpResult nearest = brute_force_ncp(ncp);
        c.expect(direct.weight == nearest.distance, "optima agree");
        if (direct.weight == nearest.distance) ++agreements;
    }
    std::ostringstream m;
    m << agreements << "/" << trials << " random instances agree exactly";
    c.measured = m.str();
    return c;
}

// --- criterion 8: rounding accounting ---

Check rounding_argument() {
    Check c;
    std::ostringstream m;

    // disjoint identity threads: V chained vertices, T labels per vertex,
    // edges satisfied only by equal labels; decode probability T^(1-V)
    Field f4(2, Field::default_modulus(2));
    const unsigned V = 5; // 2m+3 at m=1
    {
        std::vector<SyntheticHlcpp::LayerSpec> layers(V, {1, 1, 1});
        SyntheticHlcpp synth(f4, layers, {0});
        std::vector<std::uint64_t> identity{0, 1, 2, 3};
        SyntheticHlcpp::Hyperedge h;
        for (unsigned j = 0; j < V; ++j) h.vertices.push_back({j, 0});
        for (unsigned j = 0; j + 1 < V; ++j) {
            ConstraintDescriptor d;
            d.kind = ConstraintDescriptor::Kind::ExplicitMaps;
            d.pi_table = identity;
            d.sigma_table = identity;
            h.edge_ids.push_back(synth.add_edge({j, 0}, {j + 1, 0}, 0, d));
        }
        synth.add_hyperedge(h);
        for (std::uint64_t T : {2ull, 3ull, 4ull}) {
            NonzeroLabelSet sol;
            for (unsigned j = 0; j < V; ++j) {
                std::vector<std::uint64_t> ids(T);
                for (std::uint64_t t = 0; t < T; ++t) ids[t] = t;
                sol.sets[VertexRef{j, 0}] = ids;
            }
            Rational p = hyperedge_decode_probability(synth, sol, 0);
            BigInt tv = 1;
            for (unsigned j = 0; j < V; ++j) tv *= BigInt(T);
            c.expect(p == Rational(BigInt(T), tv), "decode probability is T^(1-V)");
            c.expect(p >= Rational(BigInt(1), tv), "at least the labels-per-vertex power bound");
            m << "T=" << T << ": " << p << "  ";
        }
    }

    // real instance: honest singleton solution decodes every hyperedge surely
    Field f8(3, Field::default_modulus(3));
    QcspInstance padded = pad_to_power_of_two(boost_soundness(two_var_instance(f8)), 0);
    PcpContext ctx = make_pcp_context(padded, 1);
    PcpHlcpp view(ctx);
    PcpTables tables = honest_prover(ctx, std::vector<std::uint64_t>{1, 1});
    NonzeroLabelSet honest = honest_solution(view, labeling_from_tables(view, tables));
    std::uint64_t sure = 0;
    for (std::uint64_t h = 0; h < view.num_hyperedges(); ++h) {
        if (view.hyperedge_pruned(h)) continue;
        if (hyperedge_decode_probability(view, honest, h) == Rational(1)) ++sure;
    }
    c.expect(sure == view.num_hyperedges(), "honest solution decodes with probability one");
    m << "; honest sure on " << sure << " hyperedges";

    // Markov pruning on the real honest solution and on a lopsided synthetic
    {
        auto [kept, rep] = markov_prune(view, honest, 2);
        c.expect(rep.removed.empty(), "singletons survive the threshold");
        c.expect(rep.within, "Markov fractions within weight/rho");
        c.expect(rep.bound == Rational(view.num_layers(), 2), "bound is weight over rho");
        (void)kept;
    }
    {
        std::vector<SyntheticHlcpp::LayerSpec> layers{{4, 1, 1}, {2, 1, 1}};
        SyntheticHlcpp synth(f4, layers, {0, 0, 0, 0});
        NonzeroLabelSet sol;
        sol.sets[VertexRef{0, 0}] = {0, 1, 2};
        sol.sets[VertexRef{0, 1}] = {0};
        sol.sets[VertexRef{0, 2}] = {1};
        sol.sets[VertexRef{0, 3}] = {2};
        sol.sets[VertexRef{1, 0}] = {0, 1};
        sol.sets[VertexRef{1, 1}] = {3};
        auto [kept, rep] = markov_prune(synth, sol, 2);
        c.expect(rep.normalized_weight == Rational(3), "weight 6/4 + 3/2");
        c.expect(rep.bound == Rational(3, 2), "bound 3/2");
        c.expect(rep.removed.size() == 1 && rep.removed[0] == VertexRef{0, 0},
                 "exactly the overloaded vertex removed");
        c.expect(rep.per_layer_removed_fraction.at(0) == Rational(1, 4), "layer-0 fraction 1/4");
        c.expect(rep.per_layer_removed_fraction.at(1) == Rational(0), "layer-1 fraction 0");
        c.expect(rep.within, "fractions within the Markov bound");
        c.expect(!kept.sets.contains(VertexRef{0, 0}), "removed vertex has no labels left");
        m << "; Markov fractions 1/4, 0 <= 3/2";
    }

    // collision filtering: two labels agreeing at one of the evaluation
    // points lose exactly that edge; bound max_agreements * rho^2 / q
    {
        std::vector<SyntheticHlcpp::LayerSpec> layers{{2, 2, 1}, {4, 1, 1}};
        SyntheticHlcpp synth(f4, layers, {0, 0});
        for (std::uint64_t u = 0; u < 2; ++u) {
            for (std::uint64_t slot = 0; slot < 2; ++slot) {
                ConstraintDescriptor d;
                d.kind = ConstraintDescriptor::Kind::EvalVsSum;
                d.a = slot;
                synth.add_edge({0, u}, {1, 2 * u + slot}, slot, d);
            }
        }
        NonzeroLabelSet sol;
        sol.sets[VertexRef{0, 0}] = {4, 12}; // the polynomials X and 3X, equal only at 0
        sol.sets[VertexRef{0, 1}] = {0};
        for (std::uint64_t v = 0; v < 4; ++v) sol.sets[VertexRef{1, v}] = {0};
        CollisionReport rep = collision_filter(synth, sol, 2);
        c.expect(rep.removed.size() == 1, "exactly one colliding edge");
        c.expect(rep.removed[0].first == (VertexRef{0, 0}) && rep.removed[0].second == 0,
                 "the edge evaluating at the common root");
        c.expect(rep.per_layer_removed_fraction.at(0) == Rational(1, 4),
                 "one of four layer-0 edges");
        c.expect(rep.per_layer_bound.at(0) == Rational(1), "bound max_agreements*rho^2/q = 1");
        c.expect(rep.within, "within the collision bound");
        m << "; collision fraction 1/4 <= 1";
    }
    {
        CollisionReport rep = collision_filter(view, honest, 2);
        c.expect(rep.removed.empty(), "singleton solutions never collide");
        c.expect(rep.per_layer_bound.at(0) == Rational(4 * 1 * 4, 8),
                 "real bound 4m*rho^2/q at m=1");
        c.expect(rep.within, "real instance within the collision bound");
    }

    c.measured = m.str();
    return c;
}

// --- criterion 9: parameter-regime arithmetic ---

Check parameter_regimes() {
    Check c;
    ParameterReport rep = compute_parameters(Rational(1, 2), BigInt(1024));
    c.expect(rep.t == 10, "t = log2 n");
    c.expect(rep.d == 8 && !rep.rounded, "degree 4/epsilon exactly");
    c.expect(rep.log2_q == BigInt("100000000"), "log2 q = t^d");
    c.expect(rep.log2_h == BigInt("1000000"), "log2 h = t^(d-2), so h = q^(1/log^2 n)");
    c.expect(rep.log2_size_bound == BigInt("10000000000"), "log2 size bound = t^(d+2)");
    c.expect(rep.hardness_exponent == Rational(5), "hardness exponent (1-eps)(d+2)");
    c.expect(rep.verdicts.size() == 4, "four verdicts");
    c.expect(rep.all_hold, "all inequalities hold at (1/2, 2^10)");

    ParameterReport excluded = compute_parameters(Rational(1), BigInt(16));
    c.expect(!excluded.all_hold, "excluded regime flagged");
    c.expect(!excluded.verdicts.back().holds, "the decoder-rate inequality fails at (1, 2^4)");

    std::ostringstream m;
    m << "(1/2, 2^10): d=" << rep.d << ", log2 q=" << rep.log2_q << ", exponent "
      << rep.hardness_exponent << ", verdicts hold; (1, 2^4) rejected";
    c.measured = m.str();
    return c;
}

// --- criterion 10: only the allowable rows depend on the target ---

Check preprocessing_diff() {
    Check c;
    Field f(2, Field::default_modulus(2));
    auto build_text = [&](std::uint64_t target) {
        QcspInstance inst;
        inst.field = &f;
        inst.num_vars = 2;
        QuadraticPolynomial pin(f, 2), eq(f, 2);
        pin.add_term(0, 0, 1);
        eq.add_term(0, 1, 1);
        inst.lhs = {pin, eq};
        inst.rhs = {1, target};
        PcpContext ctx = make_pcp_context(inst, 1);
        PcpHlcpp view(ctx);
        MwsppExplicit ex = build_mwspp_explicit(view);
        return std::make_pair(mwspp_to_text(ex), ex);
    };
    auto [text_a, ex_a] = build_text(1);
    auto [text_b, ex_b] = build_text(2);
    c.expect(ex_a.num_cols == ex_b.num_cols, "identical column layout");
    c.expect(ex_a.allowable_row_indices == ex_b.allowable_row_indices,
             "identical allowable row positions");

    std::vector<std::string> lines_a, lines_b;
    std::string item;
    for (std::istringstream s(text_a); std::getline(s, item);) lines_a.push_back(item);
    for (std::istringstream s(text_b); std::getline(s, item);) lines_b.push_back(item);
    c.expect(lines_a.size() == lines_b.size(), "same line count");

    std::set<std::size_t> allowable(ex_a.allowable_row_indices.begin(),
                                    ex_a.allowable_row_indices.end());
    std::size_t differing = 0;
    bool all_allowable = true, only_rhs_bit = true;
    for (std::size_t i = 0; i < lines_a.size() && i < lines_b.size(); ++i) {
        if (lines_a[i] == lines_b[i]) continue;
        ++differing;
        // fixed row j is serialized on line j + 1, after the header
        if (i == 0 || !allowable.contains(i - 1)) all_allowable = false;
        if (lines_a[i].size() != lines_b[i].size() ||
            lines_a[i].substr(0, lines_a[i].size() - 1) !=
                lines_b[i].substr(0, lines_b[i].size() - 1))
            only_rhs_bit = false;
    }
    c.expect(differing > 0, "different targets produce different bytes");
    c.expect(all_allowable, "every differing line is an allowable row");
    c.expect(only_rhs_bit, "differing lines differ only in the trailing bit");

    std::ostringstream m;
    m << differing << " differing lines of " << lines_a.size()
      << ", all allowable rows, trailing bit only";
    c.measured = m.str();
    return c;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        Check (*fn)();
    };
    const Entry entries[] = {
        {"field and polynomial laws", field_poly_laws},
        {"proof-table completeness", completeness},
        {"sum-check adversary bound", sum_check_bound},
        {"soundness boosting gap", boosting_gap},
        {"layered-graph uniformity and smoothness", layered_structure},
        {"honest minimum-weight solution", honest_weight},
        {"minimum-weight vs nearest-codeword optima", cross_encoding_optima},
        {"rounding accounting", rounding_argument},
        {"parameter-regime arithmetic", parameter_regimes},
        {"pre-processing byte-diff", preprocessing_diff},
    };

    bool all = true;
    int idx = 0;
    for (const Entry& e : entries) {
        ++idx;
        auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = e.fn();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.failures.push_back(std::string("exception: ") + ex.what());
        }
        auto stop = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(stop - start).count();
        std::ostringstream line;
        line << (c.pass ? "[PASS]" : "[FAIL]") << " C" << idx << " " << e.name;
        if (c.pass && !c.measured.empty()) line << ": " << c.measured;
        if (!c.pass) line << ": " << (c.failures.empty() ? "unknown" : c.failures.front());
        line << " (" << std::fixed;
        line.precision(2);
        line << secs << "s)";
        std::cout << line.str() << std::endl;
        all = all && c.pass;
    }
    std::cout << (all ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return all ? 0 : 1;
}
