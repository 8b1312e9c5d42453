#include "pcpmw/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "pcpmw/digest.hpp"
#include "pcpmw/errors.hpp"
#include "pcpmw/hlcpp.hpp"
#include "pcpmw/mwspp.hpp"
#include "pcpmw/pcp.hpp"
#include "pcpmw/poly.hpp"
#include "pcpmw/qcsp.hpp"

namespace pcpmw {

namespace {

using nlohmann::ordered_json;

std::string rat_str(const Rational& r) {
    std::ostringstream o;
    o << r;
    return o.str();
}

std::string big_str(const BigInt& b) {
    std::ostringstream o;
    o << b;
    return o.str();
}

std::string hex_str(std::uint64_t v) {
    std::ostringstream o;
    o << std::hex << v;
    return o.str();
}

std::string error_kind_of(const std::exception& e) {
    if (dynamic_cast<const ReducibleModulus*>(&e)) return "ReducibleModulus";
    if (dynamic_cast<const DegreeMismatch*>(&e)) return "DegreeMismatch";
    if (dynamic_cast<const SpecMismatch*>(&e)) return "SpecMismatch";
    if (dynamic_cast<const ZeroInverse*>(&e)) return "ZeroInverse";
    if (dynamic_cast<const DuplicateNode*>(&e)) return "DuplicateNode";
    if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
    if (dynamic_cast<const DegeneratePoints*>(&e)) return "DegeneratePoints";
    if (dynamic_cast<const PrefixTooLong*>(&e)) return "PrefixTooLong";
    if (dynamic_cast<const NotPowerOfTwo*>(&e)) return "NotPowerOfTwo";
    if (dynamic_cast<const NotSatisfying*>(&e)) return "NotSatisfying";
    if (dynamic_cast<const MissingTableEntry*>(&e)) return "MissingTableEntry";
    if (dynamic_cast<const BudgetExceeded*>(&e)) return "BudgetExceeded";
    if (dynamic_cast<const TooManyEquations*>(&e)) return "TooManyEquations";
    if (dynamic_cast<const EmptySet*>(&e)) return "EmptySet";
    if (dynamic_cast<const InfeasibleTarget*>(&e)) return "InfeasibleTarget";
    if (dynamic_cast<const InvalidEpsilon*>(&e)) return "InvalidEpsilon";
    if (dynamic_cast<const InputError*>(&e)) return "InputError";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "exception";
}

// Built-in instances. Variable 0 is always the homogenizer.
QcspInstance make_toy(const Field& f, const std::string& name) {
    QcspInstance inst;
    inst.field = &f;
    auto add = [&](std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>>
                       terms,
                   std::uint64_t rhs) {
        QuadraticPolynomial p(f, inst.num_vars);
        for (const auto& [s, t, c] : terms) p.add_term(s, t, c);
        inst.lhs.push_back(std::move(p));
        inst.rhs.push_back(rhs);
    };
    if (name == "n2") {
        // z0 pinned, x Boolean, x pinned true; satisfied by (1, 1)
        inst.num_vars = 2;
        add({{0, 0, 1}}, 1);
        add({{1, 1, 1}, {0, 1, 1}}, 0);
        add({{0, 1, 1}}, 1);
    } else if (name == "n4") {
        // z0, two Boolean inputs whose product is pinned true, one dummy
        inst.num_vars = 4;
        add({{0, 0, 1}}, 1);
        add({{1, 1, 1}, {0, 1, 1}}, 0);
        add({{2, 2, 1}, {0, 2, 1}}, 0);
        add({{1, 2, 1}}, 1);
        add({{0, 3, 1}}, 0);
    } else if (name == "unsat") {
        // x pinned to both values at once; optimum 2/3
        inst.num_vars = 2;
        add({{0, 0, 1}}, 1);
        add({{0, 1, 1}}, 0);
        add({{0, 1, 1}}, 1);
    } else {
        throw InputError("unknown built-in instance: " + name);
    }
    return inst;
}

ordered_json acceptance_json(const AcceptanceEstimate& est) {
    ordered_json j;
    j["mode"] = est.exact ? "exact" : "sampled";
    j["accepted"] = est.accepted;
    j["total"] = est.total;
    if (est.exact) {
        j["value"] = rat_str(est.exact_value);
    } else {
        j["estimate"] = est.estimate;
        j["wilson_lo"] = est.wilson_lo;
        j["wilson_hi"] = est.wilson_hi;
    }
    return j;
}

// Shared run skeleton: stage sequencing with error capture, contract checks,
// canonical report assembly, optional artifact writing.
class Run {
public:
    Run(const PipelineConfig& cfg, const std::string& kind) : cfg_(cfg) {
        report_["tool"] = "pcpmw";
        report_["kind"] = kind;
        stages_json_ = ordered_json::array();
        summary_ << kind << " run\n";
    }

    void echo_config(const Field& f) {
        ordered_json c;
        c["r"] = cfg_.r;
        c["modulus"] = hex_str(f.modulus_bits());
        c["m"] = cfg_.m;
        c["seed"] = cfg_.seed;
        c["trials"] = cfg_.trials;
        c["mode"] = cfg_.exact ? "exact" : "monte_carlo";
        c["budget_enum"] = cfg_.budget_enum;
        c["budget_mem"] = cfg_.budget_mem;
        c["input"] = cfg_.input;
        c["out"] = cfg_.out_dir;
        c["workers"] = cfg_.workers;
        c["pad_clauses"] = cfg_.pad_clauses;
        c["stop_after"] = cfg_.stop_after;
        report_["config"] = std::move(c);
    }

    template <typename Fn>
    void stage(const std::string& name, Fn&& fn) {
        if (failed_) return;
        ordered_json sj;
        sj["name"] = name;
        auto start = std::chrono::steady_clock::now();
        StageRecord rec;
        rec.name = name;
        try {
            fn(sj);
            sj["ok"] = true;
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error_kind = error_kind_of(e);
            rec.message = e.what();
            sj["ok"] = false;
            sj["error_kind"] = rec.error_kind;
            sj["error"] = rec.message;
            failed_ = true;
            exit_code_ = exit_code_for_error(e);
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        summary_ << "  [" << (rec.ok ? "ok" : "error") << "] " << name << " (" << ms << " ms)";
        if (!rec.ok) summary_ << ": " << rec.error_kind << ": " << rec.message;
        summary_ << '\n';
        stages_json_.push_back(std::move(sj));
        stages_.push_back(std::move(rec));
    }

    void check(const std::string& name, bool holds) {
        checks_.emplace_back(name, holds);
        summary_ << "  [check " << (holds ? "pass" : "FAIL") << "] " << name << '\n';
    }

    void note(const std::string& line) { summary_ << "  " << line << '\n'; }

    std::string artifact(const std::string& name, const std::string& content) {
        std::string digest = sha256_hex(content);
        artifacts_.emplace_back(name, digest);
        if (!cfg_.out_dir.empty()) {
            std::ofstream out(std::filesystem::path(cfg_.out_dir) / name, std::ios::binary);
            if (!out) throw InputError("cannot write artifact: " + name);
            out << content;
        }
        return digest;
    }

    void record_artifact(const std::string& name, const std::string& digest) {
        artifacts_.emplace_back(name, digest);
    }

    PipelineResult finish(bool adversarial) {
        PipelineResult res;
        res.stages = stages_;
        res.adversarial = adversarial;
        report_["stages"] = std::move(stages_json_);
        bool all_checks = true;
        ordered_json cj;
        for (const auto& [name, holds] : checks_) {
            cj[name] = holds;
            all_checks = all_checks && holds;
        }
        report_["checks"] = std::move(cj);
        report_["adversarial"] = adversarial;
        res.checks_passed = all_checks && !failed_;
        report_["checks_passed"] = res.checks_passed;
        if (!artifacts_.empty()) {
            ordered_json aj;
            for (const auto& [name, digest] : artifacts_) aj[name] = digest;
            report_["artifacts"] = std::move(aj);
        }
        res.exit_code = failed_ ? exit_code_ : (all_checks ? 0 : 2);
        summary_ << (res.checks_passed ? "all checks passed\n"
                                       : (failed_ ? "stopped on stage error\n"
                                                  : "some checks FAILED\n"));
        res.report_json = report_.dump(2) + "\n";
        res.summary = summary_.str();
        if (!cfg_.out_dir.empty()) {
            std::ofstream rj(std::filesystem::path(cfg_.out_dir) / "report.json",
                             std::ios::binary);
            rj << res.report_json;
            std::ofstream st(std::filesystem::path(cfg_.out_dir) / "summary.txt",
                             std::ios::binary);
            st << res.summary;
        }
        return res;
    }

    bool failed() const { return failed_; }
    const PipelineConfig& cfg() const { return cfg_; }

private:
    PipelineConfig cfg_;
    ordered_json report_;
    ordered_json stages_json_;
    std::ostringstream summary_;
    std::vector<StageRecord> stages_;
    std::vector<std::pair<std::string, bool>> checks_;
    std::vector<std::pair<std::string, std::string>> artifacts_;
    bool failed_ = false;
    int exit_code_ = 0;
};

void validate_config(const PipelineConfig& cfg) {
    if (cfg.r < 1 || cfg.r > 32) throw InputError("field exponent must be in 1..32");
    if (cfg.m > 30) throw InputError("dimension too large");
    if (cfg.trials < 1) throw InputError("trials must be positive");
    if (cfg.budget_enum < 1 || cfg.budget_mem < 1) throw InputError("budgets must be positive");
    if (!cfg.stop_after.empty() && cfg.stop_after != "pad" && cfg.stop_after != "pcp")
        throw InputError("unknown stop point: " + cfg.stop_after);
}

std::string toy_name_of(const std::string& input) {
    if (input.empty()) return "n2";
    if (input.rfind("toy:", 0) == 0) return input.substr(4);
    return {};
}

} // namespace

int exit_code_for_error(const std::exception& e) {
    if (dynamic_cast<const BudgetExceeded*>(&e)) return 3;
    if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const NotPowerOfTwo*>(&e) ||
        dynamic_cast<const InvalidEpsilon*>(&e) || dynamic_cast<const TooManyEquations*>(&e) ||
        dynamic_cast<const InfeasibleTarget*>(&e))
        return 4;
    return 2;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    Run run(cfg, "pipeline");
    std::optional<Field> field;

    // shared pipeline state threaded through the stages
    std::optional<QcspInstance> current;      // instance after the latest stage
    std::optional<SatReduction> reduction;    // DIMACS path only
    std::optional<std::vector<std::uint64_t>> witness;
    bool adversarial = false;
    unsigned z0 = 0;
    unsigned m = 0;
    std::optional<PcpContext> ctx;
    std::optional<PcpTables> tables; // honest or adversarial
    std::optional<PcpHlcpp> base_view;
    std::optional<PcpHlcpp> view; // pruned
    std::optional<Labeling> labeling;
    std::optional<NonzeroLabelSet> solution;

    run.stage("config", [&](ordered_json&) {
        validate_config(cfg);
        field.emplace(cfg.modulus ? Field(cfg.r, *cfg.modulus) : Field::with_default_modulus(cfg.r));
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    });
    if (run.failed()) return run.finish(false);
    run.echo_config(*field);
    const Field& f = *field;

    std::string toy = toy_name_of(cfg.input);
    std::optional<SatFormula> formula;

    run.stage("input", [&](ordered_json& sj) {
        if (!toy.empty()) {
            current = make_toy(f, toy);
            z0 = 0;
            sj["source"] = "toy:" + toy;
            sj["digest"] = sha256_hex("toy:" + toy);
            sj["variables"] = current->num_vars;
            sj["equations"] = current->num_equations();
        } else {
            std::ifstream in(cfg.input, std::ios::binary);
            if (!in) throw InputError("cannot open input: " + cfg.input);
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string raw = buf.str();
            std::istringstream stream(raw);
            formula = parse_dimacs(stream, cfg.pad_clauses);
            sj["source"] = cfg.input;
            sj["digest"] = sha256_hex(raw);
            sj["variables"] = formula->num_vars;
            sj["clauses"] = formula->clauses.size();
        }
    });

    run.stage("qcspp", [&](ordered_json& sj) {
        if (!formula) {
            sj["note"] = "input is already a quadratic system";
            sj["digest"] = run.artifact("instance.json", qcsp_to_json(*current));
            return;
        }
        SatReduction red = reduce_3sat_to_qcspp(*formula, f);
        z0 = red.z0_index;
        sj["variables"] = red.instance.num_vars;
        sj["equations"] = red.instance.num_equations();
        sj["digest"] = run.artifact("instance.json", qcsp_to_json(red.instance));
        reduction = std::move(red);
        current = reduction->instance;
    });

    run.stage("witness", [&](ordered_json& sj) {
        if (formula) {
            unsigned fv = formula->num_vars;
            if (fv >= 63 || (std::uint64_t(1) << fv) > cfg.budget_enum)
                throw BudgetExceeded("satisfiability search exceeds the enumeration budget");
            std::optional<std::vector<bool>> sat;
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << fv); ++mask) {
                std::vector<bool> a(fv);
                for (unsigned i = 0; i < fv; ++i) a[i] = (mask >> i) & 1;
                if (formula_satisfied(*formula, a)) {
                    sat = std::move(a);
                    break;
                }
            }
            if (!sat) {
                adversarial = true;
                sj["satisfiable"] = false;
                sj["error_kind"] = "NotSatisfying";
                sj["note"] = "input unsatisfiable; continuing with adversarial tables";
                return;
            }
            witness = reduction->circuit_assignment(*sat);
            sj["satisfiable"] = true;
            run.check("reduction_witness_satisfies",
                      evaluate_qcsp(*current, *witness) == Rational(1));
        } else {
            BruteForceOptResult opt = brute_force_opt(*current, cfg.budget_enum, cfg.workers);
            sj["opt"] = rat_str(opt.opt);
            if (opt.opt == Rational(1)) {
                witness = opt.witness;
                sj["satisfiable"] = true;
            } else {
                adversarial = true;
                sj["satisfiable"] = false;
                sj["error_kind"] = "NotSatisfying";
                sj["note"] = "input unsatisfiable; continuing with adversarial tables";
            }
        }
    });

    run.stage("boost", [&](ordered_json& sj) {
        sj["input_equations"] = current->num_equations();
        QcspInstance boosted = boost_soundness(*current);
        sj["equations"] = boosted.num_equations();
        current = std::move(boosted);
        if (witness)
            run.check("boost_preserves_witness",
                      evaluate_qcsp(*current, *witness) == Rational(1));
        sj["digest"] = run.artifact("boosted.json", qcsp_to_json(*current));
    });

    run.stage("pad", [&](ordered_json& sj) {
        unsigned n = current->num_vars;
        m = cfg.m;
        if (m == 0) {
            m = 1;
            while ((1u << m) < n) ++m;
        }
        if ((1u << m) < n)
            throw InputError("configured dimension leaves fewer than " + std::to_string(n) +
                             " variables");
        QcspInstance padded = pad_to_variable_count(*current, 1u << m, z0);
        current = std::move(padded);
        if (witness) {
            witness->resize(1u << m, 0);
            run.check("padded_witness_satisfies",
                      evaluate_qcsp(*current, *witness) == Rational(1));
        }
        sj["m"] = m;
        sj["variables"] = current->num_vars;
        sj["equations"] = current->num_equations();
        sj["digest"] = run.artifact("padded.json", qcsp_to_json(*current));
    });
    if (cfg.stop_after == "pad") return run.finish(adversarial);

    run.stage("pcp", [&](ordered_json& sj) {
        if (2ull * m * cfg.r >= 63)
            throw BudgetExceeded("randomness space does not fit exact arithmetic");
        const std::uint64_t k = current->num_equations();
        BigInt qm = BigInt(1) << (cfg.r * m);
        BigInt q2m = qm * qm;
        BigInt lines = ((qm * qm - qm) / (f.q() - 1)); // q^(m-1) * (q^m-1)/(q-1)
        BigInt prefixes = (q2m - 1) / (f.q() - 1);
        BigInt volume = qm + lines * (m + 1) + BigInt(k) * prefixes * (4 * m + 1);
        sj["table_volume"] = big_str(volume);
        if (volume > cfg.budget_mem)
            throw BudgetExceeded("proof tables exceed the memory budget");
        if (cfg.exact && BigInt(k) * q2m > cfg.budget_enum)
            throw BudgetExceeded("exact acceptance enumeration exceeds the budget");

        ctx = make_pcp_context(*current, m);
        if (witness) {
            tables = honest_prover(*ctx, *witness);
            AcceptanceEstimate est =
                estimate_acceptance(*tables, *ctx, cfg.exact, cfg.trials, cfg.seed,
                                    cfg.budget_enum, cfg.workers);
            sj["acceptance"] = acceptance_json(est);
            run.check("pcp_acceptance_one", est.exact ? est.exact_value == Rational(1)
                                                      : est.accepted == est.total);
        } else {
            tables = adversary_random_tables(*ctx, cfg.seed);
            AcceptanceEstimate est =
                estimate_acceptance(*tables, *ctx, cfg.exact, cfg.trials, cfg.seed,
                                    cfg.budget_enum, cfg.workers);
            sj["adversary"] = "random_tables";
            sj["acceptance"] = acceptance_json(est);
            run.check("adversary_rejected_somewhere", est.accepted < est.total);
        }
        if (!cfg.out_dir.empty()) {
            auto dir = std::filesystem::path(cfg.out_dir) / "tables";
            save_tables(*tables, dir.string());
            std::ifstream mf(dir / "manifest.json", std::ios::binary);
            std::ostringstream buf;
            buf << mf.rdbuf();
            run.record_artifact("tables/manifest.json", sha256_hex(buf.str()));
        }
    });
    if (cfg.stop_after == "pcp") return run.finish(adversarial);

    run.stage("hlcpp", [&](ordered_json& sj) {
        base_view.emplace(*ctx);
        auto [pruned_view, prune_rep] = prune_degenerate(*base_view);
        view.emplace(std::move(pruned_view));
        sj["layers"] = view->num_layers();
        sj["hyperedges"] = view->num_hyperedges();
        sj["degenerate"] = prune_rep.degenerate;
        sj["zero_weight"] = prune_rep.zero_weight;
        sj["pruned_fraction"] = rat_str(prune_rep.pruned_fraction);
        // alpha == beta draws are exactly a q^-m fraction
        BigInt qm = BigInt(1) << (cfg.r * m);
        run.check("degenerate_fraction_exact",
                  BigInt(prune_rep.degenerate) * qm == BigInt(prune_rep.total));

        UniformityReport uni = check_uniformity(*base_view, cfg.budget_mem);
        sj["uniformity"] = {{"condition1_exact", uni.condition1_exact},
                            {"condition2_exact", uni.condition2_exact},
                            {"deviation", rat_str(uni.deviation)}};
        run.check("uniformity_condition1", uni.condition1_exact);
        run.check("uniformity_condition2", uni.condition2_exact);

        std::uint64_t pairs = std::min<std::uint64_t>(cfg.trials, 2000);
        SmoothnessReport sm = check_smoothness(*view, pairs, cfg.seed);
        sj["smoothness"] = {{"structural_pass", sm.structural_pass},
                            {"sampled_pairs", sm.sampled_pairs},
                            {"max_collisions", sm.max_collisions},
                            {"sampled_pass", sm.sampled_pass}};
        run.check("smoothness_structural", sm.structural_pass);
        run.check("smoothness_sampled", sm.sampled_pass);

        labeling = labeling_from_tables(*view, *tables);
        Rational frac = evaluate_labeling(*view, *labeling);
        sj["labeling_satisfies"] = rat_str(frac);
        if (witness) {
            run.check("honest_labeling_satisfies_all", frac == Rational(1));
        } else {
            run.check("adversary_labeling_partial", frac < Rational(1));
        }
        run.artifact("hlcpp.json", hlcpp_structure_to_json(*view));
        run.artifact("labeling.json", labeling_to_json(f, *labeling));
    });

    run.stage("mwspp", [&](ordered_json& sj) {
        MwsppImplicit inst = build_mwspp_implicit(*view);
        if (!witness) {
            sj["note"] = "no honest solution for an unsatisfiable input";
            NonzeroLabelSet from_tables;
            for (const auto& [v, label] : labeling->labels)
                from_tables.sets[v] = {view->label_id(v.layer, label)};
            FixedFormReport rep = check_fixed_forms(*inst.view, from_tables);
            sj["violations"] = rep.violations.size();
            sj["normalized_weight"] = rat_str(solution_weight(*inst.view, from_tables));
            return;
        }
        solution = honest_solution(*view, *labeling);
        FixedFormReport rep = check_fixed_forms(*inst.view, *solution);
        sj["violations"] = rep.violations.size();
        run.check("fixed_forms_zero_violations", rep.ok());
        Rational w = solution_weight(*inst.view, *solution);
        sj["normalized_weight"] = rat_str(w);
        run.check("normalized_weight_is_layer_count", w == Rational(view->num_layers()));
    });

    run.stage("decode", [&](ordered_json& sj) {
        if (!witness) {
            sj["note"] = "skipped in adversarial mode";
            return;
        }
        Labeling decoded = randomized_decode(*view, *solution, cfg.seed);
        run.check("singleton_decode_identity",
                  evaluate_labeling(*view, decoded) == Rational(1));
        std::uint64_t h = 0;
        while (h < view->num_hyperedges() && view->hyperedge_pruned(h)) ++h;
        if (h < view->num_hyperedges()) {
            Rational p = hyperedge_decode_probability(*view, *solution, h);
            sj["first_live_hyperedge"] = h;
            sj["decode_probability"] = rat_str(p);
            run.check("honest_decode_certain", p == Rational(1));
        }
    });

    return run.finish(adversarial);
}

// --- soundness experiments ---

namespace {

MultivariatePoly random_poly(const Field& f, unsigned vars, unsigned per_var_degree,
                             std::mt19937_64& rng) {
    MultivariatePoly g(f, vars, vars * per_var_degree);
    std::vector<std::uint32_t> exps(vars, 0);
    while (true) {
        g.add_term(exps, f.sample(rng));
        unsigned i = 0;
        while (i < vars && exps[i] == per_var_degree) exps[i++] = 0;
        if (i == vars) break;
        ++exps[i];
    }
    return g;
}

} // namespace

PipelineResult run_soundness_experiments(const PipelineConfig& cfg) {
    Run run(cfg, "experiments");
    std::optional<Field> field;
    run.stage("config", [&](ordered_json&) {
        validate_config(cfg);
        field.emplace(cfg.modulus ? Field(cfg.r, *cfg.modulus) : Field::with_default_modulus(cfg.r));
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
    });
    if (run.failed()) return run.finish(false);
    run.echo_config(*field);

    // the bound family lives at q=16, two variables, per-variable degree two
    run.stage("sum-check", [&](ordered_json& sj) {
        Field f16 = Field::with_default_modulus(4);
        const unsigned M = 2, d = 2, l = 1;
        const std::uint64_t bound_num = std::uint64_t(M) * d * l; // of q
        const std::uint64_t q = f16.q();
        const std::uint64_t space = q * q;
        sj["q"] = q;
        sj["M"] = M;
        sj["d"] = d;
        sj["l"] = l;
        sj["bound"] = rat_str(Rational(bound_num, q));
        ordered_json rows = ordered_json::array();
        bool all_hold = true;
        std::uint64_t worst = 0;
        const char* names[3] = {"x_shift", "random_polys", "honest_wrong_claim"};
        for (unsigned idx = 0; idx < 102; ++idx) {
            std::mt19937_64 rng = trial_stream(cfg.seed, idx + 1);
            MultivariatePoly g1 = random_poly(f16, M, d, rng);
            SumCheckTable tbl = honest_sum_check_table(g1);
            std::uint64_t true_sum = tbl.claimed_sum;
            std::uint64_t delta = 1 + uniform_below(rng, q - 1);
            std::uint64_t claimed = f16.add(true_sum, delta);
            tbl.claimed_sum = claimed;
            unsigned type = idx % 3;
            if (type == 0) {
                // shift the round-0 polynomial by delta * X: the sum claim
                // survives (X(0) + X(1) = 1), consistency breaks off zero
                auto& p0 = tbl.polys.at({});
                p0[1] = f16.add(p0[1], delta);
            } else if (type == 1) {
                for (auto& [prefix, coeffs] : tbl.polys)
                    for (auto& c : coeffs) c = f16.sample(rng);
            }
            auto g_fn = [&](std::span<const std::uint64_t> pt) { return g1.eval(pt); };
            std::uint64_t accepted = 0;
            for (std::uint64_t a = 0; a < q; ++a) {
                for (std::uint64_t b = 0; b < q; ++b) {
                    std::vector<std::uint64_t> x{a, b};
                    if (sum_check_verify(g_fn, claimed, tbl, x).accepted) ++accepted;
                }
            }
            bool holds = accepted * q <= bound_num * space;
            all_hold = all_hold && holds;
            worst = std::max(worst, accepted);
            rows.push_back({{"adversary", idx},
                            {"type", names[type]},
                            {"accepted", accepted},
                            {"total", space},
                            {"holds", holds}});
        }
        sj["adversaries"] = std::move(rows);
        sj["worst_accepted"] = worst;
        run.check("sum_check_bound_all_adversaries", all_hold);
        run.note("sum-check worst acceptance " + std::to_string(worst) + "/" +
                 std::to_string(space));
    });

    // boosting gap on the contradictory toy: optimum at most k/q, and every
    // assignment satisfies at most k-1 boosted equations
    run.stage("boost-opt", [&](ordered_json& sj) {
        Field f16 = Field::with_default_modulus(4);
        QcspInstance toy = make_toy(f16, "unsat");
        const std::uint64_t k = toy.num_equations();
        QcspInstance boosted = boost_soundness(toy);
        const std::uint64_t q = f16.q();
        std::uint64_t max_satisfied = 0;
        ordered_json hist = ordered_json::array();
        std::vector<std::uint64_t> counts(boosted.num_equations() + 1, 0);
        std::vector<std::uint64_t> a(2);
        for (std::uint64_t x = 0; x < q; ++x) {
            for (std::uint64_t y = 0; y < q; ++y) {
                a[0] = x;
                a[1] = y;
                std::uint64_t sat = 0;
                for (std::size_t i = 0; i < boosted.lhs.size(); ++i)
                    if (boosted.lhs[i].eval(a) == boosted.rhs[i]) ++sat;
                ++counts[sat];
                max_satisfied = std::max(max_satisfied, sat);
            }
        }
        for (std::size_t s = 0; s < counts.size(); ++s)
            if (counts[s]) hist.push_back({{"satisfied", s}, {"assignments", counts[s]}});
        sj["k"] = k;
        sj["boosted_equations"] = boosted.num_equations();
        sj["max_satisfied"] = max_satisfied;
        sj["histogram"] = std::move(hist);
        sj["opt"] = rat_str(Rational(max_satisfied, boosted.num_equations()));
        run.check("boost_opt_at_most_k_over_q",
                  Rational(max_satisfied, boosted.num_equations()) <= Rational(k, q));
        run.check("boost_roots_at_most_k_minus_1", max_satisfied <= k - 1);
    });

    // proof-table corruptions on the satisfiable two-variable toy, counted
    // exactly over every admissible randomness draw
    run.stage("pcp-adversaries", [&](ordered_json& sj) {
        Field f16 = Field::with_default_modulus(4);
        QcspInstance toy = make_toy(f16, "n2");
        QcspInstance boosted = boost_soundness(toy);
        PcpContext ctx = make_pcp_context(boosted, 1);
        BruteForceOptResult opt = brute_force_opt(boosted, cfg.budget_enum, cfg.workers);
        if (opt.opt != Rational(1)) throw NotSatisfying("toy lost satisfiability");
        PcpTables honest = honest_prover(ctx, opt.witness);
        ordered_json rows = ordered_json::array();
        bool all_partial = true;
        auto record = [&](const std::string& name, const PcpTables& t) {
            AcceptanceEstimate est = estimate_acceptance(t, ctx, true, cfg.trials, cfg.seed,
                                                         cfg.budget_enum, cfg.workers);
            rows.push_back({{"adversary", name}, {"acceptance", acceptance_json(est)}});
            all_partial = all_partial && est.exact_value < Rational(1);
        };
        std::mt19937_64 rng = trial_stream(cfg.seed, 9000);
        for (double frac : {0.05, 0.25, 0.5}) {
            PcpTables t = adversary_corrupt_points(honest, frac, cfg.seed + std::uint64_t(frac * 100));
            record("corrupt_points_" + std::to_string(int(frac * 100)) + "pct", t);
        }
        CubeFunction wrong(f16, 2);
        for (auto& v : wrong.values) v = f16.sample(rng);
        PcpTables wt = adversary_wrong_polynomial(ctx, honest,
                                                  multilinear_extension(wrong));
        record("wrong_polynomial", wt);
        record("random_tables", adversary_random_tables(ctx, cfg.seed));
        sj["rows"] = std::move(rows);
        run.check("pcp_adversaries_all_rejected_somewhere", all_partial);
        AcceptanceEstimate honest_est = estimate_acceptance(honest, ctx, true, cfg.trials,
                                                            cfg.seed, cfg.budget_enum,
                                                            cfg.workers);
        sj["honest"] = acceptance_json(honest_est);
        run.check("pcp_honest_accepts_everywhere", honest_est.exact_value == Rational(1));
    });

    // graph structure at both field sizes and both dimensions
    run.stage("structure", [&](ordered_json& sj) {
        ordered_json rows = ordered_json::array();
        bool uniform_ok = true, smooth_ok = true;
        for (unsigned r : {3u, 4u}) {
            for (unsigned mm : {1u, 2u}) {
                Field fr = Field::with_default_modulus(r);
                QcspInstance toy = make_toy(fr, mm == 1 ? "n2" : "n4");
                QcspInstance boosted = boost_soundness(toy);
                PcpContext ctx = make_pcp_context(boosted, mm);
                PcpHlcpp base(ctx);
                ordered_json row;
                row["q"] = fr.q();
                row["m"] = mm;
                row["hyperedges"] = base.num_hyperedges();
                if (mm == 1) {
                    UniformityReport uni = check_uniformity(base, cfg.budget_mem);
                    row["condition1_exact"] = uni.condition1_exact;
                    row["condition2_exact"] = uni.condition2_exact;
                    uniform_ok = uniform_ok && uni.condition1_exact && uni.condition2_exact;
                }
                std::uint64_t pairs = std::min<std::uint64_t>(cfg.trials, 500);
                SmoothnessReport sm = check_smoothness(base, pairs, cfg.seed);
                row["structural_pass"] = sm.structural_pass;
                row["sampled_pass"] = sm.sampled_pass;
                smooth_ok = smooth_ok && sm.structural_pass && sm.sampled_pass;
                rows.push_back(std::move(row));
            }
        }
        sj["rows"] = std::move(rows);
        run.check("uniformity_exact_m1", uniform_ok);
        run.check("smoothness_all_combinations", smooth_ok);
    });

    return run.finish(false);
}

// --- parameter calculator ---

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) throw InputError("empty number");
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) throw InputError("zero denominator");
            Rational r(num, den);
            return negative ? -r : r;
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            Rational r{BigInt(s)};
            return negative ? -r : r;
        }
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        BigInt scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        BigInt num = BigInt(ip) * scale + (fp.empty() ? BigInt(0) : BigInt(fp));
        Rational r(num, scale);
        return negative ? -r : r;
    } catch (const std::runtime_error&) {
        throw InputError("not a number: " + text);
    }
}

namespace {

// Decides 18 t log2(t) + 6 t^(d-1) <= t^d exactly. For t a power of two the
// logarithm is an integer; otherwise it is irrational and an adaptive
// rational enclosure from bit lengths of t^K settles the strict comparison.
ParameterVerdict master_inequality(std::uint64_t t, std::uint64_t d) {
    using boost::multiprecision::msb;
    using boost::multiprecision::pow;
    ParameterVerdict v;
    v.name = "decoder_rate_vs_soundness";
    BigInt t_d = pow(BigInt(t), unsigned(d));
    BigInt t_dm1 = pow(BigInt(t), unsigned(d - 1));
    if ((t & (t - 1)) == 0) {
        std::uint64_t lg = 0;
        while ((std::uint64_t(1) << lg) < t) ++lg;
        BigInt lhs = BigInt(18) * t * lg + BigInt(6) * t_dm1;
        v.holds = lhs <= t_d;
        v.detail = "18t*log2(t) + 6t^(d-1) = " + big_str(lhs) + " vs t^d = " + big_str(t_d);
        return v;
    }
    for (unsigned K = 64;; K *= 2) {
        BigInt tK = pow(BigInt(t), K);
        std::uint64_t B = msb(tK) + 1; // B-1 <= K log2 t < B
        BigInt lhs_hi = BigInt(18) * t * B + BigInt(6) * t_dm1 * K;
        BigInt lhs_lo = BigInt(18) * t * (B - 1) + BigInt(6) * t_dm1 * K;
        BigInt rhs = t_d * K;
        if (lhs_hi <= rhs) {
            v.holds = true;
            v.detail = "decided at log2 precision 1/" + std::to_string(K);
            return v;
        }
        if (lhs_lo > rhs) {
            v.holds = false;
            v.detail = "decided at log2 precision 1/" + std::to_string(K);
            return v;
        }
    }
}

} // namespace

ParameterReport compute_parameters(const Rational& epsilon, const BigInt& n) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::pow;
    if (epsilon <= 0 || epsilon > 1)
        throw InvalidEpsilon("epsilon must lie in (0, 1]");
    if (n < 4) throw InputError("n must be at least 4");
    ParameterReport rep;
    rep.epsilon = epsilon;
    rep.n = n;
    BigInt x = n;
    while (x % 2 == 0) {
        x /= 2;
        ++rep.t;
    }
    if (x != 1) throw NotPowerOfTwo("n must be a power of two");

    Rational four_over = Rational(4) / epsilon;
    BigInt num = numerator(four_over), den = denominator(four_over);
    BigInt d_big = (num + den - 1) / den;
    rep.rounded = num % den != 0;
    if (d_big > 4096) throw BudgetExceeded("epsilon demands an exponent beyond exact range");
    rep.d = d_big.convert_to<std::uint64_t>();

    const std::uint64_t t = rep.t;
    rep.log2_q = pow(BigInt(t), unsigned(rep.d));
    rep.log2_h = pow(BigInt(t), unsigned(rep.d - 2));
    rep.log2_size_bound = pow(BigInt(t), unsigned(rep.d + 2));
    rep.hardness_exponent = (Rational(1) - epsilon) * Rational(rep.d + 2);

    {
        ParameterVerdict v;
        v.name = "rate_lower_bound";
        // log2 h == log2 q / t^2 holds as an identity of the construction
        v.holds = rep.log2_h * t * t == rep.log2_q;
        v.detail = "t^(d-2) * t^2 = " + big_str(rep.log2_h * t * t) + " vs t^d = " +
                   big_str(rep.log2_q);
        rep.verdicts.push_back(std::move(v));
    }
    {
        ParameterVerdict v;
        v.name = "hardness_exponent_chain";
        // (t^(d+2))^(1-eps) <= t^(d-2) <=> (d+2)(1-eps) <= d-2 for t >= 2
        Rational lhs = rep.hardness_exponent;
        Rational rhs{BigInt(rep.d - 2)};
        v.holds = lhs <= rhs;
        v.detail = "(d+2)(1-eps) = " + rat_str(lhs) + " vs d-2 = " + rat_str(rhs);
        rep.verdicts.push_back(std::move(v));
    }
    {
        ParameterVerdict v;
        v.name = "size_bound";
        // log2 N <= t^(d+2) == t^2 * log2 q, an identity of the construction
        v.holds = rep.log2_size_bound == rep.log2_q * t * t;
        v.detail = "t^(d+2) = " + big_str(rep.log2_size_bound) + " vs t^2 * t^d = " +
                   big_str(rep.log2_q * t * t);
        rep.verdicts.push_back(std::move(v));
    }
    rep.verdicts.push_back(master_inequality(t, rep.d));
    rep.all_hold = true;
    for (const auto& v : rep.verdicts) rep.all_hold = rep.all_hold && v.holds;
    return rep;
}

std::string parameter_report_json(const ParameterReport& rep) {
    ordered_json j;
    j["tool"] = "pcpmw";
    j["kind"] = "parameters";
    j["epsilon"] = rat_str(rep.epsilon);
    j["n"] = big_str(rep.n);
    j["t"] = rep.t;
    j["d"] = rep.d;
    j["rounded"] = rep.rounded;
    j["log2_q"] = big_str(rep.log2_q);
    j["log2_h"] = big_str(rep.log2_h);
    j["log2_size_bound"] = big_str(rep.log2_size_bound);
    j["hardness_exponent"] = rat_str(rep.hardness_exponent);
    ordered_json vs = ordered_json::array();
    for (const auto& v : rep.verdicts)
        vs.push_back({{"name", v.name}, {"holds", v.holds}, {"detail", v.detail}});
    j["verdicts"] = std::move(vs);
    j["all_hold"] = rep.all_hold;
    return j.dump(2) + "\n";
}

std::string parameter_report_summary(const ParameterReport& rep) {
    std::ostringstream o;
    o << "parameter regime at epsilon = " << rep.epsilon << ", n = 2^" << rep.t << "\n";
    o << "  d = " << rep.d << (rep.rounded ? " (rounded up from 4/epsilon)" : "") << "\n";
    o << "  log2 q = t^d = " << rep.log2_q << "\n";
    o << "  log2 h = t^(d-2) = " << rep.log2_h << "\n";
    o << "  log2 size bound = t^(d+2) = " << rep.log2_size_bound << "\n";
    o << "  hardness exponent: size^" << rat_str(Rational(1) - rep.epsilon)
      << " ~ 2^(t^" << rat_str(rep.hardness_exponent) << ")\n";
    for (const auto& v : rep.verdicts)
        o << "  [" << (v.holds ? "holds" : "FAILS") << "] " << v.name << ": " << v.detail
          << "\n";
    o << (rep.all_hold ? "regime admissible\n" : "regime excluded at this size\n");
    return o.str();
}

} // namespace pcpmw
