// Command-line front end: quadratic-system reduction, proof-table
// construction and verification, soundness experiments, the parameter-regime
// calculator, and conversion between the minimum-weight and nearest-codeword
// text formats.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "pcpmw/errors.hpp"
#include "pcpmw/field.hpp"
#include "pcpmw/mwspp.hpp"
#include "pcpmw/pcp.hpp"
#include "pcpmw/pipeline.hpp"
#include "pcpmw/qcsp.hpp"

namespace {

using namespace pcpmw;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write: " + path);
    out << content;
}

struct Shared {
    PipelineConfig cfg;
    std::string modulus_hex;

    void attach(CLI::App* cmd) {
        cmd->add_option("--field-r", cfg.r, "field exponent, q = 2^r");
        cmd->add_option("--modulus", modulus_hex, "modulus bit pattern, hex");
        cmd->add_option("--m", cfg.m, "cube dimension; 0 picks the smallest fit");
        cmd->add_option("--seed", cfg.seed, "randomness seed");
        cmd->add_option("--trials", cfg.trials, "Monte Carlo trial count");
        cmd->add_flag("--exact", cfg.exact, "enumerate the randomness space exactly");
        cmd->add_option("--budget-enum", cfg.budget_enum, "enumeration budget");
        cmd->add_option("--budget-mem", cfg.budget_mem, "table memory budget");
        cmd->add_option("--in", cfg.input, "input path (DIMACS CNF, or toy:NAME)");
        cmd->add_option("--out", cfg.out_dir, "artifact output directory");
        cmd->add_option("--workers", cfg.workers, "worker threads");
        cmd->add_flag("--pad-clauses", cfg.pad_clauses,
                      "widen short DIMACS clauses by repeating a literal");
    }

    void resolve() {
        if (!modulus_hex.empty()) cfg.modulus = std::stoull(modulus_hex, nullptr, 16);
    }
};

int emit(const PipelineResult& res, bool print_report) {
    std::cout << res.summary;
    if (print_report) std::cout << res.report_json;
    return res.exit_code;
}

int run_verify(const Shared& sh) {
    const PipelineConfig& cfg = sh.cfg;
    if (cfg.input.empty()) throw InputError("verify needs --in pointing at a prove output");
    Field f = cfg.modulus ? Field(cfg.r, *cfg.modulus) : Field::with_default_modulus(cfg.r);
    auto dir = std::filesystem::path(cfg.input);
    PcpTables tables = load_tables(f, (dir / "tables").string());
    QcspInstance inst = qcsp_from_json(f, read_file((dir / "padded.json").string()));
    PcpContext ctx = make_pcp_context(inst, tables.m);
    AcceptanceEstimate est = estimate_acceptance(tables, ctx, cfg.exact, cfg.trials, cfg.seed,
                                                 cfg.budget_enum, cfg.workers);
    std::cout << "verification " << (est.exact ? "(exact)" : "(sampled)") << ": accepted "
              << est.accepted << " of " << est.total << " randomness draws\n";
    if (!est.exact)
        std::cout << "  estimate " << est.estimate << ", interval [" << est.wilson_lo << ", "
                  << est.wilson_hi << "]\n";
    bool complete = est.accepted == est.total;
    std::cout << (complete ? "tables verify everywhere\n" : "tables rejected somewhere\n");
    return complete ? 0 : 2;
}

int run_convert(const Shared& sh) {
    const PipelineConfig& cfg = sh.cfg;
    if (cfg.input.empty()) throw InputError("convert needs --in");
    std::string text = read_file(cfg.input);
    std::istringstream sniff(text);
    std::string magic;
    sniff >> magic;
    std::string converted;
    std::string name;
    if (magic == "mwspp") {
        NcpInstance ncp = mwspp_to_ncp(mwspp_from_text(text), cfg.budget_mem);
        converted = ncp_to_text(ncp);
        name = "ncp.txt";
    } else if (magic == "ncp") {
        converted = mwspp_to_text(ncp_to_mwspp(ncp_from_text(text)));
        name = "mwspp.txt";
    } else {
        throw InputError("unrecognized format: " + magic);
    }
    if (cfg.out_dir.empty()) {
        std::cout << converted;
    } else {
        std::filesystem::create_directories(cfg.out_dir);
        write_file((std::filesystem::path(cfg.out_dir) / name).string(), converted);
        std::cout << "wrote " << (std::filesystem::path(cfg.out_dir) / name).string() << "\n";
    }
    return 0;
}

int run_params(const std::string& eps_text, const std::string& n_text,
               const std::string& out_dir) {
    Rational eps = parse_rational(eps_text);
    BigInt n;
    try {
        n = BigInt(n_text);
    } catch (const std::runtime_error&) {
        throw InputError("not a number: " + n_text);
    }
    ParameterReport rep = compute_parameters(eps, n);
    std::cout << parameter_report_summary(rep);
    if (out_dir.empty()) {
        std::cout << parameter_report_json(rep);
    } else {
        std::filesystem::create_directories(out_dir);
        write_file((std::filesystem::path(out_dir) / "params.json").string(),
                   parameter_report_json(rep));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction toolkit: quadratic systems, proof tables, layered graphs, "
                 "minimum-weight encodings"};
    app.require_subcommand(1);

    Shared reduce_sh, prove_sh, verify_sh, experiment_sh, convert_sh;
    std::string eps_text, n_text, params_out;

    CLI::App* reduce = app.add_subcommand(
        "reduce", "formula or toy instance to a boosted, padded quadratic system");
    reduce_sh.attach(reduce);
    CLI::App* prove = app.add_subcommand(
        "prove", "full pipeline: proof tables, layered graph, minimum-weight encoding");
    prove_sh.attach(prove);
    CLI::App* verify =
        app.add_subcommand("verify", "re-verify saved proof tables against their instance");
    verify_sh.attach(verify);
    CLI::App* experiment =
        app.add_subcommand("experiment", "run the adversary and structure experiments");
    experiment_sh.attach(experiment);
    CLI::App* params = app.add_subcommand("params", "exact parameter-regime calculator");
    params->add_option("epsilon", eps_text, "hardness exponent parameter, in (0, 1]")
        ->required();
    params->add_option("n", n_text, "instance size, a power of two >= 4")->required();
    params->add_option("--out", params_out, "artifact output directory");
    CLI::App* convert = app.add_subcommand(
        "convert", "convert between minimum-weight and nearest-codeword text formats");
    convert_sh.attach(convert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (reduce->parsed()) {
            reduce_sh.resolve();
            reduce_sh.cfg.stop_after = "pad";
            return emit(run_pipeline(reduce_sh.cfg), reduce_sh.cfg.out_dir.empty());
        }
        if (prove->parsed()) {
            prove_sh.resolve();
            return emit(run_pipeline(prove_sh.cfg), prove_sh.cfg.out_dir.empty());
        }
        if (verify->parsed()) {
            verify_sh.resolve();
            return run_verify(verify_sh);
        }
        if (experiment->parsed()) {
            experiment_sh.resolve();
            return emit(run_soundness_experiments(experiment_sh.cfg),
                        experiment_sh.cfg.out_dir.empty());
        }
        if (params->parsed()) return run_params(eps_text, n_text, params_out);
        if (convert->parsed()) {
            convert_sh.resolve();
            return run_convert(convert_sh);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pcpmw::exit_code_for_error(e);
    }
    return 0;
}
