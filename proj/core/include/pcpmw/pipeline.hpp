#pragma once

// End-to-end orchestration: formula or toy input through the quadratic
// system, soundness boosting, proof tables, the layered graph, and the
// minimum-weight encoding, with canonical machine-readable reports; the
// adversary experiment harness; and the exact parameter-regime calculator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcpmw/rational.hpp"

namespace pcpmw {

struct PipelineConfig {
    unsigned r = 4;                       // field exponent, q = 2^r
    std::optional<std::uint64_t> modulus; // hex override; default table otherwise
    unsigned m = 0;                       // 0: smallest m with 2^m >= variables
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    bool exact = false; // exact acceptance enumeration instead of sampling
    std::uint64_t budget_enum = std::uint64_t(1) << 24;
    std::uint64_t budget_mem = std::uint64_t(1) << 28;
    // DIMACS path, or a built-in instance: "toy:n2", "toy:n4", "toy:unsat".
    // Empty selects toy:n2.
    std::string input;
    std::string out_dir; // empty: no artifacts written
    unsigned workers = 1;
    bool pad_clauses = false; // widen short DIMACS clauses by repetition
    // "" runs everything; "pad" stops after the quadratic-system stages,
    // "pcp" after table construction
    std::string stop_after;
};

struct StageRecord {
    std::string name;
    bool ok = true;
    std::string error_kind; // empty when ok
    std::string message;
};

struct PipelineResult {
    // canonical report: identical configs yield identical bytes; wall-clock
    // timings appear only in the human summary
    std::string report_json;
    std::string summary;
    std::vector<StageRecord> stages;
    bool checks_passed = false;
    bool adversarial = false; // input was unsatisfiable
    int exit_code = 0;
};

// Runs input -> quadratic system -> boosting -> proof tables -> layered
// graph -> implicit minimum-weight instance, verifying the honest-path
// contracts at each stage. Unsatisfiable inputs switch the proof stages to
// adversarial table experiments instead of failing.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Adversary families with exhaustively counted acceptance: the sum-check
// bound family, proof-table corruptions, boosting optimum tables, and the
// structural graph checks.
PipelineResult run_soundness_experiments(const PipelineConfig& cfg);

struct ParameterVerdict {
    std::string name;
    bool holds = false;
    std::string detail;
};

// Everything is exact: with n = 2^t the regime quantities are integer powers
// of t, and the one genuinely irrational comparison is settled by adaptive
// rational enclosures of log2(t).
struct ParameterReport {
    Rational epsilon;
    BigInt n;
    std::uint64_t t = 0; // log2 n
    std::uint64_t d = 0; // ceil(4 / epsilon)
    bool rounded = false; // 4 / epsilon was not an integer
    BigInt log2_q;          // t^d
    BigInt log2_h;          // t^(d-2)
    BigInt log2_size_bound; // t^(d+2)
    // the instance-size exponent: log^(1-eps) of the size bound is t to this
    Rational hardness_exponent;
    std::vector<ParameterVerdict> verdicts;
    bool all_hold = false;
};

// epsilon in (0, 1], n a power of two >= 4. Throws InvalidEpsilon or
// NotPowerOfTwo.
ParameterReport compute_parameters(const Rational& epsilon, const BigInt& n);

std::string parameter_report_json(const ParameterReport& rep);
std::string parameter_report_summary(const ParameterReport& rep);

// Accepts "3", "0.25", ".5", or "a/b"; exact.
Rational parse_rational(const std::string& text);

// Process exit convention: 0 success, 2 contract violation, 3 budget
// exceeded, 4 bad input.
int exit_code_for_error(const std::exception& e);

} // namespace pcpmw
