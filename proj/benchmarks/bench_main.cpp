#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "pcpmw/field.hpp"
#include "pcpmw/hlcpp.hpp"
#include "pcpmw/pcp.hpp"
#include "pcpmw/poly.hpp"
#include "pcpmw/qcsp.hpp"

namespace {

using namespace pcpmw;

// the satisfiable two-variable toy, boosted to k = q equations
QcspInstance toy_boosted(const Field& f) {
    QcspInstance inst;
    inst.field = &f;
    inst.num_vars = 2;
    QuadraticPolynomial p1(f, 2), p2(f, 2), p3(f, 2);
    p1.add_term(0, 0, 1);
    p2.add_term(1, 1, 1);
    p2.add_term(0, 1, 1);
    p3.add_term(0, 1, 1);
    inst.lhs = {p1, p2, p3};
    inst.rhs = {1, 0, 1};
    return boost_soundness(inst);
}

void BM_FieldMul(benchmark::State& state) {
    Field f = Field::with_default_modulus(unsigned(state.range(0)));
    std::mt19937_64 rng(7);
    std::vector<std::uint64_t> xs(1024), ys(1024);
    for (auto& x : xs) x = f.sample(rng);
    for (auto& y : ys) y = f.sample(rng);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.mul(xs[i & 1023], ys[i & 1023]));
        ++i;
    }
}
BENCHMARK(BM_FieldMul)->Arg(4)->Arg(16)->Arg(32);

void BM_FieldInv(benchmark::State& state) {
    Field f = Field::with_default_modulus(unsigned(state.range(0)));
    std::mt19937_64 rng(7);
    std::vector<std::uint64_t> xs(1024);
    for (auto& x : xs) {
        do {
            x = f.sample(rng);
        } while (x == 0);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.inv(xs[i & 1023]));
        ++i;
    }
}
BENCHMARK(BM_FieldInv)->Arg(4)->Arg(16)->Arg(32);

void BM_ExtensionEval(benchmark::State& state) {
    Field f = Field::with_default_modulus(4);
    unsigned m = unsigned(state.range(0));
    std::mt19937_64 rng(7);
    CubeFunction cube(f, m);
    for (auto& v : cube.values) v = f.sample(rng);
    MultivariatePoly ext = multilinear_extension(cube);
    std::vector<std::uint64_t> pt(m);
    for (auto& c : pt) c = f.sample(rng);
    for (auto _ : state) benchmark::DoNotOptimize(ext.eval(pt));
}
BENCHMARK(BM_ExtensionEval)->Arg(2)->Arg(4)->Arg(6);

void BM_HonestProver(benchmark::State& state) {
    Field f = Field::with_default_modulus(unsigned(state.range(0)));
    QcspInstance inst = toy_boosted(f);
    PcpContext ctx = make_pcp_context(inst, 1);
    std::vector<std::uint64_t> witness{1, 1};
    for (auto _ : state) benchmark::DoNotOptimize(honest_prover(ctx, witness));
}
BENCHMARK(BM_HonestProver)->Arg(3)->Arg(4);

void BM_VerifyDraw(benchmark::State& state) {
    Field f = Field::with_default_modulus(4);
    QcspInstance inst = toy_boosted(f);
    PcpContext ctx = make_pcp_context(inst, 1);
    std::vector<std::uint64_t> w{1, 1};
    PcpTables tables = honest_prover(ctx, w);
    std::mt19937_64 rng(7);
    for (auto _ : state) {
        PcpRandomness rho = sample_randomness(ctx, rng);
        benchmark::DoNotOptimize(pcp_verify(tables, ctx, rho));
    }
}
BENCHMARK(BM_VerifyDraw);

void BM_EvaluateLabeling(benchmark::State& state) {
    Field f = Field::with_default_modulus(unsigned(state.range(0)));
    QcspInstance inst = toy_boosted(f);
    PcpContext ctx = make_pcp_context(inst, 1);
    std::vector<std::uint64_t> w{1, 1};
    PcpTables tables = honest_prover(ctx, w);
    PcpHlcpp view(ctx);
    Labeling lab = labeling_from_tables(view, tables);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_labeling(view, lab));
}
BENCHMARK(BM_EvaluateLabeling)->Arg(3)->Arg(4);

} // namespace

BENCHMARK_MAIN();
