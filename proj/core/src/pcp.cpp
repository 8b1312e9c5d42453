#include "pcpmw/pcp.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "pcpmw/digest.hpp"
#include "pcpmw/parallel.hpp"

namespace pcpmw {

std::uint64_t point_index(const Field& f, std::span<const std::uint64_t> x) {
    std::uint64_t idx = 0;
    for (std::uint64_t c : x) {
        f.check_value(c);
        idx = idx * f.q() + c;
    }
    return idx;
}

std::vector<std::uint64_t> index_point(const Field& f, unsigned m, std::uint64_t idx) {
    std::vector<std::uint64_t> x(m);
    for (unsigned k = m; k-- > 0;) {
        x[k] = idx % f.q();
        idx /= f.q();
    }
    return x;
}

std::vector<MultivariatePoly> build_coefficient_extensions(const QcspInstance& inst, unsigned m) {
    const Field& f = *inst.field;
    if (inst.num_vars != (1u << m)) throw NotPowerOfTwo("variable count is not 2^m");
    std::vector<MultivariatePoly> out;
    out.reserve(inst.lhs.size());
    const std::size_t n = inst.num_vars;
    for (const auto& p : inst.lhs) {
        CubeFunction cube(f, 2 * m);
        for (const auto& [st, c] : p.terms()) {
            cube.values[std::size_t(st.first) * n + st.second] = c;
        }
        out.push_back(multilinear_extension(cube));
    }
    return out;
}

PcpContext make_pcp_context(const QcspInstance& inst, unsigned m) {
    return PcpContext{&inst, m, build_coefficient_extensions(inst, m)};
}

namespace {

// Partial sum of g's trailing variables over the cube, keeping variable 0
// free: only monomials whose every summed variable has positive exponent
// survive (a zero exponent contributes 1 + 1 = 0 in characteristic 2).
std::vector<std::uint64_t> sum_tail_keep_first(const MultivariatePoly& g, std::size_t out_len) {
    const Field& f = g.field();
    std::vector<std::uint64_t> coeffs(out_len, 0);
    for (const auto& [exps, coeff] : g.monomials()) {
        bool survives = true;
        for (std::size_t v = 1; v < exps.size(); ++v) {
            if (exps[v] == 0) { survives = false; break; }
        }
        if (survives) coeffs[exps[0]] = f.add(coeffs[exps[0]], coeff);
    }
    return coeffs;
}

void fill_sums_rec(const MultivariatePoly& restricted, unsigned m,
                   std::vector<std::uint64_t>& prefix,
                   std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>>& out) {
    out.emplace(prefix, sum_tail_keep_first(restricted, std::size_t(4) * m + 1));
    if (prefix.size() + 1 == std::size_t(2) * m) return;
    const Field& f = restricted.field();
    for (std::uint64_t a = 0; a < f.q(); ++a) {
        prefix.push_back(a);
        fill_sums_rec(restricted.specialize_first(a), m, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

PcpTables honest_prover(const PcpContext& ctx, std::span<const std::uint64_t> assignment) {
    const QcspInstance& inst = *ctx.instance;
    const Field& f = *inst.field;
    const unsigned m = ctx.m;
    if (inst.num_vars != (1u << m)) throw NotPowerOfTwo("variable count is not 2^m");
    if (evaluate_qcsp(inst, assignment) != Rational(1))
        throw NotSatisfying("honest prover needs a satisfying assignment");

    CubeFunction a_cube(f, m);
    for (std::size_t s = 0; s < assignment.size(); ++s) a_cube.values[s] = assignment[s];
    MultivariatePoly f_a = multilinear_extension(a_cube);

    PcpTables t;
    t.field = &f;
    t.m = m;

    std::uint64_t num_points = 1;
    for (unsigned k = 0; k < m; ++k) num_points *= f.q();
    t.points.resize(num_points);
    for (std::uint64_t idx = 0; idx < num_points; ++idx) {
        auto x = index_point(f, m, idx);
        t.points[idx] = f_a.eval(x);
    }

    for (const Line& line : enumerate_lines(f, m)) {
        t.lines.emplace(line, restrict_to_line(f_a, line).coeffs());
    }

    MultivariatePoly f_left = f_a.embed(2 * m, 0);
    MultivariatePoly f_right = f_a.embed(2 * m, m);
    t.sums.resize(inst.lhs.size());
    for (std::size_t i = 0; i < inst.lhs.size(); ++i) {
        MultivariatePoly h = ctx.coeff_ext[i] * f_left * f_right;
        std::vector<std::uint64_t> prefix;
        fill_sums_rec(h, m, prefix, t.sums[i]);
    }
    return t;
}

namespace {

struct VerifyParts {
    const PcpTables& t;
    const PcpContext& ctx;
    const PcpRandomness& rho;

    std::span<const std::uint64_t> alpha() const {
        return std::span<const std::uint64_t>(rho.coords).first(ctx.m);
    }
    std::span<const std::uint64_t> beta() const {
        return std::span<const std::uint64_t>(rho.coords).last(ctx.m);
    }

    const std::vector<std::uint64_t>& line_coeffs(const Line& line) const {
        auto it = t.lines.find(line);
        if (it == t.lines.end()) throw MissingTableEntry("line table has no entry for this line");
        return it->second;
    }
    const std::vector<std::uint64_t>& sum_coeffs(std::span<const std::uint64_t> prefix) const {
        if (rho.i >= t.sums.size()) throw MissingTableEntry("no partial sums for this equation");
        auto it = t.sums[rho.i].find(std::vector<std::uint64_t>(prefix.begin(), prefix.end()));
        if (it == t.sums[rho.i].end()) throw MissingTableEntry("partial-sum table has no entry for this prefix");
        return it->second;
    }
    std::uint64_t point_value(std::span<const std::uint64_t> x) const {
        std::uint64_t idx = point_index(*t.field, x);
        if (idx >= t.points.size()) throw MissingTableEntry("point table too small");
        return t.points[idx];
    }

    bool low_degree(bool on_beta) const {
        const Field& f = *t.field;
        LineThrough lt = line_through(f, alpha(), beta());
        const auto& coeffs = line_coeffs(lt.line);
        std::uint64_t param = on_beta ? lt.t_beta : lt.t_alpha;
        auto x = on_beta ? beta() : alpha();
        return eval_univariate(f, coeffs, param) == point_value(x);
    }
    bool sum_claim() const {
        const Field& f = *t.field;
        const auto& p0 = sum_coeffs({});
        std::uint64_t lhs = f.add(eval_univariate(f, p0, 0), eval_univariate(f, p0, 1));
        return lhs == ctx.instance->rhs[rho.i];
    }
    bool consistency(unsigned j) const {
        const Field& f = *t.field;
        auto coords = std::span<const std::uint64_t>(rho.coords);
        const auto& prev = sum_coeffs(coords.first(j - 1));
        const auto& cur = sum_coeffs(coords.first(j));
        std::uint64_t lhs = eval_univariate(f, prev, rho.coords[j - 1]);
        std::uint64_t rhs = f.add(eval_univariate(f, cur, 0), eval_univariate(f, cur, 1));
        return lhs == rhs;
    }
    bool final_point() const {
        const Field& f = *t.field;
        auto coords = std::span<const std::uint64_t>(rho.coords);
        const auto& last = sum_coeffs(coords.first(2 * ctx.m - 1));
        std::uint64_t lhs = eval_univariate(f, last, rho.coords[2 * ctx.m - 1]);
        std::uint64_t c = ctx.coeff_ext[rho.i].eval(coords);
        std::uint64_t rhs = f.mul(c, f.mul(point_value(alpha()), point_value(beta())));
        return lhs == rhs;
    }
};

void check_randomness(const PcpContext& ctx, const PcpRandomness& rho) {
    if (rho.coords.size() != std::size_t(2) * ctx.m)
        throw DimensionMismatch("randomness needs 2m coordinates");
    if (rho.i >= ctx.instance->lhs.size())
        throw DimensionMismatch("randomness names a nonexistent equation");
    auto alpha = std::span<const std::uint64_t>(rho.coords).first(ctx.m);
    auto beta = std::span<const std::uint64_t>(rho.coords).last(ctx.m);
    if (std::equal(alpha.begin(), alpha.end(), beta.begin()))
        throw DegeneratePoints("randomness with alpha == beta is outside the protocol");
}

} // namespace

Verdict pcp_verify(const PcpTables& t, const PcpContext& ctx, const PcpRandomness& rho) {
    check_randomness(ctx, rho);
    VerifyParts parts{t, ctx, rho};
    if (!parts.low_degree(false)) return {false, PcpStep::LowDegreeAlpha, 0};
    if (!parts.low_degree(true)) return {false, PcpStep::LowDegreeBeta, 0};
    if (!parts.sum_claim()) return {false, PcpStep::SumClaim, 0};
    for (unsigned j = 1; j <= 2 * ctx.m - 1; ++j) {
        if (!parts.consistency(j)) return {false, PcpStep::Consistency, j};
    }
    if (!parts.final_point()) return {false, PcpStep::FinalPoint, 0};
    return {true, std::nullopt, 0};
}

bool pcp_step_holds(const PcpTables& t, const PcpContext& ctx, const PcpRandomness& rho,
                    PcpStep step, unsigned consistency_j) {
    check_randomness(ctx, rho);
    VerifyParts parts{t, ctx, rho};
    switch (step) {
        case PcpStep::LowDegreeAlpha: return parts.low_degree(false);
        case PcpStep::LowDegreeBeta: return parts.low_degree(true);
        case PcpStep::SumClaim: return parts.sum_claim();
        case PcpStep::Consistency: return parts.consistency(consistency_j);
        case PcpStep::FinalPoint: return parts.final_point();
    }
    throw Error("unknown verifier step");
}

bool low_degree_test(const PcpTables& t, std::span<const std::uint64_t> x, const Line& line) {
    const Field& f = *t.field;
    std::uint64_t param = line_parameter(f, line, x);
    auto it = t.lines.find(line);
    if (it == t.lines.end()) throw MissingTableEntry("line table has no entry for this line");
    std::uint64_t idx = point_index(f, x);
    if (idx >= t.points.size()) throw MissingTableEntry("point table too small");
    return eval_univariate(f, it->second, param) == t.points[idx];
}

SumCheckTable honest_sum_check_table(const MultivariatePoly& g) {
    const Field& f = g.field();
    SumCheckTable table;
    table.field = &f;
    table.M = g.num_vars();
    if (table.M == 0) throw DimensionMismatch("sum-check needs at least one variable");
    // claimed sum = g's true sum over the cube
    {
        auto p0 = sum_tail_keep_first(g, g.total_degree_bound() + 1);
        table.claimed_sum = f.add(eval_univariate(f, p0, 0), eval_univariate(f, p0, 1));
    }
    struct Rec {
        const Field& f;
        unsigned M;
        std::size_t len;
        std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>>& out;
        void operator()(const MultivariatePoly& g, std::vector<std::uint64_t>& prefix) const {
            out.emplace(prefix, sum_tail_keep_first(g, len));
            if (prefix.size() + 1 == M) return;
            for (std::uint64_t a = 0; a < f.q(); ++a) {
                prefix.push_back(a);
                (*this)(g.specialize_first(a), prefix);
                prefix.pop_back();
            }
        }
    };
    std::vector<std::uint64_t> prefix;
    Rec{f, table.M, g.total_degree_bound() + 1, table.polys}(g, prefix);
    return table;
}

SumCheckVerdict sum_check_verify(const std::function<std::uint64_t(std::span<const std::uint64_t>)>& g,
                                 std::uint64_t claimed_sum,
                                 const SumCheckTable& table,
                                 std::span<const std::uint64_t> x) {
    if (table.field == nullptr) throw Error("sum-check table carries no field");
    const Field& f = *table.field;
    if (x.size() != table.M) throw DimensionMismatch("evaluation point needs M coordinates");
    auto poly_at = [&](std::span<const std::uint64_t> prefix) -> const std::vector<std::uint64_t>& {
        auto it = table.polys.find(std::vector<std::uint64_t>(prefix.begin(), prefix.end()));
        if (it == table.polys.end()) throw MissingTableEntry("sum-check table has no entry for this prefix");
        return it->second;
    };
    const auto& p0 = poly_at({});
    if (f.add(eval_univariate(f, p0, 0), eval_univariate(f, p0, 1)) != claimed_sum)
        return {false, 0};
    for (unsigned j = 1; j < table.M; ++j) {
        const auto& prev = poly_at(x.first(j - 1));
        const auto& cur = poly_at(x.first(j));
        std::uint64_t lhs = eval_univariate(f, prev, x[j - 1]);
        std::uint64_t rhs = f.add(eval_univariate(f, cur, 0), eval_univariate(f, cur, 1));
        if (lhs != rhs) return {false, j};
    }
    const auto& last = poly_at(x.first(table.M - 1));
    if (eval_univariate(f, last, x[table.M - 1]) != g(x)) return {false, table.M};
    return {true, std::nullopt};
}

AcceptanceEstimate estimate_acceptance(const PcpTables& t, const PcpContext& ctx, bool exact,
                                       std::uint64_t trials, std::uint64_t seed,
                                       std::uint64_t budget, unsigned workers) {
    const Field& f = *t.field;
    const unsigned m = ctx.m;
    const std::size_t k = ctx.instance->lhs.size();
    AcceptanceEstimate out;
    if (exact) {
        std::uint64_t coord_space = 1;
        for (unsigned j = 0; j < 2 * m; ++j) {
            if (coord_space > budget / f.q()) throw BudgetExceeded("exact enumeration exceeds budget");
            coord_space *= f.q();
        }
        std::uint64_t draws = std::uint64_t(k) * coord_space;
        if (draws > budget) throw BudgetExceeded("exact enumeration exceeds budget");
        std::uint64_t point_space = 1;
        for (unsigned j = 0; j < m; ++j) point_space *= f.q();

        auto count_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t acc = 0;
            PcpRandomness rho;
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                rho.i = idx / coord_space;
                rho.coords = index_point(f, 2 * m, idx % coord_space);
                auto alpha = std::span<const std::uint64_t>(rho.coords).first(m);
                auto beta = std::span<const std::uint64_t>(rho.coords).last(m);
                if (std::equal(alpha.begin(), alpha.end(), beta.begin())) continue;
                if (pcp_verify(t, ctx, rho).accepted) ++acc;
            }
            return acc;
        };
        std::uint64_t accepted = parallel_reduce<std::uint64_t>(
            0, draws, workers, 0, count_chunk,
            [](std::uint64_t& acc, std::uint64_t v) { acc += v; });
        out.exact = true;
        out.accepted = accepted;
        out.total = std::uint64_t(k) * (coord_space - point_space);
        out.exact_value = Rational(accepted, out.total);
        out.estimate = to_double(out.exact_value);
        out.wilson_lo = out.wilson_hi = out.estimate;
        return out;
    }

    auto count_chunk = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t acc = 0;
        for (std::uint64_t trial = lo; trial < hi; ++trial) {
            auto rng = trial_stream(seed, trial);
            PcpRandomness rho = sample_randomness(ctx, rng);
            if (pcp_verify(t, ctx, rho).accepted) ++acc;
        }
        return acc;
    };
    std::uint64_t accepted = parallel_reduce<std::uint64_t>(
        0, trials, workers, 0, count_chunk,
        [](std::uint64_t& acc, std::uint64_t v) { acc += v; });
    out.exact = false;
    out.accepted = accepted;
    out.total = trials;
    double p = trials == 0 ? 0.0 : double(accepted) / double(trials);
    out.estimate = p;
    // 95% Wilson score interval
    if (trials > 0) {
        double z = 1.959963984540054;
        double n = double(trials);
        double denom = 1.0 + z * z / n;
        double center = (p + z * z / (2 * n)) / denom;
        double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
        out.wilson_lo = std::max(0.0, center - half);
        out.wilson_hi = std::min(1.0, center + half);
    }
    return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial + 1)));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do { v = rng(); } while (v >= limit);
    return v % n;
}

PcpRandomness sample_randomness(const PcpContext& ctx, std::mt19937_64& rng) {
    const Field& f = *ctx.instance->field;
    PcpRandomness rho;
    rho.i = uniform_below(rng, ctx.instance->lhs.size());
    rho.coords.resize(2 * ctx.m);
    for (unsigned j = 0; j < ctx.m; ++j) rho.coords[j] = f.sample(rng);
    // resample the second point until it differs from the first
    while (true) {
        for (unsigned j = ctx.m; j < 2 * ctx.m; ++j) rho.coords[j] = f.sample(rng);
        bool equal = true;
        for (unsigned j = 0; j < ctx.m; ++j) {
            if (rho.coords[j] != rho.coords[ctx.m + j]) { equal = false; break; }
        }
        if (!equal) break;
    }
    return rho;
}

PcpTables adversary_corrupt_points(const PcpTables& base, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw InputError("corruption fraction outside [0, 1]");
    PcpTables t = base;
    const Field& f = *t.field;
    std::size_t count = std::size_t(std::llround(fraction * double(t.points.size())));
    std::mt19937_64 rng(splitmix64(seed));
    // partial Fisher-Yates to pick `count` distinct positions
    std::vector<std::uint64_t> positions(t.points.size());
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + std::size_t(uniform_below(rng, positions.size() - i));
        std::swap(positions[i], positions[j]);
    }
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t delta = 1 + uniform_below(rng, f.q() - 1);
        t.points[positions[i]] = f.add(t.points[positions[i]], delta);
    }
    return t;
}

PcpTables adversary_wrong_polynomial(const PcpContext& ctx, const PcpTables& base,
                                     const MultivariatePoly& g_prime) {
    if (g_prime.num_vars() != 2 * ctx.m)
        throw DimensionMismatch("substitute polynomial must have 2m variables");
    PcpTables t = base;
    for (auto& per_eq : t.sums) {
        per_eq.clear();
        std::vector<std::uint64_t> prefix;
        fill_sums_rec(g_prime, ctx.m, prefix, per_eq);
    }
    return t;
}

PcpTables adversary_random_tables(const PcpContext& ctx, std::uint64_t seed) {
    const Field& f = *ctx.instance->field;
    const unsigned m = ctx.m;
    std::mt19937_64 rng(splitmix64(seed ^ 0x72616e646f6dull));
    PcpTables t;
    t.field = &f;
    t.m = m;
    std::uint64_t num_points = 1;
    for (unsigned k = 0; k < m; ++k) num_points *= f.q();
    t.points.resize(num_points);
    for (auto& v : t.points) v = f.sample(rng);
    for (const Line& line : enumerate_lines(f, m)) {
        std::vector<std::uint64_t> coeffs(m + 1);
        for (auto& c : coeffs) c = f.sample(rng);
        t.lines.emplace(line, std::move(coeffs));
    }
    t.sums.resize(ctx.instance->lhs.size());
    for (auto& per_eq : t.sums) {
        // all prefixes of length 0 .. 2m-1
        struct Rec {
            const Field& f;
            unsigned m;
            std::mt19937_64& rng;
            std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>>& out;
            void operator()(std::vector<std::uint64_t>& prefix) const {
                std::vector<std::uint64_t> coeffs(4 * m + 1);
                for (auto& c : coeffs) c = f.sample(rng);
                out.emplace(prefix, std::move(coeffs));
                if (prefix.size() + 1 == std::size_t(2) * m) return;
                for (std::uint64_t a = 0; a < f.q(); ++a) {
                    prefix.push_back(a);
                    (*this)(prefix);
                    prefix.pop_back();
                }
            }
        };
        std::vector<std::uint64_t> prefix;
        Rec{f, m, rng, per_eq}(prefix);
    }
    return t;
}

// --- serialization ---

namespace {

std::string join_hex(const Field& f, std::span<const std::uint64_t> values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(sep);
        out += f.to_hex(values[i]);
    }
    return out;
}

std::vector<std::uint64_t> split_hex(const Field& f, std::string_view s, char sep) {
    std::vector<std::uint64_t> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        std::string_view tok = (pos == std::string_view::npos) ? s.substr(start) : s.substr(start, pos - start);
        out.push_back(f.from_hex(tok));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    out << content;
}

} // namespace

void save_tables(const PcpTables& t, const std::string& dir) {
    const Field& f = *t.field;
    std::filesystem::create_directories(dir);

    std::string points_text;
    for (std::uint64_t v : t.points) {
        points_text += f.to_hex(v);
        points_text.push_back('\n');
    }

    std::string lines_text;
    for (const auto& [line, coeffs] : t.lines) {
        lines_text += join_hex(f, line.a, ',');
        lines_text.push_back('|');
        lines_text += join_hex(f, line.b, ',');
        lines_text += ": ";
        lines_text += join_hex(f, coeffs, ' ');
        lines_text.push_back('\n');
    }

    std::string sums_text;
    for (std::size_t i = 0; i < t.sums.size(); ++i) {
        for (const auto& [prefix, coeffs] : t.sums[i]) {
            sums_text += std::to_string(i);
            sums_text += ": ";
            sums_text += join_hex(f, prefix, ',');
            sums_text += ": ";
            sums_text += join_hex(f, coeffs, ' ');
            sums_text.push_back('\n');
        }
    }

    nlohmann::ordered_json manifest;
    manifest["field"]["r"] = f.r();
    {
        std::ostringstream mod;
        mod << std::hex << f.modulus_bits();
        manifest["field"]["modulus"] = mod.str();
    }
    manifest["m"] = t.m;
    manifest["num_equations"] = t.sums.size();
    manifest["digests"]["points.txt"] = sha256_hex(points_text);
    manifest["digests"]["lines.txt"] = sha256_hex(lines_text);
    manifest["digests"]["sums.txt"] = sha256_hex(sums_text);

    auto base = std::filesystem::path(dir);
    write_file(base / "points.txt", points_text);
    write_file(base / "lines.txt", lines_text);
    write_file(base / "sums.txt", sums_text);
    write_file(base / "manifest.json", manifest.dump(2) + "\n");
}

PcpTables load_tables(const Field& f, const std::string& dir) {
    auto base = std::filesystem::path(dir);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_file(base / "manifest.json"));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad manifest: ") + e.what());
    }
    unsigned r = manifest.at("field").at("r").get<unsigned>();
    std::uint64_t modulus = std::stoull(manifest.at("field").at("modulus").get<std::string>(), nullptr, 16);
    if (r != f.r() || modulus != f.modulus_bits())
        throw SpecMismatch("serialized field differs from the supplied one");

    std::string points_text = read_file(base / "points.txt");
    std::string lines_text = read_file(base / "lines.txt");
    std::string sums_text = read_file(base / "sums.txt");
    if (sha256_hex(points_text) != manifest.at("digests").at("points.txt").get<std::string>() ||
        sha256_hex(lines_text) != manifest.at("digests").at("lines.txt").get<std::string>() ||
        sha256_hex(sums_text) != manifest.at("digests").at("sums.txt").get<std::string>())
        throw InputError("table digest mismatch");

    PcpTables t;
    t.field = &f;
    t.m = manifest.at("m").get<unsigned>();
    t.sums.resize(manifest.at("num_equations").get<std::size_t>());

    std::istringstream pin(points_text);
    std::string line;
    while (std::getline(pin, line)) {
        if (!line.empty()) t.points.push_back(f.from_hex(line));
    }

    std::istringstream lin(lines_text);
    while (std::getline(lin, line)) {
        if (line.empty()) continue;
        std::size_t bar = line.find('|');
        std::size_t colon = line.find(": ", bar);
        if (bar == std::string::npos || colon == std::string::npos) throw InputError("bad line-table row");
        Line l;
        l.a = split_hex(f, std::string_view(line).substr(0, bar), ',');
        l.b = split_hex(f, std::string_view(line).substr(bar + 1, colon - bar - 1), ',');
        l.pivot = 0;
        while (l.pivot < l.a.size() && l.a[l.pivot] == 0) ++l.pivot;
        t.lines.emplace(std::move(l), split_hex(f, std::string_view(line).substr(colon + 2), ' '));
    }

    std::istringstream sin(sums_text);
    while (std::getline(sin, line)) {
        if (line.empty()) continue;
        std::size_t c1 = line.find(": ");
        std::size_t c2 = line.find(": ", c1 + 2);
        if (c1 == std::string::npos || c2 == std::string::npos) throw InputError("bad sums-table row");
        std::size_t i = std::stoull(line.substr(0, c1));
        if (i >= t.sums.size()) throw InputError("sums-table row names a nonexistent equation");
        auto prefix = split_hex(f, std::string_view(line).substr(c1 + 2, c2 - c1 - 2), ',');
        auto coeffs = split_hex(f, std::string_view(line).substr(c2 + 2), ' ');
        t.sums[i].emplace(std::move(prefix), std::move(coeffs));
    }
    return t;
}

} // namespace pcpmw
