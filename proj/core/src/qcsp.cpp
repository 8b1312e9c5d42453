#include "pcpmw/qcsp.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "pcpmw/parallel.hpp"

namespace pcpmw {

QuadraticPolynomial::QuadraticPolynomial(const Field& f, unsigned num_vars)
    : field_(&f), num_vars_(num_vars) {}

void QuadraticPolynomial::add_term(std::uint32_t s, std::uint32_t t, std::uint64_t coeff) {
    if (s >= num_vars_ || t >= num_vars_) throw DimensionMismatch("term index out of range");
    field_->check_value(coeff);
    if (coeff == 0) return;
    if (s > t) std::swap(s, t);
    auto key = std::make_pair(s, t);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, coeff);
    } else {
        it->second = field_->add(it->second, coeff);
        if (it->second == 0) terms_.erase(it);
    }
}

std::uint64_t QuadraticPolynomial::coeff(std::uint32_t s, std::uint32_t t) const {
    if (s > t) std::swap(s, t);
    auto it = terms_.find(std::make_pair(s, t));
    return it == terms_.end() ? 0 : it->second;
}

std::uint64_t QuadraticPolynomial::eval(std::span<const std::uint64_t> assignment) const {
    if (assignment.size() != num_vars_) throw DimensionMismatch("assignment has wrong arity");
    std::uint64_t acc = 0;
    for (const auto& [st, c] : terms_) {
        acc = field_->add(acc, field_->mul(c, field_->mul(assignment[st.first], assignment[st.second])));
    }
    return acc;
}

Rational evaluate_qcsp(const QcspInstance& inst, std::span<const std::uint64_t> assignment) {
    if (inst.lhs.size() != inst.rhs.size()) throw DimensionMismatch("lhs/rhs count mismatch");
    if (inst.lhs.empty()) throw DimensionMismatch("instance has no equations");
    std::size_t sat = 0;
    for (std::size_t i = 0; i < inst.lhs.size(); ++i) {
        if (inst.lhs[i].eval(assignment) == inst.rhs[i]) ++sat;
    }
    return Rational(sat, inst.lhs.size());
}

namespace {

// flattened equation view for the enumeration inner loop
struct FlatEq {
    std::vector<std::uint32_t> s, t;
    std::vector<std::uint64_t> c;
    std::uint64_t rhs;
};

std::vector<FlatEq> flatten(const QcspInstance& inst) {
    std::vector<FlatEq> eqs(inst.lhs.size());
    for (std::size_t i = 0; i < inst.lhs.size(); ++i) {
        for (const auto& [st, c] : inst.lhs[i].terms()) {
            eqs[i].s.push_back(st.first);
            eqs[i].t.push_back(st.second);
            eqs[i].c.push_back(c);
        }
        eqs[i].rhs = inst.rhs[i];
    }
    return eqs;
}

} // namespace

BruteForceOptResult brute_force_opt(const QcspInstance& inst, std::uint64_t budget, unsigned workers) {
    const Field& f = *inst.field;
    if (inst.lhs.empty()) throw DimensionMismatch("instance has no equations");
    // total = q^n, guarded against overflow
    std::uint64_t total = 1;
    for (unsigned v = 0; v < inst.num_vars; ++v) {
        if (total > budget / f.q()) throw BudgetExceeded("assignment space exceeds enumeration budget");
        total *= f.q();
    }
    if (total > budget) throw BudgetExceeded("assignment space exceeds enumeration budget");

    auto eqs = flatten(inst);
    struct Best {
        std::uint64_t sat = 0;
        std::uint64_t index = 0;
        bool valid = false;
    };
    auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
        Best best;
        std::vector<std::uint64_t> a(inst.num_vars, 0);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            // index digits in base q, first variable most significant, so
            // ascending index is ascending lexicographic order
            std::uint64_t rem = idx;
            for (unsigned v = inst.num_vars; v-- > 0;) {
                a[v] = rem & (f.q() - 1);
                rem >>= f.r();
            }
            std::uint64_t sat = 0;
            for (const auto& eq : eqs) {
                std::uint64_t acc = 0;
                for (std::size_t k = 0; k < eq.c.size(); ++k) {
                    acc = f.add(acc, f.mul(eq.c[k], f.mul(a[eq.s[k]], a[eq.t[k]])));
                }
                if (acc == eq.rhs) ++sat;
            }
            if (!best.valid || sat > best.sat) {
                best = Best{sat, idx, true};
            }
        }
        return best;
    };
    Best overall = parallel_reduce<Best>(
        0, total, workers, Best{},
        scan,
        [](Best& acc, const Best& b) {
            if (!b.valid) return;
            if (!acc.valid || b.sat > acc.sat || (b.sat == acc.sat && b.index < acc.index)) acc = b;
        });
    BruteForceOptResult out;
    out.opt = Rational(overall.sat, inst.lhs.size());
    out.satisfied = overall.sat;
    out.witness.resize(inst.num_vars);
    std::uint64_t rem = overall.index;
    for (unsigned v = inst.num_vars; v-- > 0;) {
        out.witness[v] = rem & (f.q() - 1);
        rem >>= f.r();
    }
    return out;
}

SatFormula parse_dimacs(std::istream& in, bool pad_clauses) {
    SatFormula phi;
    std::string line;
    bool header_seen = false;
    std::size_t declared_clauses = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            long long nv = -1, nc = -1;
            hs >> p >> fmt >> nv >> nc;
            if (p != "p" || fmt != "cnf" || nv < 1 || nc < 1 || hs.fail())
                throw InputError("malformed DIMACS header");
            phi.num_vars = static_cast<unsigned>(nv);
            declared_clauses = static_cast<std::size_t>(nc);
            header_seen = true;
            continue;
        }
        if (!header_seen) throw InputError("DIMACS clause before header");
        std::istringstream ls(line);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.empty()) throw InputError("empty DIMACS clause");
                if (current.size() > 3) throw InputError("clause wider than three literals");
                while (current.size() < 3) {
                    if (!pad_clauses) throw InputError("clause narrower than three literals (use padding)");
                    current.push_back(current.back());
                }
                phi.clauses.push_back({current[0], current[1], current[2]});
                current.clear();
            } else {
                unsigned var = static_cast<unsigned>(lit < 0 ? -lit : lit);
                if (var < 1 || var > phi.num_vars) throw InputError("DIMACS literal out of range");
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!header_seen) throw InputError("missing DIMACS header");
    if (!current.empty()) throw InputError("unterminated DIMACS clause");
    if (phi.clauses.size() != declared_clauses) throw InputError("DIMACS clause count mismatch");
    return phi;
}

bool formula_satisfied(const SatFormula& phi, const std::vector<bool>& assignment) {
    if (assignment.size() != phi.num_vars) throw DimensionMismatch("assignment has wrong arity");
    for (const auto& clause : phi.clauses) {
        bool sat = false;
        for (int lit : clause) {
            unsigned var = static_cast<unsigned>(lit < 0 ? -lit : lit) - 1;
            bool value = assignment[var];
            if (lit < 0) value = !value;
            if (value) { sat = true; break; }
        }
        if (!sat) return false;
    }
    return true;
}

namespace {

constexpr int kGateXor = 0;
constexpr int kGateAnd = 1;
constexpr int kGateOr = 2;

struct CircuitBuilder {
    SatReduction& red;
    QcspInstance& inst;
    const Field& f;
    std::uint32_t z0;

    std::uint32_t new_wire_gate(int kind, std::uint32_t u, std::uint32_t v, std::uint32_t w) {
        red.gate_kind.push_back(kind);
        red.gate_inputs.push_back({u, v});
        red.gate_output.push_back(w);
        QuadraticPolynomial p(f, inst.num_vars);
        switch (kind) {
            case kGateXor: // w = u + v
                p.add_term(z0, w, 1);
                p.add_term(z0, u, 1);
                p.add_term(z0, v, 1);
                break;
            case kGateAnd: // w = u * v
                p.add_term(u, v, 1);
                p.add_term(z0, w, 1);
                break;
            case kGateOr: // w = u + v + u * v
                p.add_term(u, v, 1);
                p.add_term(z0, u, 1);
                p.add_term(z0, v, 1);
                p.add_term(z0, w, 1);
                break;
        }
        inst.lhs.push_back(std::move(p));
        inst.rhs.push_back(0);
        return w;
    }

    // pairwise left-to-right fold; the odd element is carried to the next level
    std::uint32_t tree(int kind, std::vector<std::uint32_t> level,
                       std::uint32_t& next_wire) {
        while (level.size() > 1) {
            std::vector<std::uint32_t> next;
            for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
                next.push_back(new_wire_gate(kind, level[i], level[i + 1], next_wire++));
            }
            if (level.size() % 2 == 1) next.push_back(level.back());
            level = std::move(next);
        }
        return level[0];
    }
};

} // namespace

SatReduction reduce_3sat_to_qcspp(const SatFormula& phi, const Field& f) {
    if (phi.num_vars == 0 || phi.clauses.empty())
        throw InputError("formula needs at least one variable and one clause");
    const unsigned n = phi.num_vars;
    const unsigned m = static_cast<unsigned>(phi.clauses.size());

    // occurrence and sign matrices; a clause holding a variable in both
    // signs is tautological and has no matrix encoding
    std::vector<std::vector<int>> occ(m, std::vector<int>(n, -1)); // -1 absent, 0 positive, 1 negated
    for (unsigned i = 0; i < m; ++i) {
        for (int lit : phi.clauses[i]) {
            unsigned j = static_cast<unsigned>(lit < 0 ? -lit : lit) - 1;
            int sign = lit < 0 ? 1 : 0;
            if (occ[i][j] == -1) occ[i][j] = sign;
            else if (occ[i][j] != sign)
                throw InputError("clause holds a variable in both signs");
        }
    }

    // variable layout: x | sel | sgn | wires | z0
    const std::uint32_t sel_base = n;
    const std::uint32_t sgn_base = n + m * n;
    const std::uint32_t wire_base = n + 2 * m * n;
    // wires per clause: n literals, n selections, n-1 OR nodes; then m-1 AND nodes
    const std::uint32_t wires = m * (3 * n - 1) + (m - 1);
    const std::uint32_t z0 = wire_base + wires;

    SatReduction red;
    red.formula_vars = n;
    red.num_clauses = m;
    red.z0_index = z0;
    red.instance.field = &f;
    red.instance.num_vars = z0 + 1;

    QcspInstance& inst = red.instance;
    CircuitBuilder cb{red, inst, f, z0};

    // z0 * z0 = 1: in characteristic 2 this forces z0 = 1 exactly
    {
        QuadraticPolynomial p(f, inst.num_vars);
        p.add_term(z0, z0, 1);
        inst.lhs.push_back(std::move(p));
        inst.rhs.push_back(1);
    }
    // x_j^2 = x_j (as x_j * x_j + x_j * z0 = 0): perfect solutions are Boolean
    for (unsigned j = 0; j < n; ++j) {
        QuadraticPolynomial p(f, inst.num_vars);
        p.add_term(j, j, 1);
        p.add_term(j, z0, 1);
        inst.lhs.push_back(std::move(p));
        inst.rhs.push_back(0);
    }
    // pinning rows; only these right-hand sides carry the formula
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            QuadraticPolynomial p(f, inst.num_vars);
            p.add_term(sel_base + i * n + j, z0, 1);
            inst.lhs.push_back(std::move(p));
            inst.rhs.push_back(occ[i][j] != -1 ? 1 : 0);
        }
    }
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            QuadraticPolynomial p(f, inst.num_vars);
            p.add_term(sgn_base + i * n + j, z0, 1);
            inst.lhs.push_back(std::move(p));
            inst.rhs.push_back(occ[i][j] == 1 ? 1 : 0);
        }
    }

    std::uint32_t next_wire = wire_base;
    std::vector<std::uint32_t> clause_outputs;
    for (unsigned i = 0; i < m; ++i) {
        std::vector<std::uint32_t> selected;
        for (unsigned j = 0; j < n; ++j) {
            std::uint32_t lit = cb.new_wire_gate(kGateXor, j, sgn_base + i * n + j, next_wire++);
            selected.push_back(cb.new_wire_gate(kGateAnd, sel_base + i * n + j, lit, next_wire++));
        }
        clause_outputs.push_back(cb.tree(kGateOr, std::move(selected), next_wire));
    }
    red.y0_index = cb.tree(kGateAnd, std::move(clause_outputs), next_wire);

    // output pinned to true
    {
        QuadraticPolynomial p(f, inst.num_vars);
        p.add_term(red.y0_index, z0, 1);
        inst.lhs.push_back(std::move(p));
        inst.rhs.push_back(1);
    }
    return red;
}

std::vector<std::uint64_t> SatReduction::circuit_assignment(const std::vector<bool>& a) const {
    if (a.size() != formula_vars) throw DimensionMismatch("assignment has wrong arity");
    std::vector<std::uint64_t> v(instance.num_vars, 0);
    for (unsigned j = 0; j < formula_vars; ++j) v[j] = a[j] ? 1 : 0;
    v[z0_index] = 1;
    // pinned selector values come from the pinning rows' right-hand sides,
    // which sit at rows 1+formula_vars onward in variable order
    for (std::uint32_t k = 0; k < 2 * num_clauses * formula_vars; ++k) {
        v[formula_vars + k] = instance.rhs[1 + formula_vars + k];
    }
    for (std::size_t g = 0; g < gate_kind.size(); ++g) {
        std::uint64_t u = v[gate_inputs[g][0]];
        std::uint64_t w = v[gate_inputs[g][1]];
        std::uint64_t out = 0;
        switch (gate_kind[g]) {
            case kGateXor: out = u ^ w; break;
            case kGateAnd: out = u & w; break;
            case kGateOr: out = u | w; break;
        }
        v[gate_output[g]] = out;
    }
    return v;
}

QcspInstance pad_to_variable_count(const QcspInstance& inst, unsigned target,
                                   unsigned z0_index) {
    unsigned n = inst.num_vars;
    if (target < n) throw DimensionMismatch("target below current variable count");
    unsigned padded = target;
    if (padded == n) return inst;
    const Field& f = *inst.field;
    QcspInstance out;
    out.field = &f;
    out.num_vars = padded;
    for (const auto& p : inst.lhs) {
        QuadraticPolynomial np(f, padded);
        for (const auto& [st, c] : p.terms()) np.add_term(st.first, st.second, c);
        out.lhs.push_back(std::move(np));
    }
    out.rhs = inst.rhs;
    for (unsigned d = n; d < padded; ++d) {
        QuadraticPolynomial p(f, padded);
        p.add_term(d, z0_index, 1);
        out.lhs.push_back(std::move(p));
        out.rhs.push_back(0);
    }
    return out;
}

QcspInstance pad_to_power_of_two(const QcspInstance& inst, unsigned z0_index) {
    unsigned padded = 1;
    while (padded < inst.num_vars) padded <<= 1;
    return pad_to_variable_count(inst, padded, z0_index);
}

QcspInstance boost_soundness(const QcspInstance& inst) {
    const Field& f = *inst.field;
    const std::size_t k = inst.lhs.size();
    if (k == 0) throw DimensionMismatch("instance has no equations");
    if (k > f.q()) throw TooManyEquations("more equations than field points");
    QcspInstance out;
    out.field = &f;
    out.num_vars = inst.num_vars;
    for (std::uint64_t t = 0; t < f.q(); ++t) {
        QuadraticPolynomial p(f, inst.num_vars);
        std::uint64_t rhs = 0;
        std::uint64_t w = 1; // t^(i-1), with t^0 = 1 at every t including 0
        for (std::size_t i = 0; i < k; ++i) {
            for (const auto& [st, c] : inst.lhs[i].terms()) {
                p.add_term(st.first, st.second, f.mul(w, c));
            }
            rhs = f.add(rhs, f.mul(w, inst.rhs[i]));
            w = f.mul(w, t);
        }
        out.lhs.push_back(std::move(p));
        out.rhs.push_back(rhs);
    }
    return out;
}

std::string qcsp_to_json(const QcspInstance& inst) {
    nlohmann::ordered_json j;
    const Field& f = *inst.field;
    j["field"]["r"] = f.r();
    {
        std::ostringstream mod;
        mod << std::hex << f.modulus_bits();
        j["field"]["modulus"] = mod.str();
    }
    j["num_vars"] = inst.num_vars;
    nlohmann::ordered_json eqs = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < inst.lhs.size(); ++i) {
        nlohmann::ordered_json eq;
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& [st, c] : inst.lhs[i].terms()) {
            terms.push_back({st.first, st.second, f.to_hex(c)});
        }
        eq["terms"] = std::move(terms);
        eq["rhs"] = f.to_hex(inst.rhs[i]);
        eqs.push_back(std::move(eq));
    }
    j["equations"] = std::move(eqs);
    return j.dump(2) + "\n";
}

QcspInstance qcsp_from_json(const Field& f, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad instance JSON: ") + e.what());
    }
    try {
        unsigned r = j.at("field").at("r").get<unsigned>();
        std::uint64_t modulus = std::stoull(j.at("field").at("modulus").get<std::string>(), nullptr, 16);
        if (r != f.r() || modulus != f.modulus_bits())
            throw SpecMismatch("serialized field differs from the supplied one");
        QcspInstance inst;
        inst.field = &f;
        inst.num_vars = j.at("num_vars").get<unsigned>();
        for (const auto& eq : j.at("equations")) {
            QuadraticPolynomial p(f, inst.num_vars);
            for (const auto& term : eq.at("terms")) {
                p.add_term(term.at(0).get<std::uint32_t>(), term.at(1).get<std::uint32_t>(),
                           f.from_hex(term.at(2).get<std::string>()));
            }
            inst.lhs.push_back(std::move(p));
            inst.rhs.push_back(f.from_hex(eq.at("rhs").get<std::string>()));
        }
        if (inst.lhs.empty()) throw InputError("instance has no equations");
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad instance JSON: ") + e.what());
    }
}

} // namespace pcpmw
