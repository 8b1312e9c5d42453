#include "pcpmw/poly.hpp"

#include <algorithm>

namespace pcpmw {

UnivariatePoly::UnivariatePoly(const Field& f, std::vector<std::uint64_t> coeffs)
    : field_(&f), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DegreeMismatch("univariate polynomial needs at least one coefficient");
    for (std::uint64_t c : coeffs_) f.check_value(c);
}

std::uint64_t UnivariatePoly::eval(std::uint64_t x) const {
    field_->check_value(x);
    return eval_univariate(*field_, coeffs_, x);
}

std::uint64_t eval_univariate(const Field& f, std::span<const std::uint64_t> coeffs,
                              std::uint64_t x) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = f.add(f.mul(acc, x), coeffs[i]);
    }
    return acc;
}

bool UnivariatePoly::operator==(const UnivariatePoly& o) const {
    return *field_ == *o.field_ && coeffs_ == o.coeffs_;
}

UnivariatePoly interpolate(const Field& f,
                           std::span<const std::pair<std::uint64_t, std::uint64_t>> points) {
    if (points.empty()) throw DuplicateNode("interpolation needs at least one node");
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].first == points[j].first)
                throw DuplicateNode("repeated interpolation node");
        }
    }
    std::vector<std::uint64_t> result(points.size(), 0);
    std::vector<std::uint64_t> basis; // expanded product of (X + x_j) terms
    for (std::size_t i = 0; i < points.size(); ++i) {
        // numerator polynomial prod_{j != i} (X + x_j)
        basis.assign(1, 1);
        std::uint64_t denom = 1;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis.push_back(0);
            for (std::size_t k = basis.size() - 1; k > 0; --k) {
                basis[k] = f.add(f.mul(basis[k], points[j].first), basis[k - 1]);
            }
            basis[0] = f.mul(basis[0], points[j].first);
            denom = f.mul(denom, f.add(points[i].first, points[j].first));
        }
        std::uint64_t scale = f.mul(points[i].second, f.inv(denom));
        for (std::size_t k = 0; k < basis.size(); ++k) {
            result[k] = f.add(result[k], f.mul(basis[k], scale));
        }
    }
    return UnivariatePoly(f, std::move(result));
}

MultivariatePoly::MultivariatePoly(const Field& f, unsigned num_vars, unsigned total_degree_bound)
    : field_(&f), num_vars_(num_vars), total_degree_bound_(total_degree_bound) {}

void MultivariatePoly::add_term(std::vector<std::uint32_t> exponents, std::uint64_t coeff) {
    if (exponents.size() != num_vars_) throw DimensionMismatch("exponent vector length != num_vars");
    field_->check_value(coeff);
    unsigned total = 0;
    for (std::uint32_t e : exponents) total += e;
    if (total > total_degree_bound_) throw DegreeMismatch("monomial exceeds total degree bound");
    if (coeff == 0) return;
    auto it = monomials_.find(exponents);
    if (it == monomials_.end()) {
        monomials_.emplace(std::move(exponents), coeff);
    } else {
        it->second = field_->add(it->second, coeff);
        if (it->second == 0) monomials_.erase(it);
    }
}

std::uint64_t MultivariatePoly::eval(std::span<const std::uint64_t> point) const {
    if (point.size() != num_vars_) throw DimensionMismatch("evaluation point has wrong dimension");
    std::uint64_t acc = 0;
    for (const auto& [exps, coeff] : monomials_) {
        std::uint64_t term = coeff;
        for (unsigned v = 0; v < num_vars_; ++v) {
            if (exps[v] != 0) term = field_->mul(term, field_->pow(point[v], exps[v]));
        }
        acc = field_->add(acc, term);
    }
    return acc;
}

MultivariatePoly MultivariatePoly::operator*(const MultivariatePoly& o) const {
    if (*field_ != *o.field_) throw SpecMismatch("polynomials over different fields");
    if (num_vars_ != o.num_vars_) throw DimensionMismatch("polynomials on different variable counts");
    MultivariatePoly out(*field_, num_vars_, total_degree_bound_ + o.total_degree_bound_);
    for (const auto& [ea, ca] : monomials_) {
        for (const auto& [eb, cb] : o.monomials_) {
            std::vector<std::uint32_t> e(num_vars_);
            for (unsigned v = 0; v < num_vars_; ++v) e[v] = ea[v] + eb[v];
            out.add_term(std::move(e), field_->mul(ca, cb));
        }
    }
    return out;
}

MultivariatePoly MultivariatePoly::operator+(const MultivariatePoly& o) const {
    if (*field_ != *o.field_) throw SpecMismatch("polynomials over different fields");
    if (num_vars_ != o.num_vars_) throw DimensionMismatch("polynomials on different variable counts");
    MultivariatePoly out(*field_, num_vars_, std::max(total_degree_bound_, o.total_degree_bound_));
    for (const auto& [e, c] : monomials_) out.add_term(e, c);
    for (const auto& [e, c] : o.monomials_) out.add_term(e, c);
    return out;
}

MultivariatePoly MultivariatePoly::specialize_first(std::uint64_t value) const {
    if (num_vars_ == 0) throw DimensionMismatch("no variable left to specialize");
    field_->check_value(value);
    MultivariatePoly out(*field_, num_vars_ - 1, total_degree_bound_);
    for (const auto& [exps, coeff] : monomials_) {
        std::uint64_t c = coeff;
        if (exps[0] != 0) c = field_->mul(c, field_->pow(value, exps[0]));
        if (c == 0) continue;
        out.add_term(std::vector<std::uint32_t>(exps.begin() + 1, exps.end()), c);
    }
    return out;
}

MultivariatePoly MultivariatePoly::embed(unsigned total_vars, unsigned var_offset) const {
    if (var_offset + num_vars_ > total_vars) throw DimensionMismatch("embedding range out of bounds");
    MultivariatePoly out(*field_, total_vars, total_degree_bound_);
    for (const auto& [exps, coeff] : monomials_) {
        std::vector<std::uint32_t> e(total_vars, 0);
        std::copy(exps.begin(), exps.end(), e.begin() + var_offset);
        out.add_term(std::move(e), coeff);
    }
    return out;
}

bool MultivariatePoly::operator==(const MultivariatePoly& o) const {
    return *field_ == *o.field_ && num_vars_ == o.num_vars_ && monomials_ == o.monomials_;
}

CubeFunction::CubeFunction(const Field& f, unsigned m_)
    : field(&f), m(m_), values(std::size_t(1) << m_, 0) {}

std::size_t CubeFunction::index_of(std::span<const int> bits) {
    std::size_t idx = 0;
    for (int b : bits) idx = (idx << 1) | std::size_t(b & 1);
    return idx;
}

MultivariatePoly multilinear_extension(const CubeFunction& A) {
    const Field& f = *A.field;
    MultivariatePoly out(f, A.m, A.m);
    // Expanding prod chi_{a_i}(x_i) shows the coefficient of the monomial
    // x_S equals the sum of A(a) over all a supported inside S.
    std::size_t n = A.values.size();
    for (std::size_t s = 0; s < n; ++s) {
        std::uint64_t coeff = 0;
        for (std::size_t a = s;; a = (a - 1) & s) {
            coeff = f.add(coeff, A.values[a]);
            if (a == 0) break;
        }
        if (coeff == 0) continue;
        std::vector<std::uint32_t> exps(A.m, 0);
        for (unsigned i = 0; i < A.m; ++i) {
            if ((s >> (A.m - 1 - i)) & 1) exps[i] = 1;
        }
        out.add_term(std::move(exps), coeff);
    }
    return out;
}

LineThrough line_through(const Field& f,
                         std::span<const std::uint64_t> alpha,
                         std::span<const std::uint64_t> beta) {
    if (alpha.size() != beta.size()) throw DimensionMismatch("points of different dimension");
    std::size_t m = alpha.size();
    std::vector<std::uint64_t> dir(m);
    bool all_zero = true;
    for (std::size_t i = 0; i < m; ++i) {
        dir[i] = f.add(alpha[i], beta[i]);
        if (dir[i] != 0) all_zero = false;
    }
    if (all_zero) throw DegeneratePoints("line through two identical points");
    unsigned pivot = 0;
    while (dir[pivot] == 0) ++pivot;
    std::uint64_t scale = f.inv(dir[pivot]);
    Line line;
    line.pivot = pivot;
    line.a.resize(m);
    line.b.resize(m);
    for (std::size_t i = 0; i < m; ++i) line.a[i] = f.mul(dir[i], scale);
    // base reduced along the direction so the pivot coordinate vanishes
    for (std::size_t i = 0; i < m; ++i) {
        line.b[i] = f.add(alpha[i], f.mul(alpha[pivot], line.a[i]));
    }
    // with a[pivot] = 1 and b[pivot] = 0, a point's parameter is its pivot coordinate
    return LineThrough{std::move(line), alpha[pivot], beta[pivot]};
}

std::vector<std::uint64_t> line_point(const Field& f, const Line& line, std::uint64_t t) {
    std::vector<std::uint64_t> x(line.a.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = f.add(f.mul(line.a[i], t), line.b[i]);
    }
    return x;
}

std::uint64_t line_parameter(const Field& f, const Line& line, std::span<const std::uint64_t> x) {
    if (x.size() != line.a.size()) throw DimensionMismatch("point dimension differs from line");
    std::uint64_t t = x[line.pivot];
    auto reconstructed = line_point(f, line, t);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (reconstructed[i] != x[i]) throw DimensionMismatch("point does not lie on line");
    }
    return t;
}

std::vector<Line> enumerate_lines(const Field& f, unsigned m) {
    // canonical directions: pivot p, a[p] = 1, zero before the pivot, free after;
    // canonical bases: b[p] = 0, free elsewhere
    std::vector<Line> lines;
    std::uint64_t q = f.q();
    for (unsigned p = 0; p < m; ++p) {
        unsigned free_dir = m - p - 1;
        std::uint64_t dir_count = 1;
        for (unsigned i = 0; i < free_dir; ++i) dir_count *= q;
        for (std::uint64_t d = 0; d < dir_count; ++d) {
            Line proto;
            proto.pivot = p;
            proto.a.assign(m, 0);
            proto.a[p] = 1;
            std::uint64_t rem = d;
            for (unsigned i = m; i-- > p + 1;) {
                proto.a[i] = rem % q;
                rem /= q;
            }
            std::uint64_t base_count = 1;
            for (unsigned i = 0; i + 1 < m; ++i) base_count *= q;
            for (std::uint64_t bidx = 0; bidx < base_count; ++bidx) {
                Line line = proto;
                line.b.assign(m, 0);
                std::uint64_t brem = bidx;
                for (unsigned i = m; i-- > 0;) {
                    if (i == p) continue;
                    line.b[i] = brem % q;
                    brem /= q;
                }
                lines.push_back(std::move(line));
            }
        }
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

UnivariatePoly restrict_to_line(const MultivariatePoly& g, const Line& line) {
    const Field& f = g.field();
    if (line.a.size() != g.num_vars()) throw DimensionMismatch("line dimension differs from polynomial");
    std::size_t samples = std::size_t(g.total_degree_bound()) + 1;
    if (samples > f.q()) throw DegreeMismatch("degree bound needs more samples than the field has points");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
    pts.reserve(samples);
    for (std::uint64_t t = 0; t < samples; ++t) {
        pts.emplace_back(t, g.eval(line_point(f, line, t)));
    }
    return interpolate(f, pts);
}

UnivariatePoly partial_sum(const MultivariatePoly& g, std::span<const std::uint64_t> prefix) {
    const Field& f = g.field();
    if (prefix.size() >= g.num_vars()) throw PrefixTooLong("prefix must leave a free variable");
    MultivariatePoly cur = g;
    for (std::uint64_t a : prefix) cur = cur.specialize_first(a);
    // Sum each trailing variable over {0,1}: sum_b b^e is 1 for e >= 1 and
    // 0 for e = 0 (two equal terms cancel in characteristic 2), so only
    // monomials covering every summed variable survive.
    std::vector<std::uint64_t> coeffs(g.total_degree_bound() + 1, 0);
    for (const auto& [exps, coeff] : cur.monomials()) {
        bool survives = true;
        for (std::size_t v = 1; v < exps.size(); ++v) {
            if (exps[v] == 0) { survives = false; break; }
        }
        if (survives) coeffs[exps[0]] = f.add(coeffs[exps[0]], coeff);
    }
    return UnivariatePoly(f, std::move(coeffs));
}

} // namespace pcpmw
