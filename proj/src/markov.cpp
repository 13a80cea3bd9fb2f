#include "onecopy/markov.hpp"

#include <algorithm>
#include <cmath>

#include "onecopy/rng.hpp"

namespace onecopy::markov {

namespace {

int joint_dim(const MarkovProcess& m, const MarkovGate& g) {
    return m.alphabets[g.i] * m.alphabets[g.j];
}

}  // namespace

void validate_process(const MarkovProcess& m) {
    if (m.alphabets.empty()) throw DomainError("process has no coordinates");
    for (int a : m.alphabets)
        if (a < 1) throw DomainError("alphabet sizes must be at least 1");

    for (int li = 0; li < m.depth(); ++li) {
        std::vector<char> used(m.n(), 0);
        for (const MarkovGate& g : m.layers[li]) {
            const std::string where = "layer " + std::to_string(li);
            if (g.i < 0 || g.i >= m.n() || g.j < 0 || g.j >= m.n())
                throw DomainError(where + ": coordinate out of range");
            if (g.i == g.j)
                throw DomainError(where + ": gate needs two distinct coordinates");
            if (used[g.i] || used[g.j])
                throw DomainError(where + ": coordinate " +
                                  std::to_string(used[g.i] ? g.i : g.j) +
                                  " used twice in one layer");
            used[g.i] = used[g.j] = 1;

            const int dim = joint_dim(m, g);
            if (g.matrix.rows() != dim || g.matrix.cols() != dim)
                throw DomainError(where + ": matrix must be " +
                                  std::to_string(dim) + "x" +
                                  std::to_string(dim));
            for (int r = 0; r < dim; ++r) {
                double row_sum = 0.0;
                for (int c = 0; c < dim; ++c) {
                    if (g.matrix(r, c) < 0.0)
                        throw DomainError(where + ": negative entry in row " +
                                          std::to_string(r));
                    row_sum += g.matrix(r, c);
                }
                if (std::abs(row_sum - 1.0) > tol::row_sum)
                    throw DomainError(where + ": row " + std::to_string(r) +
                                      " sums to " + std::to_string(row_sum) +
                                      ", expected 1");
            }
        }
    }
}

void validate_functional(const LinearFunctional& f) {
    if (f.alphabets.empty()) throw DomainError("functional has no alphabets");
    for (int a : f.alphabets)
        if (a < 1) throw DomainError("alphabet sizes must be at least 1");
    if (f.terms.empty()) throw DomainError("functional has no terms");

    double abs_sum = 0.0;
    for (const FunctionalTerm& t : f.terms) {
        if (t.support.empty()) throw DomainError("term support is empty");
        if (!std::is_sorted(t.support.begin(), t.support.end()) ||
            std::adjacent_find(t.support.begin(), t.support.end()) !=
                t.support.end())
            throw DomainError("term support must be sorted and distinct");
        if (t.support.front() < 0 ||
            t.support.back() >= static_cast<int>(f.alphabets.size()))
            throw DomainError("term support index out of range");
        if (t.coeff == 0.0) throw DomainError("term coefficient is zero");
        abs_sum += std::abs(t.coeff);

        long size = 1;
        for (int coord : t.support) size *= f.alphabets[coord];
        if (static_cast<long>(t.table.size()) != size)
            throw DomainError("term table has " + std::to_string(t.table.size()) +
                              " entries, expected " + std::to_string(size));
        for (double v : t.table)
            if (!(v >= -1.0 && v <= 1.0))
                throw DomainError("table values must lie in [-1, 1]");
    }
    if (std::abs(abs_sum - 1.0) > tol::coeff_sum)
        throw DomainError("coefficient magnitudes sum to " +
                          std::to_string(abs_sum) + ", expected 1");
}

void validate_pair(const MarkovProcess& m, const LinearFunctional& f) {
    validate_process(m);
    validate_functional(f);
    if (f.alphabets != m.alphabets)
        throw DomainError("functional and process disagree on the alphabets");
}

std::vector<int> sample_process(const MarkovProcess& m, std::uint64_t seed) {
    std::vector<int> x(m.n(), 0);
    Rng rng(derive_seed(seed, {0}));
    for (const auto& layer : m.layers) {
        for (const MarkovGate& g : layer) {
            const int src = x[g.i] * m.alphabets[g.j] + x[g.j];
            const double u = rng.uniform();
            double run = 0.0;
            int target = joint_dim(m, g) - 1;
            for (int c = 0; c < joint_dim(m, g); ++c) {
                run += g.matrix(src, c);
                if (u < run) {
                    target = c;
                    break;
                }
            }
            x[g.i] = target / m.alphabets[g.j];
            x[g.j] = target % m.alphabets[g.j];
        }
    }
    return x;
}

std::vector<int> backward_support(const MarkovProcess& m,
                                  const std::vector<int>& s,
                                  std::vector<const MarkovGate*>* gates) {
    if (s.empty()) throw DomainError("cone of an empty coordinate set");
    std::vector<char> in_cone(m.n(), 0);
    for (int q : s) {
        if (q < 0 || q >= m.n())
            throw DomainError("cone seed coordinate out of range");
        in_cone[q] = 1;
    }

    std::vector<const MarkovGate*> hits;
    for (int li = m.depth() - 1; li >= 0; --li) {
        for (const MarkovGate& g : m.layers[li]) {
            if (!in_cone[g.i] && !in_cone[g.j]) continue;
            in_cone[g.i] = in_cone[g.j] = 1;
            hits.push_back(&g);
        }
    }
    if (gates) gates->assign(hits.rbegin(), hits.rend());

    std::vector<int> cone;
    for (int q = 0; q < m.n(); ++q)
        if (in_cone[q]) cone.push_back(q);
    return cone;
}

namespace {

double term_expectation(const MarkovProcess& m, const FunctionalTerm& t,
                        long cap) {
    std::vector<const MarkovGate*> gates;
    const std::vector<int> cone = backward_support(m, t.support, &gates);

    long joint = 1;
    for (int coord : cone) {
        joint *= m.alphabets[coord];
        if (joint > cap)
            throw CapacityError("joint state space of the cone exceeds " +
                                std::to_string(cap) + " states");
    }

    // strides with the first cone coordinate as the major digit
    std::vector<long> stride(cone.size());
    long run = 1;
    for (int k = static_cast<int>(cone.size()) - 1; k >= 0; --k) {
        stride[k] = run;
        run *= m.alphabets[cone[k]];
    }
    std::vector<int> pos_in_cone(m.n(), -1);
    for (std::size_t k = 0; k < cone.size(); ++k) pos_in_cone[cone[k]] = k;

    // point mass on the all-first-symbol start
    std::vector<double> dist(joint, 0.0);
    dist[0] = 1.0;

    std::vector<double> next(joint);
    for (const MarkovGate* g : gates) {
        const int ai = m.alphabets[g->i], aj = m.alphabets[g->j];
        const long si = stride[pos_in_cone[g->i]];
        const long sj = stride[pos_in_cone[g->j]];
        std::fill(next.begin(), next.end(), 0.0);
        for (long st = 0; st < joint; ++st) {
            const double p = dist[st];
            if (p == 0.0) continue;
            const int vi = static_cast<int>(st / si) % ai;
            const int vj = static_cast<int>(st / sj) % aj;
            const long base = st - vi * si - vj * sj;
            const int src = vi * aj + vj;
            for (int target = 0; target < ai * aj; ++target) {
                const double w = g->matrix(src, target);
                if (w == 0.0) continue;
                next[base + (target / aj) * si + (target % aj) * sj] += p * w;
            }
        }
        dist.swap(next);
    }

    // table strides over the support, first support coordinate major
    std::vector<long> tstride(t.support.size());
    long trun = 1;
    for (int k = static_cast<int>(t.support.size()) - 1; k >= 0; --k) {
        tstride[k] = trun;
        trun *= m.alphabets[t.support[k]];
    }

    double value = 0.0;
    for (long st = 0; st < joint; ++st) {
        if (dist[st] == 0.0) continue;
        long tidx = 0;
        for (std::size_t k = 0; k < t.support.size(); ++k) {
            const int coord = t.support[k];
            const int v = static_cast<int>(st / stride[pos_in_cone[coord]]) %
                          m.alphabets[coord];
            tidx += v * tstride[k];
        }
        value += dist[st] * t.table[tidx];
    }
    return value;
}

}  // namespace

FunctionalBreakdown exact_functional(const MarkovProcess& m,
                                     const LinearFunctional& f, long cap) {
    validate_pair(m, f);
    FunctionalBreakdown out;
    out.term_values.reserve(f.terms.size());
    for (const FunctionalTerm& t : f.terms) {
        const double v = term_expectation(m, t, cap);
        out.term_values.push_back(v);
        out.value += t.coeff * v;
    }
    return out;
}

double single_sample_estimate(const std::vector<int>& x,
                              const LinearFunctional& f) {
    validate_functional(f);
    if (x.size() != f.alphabets.size())
        throw DomainError("sample length does not match the alphabets");
    for (std::size_t q = 0; q < x.size(); ++q)
        if (x[q] < 0 || x[q] >= f.alphabets[q])
            throw DomainError("sample symbol out of range at coordinate " +
                              std::to_string(q));

    double y = 0.0;
    for (const FunctionalTerm& t : f.terms) {
        long idx = 0;
        for (int coord : t.support) idx = idx * f.alphabets[coord] + x[coord];
        y += t.coeff * t.table[idx];
    }
    return y;
}

double variance_bound(const MarkovProcess& m, const LinearFunctional& f) {
    validate_pair(m, f);
    std::vector<std::vector<int>> cones;
    cones.reserve(f.terms.size());
    for (const FunctionalTerm& t : f.terms)
        cones.push_back(backward_support(m, t.support));

    int max_degree = 0;
    for (const auto& a : cones) {
        int d = 0;
        for (const auto& b : cones) {
            std::size_t x = 0, y = 0;
            while (x < a.size() && y < b.size()) {
                if (a[x] == b[y]) { ++d; break; }
                if (a[x] < b[y]) ++x;
                else ++y;
            }
        }
        max_degree = std::max(max_degree, d);
    }

    double norm = 0.0;
    for (const FunctionalTerm& t : f.terms) norm += t.coeff * t.coeff;
    return max_degree * norm;
}

}  // namespace onecopy::markov
