#pragma once

// Independent oracles and random instance generators for the test suite.
// Everything here recomputes results from first principles (full matrices,
// brute-force enumeration) so the library code paths are checked against
// implementations that share as little as possible with them.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "onecopy/circuit.hpp"
#include "onecopy/markov.hpp"
#include "onecopy/observable.hpp"
#include "onecopy/rng.hpp"

namespace oracle {

using onecopy::cplx;
using onecopy::Gate;
using onecopy::LayeredCircuit;
using onecopy::Observable;
using onecopy::Rng;
using onecopy::Term;

inline Eigen::Matrix2cd pauli_matrix(char axis) {
    Eigen::Matrix2cd p;
    const cplx i(0.0, 1.0);
    switch (axis) {
        case 'X': p << 0, 1, 1, 0; break;
        case 'Y': p << 0, -i, i, 0; break;
        case 'Z': p << 1, 0, 0, -1; break;
        default:  p.setIdentity(); break;
    }
    return p;
}

// Gate matrix embedded into the full 2^n space by explicit index algebra:
// column b maps to sum_l u(l', l) |b with the gate bits replaced by l'>.
// The first listed gate qubit is the most significant local bit.
inline Eigen::MatrixXcd full_gate_matrix(const Gate& g, int n) {
    const std::size_t dim = std::size_t{1} << n;
    const int m = g.arity();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int local = 0;
        for (int k = 0; k < m; ++k)
            local = (local << 1) | static_cast<int>((b >> g.qubits[k]) & 1);
        for (int lp = 0; lp < (1 << m); ++lp) {
            std::size_t target = b;
            for (int k = 0; k < m; ++k) {
                const std::size_t bit = std::size_t{1} << g.qubits[k];
                if ((lp >> (m - 1 - k)) & 1)
                    target |= bit;
                else
                    target &= ~bit;
            }
            full(target, b) = g.matrix(lp, local);
        }
    }
    return full;
}

inline Eigen::MatrixXcd circuit_unitary(const LayeredCircuit& c) {
    const std::size_t dim = std::size_t{1} << c.n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& layer : c.layers)
        for (const auto& g : layer.gates) u = full_gate_matrix(g, c.n) * u;
    return u;
}

// P as a full 2^n matrix from per-qubit factors.
inline Eigen::MatrixXcd pauli_product_matrix(
    const std::vector<std::pair<int, char>>& factors, int n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& [q, axis] : factors) {
        Gate g;
        g.qubits = {q};
        g.matrix = pauli_matrix(axis);
        p = full_gate_matrix(g, n) * p;
    }
    return p;
}

// Qubits on which the matrix acts non-trivially: q is trivial iff m is
// block diagonal in the bit-q splitting with equal diagonal blocks.
inline std::vector<int> nontrivial_qubits(const Eigen::MatrixXcd& m, int n,
                                          double tol = 1e-9) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<int> out;
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        bool trivial = true;
        for (std::size_t r = 0; r < dim && trivial; ++r)
            for (std::size_t c = 0; c < dim && trivial; ++c) {
                if (((r ^ c) & bit) != 0) {
                    if (std::abs(m(r, c)) > tol) trivial = false;
                } else if ((r & bit) == 0) {
                    if (std::abs(m(r, c) - m(r | bit, c | bit)) > tol)
                        trivial = false;
                }
            }
        if (!trivial) out.push_back(q);
    }
    return out;
}

// Support of the Heisenberg-evolved product U^dag P U, computed densely.
inline std::vector<int> heisenberg_support_dense(
    const LayeredCircuit& c, const std::vector<std::pair<int, char>>& factors) {
    const Eigen::MatrixXcd u = circuit_unitary(c);
    const Eigen::MatrixXcd p = pauli_product_matrix(factors, c.n);
    return nontrivial_qubits(u.adjoint() * p * u, c.n);
}

// <psi| prod P_q |psi> by explicit per-factor matrix application.
inline double pauli_expectation_dense(const Eigen::VectorXcd& psi,
                                      const std::vector<std::pair<int, char>>& factors,
                                      int n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::VectorXcd phi = psi;
    for (const auto& [q, axis] : factors) {
        const Eigen::Matrix2cd p = pauli_matrix(axis);
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(phi.size());
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t i = 0; i < dim; ++i) {
            const int b = static_cast<int>((i >> q) & 1);
            next(i & ~bit) += p(0, b) * phi(i);
            next(i | bit) += p(1, b) * phi(i);
        }
        phi = next;
    }
    const cplx v = psi.dot(phi);
    return v.real();
}

inline double observable_expectation_dense(const Eigen::VectorXcd& psi,
                                           const Observable& o) {
    double total = 0.0;
    for (const auto& t : o.terms) {
        std::vector<std::pair<int, char>> factors;
        for (int q : t.support) factors.emplace_back(q, o.basis[q]);
        total += t.coeff * pauli_expectation_dense(psi, factors, o.n());
    }
    return total;
}

inline std::string random_basis(Rng& rng, int n) {
    std::string b(n, 'Z');
    const char axes[3] = {'X', 'Y', 'Z'};
    for (int q = 0; q < n; ++q)
        b[q] = axes[static_cast<int>(rng.uniform() * 3.0)];
    return b;
}

inline Observable random_observable(Rng& rng, int n, int max_terms = 6,
                                    int max_support = 3,
                                    const std::string& basis = "") {
    std::string b = basis.empty() ? random_basis(rng, n) : basis;
    const int want = 1 + static_cast<int>(rng.uniform() * max_terms);
    std::set<std::vector<int>> seen;
    std::vector<Term> terms;
    for (int attempts = 0; static_cast<int>(terms.size()) < want && attempts < 200;
         ++attempts) {
        const int size =
            1 + static_cast<int>(rng.uniform() * std::min(max_support, n));
        std::set<int> support;
        while (static_cast<int>(support.size()) < size)
            support.insert(static_cast<int>(rng.uniform() * n));
        std::vector<int> s(support.begin(), support.end());
        if (!seen.insert(s).second) continue;
        double coeff = rng.uniform() - 0.5;
        if (std::abs(coeff) < 1e-3) coeff = 1e-3;
        terms.push_back({std::move(s), coeff});
    }
    return onecopy::make_observable(std::move(b), std::move(terms), true);
}

inline std::string random_bits(Rng& rng, int n) {
    std::string s(n, '0');
    for (int q = 0; q < n; ++q)
        if (rng.uniform() < 0.5) s[q] = '1';
    return s;
}

inline Eigen::MatrixXcd random_complex(Rng& rng, int rows, int cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = cplx(rng.gaussian(), rng.gaussian());
    return m;
}

// Random trace-preserving two-qubit channel: K_m = G_m S^{-1/2} with
// S = sum G_m^dag G_m.
inline onecopy::TwoQubitChannel random_channel(Rng& rng, int kraus_count) {
    std::vector<Eigen::MatrixXcd> gs;
    Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < kraus_count; ++m) {
        gs.push_back(random_complex(rng, 4, 4));
        s += (gs.back().adjoint() * gs.back()).eval();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(s);
    const Eigen::Matrix4cd inv_sqrt =
        eig.eigenvectors() *
        eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        eig.eigenvectors().adjoint();
    onecopy::TwoQubitChannel ch;
    for (const auto& g : gs) ch.kraus.push_back(g * inv_sqrt);
    return ch;
}

inline Eigen::MatrixXcd random_density(Rng& rng, int dim) {
    const Eigen::MatrixXcd w = random_complex(rng, dim, dim);
    Eigen::MatrixXcd rho = w * w.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline Eigen::MatrixXcd apply_kraus(const onecopy::TwoQubitChannel& ch,
                                    const Eigen::MatrixXcd& rho) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto& k : ch.kraus) out += k * rho * k.adjoint();
    return out;
}

// V (rho x |0..0><0..0|) V^dag with the ancilla block traced out. The
// dilated index is s * A + m: system major, ancillas minor.
inline Eigen::MatrixXcd apply_dilated(const Eigen::MatrixXcd& v,
                                      const Eigen::MatrixXcd& rho,
                                      int ancillas) {
    const int a = 1 << ancillas;
    const int dim = 4 * a;
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) big(r * a, c * a) = rho(r, c);
    const Eigen::MatrixXcd evolved = v * big * v.adjoint();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            for (int m = 0; m < a; ++m) out(r, c) += evolved(r * a + m, c * a + m);
    return out;
}

inline double trace_distance_mats(const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a - b);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

inline Eigen::MatrixXd random_stochastic(Rng& rng, int dim) {
    Eigen::MatrixXd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        double total = 0.0;
        for (int c = 0; c < dim; ++c) {
            m(r, c) = rng.uniform() + 1e-4;
            total += m(r, c);
        }
        for (int c = 0; c < dim; ++c) m(r, c) /= total;
    }
    return m;
}

inline onecopy::markov::MarkovProcess random_markov_process(Rng& rng, int n,
                                                            int depth,
                                                            int max_alphabet = 2) {
    onecopy::markov::MarkovProcess m;
    for (int c = 0; c < n; ++c)
        m.alphabets.push_back(2 + static_cast<int>(rng.uniform() *
                                                   (max_alphabet - 1)));
    for (int l = 0; l < depth; ++l) {
        std::vector<int> coords(n);
        for (int c = 0; c < n; ++c) coords[c] = c;
        for (int c = n - 1; c > 0; --c)
            std::swap(coords[c], coords[static_cast<int>(rng.uniform() * (c + 1))]);
        std::vector<onecopy::markov::MarkovGate> gates;
        for (int c = 0; c + 1 < n; c += 2) {
            if (rng.uniform() < 0.2) continue;
            onecopy::markov::MarkovGate g;
            g.i = coords[c];
            g.j = coords[c + 1];
            g.matrix = random_stochastic(rng, m.alphabets[g.i] * m.alphabets[g.j]);
            gates.push_back(std::move(g));
        }
        m.layers.push_back(std::move(gates));
    }
    return m;
}

inline onecopy::markov::LinearFunctional random_functional(Rng& rng,
                                                           const std::vector<int>& alphabets) {
    const int n = static_cast<int>(alphabets.size());
    onecopy::markov::LinearFunctional f;
    f.alphabets = alphabets;
    const int want = 1 + static_cast<int>(rng.uniform() * 4.0);
    std::set<std::vector<int>> seen;
    double total = 0.0;
    for (int attempts = 0; static_cast<int>(f.terms.size()) < want && attempts < 100;
         ++attempts) {
        const int size = 1 + static_cast<int>(rng.uniform() * std::min(2, n));
        std::set<int> support;
        while (static_cast<int>(support.size()) < size)
            support.insert(static_cast<int>(rng.uniform() * n));
        std::vector<int> s(support.begin(), support.end());
        if (!seen.insert(s).second) continue;
        onecopy::markov::FunctionalTerm t;
        t.support = s;
        t.coeff = rng.uniform() - 0.5;
        if (std::abs(t.coeff) < 1e-3) t.coeff = 1e-3;
        int cells = 1;
        for (int c : s) cells *= alphabets[c];
        for (int k = 0; k < cells; ++k)
            t.table.push_back(2.0 * rng.uniform() - 1.0);
        total += std::abs(t.coeff);
        f.terms.push_back(std::move(t));
    }
    for (auto& t : f.terms) t.coeff /= total;
    return f;
}

// Full joint distribution of the process, propagated over the whole state
// space; coordinate 0 is the major digit of the flat index.
inline std::vector<double> brute_force_distribution(
    const onecopy::markov::MarkovProcess& m) {
    const int n = m.n();
    long total = 1;
    for (int a : m.alphabets) total *= a;
    std::vector<long> strides(n, 1);
    for (int c = n - 2; c >= 0; --c) strides[c] = strides[c + 1] * m.alphabets[c + 1];
    std::vector<double> dist(total, 0.0);
    dist[0] = 1.0;
    for (const auto& layer : m.layers)
        for (const auto& g : layer) {
            std::vector<double> next(total, 0.0);
            for (long idx = 0; idx < total; ++idx) {
                if (dist[idx] == 0.0) continue;
                const int ai = static_cast<int>(idx / strides[g.i]) % m.alphabets[g.i];
                const int aj = static_cast<int>(idx / strides[g.j]) % m.alphabets[g.j];
                const int row = ai * m.alphabets[g.j] + aj;
                const long base =
                    idx - ai * strides[g.i] - aj * strides[g.j];
                for (int t = 0; t < g.matrix.cols(); ++t) {
                    const int bi = t / m.alphabets[g.j];
                    const int bj = t % m.alphabets[g.j];
                    next[base + bi * strides[g.i] + bj * strides[g.j]] +=
                        dist[idx] * g.matrix(row, t);
                }
            }
            dist.swap(next);
        }
    return dist;
}

inline double brute_force_functional(const onecopy::markov::MarkovProcess& m,
                                     const onecopy::markov::LinearFunctional& f) {
    const std::vector<double> dist = brute_force_distribution(m);
    const int n = m.n();
    std::vector<long> strides(n, 1);
    for (int c = n - 2; c >= 0; --c) strides[c] = strides[c + 1] * m.alphabets[c + 1];
    double total = 0.0;
    for (std::size_t idx = 0; idx < dist.size(); ++idx) {
        if (dist[idx] == 0.0) continue;
        double fx = 0.0;
        for (const auto& t : f.terms) {
            long cell = 0;
            for (int c : t.support)
                cell = cell * m.alphabets[c] +
                       static_cast<int>(idx / strides[c]) % m.alphabets[c];
            fx += t.coeff * t.table[cell];
        }
        total += dist[idx] * fx;
    }
    return total;
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    double variance = 0.0;
};

// Accumulates in extended precision: plain double summation drifts by
// ~1e-12 over 1e5 terms, which is visible next to exact expectations.
inline MeanStderr mean_and_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    const long double n = static_cast<long double>(xs.size());
    long double sum = 0.0L;
    for (double x : xs) sum += x;
    const long double mean = sum / n;
    long double ss = 0.0L;
    for (double x : xs) ss += (x - mean) * (x - mean);
    out.mean = static_cast<double>(mean);
    out.variance = static_cast<double>(ss / (n - 1.0L));
    out.stderr_ = std::sqrt(out.variance / static_cast<double>(n));
    return out;
}

// Empirical rate vs a bound that holds for the true probability: allows a
// 4-sigma binomial half-width plus a small absolute floor.
inline bool rate_within_bound(double rate, double bound, std::size_t trials) {
    const double t = static_cast<double>(trials);
    const double slack = 4.0 * std::sqrt(bound * (1.0 - bound) / t) + 10.0 / t;
    return rate <= bound + slack;
}

}  // namespace oracle
