#include "onecopy/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "onecopy/dense.hpp"
#include "onecopy/rng.hpp"

namespace onecopy {

namespace {

void check_basis(const std::string& basis, int n) {
    if (static_cast<int>(basis.size()) != n)
        throw DomainError("basis string has length " +
                          std::to_string(basis.size()) + ", expected " +
                          std::to_string(n));
    for (char axis : basis)
        if (axis != 'X' && axis != 'Y' && axis != 'Z')
            throw DomainError("basis axes must come from {X, Y, Z}");
}

}  // namespace

DenseSampler::DenseSampler(const LayeredCircuit& c, const std::string& basis,
                           const std::string& input, std::uint64_t seed,
                           int cap)
    : n_(c.n), basis_(basis), seed_(seed) {
    check_basis(basis, c.n);
    Eigen::VectorXcd psi = apply_dense(c, input, cap);
    for (int q = 0; q < n_; ++q) {
        if (basis[q] == 'Z') continue;
        apply_single_qubit(psi, basis_rotation(basis[q]), q, n_);
    }
    const std::vector<double> p = probabilities(psi);
    cumulative_.resize(p.size());
    double total = 0.0;
    for (double v : p) total += v;
    double run = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        run += p[i];
        cumulative_[i] = run / total;
    }
    cumulative_.back() = 1.0;
}

Shot DenseSampler::sample(std::uint64_t index) const {
    Rng rng(derive_seed(seed_, {index}));
    const double u = rng.uniform();
    const std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
        cumulative_.begin());
    const std::uint64_t outcome = std::min(idx, cumulative_.size() - 1);

    Shot shot;
    shot.values.resize(n_);
    for (int q = 0; q < n_; ++q)
        shot.values[q] = (outcome >> q) & 1 ? -1 : 1;
    shot.basis = basis_;
    shot.seed = seed_;
    shot.index = index;
    return shot;
}

MpsSampler::MpsSampler(const MpsState& state, const std::string& basis,
                       std::uint64_t seed)
    : basis_(basis), seed_(seed) {
    const int n = state.n();
    check_basis(basis, n);

    sites_.resize(n);
    for (int j = 0; j < n; ++j) {
        const Eigen::Matrix2cd u = basis_rotation(basis[j]);
        for (int p = 0; p < 2; ++p)
            sites_[j].m[p] =
                u(p, 0) * state.sites[j].m[0] + u(p, 1) * state.sites[j].m[1];
    }

    right_env_.resize(n + 1);
    right_env_[n] = Eigen::MatrixXcd::Identity(1, 1);
    for (int j = n - 1; j >= 0; --j) {
        const Eigen::Index left = sites_[j].m[0].rows();
        Eigen::MatrixXcd env = Eigen::MatrixXcd::Zero(left, left);
        for (int p = 0; p < 2; ++p)
            env += sites_[j].m[p] * right_env_[j + 1] * sites_[j].m[p].adjoint();
        right_env_[j] = std::move(env);
    }
}

Shot MpsSampler::sample(std::uint64_t index) const {
    Rng rng(derive_seed(seed_, {index}));
    const int n = static_cast<int>(sites_.size());

    Shot shot;
    shot.values.resize(n);
    shot.basis = basis_;
    shot.seed = seed_;
    shot.index = index;

    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    for (int j = 0; j < n; ++j) {
        const Eigen::RowVectorXcd w0 = v * sites_[j].m[0];
        const Eigen::RowVectorXcd w1 = v * sites_[j].m[1];
        const double u0 = std::max(
            0.0, (w0 * right_env_[j + 1] * w0.adjoint())(0).real());
        const double u1 = std::max(
            0.0, (w1 * right_env_[j + 1] * w1.adjoint())(0).real());
        const double total = u0 + u1;
        const double p0 = total > 0.0 ? u0 / total : 0.5;
        const bool zero = rng.uniform() < p0;
        shot.values[j] = zero ? 1 : -1;
        const double weight = zero ? u0 : u1;
        v = (zero ? w0 : w1) / std::sqrt(weight > 0.0 ? weight : 1.0);
    }
    return shot;
}

std::vector<Shot> sample_dense(const LayeredCircuit& c, const std::string& basis,
                               const std::string& input, std::uint64_t seed,
                               std::size_t shots, int cap) {
    const DenseSampler sampler(c, basis, input, seed, cap);
    std::vector<Shot> out;
    out.reserve(shots);
    for (std::size_t i = 0; i < shots; ++i) out.push_back(sampler.sample(i));
    return out;
}

std::vector<Shot> sample_mps(const MpsState& state, const std::string& basis,
                             std::uint64_t seed, std::size_t shots) {
    const MpsSampler sampler(state, basis, seed);
    std::vector<Shot> out;
    out.reserve(shots);
    for (std::size_t i = 0; i < shots; ++i) out.push_back(sampler.sample(i));
    return out;
}

}  // namespace onecopy
