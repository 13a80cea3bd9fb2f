#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onecopy/circuit.hpp"
#include "onecopy/mps.hpp"

namespace onecopy {

// One full-register measurement in a product Pauli basis. Outcome bit 0
// maps to +1 and bit 1 to -1, per qubit.
struct Shot {
    std::vector<std::int8_t> values;
    std::string basis;
    std::uint64_t seed = 0;   // base seed of the run
    std::uint64_t index = 0;  // shot index within the run
};

// Samples one shot at a time from the exact output distribution of the
// circuit rotated into the measurement basis. Probabilities come from the
// full statevector; shot `index` uses the sub-stream (seed, index), so any
// subset of indices can be drawn in any order.
class DenseSampler {
public:
    DenseSampler(const LayeredCircuit& c, const std::string& basis,
                 const std::string& input, std::uint64_t seed,
                 int cap = dense_cap_qubits);

    Shot sample(std::uint64_t index) const;
    int n() const { return n_; }

private:
    int n_;
    std::string basis_;
    std::uint64_t seed_;
    std::vector<double> cumulative_;
};

// Exact sequential sampler on an MPS: conditional single-site outcome
// probabilities left to right against precomputed right environments.
class MpsSampler {
public:
    MpsSampler(const MpsState& state, const std::string& basis,
               std::uint64_t seed);

    Shot sample(std::uint64_t index) const;
    int n() const { return static_cast<int>(sites_.size()); }

private:
    std::vector<MpsState::Site> sites_;  // rotated into the basis
    std::vector<Eigen::MatrixXcd> right_env_;
    std::string basis_;
    std::uint64_t seed_;
};

std::vector<Shot> sample_dense(const LayeredCircuit& c, const std::string& basis,
                               const std::string& input, std::uint64_t seed,
                               std::size_t shots, int cap = dense_cap_qubits);

std::vector<Shot> sample_mps(const MpsState& state, const std::string& basis,
                             std::uint64_t seed, std::size_t shots);

}  // namespace onecopy
