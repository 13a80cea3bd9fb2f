#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "onecopy/common.hpp"

namespace onecopy::markov {

// Row-stochastic update on an ordered pair of coordinates. Joint symbols
// are indexed with the first listed coordinate as the major digit:
// (a_i, a_j) -> a_i * |A_j| + a_j. Rows are sources, columns targets.
struct MarkovGate {
    int i = 0;
    int j = 0;
    Eigen::MatrixXd matrix;
};

// Layered chain over finite per-coordinate alphabets; gates within one
// layer touch disjoint coordinates. The walk starts from the point mass
// on the all-first-symbol state (0, 0, ..., 0).
struct MarkovProcess {
    std::vector<int> alphabets;
    std::vector<std::vector<MarkovGate>> layers;

    int n() const { return static_cast<int>(alphabets.size()); }
    int depth() const { return static_cast<int>(layers.size()); }
};

void validate_process(const MarkovProcess& m);

// Per-term payoff tables over the support coordinates, values in [-1, 1],
// indexed with the first support coordinate as the major digit.
// Coefficient magnitudes sum to 1.
struct FunctionalTerm {
    std::vector<int> support;
    double coeff = 0.0;
    std::vector<double> table;
};

struct LinearFunctional {
    std::vector<int> alphabets;
    std::vector<FunctionalTerm> terms;
};

void validate_functional(const LinearFunctional& f);

// Checks that the functional and process agree on the alphabets.
void validate_pair(const MarkovProcess& m, const LinearFunctional& f);

std::vector<int> sample_process(const MarkovProcess& m, std::uint64_t seed);

// Coordinates that can influence the ones in s, collected by the same
// backward scan as the quantum cone. Also returns the cone gates in
// application order via the out parameter when given.
std::vector<int> backward_support(const MarkovProcess& m,
                                  const std::vector<int>& s,
                                  std::vector<const MarkovGate*>* gates = nullptr);

struct FunctionalBreakdown {
    double value = 0.0;
    std::vector<double> term_values;
};

// E f(X) by exact joint-distribution propagation restricted to each term's
// backward support. Rejects terms whose joint state space exceeds cap.
FunctionalBreakdown exact_functional(const MarkovProcess& m,
                                     const LinearFunctional& f,
                                     long cap = markov_joint_cap);

// sum_i coeff_i * table_i(x restricted to support_i) for one sample x.
double single_sample_estimate(const std::vector<int>& x,
                              const LinearFunctional& f);

// Overlap degree of the term supports' backward cones times sum coeff^2.
double variance_bound(const MarkovProcess& m, const LinearFunctional& f);

}  // namespace onecopy::markov
