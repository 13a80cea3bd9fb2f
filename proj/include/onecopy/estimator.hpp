#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onecopy/circuit.hpp"
#include "onecopy/observable.hpp"
#include "onecopy/simulator.hpp"

namespace onecopy {

enum class Backend { dense, mps, autosel };

std::string backend_name(Backend b);
Backend parse_backend(const std::string& name);

// autosel picks dense when the register fits the dense cap, the MPS
// backend when the circuit is nearest-neighbor on a line, and rejects
// everything else.
Backend resolve_backend(const LayeredCircuit& c, Backend requested);

// Product of the shot values over the support.
double term_value(const Shot& shot, const std::vector<int>& support);

// sum_i coeff_i * term_value_i; allocation-free inner loop.
double estimate_value(const Shot& shot, const Observable& o);

struct EstimateReport {
    double estimate = 0.0;
    std::vector<double> term_values;
    std::optional<double> variance_bound;
    std::optional<int> overlap_degree;
    // (epsilon, failure probability bound) rows
    std::vector<std::pair<double, double>> confidence;
    std::uint64_t seed = 0;
    std::uint64_t shot_index = 0;
    std::string backend;
    std::string circuit_hash;
};

EstimateReport single_copy_estimate(const Shot& shot, const Observable& o);

// Overlap degree of the term cones times the observable norm. An upper
// bound on the variance of the single-shot estimate.
double variance_bound(const LayeredCircuit& c, const Observable& o);

// Chebyshev failure bound min(1, vb / eps^2); eps must be positive.
double confidence(double variance_bound, double epsilon);

// Union bound over several observables measured from one shot. All must
// share the same basis string; the result is capped at 1.
double multi_observable_budget(const LayeredCircuit& c,
                               const std::vector<Observable>& os,
                               double epsilon);

const std::vector<double>& default_eps_grid();  // {0.05, 0.1, 0.2, 0.5}

struct TrialStats {
    std::size_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance of the estimates
    double exact = 0.0;
    double bound = 0.0;  // variance_bound of (c, o)
    int overlap_degree = 0;
    std::vector<double> eps_grid;
    std::vector<double> failure_rates;  // empirical Pr(|Y - exact| >= eps)
    std::uint64_t seed = 0;
    std::string backend;
};

// Repeats the single-copy protocol on fresh shots. Trial t draws shot
// sub-stream (seed, t); results are identical for every jobs value.
TrialStats trial_harness(const LayeredCircuit& c, const Observable& o,
                         std::size_t trials, std::uint64_t seed,
                         Backend backend = Backend::autosel, int jobs = 1);

}  // namespace onecopy
