#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "onecopy/circuit.hpp"
#include "onecopy/lightcone.hpp"
#include "onecopy/observable.hpp"

namespace onecopy {

// Witness that two circuit output states are far in trace distance.
// An observable whose exact values differ by more than epsilon gives a
// discrimination strategy (estimate, pick the closer value), and the
// optimal discrimination error bounds the distance from below.
struct DiscriminationCertificate {
    double gap = 0.0;
    double epsilon = 0.0;
    double variance_bound_rho = 0.0;
    double variance_bound_sigma = 0.0;
    double p_rho = 0.0;    // Chebyshev failure bound at epsilon/2, state rho
    double p_sigma = 0.0;
    double p_fail = 0.0;   // average of the two
    double lower_bound = 0.0;  // max(0, 1 - 2 * p_fail) <= trace distance
    std::optional<double> exact_trace_distance;
};

// Requires |tr(O rho) - tr(O sigma)| > epsilon; reports the actual gap in
// the error otherwise. Fills exact_trace_distance when n <= exact_cap.
DiscriminationCertificate trace_distance_lower_bound(
    const LayeredCircuit& rho, const LayeredCircuit& sigma,
    const Observable& o, double epsilon, int exact_cap = 10);

// Half the absolute eigenvalue sum of the difference of the two output
// density matrices, computed densely.
double exact_trace_distance(const LayeredCircuit& rho,
                            const LayeredCircuit& sigma, int cap = 10);

enum class Verdict { zero, one, undecided };

std::string verdict_name(Verdict v);

struct Decision {
    double p_zero = 0.0;
    Verdict verdict = Verdict::undecided;
    int cone_qubits = 0;
    int cone_gates = 0;  // gate applications performed, all inside the cone
};

// Reads the circuit as computing a bit on the output qubit: outcome 0 with
// probability above 2/3 decides 0, below 1/3 decides 1, the closed band
// in between stays undecided. Only the output qubit's cone is touched.
Decision decide(const LayeredCircuit& c, const std::string& input,
                int output_qubit = 0, int cap = dense_cap_qubits);

// decide() on every input bitstring, ordered by the integer value of the
// bitstring read with qubit 0 as the least significant bit.
std::vector<std::pair<std::string, Decision>> truth_table(
    const LayeredCircuit& c, std::size_t max_inputs = 4096, int jobs = 1,
    int output_qubit = 0, int cap = dense_cap_qubits);

}  // namespace onecopy
