#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "onecopy/circuit.hpp"
#include "onecopy/observable.hpp"

namespace onecopy {

// Backward lightcone of a set of qubits: scanning layers from last to
// first, a gate joins the cone when it touches the current support and
// then contributes all of its qubits.
struct Cone {
    std::vector<int> qubits;        // sorted support t
    std::vector<Gate> gates;        // cone gates in application order
    std::vector<int> gate_layers;   // original layer index per gate
};

Cone heisenberg_support(const LayeredCircuit& c, const std::vector<int>& s);

struct LightconeSet {
    std::vector<Cone> cones;  // one per observable term, same order
};

LightconeSet term_lightcones(const LayeredCircuit& c, const Observable& o);

// Intersection graph of the cone supports. Degrees count the node itself.
struct OverlapGraph {
    std::vector<std::vector<int>> neighbors;
    int max_degree = 0;
};

OverlapGraph overlap_graph(const LightconeSet& s);

// Statevector of the cone sub-circuit: |input> restricted to the cone
// qubits, cone gates replayed with indices remapped to the cone. If
// gates_applied is given it receives the number of gate applications.
Eigen::VectorXcd cone_statevector(const Cone& cone, const std::string& input,
                                  int cap = dense_cap_qubits,
                                  int* gates_applied = nullptr);

// <psi| prod_{q in support} P_q |psi> on the final state, evaluated on the
// cone of the term only. Exact, not sampled.
double exact_term_expectation(const LayeredCircuit& c, const std::string& basis,
                              const Term& term, const std::string& input,
                              int cap = dense_cap_qubits);

struct ExpectationBreakdown {
    double value = 0.0;
    std::vector<double> term_values;
};

ExpectationBreakdown exact_expectation(const LayeredCircuit& c,
                                       const Observable& o,
                                       const std::string& input,
                                       int cap = dense_cap_qubits);

// Probability that measuring `qubit` in the Z basis on the output state
// yields 0, with the work confined to the qubit's cone.
double output_qubit_probability(const LayeredCircuit& c,
                                const std::string& input, int qubit,
                                int cap = dense_cap_qubits);

struct ConeEvaluation {
    double p_zero = 0.0;
    int cone_qubits = 0;
    int gates_applied = 0;
};

ConeEvaluation output_qubit_probability_instrumented(const LayeredCircuit& c,
                                                     const std::string& input,
                                                     int qubit,
                                                     int cap = dense_cap_qubits);

}  // namespace onecopy
