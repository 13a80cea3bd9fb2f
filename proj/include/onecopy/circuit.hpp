#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "onecopy/common.hpp"

namespace onecopy {

// Gate on an ordered list of distinct qubits with a 2^m x 2^m unitary.
// Circuits are built from two-qubit gates; channel dilation introduces
// wider ones, and everything downstream accepts them.
struct Gate {
    std::vector<int> qubits;
    Eigen::MatrixXcd matrix;

    int arity() const { return static_cast<int>(qubits.size()); }
};

Gate make_gate(std::vector<int> qubits, Eigen::MatrixXcd matrix);
Gate make_two_qubit_gate(int a, int b, const Eigen::Matrix4cd& u);

// Single-qubit unitary carried as a two-qubit gate: u on target, identity
// on partner.
Gate embed_single_qubit(const Eigen::Matrix2cd& u, int target, int partner);

struct Layer {
    std::vector<Gate> gates;
};

struct LayeredCircuit {
    int n = 0;
    std::vector<Layer> layers;

    int depth() const { return static_cast<int>(layers.size()); }
    std::size_t gate_count() const;
};

struct Violation {
    int layer = -1;  // -1 when not tied to a layer
    int gate = -1;   // position within the layer
    std::string kind;  // "unitarity", "index_range", "collision", "shape"
    std::string message;
    double deviation = 0.0;  // magnitude for numeric violations
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_circuit(const LayeredCircuit& c);

// Throws DomainError listing every violation.
void require_valid(const LayeredCircuit& c);

// Two-qubit channel given by its Kraus operators (1 to 16 of them).
struct TwoQubitChannel {
    std::vector<Eigen::Matrix4cd> kraus;
};

// Unitary on 2 + ancillas qubits acting as the channel once the ancillas
// start in |0...0> and are traced out. Qubit order: the two system qubits
// first, then the ancillas.
struct DilatedGate {
    Eigen::MatrixXcd matrix;
    int ancillas = 0;
};

DilatedGate dilate_channel(const TwoQubitChannel& ch);

// x|0...0> + sqrt(1-x^2)|1...1> as a depth n-1 nearest-neighbor circuit.
LayeredCircuit build_ghz(int n, double x);

// Brickwork on a line: even layers pair (0,1),(2,3),..., odd layers pair
// (1,2),(3,4),..., every gate Haar random. Pure function of (n, depth, seed).
LayeredCircuit build_random_brickwork(int n, int depth, std::uint64_t seed);

// Exact output statevector for the circuit applied to |input>.
Eigen::VectorXcd apply_dense(const LayeredCircuit& c, const std::string& input,
                             int cap = dense_cap_qubits);

// CNOT with the first listed qubit as control.
Eigen::Matrix4cd cnot_matrix();

// Hash of the canonical byte serialization; stable across runs.
std::uint64_t circuit_fingerprint(const LayeredCircuit& c);

}  // namespace onecopy
