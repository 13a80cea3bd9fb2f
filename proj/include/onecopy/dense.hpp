#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "onecopy/common.hpp"

namespace onecopy {

// Statevector kernels shared by the dense simulator, the cone evaluator and
// the samplers.
//
// Amplitude index convention: basis index i stores qubit q in bit q of i,
// so qubit 0 is the least significant bit. A gate listed on qubits
// (q1, ..., qm) reads its 2^m x 2^m matrix in the basis |q1 q2 ... qm> with
// the first listed qubit as the most significant local bit.

Eigen::VectorXcd basis_state(int n, const std::vector<int>& bits);

void apply_gate(Eigen::VectorXcd& psi, const Eigen::MatrixXcd& u,
                const std::vector<int>& qubits, int n);

void apply_single_qubit(Eigen::VectorXcd& psi, const Eigen::Matrix2cd& u,
                        int qubit, int n);

// <psi| P |psi> for a product of Pauli factors, given as (qubit, axis) pairs
// with axis in {'X','Y','Z'}.
cplx pauli_product_expectation(const Eigen::VectorXcd& psi,
                               const std::vector<std::pair<int, char>>& factors,
                               int n);

double probability_zero(const Eigen::VectorXcd& psi, int qubit, int n);

std::vector<double> probabilities(const Eigen::VectorXcd& psi);

// Rotation taking the +1/-1 eigenstates of the named axis to |0>/|1>.
Eigen::Matrix2cd basis_rotation(char axis);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// "0110" -> {0,1,1,0}; length must equal n, qubit q reads s[q]
std::vector<int> parse_bits(const std::string& s, int n);

}  // namespace onecopy
