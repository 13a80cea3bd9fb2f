#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "onecopy/circuit.hpp"
#include "onecopy/dense.hpp"
#include "onecopy/rng.hpp"

using namespace onecopy;

TEST_SUITE("dense") {

TEST_CASE("basis_state places qubit q in bit q") {
    const auto psi = basis_state(3, {1, 0, 1});
    CHECK(psi.size() == 8);
    CHECK(psi(0b101).real() == 1.0);
    CHECK(psi.norm() == doctest::Approx(1.0));
}

TEST_CASE("parse_bits") {
    CHECK(parse_bits("0110", 4) == std::vector<int>{0, 1, 1, 0});
    CHECK(parse_bits("", 0).empty());
    CHECK_THROWS_AS(parse_bits("01", 3), DomainError);
    CHECK_THROWS_AS(parse_bits("0x1", 3), DomainError);
}

TEST_CASE("apply_gate on listed qubit order: CNOT with control first") {
    auto psi = basis_state(2, {1, 0});
    apply_gate(psi, cnot_matrix(), {0, 1}, 2);
    CHECK(std::abs(psi(0b11) - cplx(1, 0)) < 1e-15);

    psi = basis_state(2, {0, 1});
    apply_gate(psi, cnot_matrix(), {0, 1}, 2);
    CHECK(std::abs(psi(0b10) - cplx(1, 0)) < 1e-15);

    // control listed second: |q0=1, q1=0> is untouched
    psi = basis_state(2, {1, 0});
    apply_gate(psi, cnot_matrix(), {1, 0}, 2);
    CHECK(std::abs(psi(0b01) - cplx(1, 0)) < 1e-15);
}

TEST_CASE("apply_gate matches explicit full-matrix embedding") {
    Rng rng(101);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 5);
        const int m = 1 + static_cast<int>(rng.uniform() * std::min(3, n));
        std::set<int> qs;
        while (static_cast<int>(qs.size()) < m)
            qs.insert(static_cast<int>(rng.uniform() * n));
        std::vector<int> qubits(qs.begin(), qs.end());
        if (m > 1 && rng.uniform() < 0.5) std::swap(qubits[0], qubits[m - 1]);

        Eigen::MatrixXcd raw = oracle::random_complex(rng, 1 << m, 1 << m);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(raw);
        Eigen::MatrixXcd u = qr.householderQ();
        const Gate g = make_gate(qubits, u);

        Eigen::VectorXcd psi = oracle::random_complex(rng, 1 << n, 1);
        psi.normalize();
        Eigen::VectorXcd expected = oracle::full_gate_matrix(g, n) * psi;
        apply_gate(psi, u, qubits, n);
        CHECK((psi - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("apply_single_qubit Hadamard") {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    auto psi = basis_state(2, {0, 0});
    apply_single_qubit(psi, h, 1, 2);
    CHECK(std::abs(psi(0b00) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
    CHECK(std::abs(psi(0b10) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
}

TEST_CASE("pauli_product_expectation matches per-factor matrix oracle") {
    Rng rng(202);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform() * 6);
        Eigen::VectorXcd psi = oracle::random_complex(rng, 1 << n, 1);
        psi.normalize();
        std::vector<std::pair<int, char>> factors;
        const std::string axes = "XYZ";
        for (int q = 0; q < n; ++q)
            if (rng.uniform() < 0.6)
                factors.emplace_back(q, axes[static_cast<int>(rng.uniform() * 3)]);
        const cplx got = pauli_product_expectation(psi, factors, n);
        const double want = oracle::pauli_expectation_dense(psi, factors, n);
        CHECK(std::abs(got.imag()) < 1e-10);
        CHECK(got.real() == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("probability_zero") {
    auto psi = basis_state(2, {1, 0});
    CHECK(probability_zero(psi, 0, 2) == doctest::Approx(0.0));
    CHECK(probability_zero(psi, 1, 2) == doctest::Approx(1.0));
}

TEST_CASE("basis rotations map eigenstates to the computational basis") {
    for (char axis : {'X', 'Y', 'Z'}) {
        const Eigen::Matrix2cd r = basis_rotation(axis);
        CHECK((r * r.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
        const Eigen::Matrix2cd p = oracle::pauli_matrix(axis);
        // r P r^dag must be Z: +1 eigenstate lands on |0>
        CHECK((r * p * r.adjoint() - oracle::pauli_matrix('Z')).norm() < 1e-14);
    }
    CHECK(basis_rotation('Z').isIdentity(1e-15));
    CHECK_THROWS_AS(basis_rotation('Q'), DomainError);
}

TEST_CASE("kron dimensions and values") {
    Eigen::MatrixXcd a(1, 2), b(2, 1);
    a << 2, 3;
    b << 1, 5;
    const Eigen::MatrixXcd k = kron(a, b);
    CHECK(k.rows() == 2);
    CHECK(k.cols() == 2);
    CHECK(k(1, 1) == cplx(15, 0));
}

}  // TEST_SUITE
