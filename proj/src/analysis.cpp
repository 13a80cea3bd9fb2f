#include "onecopy/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "onecopy/dense.hpp"
#include "onecopy/estimator.hpp"
#include "onecopy/parallel.hpp"

namespace onecopy {

double exact_trace_distance(const LayeredCircuit& rho,
                            const LayeredCircuit& sigma, int cap) {
    if (rho.n != sigma.n)
        throw DomainError("circuits act on different register sizes");
    if (rho.n > cap)
        throw CapacityError("exact trace distance of " + std::to_string(rho.n) +
                            " qubits exceeds the cap of " + std::to_string(cap));
    const std::string zeros(rho.n, '0');
    const Eigen::VectorXcd u = apply_dense(rho, zeros);
    const Eigen::VectorXcd v = apply_dense(sigma, zeros);
    const Eigen::MatrixXcd diff =
        u * u.adjoint() - v * v.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

DiscriminationCertificate trace_distance_lower_bound(
    const LayeredCircuit& rho, const LayeredCircuit& sigma,
    const Observable& o, double epsilon, int exact_cap) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (rho.n != sigma.n)
        throw DomainError("circuits act on different register sizes");

    const std::string zeros(rho.n, '0');
    const double e_rho = exact_expectation(rho, o, zeros).value;
    const double e_sigma = exact_expectation(sigma, o, zeros).value;

    DiscriminationCertificate cert;
    cert.gap = std::abs(e_rho - e_sigma);
    cert.epsilon = epsilon;
    if (!(cert.gap > epsilon))
        throw DomainError(
            "observable does not separate the states: gap " +
            std::to_string(cert.gap) + " is not above epsilon " +
            std::to_string(epsilon));

    cert.variance_bound_rho = variance_bound(rho, o);
    cert.variance_bound_sigma = variance_bound(sigma, o);
    // estimate to epsilon/2 and pick the closer value; Chebyshev bounds the
    // failure probability for each true state
    const double half = epsilon / 2.0;
    cert.p_rho = confidence(cert.variance_bound_rho, half);
    cert.p_sigma = confidence(cert.variance_bound_sigma, half);
    cert.p_fail = 0.5 * (cert.p_rho + cert.p_sigma);
    cert.lower_bound = std::max(0.0, 1.0 - 2.0 * cert.p_fail);
    if (rho.n <= exact_cap)
        cert.exact_trace_distance = exact_trace_distance(rho, sigma, exact_cap);
    return cert;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::zero: return "0";
        case Verdict::one: return "1";
        case Verdict::undecided: return "undecided";
    }
    return "undecided";
}

Decision decide(const LayeredCircuit& c, const std::string& input,
                int output_qubit, int cap) {
    const ConeEvaluation ev =
        output_qubit_probability_instrumented(c, input, output_qubit, cap);
    Decision d;
    d.p_zero = ev.p_zero;
    d.cone_qubits = ev.cone_qubits;
    d.cone_gates = ev.gates_applied;
    // closed undecided band; points within tol of a threshold stay undecided
    if (ev.p_zero > 2.0 / 3.0 + tol::decision_boundary)
        d.verdict = Verdict::zero;
    else if (ev.p_zero < 1.0 / 3.0 - tol::decision_boundary)
        d.verdict = Verdict::one;
    else
        d.verdict = Verdict::undecided;
    return d;
}

std::vector<std::pair<std::string, Decision>> truth_table(
    const LayeredCircuit& c, std::size_t max_inputs, int jobs,
    int output_qubit, int cap) {
    if (c.n >= 63 || (std::uint64_t(1) << c.n) > max_inputs)
        throw CapacityError("truth table over " + std::to_string(c.n) +
                            " qubits exceeds the input cap of " +
                            std::to_string(max_inputs));
    const std::uint64_t count = std::uint64_t(1) << c.n;
    std::vector<std::pair<std::string, Decision>> rows(count);
    parallel_for(count, jobs, [&](std::size_t i) {
        std::string input(c.n, '0');
        for (int q = 0; q < c.n; ++q)
            if ((i >> q) & 1) input[q] = '1';
        rows[i] = {input, decide(c, input, output_qubit, cap)};
    });
    return rows;
}

}  // namespace onecopy
