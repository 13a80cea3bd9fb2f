#include "onecopy/lightcone.hpp"

#include <algorithm>

#include "onecopy/dense.hpp"

namespace onecopy {

Cone heisenberg_support(const LayeredCircuit& c, const std::vector<int>& s) {
    if (s.empty()) throw DomainError("cone of an empty qubit set");
    std::vector<char> in_cone(c.n, 0);
    for (int q : s) {
        if (q < 0 || q >= c.n)
            throw DomainError("cone seed qubit " + std::to_string(q) +
                              " out of range");
        in_cone[q] = 1;
    }

    // Last layer first. Gates inside one layer are disjoint, so marking a
    // gate's qubits cannot pull in a sibling from the same layer.
    std::vector<std::pair<int, const Gate*>> hits;
    for (int li = c.depth() - 1; li >= 0; --li) {
        for (const Gate& g : c.layers[li].gates) {
            const bool touches = std::any_of(g.qubits.begin(), g.qubits.end(),
                                             [&](int q) { return in_cone[q]; });
            if (!touches) continue;
            for (int q : g.qubits) in_cone[q] = 1;
            hits.emplace_back(li, &g);
        }
    }

    Cone cone;
    for (int q = 0; q < c.n; ++q)
        if (in_cone[q]) cone.qubits.push_back(q);
    cone.gates.reserve(hits.size());
    cone.gate_layers.reserve(hits.size());
    for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
        cone.gate_layers.push_back(it->first);
        cone.gates.push_back(*it->second);
    }
    return cone;
}

LightconeSet term_lightcones(const LayeredCircuit& c, const Observable& o) {
    validate_observable(o);
    if (o.n() != c.n)
        throw DomainError("observable acts on " + std::to_string(o.n()) +
                          " qubits, circuit has " + std::to_string(c.n));
    LightconeSet set;
    set.cones.reserve(o.terms.size());
    for (const Term& t : o.terms)
        set.cones.push_back(heisenberg_support(c, t.support));
    return set;
}

OverlapGraph overlap_graph(const LightconeSet& s) {
    const std::size_t m = s.cones.size();
    OverlapGraph g;
    g.neighbors.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const auto& a = s.cones[i].qubits;
            const auto& b = s.cones[j].qubits;
            std::size_t x = 0, y = 0;
            bool meet = false;
            while (x < a.size() && y < b.size()) {
                if (a[x] == b[y]) { meet = true; break; }
                if (a[x] < b[y]) ++x;
                else ++y;
            }
            if (meet) g.neighbors[i].push_back(static_cast<int>(j));
        }
        g.max_degree = std::max(g.max_degree,
                                static_cast<int>(g.neighbors[i].size()));
    }
    return g;
}

Eigen::VectorXcd cone_statevector(const Cone& cone, const std::string& input,
                                  int cap, int* gates_applied) {
    const int width = static_cast<int>(cone.qubits.size());
    if (width > cap)
        throw CapacityError("cone spans " + std::to_string(width) +
                            " qubits, dense cap is " + std::to_string(cap));

    std::vector<int> local(cone.qubits.empty() ? 0 : cone.qubits.back() + 1, -1);
    for (int i = 0; i < width; ++i) local[cone.qubits[i]] = i;

    std::vector<int> bits(width);
    for (int i = 0; i < width; ++i) {
        const int q = cone.qubits[i];
        if (q >= static_cast<int>(input.size()))
            throw DomainError("input bitstring too short for the circuit");
        if (input[q] != '0' && input[q] != '1')
            throw DomainError("input bitstring may contain only 0 and 1");
        bits[i] = input[q] - '0';
    }

    Eigen::VectorXcd psi = basis_state(width, bits);
    int applied = 0;
    std::vector<int> mapped;
    for (const Gate& g : cone.gates) {
        mapped.clear();
        for (int q : g.qubits) mapped.push_back(local[q]);
        apply_gate(psi, g.matrix, mapped, width);
        ++applied;
    }
    if (gates_applied) *gates_applied = applied;
    return psi;
}

double exact_term_expectation(const LayeredCircuit& c, const std::string& basis,
                              const Term& term, const std::string& input,
                              int cap) {
    const Cone cone = heisenberg_support(c, term.support);
    const Eigen::VectorXcd psi = cone_statevector(cone, input, cap);

    std::vector<int> local(cone.qubits.back() + 1, -1);
    for (std::size_t i = 0; i < cone.qubits.size(); ++i)
        local[cone.qubits[i]] = static_cast<int>(i);

    std::vector<std::pair<int, char>> factors;
    factors.reserve(term.support.size());
    for (int q : term.support) factors.emplace_back(local[q], basis.at(q));

    const cplx value = pauli_product_expectation(
        psi, factors, static_cast<int>(cone.qubits.size()));
    if (std::abs(value.imag()) > tol::imag_part)
        throw DomainError("expectation came out complex, imaginary part " +
                          std::to_string(value.imag()));
    return value.real();
}

ExpectationBreakdown exact_expectation(const LayeredCircuit& c,
                                       const Observable& o,
                                       const std::string& input, int cap) {
    validate_observable(o);
    if (o.n() != c.n)
        throw DomainError("observable acts on " + std::to_string(o.n()) +
                          " qubits, circuit has " + std::to_string(c.n));
    ExpectationBreakdown out;
    out.term_values.reserve(o.terms.size());
    for (const Term& t : o.terms) {
        const double a = exact_term_expectation(c, o.basis, t, input, cap);
        out.term_values.push_back(a);
        out.value += t.coeff * a;
    }
    return out;
}

ConeEvaluation output_qubit_probability_instrumented(const LayeredCircuit& c,
                                                     const std::string& input,
                                                     int qubit, int cap) {
    if (qubit < 0 || qubit >= c.n)
        throw DomainError("output qubit out of range");
    const Cone cone = heisenberg_support(c, {qubit});
    ConeEvaluation ev;
    ev.cone_qubits = static_cast<int>(cone.qubits.size());
    const Eigen::VectorXcd psi =
        cone_statevector(cone, input, cap, &ev.gates_applied);
    const int local = static_cast<int>(
        std::lower_bound(cone.qubits.begin(), cone.qubits.end(), qubit) -
        cone.qubits.begin());
    ev.p_zero = probability_zero(psi, local, ev.cone_qubits);
    return ev;
}

double output_qubit_probability(const LayeredCircuit& c,
                                const std::string& input, int qubit, int cap) {
    return output_qubit_probability_instrumented(c, input, qubit, cap).p_zero;
}

}  // namespace onecopy
