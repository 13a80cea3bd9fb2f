#include "onecopy/dense.hpp"

#include <bit>
#include <cstdint>

namespace onecopy {

namespace {

void check_register_size(int n, int cap) {
    if (n < 1) throw DomainError("register needs at least one qubit");
    if (n > cap)
        throw CapacityError("dense register of " + std::to_string(n) +
                            " qubits exceeds the cap of " + std::to_string(cap));
}

}  // namespace

std::vector<int> parse_bits(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw DomainError("input bitstring has length " +
                          std::to_string(s.size()) + ", expected " +
                          std::to_string(n));
    std::vector<int> bits(n);
    for (int q = 0; q < n; ++q) {
        if (s[q] != '0' && s[q] != '1')
            throw DomainError("input bitstring may contain only 0 and 1");
        bits[q] = s[q] - '0';
    }
    return bits;
}

Eigen::VectorXcd basis_state(int n, const std::vector<int>& bits) {
    check_register_size(n, dense_cap_qubits);
    if (static_cast<int>(bits.size()) != n)
        throw DomainError("bit count does not match register size");
    std::uint64_t idx = 0;
    for (int q = 0; q < n; ++q)
        if (bits[q]) idx |= std::uint64_t(1) << q;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(std::int64_t(1) << n);
    psi[idx] = 1.0;
    return psi;
}

void apply_gate(Eigen::VectorXcd& psi, const Eigen::MatrixXcd& u,
                const std::vector<int>& qubits, int n) {
    const int m = static_cast<int>(qubits.size());
    const int dim = 1 << m;
    if (u.rows() != dim || u.cols() != dim)
        throw DomainError("gate matrix does not match its qubit count");

    std::uint64_t union_mask = 0;
    for (int q : qubits) union_mask |= std::uint64_t(1) << q;

    // scatter[r]: bit pattern of local row r placed at the gate's qubits,
    // first listed qubit as the most significant local bit
    std::vector<std::uint64_t> scatter(dim, 0);
    for (int r = 0; r < dim; ++r) {
        std::uint64_t s = 0;
        for (int i = 0; i < m; ++i)
            if ((r >> (m - 1 - i)) & 1) s |= std::uint64_t(1) << qubits[i];
        scatter[r] = s;
    }

    const std::uint64_t size = std::uint64_t(1) << n;
    std::vector<cplx> in(dim);
    for (std::uint64_t base = 0; base < size; ++base) {
        if (base & union_mask) continue;
        for (int r = 0; r < dim; ++r) in[r] = psi[base | scatter[r]];
        for (int r = 0; r < dim; ++r) {
            cplx acc = 0.0;
            for (int c = 0; c < dim; ++c) acc += u(r, c) * in[c];
            psi[base | scatter[r]] = acc;
        }
    }
}

void apply_single_qubit(Eigen::VectorXcd& psi, const Eigen::Matrix2cd& u,
                        int qubit, int n) {
    const std::uint64_t size = std::uint64_t(1) << n;
    const std::uint64_t mask = std::uint64_t(1) << qubit;
    (void)n;
    for (std::uint64_t i = 0; i < size; ++i) {
        if (i & mask) continue;
        const cplx a = psi[i];
        const cplx b = psi[i | mask];
        psi[i] = u(0, 0) * a + u(0, 1) * b;
        psi[i | mask] = u(1, 0) * a + u(1, 1) * b;
    }
}

cplx pauli_product_expectation(const Eigen::VectorXcd& psi,
                               const std::vector<std::pair<int, char>>& factors,
                               int n) {
    (void)n;
    std::uint64_t xmask = 0, ymask = 0, zmask = 0;
    for (auto [q, axis] : factors) {
        const std::uint64_t bit = std::uint64_t(1) << q;
        switch (axis) {
            case 'X': xmask |= bit; break;
            case 'Y': ymask |= bit; break;
            case 'Z': zmask |= bit; break;
            default: throw DomainError("Pauli axis must be X, Y or Z");
        }
    }
    const int y_count = std::popcount(ymask);
    // Y contributes a factor (-i) per qubit plus a sign from the target bit;
    // X and Y both flip their bit.
    cplx y_phase = 1.0;
    for (int k = 0; k < y_count; ++k) y_phase *= cplx(0.0, -1.0);

    const std::uint64_t flip = xmask | ymask;
    const std::uint64_t sign_mask = zmask | ymask;
    cplx acc = 0.0;
    const std::uint64_t size = psi.size();
    for (std::uint64_t i = 0; i < size; ++i) {
        const int sign = std::popcount(i & sign_mask) & 1 ? -1 : 1;
        acc += std::conj(psi[i]) * (double(sign) * y_phase) * psi[i ^ flip];
    }
    return acc;
}

double probability_zero(const Eigen::VectorXcd& psi, int qubit, int n) {
    (void)n;
    const std::uint64_t mask = std::uint64_t(1) << qubit;
    double p = 0.0;
    const std::uint64_t size = psi.size();
    for (std::uint64_t i = 0; i < size; ++i)
        if (!(i & mask)) p += std::norm(psi[i]);
    return p;
}

std::vector<double> probabilities(const Eigen::VectorXcd& psi) {
    std::vector<double> p(psi.size());
    for (std::int64_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
    return p;
}

Eigen::Matrix2cd basis_rotation(char axis) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd u;
    switch (axis) {
        case 'Z':
            u.setIdentity();
            break;
        case 'X':  // Hadamard
            u << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
            break;
        case 'Y':  // rows <y+| and <y-|
            u << cplx(inv_sqrt2, 0), cplx(0, -inv_sqrt2),
                 cplx(inv_sqrt2, 0), cplx(0, inv_sqrt2);
            break;
        default:
            throw DomainError("measurement axis must be X, Y or Z");
    }
    return u;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

}  // namespace onecopy
