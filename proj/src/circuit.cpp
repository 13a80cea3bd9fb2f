#include "onecopy/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

#include "onecopy/dense.hpp"
#include "onecopy/rng.hpp"

namespace onecopy {

Gate make_gate(std::vector<int> qubits, Eigen::MatrixXcd matrix) {
    Gate g;
    g.qubits = std::move(qubits);
    g.matrix = std::move(matrix);
    return g;
}

Gate make_two_qubit_gate(int a, int b, const Eigen::Matrix4cd& u) {
    return make_gate({a, b}, u);
}

Gate embed_single_qubit(const Eigen::Matrix2cd& u, int target, int partner) {
    // basis |target partner>, so u goes on the most significant local bit
    return make_gate({target, partner},
                     kron(u, Eigen::Matrix2cd::Identity()));
}

std::size_t LayeredCircuit::gate_count() const {
    std::size_t total = 0;
    for (const Layer& l : layers) total += l.gates.size();
    return total;
}

ValidationReport validate_circuit(const LayeredCircuit& c) {
    ValidationReport report;
    auto add = [&](int layer, int gate, std::string kind, std::string message,
                   double deviation = 0.0) {
        report.violations.push_back(
            {layer, gate, std::move(kind), std::move(message), deviation});
    };

    if (c.n < 1) add(-1, -1, "shape", "circuit has no qubits");

    for (int li = 0; li < c.depth(); ++li) {
        const Layer& layer = c.layers[li];
        std::set<int> used;
        for (int gi = 0; gi < static_cast<int>(layer.gates.size()); ++gi) {
            const Gate& g = layer.gates[gi];
            const std::string where = "layer " + std::to_string(li) +
                                      " gate " + std::to_string(gi);

            if (g.qubits.empty()) {
                add(li, gi, "shape", where + " lists no qubits");
                continue;
            }
            bool indices_ok = true;
            std::set<int> own(g.qubits.begin(), g.qubits.end());
            if (own.size() != g.qubits.size()) {
                add(li, gi, "index_range", where + " repeats a qubit index");
                indices_ok = false;
            }
            for (int q : g.qubits) {
                if (q < 0 || q >= c.n) {
                    add(li, gi, "index_range",
                        where + " touches qubit " + std::to_string(q) +
                            " outside [0, " + std::to_string(c.n) + ")");
                    indices_ok = false;
                }
            }
            const int dim = 1 << g.arity();
            if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
                add(li, gi, "shape",
                    where + " matrix is " + std::to_string(g.matrix.rows()) +
                        "x" + std::to_string(g.matrix.cols()) + ", expected " +
                        std::to_string(dim) + "x" + std::to_string(dim));
            } else {
                const double dev =
                    (g.matrix.adjoint() * g.matrix -
                     Eigen::MatrixXcd::Identity(dim, dim))
                        .cwiseAbs()
                        .maxCoeff();
                if (dev > tol::unitarity)
                    add(li, gi, "unitarity",
                        where + " is not unitary, max deviation " +
                            std::to_string(dev),
                        dev);
            }
            if (indices_ok) {
                for (int q : g.qubits) {
                    if (used.count(q))
                        add(li, gi, "collision",
                            where + " reuses qubit " + std::to_string(q) +
                                " already acted on in this layer");
                    used.insert(q);
                }
            }
        }
    }
    return report;
}

void require_valid(const LayeredCircuit& c) {
    const ValidationReport report = validate_circuit(c);
    if (report.ok()) return;
    std::ostringstream msg;
    msg << "invalid circuit:";
    for (const Violation& v : report.violations) msg << "\n  " << v.message;
    throw DomainError(msg.str());
}

DilatedGate dilate_channel(const TwoQubitChannel& ch) {
    const std::size_t m = ch.kraus.size();
    if (m < 1 || m > 16)
        throw DomainError("channel needs between 1 and 16 Kraus operators");

    Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
    for (const auto& k : ch.kraus) sum += k.adjoint() * k;
    const double dev =
        (sum - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
    if (dev > tol::trace_preserving)
        throw DomainError("channel is not trace preserving, deviation " +
                          std::to_string(dev));

    if (m == 1) return {Eigen::MatrixXcd(ch.kraus[0]), 0};

    int ancillas = 0;
    while ((std::size_t(1) << ancillas) < m) ++ancillas;
    const int anc_dim = 1 << ancillas;
    const int dim = 4 * anc_dim;

    // isometry sending |s, 0> to sum_m (K_m |s>) \otimes |m>, system index
    // major: row (s, a) = s * anc_dim + a
    Eigen::MatrixXcd iso = Eigen::MatrixXcd::Zero(dim, 4);
    for (std::size_t a = 0; a < m; ++a)
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s)
                iso(r * anc_dim + static_cast<int>(a), s) = ch.kraus[a](r, s);

    // complete to a unitary: the remaining columns of a QR factor span the
    // orthogonal complement of the isometry's range
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(iso);
    const Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    int next_free = 4;
    for (int s = 0; s < 4; ++s) {
        u.col(s * anc_dim) = iso.col(s);
        for (int a = 1; a < anc_dim; ++a) u.col(s * anc_dim + a) = q.col(next_free++);
    }
    return {std::move(u), ancillas};
}

LayeredCircuit build_ghz(int n, double x) {
    if (n < 2) throw DomainError("ghz circuit needs at least 2 qubits");
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("ghz amplitude must lie in [0, 1]");

    const double s = std::sqrt(1.0 - x * x);
    Eigen::Matrix2cd rot;
    rot << x, -s, s, x;

    LayeredCircuit c;
    c.n = n;
    Layer first;
    const Eigen::Matrix4cd seed_gate =
        cnot_matrix() * Eigen::Matrix4cd(kron(rot, Eigen::Matrix2cd::Identity()));
    first.gates.push_back(make_two_qubit_gate(0, 1, seed_gate));
    c.layers.push_back(std::move(first));
    for (int q = 1; q + 1 < n; ++q) {
        Layer l;
        l.gates.push_back(make_two_qubit_gate(q, q + 1, cnot_matrix()));
        c.layers.push_back(std::move(l));
    }
    return c;
}

namespace {

Eigen::Matrix4cd haar_random_4x4(Rng& rng) {
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = cplx(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    Eigen::Matrix4cd q = qr.householderQ();
    const Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 4; ++c) {
        const cplx d = r(c, c);
        const double mag = std::abs(d);
        q.col(c) *= mag > 0.0 ? d / mag : cplx(1.0, 0.0);
    }
    return q;
}

}  // namespace

LayeredCircuit build_random_brickwork(int n, int depth, std::uint64_t seed) {
    if (n < 2) throw DomainError("brickwork circuit needs at least 2 qubits");
    if (depth < 0) throw DomainError("depth must be nonnegative");

    LayeredCircuit c;
    c.n = n;
    for (int l = 0; l < depth; ++l) {
        Layer layer;
        for (int a = l % 2; a + 1 < n; a += 2) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(l),
                                       static_cast<std::uint64_t>(a)}));
            layer.gates.push_back(make_two_qubit_gate(a, a + 1, haar_random_4x4(rng)));
        }
        c.layers.push_back(std::move(layer));
    }
    return c;
}

Eigen::VectorXcd apply_dense(const LayeredCircuit& c, const std::string& input,
                             int cap) {
    if (c.n > cap)
        throw CapacityError("dense simulation of " + std::to_string(c.n) +
                            " qubits exceeds the cap of " + std::to_string(cap));
    Eigen::VectorXcd psi = basis_state(c.n, parse_bits(input, c.n));
    for (const Layer& layer : c.layers)
        for (const Gate& g : layer.gates) apply_gate(psi, g.matrix, g.qubits, c.n);
    return psi;
}

Eigen::Matrix4cd cnot_matrix() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 3) = 1.0;
    u(3, 2) = 1.0;
    return u;
}

namespace {

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
}

void fnv_u64(std::uint64_t& h, std::uint64_t v) { fnv_bytes(h, &v, sizeof v); }

void fnv_double(std::uint64_t& h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    fnv_u64(h, bits);
}

}  // namespace

std::uint64_t circuit_fingerprint(const LayeredCircuit& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    fnv_u64(h, static_cast<std::uint64_t>(c.n));
    fnv_u64(h, static_cast<std::uint64_t>(c.depth()));
    for (const Layer& layer : c.layers) {
        fnv_u64(h, layer.gates.size());
        for (const Gate& g : layer.gates) {
            fnv_u64(h, g.qubits.size());
            for (int q : g.qubits) fnv_u64(h, static_cast<std::uint64_t>(q));
            for (Eigen::Index r = 0; r < g.matrix.rows(); ++r)
                for (Eigen::Index col = 0; col < g.matrix.cols(); ++col) {
                    fnv_double(h, g.matrix(r, col).real());
                    fnv_double(h, g.matrix(r, col).imag());
                }
        }
    }
    return h;
}

}  // namespace onecopy
