#include "onecopy/mps.hpp"

#include <algorithm>
#include <cmath>

#include "onecopy/dense.hpp"

namespace onecopy {

namespace {

// merge physical index into rows: (2L x R), rows p*L + l
Eigen::MatrixXcd merge_up(const MpsState::Site& s) {
    const Eigen::Index L = s.m[0].rows(), R = s.m[0].cols();
    Eigen::MatrixXcd out(2 * L, R);
    out.topRows(L) = s.m[0];
    out.bottomRows(L) = s.m[1];
    return out;
}

// merge physical index into columns: (L x 2R), cols p*R + r
Eigen::MatrixXcd merge_right(const MpsState::Site& s) {
    const Eigen::Index L = s.m[0].rows(), R = s.m[0].cols();
    Eigen::MatrixXcd out(L, 2 * R);
    out.leftCols(R) = s.m[0];
    out.rightCols(R) = s.m[1];
    return out;
}

}  // namespace

std::vector<int> MpsState::bond_dims() const {
    std::vector<int> dims;
    for (std::size_t j = 0; j + 1 < sites.size(); ++j)
        dims.push_back(static_cast<int>(sites[j].m[0].cols()));
    return dims;
}

int MpsState::max_bond() const {
    int best = 1;
    for (int d : bond_dims()) best = std::max(best, d);
    return best;
}

double MpsState::norm() const {
    const Site& s = sites[center];
    return std::sqrt(s.m[0].squaredNorm() + s.m[1].squaredNorm());
}

void MpsState::move_center_to(int site) {
    while (center < site) {
        Site& a = sites[center];
        const Eigen::Index L = a.m[0].rows(), R = a.m[0].cols();
        const Eigen::Index k = std::min(2 * L, R);
        const Eigen::MatrixXcd merged = merge_up(a);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(merged);
        const Eigen::MatrixXcd q =
            qr.householderQ() * Eigen::MatrixXcd::Identity(2 * L, k);
        const Eigen::MatrixXcd r = Eigen::MatrixXcd(
            qr.matrixQR().topRows(k).triangularView<Eigen::Upper>());
        a.m[0] = q.topRows(L);
        a.m[1] = q.bottomRows(L);
        Site& b = sites[center + 1];
        b.m[0] = r * b.m[0];
        b.m[1] = r * b.m[1];
        ++center;
    }
    while (center > site) {
        Site& a = sites[center];
        const Eigen::Index L = a.m[0].rows(), R = a.m[0].cols();
        const Eigen::Index k = std::min(L, 2 * R);
        const Eigen::MatrixXcd merged = merge_right(a);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(merged.adjoint());
        const Eigen::MatrixXcd q =
            qr.householderQ() * Eigen::MatrixXcd::Identity(2 * R, k);
        const Eigen::MatrixXcd r = Eigen::MatrixXcd(
            qr.matrixQR().topRows(k).triangularView<Eigen::Upper>());
        const Eigen::MatrixXcd qdag = q.adjoint();  // k x 2R, orthonormal rows
        a.m[0] = qdag.leftCols(R);
        a.m[1] = qdag.rightCols(R);
        Site& b = sites[center - 1];
        const Eigen::MatrixXcd rdag = r.adjoint();  // L x k
        b.m[0] = b.m[0] * rdag;
        b.m[1] = b.m[1] * rdag;
        --center;
    }
}

void MpsState::apply_two_site(int q, const Eigen::Matrix4cd& u) {
    if (q < 0 || q + 1 >= n()) throw DomainError("two-site gate out of range");
    if (center < q) move_center_to(q);
    if (center > q + 1) move_center_to(q + 1);

    Site& a = sites[q];
    Site& b = sites[q + 1];
    const Eigen::Index L = a.m[0].rows(), R = b.m[0].cols();

    Eigen::MatrixXcd theta[2][2];
    for (int p = 0; p < 2; ++p)
        for (int p2 = 0; p2 < 2; ++p2) theta[p][p2] = a.m[p] * b.m[p2];

    // local basis |q q+1>, site q as the most significant bit
    Eigen::MatrixXcd merged = Eigen::MatrixXcd::Zero(2 * L, 2 * R);
    for (int p = 0; p < 2; ++p)
        for (int p2 = 0; p2 < 2; ++p2) {
            Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(L, R);
            for (int s = 0; s < 2; ++s)
                for (int s2 = 0; s2 < 2; ++s2)
                    acc += u(2 * p + p2, 2 * s + s2) * theta[s][s2];
            merged.block(p * L, p2 * R, L, R) = acc;
        }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        merged, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] >= tol::svd_cut) ++keep;
    if (keep == 0) keep = 1;

    const Eigen::MatrixXcd u_part = svd.matrixU().leftCols(keep);
    const Eigen::MatrixXcd w =
        sv.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();

    a.m[0] = u_part.topRows(L);
    a.m[1] = u_part.bottomRows(L);
    b.m[0] = w.leftCols(R);
    b.m[1] = w.rightCols(R);
    center = q + 1;
}

Eigen::VectorXcd MpsState::to_statevector(int cap) const {
    const int qubits = n();
    if (qubits > cap)
        throw CapacityError("statevector of " + std::to_string(qubits) +
                            " qubits exceeds the cap of " + std::to_string(cap));
    Eigen::VectorXcd out(std::int64_t(1) << qubits);
    // depth-first over sites; amplitude index packs qubit j at bit j
    auto walk = [&](auto&& self, int site, std::uint64_t idx,
                    const Eigen::RowVectorXcd& prefix) -> void {
        if (site == qubits) {
            out[idx] = prefix(0);
            return;
        }
        for (std::uint64_t p = 0; p < 2; ++p)
            self(self, site + 1, idx | (p << site),
                 Eigen::RowVectorXcd(prefix * sites[site].m[p]));
    };
    walk(walk, 0, 0, Eigen::RowVectorXcd::Ones(1));
    return out;
}

MpsState product_state(int n, const std::vector<int>& bits) {
    if (n < 1) throw DomainError("product state needs at least one site");
    if (static_cast<int>(bits.size()) != n)
        throw DomainError("bit count does not match site count");
    MpsState state;
    state.sites.resize(n);
    for (int j = 0; j < n; ++j)
        for (int p = 0; p < 2; ++p) {
            state.sites[j].m[p] = Eigen::MatrixXcd::Zero(1, 1);
            if (p == bits[j]) state.sites[j].m[p](0, 0) = 1.0;
        }
    state.center = 0;
    return state;
}

namespace {

Eigen::Matrix4cd swap_conjugate(const Eigen::Matrix4cd& u) {
    // reorder both indices of |ab> to |ba>
    const auto flip = [](int i) { return ((i & 1) << 1) | (i >> 1); };
    Eigen::Matrix4cd out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = u(flip(r), flip(c));
    return out;
}

}  // namespace

MpsState build_mps(const LayeredCircuit& c, const std::string& input) {
    if (c.n < 1) throw DomainError("circuit has no qubits");
    const std::string in = input.empty() ? std::string(c.n, '0') : input;
    MpsState state = product_state(c.n, parse_bits(in, c.n));

    for (int li = 0; li < c.depth(); ++li) {
        std::vector<const Gate*> order;
        for (const Gate& g : c.layers[li].gates) order.push_back(&g);
        std::sort(order.begin(), order.end(), [](const Gate* a, const Gate* b) {
            return *std::min_element(a->qubits.begin(), a->qubits.end()) <
                   *std::min_element(b->qubits.begin(), b->qubits.end());
        });
        for (const Gate* g : order) {
            if (g->arity() != 2 ||
                std::abs(g->qubits[0] - g->qubits[1]) != 1)
                throw DomainError(
                    "MPS backend needs nearest-neighbor two-qubit gates; "
                    "layer " + std::to_string(li) + " has a gate on qubits (" +
                    std::to_string(g->qubits[0]) +
                    (g->arity() > 1 ? "," + std::to_string(g->qubits[1]) : "") +
                    ")");
            const int a = g->qubits[0], b = g->qubits[1];
            const Eigen::Matrix4cd site_matrix =
                a < b ? Eigen::Matrix4cd(g->matrix)
                      : swap_conjugate(Eigen::Matrix4cd(g->matrix));
            state.apply_two_site(std::min(a, b), site_matrix);
        }
    }
    return state;
}

}  // namespace onecopy
