#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "onecopy/circuit.hpp"

namespace onecopy {

// Matrix product state for nearest-neighbor circuits on a line. Site j
// holds one (left x right) matrix per physical value; sites left of the
// orthogonality center are left-canonical, sites right of it are
// right-canonical. Gates are applied by local contraction and exact SVD,
// discarding only singular values below tol::svd_cut.
struct MpsState {
    struct Site {
        Eigen::MatrixXcd m[2];
    };

    std::vector<Site> sites;
    int center = 0;

    int n() const { return static_cast<int>(sites.size()); }
    std::vector<int> bond_dims() const;  // n-1 internal bonds
    int max_bond() const;
    double norm() const;

    void move_center_to(int site);
    // gate matrix in the basis |q q+1>, acts on sites q and q+1
    void apply_two_site(int q, const Eigen::Matrix4cd& u);

    Eigen::VectorXcd to_statevector(int cap = dense_cap_qubits) const;
};

MpsState product_state(int n, const std::vector<int>& bits);

// Requires every gate to be a nearest-neighbor two-qubit gate. Input
// defaults to |0...0>.
MpsState build_mps(const LayeredCircuit& c, const std::string& input = "");

}  // namespace onecopy
