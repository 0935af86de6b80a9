#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "bellsynth/common.hpp"

namespace bellsynth {

using Matrix4 = Eigen::Matrix4cd;

// Two-qubit polarization density matrix over the ordered basis
// (HH, HV, VH, VV); the first slot is beam 1 (detector D1).
//
// Construction validates Hermiticity (1e-12), unit trace (1e-12) and
// positive semidefiniteness (smallest eigenvalue >= -1e-10).
class TwoQubitState {
public:
    static TwoQubitState from_matrix(const Matrix4& m);

    const Matrix4& matrix() const { return rho_; }

    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kPsdTol = -1e-10;

private:
    explicit TwoQubitState(Matrix4 m) : rho_(std::move(m)) {}
    Matrix4 rho_;
};

struct StateMetrics {
    double concurrence = 0.0;
    double entanglement_of_formation = 0.0;
    double normalized_entropy = 0.0;
    double purity = 0.0;
};

// eps |Phi_phi><Phi_phi| + (1-eps) (|HH><HH| + |VV><VV|)/2 with
// |Phi_phi> = (|HH> + e^{i phi} |VV>)/sqrt(2).
TwoQubitState partial_state(double epsilon, double phi);

// (|HV><HV| + |VH><VH|)/2: the pair state before the half-wave plate and PBS.
TwoQubitState pre_concentrator_mixed_state();

TwoQubitState bell_phi_plus();

// Wootters concurrence, C = max(0, l1-l2-l3-l4) with l_i the descending
// square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence(const TwoQubitState& rho);

// E = h((1 + sqrt(1-C^2))/2), h the binary entropy in bits.
double entanglement_of_formation(const TwoQubitState& rho);

// Von Neumann entropy in bits divided by the two-qubit maximum of 2.
// Eigenvalues below 1e-14 contribute zero.
double normalized_entropy(const TwoQubitState& rho);

double purity(const TwoQubitState& rho);

StateMetrics state_metrics(const TwoQubitState& rho);

// <theta1 theta2| rho |theta1 theta2> with |theta> = cos(theta)|H> + sin(theta)|V>.
double coincidence_probability(const TwoQubitState& rho, double theta1_rad, double theta2_rad);

// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const TwoQubitState& a, const TwoQubitState& b);

// Tomography analyzer settings: H, V, D=(H+V)/sqrt2, L=(H+iV)/sqrt2.
enum class TomoBasis { H = 0, V = 1, D = 2, L = 3 };

// Tr(rho P_a x P_b) for the projectors onto the basis vectors above.
double projector_probability(const TwoQubitState& rho, TomoBasis a, TomoBasis b);

// 16-row CSV form "bra,ket,re,im" over the (HH,HV,VH,VV) basis pairs.
std::string to_csv(const TwoQubitState& rho);
TwoQubitState state_from_csv(std::istream& in);

} // namespace bellsynth
