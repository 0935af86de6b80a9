#include "bellsynth/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <istream>
#include <sstream>

namespace bellsynth {

namespace {

const char* kBasisNames[4] = {"HH", "HV", "VH", "VV"};

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

Matrix4 spin_flip(const Matrix4& rho) {
    // S = sigma_y x sigma_y over (HH,HV,VH,VV): anti-diagonal (-1, 1, 1, -1)
    Matrix4 s = Matrix4::Zero();
    s(0, 3) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 0) = -1.0;
    return s * rho.conjugate() * s;
}

Matrix4 hermitian_sqrt(const Matrix4& m) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(m);
    Eigen::Vector4d ev = es.eigenvalues();
    // eigenvalues that are zero up to rounding must not leak sqrt(eps)
    const double tol = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Matrix4 d = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) d(i, i) = ev(i) > tol ? std::sqrt(ev(i)) : 0.0;
    return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

Eigen::Vector2cd analyzer_ket(TomoBasis b) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (b) {
        case TomoBasis::H: return {1.0, 0.0};
        case TomoBasis::V: return {0.0, 1.0};
        case TomoBasis::D: return {r, r};
        case TomoBasis::L: return {r, Complex(0.0, r)};
    }
    throw DomainError("unknown analyzer basis");
}

} // namespace

TwoQubitState TwoQubitState::from_matrix(const Matrix4& m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw InvariantViolation("TwoQubitState: matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTol)
        throw InvariantViolation("TwoQubitState: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix4> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kPsdTol)
        throw InvariantViolation("TwoQubitState: matrix is not positive semidefinite");
    return TwoQubitState(m);
}

TwoQubitState partial_state(double epsilon, double phi) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw DomainError("partial_state: epsilon must lie in [0, 1]");
    Matrix4 rho = Matrix4::Zero();
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    rho(0, 3) = 0.5 * epsilon * std::exp(Complex(0.0, -phi));
    rho(3, 0) = std::conj(rho(0, 3));
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState pre_concentrator_mixed_state() {
    Matrix4 rho = Matrix4::Zero();
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState bell_phi_plus() { return partial_state(1.0, 0.0); }

double concurrence(const TwoQubitState& state) {
    const Matrix4& rho = state.matrix();
    // Eigenvalues of rho rho~ equal those of sqrt(rho) rho~ sqrt(rho), which
    // is Hermitian PSD; this keeps the whole pipeline self-adjoint.
    const Matrix4 sq = hermitian_sqrt(rho);
    const Matrix4 m = sq * spin_flip(rho) * sq;
    Eigen::SelfAdjointEigenSolver<Matrix4> es(m, Eigen::EigenvaluesOnly);
    // clamp rounding-level eigenvalues: sqrt would amplify 1e-16 to 1e-8
    const double tol = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const double v = es.eigenvalues()(i);
        lam[i] = v > tol ? std::sqrt(v) : 0.0;
    }
    // ascending from Eigen; combine as l4 - l3 - l2 - l1
    const double c = lam[3] - lam[2] - lam[1] - lam[0];
    return std::clamp(c, 0.0, 1.0);
}

double entanglement_of_formation(const TwoQubitState& rho) {
    const double c = concurrence(rho);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double normalized_entropy(const TwoQubitState& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-14) s -= p * std::log2(p);
    }
    return s / 2.0;
}

double purity(const TwoQubitState& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

StateMetrics state_metrics(const TwoQubitState& rho) {
    StateMetrics m;
    m.concurrence = concurrence(rho);
    m.entanglement_of_formation =
        binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - m.concurrence * m.concurrence))));
    m.normalized_entropy = normalized_entropy(rho);
    m.purity = purity(rho);
    return m;
}

double coincidence_probability(const TwoQubitState& rho, double theta1_rad, double theta2_rad) {
    Eigen::Vector4cd v;
    const double c1 = std::cos(theta1_rad), s1 = std::sin(theta1_rad);
    const double c2 = std::cos(theta2_rad), s2 = std::sin(theta2_rad);
    v << c1 * c2, c1 * s2, s1 * c2, s1 * s2;
    const double p = (v.adjoint() * rho.matrix() * v)(0).real();
    return std::clamp(p, 0.0, 1.0);
}

double fidelity(const TwoQubitState& a, const TwoQubitState& b) {
    const Matrix4 sa = hermitian_sqrt(a.matrix());
    const Matrix4 m = sa * b.matrix() * sa;
    Eigen::SelfAdjointEigenSolver<Matrix4> es(m, Eigen::EigenvaluesOnly);
    double tr = 0.0;
    for (int i = 0; i < 4; ++i) tr += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    return tr * tr;
}

double projector_probability(const TwoQubitState& rho, TomoBasis a, TomoBasis b) {
    const Eigen::Vector2cd ka = analyzer_ket(a);
    const Eigen::Vector2cd kb = analyzer_ket(b);
    Eigen::Vector4cd v;
    v << ka(0) * kb(0), ka(0) * kb(1), ka(1) * kb(0), ka(1) * kb(1);
    const double p = (v.adjoint() * rho.matrix() * v)(0).real();
    return std::clamp(p, 0.0, 1.0);
}

std::string to_csv(const TwoQubitState& rho) {
    std::ostringstream out;
    out << "bra,ket,re,im\n";
    char buf[64];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Complex z = rho.matrix()(i, j);
            std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g\n", kBasisNames[i], kBasisNames[j],
                          z.real(), z.imag());
            out << buf;
        }
    }
    return out.str();
}

TwoQubitState state_from_csv(std::istream& in) {
    auto basis_index = [](const std::string& s) {
        for (int i = 0; i < 4; ++i)
            if (s == kBasisNames[i]) return i;
        throw DomainError("state_from_csv: unknown basis label '" + s + "'");
    };
    std::string line;
    if (!std::getline(in, line)) throw DomainError("state_from_csv: empty input");
    Matrix4 m = Matrix4::Zero();
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string bra, ket, re, im;
        if (!std::getline(ls, bra, ',') || !std::getline(ls, ket, ',') ||
            !std::getline(ls, re, ',') || !std::getline(ls, im, ','))
            throw DomainError("state_from_csv: malformed row '" + line + "'");
        m(basis_index(bra), basis_index(ket)) = Complex(std::stod(re), std::stod(im));
        ++rows;
    }
    if (rows != 16) throw DomainError("state_from_csv: expected 16 rows");
    return TwoQubitState::from_matrix(m);
}

} // namespace bellsynth
