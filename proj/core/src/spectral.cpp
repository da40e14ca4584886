#include "netctl/spectral.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace netctl {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, double tol = 1e-12) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("expected a symmetric matrix");
}

// Largest-magnitude entry made positive; first such entry wins ties.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    int best = 0;
    double mag = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > mag) {
            mag = std::abs(v(i));
            best = i;
        }
    }
    if (v(best) < 0.0) v = -v;
}

}  // namespace

ShiftOperator build_shift(const Graph& g, ShiftKind kind) {
    Eigen::MatrixXd w = g.adjacency();
    if (kind == ShiftKind::Adjacency) return ShiftOperator{kind, std::move(w)};
    Eigen::MatrixXd l = Eigen::MatrixXd(g.degrees().asDiagonal()) - w;
    return ShiftOperator{kind, std::move(l)};
}

SpectralBasis eigendecompose(const ShiftOperator& s) {
    require_symmetric(s.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s.matrix);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed");
    Eigen::MatrixXd v = solver.eigenvectors();
    Eigen::VectorXd lam = solver.eigenvalues();  // ascending

    SpectralBasis basis;
    if (s.kind == ShiftKind::Adjacency) {
        // Descending eigenvalues: high adjacency eigenvalue = low frequency.
        basis.ordering = FrequencyOrdering::AdjacencyDescending;
        basis.eigenvalues = lam.reverse();
        basis.eigenvectors = v.rowwise().reverse();
    } else {
        basis.ordering = FrequencyOrdering::LaplacianAscending;
        basis.eigenvalues = std::move(lam);
        basis.eigenvectors = std::move(v);
    }
    for (int k = 0; k < basis.eigenvectors.cols(); ++k)
        fix_sign(basis.eigenvectors.col(k));
    return basis;
}

Eigen::VectorXd gft(const SpectralBasis& basis, const GraphSignal& x) {
    if (x.size() != basis.size()) throw std::invalid_argument("gft: dimension mismatch");
    return basis.eigenvectors.transpose() * x;
}

GraphSignal igft(const SpectralBasis& basis, const Eigen::VectorXd& coeffs) {
    if (coeffs.size() != basis.size()) throw std::invalid_argument("igft: dimension mismatch");
    return basis.eigenvectors * coeffs;
}

GraphSignal synthesize_bandlimited(const SpectralBasis& basis, const BandSpec& band) {
    if (band.k > basis.size() || band.k < 1)
        throw std::invalid_argument("synthesize_bandlimited: bandwidth out of range");
    if (band.coefficients.size() != band.k)
        throw std::invalid_argument("synthesize_bandlimited: coefficient length mismatch");
    return basis.eigenvectors.leftCols(band.k) * band.coefficients;
}

Eigen::MatrixXd bandlimiting_filter(const SpectralBasis& basis, int k) {
    if (k > basis.size() || k < 0)
        throw std::invalid_argument("bandlimiting_filter: bandwidth out of range");
    return bandlimiting_filter(basis.eigenvectors.leftCols(k));
}

Eigen::MatrixXd bandlimiting_filter(const Eigen::MatrixXd& v_band) {
    return v_band * v_band.transpose();
}

double spectral_norm(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm(const ShiftOperator& s) {
    require_symmetric(s.matrix);
    if (s.matrix.size() == 0) return 0.0;
    return spectral_norm(s.matrix);
}

}  // namespace netctl
