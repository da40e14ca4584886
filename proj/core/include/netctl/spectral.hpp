#ifndef NETCTL_SPECTRAL_HPP
#define NETCTL_SPECTRAL_HPP

#include <Eigen/Core>

#include "netctl/graph.hpp"

namespace netctl {

using GraphSignal = Eigen::VectorXd;

enum class ShiftKind { Adjacency, Laplacian };

/// Graph shift operator: dense symmetric matrix whose sparsity follows the
/// graph (adjacency W or combinatorial Laplacian L = D - W).
struct ShiftOperator {
    ShiftKind kind = ShiftKind::Laplacian;
    Eigen::MatrixXd matrix;
};

enum class FrequencyOrdering { LaplacianAscending, AdjacencyDescending };

/// Orthonormal eigenbasis of a shift operator with a fixed frequency
/// ordering: low graph frequency (smooth modes) first.
struct SpectralBasis {
    Eigen::MatrixXd eigenvectors;  // columns v_k
    Eigen::VectorXd eigenvalues;
    FrequencyOrdering ordering = FrequencyOrdering::LaplacianAscending;

    int size() const { return static_cast<int>(eigenvalues.size()); }

    /// First k columns (the in-band eigenvector block).
    Eigen::MatrixXd band(int k) const { return eigenvectors.leftCols(k); }
};

/// Bandwidth plus in-band coefficients of a bandlimited signal.
struct BandSpec {
    int k = 0;
    Eigen::VectorXd coefficients;
};

ShiftOperator build_shift(const Graph& g, ShiftKind kind);

/// Symmetric eigendecomposition with deterministic conventions: eigenvalues
/// sorted per the ordering rule and each eigenvector's largest-magnitude
/// entry made positive (first such entry on ties).
SpectralBasis eigendecompose(const ShiftOperator& s);

Eigen::VectorXd gft(const SpectralBasis& basis, const GraphSignal& x);
GraphSignal igft(const SpectralBasis& basis, const Eigen::VectorXd& coeffs);

GraphSignal synthesize_bandlimited(const SpectralBasis& basis, const BandSpec& band);

/// Projector H = V_K V_K^T onto the first k frequencies.
Eigen::MatrixXd bandlimiting_filter(const SpectralBasis& basis, int k);

/// Projector onto an arbitrary column block of eigenvectors.
Eigen::MatrixXd bandlimiting_filter(const Eigen::MatrixXd& v_band);

double spectral_norm(const ShiftOperator& s);
double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace netctl

#endif
