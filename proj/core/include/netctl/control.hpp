#ifndef NETCTL_CONTROL_HPP
#define NETCTL_CONTROL_HPP

#include <Eigen/Core>

#include "netctl/dynamics.hpp"
#include "netctl/mse.hpp"
#include "netctl/rng.hpp"

namespace netctl {

/// In-band view of the mean system: eigenvalues a_k of Abar on the target
/// band, the eigenvector block V_K, and the target frequency content.
struct InbandSystem {
    Eigen::VectorXd a_k;     // length K
    Eigen::MatrixXd v_k;     // N x K
    Eigen::VectorXd target;  // length K

    int bandwidth() const { return static_cast<int>(a_k.size()); }
    int dim() const { return static_cast<int>(v_k.rows()); }
};

/// Driving-node selection together with the designed control sequence and
/// its predicted closed-form MSE.
struct ControlPlan {
    NodeSelection selection;
    ControlSequence controls;
    double predicted_mse = 0.0;
    bool biased = false;
};

enum class SelectionObjective { Unbiased, Biased };

/// In-band controllability matrix
/// Omega = [I_K, A_K, ..., A_K^{T-1}] (I_T kron V_K^T C^T), K x (T*M);
/// column block b equals A_K^b V_K^T C^T, matching u = [u_{T-1}; ...; u_0].
Eigen::MatrixXd inband_controllability_matrix(const InbandSystem& sys,
                                              const NodeSelection& sel, int horizon);

/// Necessary number of driving nodes: ceil(K / T).
int necessary_nodes(int bandwidth, int horizon);

/// Numerical rank by singular values, threshold sigma_max*max(rows,cols)*1e-12.
int numerical_rank(const Eigen::MatrixXd& m);

/// Greedy choice of M >= K rows of V_K whose row block has rank K,
/// maximizing the smallest singular value of the block (ties: lowest index).
NodeSelection sufficient_selection(const Eigen::MatrixXd& v_k, int budget);

/// Minimum-energy solution of Omega u = target: min-norm exact solution for
/// a full-row-rank Omega, least-squares solution for full column rank.
/// Throws when Omega is rank deficient in both senses.
Eigen::VectorXd min_energy_control(const Eigen::MatrixXd& omega,
                                   const Eigen::VectorXd& target);

/// MMSE control solving Gamma_C u = beta_C for a fixed selection. beta_C
/// lies in range(Gamma_C) by construction, so a singular Gamma_C (e.g. at
/// p = 1, where rank collapses to at most K) still has a minimizer; the
/// minimum-norm solution is returned. Throws if the system is numerically
/// inconsistent.
Eigen::VectorXd biased_control(const StackedSystem& stacked, const NodeSelection& sel);

/// Algorithm: grow the selection one node at a time, accepting a candidate
/// only if rank(Omega) == min{K, T*min{K, m}}, scoring by closed-form MSE of
/// the minimum-energy controller. Ties broken by lowest node index.
ControlPlan greedy_select_unbiased(int budget, int horizon, const InbandSystem& sys,
                                   const MseCoefficients& coeffs);

/// Same greedy loop with the MMSE controller; a candidate is feasible when
/// the restricted system Gamma_C u = beta_C is solvable.
ControlPlan greedy_select_biased(int budget, int horizon, const StackedSystem& stacked);

/// Globally optimal selection by enumerating all C(N, M) subsets. Requires
/// C(N, M) <= 1e6. Infeasible subsets are skipped.
ControlPlan exhaustive_select(int budget, int horizon, SelectionObjective objective,
                              const InbandSystem& sys, const MseCoefficients& coeffs,
                              const StackedSystem& stacked);

/// Uniform selection of M distinct nodes without replacement.
NodeSelection random_select(int n, int budget, const RngStream& rng);

/// Closed-form MSE of the plan obtained by evaluating a stacked control u
/// against the given coefficients.
double plan_mse(const MseCoefficients& coeffs, const NodeSelection& sel,
                const Eigen::VectorXd& stacked_u);

}  // namespace netctl

#endif
