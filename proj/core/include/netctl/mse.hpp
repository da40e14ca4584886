#ifndef NETCTL_MSE_HPP
#define NETCTL_MSE_HPP

#include <vector>

#include <Eigen/Core>

#include "netctl/dynamics.hpp"

namespace netctl {

/// Coefficients of the closed-form MSE quadratic
///   MSE = alpha - 2 sum_tau beta_tau^T C^T u_tau
///         + sum_tau sum_tau' u_tau^T C Gamma_{tau,tau'} C^T u_tau'
/// with alpha = ||x*||^2, beta_tau = (Abar^{T-tau-1})^T H^T x*, and
/// Gamma_{tau,tau'} = E[Phi_{T-1,tau+1}^T H^T H Phi_{T-1,tau'+1}].
struct MseCoefficients {
    double alpha = 0.0;
    std::vector<Eigen::VectorXd> betas;               // beta_0 .. beta_{T-1}
    std::vector<std::vector<Eigen::MatrixXd>> gamma;  // gamma[tau][tau']

    int horizon() const { return static_cast<int>(betas.size()); }
    int dim() const { return betas.empty() ? 0 : static_cast<int>(betas[0].size()); }
};

/// Block-stacked quadratic system matching u = [u_{T-1}; ...; u_0]:
/// block (r, c) of gamma_big is Gamma_{T-1-r, T-1-c}.
struct StackedSystem {
    double alpha = 0.0;
    Eigen::MatrixXd gamma_big;  // NT x NT
    Eigen::VectorXd beta_big;   // NT
    int horizon = 0;
    int dim = 0;  // N
};

/// One step of the exact second-moment recursion Q_a = E[A^T Q_{a-1} A]
/// for the adjacency shift model on an undirected RES(p) graph.
Eigen::MatrixXd q_step_adjacency(const Eigen::MatrixXd& q_prev, const Eigen::MatrixXd& w,
                                 double p);

/// Same step for the heat model A = I - eps*L_t. Computed as
///   Abar1 Q Abar1 + eps^2 p(1-p) sum_e w_e^2 (q_ii + q_jj - 2 q_ij) M_e
/// with Abar1 = I - eps*p*L and M_e the edge Laplacian of e = (i, j),
/// which is the exact expectation over independent edge activations.
Eigen::MatrixXd q_step_laplacian(const Eigen::MatrixXd& q_prev, const Eigen::MatrixXd& w,
                                 const Eigen::VectorXd& deg, double eps, double p);

/// Exact Gamma_{tau,tau'} via the recursion: for tau <= tau',
/// Gamma = (Abar^{tau'-tau})^T Q_{T-tau'-1} with Q_0 = H^T H.
Eigen::MatrixXd gamma_exact(const DiffusionModel& model, const Graph& g, double p,
                            const Eigen::MatrixXd& h, int horizon, int tau, int tau_p);

/// Independent oracle: exact expectation by enumerating every per-step edge
/// subset with its Bernoulli probability. Requires
/// (2^|E|)^(T-1-min(tau,tau')) <= 1e6.
Eigen::MatrixXd gamma_brute_force(const DiffusionModel& model, const Graph& g, double p,
                                  const Eigen::MatrixXd& h, int horizon, int tau, int tau_p);

/// All coefficients for a given filter, target and horizon.
MseCoefficients compute_mse_coefficients(const DiffusionModel& model, const Graph& g,
                                         double p, const Eigen::MatrixXd& h,
                                         const Eigen::VectorXd& target, int horizon);

double mse_closed_form(const MseCoefficients& coeffs, const NodeSelection& sel,
                       const ControlSequence& ctrl);

/// Worst-case MSE bound with first-order dependence only. The default
/// quadratic term is rho^{(T-tau-1)+(T-tau'-1)} * ||u_tau|| * ||u_tau'||,
/// which is a true upper bound for any controls; literal_exponent switches
/// to the variant 2(T-tau'+1) * <u_tau', u_tau>, which can undershoot when
/// controls at different steps oppose each other.
double mse_upper_bound(double rho, const Eigen::MatrixXd& mean_a, const Eigen::MatrixXd& h,
                       const Eigen::VectorXd& target, const NodeSelection& sel,
                       const ControlSequence& ctrl, bool literal_exponent = false);

StackedSystem stack(const MseCoefficients& coeffs);

}  // namespace netctl

#endif
