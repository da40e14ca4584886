#ifndef NETCTL_DYNAMICS_HPP
#define NETCTL_DYNAMICS_HPP

#include <vector>

#include <Eigen/Core>

#include "netctl/graph.hpp"
#include "netctl/random_graph.hpp"
#include "netctl/rng.hpp"
#include "netctl/spectral.hpp"

namespace netctl {

enum class DiffusionKind { LaplacianHeat, AdjacencyShift };

/// Transition rule mapping a graph realization to A_t:
/// LaplacianHeat gives A_t = I - eps*L_t, AdjacencyShift gives A_t = W_t.
struct DiffusionModel {
    DiffusionKind kind = DiffusionKind::LaplacianHeat;
    double epsilon = 0.0;  // heat step, must satisfy 0 < eps <= 1/||L||_2

    static DiffusionModel laplacian_heat(double eps) {
        return DiffusionModel{DiffusionKind::LaplacianHeat, eps};
    }
    static DiffusionModel adjacency_shift() {
        return DiffusionModel{DiffusionKind::AdjacencyShift, 0.0};
    }

    /// Largest stable heat step for a given underlying graph.
    static double max_stable_step(const Graph& g);

    ShiftKind shift_kind() const {
        return kind == DiffusionKind::LaplacianHeat ? ShiftKind::Laplacian
                                                    : ShiftKind::Adjacency;
    }
};

/// Throws if the heat step is outside (0, 1/||L||_2] of the underlying graph.
void check_stability(const DiffusionModel& model, const Graph& underlying);

/// Ordered set of M distinct driving-node indices.
struct NodeSelection {
    std::vector<int> indices;

    int size() const { return static_cast<int>(indices.size()); }
    void validate(int n) const;

    /// M x N binary selection matrix C.
    Eigen::MatrixXd selection_matrix(int n) const;

    /// Scatters a length-M input to a length-N vector (C^T u).
    Eigen::VectorXd scatter(const Eigen::VectorXd& u, int n) const;

    /// Gathers the selected entries of a length-N vector (C x).
    Eigen::VectorXd gather(const Eigen::VectorXd& x) const;
};

/// Control inputs u_0 .. u_{T-1}, each of length M.
struct ControlSequence {
    std::vector<Eigen::VectorXd> inputs;

    int horizon() const { return static_cast<int>(inputs.size()); }
    int input_dim() const { return inputs.empty() ? 0 : static_cast<int>(inputs[0].size()); }

    static ControlSequence zero(int horizon, int m);

    /// Stacked vector [u_{T-1}; u_{T-2}; ...; u_0].
    Eigen::VectorXd stacked() const;
    static ControlSequence from_stacked(const Eigen::VectorXd& u, int horizon, int m);
};

/// Per-realization transition matrix A_t.
Eigen::MatrixXd transition_matrix(const DiffusionModel& model, const Graph& realization);

/// Mean transition matrix: I - eps*p*L or p*W.
Eigen::MatrixXd mean_transition(const DiffusionModel& model, const Graph& g, double p);

/// States x_0 .. x_T of x_t = A_{t-1} x_{t-1} + C^T u_{t-1} with a fresh
/// independent RES realization drawn at every step.
std::vector<Eigen::VectorXd> simulate(const DiffusionModel& model, const Graph& g,
                                      double p, const NodeSelection& sel,
                                      const ControlSequence& ctrl, const RngStream& rng,
                                      const Eigen::VectorXd& x0 = Eigen::VectorXd());

/// Deterministic mean state mu_T = sum_tau Abar^{T-tau-1} C^T u_tau.
Eigen::VectorXd mean_evolution(const Eigen::MatrixXd& mean_a, const NodeSelection& sel,
                               const ControlSequence& ctrl);

}  // namespace netctl

#endif
