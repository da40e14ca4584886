#include "netctl/dynamics.hpp"

#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace netctl {

double DiffusionModel::max_stable_step(const Graph& g) {
    double norm = spectral_norm(build_shift(g, ShiftKind::Laplacian));
    if (norm <= 0.0) return 1.0;  // edgeless graph: any step is stable
    return 1.0 / norm;
}

void check_stability(const DiffusionModel& model, const Graph& underlying) {
    if (model.kind != DiffusionKind::LaplacianHeat) return;
    if (!(model.epsilon > 0.0))
        throw std::invalid_argument("diffusion: heat step must be positive");
    double bound = DiffusionModel::max_stable_step(underlying);
    if (model.epsilon > bound * (1.0 + 1e-12))
        throw std::invalid_argument("diffusion: heat step exceeds 1/||L||_2");
}

void NodeSelection::validate(int n) const {
    if (indices.empty()) throw std::invalid_argument("NodeSelection: empty selection");
    std::set<int> seen;
    for (int i : indices) {
        if (i < 0 || i >= n) throw std::invalid_argument("NodeSelection: index out of range");
        if (!seen.insert(i).second)
            throw std::invalid_argument("NodeSelection: duplicate index");
    }
}

Eigen::MatrixXd NodeSelection::selection_matrix(int n) const {
    validate(n);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(size(), n);
    for (int r = 0; r < size(); ++r) c(r, indices[r]) = 1.0;
    return c;
}

Eigen::VectorXd NodeSelection::scatter(const Eigen::VectorXd& u, int n) const {
    if (u.size() != size()) throw std::invalid_argument("scatter: dimension mismatch");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < size(); ++r) x(indices[r]) = u(r);
    return x;
}

Eigen::VectorXd NodeSelection::gather(const Eigen::VectorXd& x) const {
    Eigen::VectorXd u(size());
    for (int r = 0; r < size(); ++r) u(r) = x(indices[r]);
    return u;
}

ControlSequence ControlSequence::zero(int horizon, int m) {
    ControlSequence c;
    c.inputs.assign(horizon, Eigen::VectorXd::Zero(m));
    return c;
}

Eigen::VectorXd ControlSequence::stacked() const {
    const int t = horizon();
    const int m = input_dim();
    Eigen::VectorXd u(t * m);
    for (int tau = 0; tau < t; ++tau) u.segment((t - 1 - tau) * m, m) = inputs[tau];
    return u;
}

ControlSequence ControlSequence::from_stacked(const Eigen::VectorXd& u, int horizon, int m) {
    if (u.size() != static_cast<Eigen::Index>(horizon) * m)
        throw std::invalid_argument("from_stacked: dimension mismatch");
    ControlSequence c;
    c.inputs.resize(horizon);
    for (int tau = 0; tau < horizon; ++tau)
        c.inputs[tau] = u.segment((horizon - 1 - tau) * m, m);
    return c;
}

Eigen::MatrixXd transition_matrix(const DiffusionModel& model, const Graph& realization) {
    if (model.kind == DiffusionKind::AdjacencyShift) return realization.adjacency();
    if (!(model.epsilon > 0.0))
        throw std::invalid_argument("transition_matrix: heat step must be positive");
    Eigen::MatrixXd l = build_shift(realization, ShiftKind::Laplacian).matrix;
    // necessary stability check; callers validate against the underlying graph
    if (l.size() > 0 && model.epsilon * spectral_norm(l) > 1.0 + 1e-9)
        throw std::invalid_argument("transition_matrix: heat step exceeds 1/||L_t||_2");
    const int n = realization.node_count();
    return Eigen::MatrixXd::Identity(n, n) - model.epsilon * l;
}

Eigen::MatrixXd mean_transition(const DiffusionModel& model, const Graph& g, double p) {
    const int n = g.node_count();
    if (model.kind == DiffusionKind::AdjacencyShift) return p * g.adjacency();
    Eigen::MatrixXd l = build_shift(g, ShiftKind::Laplacian).matrix;
    return Eigen::MatrixXd::Identity(n, n) - model.epsilon * p * l;
}

std::vector<Eigen::VectorXd> simulate(const DiffusionModel& model, const Graph& g, double p,
                                      const NodeSelection& sel, const ControlSequence& ctrl,
                                      const RngStream& rng, const Eigen::VectorXd& x0) {
    const int n = g.node_count();
    sel.validate(n);
    if (ctrl.input_dim() != sel.size())
        throw std::invalid_argument("simulate: control dimension mismatch");
    Eigen::VectorXd x = x0.size() == 0 ? Eigen::VectorXd::Zero(n) : x0;
    if (x.size() != n) throw std::invalid_argument("simulate: initial state dimension mismatch");

    auto eng = rng.make_engine();
    std::vector<Eigen::VectorXd> trajectory{x};
    trajectory.reserve(ctrl.horizon() + 1);
    for (int t = 0; t < ctrl.horizon(); ++t) {
        Graph realization = sample_res(g, ResModel{p}, eng);
        Eigen::MatrixXd a = transition_matrix(model, realization);
        x = a * x + sel.scatter(ctrl.inputs[t], n);
        trajectory.push_back(x);
    }
    return trajectory;
}

Eigen::VectorXd mean_evolution(const Eigen::MatrixXd& mean_a, const NodeSelection& sel,
                               const ControlSequence& ctrl) {
    const int n = static_cast<int>(mean_a.rows());
    sel.validate(n);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < ctrl.horizon(); ++t)
        mu = mean_a * mu + sel.scatter(ctrl.inputs[t], n);
    return mu;
}

}  // namespace netctl
