#include "netctl/mse.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace netctl {

namespace {

Eigen::MatrixXd q_step(const DiffusionModel& model, const Graph& g, double p,
                       const Eigen::MatrixXd& q_prev) {
    if (model.kind == DiffusionKind::AdjacencyShift)
        return q_step_adjacency(q_prev, g.adjacency(), p);
    return q_step_laplacian(q_prev, g.adjacency(), g.degrees(), model.epsilon, p);
}

Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& a, int e) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(a.rows(), a.cols());
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

}  // namespace

Eigen::MatrixXd q_step_adjacency(const Eigen::MatrixXd& q_prev, const Eigen::MatrixXd& w,
                                 double p) {
    Eigen::MatrixXd hadamard = w.cwiseProduct(q_prev).cwiseProduct(w);
    Eigen::MatrixXd diag_term =
        (w * Eigen::MatrixXd(q_prev.diagonal().asDiagonal()) * w).diagonal().asDiagonal();
    Eigen::MatrixXd q = p * p * (w * q_prev * w);
    q += p * (1.0 - p) * (hadamard - Eigen::MatrixXd(hadamard.diagonal().asDiagonal()));
    q += p * (1.0 - p) * diag_term;
    return q;
}

Eigen::MatrixXd q_step_laplacian(const Eigen::MatrixXd& q_prev, const Eigen::MatrixXd& w,
                                 const Eigen::VectorXd& deg, double eps, double p) {
    const int n = static_cast<int>(w.rows());
    Eigen::MatrixXd laplacian = Eigen::MatrixXd(deg.asDiagonal()) - w;
    Eigen::MatrixXd mean_a =
        Eigen::MatrixXd::Identity(n, n) - eps * p * laplacian;
    Eigen::MatrixXd q = mean_a * q_prev * mean_a;
    // Per-edge Bernoulli variance: each active edge contributes its edge
    // Laplacian M_e; Var[B] = p(1-p) and M_e Q M_e = (q_ii+q_jj-2q_ij) M_e.
    const double var = eps * eps * p * (1.0 - p);
    if (var > 0.0) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double wij = w(i, j);
                if (wij == 0.0) continue;
                const double s = q_prev(i, i) + q_prev(j, j) - 2.0 * q_prev(i, j);
                const double c = var * wij * wij * s;
                q(i, i) += c;
                q(j, j) += c;
                q(i, j) -= c;
                q(j, i) -= c;
            }
        }
    }
    return q;
}

Eigen::MatrixXd gamma_exact(const DiffusionModel& model, const Graph& g, double p,
                            const Eigen::MatrixXd& h, int horizon, int tau, int tau_p) {
    if (tau < 0 || tau_p < 0 || tau >= horizon || tau_p >= horizon)
        throw std::invalid_argument("gamma_exact: indices out of range");
    if (tau > tau_p)
        return gamma_exact(model, g, p, h, horizon, tau_p, tau).transpose();
    Eigen::MatrixXd q = h.transpose() * h;
    for (int a = 0; a < horizon - tau_p - 1; ++a) q = q_step(model, g, p, q);
    Eigen::MatrixXd mean_a = mean_transition(model, g, p);
    return matrix_power(mean_a, tau_p - tau).transpose() * q;
}

Eigen::MatrixXd gamma_brute_force(const DiffusionModel& model, const Graph& g, double p,
                                  const Eigen::MatrixXd& h, int horizon, int tau,
                                  int tau_p) {
    if (tau > tau_p)
        return gamma_brute_force(model, g, p, h, horizon, tau_p, tau).transpose();
    const int steps = horizon - 1 - tau;     // draws for t = tau+1 .. T-1
    const int shared = horizon - 1 - tau_p;  // of which the last `shared` enter both products
    const int n_edges = static_cast<int>(g.edges().size());
    const double combos = std::pow(std::pow(2.0, n_edges), steps);
    if (combos > 1e6 + 0.5)
        throw std::invalid_argument("gamma_brute_force: instance too large");

    const int n = g.node_count();
    Eigen::MatrixXd q0 = h.transpose() * h;
    if (steps == 0) return q0;

    // Transition matrix and probability of every edge subset.
    const std::size_t n_subsets = std::size_t{1} << n_edges;
    std::vector<Eigen::MatrixXd> a_subset(n_subsets);
    std::vector<double> prob(n_subsets);
    for (std::size_t mask = 0; mask < n_subsets; ++mask) {
        std::vector<Edge> kept;
        double pr = 1.0;
        for (int e = 0; e < n_edges; ++e) {
            if (mask & (std::size_t{1} << e)) {
                kept.push_back(g.edges()[e]);
                pr *= p;
            } else {
                pr *= 1.0 - p;
            }
        }
        a_subset[mask] = transition_matrix(model, Graph(n, std::move(kept)));
        prob[mask] = pr;
    }

    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    std::vector<std::size_t> pick(steps, 0);  // pick[s] is the subset at t = tau+1+s
    while (true) {
        double weight = 1.0;
        for (int s = 0; s < steps; ++s) weight *= prob[pick[s]];
        // Phi_{T-1,a} = A_{T-1} ... A_a; step s corresponds to t = tau+1+s.
        Eigen::MatrixXd phi1 = Eigen::MatrixXd::Identity(n, n);
        for (int s = steps - 1; s >= 0; --s) phi1 = phi1 * a_subset[pick[s]];
        Eigen::MatrixXd phi2 = Eigen::MatrixXd::Identity(n, n);
        for (int s = steps - 1; s >= steps - shared; --s) phi2 = phi2 * a_subset[pick[s]];
        acc += weight * (phi1.transpose() * q0 * phi2);

        int s = 0;
        for (; s < steps; ++s) {
            if (++pick[s] < n_subsets) break;
            pick[s] = 0;
        }
        if (s == steps) break;
    }
    return acc;
}

MseCoefficients compute_mse_coefficients(const DiffusionModel& model, const Graph& g,
                                         double p, const Eigen::MatrixXd& h,
                                         const Eigen::VectorXd& target, int horizon) {
    if (horizon < 1) throw std::invalid_argument("compute_mse_coefficients: horizon < 1");
    check_stability(model, g);
    const int n = g.node_count();
    MseCoefficients coeffs;
    coeffs.alpha = target.squaredNorm();

    Eigen::MatrixXd mean_a = mean_transition(model, g, p);
    std::vector<Eigen::MatrixXd> a_pow(horizon);
    a_pow[0] = Eigen::MatrixXd::Identity(n, n);
    for (int e = 1; e < horizon; ++e) a_pow[e] = a_pow[e - 1] * mean_a;

    coeffs.betas.resize(horizon);
    for (int tau = 0; tau < horizon; ++tau)
        coeffs.betas[tau] = a_pow[horizon - tau - 1].transpose() * h.transpose() * target;

    std::vector<Eigen::MatrixXd> q(horizon);
    q[0] = h.transpose() * h;
    for (int a = 1; a < horizon; ++a) q[a] = q_step(model, g, p, q[a - 1]);

    coeffs.gamma.assign(horizon, std::vector<Eigen::MatrixXd>(horizon));
    for (int tau = 0; tau < horizon; ++tau) {
        for (int tau_p = tau; tau_p < horizon; ++tau_p) {
            coeffs.gamma[tau][tau_p] =
                a_pow[tau_p - tau].transpose() * q[horizon - tau_p - 1];
            if (tau_p != tau)
                coeffs.gamma[tau_p][tau] = coeffs.gamma[tau][tau_p].transpose();
        }
    }
    return coeffs;
}

double mse_closed_form(const MseCoefficients& coeffs, const NodeSelection& sel,
                       const ControlSequence& ctrl) {
    const int t = coeffs.horizon();
    const int n = coeffs.dim();
    if (ctrl.horizon() != t)
        throw std::invalid_argument("mse_closed_form: horizon mismatch");
    sel.validate(n);
    if (ctrl.input_dim() != sel.size())
        throw std::invalid_argument("mse_closed_form: control dimension mismatch");

    std::vector<Eigen::VectorXd> y(t);  // C^T u_tau
    for (int tau = 0; tau < t; ++tau) y[tau] = sel.scatter(ctrl.inputs[tau], n);

    double mse = coeffs.alpha;
    for (int tau = 0; tau < t; ++tau) mse -= 2.0 * coeffs.betas[tau].dot(y[tau]);
    for (int tau = 0; tau < t; ++tau)
        for (int tau_p = 0; tau_p < t; ++tau_p)
            mse += y[tau].dot(coeffs.gamma[tau][tau_p] * y[tau_p]);
    return mse;
}

double mse_upper_bound(double rho, const Eigen::MatrixXd& mean_a, const Eigen::MatrixXd& h,
                       const Eigen::VectorXd& target, const NodeSelection& sel,
                       const ControlSequence& ctrl, bool literal_exponent) {
    const int t = ctrl.horizon();
    const int n = static_cast<int>(mean_a.rows());
    double bound = target.squaredNorm();
    Eigen::VectorXd hx = h.transpose() * target;
    // x*^T H Abar^{T-tau-1} C^T u_tau, accumulated back to front
    Eigen::VectorXd acc = hx;
    for (int tau = t - 1; tau >= 0; --tau) {
        bound -= 2.0 * acc.dot(sel.scatter(ctrl.inputs[tau], n));
        acc = mean_a.transpose() * acc;
    }
    // Quadratic term. The literal variant reproduces the printed inner-product
    // form; the default uses |tr[C^T u u'^T C]| <= ||u|| ||u'|| (nuclear-norm
    // bound on the rank-one factor), which keeps every term an upper bound even
    // when controls at different steps point in opposing directions.
    for (int tau = 0; tau < t; ++tau) {
        for (int tau_p = 0; tau_p < t; ++tau_p) {
            double expo = literal_exponent ? 2.0 * (t - tau_p + 1)
                                           : static_cast<double>((t - tau - 1) + (t - tau_p - 1));
            double pair = literal_exponent
                              ? ctrl.inputs[tau_p].dot(ctrl.inputs[tau])
                              : ctrl.inputs[tau].norm() * ctrl.inputs[tau_p].norm();
            bound += std::pow(rho, expo) * pair;
        }
    }
    return bound;
}

StackedSystem stack(const MseCoefficients& coeffs) {
    const int t = coeffs.horizon();
    const int n = coeffs.dim();
    StackedSystem s;
    s.alpha = coeffs.alpha;
    s.horizon = t;
    s.dim = n;
    s.gamma_big.resize(t * n, t * n);
    s.beta_big.resize(t * n);
    for (int r = 0; r < t; ++r) {
        s.beta_big.segment(r * n, n) = coeffs.betas[t - 1 - r];
        for (int c = 0; c < t; ++c)
            s.gamma_big.block(r * n, c * n, n, n) = coeffs.gamma[t - 1 - r][t - 1 - c];
    }
    return s;
}

}  // namespace netctl
