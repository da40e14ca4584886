#include "netctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace netctl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gamma_C = (I kron C) Gamma (I kron C^T), beta_C = (I kron C) beta.
struct RestrictedSystem {
    Eigen::MatrixXd gamma_c;
    Eigen::VectorXd beta_c;
};

RestrictedSystem restrict_stacked(const StackedSystem& stacked, const NodeSelection& sel) {
    sel.validate(stacked.dim);
    const int t = stacked.horizon;
    const int n = stacked.dim;
    const int m = sel.size();
    std::vector<int> idx(t * m);
    for (int r = 0; r < t; ++r)
        for (int k = 0; k < m; ++k) idx[r * m + k] = r * n + sel.indices[k];
    RestrictedSystem out;
    out.gamma_c.resize(t * m, t * m);
    out.beta_c.resize(t * m);
    for (int a = 0; a < t * m; ++a) {
        out.beta_c(a) = stacked.beta_big(idx[a]);
        for (int b = 0; b < t * m; ++b) out.gamma_c(a, b) = stacked.gamma_big(idx[a], idx[b]);
    }
    return out;
}

// Minimum-norm solution of Gamma_C u = beta_C via a thresholded eigen
// pseudoinverse. Gamma_C is PSD but can be exactly singular — e.g. at p = 1
// the covariance collapses and rank(Gamma_C) <= K — yet beta_C always lies
// in its range, so the MMSE minimizer still exists; we return the min-norm
// one and reject only genuinely inconsistent (ill-conditioned) systems.
Eigen::VectorXd solve_biased(const RestrictedSystem& rs, int mt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rs.gamma_c);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lam_max = ev.cwiseAbs().maxCoeff();
    if (!(lam_max > 0.0)) throw std::runtime_error("biased_control: Gamma_C is zero");
    const double thresh = lam_max * mt * 1e-12;
    Eigen::VectorXd z = es.eigenvectors().transpose() * rs.beta_c;
    for (int i = 0; i < ev.size(); ++i) z(i) = ev(i) > thresh ? z(i) / ev(i) : 0.0;
    Eigen::VectorXd u = es.eigenvectors() * z;
    const double residual = (rs.gamma_c * u - rs.beta_c).norm();
    if (residual > 1e-8 * std::max(1.0, rs.beta_c.norm()))
        throw std::runtime_error("biased_control: Gamma_C system is inconsistent");
    return u;
}

double biased_mse_value(double alpha, const RestrictedSystem& rs, const Eigen::VectorXd& u) {
    return alpha - 2.0 * rs.beta_c.dot(u) + u.dot(rs.gamma_c * u);
}

// Rank with a machine-precision threshold (sigma_max * max(dim) * eps).
// The selection gates need this finer tolerance: Krylov blocks built from a
// clustered in-band spectrum are Vandermonde-like, with structurally nonzero
// trailing singular values that can sit below the coarser reporting
// threshold of numerical_rank() while still being far above roundoff.
int rank_eps(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double thresh = sv(0) * static_cast<double>(std::max(m.rows(), m.cols())) *
                          std::numeric_limits<double>::epsilon();
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++r;
    return r;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

}  // namespace

Eigen::MatrixXd inband_controllability_matrix(const InbandSystem& sys,
                                              const NodeSelection& sel, int horizon) {
    const int k = sys.bandwidth();
    const int m = sel.size();
    sel.validate(sys.dim());
    Eigen::MatrixXd vkc(k, m);  // V_K^T C^T: selected rows of V_K, transposed
    for (int c = 0; c < m; ++c) vkc.col(c) = sys.v_k.row(sel.indices[c]).transpose();
    Eigen::MatrixXd omega(k, horizon * m);
    Eigen::VectorXd a_pow = Eigen::VectorXd::Ones(k);
    for (int b = 0; b < horizon; ++b) {
        omega.middleCols(b * m, m) = a_pow.asDiagonal() * vkc;
        a_pow = a_pow.cwiseProduct(sys.a_k);
    }
    return omega;
}

int necessary_nodes(int bandwidth, int horizon) {
    if (bandwidth < 1 || horizon < 1)
        throw std::invalid_argument("necessary_nodes: need K, T >= 1");
    return (bandwidth + horizon - 1) / horizon;
}

int numerical_rank(const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double thresh = sv(0) * static_cast<double>(std::max(m.rows(), m.cols())) * 1e-12;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++r;
    return r;
}

NodeSelection sufficient_selection(const Eigen::MatrixXd& v_k, int budget) {
    const int n = static_cast<int>(v_k.rows());
    const int k = static_cast<int>(v_k.cols());
    if (budget < k) throw std::invalid_argument("sufficient_selection: need M >= K");
    if (budget > n) throw std::invalid_argument("sufficient_selection: budget exceeds node count");

    std::vector<int> selected;
    for (int round = 0; round < budget; ++round) {
        int best = -1;
        double best_sigma = -1.0;
        Eigen::MatrixXd block(round + 1, k);
        for (int r = 0; r < round; ++r) block.row(r) = v_k.row(selected[r]);
        for (int cand = 0; cand < n; ++cand) {
            if (std::find(selected.begin(), selected.end(), cand) != selected.end()) continue;
            block.row(round) = v_k.row(cand);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
            double sigma = svd.singularValues().minCoeff();
            if (sigma > best_sigma + 1e-15) {
                best_sigma = sigma;
                best = cand;
            }
        }
        selected.push_back(best);
    }
    std::sort(selected.begin(), selected.end());

    Eigen::MatrixXd block(budget, k);
    for (int r = 0; r < budget; ++r) block.row(r) = v_k.row(selected[r]);
    if (numerical_rank(block) < k)
        throw std::runtime_error("sufficient_selection: no rank-K row selection exists");
    return NodeSelection{std::move(selected)};
}

Eigen::VectorXd min_energy_control(const Eigen::MatrixXd& omega,
                                   const Eigen::VectorXd& target) {
    if (omega.rows() != target.size())
        throw std::invalid_argument("min_energy_control: dimension mismatch");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double thresh = sv(0) * static_cast<double>(std::max(omega.rows(), omega.cols())) *
                          std::numeric_limits<double>::epsilon();
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++r;
    if (r < std::min(omega.rows(), omega.cols()))
        throw std::runtime_error("min_energy_control: rank-deficient controllability matrix");
    // Min-norm least-squares solution via the pseudoinverse.
    Eigen::VectorXd z = svd.matrixU().transpose() * target;
    for (int i = 0; i < sv.size(); ++i) z(i) = i < r ? z(i) / sv(i) : 0.0;
    return svd.matrixV() * z;
}

Eigen::VectorXd biased_control(const StackedSystem& stacked, const NodeSelection& sel) {
    auto rs = restrict_stacked(stacked, sel);
    return solve_biased(rs, stacked.horizon * sel.size());
}

double plan_mse(const MseCoefficients& coeffs, const NodeSelection& sel,
                const Eigen::VectorXd& stacked_u) {
    auto ctrl = ControlSequence::from_stacked(stacked_u, coeffs.horizon(), sel.size());
    return mse_closed_form(coeffs, sel, ctrl);
}

ControlPlan greedy_select_unbiased(int budget, int horizon, const InbandSystem& sys,
                                   const MseCoefficients& coeffs) {
    const int n = sys.dim();
    const int k = sys.bandwidth();
    if (budget < necessary_nodes(k, horizon))
        throw std::invalid_argument("greedy_select_unbiased: M < ceil(K/T)");

    std::vector<int> selected;
    for (int m = 1; m <= budget; ++m) {
        const int gate = std::min(k, horizon * std::min(k, m));
        int best = -1;
        double best_mse = kInf;
        for (int cand = 0; cand < n; ++cand) {
            if (std::find(selected.begin(), selected.end(), cand) != selected.end()) continue;
            std::vector<int> trial = selected;
            trial.push_back(cand);
            std::sort(trial.begin(), trial.end());
            NodeSelection sel{trial};
            Eigen::MatrixXd omega = inband_controllability_matrix(sys, sel, horizon);
            if (rank_eps(omega) != gate) continue;
            Eigen::VectorXd u;
            try {
                u = min_energy_control(omega, sys.target);
            } catch (const std::runtime_error&) {
                continue;
            }
            double mse = plan_mse(coeffs, sel, u);
            if (mse < best_mse - 1e-15) {
                best_mse = mse;
                best = cand;
            }
        }
        if (best < 0)
            throw std::runtime_error("greedy_select_unbiased: no candidate passes the rank gate at round " +
                                     std::to_string(m));
        selected.push_back(best);
    }
    std::sort(selected.begin(), selected.end());
    NodeSelection sel{selected};
    Eigen::MatrixXd omega = inband_controllability_matrix(sys, sel, horizon);
    Eigen::VectorXd u = min_energy_control(omega, sys.target);
    ControlPlan plan;
    plan.selection = sel;
    plan.controls = ControlSequence::from_stacked(u, horizon, budget);
    plan.predicted_mse = mse_closed_form(coeffs, sel, plan.controls);
    plan.biased = false;
    return plan;
}

ControlPlan greedy_select_biased(int budget, int horizon, const StackedSystem& stacked) {
    const int n = stacked.dim;
    if (budget < 1) throw std::invalid_argument("greedy_select_biased: M < 1");

    std::vector<int> selected;
    for (int m = 1; m <= budget; ++m) {
        int best = -1;
        double best_mse = kInf;
        for (int cand = 0; cand < n; ++cand) {
            if (std::find(selected.begin(), selected.end(), cand) != selected.end()) continue;
            std::vector<int> trial = selected;
            trial.push_back(cand);
            std::sort(trial.begin(), trial.end());
            NodeSelection sel{trial};
            auto rs = restrict_stacked(stacked, sel);
            Eigen::VectorXd u;
            try {
                u = solve_biased(rs, m * horizon);
            } catch (const std::runtime_error&) {
                continue;
            }
            double mse = biased_mse_value(stacked.alpha, rs, u);
            if (mse < best_mse - 1e-15) {
                best_mse = mse;
                best = cand;
            }
        }
        if (best < 0)
            throw std::runtime_error("greedy_select_biased: no candidate passes the rank gate at round " +
                                     std::to_string(m));
        selected.push_back(best);
    }
    std::sort(selected.begin(), selected.end());
    NodeSelection sel{selected};
    auto rs = restrict_stacked(stacked, sel);
    Eigen::VectorXd u = solve_biased(rs, budget * stacked.horizon);
    ControlPlan plan;
    plan.selection = sel;
    plan.controls = ControlSequence::from_stacked(u, stacked.horizon, budget);
    plan.predicted_mse = biased_mse_value(stacked.alpha, rs, u);
    plan.biased = true;
    return plan;
}

ControlPlan exhaustive_select(int budget, int horizon, SelectionObjective objective,
                              const InbandSystem& sys, const MseCoefficients& coeffs,
                              const StackedSystem& stacked) {
    const int n = objective == SelectionObjective::Unbiased ? sys.dim() : stacked.dim;
    if (budget > n) throw std::invalid_argument("exhaustive_select: budget exceeds node count");
    if (binomial(n, budget) > 1e6)
        throw std::invalid_argument("exhaustive_select: instance too large");

    ControlPlan best;
    best.predicted_mse = kInf;
    bool found = false;

    std::vector<int> comb(budget);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        NodeSelection sel{comb};
        if (objective == SelectionObjective::Unbiased) {
            Eigen::MatrixXd omega = inband_controllability_matrix(sys, sel, horizon);
            if (rank_eps(omega) == sys.bandwidth()) {
                Eigen::VectorXd u = min_energy_control(omega, sys.target);
                double mse = plan_mse(coeffs, sel, u);
                if (mse < best.predicted_mse - 1e-15) {
                    best.selection = sel;
                    best.controls = ControlSequence::from_stacked(u, horizon, budget);
                    best.predicted_mse = mse;
                    best.biased = false;
                    found = true;
                }
            }
        } else {
            try {
                auto rs = restrict_stacked(stacked, sel);
                Eigen::VectorXd u = solve_biased(rs, budget * horizon);
                double mse = biased_mse_value(stacked.alpha, rs, u);
                if (mse < best.predicted_mse - 1e-15) {
                    best.selection = sel;
                    best.controls = ControlSequence::from_stacked(u, horizon, budget);
                    best.predicted_mse = mse;
                    best.biased = true;
                    found = true;
                }
            } catch (const std::runtime_error&) {
                // singular Gamma_C: infeasible selection, skip
            }
        }
        // next lexicographic combination
        int i = budget - 1;
        while (i >= 0 && comb[i] == n - budget + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < budget; ++j) comb[j] = comb[j - 1] + 1;
    }
    if (!found) throw std::runtime_error("exhaustive_select: no feasible selection");
    return best;
}

NodeSelection random_select(int n, int budget, const RngStream& rng) {
    if (budget > n) throw std::invalid_argument("random_select: budget exceeds node count");
    auto eng = rng.make_engine();
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < budget; ++i) {
        // uniform index in [i, n)
        std::uint64_t span = static_cast<std::uint64_t>(n - i);
        std::uint64_t j = static_cast<std::uint64_t>(uniform01(eng) * static_cast<double>(span));
        if (j >= span) j = span - 1;
        std::swap(pool[i], pool[i + static_cast<int>(j)]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + budget);
    std::sort(out.begin(), out.end());
    return NodeSelection{std::move(out)};
}

}  // namespace netctl
