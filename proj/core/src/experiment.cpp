#include "netctl/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace netctl {

namespace {

using nlohmann::json;

struct DesignContext {
    DiffusionModel model;
    SpectralBasis basis;
    Eigen::MatrixXd v_band;   // N x K
    Eigen::VectorXd a_band;   // in-band spectrum of Abar at design p
    Eigen::VectorXd xstar;    // target state, unit energy
    Eigen::MatrixXd h;        // bandlimiting projector
    Eigen::VectorXd target_coeffs;
};

DiffusionModel make_model(const ExperimentConfig& cfg, const Graph& g) {
    if (cfg.model == DiffusionKind::AdjacencyShift) return DiffusionModel::adjacency_shift();
    double eps = cfg.epsilon.value_or(DiffusionModel::max_stable_step(g));
    return DiffusionModel::laplacian_heat(eps);
}

Eigen::VectorXd inband_spectrum(const DiffusionModel& model, double p,
                                const Eigen::VectorXd& band_eigenvalues) {
    if (model.kind == DiffusionKind::AdjacencyShift) return p * band_eigenvalues;
    return Eigen::VectorXd::Ones(band_eigenvalues.size()) -
           model.epsilon * p * band_eigenvalues;
}

DesignContext make_context(const ExperimentConfig& cfg, const Graph& g, double p) {
    DesignContext ctx;
    ctx.model = make_model(cfg, g);
    ctx.basis = eigendecompose(build_shift(g, ctx.model.shift_kind()));
    const int n = g.node_count();
    const int k = cfg.bandwidth;
    if (k < 1 || k > n) throw std::invalid_argument("bandwidth out of range");

    TargetSpectrum ts = target_spectrum(cfg.shape, k);
    if (ts.highpass) {
        ctx.v_band = ctx.basis.eigenvectors.rightCols(k);
        ctx.a_band = inband_spectrum(ctx.model, p, ctx.basis.eigenvalues.tail(k));
    } else {
        ctx.v_band = ctx.basis.eigenvectors.leftCols(k);
        ctx.a_band = inband_spectrum(ctx.model, p, ctx.basis.eigenvalues.head(k));
    }
    ctx.target_coeffs = ts.band.coefficients;
    ctx.xstar = ctx.v_band * ctx.target_coeffs;
    ctx.h = bandlimiting_filter(ctx.v_band);
    return ctx;
}

ControlPlan design_with_context(const ExperimentConfig& cfg, Strategy strategy,
                                const Graph& g, const DesignContext& ctx,
                                const RngStream& rng) {
    const int t = cfg.horizon;
    const int m = cfg.budget;
    InbandSystem sys{ctx.a_band, ctx.v_band, ctx.target_coeffs};

    if (strategy == Strategy::ZeroControl) {
        ControlPlan plan;
        plan.selection = NodeSelection{{0}};
        plan.controls = ControlSequence::zero(t, 1);
        plan.predicted_mse = ctx.xstar.squaredNorm();
        return plan;
    }

    auto coeffs = compute_mse_coefficients(ctx.model, g, cfg.p_res, ctx.h, ctx.xstar, t);

    switch (strategy) {
        case Strategy::UnbiasedGreedy:
            return greedy_select_unbiased(m, t, sys, coeffs);
        case Strategy::BiasedGreedy:
            return greedy_select_biased(m, t, stack(coeffs));
        case Strategy::Exhaustive:
            return exhaustive_select(m, t, SelectionObjective::Biased, sys, coeffs,
                                     stack(coeffs));
        case Strategy::Random: {
            NodeSelection sel = random_select(g.node_count(), m, rng);
            auto stacked = stack(coeffs);
            Eigen::VectorXd u = biased_control(stacked, sel);
            ControlPlan plan;
            plan.selection = sel;
            plan.controls = ControlSequence::from_stacked(u, t, m);
            plan.predicted_mse = mse_closed_form(coeffs, sel, plan.controls);
            plan.biased = true;
            return plan;
        }
        case Strategy::DeterministicBaseline: {
            // Design on the p = 1 spectrum; report the MSE it actually incurs
            // under RES(p).
            const int k = cfg.bandwidth;
            TargetSpectrum ts = target_spectrum(cfg.shape, k);
            Eigen::VectorXd lam = ts.highpass ? ctx.basis.eigenvalues.tail(k).eval()
                                              : ctx.basis.eigenvalues.head(k).eval();
            InbandSystem sys1{inband_spectrum(ctx.model, 1.0, lam), ctx.v_band,
                              ctx.target_coeffs};
            auto coeffs1 =
                compute_mse_coefficients(ctx.model, g, 1.0, ctx.h, ctx.xstar, t);
            ControlPlan plan = greedy_select_unbiased(m, t, sys1, coeffs1);
            plan.predicted_mse = mse_closed_form(coeffs, plan.selection, plan.controls);
            return plan;
        }
        default:
            throw std::invalid_argument("unknown strategy");
    }
}

Graph make_graph(const ExperimentConfig& cfg, const RngStream& rng) {
    switch (cfg.source.kind) {
        case GraphSource::Kind::ErdosRenyi:
            return generate_er(cfg.source.n, cfg.source.p_er, rng, true);
        case GraphSource::Kind::Geometric:
            return generate_geometric(cfg.source.n, cfg.source.k_nn, rng, true);
        case GraphSource::Kind::EdgeList:
            return load_edge_list(cfg.source.path);
    }
    throw std::logic_error("unreachable");
}

void apply_sweep(ExperimentConfig& cfg, double value) {
    switch (cfg.sweep) {
        case SweepVariable::None:
            break;
        case SweepVariable::PRes:
            cfg.p_res = value;
            break;
        case SweepVariable::Horizon:
            cfg.horizon = static_cast<int>(value);
            break;
        case SweepVariable::Budget:
            cfg.budget = static_cast<int>(value);
            break;
        case SweepVariable::Bandwidth:
            cfg.bandwidth = static_cast<int>(value);
            break;
        case SweepVariable::KNN:
            cfg.source.k_nn = static_cast<int>(value);
            break;
        case SweepVariable::PEr:
            cfg.source.p_er = value;
            break;
    }
}

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

TargetSpectrum target_spectrum(SpectrumShape shape, int k) {
    if (k < 1) throw std::invalid_argument("target_spectrum: K >= 1 required");
    Eigen::VectorXd c(k);
    bool highpass = false;
    switch (shape) {
        case SpectrumShape::StepLowPass:
            c.setOnes();
            break;
        case SpectrumShape::StepHighPass:
            c.setOnes();
            highpass = true;
            break;
        case SpectrumShape::LinearDecay:
            for (int i = 0; i < k; ++i) c(i) = 1.0 - static_cast<double>(i) / k;
            break;
        case SpectrumShape::ExponentialDecay:
            for (int i = 0; i < k; ++i) c(i) = std::exp(-static_cast<double>(i));
            break;
    }
    c /= c.norm();
    return TargetSpectrum{BandSpec{k, std::move(c)}, highpass};
}

void ExperimentConfig::validate() const {
    if (!(p_res > 0.0 && p_res <= 1.0))
        throw std::invalid_argument("config: p_res must be in (0, 1]");
    if (horizon < 1 || budget < 1 || bandwidth < 1)
        throw std::invalid_argument("config: T, M, K must be >= 1");
    if (n_graphs < 1 || n_res < 1)
        throw std::invalid_argument("config: realization counts must be >= 1");
    if (strategies.empty()) throw std::invalid_argument("config: no strategies");
    if (sweep != SweepVariable::None && grid.empty())
        throw std::invalid_argument("config: sweep requested without a grid");
}

ControlPlan design_plan(const ExperimentConfig& cfg, Strategy strategy, const Graph& g,
                        const RngStream& rng) {
    DesignContext ctx = make_context(cfg, g, cfg.p_res);
    return design_with_context(cfg, strategy, g, ctx, rng);
}

std::vector<ResultRecord> run(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<double> grid = cfg.sweep == SweepVariable::None
                                   ? std::vector<double>{0.0}
                                   : cfg.grid;
    RngStream base{cfg.seed, 0};
    std::vector<ResultRecord> results;

    for (std::size_t cell = 0; cell < grid.size(); ++cell) {
        ExperimentConfig cell_cfg = cfg;
        apply_sweep(cell_cfg, grid[cell]);
        RngStream cell_stream = base.substream(cell);

        for (Strategy strategy : cfg.strategies) {
            ResultRecord rec;
            rec.sweep = cfg.sweep;
            rec.value = grid[cell];
            rec.strategy = strategy;
            rec.n_graphs = cell_cfg.n_graphs;
            rec.n_res = cell_cfg.n_res;
            rec.seed = cfg.seed;

            std::vector<double> graph_means;
            double pooled_sum = 0.0, pooled_sq = 0.0;
            std::size_t pooled_count = 0;
            try {
                for (int gi = 0; gi < cell_cfg.n_graphs; ++gi) {
                    RngStream graph_stream = cell_stream.substream(gi);
                    Graph g = make_graph(cell_cfg, graph_stream.substream(0));
                    DesignContext ctx = make_context(cell_cfg, g, cell_cfg.p_res);
                    ControlPlan plan = design_with_context(cell_cfg, strategy, g, ctx,
                                                           graph_stream.substream(1));
                    const double energy = ctx.xstar.squaredNorm();

                    double sum = 0.0;
                    for (int r = 0; r < cell_cfg.n_res; ++r) {
                        auto traj = simulate(ctx.model, g, cell_cfg.p_res, plan.selection,
                                             plan.controls,
                                             graph_stream.substream(2).substream(r));
                        double err = (ctx.h * traj.back() - ctx.xstar).squaredNorm() / energy;
                        sum += err;
                        pooled_sum += err;
                        pooled_sq += err * err;
                        ++pooled_count;
                    }
                    graph_means.push_back(sum / cell_cfg.n_res);
                }
                double mean = 0.0;
                for (double v : graph_means) mean += v;
                mean /= graph_means.size();
                rec.mean_mse = mean;
                if (graph_means.size() > 1) {
                    double ss = 0.0;
                    for (double v : graph_means) ss += (v - mean) * (v - mean);
                    rec.std_graphs = std::sqrt(ss / (graph_means.size() - 1));
                }
                if (pooled_count > 1) {
                    double pm = pooled_sum / pooled_count;
                    double var = (pooled_sq - pooled_count * pm * pm) / (pooled_count - 1);
                    rec.stderr_res = std::sqrt(std::max(0.0, var) /
                                               static_cast<double>(pooled_count));
                }
            } catch (const std::exception& e) {
                rec.feasible = false;
                rec.error = e.what();
                rec.mean_mse = std::numeric_limits<double>::quiet_NaN();
                rec.std_graphs = std::numeric_limits<double>::quiet_NaN();
                rec.stderr_res = std::numeric_limits<double>::quiet_NaN();
            }
            results.push_back(std::move(rec));
        }
    }
    return results;
}

std::string to_string(SpectrumShape s) {
    switch (s) {
        case SpectrumShape::StepLowPass: return "step_lowpass";
        case SpectrumShape::StepHighPass: return "step_highpass";
        case SpectrumShape::LinearDecay: return "linear_decay";
        case SpectrumShape::ExponentialDecay: return "exp_decay";
    }
    return "?";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::UnbiasedGreedy: return "unbiased_greedy";
        case Strategy::BiasedGreedy: return "biased_greedy";
        case Strategy::Exhaustive: return "exhaustive";
        case Strategy::Random: return "random";
        case Strategy::DeterministicBaseline: return "deterministic_baseline";
        case Strategy::ZeroControl: return "zero";
    }
    return "?";
}

std::string to_string(SweepVariable s) {
    switch (s) {
        case SweepVariable::None: return "none";
        case SweepVariable::PRes: return "p_res";
        case SweepVariable::Horizon: return "t";
        case SweepVariable::Budget: return "m";
        case SweepVariable::Bandwidth: return "k";
        case SweepVariable::KNN: return "k_nn";
        case SweepVariable::PEr: return "p_er";
    }
    return "?";
}

SpectrumShape parse_spectrum_shape(const std::string& s) {
    if (s == "step_lowpass") return SpectrumShape::StepLowPass;
    if (s == "step_highpass") return SpectrumShape::StepHighPass;
    if (s == "linear_decay") return SpectrumShape::LinearDecay;
    if (s == "exp_decay") return SpectrumShape::ExponentialDecay;
    throw std::invalid_argument("unknown spectrum shape: " + s);
}

Strategy parse_strategy(const std::string& s) {
    if (s == "unbiased_greedy") return Strategy::UnbiasedGreedy;
    if (s == "biased_greedy") return Strategy::BiasedGreedy;
    if (s == "exhaustive") return Strategy::Exhaustive;
    if (s == "random") return Strategy::Random;
    if (s == "deterministic_baseline") return Strategy::DeterministicBaseline;
    if (s == "zero") return Strategy::ZeroControl;
    throw std::invalid_argument("unknown strategy: " + s);
}

SweepVariable parse_sweep_variable(const std::string& s) {
    if (s == "none") return SweepVariable::None;
    if (s == "p_res") return SweepVariable::PRes;
    if (s == "t") return SweepVariable::Horizon;
    if (s == "m") return SweepVariable::Budget;
    if (s == "k") return SweepVariable::Bandwidth;
    if (s == "k_nn") return SweepVariable::KNN;
    if (s == "p_er") return SweepVariable::PEr;
    throw std::invalid_argument("unknown sweep variable: " + s);
}

std::string to_csv(const std::vector<ResultRecord>& results) {
    std::string out = "sweep_var,value,strategy,mean_mse,std_graphs,stderr_res,n_graphs,n_res,seed\n";
    for (const auto& r : results) {
        out += to_string(r.sweep) + "," + format_double(r.value) + "," + to_string(r.strategy) +
               "," + format_double(r.mean_mse) + "," + format_double(r.std_graphs) + "," +
               format_double(r.stderr_res) + "," + std::to_string(r.n_graphs) + "," +
               std::to_string(r.n_res) + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string to_json(const ExperimentConfig& cfg, const std::vector<ResultRecord>& results) {
    json j;
    json jc;
    switch (cfg.source.kind) {
        case GraphSource::Kind::ErdosRenyi:
            jc["graph"] = {{"type", "er"}, {"n", cfg.source.n}, {"p_er", cfg.source.p_er}};
            break;
        case GraphSource::Kind::Geometric:
            jc["graph"] = {{"type", "geometric"}, {"n", cfg.source.n}, {"k_nn", cfg.source.k_nn}};
            break;
        case GraphSource::Kind::EdgeList:
            jc["graph"] = {{"type", "edge_list"}, {"path", cfg.source.path}};
            break;
    }
    jc["model"] = cfg.model == DiffusionKind::LaplacianHeat ? "heat" : "shift";
    if (cfg.epsilon) jc["epsilon"] = *cfg.epsilon;
    jc["p_res"] = cfg.p_res;
    jc["t"] = cfg.horizon;
    jc["m"] = cfg.budget;
    jc["k"] = cfg.bandwidth;
    jc["shape"] = to_string(cfg.shape);
    jc["n_graphs"] = cfg.n_graphs;
    jc["n_res"] = cfg.n_res;
    jc["seed"] = cfg.seed;
    jc["sweep"] = to_string(cfg.sweep);
    jc["grid"] = cfg.grid;
    std::vector<std::string> strat;
    for (auto s : cfg.strategies) strat.push_back(to_string(s));
    jc["strategies"] = strat;
    j["config"] = jc;

    json rows = json::array();
    for (const auto& r : results) {
        json row;
        row["sweep_var"] = to_string(r.sweep);
        row["value"] = r.value;
        row["strategy"] = to_string(r.strategy);
        row["mean_mse"] = r.mean_mse;
        row["std_graphs"] = r.std_graphs;
        row["stderr_res"] = r.stderr_res;
        row["n_graphs"] = r.n_graphs;
        row["n_res"] = r.n_res;
        row["seed"] = r.seed;
        row["feasible"] = r.feasible;
        if (!r.feasible) row["error"] = r.error;
        rows.push_back(std::move(row));
    }
    j["results"] = rows;
    return j.dump(2);
}

void emit_csv(const std::vector<ResultRecord>& results, const std::string& path) {
    if (results.empty()) throw std::invalid_argument("emit_csv: no results");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    out << to_csv(results);
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

void emit_json(const ExperimentConfig& cfg, const std::vector<ResultRecord>& results,
               const std::string& path) {
    if (results.empty()) throw std::invalid_argument("emit_json: no results");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_json: cannot open " + path);
    out << to_json(cfg, results) << "\n";
    if (!out) throw std::runtime_error("emit_json: write failed for " + path);
}

}  // namespace netctl
