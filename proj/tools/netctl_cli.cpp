// Command-line driver: graph generation, target spectra, node selection,
// controller design, Monte Carlo evaluation, and parameter sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netctl/experiment.hpp"

using nlohmann::json;
using namespace netctl;

namespace {

struct GraphFlags {
    std::string path;
    std::string gen_type = "geometric";
    int n = 100;
    double p_er = 0.5;
    int k_nn = 5;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", path, "edge-list file of the underlying graph");
        cmd->add_option("--gen-type", gen_type, "generator when no --graph: er|geometric")
            ->check(CLI::IsMember({"er", "geometric"}));
        cmd->add_option("--n", n, "node count for generated graphs");
        cmd->add_option("--p-er", p_er, "ER edge probability");
        cmd->add_option("--k-nn", k_nn, "geometric nearest-neighbor count");
    }

    GraphSource source() const {
        GraphSource src;
        if (!path.empty()) {
            src.kind = GraphSource::Kind::EdgeList;
            src.path = path;
        } else if (gen_type == "er") {
            src.kind = GraphSource::Kind::ErdosRenyi;
        } else {
            src.kind = GraphSource::Kind::Geometric;
        }
        src.n = n;
        src.p_er = p_er;
        src.k_nn = k_nn;
        return src;
    }
};

struct DesignFlags {
    std::string model = "heat";
    std::optional<double> epsilon;
    double p_res = 0.95;
    int horizon = 8;
    int budget = 8;
    int bandwidth = 10;
    std::string shape = "linear_decay";
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "diffusion model: heat|shift")
            ->check(CLI::IsMember({"heat", "shift"}));
        double eps_val = 0.0;
        auto* opt = cmd->add_option("--epsilon", eps_val, "heat step (default 1/||L||)");
        opt->each([this](const std::string& s) { epsilon = std::stod(s); });
        cmd->add_option("--p-res", p_res, "RES edge activation probability");
        cmd->add_option("--t", horizon, "control horizon T");
        cmd->add_option("--m", budget, "number of driving nodes M");
        cmd->add_option("--k", bandwidth, "target bandwidth K");
        cmd->add_option("--shape", shape,
                        "target spectrum: step_lowpass|step_highpass|linear_decay|exp_decay");
        cmd->add_option("--seed", seed, "RNG seed");
    }

    void fill(ExperimentConfig& cfg) const {
        cfg.model = model == "heat" ? DiffusionKind::LaplacianHeat
                                    : DiffusionKind::AdjacencyShift;
        cfg.epsilon = epsilon;
        cfg.p_res = p_res;
        cfg.horizon = horizon;
        cfg.budget = budget;
        cfg.bandwidth = bandwidth;
        cfg.shape = parse_spectrum_shape(shape);
        cfg.seed = seed;
    }
};

Graph load_or_generate(const GraphFlags& gf, std::uint64_t seed) {
    GraphSource src = gf.source();
    RngStream rng{seed, 0};
    switch (src.kind) {
        case GraphSource::Kind::EdgeList:
            return load_edge_list(src.path);
        case GraphSource::Kind::ErdosRenyi:
            return generate_er(src.n, src.p_er, rng, true);
        case GraphSource::Kind::Geometric:
            return generate_geometric(src.n, src.k_nn, rng, true);
    }
    throw std::logic_error("unreachable");
}

json plan_to_json(const ControlPlan& plan) {
    json j;
    j["selection"] = plan.selection.indices;
    j["horizon"] = plan.controls.horizon();
    j["m"] = plan.controls.input_dim();
    json inputs = json::array();
    for (const auto& u : plan.controls.inputs)
        inputs.push_back(std::vector<double>(u.data(), u.data() + u.size()));
    j["controls"] = inputs;
    j["predicted_mse"] = plan.predicted_mse;
    j["biased"] = plan.biased;
    return j;
}

ControlPlan plan_from_json(const json& j) {
    ControlPlan plan;
    plan.selection.indices = j.at("selection").get<std::vector<int>>();
    for (const auto& row : j.at("controls")) {
        auto vals = row.get<std::vector<double>>();
        plan.controls.inputs.push_back(
            Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
    }
    plan.predicted_mse = j.value("predicted_mse", 0.0);
    plan.biased = j.value("biased", false);
    return plan;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open-loop control of diffusion processes on random time-varying graphs"};
    app.require_subcommand(1);

    // --- generate ---
    auto* gen = app.add_subcommand("generate", "generate a random graph as an edge list");
    GraphFlags gen_gf;
    gen_gf.attach(gen);
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    bool gen_connected = true;
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output edge-list path")->required();
    gen->add_flag("!--no-connected", gen_connected, "do not resample for connectivity");

    // --- spectrum ---
    auto* spec = app.add_subcommand("spectrum", "emit a unit-energy target spectrum");
    std::string spec_shape = "linear_decay";
    int spec_k = 10;
    std::string spec_out;
    spec->add_option("--shape", spec_shape, "spectrum shape");
    spec->add_option("--k", spec_k, "bandwidth K");
    spec->add_option("--out", spec_out, "output path (stdout when omitted)");

    // --- select / control ---
    auto* sel_cmd = app.add_subcommand("select", "driving-node selection only");
    auto* ctl_cmd = app.add_subcommand("control", "full control plan (selection + inputs)");
    GraphFlags sel_gf, ctl_gf;
    DesignFlags sel_df, ctl_df;
    std::string sel_strategy = "biased_greedy", ctl_strategy = "biased_greedy";
    std::string sel_out, ctl_out;
    sel_gf.attach(sel_cmd);
    sel_df.attach(sel_cmd);
    sel_cmd->add_option("--strategy", sel_strategy, "selection strategy");
    sel_cmd->add_option("--out", sel_out, "output path (stdout when omitted)");
    ctl_gf.attach(ctl_cmd);
    ctl_df.attach(ctl_cmd);
    ctl_cmd->add_option("--strategy", ctl_strategy, "selection strategy");
    ctl_cmd->add_option("--out", ctl_out, "output path (stdout when omitted)");

    // --- evaluate ---
    auto* eval_cmd = app.add_subcommand("evaluate", "Monte Carlo evaluation of a plan");
    GraphFlags eval_gf;
    DesignFlags eval_df;
    std::string eval_plan_path, eval_out;
    int eval_n_res = 500;
    eval_gf.attach(eval_cmd);
    eval_df.attach(eval_cmd);
    eval_cmd->add_option("--plan", eval_plan_path, "plan JSON from the control subcommand")
        ->required();
    eval_cmd->add_option("--n-res", eval_n_res, "number of RES draws");
    eval_cmd->add_option("--out", eval_out, "output path (stdout when omitted)");

    // --- sweep ---
    auto* sweep_cmd = app.add_subcommand("sweep", "full experiment sweep");
    GraphFlags sweep_gf;
    DesignFlags sweep_df;
    sweep_gf.attach(sweep_cmd);
    sweep_df.attach(sweep_cmd);
    std::string sweep_var = "none";
    std::vector<double> sweep_grid;
    std::vector<std::string> sweep_strategies{"biased_greedy"};
    int sweep_n_graphs = 20, sweep_n_res = 500;
    std::string sweep_csv, sweep_json;
    sweep_cmd->add_option("--sweep-var", sweep_var, "none|p_res|t|m|k|k_nn|p_er");
    sweep_cmd->add_option("--grid", sweep_grid, "sweep grid values");
    sweep_cmd->add_option("--strategies", sweep_strategies, "strategies to compare");
    sweep_cmd->add_option("--n-graphs", sweep_n_graphs, "underlying graph realizations");
    sweep_cmd->add_option("--n-res", sweep_n_res, "RES draws per graph");
    sweep_cmd->add_option("--out", sweep_csv, "CSV output path");
    sweep_cmd->add_option("--json", sweep_json, "JSON output path");
    sweep_cmd->get_option("--seed")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            GraphSource src = gen_gf.source();
            RngStream rng{gen_seed, 0};
            Graph g = src.kind == GraphSource::Kind::ErdosRenyi
                          ? generate_er(src.n, src.p_er, rng, gen_connected)
                          : generate_geometric(src.n, src.k_nn, rng, gen_connected);
            save_edge_list(g, gen_out);
            return 0;
        }

        if (spec->parsed()) {
            TargetSpectrum ts = target_spectrum(parse_spectrum_shape(spec_shape), spec_k);
            json j;
            j["shape"] = spec_shape;
            j["k"] = ts.band.k;
            j["highpass"] = ts.highpass;
            j["coefficients"] = std::vector<double>(
                ts.band.coefficients.data(),
                ts.band.coefficients.data() + ts.band.coefficients.size());
            write_output(j.dump(2), spec_out);
            return 0;
        }

        if (sel_cmd->parsed() || ctl_cmd->parsed()) {
            const bool full = ctl_cmd->parsed();
            const GraphFlags& gf = full ? ctl_gf : sel_gf;
            const DesignFlags& df = full ? ctl_df : sel_df;
            const std::string& strategy = full ? ctl_strategy : sel_strategy;
            ExperimentConfig cfg;
            cfg.source = gf.source();
            df.fill(cfg);
            Graph g = load_or_generate(gf, df.seed);
            ControlPlan plan =
                design_plan(cfg, parse_strategy(strategy), g, RngStream{df.seed, 1});
            json j = full ? plan_to_json(plan)
                          : json{{"selection", plan.selection.indices},
                                 {"predicted_mse", plan.predicted_mse}};
            write_output(j.dump(2), full ? ctl_out : sel_out);
            return 0;
        }

        if (eval_cmd->parsed()) {
            ExperimentConfig cfg;
            cfg.source = eval_gf.source();
            eval_df.fill(cfg);
            Graph g = load_or_generate(eval_gf, eval_df.seed);
            std::ifstream in(eval_plan_path);
            if (!in) throw std::runtime_error("cannot open " + eval_plan_path);
            json pj = json::parse(in);
            ControlPlan plan = plan_from_json(pj);

            DiffusionModel model =
                cfg.model == DiffusionKind::AdjacencyShift
                    ? DiffusionModel::adjacency_shift()
                    : DiffusionModel::laplacian_heat(
                          cfg.epsilon.value_or(DiffusionModel::max_stable_step(g)));
            auto basis = eigendecompose(build_shift(g, model.shift_kind()));
            TargetSpectrum ts = target_spectrum(cfg.shape, cfg.bandwidth);
            Eigen::MatrixXd v_band = ts.highpass
                                         ? basis.eigenvectors.rightCols(cfg.bandwidth).eval()
                                         : basis.eigenvectors.leftCols(cfg.bandwidth).eval();
            Eigen::VectorXd xstar = v_band * ts.band.coefficients;
            Eigen::MatrixXd h = bandlimiting_filter(v_band);

            double sum = 0.0, sq = 0.0;
            RngStream base{eval_df.seed, 2};
            for (int r = 0; r < eval_n_res; ++r) {
                auto traj = simulate(model, g, cfg.p_res, plan.selection, plan.controls,
                                     base.substream(r));
                double err = (h * traj.back() - xstar).squaredNorm() / xstar.squaredNorm();
                sum += err;
                sq += err * err;
            }
            double mean = sum / eval_n_res;
            double var = eval_n_res > 1
                             ? std::max(0.0, (sq - eval_n_res * mean * mean) / (eval_n_res - 1))
                             : 0.0;
            json j;
            j["empirical_mse"] = mean;
            j["stderr"] = std::sqrt(var / eval_n_res);
            j["n_res"] = eval_n_res;
            j["predicted_mse"] = plan.predicted_mse;
            write_output(j.dump(2), eval_out);
            return 0;
        }

        if (sweep_cmd->parsed()) {
            ExperimentConfig cfg;
            cfg.source = sweep_gf.source();
            sweep_df.fill(cfg);
            cfg.sweep = parse_sweep_variable(sweep_var);
            cfg.grid = sweep_grid;
            cfg.n_graphs = sweep_n_graphs;
            cfg.n_res = sweep_n_res;
            cfg.strategies.clear();
            for (const auto& s : sweep_strategies) cfg.strategies.push_back(parse_strategy(s));

            auto results = run(cfg);
            if (!sweep_csv.empty()) emit_csv(results, sweep_csv);
            if (!sweep_json.empty()) emit_json(cfg, results, sweep_json);
            if (sweep_csv.empty() && sweep_json.empty()) std::cout << to_csv(results);

            bool any_feasible = false;
            for (const auto& r : results) any_feasible |= r.feasible;
            return any_feasible ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
