#ifndef NETCTL_EXPERIMENT_HPP
#define NETCTL_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "netctl/control.hpp"

namespace netctl {

enum class SpectrumShape { StepLowPass, StepHighPass, LinearDecay, ExponentialDecay };
enum class Strategy {
    UnbiasedGreedy,
    BiasedGreedy,
    Exhaustive,
    Random,
    DeterministicBaseline,
    ZeroControl
};
enum class SweepVariable { None, PRes, Horizon, Budget, Bandwidth, KNN, PEr };

SpectrumShape parse_spectrum_shape(const std::string& s);
Strategy parse_strategy(const std::string& s);
SweepVariable parse_sweep_variable(const std::string& s);
std::string to_string(SpectrumShape s);
std::string to_string(Strategy s);
std::string to_string(SweepVariable s);

struct GraphSource {
    enum class Kind { ErdosRenyi, Geometric, EdgeList } kind = Kind::Geometric;
    int n = 100;
    double p_er = 0.5;
    int k_nn = 5;
    std::string path;  // for EdgeList
};

/// In-band target spectrum; for StepHighPass the band is the last k
/// frequencies under the module's low-frequency-first ordering.
struct TargetSpectrum {
    BandSpec band;
    bool highpass = false;
};

/// Unit-energy target spectrum for the given shape.
TargetSpectrum target_spectrum(SpectrumShape shape, int k);

struct ExperimentConfig {
    GraphSource source;
    DiffusionKind model = DiffusionKind::LaplacianHeat;
    std::optional<double> epsilon;  // default: largest stable step
    double p_res = 0.95;
    int horizon = 8;
    int budget = 8;
    int bandwidth = 10;
    SpectrumShape shape = SpectrumShape::LinearDecay;
    std::vector<Strategy> strategies{Strategy::BiasedGreedy};
    int n_graphs = 20;
    int n_res = 500;
    std::uint64_t seed = 0;
    SweepVariable sweep = SweepVariable::None;
    std::vector<double> grid;

    void validate() const;
};

struct ResultRecord {
    SweepVariable sweep = SweepVariable::None;
    double value = 0.0;
    Strategy strategy = Strategy::BiasedGreedy;
    double mean_mse = 0.0;    // normalized, averaged over graphs and RES draws
    double std_graphs = 0.0;  // std of per-graph means
    double stderr_res = 0.0;  // standard error over pooled RES draws
    int n_graphs = 0;
    int n_res = 0;
    std::uint64_t seed = 0;
    bool feasible = true;
    std::string error;
};

/// Designs a plan for one concrete graph/strategy and returns it; throws on
/// infeasible designs.
ControlPlan design_plan(const ExperimentConfig& cfg, Strategy strategy, const Graph& g,
                        const RngStream& rng);

/// Full sweep: for every grid cell and strategy, builds the underlying
/// graphs, designs the plan on the expected graph, and evaluates the
/// empirical normalized MSE over fresh RES draws.
std::vector<ResultRecord> run(const ExperimentConfig& cfg);

std::string to_csv(const std::vector<ResultRecord>& results);
std::string to_json(const ExperimentConfig& cfg, const std::vector<ResultRecord>& results);

void emit_csv(const std::vector<ResultRecord>& results, const std::string& path);
void emit_json(const ExperimentConfig& cfg, const std::vector<ResultRecord>& results,
               const std::string& path);

}  // namespace netctl

#endif
