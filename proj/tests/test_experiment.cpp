#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "netctl/experiment.hpp"

using namespace netctl;

TEST_CASE("target spectra") {
    // linear decay: proportional to (1, 0.9, ..., 0.1) for K = 10
    TargetSpectrum lin = target_spectrum(SpectrumShape::LinearDecay, 10);
    CHECK(lin.band.coefficients.norm() == doctest::Approx(1.0));
    for (int i = 0; i < 10; ++i)
        CHECK(lin.band.coefficients(i) / lin.band.coefficients(0) ==
              doctest::Approx(1.0 - 0.1 * i));

    // step low-pass K = 3: (1,1,1)/sqrt(3)
    TargetSpectrum step = target_spectrum(SpectrumShape::StepLowPass, 3);
    CHECK_FALSE(step.highpass);
    for (int i = 0; i < 3; ++i)
        CHECK(step.band.coefficients(i) == doctest::Approx(1.0 / std::sqrt(3.0)));

    // exponential decay K = 3: proportional to (1, e^-1, e^-2)
    TargetSpectrum ex = target_spectrum(SpectrumShape::ExponentialDecay, 3);
    CHECK(ex.band.coefficients(1) / ex.band.coefficients(0) ==
          doctest::Approx(std::exp(-1.0)));
    CHECK(ex.band.coefficients(2) / ex.band.coefficients(0) ==
          doctest::Approx(std::exp(-2.0)));

    CHECK(target_spectrum(SpectrumShape::StepHighPass, 4).highpass);
    CHECK_THROWS(target_spectrum(SpectrumShape::StepLowPass, 0));
}

TEST_CASE("enum round trips") {
    for (auto s : {SpectrumShape::StepLowPass, SpectrumShape::StepHighPass,
                   SpectrumShape::LinearDecay, SpectrumShape::ExponentialDecay})
        CHECK(parse_spectrum_shape(to_string(s)) == s);
    for (auto s : {Strategy::UnbiasedGreedy, Strategy::BiasedGreedy, Strategy::Exhaustive,
                   Strategy::Random, Strategy::DeterministicBaseline, Strategy::ZeroControl})
        CHECK(parse_strategy(to_string(s)) == s);
    for (auto s : {SweepVariable::None, SweepVariable::PRes, SweepVariable::Horizon,
                   SweepVariable::Budget, SweepVariable::Bandwidth, SweepVariable::KNN,
                   SweepVariable::PEr})
        CHECK(parse_sweep_variable(to_string(s)) == s);
    CHECK_THROWS(parse_strategy("bogus"));
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    ExperimentConfig bad = cfg;
    bad.p_res = 0.0;
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.sweep = SweepVariable::PRes;  // no grid
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.strategies.clear();
    CHECK_THROWS(bad.validate());
}

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.source.kind = GraphSource::Kind::ErdosRenyi;
    cfg.source.n = 12;
    cfg.source.p_er = 0.5;
    cfg.p_res = 0.9;
    cfg.horizon = 3;
    cfg.budget = 3;
    cfg.bandwidth = 4;
    cfg.shape = SpectrumShape::LinearDecay;
    cfg.n_graphs = 2;
    cfg.n_res = 50;
    cfg.seed = 1234;
    return cfg;
}

}  // namespace

TEST_CASE("zero-control strategy reports the MSE floor exactly") {
    ExperimentConfig cfg = tiny_config();
    cfg.strategies = {Strategy::ZeroControl};
    auto results = run(cfg);
    REQUIRE(results.size() == 1);
    CHECK(results[0].feasible);
    CHECK(results[0].mean_mse == 1.0);
    CHECK(results[0].stderr_res == 0.0);
}

TEST_CASE("deterministic cells: p_res = 1 with unbiased greedy is exact") {
    ExperimentConfig cfg = tiny_config();
    cfg.p_res = 1.0;
    cfg.strategies = {Strategy::UnbiasedGreedy};
    auto results = run(cfg);
    REQUIRE(results.size() == 1);
    CHECK(results[0].feasible);
    CHECK(results[0].mean_mse <= 1e-10);
}

TEST_CASE("infeasible cells are recorded, not fatal") {
    ExperimentConfig cfg = tiny_config();
    cfg.budget = 1;  // below ceil(K/T) = 2
    cfg.strategies = {Strategy::UnbiasedGreedy, Strategy::ZeroControl};
    auto results = run(cfg);
    REQUIRE(results.size() == 2);
    CHECK_FALSE(results[0].feasible);
    CHECK_FALSE(results[0].error.empty());
    CHECK(std::isnan(results[0].mean_mse));
    CHECK(results[1].feasible);
}

TEST_CASE("sweep shape and CSV layout") {
    ExperimentConfig cfg = tiny_config();
    cfg.n_res = 20;
    cfg.sweep = SweepVariable::PRes;
    cfg.grid = {0.8, 0.9, 1.0};
    cfg.strategies = {Strategy::BiasedGreedy, Strategy::ZeroControl};
    auto results = run(cfg);
    REQUIRE(results.size() == 6);  // 3 grid points x 2 strategies

    std::string csv = to_csv(results);
    CHECK(csv.rfind("sweep_var,value,strategy,mean_mse,std_graphs,stderr_res,n_graphs,n_res,seed\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 rows
    CHECK(csv.find("p_res,0.8,biased_greedy,") != std::string::npos);
    CHECK(csv.find(",zero,") != std::string::npos);

    // identical config + seed: byte-identical CSV
    auto again = run(cfg);
    CHECK(to_csv(again) == csv);

    // different seed: different sampled results
    ExperimentConfig other = cfg;
    other.seed = 4321;
    CHECK(to_csv(run(other)) != csv);
}

TEST_CASE("JSON mirrors the CSV rows and echoes the config") {
    ExperimentConfig cfg = tiny_config();
    cfg.n_res = 20;
    cfg.strategies = {Strategy::BiasedGreedy};
    auto results = run(cfg);
    auto j = nlohmann::json::parse(to_json(cfg, results));
    CHECK(j["config"]["t"] == 3);
    CHECK(j["config"]["k"] == 4);
    CHECK(j["config"]["seed"] == 1234);
    CHECK(j["config"]["graph"]["type"] == "er");
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["strategy"] == "biased_greedy");
    CHECK(j["results"][0]["mean_mse"].get<double>() ==
          doctest::Approx(results[0].mean_mse).epsilon(1e-12));
    CHECK(j["results"][0]["n_res"] == 20);
}

TEST_CASE("design/evaluation separation: plans ignore the evaluation stream") {
    ExperimentConfig cfg = tiny_config();
    Graph g = generate_er(cfg.source.n, cfg.source.p_er, RngStream{9, 9}, true);
    ControlPlan a = design_plan(cfg, Strategy::BiasedGreedy, g, RngStream{1, 1});
    ControlPlan b = design_plan(cfg, Strategy::BiasedGreedy, g, RngStream{2, 2});
    CHECK(a.selection.indices == b.selection.indices);
    CHECK((a.controls.stacked() - b.controls.stacked()).norm() == 0.0);
}

TEST_CASE("strategy orderings on one graph") {
    ExperimentConfig cfg = tiny_config();
    cfg.budget = 2;
    Graph g = generate_er(cfg.source.n, cfg.source.p_er, RngStream{77, 0}, true);
    ControlPlan greedy = design_plan(cfg, Strategy::BiasedGreedy, g, RngStream{0, 0});
    ControlPlan best = design_plan(cfg, Strategy::Exhaustive, g, RngStream{0, 0});
    CHECK(best.predicted_mse <= greedy.predicted_mse + 1e-10);

    double random_total = 0.0;
    int count = 0;
    for (int r = 0; r < 20; ++r) {
        try {
            ControlPlan rnd = design_plan(cfg, Strategy::Random, g, RngStream{500, (std::uint64_t)r});
            random_total += rnd.predicted_mse;
            ++count;
        } catch (const std::exception&) {
        }
    }
    REQUIRE(count > 0);
    CHECK(greedy.predicted_mse <= random_total / count + 1e-10);
}
