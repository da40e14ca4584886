#include "netctl/random_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace netctl {

namespace {
constexpr int kConnectivityAttempts = 1000;
}

Graph sample_res(const Graph& g, const ResModel& model, std::mt19937_64& eng) {
    if (!(model.p > 0.0 && model.p <= 1.0))
        throw std::invalid_argument("sample_res: p must be in (0, 1]");
    std::vector<Edge> kept;
    kept.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
        double u = uniform01(eng);
        if (model.p >= 1.0 || u < model.p) kept.push_back(e);
    }
    return Graph(g.node_count(), std::move(kept));
}

Graph sample_res(const Graph& g, const ResModel& model, const RngStream& rng) {
    auto eng = rng.make_engine();
    return sample_res(g, model, eng);
}

Graph generate_er(int n, double p_er, const RngStream& rng, bool require_connected) {
    if (n < 2) throw std::invalid_argument("generate_er: need n >= 2");
    if (!(p_er > 0.0 && p_er <= 1.0))
        throw std::invalid_argument("generate_er: p_er must be in (0, 1]");
    auto eng = rng.make_engine();
    for (int attempt = 0; attempt < kConnectivityAttempts; ++attempt) {
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p_er >= 1.0 || uniform01(eng) < p_er) edges.push_back(Edge{i, j, 1.0});
        Graph g(n, std::move(edges));
        if (!require_connected || g.is_connected()) return g;
    }
    throw std::runtime_error("generate_er: no connected realization within 1000 attempts");
}

Graph generate_geometric(int n, int k_nn, const RngStream& rng, bool require_connected) {
    if (k_nn < 1 || k_nn >= n)
        throw std::invalid_argument("generate_geometric: need n > k_nn >= 1");
    auto eng = rng.make_engine();
    for (int attempt = 0; attempt < kConnectivityAttempts; ++attempt) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = uniform01(eng);
            y[i] = uniform01(eng);
        }
        // kNN by squared distance, ties broken by lower node index; edge set
        // is the union over both endpoints so the graph stays undirected.
        std::set<std::pair<int, int>> pairs;
        std::vector<int> order;
        for (int i = 0; i < n; ++i) {
            order.resize(n);
            std::iota(order.begin(), order.end(), 0);
            auto d2 = [&](int a) {
                double dx = x[i] - x[a], dy = y[i] - y[a];
                return dx * dx + dy * dy;
            };
            order.erase(order.begin() + i);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return d2(a) < d2(b); });
            for (int r = 0; r < k_nn; ++r) {
                int j = order[r];
                pairs.insert({std::min(i, j), std::max(i, j)});
            }
        }
        std::vector<Edge> edges;
        edges.reserve(pairs.size());
        for (auto [i, j] : pairs) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            edges.push_back(Edge{i, j, std::exp(-(dx * dx + dy * dy))});
        }
        Graph g(n, std::move(edges));
        if (!require_connected || g.is_connected()) return g;
    }
    throw std::runtime_error("generate_geometric: no connected realization within 1000 attempts");
}

}  // namespace netctl
