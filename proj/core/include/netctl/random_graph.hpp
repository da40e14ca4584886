#ifndef NETCTL_RANDOM_GRAPH_HPP
#define NETCTL_RANDOM_GRAPH_HPP

#include "netctl/graph.hpp"
#include "netctl/rng.hpp"

namespace netctl {

/// Random edge sampling model: each underlying edge is kept independently
/// with probability p at every time step.
struct ResModel {
    double p = 1.0;
};

/// One RES(p) realization: node set unchanged, kept edges retain weights.
Graph sample_res(const Graph& g, const ResModel& model, std::mt19937_64& eng);
Graph sample_res(const Graph& g, const ResModel& model, const RngStream& rng);

/// Erdos-Renyi graph with unit weights. If require_connected, resamples
/// until connected (at most 1000 attempts).
Graph generate_er(int n, double p_er, const RngStream& rng, bool require_connected);

/// Geometric graph: nodes uniform in [0,1]^2, Gaussian kernel weights
/// w_ij = exp(-d_ij^2), union-symmetrized k-nearest-neighbor edges.
Graph generate_geometric(int n, int k_nn, const RngStream& rng, bool require_connected);

}  // namespace netctl

#endif
