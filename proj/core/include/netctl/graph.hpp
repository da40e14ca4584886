#ifndef NETCTL_GRAPH_HPP
#define NETCTL_GRAPH_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

namespace netctl {

/// Undirected weighted edge, stored with i < j.
struct Edge {
    int i = 0;
    int j = 0;
    double w = 1.0;
};

/// Undirected weighted graph given by a node count and an edge list.
/// No self-loops, no duplicate edges, all weights positive.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int node_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Dense symmetric adjacency matrix W.
    Eigen::MatrixXd adjacency() const;

    /// Degree vector d = W 1.
    Eigen::VectorXd degrees() const;

    bool is_connected() const;

    bool has_same_edges(const Graph& other) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Parses the edge-list text format: first line is the node count, each
/// following non-empty, non-'#' line is "i j [w]" with 0-based indices
/// and an optional positive weight defaulting to 1.
Graph load_edge_list(const std::string& path);

/// Writes a graph in the same edge-list format.
void save_edge_list(const Graph& g, const std::string& path);

}  // namespace netctl

#endif
