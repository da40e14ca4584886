#include "netctl/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace netctl {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("Graph: negative node count");
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges_) {
        if (e.i == e.j) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(e.i));
        if (e.i > e.j) std::swap(e.i, e.j);
        if (e.i < 0 || e.j >= n_)
            throw std::invalid_argument("Graph: edge index out of range");
        if (!(e.w > 0.0)) throw std::invalid_argument("Graph: non-positive edge weight");
        if (!seen.insert({e.i, e.j}).second)
            throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(e.i) + "," +
                                        std::to_string(e.j) + ")");
    }
}

Eigen::MatrixXd Graph::adjacency() const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& e : edges_) {
        w(e.i, e.j) = e.w;
        w(e.j, e.i) = e.w;
    }
    return w;
}

Eigen::VectorXd Graph::degrees() const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
    for (const auto& e : edges_) {
        d(e.i) += e.w;
        d(e.j) += e.w;
    }
    return d;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<std::vector<int>> adj(n_);
    for (const auto& e : edges_) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    std::vector<char> visited(n_, 0);
    std::vector<int> stack{0};
    visited[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v]) {
            if (!visited[u]) {
                visited[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == n_;
}

bool Graph::has_same_edges(const Graph& other) const {
    if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
    auto key = [](const Graph& g) {
        std::set<std::pair<int, int>> s;
        for (const auto& e : g.edges()) s.insert({e.i, e.j});
        return s;
    };
    return key(*this) == key(other);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        if (n < 0) {
            if (ss >> n) {
                if (n < 0)
                    throw std::runtime_error("load_edge_list: " + path + ":" +
                                             std::to_string(lineno) + ": negative node count");
                continue;
            }
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(lineno) +
                                     ": expected node count");
        }
        int i, j;
        if (!(ss >> i)) continue;  // blank line
        if (!(ss >> j))
            throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(lineno) +
                                     ": expected \"i j [w]\"");
        double w = 1.0;
        ss >> w;
        edges.push_back(Edge{i, j, w});
        if (i == j)
            throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(lineno) +
                                     ": self-loop");
        if (!(w > 0.0))
            throw std::runtime_error("load_edge_list: " + path + ":" + std::to_string(lineno) +
                                     ": non-positive weight");
    }
    if (n < 0) throw std::runtime_error("load_edge_list: " + path + ": empty file");
    try {
        return Graph(n, std::move(edges));
    } catch (const std::exception& e) {
        throw std::runtime_error("load_edge_list: " + path + ": " + e.what());
    }
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_edge_list: cannot open " + path);
    out << g.node_count() << "\n";
    char buf[96];
    for (const auto& e : g.edges()) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", e.i, e.j, e.w);
        out << buf;
    }
    if (!out) throw std::runtime_error("save_edge_list: write failed for " + path);
}

}  // namespace netctl
