#ifndef REDIST_GRAPH_HPP
#define REDIST_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "redist/errors.hpp"

namespace redist {

// Simple undirected graph on vertex ids 0..n-1. Immutable once built.
class Graph {
  public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int numVertices() const { return n_; }
    int numEdges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>> &edges() const { return edges_; }
    const std::vector<int> &neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    bool hasEdge(int u, int v) const;

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_; // normalized u < v, sorted
    std::vector<std::vector<int>> adj_;      // sorted neighbor lists
};

Graph loadGraph(const std::string &text);
std::string serializeGraph(const Graph &g);

enum class ConnectivityClass { Disconnected, ConnectedNotBiconnected, Biconnected };

ConnectivityClass connectivityClass(const Graph &g);
const char *toString(ConnectivityClass c);

bool isConnected(const Graph &g);
// Connectivity of the subgraph induced by `vertices` (empty set counts as disconnected).
bool isConnectedSubset(const Graph &g, const std::vector<int> &vertices);

// Breadth-first distances from `source`; unreachable vertices get -1.
std::vector<int> bfsDistances(const Graph &g, int source);

} // namespace redist

#endif
