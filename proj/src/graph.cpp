#include "redist/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace redist {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    if (n < 0)
        throw ParseError("negative vertex count");
    adj_.assign(n, {});
    for (auto &[u, v] : edges) {
        if (u == v)
            throw InvalidEdgeError("self-loop at vertex " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidEdgeError("endpoint out of range: " + std::to_string(u) + " " +
                                   std::to_string(v));
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i] == edges[i + 1])
            throw InvalidEdgeError("duplicate edge " + std::to_string(edges[i].first) + " " +
                                   std::to_string(edges[i].second));
    edges_ = std::move(edges);
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto &nb : adj_)
        std::sort(nb.begin(), nb.end());
}

bool Graph::hasEdge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        return false;
    const auto &nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph loadGraph(const std::string &text) {
    std::istringstream in(text);
    long long n, m;
    if (!(in >> n >> m))
        throw ParseError("expected header line \"n m\"");
    if (n < 0 || m < 0)
        throw ParseError("negative counts in header");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u, v;
        if (!(in >> u >> v))
            throw ParseError("expected edge line " + std::to_string(i + 1));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    long long extra;
    if (in >> extra)
        throw ParseError("trailing data after " + std::to_string(m) + " edges");
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string serializeGraph(const Graph &g) {
    std::ostringstream out;
    out << g.numVertices() << ' ' << g.numEdges() << '\n';
    for (auto [u, v] : g.edges())
        out << u << ' ' << v << '\n';
    return out.str();
}

bool isConnected(const Graph &g) {
    int n = g.numVertices();
    if (n == 0)
        return false;
    auto dist = bfsDistances(g, 0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

bool isConnectedSubset(const Graph &g, const std::vector<int> &vertices) {
    if (vertices.empty())
        return false;
    std::vector<char> inSet(g.numVertices(), 0), seen(g.numVertices(), 0);
    for (int v : vertices)
        inSet[v] = 1;
    std::vector<int> stack{vertices[0]};
    seen[vertices[0]] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (inSet[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == vertices.size();
}

std::vector<int> bfsDistances(const Graph &g, int source) {
    std::vector<int> dist(g.numVertices(), -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return dist;
}

namespace {

// Articulation check by brute force over single-vertex removals. Fine at the
// sizes this toolkit targets; the block tree uses the linear-time DFS instead.
bool hasCutVertex(const Graph &g) {
    int n = g.numVertices();
    for (int x = 0; x < n; ++x) {
        std::vector<int> rest;
        rest.reserve(n - 1);
        for (int v = 0; v < n; ++v)
            if (v != x)
                rest.push_back(v);
        if (!rest.empty() && !isConnectedSubset(g, rest))
            return true;
    }
    return false;
}

} // namespace

ConnectivityClass connectivityClass(const Graph &g) {
    int n = g.numVertices();
    if (n == 0)
        return ConnectivityClass::Disconnected;
    if (!isConnected(g))
        return ConnectivityClass::Disconnected;
    if (n == 1)
        return ConnectivityClass::ConnectedNotBiconnected;
    if (n == 2)
        return ConnectivityClass::Biconnected; // two adjacent vertices form a block
    return hasCutVertex(g) ? ConnectivityClass::ConnectedNotBiconnected
                           : ConnectivityClass::Biconnected;
}

const char *toString(ConnectivityClass c) {
    switch (c) {
    case ConnectivityClass::Disconnected:
        return "disconnected";
    case ConnectivityClass::ConnectedNotBiconnected:
        return "connected-not-biconnected";
    default:
        return "biconnected";
    }
}

} // namespace redist
