#include "corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "redist/spqr.hpp"

namespace redist::testsupport {

namespace {

using EdgeMask = uint64_t;

int edgeBit(int u, int v, int n) {
    if (u > v)
        std::swap(u, v);
    int bit = 0;
    for (int a = 0; a < u; ++a)
        bit += n - 1 - a;
    return bit + (v - u - 1);
}

EdgeMask maskOf(const Graph &g) {
    EdgeMask m = 0;
    for (auto [u, v] : g.edges())
        m |= EdgeMask(1) << edgeBit(u, v, g.numVertices());
    return m;
}

Graph graphOf(EdgeMask m, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (m >> edgeBit(u, v, n) & 1)
                edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

EdgeMask canonicalMask(EdgeMask m, int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    EdgeMask best = ~EdgeMask(0);
    do {
        EdgeMask img = 0;
        for (int u = 0; u < n && img < best; ++u)
            for (int v = u + 1; v < n; ++v)
                if (m >> edgeBit(u, v, n) & 1)
                    img |= EdgeMask(1) << edgeBit(perm[u], perm[v], n);
        if (img < best)
            best = img;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

const std::vector<Graph> &connectedGraphs(int n) {
    static std::map<int, std::vector<Graph>> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::vector<Graph> out;
    if (n == 1) {
        out.push_back(Graph(1, {}));
    } else {
        const auto &smaller = connectedGraphs(n - 1);
        std::set<EdgeMask> seen;
        for (const Graph &g : smaller) {
            for (unsigned sub = 1; sub < (1u << (n - 1)); ++sub) {
                std::vector<std::pair<int, int>> edges = g.edges();
                for (int v = 0; v < n - 1; ++v)
                    if (sub >> v & 1)
                        edges.push_back({v, n - 1});
                Graph cand(n, std::move(edges));
                EdgeMask canon = canonicalMask(maskOf(cand), n);
                if (seen.insert(canon).second)
                    out.push_back(graphOf(canon, n));
            }
        }
    }
    return cache.emplace(n, std::move(out)).first->second;
}

std::vector<Graph> biconnectedGraphs(int n) {
    std::vector<Graph> out;
    for (const Graph &g : connectedGraphs(n))
        if (bruteBiconnected(g))
            out.push_back(g);
    return out;
}

std::vector<Graph> sampledConnected(int n, int count) {
    const auto &all = connectedGraphs(n);
    std::vector<Graph> out;
    for (int i = 0; i < count && i < static_cast<int>(all.size()); ++i)
        out.push_back(all[i]);
    return out;
}

std::vector<Graph> nonBiconnectedCorpus(int maxN, int count) {
    std::vector<Graph> out;
    auto add = [&](const Graph &g) {
        if (static_cast<int>(out.size()) >= count)
            return;
        if (g.numVertices() <= maxN && bruteConnected(g) && !bruteBiconnected(g))
            out.push_back(g);
    };
    for (int n = 3; n <= maxN; ++n)
        add(path(n));
    add(triangleStar());
    add(barbell());
    for (int legs = 3; legs <= maxN - 1; ++legs)
        add(star(legs));
    // caterpillar/broom shapes
    for (int n = 5; n <= maxN; ++n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i + 1 < n - 2; ++i)
            e.push_back({i, i + 1});
        e.push_back({1, n - 2});
        e.push_back({2, n - 1});
        add(Graph(n, std::move(e)));
    }
    // LCG-generated graphs
    Lcg rng(0x99dc0de5eedULL);
    while (static_cast<int>(out.size()) < count) {
        int n = 4 + rng.below(maxN - 3);
        std::vector<std::pair<int, int>> e;
        for (int v = 1; v < n; ++v)
            e.push_back({rng.below(v), v}); // random spanning tree
        std::set<std::pair<int, int>> es(e.begin(), e.end());
        int extra = rng.below(n);
        for (int t = 0; t < extra; ++t) {
            int u = rng.below(n), v = rng.below(n);
            if (u == v)
                continue;
            if (u > v)
                std::swap(u, v);
            es.insert({u, v});
        }
        add(Graph(n, std::vector<std::pair<int, int>>(es.begin(), es.end())));
    }
    return out;
}

Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i)
        e.push_back({i, i + 1});
    return Graph(n, std::move(e));
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        e.push_back({i, (i + 1) % n});
    return Graph(n, std::move(e));
}

Graph completeGraph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            e.push_back({u, v});
    return Graph(n, std::move(e));
}

Graph star(int legs) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= legs; ++i)
        e.push_back({0, i});
    return Graph(legs + 1, std::move(e));
}

Graph triangleStar() {
    std::vector<std::pair<int, int>> e{{0, 1}, {0, 4}, {0, 7}, {1, 2}, {1, 3}, {2, 3},
                                       {4, 5}, {4, 6}, {5, 6}, {7, 8}, {7, 9}, {8, 9}};
    return Graph(10, std::move(e));
}

Graph barbell() {
    return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

Graph theta() {
    return Graph(5, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}});
}

bool bruteConnected(const Graph &g) {
    std::vector<int> all(g.numVertices());
    std::iota(all.begin(), all.end(), 0);
    return !all.empty() && isConnectedSubset(g, all);
}

bool bruteBiconnected(const Graph &g) {
    int n = g.numVertices();
    if (n <= 1)
        return false;
    if (!bruteConnected(g))
        return false;
    if (n == 2)
        return g.numEdges() == 1;
    return bruteCutVertices(g).empty();
}

std::vector<int> bruteCutVertices(const Graph &g) {
    std::vector<int> cuts;
    int n = g.numVertices();
    for (int x = 0; x < n; ++x) {
        std::vector<int> rest;
        for (int v = 0; v < n; ++v)
            if (v != x)
                rest.push_back(v);
        if (!rest.empty() && !isConnectedSubset(g, rest))
            cuts.push_back(x);
    }
    return cuts;
}

int bruteM(const Graph &g) {
    BlockTree t = blockTree(g);
    auto leaves = t.leafBlocks();
    int best = -1;
    for (size_t i = 0; i < leaves.size(); ++i)
        for (size_t j = i + 1; j < leaves.size(); ++j) {
            int c1 = t.leafBlockCut(leaves[i]);
            int c2 = t.leafBlockCut(leaves[j]);
            int dist = bfsDistances(g, c1)[c2];
            int p = static_cast<int>(t.blocks[leaves[i]].size() + t.blocks[leaves[j]].size()) +
                    dist - 1;
            if (best < 0 || p < best)
                best = p;
        }
    return best;
}

bool spqrReassembles(const Graph &g) {
    SpqrTree t = spqrTree(g);
    std::set<std::pair<int, int>> realEdges;
    for (const auto &node : t.nodes) {
        for (const auto &e : node.edges) {
            if (e.isVirtual)
                continue;
            if (!realEdges.insert({e.u, e.v}).second)
                return false; // a real edge must appear in exactly one skeleton
        }
    }
    std::set<std::pair<int, int>> expected(g.edges().begin(), g.edges().end());
    return realEdges == expected;
}

} // namespace redist::testsupport
