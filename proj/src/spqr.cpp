#include "redist/spqr.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace redist {

int SpqrNode::virtualCount() const {
    int c = 0;
    for (const auto &e : edges)
        if (e.isVirtual)
            ++c;
    return c;
}

std::vector<int> SpqrTree::neighborsOf(int node) const {
    std::vector<int> out;
    for (auto [a, b] : treeAdjacency) {
        if (a == node)
            out.push_back(b);
        if (b == node)
            out.push_back(a);
    }
    return out;
}

namespace {

struct MEdge {
    int u, v;
    bool isVirtual;
    long long pairId;
};

struct MGraph {
    std::vector<int> verts; // sorted
    std::vector<MEdge> edges;
};

struct Builder {
    std::vector<SpqrNode> nodes;
    long long nextPair = 0;

    static bool isCycle(const MGraph &h) {
        if (h.verts.size() < 3 || h.edges.size() != h.verts.size())
            return false;
        std::map<int, int> deg;
        std::set<std::pair<int, int>> seen;
        for (const auto &e : h.edges) {
            auto key = std::minmax(e.u, e.v);
            if (!seen.insert({key.first, key.second}).second)
                return false; // parallel edges
            ++deg[e.u];
            ++deg[e.v];
        }
        for (int v : h.verts)
            if (deg[v] != 2)
                return false;
        return true; // connected by construction (split components are connected)
    }

    // Separation classes of the pair (a, b): each direct a-b edge alone, and
    // one class per component of H - {a, b} (component edges plus the edges
    // attaching the component to a and b).
    static std::vector<std::vector<int>> separationClasses(const MGraph &h, int a, int b) {
        std::map<int, int> comp;
        for (int v : h.verts)
            if (v != a && v != b)
                comp[v] = -1;
        int nc = 0;
        for (auto &[v0, c0] : comp) {
            if (c0 != -1)
                continue;
            c0 = nc;
            std::vector<int> stack{v0};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (const auto &e : h.edges) {
                    int y = -1;
                    if (e.u == x)
                        y = e.v;
                    else if (e.v == x)
                        y = e.u;
                    else
                        continue;
                    if (y == a || y == b)
                        continue;
                    auto it = comp.find(y);
                    if (it != comp.end() && it->second == -1) {
                        it->second = nc;
                        stack.push_back(y);
                    }
                }
            }
            ++nc;
        }
        std::vector<std::vector<int>> classes(nc);
        for (int i = 0; i < static_cast<int>(h.edges.size()); ++i) {
            const auto &e = h.edges[i];
            bool uIn = (e.u == a || e.u == b), vIn = (e.v == a || e.v == b);
            if (uIn && vIn)
                classes.push_back({i}); // direct edge, its own class
            else
                classes[uIn ? comp[e.v] : comp[e.u]].push_back(i);
        }
        classes.erase(std::remove_if(classes.begin(), classes.end(),
                                     [](const std::vector<int> &c) { return c.empty(); }),
                      classes.end());
        return classes;
    }

    static bool isSplitPair(const std::vector<std::vector<int>> &classes) {
        if (classes.size() >= 3)
            return true;
        return classes.size() == 2 && classes[0].size() >= 2 && classes[1].size() >= 2;
    }

    static MGraph subgraph(const MGraph &h, const std::vector<int> &edgeIdxs) {
        MGraph out;
        std::set<int> vs;
        for (int i : edgeIdxs) {
            out.edges.push_back(h.edges[i]);
            vs.insert(h.edges[i].u);
            vs.insert(h.edges[i].v);
        }
        out.verts.assign(vs.begin(), vs.end());
        return out;
    }

    int makeNode(char type, const MGraph &h) {
        SpqrNode node;
        node.type = type;
        node.vertices = h.verts;
        for (const auto &e : h.edges)
            node.edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.isVirtual, e.pairId});
        std::sort(node.edges.begin(), node.edges.end(), [](const SkelEdge &x, const SkelEdge &y) {
            return std::tie(x.u, x.v, x.isVirtual, x.pairId) <
                   std::tie(y.u, y.v, y.isVirtual, y.pairId);
        });
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size()) - 1;
    }

    void decompose(MGraph h) {
        if (h.verts.size() == 2) {
            makeNode('P', h);
            return;
        }
        if (isCycle(h)) {
            makeNode('S', h);
            return;
        }
        // lexicographically smallest split pair
        for (size_t ai = 0; ai < h.verts.size(); ++ai) {
            for (size_t bi = ai + 1; bi < h.verts.size(); ++bi) {
                int a = h.verts[ai], b = h.verts[bi];
                auto classes = separationClasses(h, a, b);
                if (!isSplitPair(classes))
                    continue;
                if (classes.size() == 2) {
                    long long pid = nextPair++;
                    for (int side = 0; side < 2; ++side) {
                        MGraph part = subgraph(h, classes[side]);
                        part.edges.push_back({a, b, true, pid});
                        if (!std::binary_search(part.verts.begin(), part.verts.end(), a))
                            part.verts.insert(
                                std::lower_bound(part.verts.begin(), part.verts.end(), a), a);
                        if (!std::binary_search(part.verts.begin(), part.verts.end(), b))
                            part.verts.insert(
                                std::lower_bound(part.verts.begin(), part.verts.end(), b), b);
                        decompose(std::move(part));
                    }
                } else {
                    MGraph bond;
                    bond.verts = {std::min(a, b), std::max(a, b)};
                    for (const auto &cls : classes) {
                        if (cls.size() == 1) {
                            bond.edges.push_back(h.edges[cls[0]]); // inline single edge
                        } else {
                            long long pid = nextPair++;
                            bond.edges.push_back({a, b, true, pid});
                            MGraph part = subgraph(h, cls);
                            part.edges.push_back({a, b, true, pid});
                            if (!std::binary_search(part.verts.begin(), part.verts.end(), a))
                                part.verts.insert(
                                    std::lower_bound(part.verts.begin(), part.verts.end(), a), a);
                            if (!std::binary_search(part.verts.begin(), part.verts.end(), b))
                                part.verts.insert(
                                    std::lower_bound(part.verts.begin(), part.verts.end(), b), b);
                            decompose(std::move(part));
                        }
                    }
                    makeNode('P', bond);
                }
                return;
            }
        }
        makeNode('R', h); // 3-connected
    }
};

std::map<long long, std::pair<int, int>> pairOwnership(const std::vector<SpqrNode> &nodes) {
    std::map<long long, std::pair<int, int>> owners;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        for (const auto &e : nodes[i].edges)
            if (e.isVirtual) {
                auto it = owners.find(e.pairId);
                if (it == owners.end())
                    owners[e.pairId] = {i, -1};
                else
                    it->second.second = i;
            }
    return owners;
}

// Merge adjacent S/S and P/P nodes until none remain.
std::vector<SpqrNode> canonicalize(std::vector<SpqrNode> nodes) {
    for (;;) {
        auto owners = pairOwnership(nodes);
        long long mergePair = -1;
        for (auto &[pid, ab] : owners) {
            auto [i, j] = ab;
            assert(j >= 0);
            if (nodes[i].type == nodes[j].type && nodes[i].type != 'R') {
                mergePair = pid;
                break;
            }
        }
        if (mergePair < 0)
            return nodes;
        auto [i, j] = owners[mergePair];
        SpqrNode merged;
        merged.type = nodes[i].type;
        std::set<int> vs(nodes[i].vertices.begin(), nodes[i].vertices.end());
        vs.insert(nodes[j].vertices.begin(), nodes[j].vertices.end());
        merged.vertices.assign(vs.begin(), vs.end());
        for (int t : {i, j})
            for (const auto &e : nodes[t].edges)
                if (!(e.isVirtual && e.pairId == mergePair))
                    merged.edges.push_back(e);
        std::sort(merged.edges.begin(), merged.edges.end(),
                  [](const SkelEdge &x, const SkelEdge &y) {
                      return std::tie(x.u, x.v, x.isVirtual, x.pairId) <
                             std::tie(y.u, y.v, y.isVirtual, y.pairId);
                  });
        std::vector<SpqrNode> next;
        for (int t = 0; t < static_cast<int>(nodes.size()); ++t)
            if (t != i && t != j)
                next.push_back(std::move(nodes[t]));
        next.push_back(std::move(merged));
        nodes = std::move(next);
    }
}

} // namespace

SpqrTree spqrTree(const Graph &g) {
    if (g.numVertices() < 3 || connectivityClass(g) != ConnectivityClass::Biconnected)
        throw NotBiconnectedError("spqr_tree requires a biconnected graph with n >= 3");

    Builder b;
    MGraph h;
    h.verts.resize(g.numVertices());
    for (int v = 0; v < g.numVertices(); ++v)
        h.verts[v] = v;
    for (auto [u, v] : g.edges())
        h.edges.push_back({u, v, false, -1});
    b.decompose(std::move(h));

    SpqrTree t;
    t.nodes = canonicalize(std::move(b.nodes));
    t.pairOwners = pairOwnership(t.nodes);
    for (auto &[pid, ab] : t.pairOwners)
        t.treeAdjacency.push_back({std::min(ab.first, ab.second), std::max(ab.first, ab.second)});
    std::sort(t.treeAdjacency.begin(), t.treeAdjacency.end());
    t.treeAdjacency.erase(std::unique(t.treeAdjacency.begin(), t.treeAdjacency.end()),
                          t.treeAdjacency.end());

    // Deterministic root: lexicographically smallest vertex list.
    t.rootNode = 0;
    for (int i = 1; i < static_cast<int>(t.nodes.size()); ++i)
        if (t.nodes[i].vertices < t.nodes[t.rootNode].vertices)
            t.rootNode = i;

    // DFS with children ordered by vertex list.
    std::vector<char> seen(t.nodes.size(), 0);
    std::vector<int> stack{t.rootNode};
    seen[t.rootNode] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        t.dfsOrder.push_back(x);
        auto nb = t.neighborsOf(x);
        std::sort(nb.begin(), nb.end(),
                  [&](int p, int q) { return t.nodes[p].vertices < t.nodes[q].vertices; });
        for (auto it = nb.rbegin(); it != nb.rend(); ++it)
            if (!seen[*it]) {
                seen[*it] = 1;
                stack.push_back(*it);
            }
    }
    for (int x : t.dfsOrder) {
        int deg = static_cast<int>(t.neighborsOf(x).size());
        if (deg <= 1)
            t.leafOrder.push_back(x);
    }
    return t;
}

std::pair<int, int> leafVirtualEdge(const SpqrNode &node) {
    for (const auto &e : node.edges)
        if (e.isVirtual)
            return {e.u, e.v};
    // single-node tree: the lexicographically smallest edge stands in
    return {node.edges.front().u, node.edges.front().v};
}

std::vector<int> sNodeCycleOrder(const SpqrNode &node) {
    auto [a, b] = leafVirtualEdge(node);
    // adjacency of the cycle without the designated edge
    std::map<int, std::vector<int>> adj;
    bool skipped = false;
    for (const auto &e : node.edges) {
        if (!skipped && ((e.u == a && e.v == b) || (e.u == b && e.v == a)) &&
            (e.isVirtual || node.virtualCount() == 0)) {
            skipped = true;
            continue;
        }
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<int> order{a};
    int prev = -1, cur = a;
    while (cur != b) {
        int nxt = -1;
        for (int x : adj[cur])
            if (x != prev) {
                nxt = x;
                break;
            }
        assert(nxt >= 0);
        order.push_back(nxt);
        prev = cur;
        cur = nxt;
    }
    return order;
}

} // namespace redist
