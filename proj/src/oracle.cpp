#include "redist/oracle.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace redist {

namespace {

// Enumerates partitions into exactly k nonempty connected parts by growing
// the part of the smallest unassigned vertex over connected supersets.
struct Enumerator {
    const Graph &g;
    int k;
    long long budget;
    std::vector<int> assignment;
    std::vector<DistrictMap> out;

    Enumerator(const Graph &gr, int kk, long long b)
        : g(gr), k(kk), budget(b), assignment(gr.numVertices(), -1) {}

    // Count components of the unassigned region and compare against parts left.
    bool feasible(int partsLeft) const {
        int n = g.numVertices();
        int unassigned = 0;
        std::vector<char> seen(n, 0);
        int comps = 0;
        for (int v = 0; v < n; ++v)
            if (assignment[v] < 0)
                ++unassigned;
        if (unassigned < partsLeft)
            return false;
        if (partsLeft == 0)
            return unassigned == 0;
        for (int v = 0; v < n; ++v) {
            if (assignment[v] >= 0 || seen[v])
                continue;
            ++comps;
            if (comps > partsLeft)
                return false;
            std::vector<int> stack{v};
            seen[v] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : g.neighbors(x))
                    if (assignment[y] < 0 && !seen[y]) {
                        seen[y] = 1;
                        stack.push_back(y);
                    }
            }
        }
        return comps <= partsLeft;
    }

    void emit() {
        out.push_back(DistrictMap::fromAssignment(assignment));
        if (static_cast<long long>(out.size()) > budget)
            throw TooLargeError("enumeration exceeded the node budget");
    }

    // Extends district `idx` (currently `part`) over connected supersets.
    // `candidates` holds frontier vertices in discovery order; `banned` marks
    // vertices excluded from this part (canonicity).
    void growPart(int idx, std::vector<int> &part, std::vector<int> candidates,
                  std::vector<char> &banned, int partsLeft) {
        if (feasible(partsLeft))
            startNextPart(idx + 1, partsLeft);
        std::vector<int> bannedHere;
        for (size_t i = 0; i < candidates.size(); ++i) {
            int c = candidates[i];
            if (assignment[c] >= 0 || banned[c])
                continue;
            assignment[c] = idx;
            part.push_back(c);
            std::vector<int> nextCands(candidates.begin() + i + 1, candidates.end());
            for (int nb : g.neighbors(c))
                if (assignment[nb] < 0 && !banned[nb])
                    nextCands.push_back(nb);
            growPart(idx, part, std::move(nextCands), banned, partsLeft);
            part.pop_back();
            assignment[c] = -1;
            banned[c] = 1; // exclude c from this part in later branches
            bannedHere.push_back(c);
        }
        for (int c : bannedHere)
            banned[c] = 0;
    }

    void startNextPart(int idx, int partsLeft) {
        if (partsLeft == 0) {
            emit();
            return;
        }
        int n = g.numVertices();
        int seed = -1;
        for (int v = 0; v < n; ++v)
            if (assignment[v] < 0) {
                seed = v;
                break;
            }
        if (seed < 0)
            return;
        assignment[seed] = idx;
        std::vector<int> part{seed};
        std::vector<char> banned(n, 0);
        std::vector<int> cands;
        for (int nb : g.neighbors(seed))
            if (assignment[nb] < 0)
                cands.push_back(nb);
        growPart(idx, part, std::move(cands), banned, partsLeft - 1);
        assignment[seed] = -1;
    }
};

} // namespace

std::vector<DistrictMap> enumerateDistrictMaps(const Graph &g, int k, const OracleLimits &limits) {
    if (!isConnected(g))
        throw NotConnectedError();
    int n = g.numVertices();
    if (k < 1 || k > n)
        throw KOutOfRangeError("k must be in 1..n");
    if (n > limits.vertexCap)
        throw TooLargeError("n = " + std::to_string(n) + " exceeds cap " +
                            std::to_string(limits.vertexCap));
    Enumerator e(g, k, limits.nodeBudget);
    e.startNextPart(0, k);
    return std::move(e.out);
}

int SwitchGraph::idOf(const Signature &s) const {
    auto it = index.find(s.str());
    if (it == index.end())
        throw UnknownSignatureError();
    return it->second;
}

SwitchGraph buildSwitchGraph(const Graph &g, int k, const OracleLimits &limits) {
    SwitchGraph sg;
    sg.n = g.numVertices();
    sg.k = k;
    auto maps = enumerateDistrictMaps(g, k, limits);
    for (const auto &m : maps) {
        Signature s = mapSignature(m);
        sg.index[s.str()] = static_cast<int>(sg.nodes.size());
        sg.nodes.push_back(std::move(s));
    }
    sg.adj.assign(sg.nodes.size(), {});
    std::set<std::pair<int, int>> edgeSet;
    for (size_t i = 0; i < maps.size(); ++i) {
        for (const auto &sw : validSwitches(g, maps[i])) {
            DistrictMap next = applySwitch(g, maps[i], sw);
            int j = sg.idOf(mapSignature(next));
            if (static_cast<int>(i) == j)
                continue;
            edgeSet.insert({std::min<int>(i, j), std::max<int>(i, j)});
        }
    }
    sg.edges.assign(edgeSet.begin(), edgeSet.end());
    for (auto [a, b] : sg.edges) {
        sg.adj[a].push_back(b);
        sg.adj[b].push_back(a);
    }
    for (auto &nb : sg.adj)
        std::sort(nb.begin(), nb.end());

    sg.component.assign(sg.nodes.size(), -1);
    for (size_t v = 0; v < sg.nodes.size(); ++v) {
        if (sg.component[v] >= 0)
            continue;
        int c = sg.componentCount++;
        std::vector<int> stack{static_cast<int>(v)};
        sg.component[v] = c;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : sg.adj[x])
                if (sg.component[y] < 0) {
                    sg.component[y] = c;
                    stack.push_back(y);
                }
        }
    }
    return sg;
}

std::optional<int> oracleDistance(const SwitchGraph &sg, const Signature &a, const Signature &b) {
    int s = sg.idOf(a), t = sg.idOf(b);
    if (sg.component[s] != sg.component[t])
        return std::nullopt;
    std::vector<int> dist(sg.nodes.size(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        if (x == t)
            return dist[x];
        for (int y : sg.adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return std::nullopt;
}

int oracleDiameter(const SwitchGraph &sg, const Signature &of) {
    int s = sg.idOf(of);
    int comp = sg.component[s];
    int best = 0;
    for (size_t v = 0; v < sg.nodes.size(); ++v) {
        if (sg.component[v] != comp)
            continue;
        std::vector<int> dist(sg.nodes.size(), -1);
        std::queue<int> q;
        dist[v] = 0;
        q.push(static_cast<int>(v));
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            best = std::max(best, dist[x]);
            for (int y : sg.adj[x])
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
        }
    }
    return best;
}

bool oracleContractible(const Graph &g, const DistrictMap &p, int districtIdx) {
    const auto &d0 = p.districts[districtIdx];
    if (d0.size() <= 1)
        return true;
    std::set<std::vector<int>> dead; // subsets known to admit no removal order
    std::vector<int> cur = d0;

    std::function<bool(std::vector<int> &)> search = [&](std::vector<int> &d) -> bool {
        if (d.size() == 1)
            return true;
        if (dead.count(d))
            return false;
        for (size_t i = 0; i < d.size(); ++i) {
            int v = d[i];
            bool outside = false;
            for (int nb : g.neighbors(v))
                if (!std::binary_search(d.begin(), d.end(), nb)) {
                    outside = true;
                    break;
                }
            if (!outside)
                continue;
            std::vector<int> rest;
            rest.reserve(d.size() - 1);
            for (int x : d)
                if (x != v)
                    rest.push_back(x);
            if (!isConnectedSubset(g, rest))
                continue;
            if (search(rest))
                return true;
        }
        dead.insert(d);
        return false;
    };
    return search(cur);
}

} // namespace redist
