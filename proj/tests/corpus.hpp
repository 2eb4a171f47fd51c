#ifndef REDIST_TESTS_CORPUS_HPP
#define REDIST_TESTS_CORPUS_HPP

#include <cstdint>
#include <vector>

#include "redist/block_tree.hpp"
#include "redist/graph.hpp"

namespace redist::testsupport {

// All non-isomorphic connected graphs on exactly n vertices (n <= 7),
// generated by extending the (n-1)-vertex list and deduplicating by
// canonical edge mask. Deterministic order.
const std::vector<Graph> &connectedGraphs(int n);
std::vector<Graph> biconnectedGraphs(int n);

// First `count` graphs of connectedGraphs(n) — the fixed sample used by the
// acceptance suite for n = 7.
std::vector<Graph> sampledConnected(int n, int count);

// Deterministic corpus of connected, non-biconnected graphs with n <= maxN,
// mixing structured families and LCG-generated graphs.
std::vector<Graph> nonBiconnectedCorpus(int maxN, int count);

// Named fixtures from the worked examples.
Graph path(int n);
Graph cycle(int n);
Graph completeGraph(int n);
Graph star(int legs);
Graph triangleStar(); // center 0, bridges to three triangles {1,2,3},{4,5,6},{7,8,9}
Graph barbell();      // two triangles joined by an edge, n = 6
Graph theta();        // vertices 0,1 joined by three 2-edge paths

// Brute-force oracles (independent of the library's algorithms).
bool bruteConnected(const Graph &g);
bool bruteBiconnected(const Graph &g);
std::vector<int> bruteCutVertices(const Graph &g);
// min over leaf-block pairs of |w1| + |w2| + dist(c1, c2) - 1
int bruteM(const Graph &g);

// Reassembles an SPQR tree by replacing virtual edges with partner skeletons
// and compares the real-edge union against E(g).
bool spqrReassembles(const Graph &g);

// Small deterministic PRNG for property tests.
struct Lcg {
    uint64_t state;
    explicit Lcg(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 16;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

} // namespace redist::testsupport

#endif
