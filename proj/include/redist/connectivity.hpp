#ifndef REDIST_CONNECTIVITY_HPP
#define REDIST_CONNECTIVITY_HPP

#include <optional>
#include <string>

#include "redist/block_tree.hpp"
#include "redist/graph.hpp"

namespace redist {

// Result of the chain-transform + multi-source BFS computation of M.
// Levels, clusters, and the witness edge refer to the transformed graph G';
// vertices 0..n-1 of G' coincide with G, chain vertices come after.
struct MResult {
    int M = 0;
    std::pair<int, int> witnessPair; // leaf block indices in the block tree
    std::pair<int, int> witnessEdge; // edge of G' achieving l(u)+l(v)+2
    Graph gPrime;
    std::vector<int> level;
    std::vector<int> cluster;
};

MResult computeM(const Graph &g); // throws NotConnectedError, BiconnectedError

struct ConnVerdict {
    bool connected = false;
    std::string reason;
    std::optional<int> M;
    std::optional<std::pair<int, int>> witnessPair;
};

// Theorem-level test: Gamma_k(G) connected iff G biconnected, k = 1, or k + M >= n.
ConnVerdict switchGraphConnected(const Graph &g, int k);

} // namespace redist

#endif
