#ifndef REDIST_SPQR_HPP
#define REDIST_SPQR_HPP

#include <map>
#include <utility>
#include <vector>

#include "redist/graph.hpp"

namespace redist {

struct SkelEdge {
    int u, v;
    bool isVirtual;
    long long pairId; // shared by the twin virtual edge; -1 for real edges
};

struct SpqrNode {
    char type; // 'S', 'P', 'R'
    std::vector<int> vertices; // sorted
    std::vector<SkelEdge> edges;

    int virtualCount() const;
};

// SPQR tree of a biconnected graph (n >= 3), built by the recursive
// split-component method and canonicalized by merging adjacent same-type
// S/S and P/P nodes. Q nodes are not materialized; real edges live inline
// in the skeletons.
struct SpqrTree {
    std::vector<SpqrNode> nodes;
    std::vector<std::pair<int, int>> treeAdjacency;     // node index pairs
    std::map<long long, std::pair<int, int>> pairOwners; // pairId -> two node ids
    int rootNode = 0;
    std::vector<int> dfsOrder;   // all nodes, deterministic DFS from rootNode
    std::vector<int> leafOrder;  // tree leaves in DFS order

    std::vector<int> neighborsOf(int node) const;
};

SpqrTree spqrTree(const Graph &g); // throws NotBiconnectedError

// Cycle order of an S node: starts and ends at the endpoints of the virtual
// edge (smaller endpoint first). For a virtual-free skeleton the
// lexicographically smallest edge acts as the pseudo-virtual edge.
std::vector<int> sNodeCycleOrder(const SpqrNode &node);

// The designated (pseudo-)virtual edge of a leaf node.
std::pair<int, int> leafVirtualEdge(const SpqrNode &node);

} // namespace redist

#endif
