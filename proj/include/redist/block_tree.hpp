#ifndef REDIST_BLOCK_TREE_HPP
#define REDIST_BLOCK_TREE_HPP

#include <utility>
#include <vector>

#include "redist/graph.hpp"

namespace redist {

// Block-cut tree of a connected graph: bipartite between blocks (maximal
// biconnected components, stored by vertex set) and cut vertices.
struct BlockTree {
    std::vector<std::vector<int>> blocks; // sorted vertex lists, lex-sorted
    std::vector<int> cutVertices;         // sorted
    std::vector<std::pair<int, int>> treeEdges; // (block index, cut vertex)

    std::vector<char> isCut;                  // per graph vertex
    std::vector<std::vector<int>> vertexBlocks; // block indices containing each vertex

    int blockCount() const { return static_cast<int>(blocks.size()); }
    bool blockContains(int blockIdx, int v) const;
    // Tree degree of a block = number of its cut vertices.
    int blockTreeDegree(int blockIdx) const;
    bool isLeafBlock(int blockIdx) const { return blockTreeDegree(blockIdx) <= 1; }
    std::vector<int> leafBlocks() const;
    // The unique cut vertex of a leaf block, or -1 for a cut-free block.
    int leafBlockCut(int blockIdx) const;
};

BlockTree blockTree(const Graph &g); // throws NotConnectedError

// Rooted view used by the planner. Nodes alternate block / cut vertex; the
// root is the canonical leaf block (the one holding the smallest non-cut
// vertex id). Children are ordered by smallest contained vertex id.
struct RootedBlockTree {
    BlockTree tree;
    int root = 0;
    std::vector<int> parentCutOfBlock;          // -1 for root
    std::vector<int> parentBlockOfCut;          // per graph vertex, -1 if not a cut
    std::vector<std::vector<int>> childCutsOfBlock;
    std::vector<std::vector<int>> childBlocksOfCut; // per graph vertex
    std::vector<int> blockPreorder;             // DFS preorder over blocks
    std::vector<int> blockDepth;

    std::vector<int> childBlocks(int blockIdx) const;
    std::vector<int> grandchildBlocks(int blockIdx) const; // ordered leftmost-first
    bool isAncestorBlock(int anc, int desc) const;
    // Vertices of the subtree rooted at `blockIdx` (the block and everything below).
    std::vector<int> subtreeVertices(int blockIdx) const;
};

RootedBlockTree rootBlockTree(const Graph &g);

} // namespace redist

#endif
