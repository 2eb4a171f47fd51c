#include "redist/block_tree.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace redist {

bool BlockTree::blockContains(int blockIdx, int v) const {
    const auto &b = blocks[blockIdx];
    return std::binary_search(b.begin(), b.end(), v);
}

int BlockTree::blockTreeDegree(int blockIdx) const {
    int d = 0;
    for (int v : blocks[blockIdx])
        if (isCut[v])
            ++d;
    return d;
}

std::vector<int> BlockTree::leafBlocks() const {
    std::vector<int> out;
    for (int b = 0; b < blockCount(); ++b)
        if (isLeafBlock(b))
            out.push_back(b);
    return out;
}

int BlockTree::leafBlockCut(int blockIdx) const {
    for (int v : blocks[blockIdx])
        if (isCut[v])
            return v;
    return -1;
}

namespace {

// Iterative Hopcroft-Tarjan style biconnected components via an edge stack.
struct BlockFinder {
    const Graph &g;
    std::vector<int> num, low, parentOf;
    std::vector<size_t> iter;
    std::vector<std::pair<int, int>> edgeStack;
    std::vector<std::vector<int>> blocks;
    std::vector<char> isCut;
    int counter = 0;

    explicit BlockFinder(const Graph &gr)
        : g(gr), num(gr.numVertices(), -1), low(gr.numVertices(), 0),
          parentOf(gr.numVertices(), -1), iter(gr.numVertices(), 0),
          isCut(gr.numVertices(), 0) {}

    void popBlock(int u, int v) {
        std::set<int> verts;
        while (!edgeStack.empty()) {
            auto [a, b] = edgeStack.back();
            edgeStack.pop_back();
            verts.insert(a);
            verts.insert(b);
            if ((a == u && b == v) || (a == v && b == u))
                break;
        }
        blocks.emplace_back(verts.begin(), verts.end());
    }

    void run(int root) {
        std::vector<int> stack{root};
        num[root] = low[root] = counter++;
        while (!stack.empty()) {
            int v = stack.back();
            if (iter[v] < g.neighbors(v).size()) {
                int w = g.neighbors(v)[iter[v]++];
                if (num[w] < 0) {
                    edgeStack.push_back({v, w});
                    parentOf[w] = v;
                    num[w] = low[w] = counter++;
                    stack.push_back(w);
                } else if (w != parentOf[v] && num[w] < num[v]) {
                    edgeStack.push_back({v, w});
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int u = stack.back();
                    low[u] = std::min(low[u], low[v]);
                    if (low[v] >= num[u])
                        popBlock(u, v);
                }
            }
        }
    }
};

} // namespace

BlockTree blockTree(const Graph &g) {
    if (!isConnected(g))
        throw NotConnectedError();
    BlockTree t;
    int n = g.numVertices();
    t.isCut.assign(n, 0);
    t.vertexBlocks.assign(n, {});
    if (n == 1) {
        t.blocks = {{0}};
        t.vertexBlocks[0] = {0};
        return t;
    }
    BlockFinder f(g);
    f.run(0);
    t.blocks = std::move(f.blocks);
    std::sort(t.blocks.begin(), t.blocks.end());
    for (int b = 0; b < t.blockCount(); ++b)
        for (int v : t.blocks[b])
            t.vertexBlocks[v].push_back(b);
    for (int v = 0; v < n; ++v)
        if (t.vertexBlocks[v].size() > 1) {
            t.isCut[v] = 1;
            t.cutVertices.push_back(v);
        }
    for (int b = 0; b < t.blockCount(); ++b)
        for (int v : t.blocks[b])
            if (t.isCut[v])
                t.treeEdges.push_back({b, v});
    return t;
}

std::vector<int> RootedBlockTree::childBlocks(int blockIdx) const {
    std::vector<int> out;
    for (int c : childCutsOfBlock[blockIdx])
        for (int b : childBlocksOfCut[c])
            out.push_back(b);
    return out;
}

std::vector<int> RootedBlockTree::grandchildBlocks(int blockIdx) const {
    std::vector<int> out;
    for (int child : childBlocks(blockIdx))
        for (int gc : childBlocks(child))
            out.push_back(gc);
    return out;
}

bool RootedBlockTree::isAncestorBlock(int anc, int desc) const {
    int b = desc;
    while (b != anc && b != root) {
        int cut = parentCutOfBlock[b];
        b = parentBlockOfCut[cut];
    }
    return b == anc;
}

std::vector<int> RootedBlockTree::subtreeVertices(int blockIdx) const {
    std::set<int> verts;
    std::vector<int> stack{blockIdx};
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        for (int v : tree.blocks[b])
            verts.insert(v);
        for (int cb : childBlocks(b))
            stack.push_back(cb);
    }
    return {verts.begin(), verts.end()};
}

RootedBlockTree rootBlockTree(const Graph &g) {
    RootedBlockTree r;
    r.tree = blockTree(g);
    const BlockTree &t = r.tree;
    int n = g.numVertices();

    // Canonical root: the leaf block holding the smallest non-cut vertex id.
    r.root = -1;
    for (int v = 0; v < n && r.root < 0; ++v) {
        if (t.isCut[v])
            continue;
        int b = t.vertexBlocks[v][0];
        if (t.isLeafBlock(b))
            r.root = b;
    }
    assert(r.root >= 0);

    int nb = t.blockCount();
    r.parentCutOfBlock.assign(nb, -1);
    r.parentBlockOfCut.assign(n, -1);
    r.childCutsOfBlock.assign(nb, {});
    r.childBlocksOfCut.assign(n, {});
    r.blockDepth.assign(nb, 0);

    std::vector<char> seenBlock(nb, 0);
    std::vector<int> stack{r.root};
    seenBlock[r.root] = 1;
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        r.blockPreorder.push_back(b);
        std::vector<int> cuts;
        for (int v : t.blocks[b])
            if (t.isCut[v] && v != r.parentCutOfBlock[b])
                cuts.push_back(v);
        std::sort(cuts.begin(), cuts.end());
        r.childCutsOfBlock[b] = cuts;
        for (int c : cuts) {
            r.parentBlockOfCut[c] = b;
            std::vector<int> kids;
            for (int b2 : t.vertexBlocks[c])
                if (!seenBlock[b2])
                    kids.push_back(b2);
            // order children blocks by smallest contained vertex id
            std::sort(kids.begin(), kids.end(),
                      [&](int x, int y) { return t.blocks[x] < t.blocks[y]; });
            r.childBlocksOfCut[c] = kids;
            for (int b2 : kids) {
                seenBlock[b2] = 1;
                r.parentCutOfBlock[b2] = c;
                r.blockDepth[b2] = r.blockDepth[b] + 1;
            }
        }
        // push children in reverse so DFS visits leftmost first
        for (auto it = cuts.rbegin(); it != cuts.rend(); ++it)
            for (auto jt = r.childBlocksOfCut[*it].rbegin(); jt != r.childBlocksOfCut[*it].rend();
                 ++jt)
                stack.push_back(*jt);
    }
    assert(static_cast<int>(r.blockPreorder.size()) == nb);
    return r;
}

} // namespace redist
