#include <doctest.h>
#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "redist/block_tree.hpp"
#include "redist/graph.hpp"

using namespace redist;
namespace ts = redist::testsupport;

TEST_CASE("graph file parsing") {
    Graph g = loadGraph("3 2\n0 1\n1 2");
    CHECK(g.numVertices() == 3);
    CHECK(g.numEdges() == 2);
    CHECK(g.hasEdge(0, 1));
    CHECK(g.hasEdge(2, 1));
    CHECK_FALSE(g.hasEdge(0, 2));

    CHECK_THROWS_AS(loadGraph("3 3\n0 1\n1 2\n0 1"), InvalidEdgeError);
    CHECK_THROWS_AS(loadGraph("3 1\n1 1"), InvalidEdgeError);
    CHECK_THROWS_AS(loadGraph("3 1\n0 5"), InvalidEdgeError);
    CHECK_THROWS_AS(loadGraph("nonsense"), ParseError);
    CHECK_THROWS_AS(loadGraph("2 1\n0 1\n1 0"), ParseError); // trailing data

    Graph single = loadGraph("1 0");
    CHECK(single.numVertices() == 1);
    CHECK(single.numEdges() == 0);
}

TEST_CASE("graph serialization round-trips and sorts edges") {
    Graph g(4, {{3, 2}, {0, 1}, {1, 3}});
    std::string text = serializeGraph(g);
    CHECK(text == "4 3\n0 1\n1 3\n2 3\n");
    Graph h = loadGraph(text);
    CHECK(h.edges() == g.edges());
}

TEST_CASE("connectivity classes") {
    CHECK((connectivityClass(ts::cycle(3)) == ConnectivityClass::Biconnected));
    CHECK((connectivityClass(ts::path(3)) == ConnectivityClass::ConnectedNotBiconnected));
    CHECK((connectivityClass(Graph(2, {})) == ConnectivityClass::Disconnected));
    CHECK((connectivityClass(Graph(1, {})) == ConnectivityClass::ConnectedNotBiconnected));
    CHECK((connectivityClass(Graph(2, {{0, 1}})) == ConnectivityClass::Biconnected));
}

TEST_CASE("connectivity class agrees with brute force on the small corpus") {
    for (int n = 1; n <= 6; ++n) {
        for (const Graph &g : ts::connectedGraphs(n)) {
            auto cls = connectivityClass(g);
            CHECK((cls != ConnectivityClass::Disconnected));
            bool bi = ts::bruteBiconnected(g);
            CHECK((cls == ConnectivityClass::Biconnected) == bi);
        }
    }
}

TEST_CASE("block tree of worked examples") {
    BlockTree p3 = blockTree(ts::path(3));
    CHECK(p3.blocks == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
    CHECK(p3.cutVertices == std::vector<int>{1});

    BlockTree c3 = blockTree(ts::cycle(3));
    CHECK(c3.blocks == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(c3.cutVertices.empty());

    BlockTree tstar = blockTree(ts::triangleStar());
    CHECK(tstar.blockCount() == 6);
    CHECK(tstar.cutVertices == std::vector<int>{0, 1, 4, 7});
    int triangles = 0, bridges = 0;
    for (const auto &b : tstar.blocks)
        (b.size() == 3 ? triangles : bridges)++;
    CHECK(triangles == 3);
    CHECK(bridges == 3);
}

TEST_CASE("blocks cover V and cut vertices match brute force") {
    for (int n = 1; n <= 6; ++n) {
        for (const Graph &g : ts::connectedGraphs(n)) {
            BlockTree t = blockTree(g);
            std::vector<char> covered(g.numVertices(), 0);
            for (const auto &b : t.blocks)
                for (int v : b)
                    covered[v] = 1;
            for (char c : covered)
                CHECK(c == 1);
            auto cuts = ts::bruteCutVertices(g);
            CHECK(t.cutVertices == cuts);
            for (int v = 0; v < g.numVertices(); ++v)
                CHECK((t.vertexBlocks[v].size() > 1) == t.isCut[v]);
            // every block induces a biconnected subgraph (maximality is implied
            // by the cut-vertex agreement above)
            for (const auto &b : t.blocks) {
                if (b.size() <= 2)
                    continue;
                std::vector<std::pair<int, int>> sub;
                std::vector<int> idx(g.numVertices(), -1);
                for (size_t i = 0; i < b.size(); ++i)
                    idx[b[i]] = static_cast<int>(i);
                for (auto [u, v] : g.edges())
                    if (idx[u] >= 0 && idx[v] >= 0)
                        sub.push_back({idx[u], idx[v]});
                CHECK(ts::bruteBiconnected(Graph(static_cast<int>(b.size()), sub)));
            }
        }
    }
}

TEST_CASE("blocks and cut vertices on larger graphs (n = 7 exhaustive, n = 8 sampled)") {
    auto check = [](const Graph &g) {
        BlockTree t = blockTree(g);
        CHECK(t.cutVertices == ts::bruteCutVertices(g));
        std::vector<char> covered(g.numVertices(), 0);
        for (const auto &b : t.blocks)
            for (int v : b)
                covered[v] = 1;
        for (char cv : covered)
            CHECK(cv == 1);
        for (size_t i = 0; i < t.blocks.size(); ++i)
            for (size_t j = i + 1; j < t.blocks.size(); ++j) {
                std::vector<int> shared;
                std::set_intersection(t.blocks[i].begin(), t.blocks[i].end(),
                                      t.blocks[j].begin(), t.blocks[j].end(),
                                      std::back_inserter(shared));
                CHECK(shared.size() <= 1);
                for (int v : shared)
                    CHECK(t.isCut[v]);
            }
    };
    for (const Graph &g : ts::connectedGraphs(7))
        check(g);
    // deterministic n = 8 sample: spanning tree plus extra edges
    ts::Lcg rng(0xb10c7ee5ULL);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 8;
        std::set<std::pair<int, int>> es;
        for (int v = 1; v < n; ++v)
            es.insert({rng.below(v), v});
        for (int t2 = rng.below(8); t2 > 0; --t2) {
            int u = rng.below(n), v = rng.below(n);
            if (u == v)
                continue;
            es.insert({std::min(u, v), std::max(u, v)});
        }
        check(Graph(n, {es.begin(), es.end()}));
    }
}

TEST_CASE("rooted block tree picks the canonical root") {
    auto r = rootBlockTree(ts::triangleStar());
    // vertex 2 is the smallest non-cut vertex; its triangle {1,2,3} is the root
    CHECK(r.tree.blocks[r.root] == std::vector<int>{1, 2, 3});
    CHECK(r.parentCutOfBlock[r.root] == -1);
    CHECK(r.blockPreorder.size() == 6);
}
