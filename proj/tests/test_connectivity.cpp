#include <doctest.h>

#include "corpus.hpp"
#include "redist/connectivity.hpp"
#include "redist/contract.hpp"
#include "redist/oracle.hpp"

using namespace redist;
namespace ts = redist::testsupport;

TEST_CASE("M on worked examples") {
    CHECK(computeM(ts::path(4)).M == 4);
    CHECK(computeM(ts::triangleStar()).M == 7);
    CHECK(computeM(ts::barbell()).M == 6);
    CHECK_THROWS_AS(computeM(ts::cycle(4)), BiconnectedError);
    CHECK_THROWS_AS(computeM(Graph(3, {{0, 1}})), NotConnectedError);
}

TEST_CASE("M equals the brute-force minimum over leaf-block pairs") {
    for (const Graph &g : ts::nonBiconnectedCorpus(9, 120)) {
        MResult r = computeM(g);
        CHECK(r.M == ts::bruteM(g));
        CHECK(r.witnessPair.first != r.witnessPair.second);
        // witness edge attains M in G'
        auto [u, v] = r.witnessEdge;
        CHECK(r.level[u] + r.level[v] + 2 == r.M);
        CHECK(r.cluster[u] != r.cluster[v]);
    }
}

TEST_CASE("switch graph connectedness verdicts on worked examples") {
    Graph tstar = ts::triangleStar();
    for (int k = 1; k <= 4; ++k) {
        auto v = switchGraphConnected(ts::cycle(4), k);
        CHECK(v.connected);
    }
    auto v2 = switchGraphConnected(tstar, 2);
    CHECK_FALSE(v2.connected);
    CHECK(v2.reason == "k+M = 9 < n+2 = 12");
    // k = 3 and k = 4 still admit a two-triangle district; k = 5 is the first
    // connected case (oracle-verified; the bare k+M >= n test would say k = 3)
    CHECK_FALSE(switchGraphConnected(tstar, 3).connected);
    CHECK_FALSE(switchGraphConnected(tstar, 4).connected);
    auto v5 = switchGraphConnected(tstar, 5);
    CHECK(v5.connected);
    CHECK(v5.reason == "k+M = 12 >= n+2 = 12");
    CHECK_THROWS_AS(switchGraphConnected(tstar, 0), KOutOfRangeError);
    CHECK_THROWS_AS(switchGraphConnected(tstar, 11), KOutOfRangeError);
}

TEST_CASE("characterization matches the oracle for all connected graphs n <= 5") {
    for (int n = 1; n <= 5; ++n) {
        for (const Graph &g : ts::connectedGraphs(n)) {
            for (int k = 1; k <= n; ++k) {
                SwitchGraph sg = buildSwitchGraph(g, k);
                bool oracle = sg.componentCount == 1;
                CHECK(switchGraphConnected(g, k).connected == oracle);
            }
        }
    }
}

TEST_CASE("incontractible-map existence matches the threshold") {
    // an incontractible k-district map exists exactly when a two-leaf-block
    // district of M vertices fits, i.e. when M <= n-k+1
    Graph g = ts::triangleStar();
    BlockTree t = blockTree(g);
    MResult m = computeM(g);
    for (int k = 2; k <= 6; ++k) {
        bool allContractible = true;
        for (const auto &p : enumerateDistrictMaps(g, k))
            if (!isContractibleMap(g, t, p))
                allContractible = false;
        CHECK(allContractible == (m.M > g.numVertices() - k + 1));
    }
}
