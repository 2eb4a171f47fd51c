#include <doctest.h>

#include "corpus.hpp"
#include "redist/contract.hpp"
#include "redist/oracle.hpp"

using namespace redist;
namespace ts = redist::testsupport;

namespace {
DistrictMap mk(const Graph &g, std::vector<std::vector<int>> ds) {
    return DistrictMap::fromDistricts(g.numVertices(), std::move(ds));
}
} // namespace

TEST_CASE("contractibility characterization on the triangle star") {
    Graph g = ts::triangleStar();
    BlockTree t = blockTree(g);

    // district holding two full triangles plus the connecting path
    DistrictMap two = mk(g, {{1, 2, 3, 0, 4, 5, 6}, {7, 8, 9}});
    CHECK_FALSE(isContractibleDistrict(g, t, two, 0));
    CHECK(isContractibleDistrict(g, t, two, 1));
    CHECK_FALSE(isContractibleMap(g, t, two));

    DistrictMap one = mk(g, {{1, 2, 3}, {0, 4, 5, 6, 7, 8, 9}});
    CHECK(isContractibleDistrict(g, t, one, 0));
    CHECK_FALSE(isContractibleDistrict(g, t, one, 1)); // two full triangles

    // per-district map: triangle+bridge each, center with one of them
    DistrictMap three = mk(g, {{0, 1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(isContractibleMap(g, t, three));
}

TEST_CASE("any district on a biconnected graph is contractible (k >= 2)") {
    Graph c5 = ts::cycle(5);
    BlockTree t = blockTree(c5);
    for (const auto &p : enumerateDistrictMaps(c5, 2))
        CHECK(isContractibleMap(c5, t, p));
}

TEST_CASE("k = 1 whole-graph district is incontractible, matching the oracle") {
    Graph c4 = ts::cycle(4);
    BlockTree t = blockTree(c4);
    DistrictMap whole = mk(c4, {{0, 1, 2, 3}});
    CHECK_FALSE(isContractibleDistrict(c4, t, whole, 0));
    CHECK_FALSE(oracleContractible(c4, whole, 0));
}

TEST_CASE("characterization equals the removal-order oracle, n <= 6") {
    for (int n = 2; n <= 6; ++n) {
        for (const Graph &g : ts::connectedGraphs(n)) {
            BlockTree t = blockTree(g);
            for (int k = 1; k <= n; ++k) {
                for (const auto &p : enumerateDistrictMaps(g, k)) {
                    for (int i = 0; i < k; ++i)
                        CHECK(isContractibleDistrict(g, t, p, i) == oracleContractible(g, p, i));
                }
            }
        }
    }
}

TEST_CASE("contract_district on C4 follows the worked example") {
    Graph c4 = ts::cycle(4);
    DistrictMap p = mk(c4, {{0, 1, 2}, {3}});
    SwitchPlan plan = contractDistrict(c4, p, 0, 1);
    REQUIRE(plan.steps.size() == 2);
    CHECK(plan.steps[0] == Switch{1, 0, 3});
    CHECK(plan.steps[1] == Switch{1, 2, 3});
    DistrictMap end = verifyPlan(c4, p, plan);
    CHECK(end.size(end.districtOf(1)) == 1);
}

TEST_CASE("contract_district target rules") {
    Graph g = ts::triangleStar();
    DistrictMap p = mk(g, {{1, 2, 3}, {0, 4, 5, 6, 7, 8, 9}});
    // district 0 is the triangle {1,2,3}; 1 is its cut vertex
    CHECK_THROWS_AS(contractDistrict(g, p, 0, 1), InvalidTargetError);
    SwitchPlan ok = contractDistrict(g, p, 0, 2);
    CHECK(ok.steps.size() == 2);
    verifyPlan(g, p, ok);
    CHECK_THROWS_AS(contractDistrict(g, p, 1, 0), IncontractibleDistrictError);

    Graph p4 = ts::path(4);
    DistrictMap q = mk(p4, {{0}, {1, 2, 3}});
    SwitchPlan plan = contractDistrict(p4, q, 1, 3);
    CHECK(plan.steps.size() == 2);
    verifyPlan(p4, q, plan);
}

TEST_CASE("contract plans always verify with |V_i| - 1 steps") {
    for (int n = 2; n <= 6; ++n) {
        for (size_t gi = 0; gi < ts::connectedGraphs(n).size(); gi += 2) {
            const Graph &g = ts::connectedGraphs(n)[gi];
            BlockTree t = blockTree(g);
            for (int k = 2; k <= std::min(3, n); ++k) {
                auto maps = enumerateDistrictMaps(g, k);
                for (size_t mi = 0; mi < maps.size(); mi += 2) {
                    const auto &p = maps[mi];
                    for (int i = 0; i < k; ++i) {
                        if (!isContractibleDistrict(g, t, p, i))
                            continue;
                        auto leaves = containedLeafBlocks(t, p, i);
                        int target = -1;
                        if (leaves.size() == 1) {
                            for (int v : t.blocks[leaves[0]])
                                if (!t.isCut[v] && p.districtOf(v) == i) {
                                    target = v;
                                    break;
                                }
                        } else {
                            target = p.districts[i].front();
                        }
                        if (target < 0)
                            continue;
                        SwitchPlan plan = contractDistrict(g, p, i, target);
                        CHECK(plan.length() == p.size(i) - 1);
                        verifyPlan(g, p, plan);
                    }
                }
            }
        }
    }
}

TEST_CASE("contractibility is invariant under switches") {
    ts::Lcg rng(0xabcdefULL);
    for (int n = 4; n <= 6; ++n) {
        for (size_t gi = 0; gi < ts::connectedGraphs(n).size(); gi += 4) {
            const Graph &g = ts::connectedGraphs(n)[gi];
            BlockTree t = blockTree(g);
            for (int k : {2, 3}) {
                if (k > n)
                    continue;
                auto maps = enumerateDistrictMaps(g, k);
                if (maps.empty())
                    continue;
                DistrictMap cur = maps[rng.below(static_cast<int>(maps.size()))];
                bool c0 = isContractibleMap(g, t, cur);
                for (int step = 0; step < 6; ++step) {
                    auto sw = validSwitches(g, cur);
                    if (sw.empty())
                        break;
                    cur = applySwitch(g, cur, sw[rng.below(static_cast<int>(sw.size()))]);
                    CHECK(isContractibleMap(g, t, cur) == c0);
                }
            }
        }
    }
}
