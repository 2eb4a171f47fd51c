#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "redist/oracle.hpp"
#include "redist/planner.hpp"

using namespace redist;
namespace ts = redist::testsupport;

namespace {
DistrictMap mk(const Graph &g, std::vector<std::vector<int>> ds) {
    return DistrictMap::fromDistricts(g.numVertices(), std::move(ds));
}
} // namespace

TEST_CASE("canonical map on C4 is unique across all six starting maps") {
    Graph c4 = ts::cycle(4);
    auto maps = enumerateDistrictMaps(c4, 2);
    REQUIRE(maps.size() == 6);
    std::set<std::string> finals;
    for (const auto &p : maps) {
        auto [plan, end] = canonicalBiconnected(c4, p);
        verifyPlan(c4, p, plan, end);
        finals.insert(mapSignature(end).str());
        // the canonical 2-map on C4 is a singleton plus a 3-vertex district
        bool shape = false;
        for (int i = 0; i < end.k; ++i)
            if (end.size(i) == 1)
                shape = true;
        CHECK(shape);
    }
    CHECK(finals.size() == 1);
}

TEST_CASE("canonical on K4, k=3 matches from two different starts") {
    Graph k4 = ts::completeGraph(4);
    auto [plan1, end1] = canonicalBiconnected(k4, mk(k4, {{0}, {1}, {2, 3}}));
    auto [plan2, end2] = canonicalBiconnected(k4, mk(k4, {{0, 1}, {2}, {3}}));
    CHECK(mapSignature(end1) == mapSignature(end2));
}

TEST_CASE("canonical with k=1 is a no-op") {
    Graph c5 = ts::cycle(5);
    DistrictMap whole = mk(c5, {{0, 1, 2, 3, 4}});
    auto [plan, end] = canonicalBiconnected(c5, whole);
    CHECK(plan.steps.empty());
    CHECK(mapSignature(end) == mapSignature(whole));
}

TEST_CASE("canonical determinism across every biconnected graph n <= 6") {
    for (int n = 3; n <= 6; ++n) {
        for (const Graph &g : ts::biconnectedGraphs(n)) {
            for (int k = 1; k <= n; ++k) {
                std::set<std::string> finals;
                for (const auto &p : enumerateDistrictMaps(g, k)) {
                    auto [plan, end] = canonicalBiconnected(g, p);
                    verifyPlan(g, p, plan, end);
                    CHECK(plan.length() <= 4 * k * n);
                    finals.insert(mapSignature(end).str());
                }
                CHECK(finals.size() <= 1);
            }
        }
    }
}

TEST_CASE("block classification on the worked P4 example") {
    Graph p4 = ts::path(4);
    auto cls = classifyBlocks(p4, mk(p4, {{0}, {1}, {2, 3}}));
    // root {0,1} is type (i); {1,2} and {2,3} are covered by the leaf district
    const auto &t = cls.rooted.tree;
    for (int w = 0; w < t.blockCount(); ++w) {
        if (t.blocks[w] == std::vector<int>{0, 1})
            CHECK(cls.perBlock[w].typeTag == BlockType::TypeI);
        else
            CHECK(cls.perBlock[w].typeTag == BlockType::TypeIII);
    }
    CHECK(cls.leafDistricts.size() == 1);
    CHECK(cls.sumD() == 3);
    CHECK(isPseudoCanonical(p4, mk(p4, {{0}, {1}, {2, 3}})));
}

TEST_CASE("all-singleton map on P4 is pseudo-canonical") {
    Graph p4 = ts::path(4);
    CHECK(isPseudoCanonical(p4, mk(p4, {{0}, {1}, {2}, {3}})));
}

TEST_CASE("elbow detection on a spider") {
    // legs [0,1]-2, 2-[3], 2-[4,5]
    Graph spider(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {4, 5}});
    DistrictMap withElbow = mk(spider, {{0}, {1}, {3, 2, 4}, {5}});
    auto cls = classifyBlocks(spider, withElbow);
    bool sawElbow = false;
    for (const auto &pb : cls.perBlock)
        sawElbow = sawElbow || pb.isElbow;
    CHECK(sawElbow);
    CHECK_FALSE(isPseudoCanonical(spider, withElbow));

    DistrictMap noElbow = mk(spider, {{0}, {1}, {2, 3}, {4, 5}});
    auto cls2 = classifyBlocks(spider, noElbow);
    for (const auto &pb : cls2.perBlock)
        CHECK_FALSE(pb.isElbow);
}

TEST_CASE("pseudo-canonical drives the worked P5 map to canonical form") {
    Graph p5 = ts::path(5);
    DistrictMap p = mk(p5, {{0, 1, 2}, {3, 4}});
    auto [plan, end] = pseudoCanonical(p5, p);
    verifyPlan(p5, p, plan, end);
    CHECK(isPseudoCanonical(p5, end));
}

TEST_CASE("pseudo-canonical rejects incontractible input") {
    Graph g = ts::triangleStar();
    DistrictMap bad = mk(g, {{1, 2, 3}, {0, 4, 5, 6, 7, 8, 9}});
    CHECK_THROWS_AS(pseudoCanonical(g, bad), IncontractibleInputError);
}

TEST_CASE("pseudo-canonical output passes the checker across the corpus") {
    for (int n = 2; n <= 6; ++n) {
        for (const Graph &g : ts::connectedGraphs(n)) {
            BlockTree t = blockTree(g);
            for (int k = 2; k <= n; ++k) {
                for (const auto &p : enumerateDistrictMaps(g, k)) {
                    if (!isContractibleMap(g, t, p))
                        continue;
                    auto [plan, end] = pseudoCanonical(g, p);
                    verifyPlan(g, p, plan, end);
                    CHECK(isPseudoCanonical(g, end));
                    CHECK(plan.length() <= 4 * k * n);
                }
            }
        }
    }
}

TEST_CASE("alignment joins pseudo-canonical maps, potential decreasing") {
    for (int n = 3; n <= 6; ++n) {
        for (size_t gi = 0; gi < ts::connectedGraphs(n).size(); gi += 2) {
            const Graph &g = ts::connectedGraphs(n)[gi];
            BlockTree t = blockTree(g);
            for (int k = 2; k <= std::min(4, n); ++k) {
                std::vector<DistrictMap> forms;
                std::set<std::string> seen;
                for (const auto &p : enumerateDistrictMaps(g, k)) {
                    if (!isContractibleMap(g, t, p))
                        continue;
                    auto [plan, end] = pseudoCanonical(g, p);
                    if (seen.insert(mapSignature(end).str()).second)
                        forms.push_back(end);
                }
                for (size_t a = 0; a < forms.size(); ++a)
                    for (size_t b = 0; b < forms.size(); ++b) {
                        SwitchPlan al = alignPseudoCanonical(g, forms[a], forms[b]);
                        verifyPlan(g, forms[a], al, forms[b]);
                    }
            }
        }
    }
}

TEST_CASE("plan_path outcomes") {
    Graph c4 = ts::cycle(4);
    auto res = planPath(c4, mk(c4, {{0}, {1, 2, 3}}), mk(c4, {{2}, {3, 0, 1}}));
    REQUIRE(res.outcome == PlanOutcome::Planned);
    verifyPlan(c4, mk(c4, {{0}, {1, 2, 3}}), res.plan, mk(c4, {{2}, {3, 0, 1}}));

    Graph tstar = ts::triangleStar();
    // every k=2 map on the triangle star is incontractible
    DistrictMap good = mk(tstar, {{1, 2, 3}, {0, 4, 5, 6, 7, 8, 9}});
    DistrictMap fine = mk(tstar, {{2, 3}, {1, 0, 4, 5, 6, 7, 8, 9}});
    CHECK(planPath(tstar, good, fine).outcome == PlanOutcome::UnsupportedPair);
    // at k=4 both classes exist
    DistrictMap incontractible4 = mk(tstar, {{0, 1, 2, 3, 4, 5, 6}, {7}, {8}, {9}});
    DistrictMap contractible4 = mk(tstar, {{1, 2, 3}, {0, 4, 5, 6}, {7, 8}, {9}});
    CHECK(planPath(tstar, contractible4, incontractible4).outcome == PlanOutcome::Unreachable);

    CHECK_THROWS_AS(planPath(c4, mk(c4, {{0}, {1, 2, 3}}), mk(c4, {{0}, {1}, {2, 3}})),
                    MismatchedKError);

    auto trivial = planPath(c4, mk(c4, {{0, 1, 2, 3}}), mk(c4, {{0, 1, 2, 3}}));
    CHECK(trivial.outcome == PlanOutcome::Planned);
    CHECK(trivial.plan.steps.empty());
}

TEST_CASE("plan_path completeness against the oracle, n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        for (const Graph &g : ts::connectedGraphs(n)) {
            BlockTree t = blockTree(g);
            for (int k = 2; k <= n; ++k) {
                auto maps = enumerateDistrictMaps(g, k);
                SwitchGraph sg = buildSwitchGraph(g, k);
                for (size_t a = 0; a < maps.size(); ++a)
                    for (size_t b = 0; b < maps.size(); ++b) {
                        bool ca = isContractibleMap(g, t, maps[a]);
                        bool cb = isContractibleMap(g, t, maps[b]);
                        auto res = planPath(g, maps[a], maps[b]);
                        if (ca && cb) {
                            REQUIRE(res.outcome == PlanOutcome::Planned);
                            verifyPlan(g, maps[a], res.plan, maps[b]);
                            CHECK(res.plan.length() <= 4 * k * n);
                            CHECK(sg.component[sg.idOf(mapSignature(maps[a]))] ==
                                  sg.component[sg.idOf(mapSignature(maps[b]))]);
                        } else if (ca != cb) {
                            CHECK(res.outcome == PlanOutcome::Unreachable);
                            CHECK(sg.component[sg.idOf(mapSignature(maps[a]))] !=
                                  sg.component[sg.idOf(mapSignature(maps[b]))]);
                        } else {
                            CHECK(res.outcome == PlanOutcome::UnsupportedPair);
                        }
                    }
            }
        }
    }
}

TEST_CASE("push_district moves a district between the barbell's blocks") {
    Graph bar = ts::barbell(); // triangles {0,1,2} and {3,4,5} joined by 2-3
    DistrictMap p = mk(bar, {{0, 1}, {2}, {3}, {4, 5}});
    // w1 = left triangle (holds {0,1}), P = (2,3), w2 = right triangle
    DistrictMap work = p;
    SwitchPlan plan = pushDistrict(bar, work, {0, 1, 2}, {2, 3}, {3, 4, 5});
    verifyPlan(bar, p, plan, work);
    // district counts: left side gains one, right side loses one
    auto countIn = [&](const DistrictMap &m, std::vector<int> block) {
        std::set<int> ds;
        for (int v : block)
            ds.insert(m.districtOf(v));
        return ds.size();
    };
    CHECK(countIn(work, {0, 1, 2}) == countIn(p, {0, 1, 2}) + 1);
    CHECK(countIn(work, {3, 4, 5}) + 1 == countIn(p, {3, 4, 5}));
}

TEST_CASE("push_district precondition failures") {
    Graph bar = ts::barbell();
    DistrictMap allSingles = mk(bar, {{0}, {1}, {2}, {3}, {4}, {5}});
    DistrictMap work = allSingles;
    CHECK_THROWS_AS(pushDistrict(bar, work, {0, 1, 2}, {2, 3}, {3, 4, 5}),
                    PreconditionViolatedError);
    DistrictMap notSingleton = mk(bar, {{0, 1}, {2, 3}, {4, 5}});
    work = notSingleton;
    CHECK_THROWS_AS(pushDistrict(bar, work, {0, 1, 2}, {2, 3}, {3, 4, 5}),
                    PreconditionViolatedError);
}
