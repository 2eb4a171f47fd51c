#include <doctest.h>

#include "corpus.hpp"
#include "redist/district.hpp"
#include "redist/oracle.hpp"

using namespace redist;
namespace ts = redist::testsupport;

namespace {
DistrictMap mk(const Graph &g, std::vector<std::vector<int>> ds) {
    return DistrictMap::fromDistricts(g.numVertices(), std::move(ds));
}
} // namespace

TEST_CASE("map validation") {
    Graph p3 = ts::path(3);
    CHECK(validateMap(p3, mk(p3, {{0, 1}, {2}})).ok());
    auto bad = validateMap(p3, mk(p3, {{0, 2}, {1}}));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.issues.front().find("DisconnectedDistrict") != std::string::npos);
    CHECK_THROWS(mk(p3, {{0, 1}, {1, 2}})); // overlap rejected at construction
    auto missing = validateMap(p3, DistrictMap::fromDistricts(3, {{0, 1}}));
    REQUIRE_FALSE(missing.ok());
    CHECK(missing.issues.front().find("NotAPartition") != std::string::npos);
}

TEST_CASE("valid switches on worked examples") {
    Graph p3 = ts::path(3);
    auto sw = validSwitches(p3, mk(p3, {{0, 1}, {2}}));
    bool has012 = false;
    for (const auto &s : sw) {
        CHECK(s.v != 0); // leaf of the path cannot move
        if (s.u == 0 && s.v == 1 && s.w == 2)
            has012 = true;
    }
    CHECK(has012);

    CHECK(validSwitches(p3, mk(p3, {{0}, {1}, {2}})).empty());

    Graph st = ts::star(3);
    auto sw2 = validSwitches(st, mk(st, {{0, 1}, {2}, {3}}));
    bool a = false, b = false;
    for (const auto &s : sw2) {
        if (s.u == 1 && s.v == 0 && s.w == 2)
            a = true;
        if (s.u == 1 && s.v == 0 && s.w == 3)
            b = true;
    }
    CHECK(a);
    CHECK(b);
    // sorted by (v, w, u)
    for (size_t i = 1; i < sw2.size(); ++i) {
        auto key = [](const Switch &s) { return std::tuple(s.v, s.w, s.u); };
        CHECK(key(sw2[i - 1]) < key(sw2[i]));
    }
}

TEST_CASE("apply switch and reversibility") {
    Graph p3 = ts::path(3);
    DistrictMap p = mk(p3, {{0, 1}, {2}});
    DistrictMap q = applySwitch(p3, p, {0, 1, 2});
    CHECK(mapSignature(q).str() == "0|1 2");
    DistrictMap back = applySwitch(p3, q, {2, 1, 0});
    CHECK(mapSignature(back) == mapSignature(p));

    Graph t(4, {{0, 1}, {1, 2}, {1, 3}});
    DistrictMap tm = mk(t, {{0, 1, 2}, {3}});
    CHECK_THROWS_AS(applySwitch(t, tm, {0, 1, 3}), InvalidSwitchError);
    try {
        applySwitch(t, tm, {0, 1, 3});
    } catch (const InvalidSwitchError &e) {
        CHECK(e.reason == SwitchErrorReason::DisconnectsSource);
    }
    CHECK_THROWS_AS(applySwitch(p3, p, {0, 2, 1}), InvalidSwitchError); // not a path from u
    CHECK_THROWS_AS(applySwitch(p3, p, {1, 0, 1}), InvalidSwitchError);
}

TEST_CASE("signatures identify unlabeled partitions") {
    Graph p3 = ts::path(3);
    CHECK(mapSignature(mk(p3, {{2}, {0, 1}})) == mapSignature(mk(p3, {{1, 0}, {2}})));
    CHECK(mapSignature(mk(p3, {{0, 1}, {2}})) != mapSignature(mk(p3, {{0}, {1, 2}})));
    CHECK(mapSignature(mk(p3, {{0, 1, 2}})).str() == "0 1 2");
}

TEST_CASE("map and plan file formats round-trip") {
    Graph g = ts::cycle(4);
    DistrictMap p = mk(g, {{1, 2}, {3, 0}});
    std::string text = serializeMap(p);
    CHECK(text == "2\n0 3\n1 2\n");
    DistrictMap q = loadMap(text, g);
    CHECK(mapSignature(q) == mapSignature(p));
    CHECK_THROWS_AS(loadMap("2\n0 1\n", g), ParseError);

    SwitchPlan plan;
    plan.steps = {{0, 1, 2}, {2, 1, 0}};
    SwitchPlan loaded = loadPlan(serializePlan(plan));
    REQUIRE(loaded.steps.size() == 2);
    CHECK(loaded.steps[1].u == 2);
}

TEST_CASE("plan verification catches bad steps and wrong endpoints") {
    Graph p3 = ts::path(3);
    DistrictMap p = mk(p3, {{0, 1}, {2}});
    SwitchPlan plan;
    plan.steps = {{0, 1, 2}};
    DistrictMap end = verifyPlan(p3, p, plan);
    CHECK(mapSignature(end).str() == "0|1 2");
    CHECK_THROWS_AS(verifyPlan(p3, p, plan, p), InvalidPlanError);
    SwitchPlan bad;
    bad.steps = {{2, 1, 0}};
    CHECK_THROWS_AS(verifyPlan(p3, p, bad), InvalidPlanError);
}

TEST_CASE("property: random valid switches preserve partitions and reverse cleanly") {
    ts::Lcg rng(0xfeedbeefULL);
    int checked = 0;
    for (int n = 3; n <= 6; ++n) {
        const auto &graphs = ts::connectedGraphs(n);
        for (size_t gi = 0; gi < graphs.size(); gi += 3) {
            const Graph &g = graphs[gi];
            for (int k = 2; k <= std::min(4, n); ++k) {
                auto maps = enumerateDistrictMaps(g, k);
                if (maps.empty())
                    continue;
                DistrictMap cur = maps[rng.below(static_cast<int>(maps.size()))];
                for (int step = 0; step < 8; ++step) {
                    auto sw = validSwitches(g, cur);
                    if (sw.empty())
                        break;
                    Switch s = sw[rng.below(static_cast<int>(sw.size()))];
                    DistrictMap next = applySwitch(g, cur, s);
                    CHECK(validateMap(g, next).ok());
                    CHECK(next.k == cur.k);
                    CHECK(g.degree(s.v) > 1); // leaf immobility
                    DistrictMap back = applySwitch(g, next, reverseSwitch(s));
                    CHECK(mapSignature(back) == mapSignature(cur));
                    cur = next;
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 200);
}
