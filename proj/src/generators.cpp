#include "redist/generators.hpp"

#include <algorithm>
#include <cassert>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace redist {

using nlohmann::json;

bool Cnf::satisfiedBy(const std::vector<bool> &assignment) const {
    if (static_cast<int>(assignment.size()) != numVars)
        throw BadParamsError("assignment length does not match variable count");
    for (const auto &cl : clauses) {
        bool sat = false;
        for (int lit : cl) {
            int var = std::abs(lit) - 1;
            if ((lit > 0) == assignment[var])
                sat = true;
        }
        if (!sat)
            return false;
    }
    return true;
}

void Cnf::validate() const {
    if (numVars < 1)
        throw BadFormulaError("formula needs at least one variable");
    if (clauses.empty())
        throw BadFormulaError("formula needs at least one clause");
    for (const auto &cl : clauses)
        for (int lit : cl) {
            if (lit == 0 || std::abs(lit) > numVars)
                throw BadFormulaError("literal out of range: " + std::to_string(lit));
        }
}

Cnf parseDimacs(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    Cnf cnf;
    int declaredClauses = -1;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> cnf.numVars >> declaredClauses) || fmt != "cnf")
                throw ParseError("bad DIMACS header");
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.size() != 3)
                    throw BadFormulaError("clause must have exactly 3 literals, got " +
                                          std::to_string(current.size()));
                cnf.clauses.push_back({current[0], current[1], current[2]});
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!current.empty())
        throw ParseError("clause not terminated by 0");
    if (declaredClauses >= 0 && declaredClauses != cnf.numClauses())
        throw ParseError("clause count mismatch");
    cnf.validate();
    return cnf;
}

std::string serializeDimacs(const Cnf &cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.numVars << ' ' << cnf.numClauses() << '\n';
    for (const auto &cl : cnf.clauses)
        out << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
    return out.str();
}

const std::vector<int> &Instance::role(const std::string &name) const {
    auto it = meta.roles.find(name);
    if (it == meta.roles.end())
        throw BadParamsError("instance has no role '" + name + "'");
    return it->second;
}

int Instance::roleVertex(const std::string &name, int idx) const { return role(name).at(idx); }

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace {

struct PlanBuilder {
    const Graph &g;
    DistrictMap map;
    SwitchPlan plan;

    PlanBuilder(const Graph &gr, const DistrictMap &start) : g(gr), map(start) {
        plan.startSignature = mapSignature(start).str();
    }

    int districtOf(int v) const { return map.districtOf(v); }

    // Moves v into the district of `targetVertex`, picking the in-district
    // witness u as the smallest same-district neighbor of v.
    void move(int v, int targetVertex) {
        int d = map.districtOf(v);
        int u = -1;
        for (int nb : g.neighbors(v))
            if (map.districtOf(nb) == d) {
                u = nb;
                break;
            }
        if (u < 0)
            throw InvalidPlanError("witness construction: vertex " + std::to_string(v) +
                                   " has no same-district neighbor");
        Switch s{u, v, targetVertex};
        try {
            applySwitchInPlace(g, map, s);
        } catch (const DomainError &e) {
            throw InvalidPlanError("witness step " + std::to_string(plan.steps.size()) +
                                   " moving " + std::to_string(v) + " to " +
                                   std::to_string(targetVertex) + ": " + e.what());
        }
        plan.steps.push_back(s);
    }

    SwitchPlan finish() {
        plan.endSignature = mapSignature(map).str();
        return plan;
    }
};

long long binom2(long long x) { return x * (x - 1) / 2; }

} // namespace

// ---------------------------------------------------------------------------
// Path and cycle lower-bound families
// ---------------------------------------------------------------------------

Instance genPathLB(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw BadParamsError("need 1 <= k <= n");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1});
    Instance inst;
    inst.graph = Graph(n, std::move(edges));

    std::vector<std::vector<int>> da, db;
    for (int i = 0; i < k - 1; ++i)
        da.push_back({i});
    std::vector<int> tailA;
    for (int i = k - 1; i < n; ++i)
        tailA.push_back(i);
    da.push_back(tailA);
    std::vector<int> headB;
    for (int i = 0; i <= n - k; ++i)
        headB.push_back(i);
    db.push_back(headB);
    for (int i = n - k + 1; i < n; ++i)
        db.push_back({i});
    inst.mapA = DistrictMap::fromDistricts(n, std::move(da));
    inst.mapB = DistrictMap::fromDistricts(n, std::move(db));
    inst.meta.kind = "path-lb";
    inst.meta.k = k;
    inst.meta.lowerBound = static_cast<long long>(k - 1) * (n - k);
    inst.meta.params = {{"n", n}, {"k", k}};
    return inst;
}

Instance genCycleLB(int n, int k) {
    if (n < 3 || k < 1 || k > n)
        throw BadParamsError("need n >= 3 and 1 <= k <= n");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n});
    Instance inst;
    inst.graph = Graph(n, std::move(edges));

    std::vector<std::vector<int>> da;
    for (int i = 0; i < k - 1; ++i)
        da.push_back({i});
    std::vector<int> tail;
    for (int i = k - 1; i < n; ++i)
        tail.push_back(i);
    da.push_back(tail);
    int shift = n / 2;
    std::vector<std::vector<int>> db = da;
    for (auto &d : db)
        for (auto &v : d)
            v = (v + shift) % n;
    inst.mapA = DistrictMap::fromDistricts(n, std::move(da));
    inst.mapB = DistrictMap::fromDistricts(n, std::move(db));
    inst.meta.kind = "cycle-lb";
    inst.meta.k = k;
    // minimum over the cyclic matching offset r of the forced travel distance
    long long lb = 0;
    if (k >= 2) {
        lb = -1;
        for (int r = 0; r < k; ++r) {
            long long s;
            if (r <= k / 2)
                s = static_cast<long long>(k - 1 - r) * std::max(0, n / 2 - r);
            else
                s = static_cast<long long>(r) * std::max(0, n / 2 - (k - r));
            if (lb < 0 || s < lb)
                lb = s;
        }
    }
    inst.meta.lowerBound = std::max(0LL, lb);
    inst.meta.params = {{"n", n}, {"k", k}};
    return inst;
}

// ---------------------------------------------------------------------------
// Spiral lower-bound family
// ---------------------------------------------------------------------------

namespace {

// Vertex bookkeeping for the spiral instance. Chains use 0-based diamonds:
// chain A has diamonds 0..r-1 over interiors a[0..r], chain B has diamonds
// 0..r-2 over interiors b[0..r-1].
struct SpiralIds {
    int r, q, ell;
    std::vector<int> a, b;
    std::vector<std::vector<int>> shellA, shellB; // per diamond: p, q, leafP, leafQ
    std::vector<int> pi1, lam1, pi2, lam2;        // pi[0] is the chain anchor

    int anchor1() const { return a[0]; }
    int anchor2() const { return a[r / 2]; }
};

SpiralIds spiralIds(int r, int q, int ell) {
    SpiralIds s;
    s.r = r;
    s.q = q;
    s.ell = ell;
    int next = 0;
    s.a.resize(r + 1);
    for (int j = 0; j <= r; ++j)
        s.a[j] = next++;
    s.b.resize(r);
    for (int j = 0; j < r; ++j)
        s.b[j] = next++;
    s.shellA.assign(r, {});
    for (int i = 0; i < r; ++i)
        for (int t = 0; t < 4; ++t)
            s.shellA[i].push_back(next++);
    s.shellB.assign(r - 1, {});
    for (int i = 0; i < r - 1; ++i)
        for (int t = 0; t < 4; ++t)
            s.shellB[i].push_back(next++);
    s.pi1.push_back(s.anchor1());
    for (int t = 1; t < q; ++t)
        s.pi1.push_back(next++);
    for (int t = 0; t < ell; ++t)
        s.lam1.push_back(next++);
    s.pi2.push_back(s.anchor2());
    for (int t = 1; t < q; ++t)
        s.pi2.push_back(next++);
    for (int t = 0; t < ell; ++t)
        s.lam2.push_back(next++);
    return s;
}

// Interleaved spiral sequences; gaps between consecutive a-visits decrease
// r..1 and between b-visits increase 1..r-1.
std::vector<int> spiralASeq(int r) {
    std::vector<int> seq(r + 1);
    for (int t = 0; t <= r; ++t)
        seq[t] = (t % 2 == 0) ? t / 2 : r - (t - 1) / 2;
    return seq;
}

std::vector<int> spiralBSeq(int r) {
    std::vector<int> seq(r);
    for (int t = 0; t < r; ++t)
        seq[t] = (t % 2 == 0) ? r / 2 - 1 - t / 2 : r / 2 - 1 + (t + 1) / 2;
    return seq;
}

void addTreeEdges(std::vector<std::pair<int, int>> &edges, const std::vector<int> &pi,
                  const std::vector<int> &lam, int q, int ell) {
    for (int t = 0; t + 1 < q; ++t)
        edges.push_back({pi[t], pi[t + 1]});
    if (q >= 3) {
        for (int s = 0; s < ell; ++s) {
            edges.push_back({lam[s], pi[1]});
            edges.push_back({lam[s], pi[q - 1]});
        }
        for (int s = 0; s + 1 < ell; ++s)
            edges.push_back({lam[s], lam[s + 1]});
    } else if (q == 2) {
        for (int s = 0; s < ell; ++s) {
            edges.push_back({lam[s], pi[0]});
            edges.push_back({lam[s], pi[1]});
        }
        for (int s = 0; s + 1 < ell; ++s)
            edges.push_back({lam[s], lam[s + 1]});
    } else { // q == 1: pendant fan on the anchor, chained when ell >= 2
        for (int s = 0; s < ell; ++s)
            edges.push_back({lam[s], pi[0]});
        for (int s = 0; s + 1 < ell; ++s)
            edges.push_back({lam[s], lam[s + 1]});
    }
}

} // namespace

Instance genSpiralLB(int r, int q, int ell) {
    if (r < 2 || r % 2 != 0)
        throw BadParamsError("r must be an even integer >= 2");
    if (q < 1 || ell < 1)
        throw BadParamsError("need q >= 1 and ell >= 1");
    SpiralIds ids = spiralIds(r, q, ell);

    std::vector<std::pair<int, int>> edges;
    auto addDiamond = [&edges](const std::vector<int> &shell, int left, int right) {
        int p = shell[0], qq = shell[1], lp = shell[2], lq = shell[3];
        edges.push_back({p, left});
        edges.push_back({left, qq});
        edges.push_back({p, right});
        edges.push_back({right, qq});
        edges.push_back({p, lp});
        edges.push_back({qq, lq});
    };
    for (int i = 0; i < r; ++i)
        addDiamond(ids.shellA[i], ids.a[i], ids.a[i + 1]);
    for (int i = 0; i < r - 1; ++i)
        addDiamond(ids.shellB[i], ids.b[i], ids.b[i + 1]);
    auto aseq = spiralASeq(r), bseq = spiralBSeq(r);
    for (int t = 0; t < r; ++t) {
        edges.push_back({ids.a[aseq[t]], ids.b[bseq[t]]});
        edges.push_back({ids.b[bseq[t]], ids.a[aseq[t + 1]]});
    }
    addTreeEdges(edges, ids.pi1, ids.lam1, q, ell);
    addTreeEdges(edges, ids.pi2, ids.lam2, q, ell);

    int n = 10 * r + 2 * ell + 2 * q - 5;
    Instance inst;
    inst.graph = Graph(n, std::move(edges));

    auto diamondDistricts = [&](std::vector<std::vector<int>> &ds) {
        for (int i = 0; i < r; ++i) {
            std::vector<int> d = ids.shellA[i];
            d.push_back(ids.a[i]);
            if (i == r - 1)
                d.push_back(ids.a[r]);
            ds.push_back(std::move(d));
        }
        for (int i = 0; i < r - 1; ++i) {
            std::vector<int> d = ids.shellB[i];
            d.push_back(ids.b[i]);
            if (i == r - 2)
                d.push_back(ids.b[r - 1]);
            ds.push_back(std::move(d));
        }
    };
    std::vector<std::vector<int>> da, db;
    diamondDistricts(da);
    diamondDistricts(db);
    std::vector<int> path1(ids.pi1.begin() + 1, ids.pi1.end());
    std::vector<int> path2(ids.pi2.begin() + 1, ids.pi2.end());
    // map A: fan singletons in D1, one district for D1's path, all of D2 together
    for (int s = 0; s < ell; ++s)
        da.push_back({ids.lam1[s]});
    if (q >= 2)
        da.push_back(path1);
    std::vector<int> d2all = path2;
    d2all.insert(d2all.end(), ids.lam2.begin(), ids.lam2.end());
    da.push_back(d2all);
    // map B: mirrored
    std::vector<int> d1all = path1;
    d1all.insert(d1all.end(), ids.lam1.begin(), ids.lam1.end());
    db.push_back(d1all);
    for (int s = 0; s < ell; ++s)
        db.push_back({ids.lam2[s]});
    if (q >= 2)
        db.push_back(path2);

    inst.mapA = DistrictMap::fromDistricts(n, std::move(da));
    inst.mapB = DistrictMap::fromDistricts(n, std::move(db));
    inst.meta.kind = "spiral-lb";
    inst.meta.k = inst.mapA.k;
    inst.meta.lowerBound =
        static_cast<long long>(ell) * (binom2(r + 1) + binom2(r)) +
        static_cast<long long>(ell - 1) * 2 * q;
    inst.meta.params = {{"r", r}, {"q", q}, {"ell", ell}};
    auto &roles = inst.meta.roles;
    roles["spiralA"] = ids.a;
    roles["spiralB"] = ids.b;
    std::vector<int> chainA = ids.a, chainB = ids.b;
    for (auto &sh : ids.shellA)
        chainA.insert(chainA.end(), sh.begin(), sh.end());
    for (auto &sh : ids.shellB)
        chainB.insert(chainB.end(), sh.begin(), sh.end());
    roles["chainA"] = chainA;
    roles["chainB"] = chainB;
    roles["treePath1"] = path1;
    roles["treeFan1"] = ids.lam1;
    roles["treePath2"] = path2;
    roles["treeFan2"] = ids.lam2;
    roles["anchors"] = {ids.anchor1(), ids.anchor2()};
    return inst;
}

namespace {

// Chain-state manipulation for the spiral witness. Interiors of a chain are
// owned by the adjacent diamond districts; exactly one diamond owns two
// interiors (the "double") whenever the traveler holds none of them.
struct ChainDriver {
    PlanBuilder &pb;
    const std::vector<int> &interior; // a[] or b[]
    const std::vector<std::vector<int>> &shell;

    int diamondDistrict(int i) const { return pb.districtOf(shell[i][0]); }
    bool owns(int i, int interiorIdx) const {
        return pb.districtOf(interior[interiorIdx]) == diamondDistrict(i);
    }
    int doublePos() const {
        for (int i = 0; i < static_cast<int>(shell.size()); ++i)
            if (owns(i, i) && owns(i, i + 1))
                return i;
        return -1;
    }
    // Hand interior j to the district of `recvVertex`.
    void release(int j, int recvVertex) {
        for (;;) {
            int d = doublePos();
            assert(d >= 0);
            if (d == j || d == j - 1) {
                pb.move(interior[j], recvVertex);
                return;
            }
            if (d > j)
                pb.move(interior[d], shell[d - 1][0]);
            else
                pb.move(interior[d + 1], shell[d + 1][0]);
        }
    }
    // Take interior j back from the traveler; the neighbor diamond absorbs it.
    void absorb(int j) {
        int target = (j == 0) ? 0 : j - 1;
        pb.move(interior[j], shell[target][0]);
    }
    void shiftDoubleTo(int target) {
        for (;;) {
            int d = doublePos();
            assert(d >= 0);
            if (d == target)
                return;
            if (d > target)
                pb.move(interior[d], shell[d - 1][0]);
            else
                pb.move(interior[d + 1], shell[d + 1][0]);
        }
    }
};

} // namespace

SwitchPlan witnessSpiral(const Instance &inst) {
    if (inst.meta.kind != "spiral-lb")
        throw WrongKindError("expected a spiral-lb instance");
    int r = static_cast<int>(inst.meta.params.at("r"));
    int q = static_cast<int>(inst.meta.params.at("q"));
    int ell = static_cast<int>(inst.meta.params.at("ell"));
    SpiralIds ids = spiralIds(r, q, ell);
    auto aseq = spiralASeq(r), bseq = spiralBSeq(r);

    PlanBuilder pb(inst.graph, inst.mapA);
    ChainDriver chainA{pb, ids.a, ids.shellA};
    ChainDriver chainB{pb, ids.b, ids.shellB};

    if (mapSignature(inst.mapA) == mapSignature(inst.mapB))
        return pb.finish(); // degenerate (q = 1, ell = 1)

    int travelers = (q >= 2) ? ell : ell - 1;
    for (int s = 0; s < travelers; ++s) {
        // --- leave D1, ending with the traveler district at {a[0]} ---
        if (q >= 3) {
            pb.move(ids.pi1[q - 1], ids.lam1[s]); // pull the far path vertex in
            pb.move(ids.lam1[s], ids.pi1[1]);     // park the fan vertex in P1
            for (int t = q - 2; t >= 1; --t) {
                pb.move(ids.pi1[t], ids.pi1[t + 1]); // absorb next path vertex
                int back = (t + 2 <= q - 1) ? ids.pi1[t + 2] : ids.lam1[s];
                pb.move(ids.pi1[t + 1], back); // shed the previous one
            }
            chainA.release(0, ids.pi1[1]);
            pb.move(ids.pi1[1], ids.pi1.size() > 2 ? ids.pi1[2] : ids.lam1[s]);
        } else if (q == 2) {
            chainA.release(0, ids.pi1[1]);     // a[0] joins the path district
            pb.move(ids.pi1[1], ids.lam1[s]);  // traveler takes pi1
            pb.move(ids.lam1[s], ids.a[0]);    // fan vertex parks via the anchor
            pb.move(ids.a[0], ids.pi1[1]);     // traveler takes the anchor
            pb.move(ids.pi1[1], ids.lam1[s]);  // and hands pi1 back
        } else { // q == 1: travelers accumulate earlier fan vertices
            chainA.release(0, ids.lam1[s]);
            for (int t = s; t >= 0; --t)
                pb.move(ids.lam1[t], ids.lam1[t + 1]);
        }

        // --- cross the spiral; traveler district currently = {a[0]} ---
        for (int t = 0; t < r; ++t) {
            chainB.release(bseq[t], ids.a[aseq[t]]);
            chainA.absorb(aseq[t]);
            chainA.release(aseq[t + 1], ids.b[bseq[t]]);
            chainB.absorb(bseq[t]);
        }

        // --- enter D2; traveler district = {a[r/2]} ---
        int arrive = ids.anchor2();
        if (q >= 3) {
            pb.move(ids.pi2[1], arrive);
            chainA.absorb(r / 2);
            for (int t = 2; t <= q - 1; ++t) {
                pb.move(ids.pi2[t], ids.pi2[t - 1]);
                int back = (t - 2 >= 1) ? ids.pi2[t - 2] : ids.lam2[ell - 1];
                pb.move(ids.pi2[t - 1], back);
            }
            pb.move(ids.lam2[s], ids.pi2[q - 1]);
            pb.move(ids.pi2[q - 1], ids.pi2[q - 2]);
        } else if (q == 2) {
            pb.move(ids.lam2[s], arrive);
            chainA.absorb(r / 2);
        } else { // q == 1: take the free end of the fan chain
            pb.move(ids.lam2[ell - 1 - s], arrive);
            chainA.absorb(r / 2);
        }
    }
    chainA.shiftDoubleTo(r - 1);
    chainB.shiftDoubleTo(r - 2);
    SwitchPlan plan = pb.finish();
    if (plan.endSignature != mapSignature(inst.mapB).str())
        throw InvalidPlanError("spiral witness did not reach map B");
    return plan;
}

// ---------------------------------------------------------------------------
// Shortest-path hardness reduction
// ---------------------------------------------------------------------------

namespace {

struct SpIds {
    int n, m;
    bool variant;
    long long budget;
    // per variable: l[5], r[5], d1, d2, u1, u2
    int L(int i, int t) const { return 14 * i + (t - 1); }
    int R(int i, int t) const { return 14 * i + 5 + (t - 1); }
    int D1(int i) const { return 14 * i + 10; }
    int D2(int i) const { return 14 * i + 11; }
    int U1(int i) const { return 14 * i + 12; }
    int U2(int i) const { return 14 * i + 13; }
    int C1(int j) const { return 14 * n + 2 * j; }
    int C2(int j) const { return 14 * n + 2 * j + 1; }
    int O() const { return 14 * n + 2 * m; }
    int I() const { return O() + 1; }
    int mid(int t) const { return O() + 2 + t; }
    int midCount() const { return m + n - 1; }
    int baseCount() const { return 14 * n + 2 * m + 2 + midCount(); }
    int chainL(int i, int t) const { return baseCount() + static_cast<int>(2 * i * budget) + t; }
    int chainR(int i, int t) const {
        return baseCount() + static_cast<int>((2 * i + 1) * budget) + t;
    }
};

} // namespace

Instance genSpHardness(const Cnf &cnf, bool contractibleVariant) {
    cnf.validate();
    SpIds ids;
    ids.n = cnf.numVars;
    ids.m = cnf.numClauses();
    ids.variant = contractibleVariant;
    ids.budget = 4LL * ids.m + 6LL * ids.n - 1;

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < ids.n; ++i) {
        // left/right pentagon-with-chord gadget (see README): cycle
        // l1-l2-l3-d1-l4-l1 plus chord l1-l3, pendant l5 on l3
        auto side = [&](auto L) {
            if (!contractibleVariant)
                edges.push_back({L(i, 2), L(i, 3)});
            edges.push_back({L(i, 1), L(i, 2)});
            edges.push_back({L(i, 1), L(i, 3)});
            edges.push_back({L(i, 1), L(i, 4)});
            edges.push_back({L(i, 3), ids.D1(i)});
            edges.push_back({L(i, 4), ids.D1(i)});
            edges.push_back({L(i, 3), L(i, 5)});
        };
        side([&](int a, int b) { return ids.L(a, b); });
        side([&](int a, int b) { return ids.R(a, b); });
        edges.push_back({ids.D1(i), ids.D2(i)});
        edges.push_back({ids.U1(i), ids.U2(i)});
        edges.push_back({ids.U1(i), ids.L(i, 1)});
        edges.push_back({ids.U1(i), ids.R(i, 1)});
    }
    std::set<std::pair<int, int>> literalEdges;
    for (int j = 0; j < ids.m; ++j) {
        edges.push_back({ids.C1(j), ids.C2(j)});
        for (int lit : cnf.clauses[j]) {
            int i = std::abs(lit) - 1;
            int gate = (lit > 0) ? ids.L(i, 1) : ids.R(i, 1);
            literalEdges.insert({std::min(ids.C2(j), gate), std::max(ids.C2(j), gate)});
        }
    }
    edges.insert(edges.end(), literalEdges.begin(), literalEdges.end());
    for (int t = 0; t < ids.midCount(); ++t) {
        edges.push_back({ids.O(), ids.mid(t)});
        edges.push_back({ids.I(), ids.mid(t)});
    }
    for (int i = 0; i < ids.n; ++i) {
        edges.push_back({ids.O(), ids.L(i, 1)});
        edges.push_back({ids.O(), ids.R(i, 1)});
    }
    int total = ids.baseCount();
    if (contractibleVariant) {
        for (int i = 0; i < ids.n; ++i) {
            auto chain = [&](auto L, auto C) {
                edges.push_back({L(i, 2), C(i, 0)});
                for (int t = 0; t + 1 < ids.budget; ++t)
                    edges.push_back({C(i, t), C(i, t + 1)});
                edges.push_back({C(i, static_cast<int>(ids.budget) - 1), L(i, 3)});
            };
            chain([&](int a, int b) { return ids.L(a, b); },
                  [&](int a, int b) { return ids.chainL(a, b); });
            chain([&](int a, int b) { return ids.R(a, b); },
                  [&](int a, int b) { return ids.chainR(a, b); });
        }
        total += static_cast<int>(2 * ids.n * ids.budget);
    }

    Instance inst;
    inst.graph = Graph(total, std::move(edges));

    auto sideDistrict = [&](int i, bool left) {
        std::vector<int> d;
        auto L = [&](int a, int b) { return left ? ids.L(a, b) : ids.R(a, b); };
        if (!contractibleVariant) {
            for (int t = 1; t <= 5; ++t)
                d.push_back(L(i, t));
        } else {
            d = {L(i, 1), L(i, 3), L(i, 4), L(i, 5)};
            for (int t = 0; t < ids.budget; ++t)
                d.push_back(left ? ids.chainL(i, t) : ids.chainR(i, t));
        }
        return d;
    };
    auto commonDistricts = [&](std::vector<std::vector<int>> &ds) {
        for (int i = 0; i < ids.n; ++i) {
            ds.push_back(sideDistrict(i, true));
            ds.push_back(sideDistrict(i, false));
            if (contractibleVariant) {
                ds.push_back({ids.L(i, 2)});
                ds.push_back({ids.R(i, 2)});
            }
            ds.push_back({ids.D1(i), ids.D2(i)});
        }
    };
    std::vector<std::vector<int>> da, db;
    commonDistricts(da);
    commonDistricts(db);
    for (int i = 0; i < ids.n; ++i)
        da.push_back({ids.U1(i), ids.U2(i)});
    for (int j = 0; j < ids.m; ++j)
        da.push_back({ids.C1(j), ids.C2(j)});
    da.push_back({ids.O()});
    da.push_back({ids.I()});
    for (int t = 0; t < ids.midCount(); ++t)
        da.push_back({ids.mid(t)});

    for (int i = 0; i < ids.n; ++i) {
        db.push_back({ids.U2(i)});
        db.push_back({ids.U1(i)});
    }
    for (int j = 0; j < ids.m; ++j) {
        db.push_back({ids.C1(j)});
        db.push_back({ids.C2(j)});
    }
    std::vector<int> pipe{ids.O(), ids.I()};
    for (int t = 0; t < ids.midCount(); ++t)
        pipe.push_back(ids.mid(t));
    db.push_back(pipe);

    inst.mapA = DistrictMap::fromDistricts(total, std::move(da));
    inst.mapB = DistrictMap::fromDistricts(total, std::move(db));
    inst.meta.kind = contractibleVariant ? "sp-hardness-contractible" : "sp-hardness";
    inst.meta.k = inst.mapA.k;
    inst.meta.budget = ids.budget;
    inst.meta.params = {{"n", ids.n}, {"m", ids.m}, {"variant", contractibleVariant ? 1 : 0}};
    auto &roles = inst.meta.roles;
    for (int i = 0; i < ids.n; ++i) {
        roles["gatesL"].push_back(ids.L(i, 1));
        roles["gatesR"].push_back(ids.R(i, 1));
        roles["dGate"].push_back(ids.D1(i));
        roles["dLeaf"].push_back(ids.D2(i));
        roles["uHub"].push_back(ids.U1(i));
        roles["uLeaf"].push_back(ids.U2(i));
        roles["openL"].push_back(ids.L(i, 3));
        roles["openR"].push_back(ids.R(i, 3));
        roles["leafL"].push_back(ids.L(i, 5));
        roles["leafR"].push_back(ids.R(i, 5));
    }
    for (int j = 0; j < ids.m; ++j) {
        roles["clauseLeaf"].push_back(ids.C1(j));
        roles["clauseDock"].push_back(ids.C2(j));
    }
    roles["pipeO"] = {ids.O()};
    roles["pipeI"] = {ids.I()};
    for (int t = 0; t < ids.midCount(); ++t)
        roles["pipeMid"].push_back(ids.mid(t));
    return inst;
}

SwitchPlan witnessSp(const Instance &inst, const std::vector<bool> &assignment) {
    if (inst.meta.kind != "sp-hardness" && inst.meta.kind != "sp-hardness-contractible")
        throw WrongKindError("expected an sp-hardness instance");
    int n = static_cast<int>(inst.meta.params.at("n"));
    int m = static_cast<int>(inst.meta.params.at("m"));
    const auto &gatesL = inst.role("gatesL");
    const auto &gatesR = inst.role("gatesR");
    const auto &dGate = inst.role("dGate");
    const auto &dLeaf = inst.role("dLeaf");
    const auto &uHub = inst.role("uHub");
    const auto &uLeaf = inst.role("uLeaf");
    const auto &clauseDock = inst.role("clauseDock");
    const auto &openL = inst.role("openL");
    const auto &openR = inst.role("openR");
    int O = inst.roleVertex("pipeO", 0);
    const auto &mids = inst.role("pipeMid");

    if (static_cast<int>(assignment.size()) != n)
        throw BadParamsError("assignment length mismatch");
    // Reconstruct the formula's clause-gate adjacency from the graph.
    std::vector<int> clauseVar(m, -1);
    std::vector<int> clauseGate(m, -1);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n && clauseVar[j] < 0; ++i) {
            int gate = assignment[i] ? gatesL[i] : gatesR[i];
            if (inst.graph.hasEdge(clauseDock[j], gate)) {
                clauseVar[j] = i;
                clauseGate[j] = gate;
            }
        }
        if (clauseVar[j] < 0)
            throw NotSatisfyingError("clause " + std::to_string(j + 1) +
                                     " has no true literal under the assignment");
    }

    PlanBuilder pb(inst.graph, inst.mapA);
    // (A) open the chosen gate of every variable
    for (int i = 0; i < n; ++i)
        pb.move(dGate[i], assignment[i] ? openL[i] : openR[i]);

    // traveler order: variable i, then the clauses routed through its gate
    struct Trav {
        bool isClause;
        int idx;
    };
    std::vector<Trav> order;
    for (int i = 0; i < n; ++i) {
        order.push_back({false, i});
        for (int j = 0; j < m; ++j)
            if (clauseVar[j] == i)
                order.push_back({true, j});
    }
    std::vector<int> lastGateHolderDest(n, -1); // destination vertex of the last user
    int midCursor = 0;
    for (size_t t = 0; t < order.size(); ++t) {
        const Trav &tr = order[t];
        int i = tr.isClause ? clauseVar[tr.idx] : tr.idx;
        int gate = assignment[i] ? gatesL[i] : gatesR[i];
        if (t > 0) {
            int ownMid = mids[midCursor++];
            pb.move(O, ownMid);  // take O over from the previous traveler
            pb.move(ownMid, inst.roleVertex("pipeI", 0)); // drop the ferry vertex
        }
        pb.move(gate, O); // acquire the open gate
        int dest = tr.isClause ? clauseDock[tr.idx] : uHub[i];
        pb.move(dest, gate);
        lastGateHolderDest[i] = dest;
    }
    // (D) the I-district absorbs O
    pb.move(O, mids[0]);
    // (E) close gates and restore the d-districts
    for (int i = 0; i < n; ++i) {
        int gate = assignment[i] ? gatesL[i] : gatesR[i];
        int home = assignment[i] ? openL[i] : openR[i]; // l3/r3 is always in the side district
        pb.move(gate, home);
        pb.move(dGate[i], dLeaf[i]);
    }
    (void)uLeaf;
    SwitchPlan plan = pb.finish();
    if (plan.endSignature != mapSignature(inst.mapB).str())
        throw InvalidPlanError("sp witness did not reach map B");
    return plan;
}

// ---------------------------------------------------------------------------
// Connectedness hardness reduction
// ---------------------------------------------------------------------------

namespace {

struct ConnIds {
    int n, m;
    // variable gadget: v1..v18 with v8 == v5
    int V(int i, int t) const {
        if (t == 8)
            t = 5;
        return 17 * i + (t <= 7 ? t - 1 : t - 2);
    }
    int U(int j, int t) const { return 17 * n + 6 * j + (t - 1); }
    int N1() const { return 17 * n + 6 * m; }
    int N2() const { return N1() + 1; }
    int F(int t) const { return N1() + 2 + t; } // f0..f3
    int B1() const { return N1() + 6; }
    int B3() const { return N1() + 7; }
    int B4() const { return N1() + 8; }
    int X(int t) const { return N1() + 9 + t; } // m+n-1 of them
    int midCount() const { return m + n - 1; }
    int LB1() const { return X(midCount()); }
    int LB3() const { return LB1() + 1; }
    int GA1() const { return LB3() + 1; }
    int GG1() const { return GA1() + 1; }
    int GG2() const { return GA1() + 2; }
    int GL1() const { return GA1() + 3; }
    int GL2() const { return GA1() + 4; }
    int P(int t) const { return GL2() + 1 + t; } // p0..pn
    int total() const { return P(n) + 1; }
};

} // namespace

Instance genConnHardness(const Cnf &cnf) {
    cnf.validate();
    ConnIds ids;
    ids.n = cnf.numVars;
    ids.m = cnf.numClauses();

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < ids.n; ++i) {
        // two pentagons sharing v5=v8, four leaves, two hubs with leaves
        int cycleA[5] = {ids.V(i, 1), ids.V(i, 2), ids.V(i, 3), ids.V(i, 4), ids.V(i, 5)};
        int cycleB[5] = {ids.V(i, 6), ids.V(i, 7), ids.V(i, 8), ids.V(i, 9), ids.V(i, 10)};
        for (int t = 0; t < 5; ++t) {
            edges.push_back({cycleA[t], cycleA[(t + 1) % 5]});
            edges.push_back({cycleB[t], cycleB[(t + 1) % 5]});
        }
        edges.push_back({ids.V(i, 11), ids.V(i, 1)});
        edges.push_back({ids.V(i, 12), ids.V(i, 4)});
        edges.push_back({ids.V(i, 13), ids.V(i, 7)});
        edges.push_back({ids.V(i, 14), ids.V(i, 9)});
        for (int hub : {15, 16}) {
            edges.push_back({ids.V(i, hub), ids.V(i, 3)});
            edges.push_back({ids.V(i, hub), ids.V(i, 5)});
            edges.push_back({ids.V(i, hub), ids.V(i, 10)});
        }
        edges.push_back({ids.V(i, 17), ids.V(i, 15)});
        edges.push_back({ids.V(i, 18), ids.V(i, 16)});
        for (int super : {ids.N1(), ids.N2()})
            for (int t : {1, 4, 7, 9, 15, 16})
                edges.push_back({super, ids.V(i, t)});
    }
    std::set<std::pair<int, int>> literalEdges;
    for (int j = 0; j < ids.m; ++j) {
        edges.push_back({ids.U(j, 1), ids.U(j, 2)});
        edges.push_back({ids.U(j, 2), ids.U(j, 3)});
        edges.push_back({ids.U(j, 3), ids.U(j, 4)});
        edges.push_back({ids.U(j, 4), ids.U(j, 1)});
        edges.push_back({ids.U(j, 5), ids.U(j, 2)});
        edges.push_back({ids.U(j, 6), ids.U(j, 4)});
        for (int lit : cnf.clauses[j]) {
            int i = std::abs(lit) - 1;
            int gate = (lit > 0) ? ids.V(i, 2) : ids.V(i, 6);
            literalEdges.insert({std::min(ids.U(j, 1), gate), std::max(ids.U(j, 1), gate)});
        }
    }
    edges.insert(edges.end(), literalEdges.begin(), literalEdges.end());
    // frame: cycle N1 - f0 - u(0,3) - ... - u(m-1,3) - f1 - N1, leaves f2, f3
    edges.push_back({ids.N1(), ids.F(0)});
    edges.push_back({ids.F(0), ids.U(0, 3)});
    for (int j = 0; j + 1 < ids.m; ++j)
        edges.push_back({ids.U(j, 3), ids.U(j + 1, 3)});
    edges.push_back({ids.U(ids.m - 1, 3), ids.F(1)});
    edges.push_back({ids.F(1), ids.N1()});
    edges.push_back({ids.F(2), ids.F(0)});
    edges.push_back({ids.F(3), ids.F(1)});
    // blue reservoir: cycle b1 - N2 - b3 - b4 - x0 - ... - x_last - b1
    edges.push_back({ids.B1(), ids.N2()});
    edges.push_back({ids.N2(), ids.B3()});
    edges.push_back({ids.B3(), ids.B4()});
    int prev = ids.B4();
    for (int t = 0; t < ids.midCount(); ++t) {
        edges.push_back({prev, ids.X(t)});
        prev = ids.X(t);
    }
    edges.push_back({prev, ids.B1()});
    edges.push_back({ids.LB1(), ids.B1()});
    edges.push_back({ids.LB3(), ids.B3()});
    // the reservoir exit b4 reaches every gate vertex
    for (int i = 0; i < ids.n; ++i) {
        edges.push_back({ids.B4(), ids.V(i, 2)});
        edges.push_back({ids.B4(), ids.V(i, 6)});
    }
    // garbage collection gadget: diamond on ga1/gg1/N2/gg2 with leaves, plus path
    edges.push_back({ids.GA1(), ids.GG1()});
    edges.push_back({ids.GG1(), ids.N2()});
    edges.push_back({ids.N2(), ids.GG2()});
    edges.push_back({ids.GG2(), ids.GA1()});
    edges.push_back({ids.GL1(), ids.GG1()});
    edges.push_back({ids.GL2(), ids.GG2()});
    for (int i = 0; i < ids.n; ++i) {
        edges.push_back({ids.GA1(), ids.V(i, 2)});
        edges.push_back({ids.GA1(), ids.V(i, 6)});
    }
    edges.push_back({ids.GA1(), ids.P(0)});
    for (int t = 0; t < ids.n; ++t)
        edges.push_back({ids.P(t), ids.P(t + 1)});

    Instance inst;
    inst.graph = Graph(ids.total(), std::move(edges));

    auto variableDistricts = [&](std::vector<std::vector<int>> &ds) {
        for (int i = 0; i < ids.n; ++i) {
            ds.push_back({ids.V(i, 1), ids.V(i, 2), ids.V(i, 3), ids.V(i, 4), ids.V(i, 11),
                          ids.V(i, 12)});
            ds.push_back({ids.V(i, 6), ids.V(i, 7), ids.V(i, 9), ids.V(i, 10), ids.V(i, 13),
                          ids.V(i, 14)});
            ds.push_back(
                {ids.V(i, 5), ids.V(i, 15), ids.V(i, 16), ids.V(i, 17), ids.V(i, 18)});
        }
    };
    std::vector<std::vector<int>> da, db;
    variableDistricts(da);
    variableDistricts(db);
    for (int j = 0; j < ids.m; ++j)
        da.push_back({ids.U(j, 1), ids.U(j, 2), ids.U(j, 4), ids.U(j, 5), ids.U(j, 6)});
    std::vector<int> frameA{ids.N1(), ids.F(0), ids.F(1), ids.F(2), ids.F(3)};
    for (int j = 0; j < ids.m; ++j)
        frameA.push_back(ids.U(j, 3));
    da.push_back(frameA);
    da.push_back({ids.B1(), ids.N2(), ids.B3(), ids.LB1(), ids.LB3()});
    da.push_back({ids.B4()});
    for (int t = 0; t < ids.midCount(); ++t)
        da.push_back({ids.X(t)});
    da.push_back({ids.GA1(), ids.GG1(), ids.GG2(), ids.GL1(), ids.GL2()});
    std::vector<int> purple;
    for (int t = 0; t <= ids.n; ++t)
        purple.push_back(ids.P(t));
    da.push_back(purple);

    for (int j = 0; j < ids.m; ++j) {
        db.push_back({ids.U(j, 2), ids.U(j, 3), ids.U(j, 4), ids.U(j, 5), ids.U(j, 6)});
        db.push_back({ids.U(j, 1)});
    }
    db.push_back({ids.N1(), ids.F(0), ids.F(1), ids.F(2), ids.F(3)});
    std::vector<int> blueB{ids.B1(), ids.N2(), ids.B3(), ids.B4(), ids.LB1(), ids.LB3()};
    for (int t = 0; t < ids.midCount(); ++t)
        blueB.push_back(ids.X(t));
    db.push_back(blueB);
    db.push_back({ids.GA1(), ids.GG1(), ids.GG2(), ids.GL1(), ids.GL2()});
    for (int t = 0; t < ids.n; ++t)
        db.push_back({ids.P(t)});
    db.push_back({ids.P(ids.n)});

    inst.mapA = DistrictMap::fromDistricts(ids.total(), std::move(da));
    inst.mapB = DistrictMap::fromDistricts(ids.total(), std::move(db));
    inst.meta.kind = "conn-hardness";
    inst.meta.k = inst.mapA.k;
    inst.meta.params = {{"n", ids.n}, {"m", ids.m}};
    auto &roles = inst.meta.roles;
    for (int i = 0; i < ids.n; ++i) {
        roles["gateTrue"].push_back(ids.V(i, 2));
        roles["gateFalse"].push_back(ids.V(i, 6));
        roles["hubLow"].push_back(ids.V(i, 15));
        roles["shared"].push_back(ids.V(i, 5));
        roles["vA1"].push_back(ids.V(i, 1));
        roles["vA3"].push_back(ids.V(i, 3));
        roles["vB7"].push_back(ids.V(i, 7));
        roles["vB10"].push_back(ids.V(i, 10));
    }
    for (int j = 0; j < ids.m; ++j) {
        roles["clauseDock"].push_back(ids.U(j, 1));
        roles["clauseTop"].push_back(ids.U(j, 3));
        roles["clauseSide"].push_back(ids.U(j, 2));
    }
    roles["superNodes"] = {ids.N1(), ids.N2()};
    roles["frame"] = {ids.F(0), ids.F(1), ids.F(2), ids.F(3)};
    roles["reservoirExit"] = {ids.B4()};
    roles["reservoirAnchor"] = {ids.B1(), ids.B3()};
    for (int t = 0; t < ids.midCount(); ++t)
        roles["reservoirMid"].push_back(ids.X(t));
    roles["garbageDoor"] = {ids.GA1()};
    roles["garbageCycle"] = {ids.GG1(), ids.GG2()};
    for (int t = 0; t <= ids.n; ++t)
        roles["garbagePath"].push_back(ids.P(t));
    return inst;
}

SwitchPlan witnessConn(const Instance &inst, const std::vector<bool> &assignment) {
    if (inst.meta.kind != "conn-hardness")
        throw WrongKindError("expected a conn-hardness instance");
    int n = static_cast<int>(inst.meta.params.at("n"));
    int m = static_cast<int>(inst.meta.params.at("m"));
    ConnIds ids;
    ids.n = n;
    ids.m = m;
    if (static_cast<int>(assignment.size()) != n)
        throw BadParamsError("assignment length mismatch");

    // per-clause gate (smallest variable with a true literal adjacent)
    std::vector<int> clauseGate(m, -1);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n && clauseGate[j] < 0; ++i) {
            int gate = assignment[i] ? ids.V(i, 2) : ids.V(i, 6);
            if (inst.graph.hasEdge(ids.U(j, 1), gate))
                clauseGate[j] = gate;
        }
        if (clauseGate[j] < 0)
            throw NotSatisfyingError("clause " + std::to_string(j + 1) +
                                     " has no true literal under the assignment");
    }

    PlanBuilder pb(inst.graph, inst.mapA);

    // the home neighbor a gate vertex rejoins when returning to its district
    auto gateHome = [&](int gate) {
        for (int i = 0; i < n; ++i) {
            if (gate == ids.V(i, 2))
                return ids.V(i, 1);
            if (gate == ids.V(i, 6))
                return ids.V(i, 7);
        }
        throw InvalidPlanError("not a gate vertex");
    };

    // open / close a gate using an available super node
    auto openGate = [&](int i, int super, int superHome) {
        pb.move(super, ids.V(i, 15));
        if (assignment[i]) {
            pb.move(ids.V(i, 5), ids.V(i, 1));
            pb.move(ids.V(i, 3), ids.V(i, 15));
        } else {
            pb.move(ids.V(i, 5), ids.V(i, 7));
            pb.move(ids.V(i, 10), ids.V(i, 15));
        }
        pb.move(super, superHome);
    };
    auto closeGate = [&](int i, int super, int superHome) {
        pb.move(super, ids.V(i, 15));
        if (assignment[i]) {
            pb.move(ids.V(i, 3), ids.V(i, 2));
            pb.move(ids.V(i, 5), ids.V(i, 15));
        } else {
            pb.move(ids.V(i, 10), ids.V(i, 6));
            pb.move(ids.V(i, 5), ids.V(i, 15));
        }
        pb.move(super, superHome);
    };

    // phase 1: open every gate per the assignment, shuttling N1
    for (int i = 0; i < n; ++i)
        openGate(i, ids.N1(), ids.F(0));
    // phase 2: each clause district takes its u3 from the frame
    for (int j = 0; j < m; ++j)
        pb.move(ids.U(j, 3), ids.U(j, 2));

    // phase 3: ferry blue mobiles out of the reservoir, one transit at a time
    int remainingMids = ids.midCount(); // mobile singletons beyond b4
    auto shiftConveyor = [&]() {
        if (remainingMids == 0)
            return;
        // the mobile at x0 took b4; cascade everyone one slot forward and let
        // the rearmost donate its vertex to the blue district
        for (int s = 0; s + 1 < remainingMids; ++s)
            pb.move(ids.X(s), ids.X(s + 1));
        int beyond = (remainingMids == ids.midCount()) ? ids.B1() : ids.X(remainingMids);
        pb.move(ids.X(remainingMids - 1), beyond);
        --remainingMids;
    };
    auto shedB4 = [&]() {
        if (remainingMids > 0)
            pb.move(ids.B4(), ids.X(0));
        else
            pb.move(ids.B4(), ids.B3());
    };
    for (int j = 0; j < m; ++j) { // clause transits
        int gate = clauseGate[j];
        pb.move(gate, ids.B4());
        pb.move(ids.U(j, 1), gate);
        shedB4();
        pb.move(gate, gateHome(gate));
        shiftConveyor();
    }
    std::vector<int> parkedGate(n);
    for (int i = 0; i < n; ++i) { // parking transits
        parkedGate[i] = assignment[i] ? ids.V(i, 2) : ids.V(i, 6);
        pb.move(parkedGate[i], ids.B4());
        shedB4();
        shiftConveyor();
    }

    // phase 4: open the garbage gadget and flush the parked mobiles
    pb.move(ids.N2(), ids.GG1());
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            pb.move(ids.GA1(), parkedGate[0]); // later mobiles receive it below
            pb.move(ids.P(0), ids.GA1());
            pb.move(parkedGate[0], gateHome(parkedGate[0]));
            for (int d = 1; d < n; ++d)
                pb.move(ids.P(d), ids.P(d - 1));
        } else {
            pb.move(parkedGate[i], gateHome(parkedGate[i]));
        }
        // hand the door and the path prefix to the next mobile (or back to the
        // garbage district when this is the last one)
        int slot = n - 1 - i; // this mobile ends at p[slot]
        if (i == n - 1)
            pb.move(ids.GA1(), ids.GG1());
        else
            pb.move(ids.GA1(), parkedGate[i + 1]);
        for (int d = 0; d < slot; ++d)
            pb.move(ids.P(d), d == 0 ? ids.GA1() : ids.P(d - 1));
    }
    pb.move(ids.N2(), ids.B1());

    // phase 5: close every gate, shuttling N2 out of the finished reservoir
    for (int i = 0; i < n; ++i)
        closeGate(i, ids.N2(), ids.B1());

    SwitchPlan plan = pb.finish();
    if (plan.endSignature != mapSignature(inst.mapB).str())
        throw InvalidPlanError("conn witness did not reach map B");
    return plan;
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

namespace {

std::set<int> roleSet(const Instance &inst, const std::string &name) {
    auto it = inst.meta.roles.find(name);
    if (it == inst.meta.roles.end())
        return {};
    return {it->second.begin(), it->second.end()};
}

std::map<int, int> roleIndex(const Instance &inst, const std::string &name) {
    std::map<int, int> out;
    auto it = inst.meta.roles.find(name);
    if (it == inst.meta.roles.end())
        return out;
    for (size_t i = 0; i < it->second.size(); ++i)
        out[it->second[i]] = static_cast<int>(i);
    return out;
}

} // namespace

AuditReport auditPlan(const Instance &inst, const SwitchPlan &plan) {
    AuditReport rep;
    rep.kind = inst.meta.kind;
    const Graph &g = inst.graph;

    struct Rec {
        int v, from, to;
        bool targetHoldsPartner = false; // kind-specific flag, see below
    };
    std::vector<Rec> recs;
    recs.reserve(plan.steps.size());

    auto gateL = roleIndex(inst, "gatesL"), gateR = roleIndex(inst, "gatesR");
    auto dGateIdx = roleIndex(inst, "dGate");
    std::set<int> dGate = roleSet(inst, "dGate"), uHub = roleSet(inst, "uHub"),
                  clauseDock = roleSet(inst, "clauseDock"), pipeMid = roleSet(inst, "pipeMid");
    auto dLeaf = inst.meta.roles.count("dLeaf") ? inst.meta.roles.at("dLeaf")
                                                : std::vector<int>{};
    auto leafL = inst.meta.roles.count("leafL") ? inst.meta.roles.at("leafL")
                                                : std::vector<int>{};
    auto leafR = inst.meta.roles.count("leafR") ? inst.meta.roles.at("leafR")
                                                : std::vector<int>{};
    int pipeO = inst.meta.roles.count("pipeO") ? inst.meta.roles.at("pipeO")[0] : -1;
    int pipeI = inst.meta.roles.count("pipeI") ? inst.meta.roles.at("pipeI")[0] : -1;

    DistrictMap cur = inst.mapA;
    long long leafMoves = 0;
    for (size_t idx = 0; idx < plan.steps.size(); ++idx) {
        const Switch &s = plan.steps[idx];
        Rec r;
        r.v = s.v;
        r.from = cur.districtOf(s.v);
        r.to = cur.districtOf(s.w);
        if (g.degree(s.v) == 1)
            ++leafMoves;
        // flags that need the mid-plan state
        if (rep.kind == "sp-hardness" || rep.kind == "sp-hardness-contractible") {
            if (dGate.count(s.v)) {
                int i = dGateIdx.at(s.v);
                r.targetHoldsPartner = cur.districtOf(dLeaf[i]) == r.to;
            } else if (gateL.count(s.v)) {
                int i = gateL.at(s.v);
                r.targetHoldsPartner = cur.districtOf(leafL[i]) == r.to;
            } else if (gateR.count(s.v)) {
                int i = gateR.at(s.v);
                r.targetHoldsPartner = cur.districtOf(leafR[i]) == r.to;
            }
        }
        try {
            applySwitchInPlace(g, cur, s);
        } catch (const InvalidSwitchError &e) {
            throw InvalidPlanError("audit: step " + std::to_string(idx + 1) +
                                   " invalid: " + e.what());
        }
        recs.push_back(r);
    }
    if (!(mapSignature(cur) == mapSignature(inst.mapB)))
        throw InvalidPlanError("audit: plan does not end at map B");

    rep.counts["total"] = static_cast<long long>(plan.steps.size());
    rep.counts["leafMoves"] = leafMoves;

    if (rep.kind == "sp-hardness" || rep.kind == "sp-hardness-contractible") {
        // destiny of each district at the end of the plan
        int D = cur.k;
        std::vector<int> destiny(D, 0); // 1 = variable traveler, 2 = clause traveler
        for (int v : inst.role("uHub"))
            destiny[cur.districtOf(v)] = 1;
        for (int v : inst.role("clauseDock"))
            destiny[cur.districtOf(v)] = 2;
        int pipeDistrict = cur.districtOf(pipeI);
        long long A = 0, B = 0, C = 0, Dd = 0, E = 0, other = 0;
        for (const auto &r : recs) {
            if (dGate.count(r.v)) {
                (r.targetHoldsPartner ? E : A) += 1;
            } else if (gateL.count(r.v) || gateR.count(r.v)) {
                if (r.targetHoldsPartner)
                    E += 1;
                else if (destiny[r.to] == 1)
                    B += 1;
                else if (destiny[r.to] == 2)
                    C += 1;
                else
                    other += 1;
            } else if (uHub.count(r.v)) {
                B += 1;
            } else if (clauseDock.count(r.v)) {
                C += 1;
            } else if (r.v == pipeO) {
                if (r.to == pipeDistrict)
                    Dd += 1;
                else if (destiny[r.to] == 1)
                    B += 1;
                else if (destiny[r.to] == 2)
                    C += 1;
                else
                    other += 1;
            } else if (pipeMid.count(r.v)) {
                if (destiny[r.from] == 1)
                    B += 1;
                else if (destiny[r.from] == 2)
                    C += 1;
                else
                    other += 1;
            } else {
                other += 1;
            }
        }
        rep.counts["gateOpen"] = A;
        rep.counts["variableTravel"] = B;
        rep.counts["clauseTravel"] = C;
        rep.counts["pipeConsolidate"] = Dd;
        rep.counts["gateCloseRestore"] = E;
        rep.counts["other"] = other;
    } else if (rep.kind == "spiral-lb") {
        std::set<int> chain = roleSet(inst, "chainA");
        for (int v : inst.role("chainB"))
            chain.insert(v);
        std::set<int> tree = roleSet(inst, "treePath1");
        for (const char *nm : {"treeFan1", "treePath2", "treeFan2"})
            for (int v : roleSet(inst, nm))
                tree.insert(v);
        long long diamondTerm = 0, treeTerm = 0, other = 0;
        for (const auto &r : recs) {
            if (chain.count(r.v))
                ++diamondTerm;
            else if (tree.count(r.v))
                ++treeTerm;
            else
                ++other;
        }
        rep.counts["diamondTerm"] = diamondTerm;
        rep.counts["treeTerm"] = treeTerm;
        rep.counts["other"] = other;
    } else if (rep.kind == "conn-hardness") {
        std::set<int> gates = roleSet(inst, "gateTrue");
        for (int v : roleSet(inst, "gateFalse"))
            gates.insert(v);
        std::set<int> supers = roleSet(inst, "superNodes");
        std::set<int> reservoir = roleSet(inst, "reservoirMid");
        for (int v : roleSet(inst, "reservoirExit"))
            reservoir.insert(v);
        std::set<int> garbage = roleSet(inst, "garbagePath");
        for (int v : roleSet(inst, "garbageDoor"))
            garbage.insert(v);
        long long gateMoves = 0, superMoves = 0, reservoirMoves = 0, garbageMoves = 0;
        for (const auto &r : recs) {
            if (gates.count(r.v))
                ++gateMoves;
            if (supers.count(r.v))
                ++superMoves;
            if (reservoir.count(r.v))
                ++reservoirMoves;
            if (garbage.count(r.v))
                ++garbageMoves;
        }
        rep.counts["gateMoves"] = gateMoves;
        rep.counts["superMoves"] = superMoves;
        rep.counts["reservoirMoves"] = reservoirMoves;
        rep.counts["garbageMoves"] = garbageMoves;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Bundle IO
// ---------------------------------------------------------------------------

namespace {

std::string readFile(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in)
        throw ParseError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void writeFile(const std::filesystem::path &p, const std::string &content) {
    std::ofstream out(p);
    if (!out)
        throw DomainError("cannot write " + p.string());
    out << content;
}

} // namespace

void saveInstance(const Instance &inst, const std::string &dir, const SwitchPlan *witness) {
    std::filesystem::create_directories(dir);
    std::filesystem::path base(dir);
    writeFile(base / "graph.txt", serializeGraph(inst.graph));
    writeFile(base / "mapA.txt", serializeMap(inst.mapA));
    writeFile(base / "mapB.txt", serializeMap(inst.mapB));
    json meta;
    meta["kind"] = inst.meta.kind;
    meta["k"] = inst.meta.k;
    meta["n"] = inst.graph.numVertices();
    meta["m"] = inst.graph.numEdges();
    if (inst.meta.budget)
        meta["budget"] = *inst.meta.budget;
    if (inst.meta.lowerBound)
        meta["lowerBound"] = *inst.meta.lowerBound;
    meta["params"] = inst.meta.params;
    meta["roles"] = inst.meta.roles;
    writeFile(base / "meta.json", meta.dump(2) + "\n");
    if (witness)
        writeFile(base / "witness.plan", serializePlan(*witness));
}

Instance loadInstance(const std::string &dir) {
    std::filesystem::path base(dir);
    Instance inst;
    inst.graph = loadGraph(readFile(base / "graph.txt"));
    inst.mapA = loadMap(readFile(base / "mapA.txt"), inst.graph);
    inst.mapB = loadMap(readFile(base / "mapB.txt"), inst.graph);
    json meta = json::parse(readFile(base / "meta.json"));
    inst.meta.kind = meta.at("kind").get<std::string>();
    inst.meta.k = meta.at("k").get<int>();
    if (meta.contains("budget"))
        inst.meta.budget = meta["budget"].get<long long>();
    if (meta.contains("lowerBound"))
        inst.meta.lowerBound = meta["lowerBound"].get<long long>();
    if (meta.contains("params"))
        inst.meta.params = meta["params"].get<std::map<std::string, long long>>();
    if (meta.contains("roles"))
        inst.meta.roles = meta["roles"].get<std::map<std::string, std::vector<int>>>();
    return inst;
}

} // namespace redist
