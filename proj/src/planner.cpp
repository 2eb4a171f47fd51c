#include "redist/planner.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>

#include "redist/spqr.hpp"

namespace redist {

namespace {

bool subsetOf(const std::vector<int> &small, const std::vector<int> &big) {
    for (int v : small)
        if (!std::binary_search(big.begin(), big.end(), v))
            return false;
    return true;
}

} // namespace

bool BlockClassification::allTyped() const {
    for (const auto &pb : perBlock)
        if (pb.typeTag == BlockType::Untyped)
            return false;
    return true;
}

int BlockClassification::sumD() const {
    int s = 0;
    for (const auto &pb : perBlock)
        s += pb.dCount;
    return s;
}

int leafDistrictBlock(const RootedBlockTree &rbt, const DistrictMap &p, int districtIdx) {
    const BlockTree &t = rbt.tree;
    for (int b : t.leafBlocks()) {
        if (b == rbt.root)
            continue;
        int cut = t.leafBlockCut(b);
        bool covered = true;
        for (int v : t.blocks[b])
            if (v != cut && p.districtOf(v) != districtIdx) {
                covered = false;
                break;
            }
        if (covered)
            return b;
    }
    return -1;
}

BlockClassification classifyBlocks(const Graph &g, const RootedBlockTree &rbt,
                                   const DistrictMap &p) {
    BlockClassification c;
    c.rooted = rbt;
    const BlockTree &t = rbt.tree;
    int nb = t.blockCount();
    c.perBlock.assign(nb, {});

    std::vector<int> leafBlockOf(p.k, -1);
    for (int i = 0; i < p.k; ++i) {
        leafBlockOf[i] = leafDistrictBlock(rbt, p, i);
        if (leafBlockOf[i] >= 0)
            c.leafDistricts[i] = leafBlockOf[i];
    }
    auto isLeafDistrict = [&](int i) { return leafBlockOf[i] >= 0; };

    // down sets and elbows
    for (int w = 0; w < nb; ++w) {
        if (w == rbt.root)
            continue;
        int cut = rbt.parentCutOfBlock[w];
        int vi = p.districtOf(cut);
        auto subtree = rbt.subtreeVertices(w);
        std::vector<int> down;
        for (int v : subtree)
            if (p.districtOf(v) == vi)
                down.push_back(v);
        c.perBlock[w].downSet = down;
        bool nontrivial = !(down.size() == 1 && down[0] == cut);
        if (nontrivial && isLeafDistrict(vi)) {
            const auto &lb = t.blocks[leafBlockOf[vi]];
            std::sort(down.begin(), down.end());
            c.perBlock[w].isElbow = !subsetOf(lb, down);
        }
    }

    // type (i) and (iii) flags, then type (ii)
    std::vector<char> t1(nb, 0), t3(nb, 0);
    for (int w = 0; w < nb; ++w) {
        bool allSingletonNonLeaf = true;
        for (int v : t.blocks[w]) {
            int d = p.districtOf(v);
            if (p.size(d) != 1 || isLeafDistrict(d)) {
                allSingletonNonLeaf = false;
                break;
            }
        }
        t1[w] = allSingletonNonLeaf;

        int cut = (w == rbt.root) ? -1 : rbt.parentCutOfBlock[w];
        int coverDistrict = -1;
        bool covered = true;
        for (int v : t.blocks[w]) {
            if (v == cut)
                continue;
            int d = p.districtOf(v);
            if (coverDistrict < 0)
                coverDistrict = d;
            else if (coverDistrict != d) {
                covered = false;
                break;
            }
        }
        if (covered && coverDistrict >= 0 && isLeafDistrict(coverDistrict)) {
            if (!t.isLeafBlock(w)) {
                auto kids = rbt.childBlocks(w);
                if (kids.empty())
                    covered = false;
                else {
                    const auto &leftmost = t.blocks[kids.front()];
                    covered = subsetOf(leftmost,
                                       p.districts[coverDistrict]); // full leftmost child block
                }
            }
            t3[w] = covered;
        }
    }
    for (int w = 0; w < nb; ++w) {
        if (t1[w]) {
            c.perBlock[w].typeTag = BlockType::TypeI;
            continue;
        }
        if (t3[w]) {
            c.perBlock[w].typeTag = BlockType::TypeIII;
            continue;
        }
        // type (ii): nonleaf districts contained in w, not all singletons,
        // ancestors type (i), descendants type (iii)
        bool ok = true, allSingle = true;
        std::set<int> touching;
        for (int v : t.blocks[w])
            touching.insert(p.districtOf(v));
        for (int d : touching) {
            if (isLeafDistrict(d) || !subsetOf(p.districts[d], t.blocks[w])) {
                ok = false;
                break;
            }
            if (p.size(d) > 1)
                allSingle = false;
        }
        if (ok && !allSingle) {
            for (int a = w; a != rbt.root && ok;) {
                a = rbt.parentBlockOfCut[rbt.parentCutOfBlock[a]];
                if (!t1[a])
                    ok = false;
            }
            if (ok) {
                std::vector<int> stack = rbt.childBlocks(w);
                while (!stack.empty() && ok) {
                    int b = stack.back();
                    stack.pop_back();
                    if (!t3[b])
                        ok = false;
                    for (int b2 : rbt.childBlocks(b))
                        stack.push_back(b2);
                }
            }
            if (ok)
                c.perBlock[w].typeTag = BlockType::TypeII;
        }
    }

    // d counts: leaf districts to their leaf block, nonleaf districts to the
    // highest block containing them
    for (int i = 0; i < p.k; ++i) {
        if (isLeafDistrict(i)) {
            ++c.perBlock[leafBlockOf[i]].dCount;
            continue;
        }
        int best = -1;
        for (int w = 0; w < nb; ++w)
            if (subsetOf(p.districts[i], t.blocks[w]))
                if (best < 0 || rbt.blockDepth[w] < rbt.blockDepth[best])
                    best = w;
        if (best >= 0)
            ++c.perBlock[best].dCount;
    }
    return c;
}

BlockClassification classifyBlocks(const Graph &g, const DistrictMap &p) {
    return classifyBlocks(g, rootBlockTree(g), p);
}

bool isPseudoCanonical(const Graph &g, const DistrictMap &p) {
    return classifyBlocks(g, p).allTyped();
}

// ---------------------------------------------------------------------------
// Algorithm 1
// ---------------------------------------------------------------------------

namespace {

struct AliveView {
    std::vector<int> origOf; // view id -> original id
    std::vector<int> viewOf; // original id -> view id or -1
    Graph graph;
};

AliveView buildView(const Graph &g, const std::vector<char> &alive) {
    AliveView v;
    v.viewOf.assign(g.numVertices(), -1);
    for (int i = 0; i < g.numVertices(); ++i)
        if (alive[i]) {
            v.viewOf[i] = static_cast<int>(v.origOf.size());
            v.origOf.push_back(i);
        }
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges())
        if (alive[a] && alive[b])
            edges.push_back({v.viewOf[a], v.viewOf[b]});
    v.graph = Graph(static_cast<int>(v.origOf.size()), std::move(edges));
    return v;
}

// Contract the district containing `target` down to {target}, expanding only
// into alive districts.
void contractLiveDistrictTo(const Graph &g, DistrictMap &p, int target,
                            const std::vector<char> &alive, SwitchPlan &plan) {
    int d = p.districtOf(target);
    std::set<int> removeSet(p.districts[d].begin(), p.districts[d].end());
    removeSet.erase(target);
    ContractionControl ctl;
    ctl.vertexAllowed = [&alive](int w) { return alive[w] != 0; };
    contractSubset(g, p, d, std::move(removeSet), plan, ctl);
}

} // namespace

std::pair<SwitchPlan, DistrictMap> canonicalBiconnected(const Graph &g, const DistrictMap &p) {
    requireValidMap(g, p);
    if (connectivityClass(g) != ConnectivityClass::Biconnected)
        throw NotBiconnectedError();
    SwitchPlan plan;
    plan.startSignature = mapSignature(p).str();
    DistrictMap work = p;
    std::vector<char> alive(g.numVertices(), 1);
    int kLive = p.k;

    while (kLive > 1) {
        int na = static_cast<int>(std::count(alive.begin(), alive.end(), 1));
        if (na == 2) {
            // two singleton districts left; freeze the smaller vertex
            for (int v = 0; v < g.numVertices(); ++v)
                if (alive[v]) {
                    alive[v] = 0;
                    --kLive;
                    break;
                }
            continue;
        }
        AliveView view = buildView(g, alive);
        SpqrTree spqr = spqrTree(view.graph);
        int leaf = spqr.leafOrder.front();
        const SpqrNode &node = spqr.nodes[leaf];
        if (node.type == 'S') {
            auto cycle = sNodeCycleOrder(node); // view ids, virtual endpoints first/last
            for (size_t i = 1; i + 1 < cycle.size() && kLive > 1; ++i) {
                int v = view.origOf[cycle[i]];
                contractLiveDistrictTo(g, work, v, alive, plan);
                alive[v] = 0;
                --kLive;
            }
        } else { // R node (P nodes are never tree leaves of a canonical SPQR tree)
            auto [a, b] = leafVirtualEdge(node);
            int pick = -1;
            for (int vv : node.vertices)
                if (vv != a && vv != b) {
                    pick = vv;
                    break;
                }
            assert(pick >= 0);
            int v = view.origOf[pick];
            contractLiveDistrictTo(g, work, v, alive, plan);
            alive[v] = 0;
            --kLive;
        }
    }
    plan.endSignature = mapSignature(work).str();
    return {std::move(plan), std::move(work)};
}

// ---------------------------------------------------------------------------
// Lemma "pushing"
// ---------------------------------------------------------------------------

SwitchPlan pushDistrict(const Graph &g, DistrictMap &p, const std::vector<int> &w1Vertices,
                        const std::vector<int> &pathP, const std::vector<int> &w2Vertices) {
    SwitchPlan plan;
    plan.startSignature = mapSignature(p).str();
    auto inW1 = [&](int v) {
        return std::binary_search(w1Vertices.begin(), w1Vertices.end(), v);
    };
    auto inW2 = [&](int v) {
        return std::binary_search(w2Vertices.begin(), w2Vertices.end(), v);
    };
    if (pathP.empty())
        throw PreconditionViolatedError("push: path P is empty");
    if (!inW1(pathP.front()))
        throw PreconditionViolatedError("push: P does not start in w1");
    if (!inW2(pathP.back()))
        throw PreconditionViolatedError("push: P does not end in w2");
    for (size_t i = 0; i + 1 < pathP.size(); ++i)
        if (!g.hasEdge(pathP[i], pathP[i + 1]))
            throw PreconditionViolatedError("push: P is not a path");
    for (int v : pathP)
        if (p.size(p.districtOf(v)) != 1)
            throw PreconditionViolatedError("push: vertex " + std::to_string(v) +
                                            " of P is not a singleton district");
    bool hasBig = false;
    for (int v : w1Vertices)
        if (p.size(p.districtOf(v)) > 1)
            hasBig = true;
    if (!hasBig)
        throw PreconditionViolatedError("push: w1 holds no district of size > 1");

    // Q: shortest path inside w1 from c1 to the nearest vertex of a >1 district.
    int c1 = pathP.front();
    std::map<int, int> pred;
    std::queue<int> bfs;
    pred[c1] = c1;
    bfs.push(c1);
    int q1 = -1;
    while (!bfs.empty() && q1 < 0) {
        int x = bfs.front();
        bfs.pop();
        if (p.size(p.districtOf(x)) > 1) {
            q1 = x;
            break;
        }
        for (int y : g.neighbors(x))
            if (inW1(y) && !pred.count(y)) {
                pred[y] = x;
                bfs.push(y);
            }
    }
    if (q1 < 0)
        throw PreconditionViolatedError("push: no >1 district reachable inside w1");
    std::vector<int> route; // q1 ... c1 then P[1:]
    for (int x = q1;; x = pred[x]) {
        route.push_back(x);
        if (x == c1)
            break;
    }
    route.insert(route.end(), pathP.begin() + 1, pathP.end());

    // Spawn a 2-vertex caterpillar {tail, route[j]} by partially contracting
    // the district of q1 toward q1, shrinking only its w1-side.
    int vi = p.districtOf(q1);
    int catTail = -1;
    size_t startIdx = 0;
    std::set<int> routeSet(route.begin(), route.end());
    bool caseB = false;
    if (p.size(vi) == 2) {
        const auto &d = p.districts[vi];
        catTail = (d[0] == q1) ? d[1] : d[0];
    } else {
        ContractionControl ctl;
        // stop as soon as the district is a pair or some route singleton grew
        ctl.stop = [&]() {
            if (p.size(vi) == 2)
                return true;
            const Switch &last = plan.steps.back();
            return routeSet.count(last.w) && p.districtOf(last.w) != vi;
        };
        // prefer expanding districts away from the route to keep it clean
        ctl.preference = [&](const Switch &s) {
            long long key = defaultExpansionPreference(s);
            if (routeSet.count(s.w))
                key += 1LL << 50;
            return key;
        };
        std::set<int> removeSet;
        for (int v : p.districts[vi])
            if (inW1(v) && v != q1)
                removeSet.insert(v);
        try {
            contractSubset(g, p, vi, std::move(removeSet), plan, ctl);
        } catch (const PreconditionViolatedError &) {
            // the w1-side could not shrink further; fall through
        }
        if (!plan.steps.empty() && routeSet.count(plan.steps.back().w) &&
            p.districtOf(plan.steps.back().w) != vi) {
            // case (b): route singleton at last.w absorbed last.v
            const Switch &last = plan.steps.back();
            caseB = true;
            size_t j = 0;
            while (route[j] != last.w)
                ++j;
            startIdx = j;
            catTail = last.v;
        } else if (p.size(vi) == 2) {
            const auto &d = p.districts[vi];
            catTail = (d[0] == q1) ? d[1] : d[0];
        } else {
            // district still big; detach q1 directly onto the route
            if (route.size() < 2)
                throw PreconditionViolatedError("push: cannot form a caterpillar at q1");
            int u = -1;
            for (int nb : g.neighbors(q1))
                if (p.districtOf(nb) == vi) {
                    u = nb;
                    break;
                }
            Switch s{u, q1, route[1]};
            applySwitchInPlace(g, p, s);
            plan.steps.push_back(s);
            startIdx = 1;
            catTail = q1;
        }
    }

    // advance the caterpillar along the route
    int tail = catTail;
    (void)caseB;
    for (size_t i = startIdx; i + 1 < route.size(); ++i) {
        Switch s{tail, route[i], route[i + 1]};
        applySwitchInPlace(g, p, s);
        plan.steps.push_back(s);
        tail = route[i];
    }

    // dissolve: the far endpoint joins a district of w2
    int head = route.back();
    int z = -1;
    for (int nb : g.neighbors(head)) {
        if (p.districtOf(nb) == p.districtOf(head))
            continue;
        if (inW2(nb) && !routeSet.count(nb)) {
            z = nb;
            break;
        }
    }
    if (z < 0)
        for (int nb : g.neighbors(head))
            if (p.districtOf(nb) != p.districtOf(head)) {
                z = nb;
                break;
            }
    if (z < 0)
        throw PreconditionViolatedError("push: cannot dissolve the moved district into w2");
    Switch fin{tail, head, z};
    applySwitchInPlace(g, p, fin);
    plan.steps.push_back(fin);
    plan.endSignature = mapSignature(p).str();
    return plan;
}

// ---------------------------------------------------------------------------
// Algorithm 2 (pseudo-canonical form)
// ---------------------------------------------------------------------------

namespace {

// Child cut of w whose subtree contains block `descendant`.
int childCutToward(const RootedBlockTree &rbt, int w, int descendant) {
    int b = descendant;
    while (b != rbt.root) {
        int cut = rbt.parentCutOfBlock[b];
        int parent = rbt.parentBlockOfCut[cut];
        if (parent == w)
            return cut;
        b = parent;
    }
    return -1;
}

// A district holding the full root block can only contract into the root's
// interior (the root is a leaf block of G); otherwise the requested cut
// vertex is a valid target.
int contractionTarget(const RootedBlockTree &rbt, const DistrictMap &p, int vi, int wantedCut) {
    const BlockTree &t = rbt.tree;
    bool holdsRoot = true;
    for (int v : t.blocks[rbt.root])
        if (p.districtOf(v) != vi) {
            holdsRoot = false;
            break;
        }
    if (!holdsRoot)
        return wantedCut;
    for (int v : t.blocks[rbt.root])
        if (!t.isCut[v])
            return v;
    return wantedCut;
}

// Expansion preference for phase-3 contractions: expand non-leaf districts
// when possible, falling back to the designated leaf district.
ContractionControl phase3Control(const Graph &g, const DistrictMap &p,
                                 const BlockClassification &cls, int preferredLeafDistrict) {
    ContractionControl ctl;
    const DistrictMap *pp = &p;
    auto leafSet = cls.leafDistricts;
    ctl.preference = [pp, leafSet, preferredLeafDistrict](const Switch &s) {
        int d = pp->districtOf(s.w);
        long long rank;
        if (!leafSet.count(d))
            rank = 0;
        else if (d == preferredLeafDistrict)
            rank = 1;
        else
            rank = 2;
        return (rank << 42) + defaultExpansionPreference(s);
    };
    return ctl;
}

} // namespace

std::pair<SwitchPlan, DistrictMap> pseudoCanonical(const Graph &g, const DistrictMap &p) {
    requireValidMap(g, p);
    if (!isConnected(g))
        throw NotConnectedError();
    RootedBlockTree rbt = rootBlockTree(g);
    const BlockTree &t = rbt.tree;
    if (!isContractibleMap(g, t, p))
        throw IncontractibleInputError();

    DistrictMap work = p;
    SwitchPlan plan;
    plan.startSignature = mapSignature(p).str();

    // Phase 1: eliminate elbows, DFS preorder over non-root blocks.
    for (int w : rbt.blockPreorder) {
        if (w == rbt.root)
            continue;
        auto cls = classifyBlocks(g, rbt, work);
        if (!cls.perBlock[w].isElbow)
            continue;
        int cut = rbt.parentCutOfBlock[w];
        int vi = work.districtOf(cut);
        std::set<int> removeSet(cls.perBlock[w].downSet.begin(), cls.perBlock[w].downSet.end());
        removeSet.erase(cut);
        contractSubset(g, work, vi, std::move(removeSet), plan);
    }

    // Phase 2: confine each leaf district toward its leaf block: any spill of
    // V_i into w beyond the child cut leading to leaf(V_i) is contracted out.
    // The cut itself may stay with the leaf district, except at the root: the
    // root is a leaf block, and holding its cut inside a child's leaf district
    // would block the root from ever satisfying type (i) or (ii).
    for (int pass2 = 0; pass2 < 4; ++pass2) {
        size_t steps2 = plan.steps.size();
        for (int w : rbt.blockPreorder) {
            bool isRoot = w == rbt.root;
            if (t.isLeafBlock(w) && !isRoot)
                continue;
            int guard = 4 * (work.k + t.blockCount()) + 8;
            std::set<std::string> seen;
            for (;;) {
                if (--guard < 0)
                    throw DomainError("internal error: phase 2 looped at block " +
                                      std::to_string(w));
                if (!seen.insert(mapSignature(work).str()).second)
                    break;
                auto cls = classifyBlocks(g, rbt, work);
                int vi = -1, cNext = -1;
                bool evict = false;
                for (auto [d, lb] : cls.leafDistricts) {
                    int cc = childCutToward(rbt, w, lb);
                    if (cc < 0)
                        continue; // leaf block not below w
                    bool spill = false;
                    for (int v : t.blocks[w])
                        if (work.districtOf(v) == d && v != cc) {
                            spill = true;
                            break;
                        }
                    bool holdsCut = work.districtOf(cc) == d;
                    if (spill || (isRoot && holdsCut)) {
                        vi = d;
                        cNext = cc;
                        evict = isRoot && holdsCut;
                        break;
                    }
                }
                if (vi < 0)
                    break;
                ContractionControl ctl;
                const DistrictMap *wp = &work;
                auto leafSet = cls.leafDistricts;
                ctl.preference = [wp, leafSet](const Switch &s) {
                    long long rank = leafSet.count(wp->districtOf(s.w)) ? 1 : 0;
                    return (rank << 42) + defaultExpansionPreference(s);
                };
                std::set<int> removeSet;
                for (int v : t.blocks[w])
                    if (work.districtOf(v) == vi && v != cNext)
                        removeSet.insert(v);
                size_t before = plan.steps.size();
                try {
                    contractSubset(g, work, vi, std::move(removeSet), plan, ctl);
                    if (evict && work.districtOf(cNext) == vi)
                        contractSubset(g, work, vi, {cNext}, plan, ctl);
                } catch (const PreconditionViolatedError &) {
                    // blocked by structure elsewhere; later blocks or the next
                    // pass will clear it
                }
                if (plan.steps.size() == before)
                    break;
            }
        }
        if (plan.steps.size() == steps2)
            break;
    }

    // Leftmost realignment: when everything in `blockIdx` below its parent cut
    // already sits in leaf districts but type (iii) fails, the coverage points
    // at the wrong branch; absorb it into the leaf district of the leftmost
    // child branch.
    auto tryRealign = [&](int blockIdx, const BlockClassification &cls) -> bool {
        auto kids = rbt.childBlocks(blockIdx);
        if (kids.empty())
            return false;
        int preferred = -1;
        for (auto [d, lb] : cls.leafDistricts)
            if (lb == kids.front() || rbt.isAncestorBlock(kids.front(), lb)) {
                preferred = d;
                break;
            }
        if (preferred < 0)
            return false;
        int parentCut = (blockIdx == rbt.root) ? -1 : rbt.parentCutOfBlock[blockIdx];
        std::vector<int> strays;
        for (int v : t.blocks[blockIdx]) {
            if (v == parentCut)
                continue;
            if (work.districtOf(v) != preferred)
                strays.push_back(v);
        }
        if (strays.empty())
            return false;
        std::vector<char> below(g.numVertices(), 0);
        for (int v : rbt.subtreeVertices(blockIdx))
            below[v] = 1;
        bool any = false, moved = true;
        int iters = 4 * g.numVertices() + 8;
        auto typedNow = [&]() {
            return classifyBlocks(g, rbt, work).perBlock[blockIdx].typeTag != BlockType::Untyped;
        };
        while (moved && !strays.empty() && --iters >= 0) {
            if (any && typedNow())
                return true;
            moved = false;
            for (auto it = strays.begin(); it != strays.end(); ++it) {
                int v = *it;
                int target = -1;
                for (int nb : g.neighbors(v))
                    if (work.districtOf(nb) == preferred) {
                        target = nb;
                        break;
                    }
                if (target < 0)
                    continue;
                Switch s{-1, v, target};
                for (int nb : g.neighbors(v))
                    if (work.districtOf(nb) == work.districtOf(v)) {
                        s.u = nb;
                        break;
                    }
                if (s.u < 0 || !isValidSwitch(g, work, s))
                    continue;
                applySwitchInPlace(g, work, s);
                plan.steps.push_back(s);
                strays.erase(it);
                any = moved = true;
                break;
            }
            if (moved || strays.empty())
                continue;
            // unblock 1: a singleton stray cannot be switched; let it absorb a
            // neighbor first so the shed becomes possible
            for (int v : strays) {
                if (work.size(work.districtOf(v)) != 1)
                    continue;
                bool grown = false;
                for (int x : g.neighbors(v)) {
                    int dx = work.districtOf(x);
                    if (dx == work.districtOf(v) || work.size(dx) < 2)
                        continue;
                    if (dx == preferred) {
                        // keep at least one other bridge from v into the
                        // preferred district, or the grow defeats the move
                        bool other = false;
                        for (int x2 : g.neighbors(v))
                            if (x2 != x && work.districtOf(x2) == preferred)
                                other = true;
                        if (!other)
                            continue;
                    }
                    int u = -1;
                    for (int nb : g.neighbors(x))
                        if (work.districtOf(nb) == dx) {
                            u = nb;
                            break;
                        }
                    Switch s{u, x, v};
                    if (u < 0 || !isValidSwitch(g, work, s))
                        continue;
                    applySwitchInPlace(g, work, s);
                    plan.steps.push_back(s);
                    grown = moved = any = true;
                    break;
                }
                if (grown)
                    break;
            }
            if (moved)
                continue;
            // unblock 2: a stray's district may be pinned by vertices it holds
            // at or above this block; shed one of those first
            for (int v : strays) {
                int d = work.districtOf(v);
                std::set<int> shed;
                for (int x : work.districts[d])
                    if (!below[x] || (x != v && std::binary_search(t.blocks[blockIdx].begin(),
                                                                   t.blocks[blockIdx].end(), x)))
                        shed.insert(x);
                shed.erase(v);
                if (shed.empty())
                    continue;
                size_t before = plan.steps.size();
                ContractionControl ctl;
                ctl.stop = [&plan, before]() { return plan.steps.size() > before; };
                try {
                    contractSubset(g, work, d, std::move(shed), plan, ctl);
                } catch (const PreconditionViolatedError &) {
                }
                if (plan.steps.size() > before) {
                    moved = any = true;
                    break;
                }
            }
        }
        return any;
    };

    // Full confinement of every leaf district below `w` to its leaf block's
    // interior; the strongest (and last-resort) normalization step.
    auto confineBelow = [&](int w, const BlockClassification &cls) -> bool {
        size_t before = plan.steps.size();
        for (auto [d, lb] : cls.leafDistricts) {
            if (!rbt.isAncestorBlock(w, lb))
                continue;
            int cut = t.leafBlockCut(lb);
            std::set<int> removeSet;
            for (int v : work.districts[d])
                if (v == cut || !t.blockContains(lb, v))
                    removeSet.insert(v);
            if (removeSet.empty())
                continue;
            ContractionControl ctl = phase3Control(g, work, cls, -1);
            try {
                contractSubset(g, work, d, std::move(removeSet), plan, ctl);
            } catch (const PreconditionViolatedError &) {
            }
        }
        return plan.steps.size() > before;
    };

    // Phase 3: per-block consolidation, repeated to a fixpoint: a repair deep
    // in the tree can momentarily disturb an ancestor already processed.
    // A per-block memory of visited signatures breaks repair oscillations by
    // escalating to full leaf-district confinement.
    std::vector<std::set<std::string>> seenAt(t.blockCount());
    std::vector<char> confinedAt(t.blockCount(), 0);
    int passes = 2 * (work.k + t.blockCount()) + 8;
    for (int pass = 0; pass < passes; ++pass) {
        size_t stepsAtPassStart = plan.steps.size();
        bool allTypedNow = classifyBlocks(g, rbt, work).allTyped();
        if (allTypedNow)
            break;
    for (int w : rbt.blockPreorder) {
        char &confinedHere = confinedAt[w];
        int guard = 8 * (work.k + t.blockCount()) + 16;
        for (;;) {
            if (--guard < 0)
                throw DomainError("internal error: phase 3 made no progress at block " +
                                  std::to_string(w));
            auto cls = classifyBlocks(g, rbt, work);
            BlockType wtNow = cls.perBlock[w].typeTag;
            if (wtNow != BlockType::TypeI && wtNow != BlockType::TypeIII &&
                !seenAt[w].insert(mapSignature(work).str()).second) {
                // oscillation: this exact map was already tried at this block
                if (!confinedHere) {
                    confinedHere = true;
                    if (confineBelow(w, cls))
                        continue;
                }
                break;
            }
            BlockType wt = cls.perBlock[w].typeTag;
            if (wt == BlockType::TypeI || wt == BlockType::TypeIII)
                break;
            int wPrime = -1;
            for (int child : rbt.childBlocks(w))
                if (cls.perBlock[child].typeTag != BlockType::TypeIII) {
                    wPrime = child;
                    break;
                }
            if (wPrime < 0) {
                if (w != rbt.root && !confinedHere && tryRealign(w, cls))
                    continue;
                // evict leaf-district overhang out of w, staying inside w's
                // subtree so ancestors are untouched
                bool evicted = false;
                int parentCut = (w == rbt.root) ? -1 : rbt.parentCutOfBlock[w];
                std::vector<char> allowed(g.numVertices(), 0);
                for (int v : rbt.subtreeVertices(w))
                    allowed[v] = 1;
                for (auto [d, lb] : cls.leafDistricts) {
                    if (!(lb == w || rbt.isAncestorBlock(w, lb)) || lb == w)
                        continue;
                    std::set<int> overhang;
                    for (int v : t.blocks[w])
                        if (work.districtOf(v) == d && v != parentCut)
                            overhang.insert(v);
                    if (overhang.empty())
                        continue;
                    ContractionControl ctl = phase3Control(g, work, cls, -1);
                    ctl.vertexAllowed = [&allowed](int x) { return allowed[x] != 0; };
                    size_t before = plan.steps.size();
                    try {
                        contractSubset(g, work, d, std::move(overhang), plan, ctl);
                    } catch (const PreconditionViolatedError &) {
                    }
                    if (plan.steps.size() > before) {
                        evicted = true;
                        break;
                    }
                }
                if (evicted)
                    continue;
                if (!confinedHere) {
                    confinedHere = true;
                    if (confineBelow(w, cls))
                        continue;
                }
                break; // all child blocks of type (iii); nothing left to do here
            }
            int cPrime = rbt.parentCutOfBlock[wPrime];
            int vi = work.districtOf(cPrime);
            int preferred = -1;
            {
                auto kidsOfWPrime = rbt.childBlocks(wPrime);
                if (!kidsOfWPrime.empty()) {
                    // leaf district covering the leftmost child block of w'
                    for (auto [d, lb] : cls.leafDistricts)
                        if (rbt.isAncestorBlock(kidsOfWPrime.front(), lb) ||
                            lb == kidsOfWPrime.front()) {
                            preferred = d;
                            break;
                        }
                }
            }
            bool progressed = false;
            int target = contractionTarget(rbt, work, vi, cPrime);
            if (work.districts[vi] != std::vector<int>{target}) {
                ContractionControl ctl = phase3Control(g, work, cls, preferred);
                ctl.stop = [&]() {
                    auto c2 = classifyBlocks(g, rbt, work);
                    BlockType wt2 = c2.perBlock[w].typeTag;
                    return wt2 == BlockType::TypeI || wt2 == BlockType::TypeIII ||
                           c2.perBlock[wPrime].typeTag == BlockType::TypeIII;
                };
                std::set<int> removeSet(work.districts[vi].begin(), work.districts[vi].end());
                removeSet.erase(target);
                size_t before = plan.steps.size();
                try {
                    contractSubset(g, work, vi, std::move(removeSet), plan, ctl);
                } catch (const PreconditionViolatedError &) {
                    // contraction ran out of valid moves; fall through to push
                }
                progressed = plan.steps.size() > before;
            }
            auto cls2 = classifyBlocks(g, rbt, work);
            BlockType wNow = cls2.perBlock[w].typeTag;
            bool guardStillOn = wNow != BlockType::TypeI && wNow != BlockType::TypeIII;
            if (guardStillOn && cls2.perBlock[wPrime].typeTag != BlockType::TypeIII &&
                work.districts[work.districtOf(cPrime)] == std::vector<int>{cPrime}) {
                SwitchPlan pushed =
                    pushDistrict(g, work, t.blocks[w], {cPrime}, t.blocks[wPrime]);
                plan.steps.insert(plan.steps.end(), pushed.steps.begin(), pushed.steps.end());
                progressed = progressed || !pushed.steps.empty();
            }
            if (!progressed && !confinedAt[wPrime])
                progressed = tryRealign(wPrime, classifyBlocks(g, rbt, work));
            if (!progressed && !confinedHere) {
                confinedHere = true;
                progressed = confineBelow(w, classifyBlocks(g, rbt, work));
            }
            if (!progressed)
                break;
        }
        // lines 16-17: make the parent cut a singleton
        auto cls = classifyBlocks(g, rbt, work);
        BlockType wt = cls.perBlock[w].typeTag;
        if (wt != BlockType::TypeI && wt != BlockType::TypeIII && w != rbt.root) {
            int c = rbt.parentCutOfBlock[w];
            int vi = work.districtOf(c);
            std::set<int> removeSet;
            auto leafIt = cls.leafDistricts.find(vi);
            if (leafIt != cls.leafDistricts.end()) {
                // the cut belongs to a leaf district pinned at its leaf block;
                // confine the district to the block's interior instead
                int lb = leafIt->second;
                int lbCut = t.leafBlockCut(lb);
                for (int v : work.districts[vi])
                    if (v == lbCut || !t.blockContains(lb, v))
                        removeSet.insert(v);
            } else {
                int target = contractionTarget(rbt, work, vi, c);
                if (work.districts[vi] == std::vector<int>{target})
                    removeSet.clear();
                else {
                    removeSet.insert(work.districts[vi].begin(), work.districts[vi].end());
                    removeSet.erase(target);
                }
            }
            if (!removeSet.empty()) {
                ContractionControl ctl = phase3Control(g, work, cls, -1);
                ctl.stop = [&]() {
                    BlockType cur = classifyBlocks(g, rbt, work).perBlock[w].typeTag;
                    return cur != BlockType::Untyped;
                };
                try {
                    contractSubset(g, work, vi, std::move(removeSet), plan, ctl);
                } catch (const PreconditionViolatedError &) {
                    // leave the final verdict to the postcondition check
                }
            }
        }
    }
        if (plan.steps.size() == stepsAtPassStart)
            break; // stable; let the postcondition decide
    }

    if (!classifyBlocks(g, rbt, work).allTyped())
        throw DomainError("internal error: pseudo-canonical postcondition failed at " +
                          mapSignature(work).str());
    plan.endSignature = mapSignature(work).str();
    return {std::move(plan), std::move(work)};
}

// ---------------------------------------------------------------------------
// Alignment of two pseudo-canonical maps
// ---------------------------------------------------------------------------

namespace {

std::vector<int> shortestPath(const Graph &g, int from, int to) {
    std::vector<int> pred(g.numVertices(), -1);
    std::queue<int> q;
    pred[from] = from;
    q.push(from);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        if (x == to)
            break;
        for (int y : g.neighbors(x))
            if (pred[y] < 0) {
                pred[y] = x;
                q.push(y);
            }
    }
    std::vector<int> path;
    for (int x = to;; x = pred[x]) {
        path.push_back(x);
        if (x == from)
            break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// Contract district idx down to {target} with a ranking over expansions.
void contractDistrictTo(const Graph &g, DistrictMap &p, int idx, int target, SwitchPlan &plan,
                        const ContractionControl &ctl = {}) {
    std::set<int> removeSet(p.districts[idx].begin(), p.districts[idx].end());
    removeSet.erase(target);
    contractSubset(g, p, idx, std::move(removeSet), plan, ctl);
}

// Sub-instance canonicalization inside one block: relabels, runs Algorithm 1,
// translates the switches back and applies them.
void canonicalizeBlock(const Graph &g, DistrictMap &p, const std::vector<int> &blockVerts,
                       SwitchPlan &plan) {
    std::vector<int> viewOf(g.numVertices(), -1);
    for (size_t i = 0; i < blockVerts.size(); ++i)
        viewOf[blockVerts[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges())
        if (viewOf[a] >= 0 && viewOf[b] >= 0)
            edges.push_back({viewOf[a], viewOf[b]});
    Graph sub(static_cast<int>(blockVerts.size()), std::move(edges));

    std::map<int, int> subDistrictOf; // global district -> sub district
    std::vector<std::vector<int>> subDistricts;
    for (int v : blockVerts) {
        int d = p.districtOf(v);
        if (!subDistrictOf.count(d)) {
            subDistrictOf[d] = static_cast<int>(subDistricts.size());
            subDistricts.emplace_back();
        }
        subDistricts[subDistrictOf[d]].push_back(viewOf[v]);
    }
    DistrictMap subMap =
        DistrictMap::fromDistricts(static_cast<int>(blockVerts.size()), std::move(subDistricts));
    auto [subPlan, subFinal] = canonicalBiconnected(sub, subMap);
    for (const auto &s : subPlan.steps) {
        Switch gs{blockVerts[s.u], blockVerts[s.v], blockVerts[s.w]};
        applySwitchInPlace(g, p, gs);
        plan.steps.push_back(gs);
    }
}

} // namespace

SwitchPlan alignPseudoCanonical(const Graph &g, const DistrictMap &p1, const DistrictMap &p2) {
    requireValidMap(g, p1);
    requireValidMap(g, p2);
    if (p1.k != p2.k)
        throw MismatchedKError();
    RootedBlockTree rbt = rootBlockTree(g);
    const BlockTree &t = rbt.tree;
    if (!classifyBlocks(g, rbt, p1).allTyped() || !classifyBlocks(g, rbt, p2).allTyped())
        throw NotPseudoCanonicalError();

    DistrictMap work = p1;
    SwitchPlan plan;
    plan.startSignature = mapSignature(p1).str();
    auto cls2 = classifyBlocks(g, rbt, p2);

    auto potential = [&](const BlockClassification &a) {
        int s = 0;
        for (int w = 0; w < t.blockCount(); ++w)
            s += std::abs(a.perBlock[w].dCount - cls2.perBlock[w].dCount);
        return s;
    };

    int prevPot = -1;
    for (;;) {
        auto cls1 = classifyBlocks(g, rbt, work);
        int pot = potential(cls1);
        if (pot == 0)
            break;
        if (prevPot >= 0 && pot >= prevPot)
            throw DomainError("internal error: alignment potential did not decrease");
        prevPot = pot;

        // highest deficit block, lowest surplus block (ties: preorder)
        int w1 = -1, w2 = -1;
        for (int w : rbt.blockPreorder) {
            int diff = cls1.perBlock[w].dCount - cls2.perBlock[w].dCount;
            if (diff < 0 && (w1 < 0 || rbt.blockDepth[w] < rbt.blockDepth[w1]))
                w1 = w;
            if (diff > 0 && (w2 < 0 || rbt.blockDepth[w] > rbt.blockDepth[w2]))
                w2 = w;
        }
        assert(w1 >= 0 && w2 >= 0);

        auto endpointOf = [&](int w) {
            if (w != rbt.root)
                return rbt.parentCutOfBlock[w];
            return t.leafBlockCut(w); // root is a leaf block; use its cut
        };
        int e1 = endpointOf(w1), e2 = endpointOf(w2);
        std::vector<int> path = (e1 == e2) ? std::vector<int>{e1} : shortestPath(g, e1, e2);

        bool w1WasTypeIIInonLeafBlock = cls1.perBlock[w1].typeTag == BlockType::TypeIII &&
                                        !t.isLeafBlock(w1);

        SwitchPlan pushed = pushDistrict(g, work, t.blocks[w1], path, t.blocks[w2]);
        plan.steps.insert(plan.steps.end(), pushed.steps.begin(), pushed.steps.end());

        // repair 1: restore {e2} as a singleton, dropping w2's count by one
        int absorber = work.districtOf(e2);
        if (work.districts[absorber] != std::vector<int>{e2}) {
            auto clsNow = classifyBlocks(g, rbt, work);
            int preferredLeaf = -1;
            auto kids = rbt.childBlocks(w2);
            if (!kids.empty())
                for (auto [d, lb] : clsNow.leafDistricts)
                    if (lb == kids.front() || rbt.isAncestorBlock(kids.front(), lb)) {
                        preferredLeaf = d;
                        break;
                    }
            ContractionControl ctl;
            const auto leafSet = clsNow.leafDistricts;
            std::vector<char> inW2(g.numVertices(), 0);
            for (int v : t.blocks[w2])
                inW2[v] = 1;
            ctl.preference = [&work, leafSet, preferredLeaf, inW2](const Switch &s) {
                int d = work.districtOf(s.w);
                long long rank;
                if (inW2[s.w] && !leafSet.count(d))
                    rank = 0;
                else if (d == preferredLeaf)
                    rank = 1;
                else if (!leafSet.count(d))
                    rank = 2;
                else
                    rank = 3;
                return (rank << 42) + defaultExpansionPreference(s);
            };
            contractDistrictTo(g, work, absorber, e2, plan, ctl);
        }

        // repair 2: if w1 was a covered non-leaf block, move its leaf district
        // fully below so the incoming district can own the block
        if (w1WasTypeIIInonLeafBlock) {
            auto clsNow = classifyBlocks(g, rbt, work);
            for (auto [d, lb] : clsNow.leafDistricts) {
                if (!(lb == w1 || rbt.isAncestorBlock(w1, lb)))
                    continue;
                std::set<int> removeSet;
                int parentCut = (w1 == rbt.root) ? -1 : rbt.parentCutOfBlock[w1];
                for (int v : t.blocks[w1])
                    if (work.districtOf(v) == d && v != parentCut)
                        removeSet.insert(v);
                if (!removeSet.empty()) {
                    ContractionControl ctl;
                    const DistrictMap *wp = &work;
                    auto leafSet = clsNow.leafDistricts;
                    ctl.preference = [wp, leafSet](const Switch &s) {
                        int dd = wp->districtOf(s.w);
                        long long rank = leafSet.count(dd) ? 1 : 0;
                        return (rank << 42) + defaultExpansionPreference(s);
                    };
                    contractSubset(g, work, d, std::move(removeSet), plan, ctl);
                }
                break;
            }
        }
    }

    // counts match; canonicalize the interiors of type (ii) blocks on both sides
    DistrictMap other = p2;
    SwitchPlan otherPlan;
    auto clsW = classifyBlocks(g, rbt, work);
    for (int w : rbt.blockPreorder) {
        if (clsW.perBlock[w].typeTag == BlockType::TypeII)
            canonicalizeBlock(g, work, t.blocks[w], plan);
        if (cls2.perBlock[w].typeTag == BlockType::TypeII)
            canonicalizeBlock(g, other, t.blocks[w], otherPlan);
    }
    if (!(mapSignature(work) == mapSignature(other)))
        throw DomainError("internal error: aligned maps do not coincide");
    SwitchPlan back = reversePlan(otherPlan);
    plan.steps.insert(plan.steps.end(), back.steps.begin(), back.steps.end());
    plan.endSignature = mapSignature(p2).str();
    return plan;
}

// ---------------------------------------------------------------------------
// End-to-end planning
// ---------------------------------------------------------------------------

PlanPathResult planPath(const Graph &g, const DistrictMap &p1, const DistrictMap &p2) {
    requireValidMap(g, p1);
    requireValidMap(g, p2);
    if (!isConnected(g))
        throw NotConnectedError();
    if (p1.k != p2.k)
        throw MismatchedKError();

    PlanPathResult res;
    res.lengthBound = 4 * p1.k * g.numVertices();
    res.plan.startSignature = mapSignature(p1).str();

    if (p1.k == 1) { // the unique 1-district map; nothing to do
        res.plan.endSignature = res.plan.startSignature;
        res.phases.push_back({"trivial", 0});
        return res;
    }

    BlockTree t = blockTree(g);
    bool c1 = isContractibleMap(g, t, p1);
    bool c2 = isContractibleMap(g, t, p2);
    if (c1 != c2) {
        res.outcome = PlanOutcome::Unreachable;
        return res;
    }
    if (!c1) {
        res.outcome = PlanOutcome::UnsupportedPair;
        return res;
    }

    auto [fwd, q1] = pseudoCanonical(g, p1);
    auto [bwd, q2] = pseudoCanonical(g, p2);
    SwitchPlan mid = alignPseudoCanonical(g, q1, q2);
    res.plan.steps = fwd.steps;
    res.phases.push_back({"pseudo-canonical-forward", fwd.length()});
    res.plan.steps.insert(res.plan.steps.end(), mid.steps.begin(), mid.steps.end());
    res.phases.push_back({"align", mid.length()});
    SwitchPlan back = reversePlan(bwd);
    res.plan.steps.insert(res.plan.steps.end(), back.steps.begin(), back.steps.end());
    res.phases.push_back({"pseudo-canonical-reverse", back.length()});
    res.plan.endSignature = mapSignature(p2).str();
    return res;
}

} // namespace redist
