#include "redist/contract.hpp"

#include <algorithm>

namespace redist {

std::vector<int> containedLeafBlocks(const BlockTree &t, const DistrictMap &p, int districtIdx) {
    std::vector<int> out;
    for (int b : t.leafBlocks()) {
        bool all = true;
        for (int v : t.blocks[b])
            if (p.districtOf(v) != districtIdx) {
                all = false;
                break;
            }
        if (all)
            out.push_back(b);
    }
    return out;
}

bool isContractibleDistrict(const Graph &g, const BlockTree &t, const DistrictMap &p,
                            int districtIdx) {
    int sz = p.size(districtIdx);
    if (sz <= 1)
        return true;
    if (sz == g.numVertices())
        return false; // k = 1: no switch exists at all
    return containedLeafBlocks(t, p, districtIdx).size() <= 1;
}

bool isContractibleMap(const Graph &g, const BlockTree &t, const DistrictMap &p) {
    for (int i = 0; i < p.k; ++i)
        if (!isContractibleDistrict(g, t, p, i))
            return false;
    return true;
}

long long defaultExpansionPreference(const Switch &s) {
    return static_cast<long long>(s.w) * 1000000 + s.v;
}

namespace {

// Best valid switch removing some vertex of `removeSet` from district i.
bool pickRemoval(const Graph &g, const DistrictMap &p, int districtIdx,
                 const std::set<int> &removeSet, const ContractionControl &ctl, Switch &out) {
    const auto &d = p.districts[districtIdx];
    bool found = false;
    long long bestKey = 0;
    for (int v : removeSet) {
        std::vector<int> rest;
        rest.reserve(d.size() - 1);
        for (int x : d)
            if (x != v)
                rest.push_back(x);
        if (rest.empty() || !isConnectedSubset(g, rest))
            continue;
        int u = -1;
        for (int nb : g.neighbors(v))
            if (p.districtOf(nb) == districtIdx) {
                u = nb;
                break;
            }
        if (u < 0)
            continue;
        for (int w : g.neighbors(v)) {
            if (p.districtOf(w) == districtIdx)
                continue;
            if (ctl.vertexAllowed && !ctl.vertexAllowed(w))
                continue;
            Switch s{u, v, w};
            long long key = ctl.preference ? ctl.preference(s) : defaultExpansionPreference(s);
            if (!found || key < bestKey) {
                found = true;
                bestKey = key;
                out = s;
            }
        }
    }
    return found;
}

} // namespace

void contractSubset(const Graph &g, DistrictMap &p, int districtIdx, std::set<int> removeSet,
                    SwitchPlan &plan, const ContractionControl &ctl) {
    for (auto it = removeSet.begin(); it != removeSet.end();)
        if (p.districtOf(*it) != districtIdx)
            it = removeSet.erase(it);
        else
            ++it;
    while (!removeSet.empty()) {
        Switch s;
        if (!pickRemoval(g, p, districtIdx, removeSet, ctl, s))
            throw PreconditionViolatedError("contraction stuck with " +
                                            std::to_string(removeSet.size()) +
                                            " vertices left in district " +
                                            std::to_string(districtIdx));
        applySwitchInPlace(g, p, s);
        plan.steps.push_back(s);
        removeSet.erase(s.v);
        if (ctl.stop && ctl.stop())
            return;
    }
}

SwitchPlan contractDistrict(const Graph &g, const DistrictMap &p, int districtIdx, int target) {
    requireValidMap(g, p);
    if (districtIdx < 0 || districtIdx >= p.k)
        throw BadParamsError("district index out of range");
    if (p.districtOf(target) != districtIdx)
        throw InvalidTargetError("target vertex is not in the district");
    BlockTree t = blockTree(g);
    if (!isContractibleDistrict(g, t, p, districtIdx))
        throw IncontractibleDistrictError();
    auto leaves = containedLeafBlocks(t, p, districtIdx);
    if (leaves.size() == 1) {
        int b = leaves[0];
        if (!t.blockContains(b, target))
            throw InvalidTargetError("district holds leaf block " + std::to_string(b) +
                                     "; target must lie in it");
        if (t.isCut[target])
            throw InvalidTargetError("target is a cut vertex of G");
    }
    DistrictMap work = p;
    SwitchPlan plan;
    plan.startSignature = mapSignature(p).str();
    std::set<int> removeSet(work.districts[districtIdx].begin(),
                            work.districts[districtIdx].end());
    removeSet.erase(target);
    contractSubset(g, work, districtIdx, std::move(removeSet), plan);
    plan.endSignature = mapSignature(work).str();
    return plan;
}

} // namespace redist
