#ifndef REDIST_CONTRACT_HPP
#define REDIST_CONTRACT_HPP

#include <functional>
#include <set>

#include "redist/block_tree.hpp"
#include "redist/district.hpp"

namespace redist {

// Leaf blocks of t fully contained in district i of p.
std::vector<int> containedLeafBlocks(const BlockTree &t, const DistrictMap &p, int districtIdx);

// Characterization from the two contraction lemmas: a district is
// incontractible iff it holds two full leaf blocks of the block tree, or it
// is the whole vertex set (k = 1) with more than one vertex.
bool isContractibleDistrict(const Graph &g, const BlockTree &t, const DistrictMap &p,
                            int districtIdx);
bool isContractibleMap(const Graph &g, const BlockTree &t, const DistrictMap &p);

// Ranks a candidate switch (u, v, w) that removes v from the shrinking
// district; lower keys win. Default preference: smallest (w, v).
using ExpansionPreference = std::function<long long(const Switch &)>;
long long defaultExpansionPreference(const Switch &s);

// Removes every vertex of `removeSet` from district i by valid switches,
// appending them to `plan` and mutating `p`. Each step keeps the district
// connected and sends the vertex to an adjacent district. `stop` (optional)
// is checked after every switch; returning true ends the contraction early.
// Throws PreconditionViolatedError if no valid removal exists while work
// remains. `allowed` (optional) restricts which vertices may receive or be
// adjacent targets (used by the canonical algorithm's shrinking graph).
struct ContractionControl {
    ExpansionPreference preference = defaultExpansionPreference;
    std::function<bool()> stop;
    std::function<bool(int)> vertexAllowed; // filter on w; default: all
};

void contractSubset(const Graph &g, DistrictMap &p, int districtIdx, std::set<int> removeSet,
                    SwitchPlan &plan, const ContractionControl &ctl = {});

// Lemma-style full contraction of district i to {target}, validating the
// target condition against the block tree. Returns the plan (exactly
// |V_i| - 1 steps) without mutating p.
SwitchPlan contractDistrict(const Graph &g, const DistrictMap &p, int districtIdx, int target);

} // namespace redist

#endif
