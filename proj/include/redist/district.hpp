#ifndef REDIST_DISTRICT_HPP
#define REDIST_DISTRICT_HPP

#include <string>
#include <vector>

#include "redist/graph.hpp"

namespace redist {

// Unlabeled partition of V(G) into k nonempty connected districts. The
// internal labeling (district indices) is an implementation detail; identity
// is defined by the Signature below.
struct DistrictMap {
    int k = 0;
    std::vector<int> assignment;             // per-vertex district index
    std::vector<std::vector<int>> districts; // sorted vertex lists

    int districtOf(int v) const { return assignment[v]; }
    const std::vector<int> &district(int i) const { return districts[i]; }
    int size(int i) const { return static_cast<int>(districts[i].size()); }

    static DistrictMap fromDistricts(int n, std::vector<std::vector<int>> districts);
    static DistrictMap fromAssignment(std::vector<int> assignment);
};

// switch_p(u, v, w): moves v from the district of u to the district of w.
struct Switch {
    int u = -1, v = -1, w = -1;
    bool operator==(const Switch &o) const { return u == o.u && v == o.v && w == o.w; }
};

// Canonical form: districts sorted internally, then sorted by smallest element.
struct Signature {
    std::vector<std::vector<int>> parts;
    std::string str() const;
    bool operator==(const Signature &o) const { return parts == o.parts; }
    bool operator!=(const Signature &o) const { return parts != o.parts; }
    bool operator<(const Signature &o) const { return parts < o.parts; }
};

struct SwitchPlan {
    std::vector<Switch> steps;
    std::string startSignature;
    std::string endSignature;

    int length() const { return static_cast<int>(steps.size()); }
    void append(const SwitchPlan &other);
};

struct MapViolations {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
};

MapViolations validateMap(const Graph &g, const DistrictMap &p);
void requireValidMap(const Graph &g, const DistrictMap &p); // throws DomainError

// Exactly the valid switches of p, sorted by (v, w, u).
std::vector<Switch> validSwitches(const Graph &g, const DistrictMap &p);
bool isValidSwitch(const Graph &g, const DistrictMap &p, const Switch &s);
DistrictMap applySwitch(const Graph &g, const DistrictMap &p, const Switch &s);
// In-place variant used by plan builders.
void applySwitchInPlace(const Graph &g, DistrictMap &p, const Switch &s);

Signature mapSignature(const DistrictMap &p);
DistrictMap mapFromSignature(const Signature &s, int n);

Switch reverseSwitch(const Switch &s);
SwitchPlan reversePlan(const SwitchPlan &plan);

// Applies every step, checking validity; returns the final map.
// Throws InvalidPlanError on a bad step or a signature mismatch.
DistrictMap verifyPlan(const Graph &g, const DistrictMap &start, const SwitchPlan &plan);
DistrictMap verifyPlan(const Graph &g, const DistrictMap &start, const SwitchPlan &plan,
                       const DistrictMap &expectedEnd);

// File formats (see README): maps are "k" then one line of sorted ids per
// district, districts ordered by smallest element; plans are a step count
// then "u v w" lines.
DistrictMap loadMap(const std::string &text, const Graph &g);
std::string serializeMap(const DistrictMap &p);
SwitchPlan loadPlan(const std::string &text);
std::string serializePlan(const SwitchPlan &plan);

} // namespace redist

#endif
