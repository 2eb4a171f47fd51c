#ifndef REDIST_GENERATORS_HPP
#define REDIST_GENERATORS_HPP

#include <array>
#include <map>
#include <optional>
#include <string>

#include "redist/district.hpp"

namespace redist {

// 3CNF formula; literals are signed 1-based variable ids.
struct Cnf {
    int numVars = 0;
    std::vector<std::array<int, 3>> clauses;

    int numClauses() const { return static_cast<int>(clauses.size()); }
    bool satisfiedBy(const std::vector<bool> &assignment) const;
    void validate() const; // throws BadFormulaError
};

Cnf parseDimacs(const std::string &text);
std::string serializeDimacs(const Cnf &cnf);

struct InstanceMeta {
    std::string kind;
    int k = 0;
    std::optional<long long> budget;     // L(phi) for the shortest-path reduction
    std::optional<long long> lowerBound; // diameter/distance lower bound
    std::map<std::string, long long> params;
    std::map<std::string, std::vector<int>> roles; // role name -> vertex ids
};

struct Instance {
    Graph graph;
    DistrictMap mapA;
    DistrictMap mapB;
    InstanceMeta meta;

    const std::vector<int> &role(const std::string &name) const;
    int roleVertex(const std::string &name, int idx) const;
};

// Diameter lower-bound families (Section "Lower Bounds").
Instance genPathLB(int n, int k);
Instance genCycleLB(int n, int k);
// Two diamond chains with a spiral path and two pendant trees; r even >= 2.
Instance genSpiralLB(int r, int q, int ell);
SwitchPlan witnessSpiral(const Instance &inst);

// Shortest-path 3SAT reduction; contractibleVariant subdivides the l2-l3 and
// r2-r3 edges with budget-length chains.
Instance genSpHardness(const Cnf &cnf, bool contractibleVariant);
// assignment[i] is the value of variable i+1; must satisfy the formula.
SwitchPlan witnessSp(const Instance &inst, const std::vector<bool> &assignment);

// Connectedness 3SAT reduction.
Instance genConnHardness(const Cnf &cnf);
SwitchPlan witnessConn(const Instance &inst, const std::vector<bool> &assignment);

struct AuditReport {
    std::string kind;
    std::map<std::string, long long> counts;
};

// Verifies the plan on the instance and decomposes its length into labeled
// cost components based on the instance's vertex roles.
AuditReport auditPlan(const Instance &inst, const SwitchPlan &plan);

// Bundle layout: graph.txt, mapA.txt, mapB.txt, meta.json, optional
// witness.plan inside a directory.
void saveInstance(const Instance &inst, const std::string &dir,
                  const SwitchPlan *witness = nullptr);
Instance loadInstance(const std::string &dir);

} // namespace redist

#endif
