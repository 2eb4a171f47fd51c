#ifndef REDIST_ORACLE_HPP
#define REDIST_ORACLE_HPP

#include <map>
#include <optional>

#include "redist/district.hpp"

namespace redist {

struct OracleLimits {
    int vertexCap = 10;          // refuse graphs larger than this
    long long nodeBudget = 2000000; // abort enumeration past this many maps
};

// Every valid k-district map exactly once (by signature), deterministic order.
std::vector<DistrictMap> enumerateDistrictMaps(const Graph &g, int k,
                                               const OracleLimits &limits = {});

// Explicit switch graph Gamma_k(G) for small instances.
struct SwitchGraph {
    int n = 0, k = 0;
    std::vector<Signature> nodes;
    std::map<std::string, int> index;
    std::vector<std::vector<int>> adj;          // sorted neighbor lists
    std::vector<std::pair<int, int>> edges;     // u < v, sorted
    std::vector<int> component;
    int componentCount = 0;

    int idOf(const Signature &s) const; // throws UnknownSignatureError
};

SwitchGraph buildSwitchGraph(const Graph &g, int k, const OracleLimits &limits = {});

// BFS distance in Gamma_k(G); nullopt when the maps are in different components.
std::optional<int> oracleDistance(const SwitchGraph &sg, const Signature &a, const Signature &b);

// Maximum eccentricity within the component containing `of`.
int oracleDiameter(const SwitchGraph &sg, const Signature &of);

// Ground-truth contractibility: searches for a removal order where every
// removed vertex keeps the district connected and has a neighbor outside it.
bool oracleContractible(const Graph &g, const DistrictMap &p, int districtIdx);

} // namespace redist

#endif
