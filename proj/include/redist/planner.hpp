#ifndef REDIST_PLANNER_HPP
#define REDIST_PLANNER_HPP

#include <map>
#include <optional>

#include "redist/block_tree.hpp"
#include "redist/contract.hpp"
#include "redist/district.hpp"

namespace redist {

enum class BlockType { TypeI, TypeII, TypeIII, Untyped };

struct PerBlock {
    std::vector<int> downSet; // down(w); empty for the root
    bool isElbow = false;
    BlockType typeTag = BlockType::Untyped;
    int dCount = 0; // districts assigned to this block
};

struct BlockClassification {
    RootedBlockTree rooted;
    std::vector<PerBlock> perBlock;
    std::map<int, int> leafDistricts; // district index -> leaf(V_i) block
    bool allTyped() const;
    int sumD() const;
};

// Identifies the unique leaf block w with w \ {cut} inside district i, or -1.
int leafDistrictBlock(const RootedBlockTree &rbt, const DistrictMap &p, int districtIdx);

BlockClassification classifyBlocks(const Graph &g, const RootedBlockTree &rbt,
                                   const DistrictMap &p);
BlockClassification classifyBlocks(const Graph &g, const DistrictMap &p);

bool isPseudoCanonical(const Graph &g, const DistrictMap &p);

// Algorithm 1: drives any k-district map of a biconnected graph to the
// canonical map determined by (G, k) alone.
std::pair<SwitchPlan, DistrictMap> canonicalBiconnected(const Graph &g, const DistrictMap &p);

// Lemma "pushing": spawns a 2-vertex district inside w1, caterpillars it
// along the singleton path P, and dissolves it into w2. Mutates p.
SwitchPlan pushDistrict(const Graph &g, DistrictMap &p, const std::vector<int> &w1Vertices,
                        const std::vector<int> &pathP, const std::vector<int> &w2Vertices);

// Algorithm 2: elbows, leaf-district confinement, per-block consolidation.
std::pair<SwitchPlan, DistrictMap> pseudoCanonical(const Graph &g, const DistrictMap &p);

SwitchPlan alignPseudoCanonical(const Graph &g, const DistrictMap &p1, const DistrictMap &p2);

enum class PlanOutcome { Planned, Unreachable, UnsupportedPair };

struct PlanPathResult {
    PlanOutcome outcome = PlanOutcome::Planned;
    SwitchPlan plan;
    // phase name -> number of steps contributed, in order of execution
    std::vector<std::pair<std::string, int>> phases;
    int lengthBound = 0; // 4 * k * n
};

PlanPathResult planPath(const Graph &g, const DistrictMap &p1, const DistrictMap &p2);

} // namespace redist

#endif
