// Command-line front end for the connected-partition reconfiguration toolkit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "redist/connectivity.hpp"
#include "redist/contract.hpp"
#include "redist/generators.hpp"
#include "redist/oracle.hpp"
#include "redist/planner.hpp"

using namespace redist;
using nlohmann::json;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out)
        throw DomainError("cannot write " + path);
    out << content;
}

Graph readGraph(const std::string &path) { return loadGraph(slurp(path)); }
DistrictMap readMap(const std::string &path, const Graph &g) { return loadMap(slurp(path), g); }

void emitPlan(const SwitchPlan &plan, const std::string &outPath) {
    if (outPath.empty())
        std::cout << serializePlan(plan);
    else
        spit(outPath, serializePlan(plan));
}

std::vector<bool> parseAssignment(const std::string &bits) {
    std::vector<bool> out;
    for (char c : bits) {
        if (c == '0')
            out.push_back(false);
        else if (c == '1')
            out.push_back(true);
        else if (!isspace(static_cast<unsigned char>(c)))
            throw BadParamsError("assignment must be a 0/1 string");
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"reconfiguration toolkit for connected graph partitions"};
    app.require_subcommand(1);
    bool jsonOut = false;
    app.add_flag("--json", jsonOut, "emit reports as JSON");

    std::string graphPath, mapPath, mapBPath, planFile, outPath, cnfPath, bundleDir, assignment;
    int k = 0, districtIdx = 0, target = 0, cap = 10;

    auto *validate = app.add_subcommand("validate", "check a district map against a graph");
    validate->add_option("graph", graphPath)->required();
    validate->add_option("map", mapPath)->required();

    auto *switches = app.add_subcommand("switches", "list all valid switches of a map");
    switches->add_option("graph", graphPath)->required();
    switches->add_option("map", mapPath)->required();

    auto *apply = app.add_subcommand("apply", "apply a plan, streaming signatures");
    apply->add_option("graph", graphPath)->required();
    apply->add_option("map", mapPath)->required();
    apply->add_option("plan", planFile)->required();

    auto *contract = app.add_subcommand("contract", "contract a district to a target vertex");
    contract->add_option("graph", graphPath)->required();
    contract->add_option("map", mapPath)->required();
    contract->add_option("district", districtIdx)->required();
    contract->add_option("target", target)->required();
    contract->add_option("--out", outPath, "write the plan to a file");

    auto *connected = app.add_subcommand("connected", "decide connectedness of Gamma_k(G)");
    connected->add_option("graph", graphPath)->required();
    connected->add_option("k", k)->required();

    auto *plan = app.add_subcommand("plan", "plan a switch sequence between two maps");
    plan->add_option("graph", graphPath)->required();
    plan->add_option("mapA", mapPath)->required();
    plan->add_option("mapB", mapBPath)->required();
    plan->add_option("--out", outPath, "write the plan to a file");
    std::string metaPath;
    plan->add_option("--meta", metaPath, "write phase metadata (JSON) to a file");

    auto *verify = app.add_subcommand("verify", "verify a plan end-to-end");
    verify->add_option("graph", graphPath)->required();
    verify->add_option("mapA", mapPath)->required();
    verify->add_option("plan", planFile)->required();
    verify->add_option("mapB", mapBPath)->required();

    auto *oracle = app.add_subcommand("oracle", "exhaustive switch-graph queries");
    oracle->add_option("graph", graphPath)->required();
    oracle->add_option("k", k)->required();
    oracle->add_option("--cap", cap, "vertex cap for enumeration");
    std::string distA, distB, diamMap, dumpPrefix;
    oracle->add_option("--distance-from", distA, "map file: BFS distance source");
    oracle->add_option("--distance-to", distB, "map file: BFS distance target");
    oracle->add_option("--diameter-of", diamMap, "map file: component diameter");
    oracle->add_option("--dump", dumpPrefix, "write <prefix>.nodes and <prefix>.edges");

    auto *gen = app.add_subcommand("gen", "generate an instance bundle");
    std::string kind;
    gen->add_option("kind", kind,
                    "path-lb | cycle-lb | spiral-lb | sp-hardness | sp-hardness-contractible | "
                    "conn-hardness")
        ->required();
    gen->add_option("--out", bundleDir, "bundle directory")->required();
    int genN = 0, genK = 0, genR = 0, genQ = 0, genEll = 0;
    bool withWitness = false;
    gen->add_option("--n", genN);
    gen->add_option("--k", genK);
    gen->add_option("--r", genR);
    gen->add_option("--q", genQ);
    gen->add_option("--ell", genEll);
    gen->add_option("--cnf", cnfPath, "DIMACS file for the hardness reductions");
    gen->add_option("--assignment", assignment, "0/1 string; emit a witness plan");
    gen->add_flag("--witness", withWitness, "emit witness.plan (spiral instances)");

    auto *audit = app.add_subcommand("audit", "audit a plan against an instance bundle");
    audit->add_option("bundle", bundleDir)->required();
    audit->add_option("plan", planFile)->required();

    for (CLI::App *sc : app.get_subcommands([](const CLI::App *) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) {
            Graph g = readGraph(graphPath);
            DistrictMap m = readMap(mapPath, g);
            auto v = validateMap(g, m);
            if (jsonOut) {
                std::cout << json{{"ok", v.ok()}, {"issues", v.issues}}.dump() << "\n";
            } else {
                std::cout << "ok=" << (v.ok() ? "true" : "false") << "\n";
                for (const auto &issue : v.issues)
                    std::cout << "issue=" << issue << "\n";
            }
            return v.ok() ? 0 : 1;
        }
        if (*switches) {
            Graph g = readGraph(graphPath);
            DistrictMap m = readMap(mapPath, g);
            requireValidMap(g, m);
            for (const auto &s : validSwitches(g, m))
                std::cout << s.u << ' ' << s.v << ' ' << s.w << "\n";
            return 0;
        }
        if (*apply) {
            Graph g = readGraph(graphPath);
            DistrictMap m = readMap(mapPath, g);
            requireValidMap(g, m);
            SwitchPlan p = loadPlan(slurp(planFile));
            std::cout << mapSignature(m).str() << "\n";
            for (const auto &s : p.steps) {
                applySwitchInPlace(g, m, s);
                std::cout << mapSignature(m).str() << "\n";
            }
            return 0;
        }
        if (*contract) {
            Graph g = readGraph(graphPath);
            DistrictMap m = readMap(mapPath, g);
            SwitchPlan p = contractDistrict(g, m, districtIdx, target);
            emitPlan(p, outPath);
            return 0;
        }
        if (*connected) {
            Graph g = readGraph(graphPath);
            auto v = switchGraphConnected(g, k);
            if (jsonOut) {
                json j{{"connected", v.connected}, {"reason", v.reason}};
                if (v.M)
                    j["M"] = *v.M;
                if (v.witnessPair)
                    j["witnessPair"] = {v.witnessPair->first, v.witnessPair->second};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << (v.connected ? "connected" : "disconnected") << ": " << v.reason
                          << "\n";
                if (v.M)
                    std::cout << "M=" << *v.M << "\n";
                if (v.witnessPair)
                    std::cout << "witnessPair=" << v.witnessPair->first << ","
                              << v.witnessPair->second << "\n";
            }
            return 0;
        }
        if (*plan) {
            Graph g = readGraph(graphPath);
            DistrictMap a = readMap(mapPath, g), b = readMap(mapBPath, g);
            auto res = redist::planPath(g, a, b);
            if (res.outcome == PlanOutcome::Unreachable) {
                std::cout << "unreachable\n";
                return 0;
            }
            if (res.outcome == PlanOutcome::UnsupportedPair) {
                std::cout << "unsupported-pair\n";
                return 0;
            }
            emitPlan(res.plan, outPath);
            if (!metaPath.empty()) {
                json phases = json::array();
                for (auto &[name, len] : res.phases) {
                    json ph;
                    ph["phase"] = name;
                    ph["steps"] = len;
                    phases.push_back(ph);
                }
                json meta;
                meta["length"] = res.plan.length();
                meta["lengthBound"] = res.lengthBound;
                meta["phases"] = phases;
                spit(metaPath, meta.dump(2) + "\n");
            }
            return 0;
        }
        if (*verify) {
            Graph g = readGraph(graphPath);
            DistrictMap a = readMap(mapPath, g), b = readMap(mapBPath, g);
            SwitchPlan p = loadPlan(slurp(planFile));
            verifyPlan(g, a, p, b);
            if (jsonOut)
                std::cout << json{{"ok", true}, {"steps", p.length()}}.dump() << "\n";
            else
                std::cout << "ok: " << p.length() << " steps\n";
            return 0;
        }
        if (*oracle) {
            Graph g = readGraph(graphPath);
            OracleLimits limits;
            limits.vertexCap = cap;
            SwitchGraph sg = buildSwitchGraph(g, k, limits);
            std::cout << "nodes=" << sg.nodes.size() << "\n";
            std::cout << "edges=" << sg.edges.size() << "\n";
            std::cout << "components=" << sg.componentCount << "\n";
            if (!distA.empty() && !distB.empty()) {
                auto d = oracleDistance(sg, mapSignature(readMap(distA, g)),
                                        mapSignature(readMap(distB, g)));
                if (d)
                    std::cout << "distance=" << *d << "\n";
                else
                    std::cout << "distance=unreachable\n";
            }
            if (!diamMap.empty())
                std::cout << "diameter=" << oracleDiameter(sg, mapSignature(readMap(diamMap, g)))
                          << "\n";
            if (!dumpPrefix.empty()) {
                std::ostringstream nodes, edges;
                for (size_t i = 0; i < sg.nodes.size(); ++i)
                    nodes << i << ' ' << sg.nodes[i].str() << "\n";
                for (auto [a, b] : sg.edges)
                    edges << a << ' ' << b << "\n";
                spit(dumpPrefix + ".nodes", nodes.str());
                spit(dumpPrefix + ".edges", edges.str());
            }
            return 0;
        }
        if (*gen) {
            Instance inst;
            if (kind == "path-lb")
                inst = genPathLB(genN, genK);
            else if (kind == "cycle-lb")
                inst = genCycleLB(genN, genK);
            else if (kind == "spiral-lb")
                inst = genSpiralLB(genR, genQ, genEll);
            else if (kind == "sp-hardness" || kind == "sp-hardness-contractible")
                inst = genSpHardness(parseDimacs(slurp(cnfPath)),
                                     kind == "sp-hardness-contractible");
            else if (kind == "conn-hardness")
                inst = genConnHardness(parseDimacs(slurp(cnfPath)));
            else
                throw BadParamsError("unknown instance kind: " + kind);

            SwitchPlan witness;
            bool haveWitness = false;
            if (!assignment.empty()) {
                auto tau = parseAssignment(assignment);
                if (kind == "conn-hardness")
                    witness = witnessConn(inst, tau);
                else
                    witness = witnessSp(inst, tau);
                haveWitness = true;
            } else if (withWitness && kind == "spiral-lb") {
                witness = witnessSpiral(inst);
                haveWitness = true;
            }
            saveInstance(inst, bundleDir, haveWitness ? &witness : nullptr);
            std::cout << "kind=" << inst.meta.kind << "\n";
            std::cout << "n=" << inst.graph.numVertices() << "\n";
            std::cout << "k=" << inst.meta.k << "\n";
            if (inst.meta.budget)
                std::cout << "budget=" << *inst.meta.budget << "\n";
            if (inst.meta.lowerBound)
                std::cout << "lowerBound=" << *inst.meta.lowerBound << "\n";
            if (haveWitness)
                std::cout << "witnessSteps=" << witness.length() << "\n";
            return 0;
        }
        if (*audit) {
            Instance inst = loadInstance(bundleDir);
            SwitchPlan p = loadPlan(slurp(planFile));
            AuditReport rep = auditPlan(inst, p);
            if (jsonOut) {
                std::cout << json{{"kind", rep.kind}, {"counts", rep.counts}}.dump() << "\n";
            } else {
                std::cout << "kind=" << rep.kind << "\n";
                for (auto &[key, val] : rep.counts)
                    std::cout << key << "=" << val << "\n";
            }
            return 0;
        }
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
