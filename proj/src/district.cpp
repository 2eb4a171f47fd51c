#include "redist/district.hpp"

#include <algorithm>
#include <sstream>

namespace redist {

DistrictMap DistrictMap::fromDistricts(int n, std::vector<std::vector<int>> districts) {
    DistrictMap p;
    p.k = static_cast<int>(districts.size());
    p.assignment.assign(n, -1);
    for (int i = 0; i < p.k; ++i) {
        std::sort(districts[i].begin(), districts[i].end());
        for (int v : districts[i]) {
            if (v < 0 || v >= n)
                throw ParseError("district vertex out of range: " + std::to_string(v));
            if (p.assignment[v] != -1)
                throw ParseError("vertex in two districts: " + std::to_string(v));
            p.assignment[v] = i;
        }
    }
    p.districts = std::move(districts);
    return p;
}

DistrictMap DistrictMap::fromAssignment(std::vector<int> assignment) {
    int k = 0;
    for (int a : assignment)
        k = std::max(k, a + 1);
    DistrictMap p;
    p.k = k;
    p.districts.assign(k, {});
    for (int v = 0; v < static_cast<int>(assignment.size()); ++v)
        p.districts[assignment[v]].push_back(v);
    p.assignment = std::move(assignment);
    return p;
}

std::string Signature::str() const {
    std::ostringstream out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out << '|';
        for (size_t j = 0; j < parts[i].size(); ++j) {
            if (j)
                out << ' ';
            out << parts[i][j];
        }
    }
    return out.str();
}

void SwitchPlan::append(const SwitchPlan &other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
    endSignature = other.endSignature;
}

MapViolations validateMap(const Graph &g, const DistrictMap &p) {
    MapViolations out;
    int n = g.numVertices();
    if (static_cast<int>(p.assignment.size()) != n) {
        out.issues.push_back("NotAPartition: assignment covers " +
                             std::to_string(p.assignment.size()) + " vertices, graph has " +
                             std::to_string(n));
        return out;
    }
    std::vector<int> count(n, 0);
    for (int i = 0; i < p.k; ++i)
        for (int v : p.districts[i]) {
            if (v < 0 || v >= n) {
                out.issues.push_back("NotAPartition: vertex out of range");
                return out;
            }
            ++count[v];
            if (p.assignment[v] != i)
                out.issues.push_back("NotAPartition: assignment/district mismatch at vertex " +
                                     std::to_string(v));
        }
    for (int v = 0; v < n; ++v)
        if (count[v] != 1) {
            out.issues.push_back("NotAPartition: vertex " + std::to_string(v) + " covered " +
                                 std::to_string(count[v]) + " times");
            return out;
        }
    for (int i = 0; i < p.k; ++i) {
        if (p.districts[i].empty()) {
            out.issues.push_back("EmptyDistrict: district " + std::to_string(i));
            continue;
        }
        if (!isConnectedSubset(g, p.districts[i]))
            out.issues.push_back("DisconnectedDistrict: district " + std::to_string(i));
    }
    return out;
}

void requireValidMap(const Graph &g, const DistrictMap &p) {
    auto v = validateMap(g, p);
    if (!v.ok())
        throw DomainError("invalid district map: " + v.issues.front());
}

namespace {

bool sourceStaysConnected(const Graph &g, const DistrictMap &p, int v) {
    const auto &d = p.districts[p.districtOf(v)];
    if (d.size() <= 1)
        return false; // would empty the district
    std::vector<int> rest;
    rest.reserve(d.size() - 1);
    for (int x : d)
        if (x != v)
            rest.push_back(x);
    return isConnectedSubset(g, rest);
}

} // namespace

bool isValidSwitch(const Graph &g, const DistrictMap &p, const Switch &s) {
    if (!g.hasEdge(s.u, s.v) || !g.hasEdge(s.v, s.w))
        return false;
    if (p.districtOf(s.u) != p.districtOf(s.v))
        return false;
    if (p.districtOf(s.v) == p.districtOf(s.w))
        return false;
    return sourceStaysConnected(g, p, s.v);
}

std::vector<Switch> validSwitches(const Graph &g, const DistrictMap &p) {
    std::vector<Switch> out;
    int n = g.numVertices();
    for (int v = 0; v < n; ++v) {
        bool movable = sourceStaysConnected(g, p, v);
        if (!movable)
            continue;
        for (int w : g.neighbors(v)) {
            if (p.districtOf(w) == p.districtOf(v))
                continue;
            for (int u : g.neighbors(v)) {
                if (u != w && p.districtOf(u) == p.districtOf(v))
                    out.push_back({u, v, w});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Switch &a, const Switch &b) {
        if (a.v != b.v)
            return a.v < b.v;
        if (a.w != b.w)
            return a.w < b.w;
        return a.u < b.u;
    });
    return out;
}

void applySwitchInPlace(const Graph &g, DistrictMap &p, const Switch &s) {
    if (!g.hasEdge(s.u, s.v) || !g.hasEdge(s.v, s.w))
        throw InvalidSwitchError(SwitchErrorReason::NotAPath,
                                 "(u,v,w) is not a path in G: " + std::to_string(s.u) + " " +
                                     std::to_string(s.v) + " " + std::to_string(s.w));
    if (p.districtOf(s.u) != p.districtOf(s.v))
        throw InvalidSwitchError(SwitchErrorReason::SourceNotShared,
                                 "u and v are in different districts");
    if (p.districtOf(s.v) == p.districtOf(s.w))
        throw InvalidSwitchError(SwitchErrorReason::SameDistrict,
                                 "v and w are already in the same district");
    if (!sourceStaysConnected(g, p, s.v))
        throw InvalidSwitchError(SwitchErrorReason::DisconnectsSource,
                                 "removing v disconnects (or empties) its district");
    int from = p.districtOf(s.v), to = p.districtOf(s.w);
    auto &src = p.districts[from];
    src.erase(std::find(src.begin(), src.end(), s.v));
    auto &dst = p.districts[to];
    dst.insert(std::lower_bound(dst.begin(), dst.end(), s.v), s.v);
    p.assignment[s.v] = to;
}

DistrictMap applySwitch(const Graph &g, const DistrictMap &p, const Switch &s) {
    DistrictMap out = p;
    applySwitchInPlace(g, out, s);
    return out;
}

Signature mapSignature(const DistrictMap &p) {
    Signature s;
    s.parts = p.districts;
    for (auto &part : s.parts)
        std::sort(part.begin(), part.end());
    std::sort(s.parts.begin(), s.parts.end());
    return s;
}

DistrictMap mapFromSignature(const Signature &s, int n) {
    return DistrictMap::fromDistricts(n, s.parts);
}

Switch reverseSwitch(const Switch &s) { return {s.w, s.v, s.u}; }

SwitchPlan reversePlan(const SwitchPlan &plan) {
    SwitchPlan out;
    out.steps.reserve(plan.steps.size());
    for (auto it = plan.steps.rbegin(); it != plan.steps.rend(); ++it)
        out.steps.push_back(reverseSwitch(*it));
    out.startSignature = plan.endSignature;
    out.endSignature = plan.startSignature;
    return out;
}

DistrictMap verifyPlan(const Graph &g, const DistrictMap &start, const SwitchPlan &plan) {
    requireValidMap(g, start);
    if (!plan.startSignature.empty() && mapSignature(start).str() != plan.startSignature)
        throw InvalidPlanError("start map does not match the plan's start signature");
    DistrictMap cur = start;
    for (size_t i = 0; i < plan.steps.size(); ++i) {
        try {
            applySwitchInPlace(g, cur, plan.steps[i]);
        } catch (const InvalidSwitchError &e) {
            throw InvalidPlanError("step " + std::to_string(i + 1) + " invalid: " + e.what());
        }
    }
    if (!plan.endSignature.empty() && mapSignature(cur).str() != plan.endSignature)
        throw InvalidPlanError("final map does not match the plan's end signature");
    return cur;
}

DistrictMap verifyPlan(const Graph &g, const DistrictMap &start, const SwitchPlan &plan,
                       const DistrictMap &expectedEnd) {
    DistrictMap end = verifyPlan(g, start, plan);
    if (!(mapSignature(end) == mapSignature(expectedEnd)))
        throw InvalidPlanError("plan does not end at the expected map");
    return end;
}

DistrictMap loadMap(const std::string &text, const Graph &g) {
    std::istringstream in(text);
    int k;
    if (!(in >> k))
        throw ParseError("expected district count");
    if (k <= 0)
        throw ParseError("district count must be positive");
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<int>> districts;
    for (int i = 0; i < k; ++i) {
        if (!std::getline(in, line))
            throw ParseError("expected " + std::to_string(k) + " district lines");
        std::istringstream ls(line);
        std::vector<int> d;
        int v;
        while (ls >> v)
            d.push_back(v);
        if (d.empty())
            throw ParseError("empty district line " + std::to_string(i + 1));
        districts.push_back(std::move(d));
    }
    return DistrictMap::fromDistricts(g.numVertices(), std::move(districts));
}

std::string serializeMap(const DistrictMap &p) {
    Signature s = mapSignature(p);
    std::ostringstream out;
    out << p.k << '\n';
    for (const auto &part : s.parts) {
        for (size_t j = 0; j < part.size(); ++j) {
            if (j)
                out << ' ';
            out << part[j];
        }
        out << '\n';
    }
    return out.str();
}

SwitchPlan loadPlan(const std::string &text) {
    std::istringstream in(text);
    int count;
    if (!(in >> count))
        throw ParseError("expected step count");
    if (count < 0)
        throw ParseError("negative step count");
    SwitchPlan plan;
    for (int i = 0; i < count; ++i) {
        Switch s;
        if (!(in >> s.u >> s.v >> s.w))
            throw ParseError("expected step line " + std::to_string(i + 1));
        plan.steps.push_back(s);
    }
    return plan;
}

std::string serializePlan(const SwitchPlan &plan) {
    std::ostringstream out;
    out << plan.steps.size() << '\n';
    for (const auto &s : plan.steps)
        out << s.u << ' ' << s.v << ' ' << s.w << '\n';
    return out.str();
}

} // namespace redist
