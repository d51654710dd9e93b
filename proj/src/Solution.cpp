#include "vrpsl/Solution.h"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace vrpsl {

Route makeRoute(const std::vector<int>& visits, const Instance& inst, const PenaltyState& pen) {
    Route r;
    r.visits = visits;
    if (visits.empty()) return r;
    int prev = 0;
    for (int c : visits) {
        r.distance += inst.dist(prev, c);
        r.load += inst.demand[static_cast<std::size_t>(c)];
        r.profit += inst.profit[static_cast<std::size_t>(c)];
        prev = c;
    }
    r.distance += inst.dist(prev, 0);
    r.cost = r.distance - r.profit + pen.wCapacity * std::max(0.0, r.load - inst.capacity);
    return r;
}

std::vector<double> levelsOf(const std::vector<int>& giantTour, const Instance& inst) {
    std::vector<double> visited(static_cast<std::size_t>(inst.nbGroups()), 0.0);
    for (int c : giantTour)
        visited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(c)])] +=
            inst.weight[static_cast<std::size_t>(c)];
    std::vector<double> levels(static_cast<std::size_t>(inst.nbGroups()), 0.0);
    for (int k = 0; k < inst.nbGroups(); ++k) {
        const double total = inst.groupWeight(k);
        levels[static_cast<std::size_t>(k)] = total > 0.0 ? visited[static_cast<std::size_t>(k)] / total : 1.0;
    }
    return levels;
}

void Solution::evaluate(const Instance& inst, const PenaltyState& pen) {
    totalDistance = 0.0;
    visitedProfit = 0.0;
    capacityExcess = 0.0;
    for (auto& r : routes) {
        r = makeRoute(r.visits, inst, pen);
        totalDistance += r.distance;
        visitedProfit += r.profit;
        capacityExcess += std::max(0.0, r.load - inst.capacity);
    }
    levelChromosome = levelsOf(giantTour, inst);
    routed = true;
    reprice(inst, pen);
}

void Solution::reprice(const Instance& inst, const PenaltyState& pen) {
    double c = inst.totalProfit() - visitedProfit + totalDistance +
               pen.wCapacity * capacityExcess;
    for (int k = 0; k < inst.nbGroups(); ++k)
        c += pen.wService[static_cast<std::size_t>(k)] *
             std::max(0.0, inst.serviceLevel[static_cast<std::size_t>(k)] -
                               levelChromosome[static_cast<std::size_t>(k)]);
    cost = c;
    for (auto& r : routes)
        r.cost = r.distance - r.profit + pen.wCapacity * std::max(0.0, r.load - inst.capacity);
}

void Solution::syncGiantTour() {
    giantTour.clear();
    for (const auto& r : routes) giantTour.insert(giantTour.end(), r.visits.begin(), r.visits.end());
}

double solutionCost(const Solution& sol, const Instance& inst, const PenaltyState& pen) {
    double c = inst.totalProfit();
    for (const auto& r : sol.routes) {
        const Route rr = makeRoute(r.visits, inst, pen);
        c += rr.cost;
    }
    const auto levels = levelsOf(sol.giantTour, inst);
    for (int k = 0; k < inst.nbGroups(); ++k)
        c += pen.wService[static_cast<std::size_t>(k)] *
             std::max(0.0, inst.serviceLevel[static_cast<std::size_t>(k)] -
                               levels[static_cast<std::size_t>(k)]);
    return c;
}

std::string Violation::describe() const {
    switch (kind) {
        case Kind::RouteLoad:
            return "route " + std::to_string(index) + " exceeds capacity by " +
                   std::to_string(magnitude);
        case Kind::FleetSize:
            return "uses " + std::to_string(index) + " routes, " +
                   std::to_string(static_cast<int>(magnitude)) + " too many";
        case Kind::DuplicateVisit:
            return "customer " + std::to_string(index) + " visited more than once";
        case Kind::ServiceLevel:
            return "group " + std::to_string(index) + " misses its weight threshold by " +
                   std::to_string(magnitude);
    }
    return "?";
}

FeasibilityReport checkFeasibility(const Solution& sol, const Instance& inst) {
    FeasibilityReport rep;

    int nonEmpty = 0;
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
        const auto& route = sol.routes[r];
        if (route.visits.empty()) continue;
        ++nonEmpty;
        double load = 0.0;
        for (int c : route.visits) load += inst.demand[static_cast<std::size_t>(c)];
        if (load > inst.capacity + 1e-6)
            rep.violations.push_back({Violation::Kind::RouteLoad, static_cast<int>(r),
                                      load - inst.capacity});
    }
    if (nonEmpty > inst.fleetSize)
        rep.violations.push_back({Violation::Kind::FleetSize, nonEmpty,
                                  static_cast<double>(nonEmpty - inst.fleetSize)});

    std::vector<int> seen(static_cast<std::size_t>(inst.nbCustomers) + 1, 0);
    for (const auto& route : sol.routes)
        for (int c : route.visits)
            if (++seen[static_cast<std::size_t>(c)] == 2)
                rep.violations.push_back({Violation::Kind::DuplicateVisit, c, 1.0});

    std::vector<double> visitedWeight(static_cast<std::size_t>(inst.nbGroups()), 0.0);
    for (const auto& route : sol.routes)
        for (int c : route.visits)
            visitedWeight[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(c)])] +=
                inst.weight[static_cast<std::size_t>(c)];
    for (int k = 0; k < inst.nbGroups(); ++k) {
        const double threshold = inst.groupThreshold(k);
        const double have = visitedWeight[static_cast<std::size_t>(k)];
        if (have < threshold - 1e-6)
            rep.violations.push_back({Violation::Kind::ServiceLevel, k, threshold - have});
    }

    rep.feasible = rep.violations.empty();
    return rep;
}

std::vector<std::pair<int, int>> solutionEdges(const Solution& sol) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& r : sol.routes) {
        if (r.visits.empty()) continue;
        int prev = 0;
        for (int c : r.visits) {
            edges.emplace_back(std::min(prev, c), std::max(prev, c));
            prev = c;
        }
        edges.emplace_back(0, prev);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

double edgeSetDistance(const std::vector<std::pair<int, int>>& a,
                       const std::vector<std::pair<int, int>>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t common = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { ++common; ++i; ++j; }
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    const std::size_t unionSize = a.size() + b.size() - common;
    return 1.0 - static_cast<double>(common) / static_cast<double>(unionSize);
}

double solutionDistance(const Solution& a, const Solution& b) {
    return edgeSetDistance(solutionEdges(a), solutionEdges(b));
}

std::string solutionToJson(const Solution& sol, const Instance& inst) {
    nlohmann::json j;
    j["routes"] = nlohmann::json::array();
    for (const auto& r : sol.routes)
        if (!r.visits.empty()) j["routes"].push_back(r.visits);
    j["cost"] = sol.cost;
    const auto rep = checkFeasibility(sol, inst);
    j["feasible"] = rep.feasible;
    j["service_levels"] = levelsOf(sol.giantTour, inst);
    j["violations"] = nlohmann::json::array();
    for (const auto& v : rep.violations) j["violations"].push_back(v.describe());
    return j.dump(2);
}

} // namespace vrpsl
