#pragma once

#include "vrpsl/Instance.h"
#include "vrpsl/Rng.h"
#include "vrpsl/Solution.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace vrpsl::test {

struct InstanceSpec {
    std::vector<std::array<double, 2>> coords; // depot first
    std::vector<double> demand;                // depot first (0)
    std::vector<double> profit;
    std::vector<double> weight;
    std::vector<int> groupOf;                  // 0-based groups, depot entry -1
    std::vector<double> serviceLevel;
    int fleetSize = 1;
    double capacity = 0.0;
    DistanceRounding rounding = DistanceRounding::Exact;
};

inline Instance makeInstance(const InstanceSpec& spec) {
    Instance inst;
    inst.nbCustomers = static_cast<int>(spec.coords.size()) - 1;
    inst.coords = spec.coords;
    inst.demand = spec.demand;
    inst.profit = spec.profit;
    inst.weight = spec.weight;
    inst.groupOf = spec.groupOf;
    inst.serviceLevel = spec.serviceLevel;
    inst.fleetSize = spec.fleetSize;
    inst.capacity = spec.capacity;
    inst.rounding = spec.rounding;
    inst.finalize();
    return inst;
}

struct RandomInstanceOptions {
    int nbGroups = 1;
    double minAlpha = 0.0;
    double maxAlpha = 1.0;
    bool weightsEqualDemands = true;
    double capacityFactor = 0.4; // capacity ~ factor * total demand
    int maxProfit = 30;
    int extraVehicles = 1;
};

inline Instance randomInstance(Rng& rng, int n, const RandomInstanceOptions& opt = {}) {
    InstanceSpec spec;
    spec.coords.push_back({50.0, 50.0});
    spec.demand.push_back(0.0);
    spec.profit.push_back(0.0);
    spec.weight.push_back(0.0);
    spec.groupOf.push_back(-1);
    double totalDemand = 0.0;
    for (int c = 1; c <= n; ++c) {
        spec.coords.push_back({static_cast<double>(rng.uniformInt(0, 100)),
                               static_cast<double>(rng.uniformInt(0, 100))});
        const double q = rng.uniformInt(1, 10);
        spec.demand.push_back(q);
        totalDemand += q;
        spec.profit.push_back(rng.uniformInt(0, opt.maxProfit));
        spec.weight.push_back(opt.weightsEqualDemands ? q : rng.uniformInt(1, 10));
        spec.groupOf.push_back(rng.uniformInt(0, opt.nbGroups - 1));
    }
    // Every group needs at least one member.
    for (int g = 0; g < opt.nbGroups && g < n; ++g) spec.groupOf[static_cast<std::size_t>(g) + 1] = g;
    for (int g = 0; g < opt.nbGroups; ++g)
        spec.serviceLevel.push_back(opt.minAlpha + rng.uniform01() * (opt.maxAlpha - opt.minAlpha));
    spec.capacity = std::max(10.0, std::round(opt.capacityFactor * totalDemand));
    spec.fleetSize =
        static_cast<int>(std::ceil(totalDemand / spec.capacity)) + opt.extraVehicles;
    return makeInstance(spec);
}

// ---- Independent oracles (kept free of the implementation paths they check).

// Z_k by explicit subset enumeration.
inline double bruteForceZmin(const Instance& inst, int k) {
    const auto& members = inst.groups[static_cast<std::size_t>(k)];
    double totalWeight = 0.0;
    for (int c : members) totalWeight += inst.weight[static_cast<std::size_t>(c)];
    const double target = inst.serviceLevel[static_cast<std::size_t>(k)] * totalWeight;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = members.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        double w = 0.0, q = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t{1} << i)) {
                w += inst.weight[static_cast<std::size_t>(members[i])];
                q += inst.demand[static_cast<std::size_t>(members[i])];
            }
        if (w >= target - 1e-9) best = std::min(best, q);
    }
    return best;
}

// Literal transcription of the route and solution cost formulas.
inline double referenceRouteCost(const std::vector<int>& visits, const Instance& inst,
                                 const PenaltyState& pen) {
    if (visits.empty()) return 0.0;
    double dist = inst.dist(0, visits.front());
    for (std::size_t i = 0; i + 1 < visits.size(); ++i) dist += inst.dist(visits[i], visits[i + 1]);
    dist += inst.dist(visits.back(), 0);
    double load = 0.0, profit = 0.0;
    for (int c : visits) {
        load += inst.demand[static_cast<std::size_t>(c)];
        profit += inst.profit[static_cast<std::size_t>(c)];
    }
    return dist - profit + pen.wCapacity * std::max(0.0, load - inst.capacity);
}

inline double referenceSolutionCost(const std::vector<std::vector<int>>& routes,
                                    const Instance& inst, const PenaltyState& pen) {
    double cost = 0.0;
    for (int c = 1; c <= inst.nbCustomers; ++c) cost += inst.profit[static_cast<std::size_t>(c)];
    for (const auto& r : routes) cost += referenceRouteCost(r, inst, pen);
    std::vector<double> visited(static_cast<std::size_t>(inst.nbGroups()), 0.0);
    for (const auto& r : routes)
        for (int c : r)
            visited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(c)])] +=
                inst.weight[static_cast<std::size_t>(c)];
    for (int k = 0; k < inst.nbGroups(); ++k) {
        const double total = inst.groupWeight(k);
        const double ratio = total > 0.0 ? visited[static_cast<std::size_t>(k)] / total : 1.0;
        cost += pen.wService[static_cast<std::size_t>(k)] *
                std::max(0.0, inst.serviceLevel[static_cast<std::size_t>(k)] - ratio);
    }
    return cost;
}

// Minimum penalized cost over every segmentation of the tour into at most
// fleetSize contiguous routes.
inline double exhaustiveSplitCost(const std::vector<int>& tour, const Instance& inst,
                                  const PenaltyState& pen) {
    const std::size_t t = tour.size();
    if (t == 0) return referenceSolutionCost({}, inst, pen);
    double best = std::numeric_limits<double>::infinity();
    const std::size_t cuts = t - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cuts); ++mask) {
        const int nbRoutes = 1 + static_cast<int>(std::popcount(mask));
        if (nbRoutes > inst.fleetSize) continue;
        std::vector<std::vector<int>> routes(1);
        for (std::size_t i = 0; i < t; ++i) {
            routes.back().push_back(tour[i]);
            if (i < cuts && (mask & (std::size_t{1} << i))) routes.emplace_back();
        }
        best = std::min(best, referenceSolutionCost(routes, inst, pen));
    }
    return best;
}

inline Solution buildSolution(const std::vector<std::vector<int>>& routes, const Instance& inst,
                              const PenaltyState& pen) {
    Solution sol;
    for (const auto& visits : routes) {
        Route r;
        r.visits = visits;
        sol.routes.push_back(std::move(r));
    }
    sol.syncGiantTour();
    sol.evaluate(inst, pen);
    return sol;
}

} // namespace vrpsl::test
