#pragma once

#include "vrpsl/Instance.h"

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace vrpsl {

// Penalty coefficients: one for capacity, one per group service level.
struct PenaltyState {
    double wCapacity = 10.0;
    std::vector<double> wService;

    static PenaltyState initial(int nbGroups, double value = 10.0) {
        PenaltyState p;
        p.wCapacity = value;
        p.wService.assign(static_cast<std::size_t>(nbGroups), value);
        return p;
    }

    PenaltyState scaled(double factor) const {
        PenaltyState p = *this;
        p.wCapacity *= factor;
        for (double& w : p.wService) w *= factor;
        return p;
    }
};

struct Route {
    std::vector<int> visits;  // customers only, depot implicit at both ends
    double load = 0.0;        // phi^Q
    double distance = 0.0;    // phi^D, both depot legs included
    double profit = 0.0;      // phi^P
    double cost = 0.0;        // phi = distance - profit + wQ * excess
};

// Two-chromosome individual: the giant tour lists the serviced customers
// without depot occurrences, the level chromosome carries the per-group
// weight ratios. Routes and cost are present once decoded.
struct Solution {
    std::vector<int> giantTour;
    std::vector<double> levelChromosome;
    std::vector<Route> routes;
    double cost = std::numeric_limits<double>::infinity();
    bool routed = false;

    // Aggregates cached by evaluate() so a penalty change reprices in O(R+K).
    double totalDistance = 0.0;
    double visitedProfit = 0.0;
    double capacityExcess = 0.0;

    int nbVisits() const { return static_cast<int>(giantTour.size()); }

    // Full evaluation from the decoded routes: route fields, level chromosome,
    // aggregates and penalized cost.
    void evaluate(const Instance& inst, const PenaltyState& pen);

    // Penalized cost refresh from cached aggregates after a penalty change.
    void reprice(const Instance& inst, const PenaltyState& pen);

    // Giant tour rebuilt as the in-order concatenation of the routes.
    void syncGiantTour();
};

Route makeRoute(const std::vector<int>& visits, const Instance& inst, const PenaltyState& pen);

double solutionCost(const Solution& sol, const Instance& inst, const PenaltyState& pen);

std::vector<double> levelsOf(const std::vector<int>& giantTour, const Instance& inst);

struct Violation {
    enum class Kind { RouteLoad, FleetSize, DuplicateVisit, ServiceLevel };
    Kind kind;
    int index = 0;       // route, customer or group index depending on kind
    double magnitude = 0.0;
    std::string describe() const;
};

struct FeasibilityReport {
    bool feasible = false;
    std::vector<Violation> violations;
};

// Checks loads, fleet size, visit uniqueness and the (ceil-strengthened)
// group thresholds of a decoded solution.
FeasibilityReport checkFeasibility(const Solution& sol, const Instance& inst);

// Undirected edges used by the routes, depot legs included, each edge once.
std::vector<std::pair<int, int>> solutionEdges(const Solution& sol);

// Broken-edges distance in [0,1]: 1 - |E1 and E2| / |E1 or E2|; two empty
// solutions are at distance 0.
double solutionDistance(const Solution& a, const Solution& b);
double edgeSetDistance(const std::vector<std::pair<int, int>>& a,
                       const std::vector<std::pair<int, int>>& b);

std::string solutionToJson(const Solution& sol, const Instance& inst);

} // namespace vrpsl
