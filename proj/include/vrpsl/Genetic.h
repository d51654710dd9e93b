#pragma once

#include "vrpsl/Instance.h"
#include "vrpsl/LocalSearch.h"
#include "vrpsl/Population.h"
#include "vrpsl/Rng.h"
#include "vrpsl/Solution.h"
#include "vrpsl/Split.h"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vrpsl {

struct SearchParams {
    int mu = 25;
    int lambda = 40;
    int nElite = 10;
    int nClose = 5;
    long itNi = 20000;          // termination patience
    long itDiv = 8000;          // diversification period (0.4 * itNi)
    int penaltyPeriod = 100;    // iterations between penalty updates
    double repairProbability = 0.5;
    int initMultiplier = 4;     // 4 * mu initial individuals
    int granularity = 20;
    double timeLimitSeconds = 0.0;  // 0 = no wall-clock cap
    std::optional<double> xiMin;    // defaults to 0.15^(1/(1+K))
    std::optional<double> xiMax;    // defaults to 0.35^(1/(1+K))

    // Population parameters are halved from 200 services upward.
    static SearchParams forInstance(const Instance& inst);
};

double defaultXiMin(int nbGroups);
double defaultXiMax(int nbGroups);

// Per-constraint penalty update: x1.2 below the feasibility target band,
// x0.85 above it. feasibleRatios holds the capacity ratio first, then one
// ratio per group.
PenaltyState adaptPenalties(const PenaltyState& state, const std::vector<double>& feasibleRatios,
                            double xiMin, double xiMax);

// Adapted order crossover: service-level targets drawn between the parent
// ratios, an order-crossover fragment from P1, completion by a circular sweep
// of P2 filtered by the targets.
Solution crossoverAox(const Solution& p1, const Solution& p2, const Instance& inst, Rng& rng);

struct LogEntry {
    long iteration = 0;
    double bestFeasibleCost = 0.0;
    bool hasBestFeasible = false;
    double wCapacity = 0.0;
    std::vector<double> wService;
    std::vector<double> feasibleRatios;
    int feasibleSize = 0;
    int infeasibleSize = 0;
    std::string event; // "improvement", "diversification", "penalty-update", ...
    std::string toJsonLine() const;
};

struct RunResult {
    Solution best;
    bool feasibleFound = false;
    long iterations = 0;
    long initialIndividuals = 0;
    double seconds = 0.0;
    std::vector<LogEntry> log;
};

// Full hybrid genetic search. The search log records improvements, penalty
// updates, diversifications and the periodic population state.
class GeneticSearch {
public:
    GeneticSearch(const Instance& inst, SearchParams params);

    RunResult run(std::uint64_t seed);

    // Tournament over the union of both sub-populations by biased fitness.
    static std::pair<const Individual*, const Individual*> selectParents(Population& pop,
                                                                         Rng& rng);

    // One initial individual: feasibility-biased random selection, random
    // order, Split, education.
    Solution randomInitialSolution(const PenaltyState& pen, LocalSearch& ls, Rng& rng);
    std::vector<int> randomSelection(Rng& rng) const;

    double feasibilityTargetMin() const { return xiMin; }
    double feasibilityTargetMax() const { return xiMax; }

private:
    const Instance& inst;
    SearchParams params;
    double xiMin, xiMax;
};

} // namespace vrpsl
