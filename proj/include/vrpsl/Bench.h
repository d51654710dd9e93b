#pragma once

#include "vrpsl/Genetic.h"
#include "vrpsl/Instance.h"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vrpsl {

struct RunReport {
    std::string instance;
    std::uint64_t seed = 0;
    double bestCost = 0.0;
    bool feasible = false;
    double wallSeconds = 0.0;
    long iterations = 0;
    std::vector<double> achievedLevels;
    std::string toJson() const;
};

// Worst / average / best over the runs of one instance, following the
// 10-run reporting protocol.
struct AggregateRow {
    std::string instance;
    int runs = 0;
    double worst = 0.0;
    double avg = 0.0;
    double best = 0.0;
    std::optional<double> reference;
    std::optional<double> gapAvg;   // percent, vs reference
    std::optional<double> gapBest;  // percent, vs reference
    double meanSeconds = 0.0;
};

// Signed percentage gap 100 * (value - reference) / reference.
double gapPercent(double value, double reference);

RunReport reportFromRun(const Instance& inst, const std::string& name, std::uint64_t seed,
                        const RunResult& run);

AggregateRow aggregate(const std::string& instance, const std::vector<RunReport>& reports,
                       std::optional<double> reference);

std::string formatAggregateTable(const std::vector<AggregateRow>& rows);
std::string aggregateToJson(const std::vector<AggregateRow>& rows);

// Fans (instance, seed) runs over worker threads; VRPSL_THREADS caps the
// pool. Results come back ordered by (instance, seed).
struct BenchJob {
    const Instance* inst = nullptr;
    std::string name;
    std::uint64_t seed = 0;
    SearchParams params;
};
std::vector<RunReport> runBench(const std::vector<BenchJob>& jobs);

int threadBudget(std::size_t jobCount);

} // namespace vrpsl
