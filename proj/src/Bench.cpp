#include "vrpsl/Bench.h"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace vrpsl {

std::string RunReport::toJson() const {
    nlohmann::json j;
    j["instance"] = instance;
    j["seed"] = seed;
    j["best_cost"] = bestCost;
    j["feasible"] = feasible;
    j["wall_seconds"] = wallSeconds;
    j["iterations"] = iterations;
    j["achieved_levels"] = achievedLevels;
    return j.dump(2);
}

double gapPercent(double value, double reference) {
    if (reference <= 0.0) throw std::invalid_argument("gap reference must be positive");
    return 100.0 * (value - reference) / reference;
}

RunReport reportFromRun(const Instance& inst, const std::string& name, std::uint64_t seed,
                        const RunResult& run) {
    RunReport rep;
    rep.instance = name;
    rep.seed = seed;
    rep.bestCost = run.best.cost;
    rep.feasible = run.feasibleFound;
    rep.wallSeconds = run.seconds;
    rep.iterations = run.iterations;
    rep.achievedLevels = levelsOf(run.best.giantTour, inst);
    return rep;
}

AggregateRow aggregate(const std::string& instance, const std::vector<RunReport>& reports,
                       std::optional<double> reference) {
    if (reports.empty()) throw std::invalid_argument("cannot aggregate zero runs");
    AggregateRow row;
    row.instance = instance;
    row.runs = static_cast<int>(reports.size());
    row.worst = reports.front().bestCost;
    row.best = reports.front().bestCost;
    double sum = 0.0, time = 0.0;
    for (const auto& r : reports) {
        row.worst = std::max(row.worst, r.bestCost);
        row.best = std::min(row.best, r.bestCost);
        sum += r.bestCost;
        time += r.wallSeconds;
    }
    row.avg = sum / static_cast<double>(reports.size());
    row.meanSeconds = time / static_cast<double>(reports.size());
    row.reference = reference;
    if (reference) {
        row.gapAvg = gapPercent(row.avg, *reference);
        row.gapBest = gapPercent(row.best, *reference);
    }
    return row;
}

std::string formatAggregateTable(const std::vector<AggregateRow>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %5s %12s %12s %12s %9s %9s %8s\n", "Instance", "Runs",
                  "Wor", "Avg", "Best", "GapAvg%", "GapBest%", "T(s)");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-24s %5d %12.2f %12.2f %12.2f %9s %9s %8.2f\n",
                      r.instance.c_str(), r.runs, r.worst, r.avg, r.best,
                      r.gapAvg ? (std::to_string(*r.gapAvg).substr(0, 6)).c_str() : "-",
                      r.gapBest ? (std::to_string(*r.gapBest).substr(0, 6)).c_str() : "-",
                      r.meanSeconds);
        out << line;
    }
    return out.str();
}

std::string aggregateToJson(const std::vector<AggregateRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["instance"] = r.instance;
        j["runs"] = r.runs;
        j["worst"] = r.worst;
        j["avg"] = r.avg;
        j["best"] = r.best;
        if (r.reference) j["reference"] = *r.reference;
        if (r.gapAvg) j["gap_avg_percent"] = *r.gapAvg;
        if (r.gapBest) j["gap_best_percent"] = *r.gapBest;
        j["mean_seconds"] = r.meanSeconds;
        arr.push_back(j);
    }
    return arr.dump(2);
}

int threadBudget(std::size_t jobCount) {
    int budget = static_cast<int>(std::thread::hardware_concurrency());
    if (budget <= 0) budget = 1;
    if (const char* env = std::getenv("VRPSL_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) budget = std::min(budget, cap);
    }
    return std::max(1, std::min<int>(budget, static_cast<int>(jobCount)));
}

std::vector<RunReport> runBench(const std::vector<BenchJob>& jobs) {
    std::vector<RunReport> reports(jobs.size());
    std::atomic<std::size_t> next{0};
    const int workers = threadBudget(jobs.size());

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const BenchJob& job = jobs[i];
            GeneticSearch search(*job.inst, job.params);
            const RunResult run = search.run(job.seed);
            reports[i] = reportFromRun(*job.inst, job.name, job.seed, run);
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return reports;
}

} // namespace vrpsl
