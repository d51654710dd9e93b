#include "vrpsl/Bench.h"
#include "vrpsl/Generators.h"
#include "vrpsl/Genetic.h"
#include "vrpsl/InstanceIO.h"
#include "vrpsl/Pricing.h"
#include "vrpsl/Solution.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace {

using namespace vrpsl;

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

SearchParams paramsFor(const Instance& inst, long itNi, double timeLimit, int granularity) {
    SearchParams p = SearchParams::forInstance(inst);
    if (itNi > 0) {
        p.itNi = itNi;
        p.itDiv = std::max<long>(1, static_cast<long>(0.4 * static_cast<double>(itNi)));
    }
    p.timeLimitSeconds = timeLimit;
    if (granularity > 0) p.granularity = granularity;
    return p;
}

std::map<std::string, double> loadReference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference file '" + path + "'");
    nlohmann::json j;
    in >> j;
    std::map<std::string, double> ref;
    for (auto it = j.begin(); it != j.end(); ++it) ref[it.key()] = it.value().get<double>();
    return ref;
}

int cmdSolve(const std::string& path, const std::string& format, std::uint64_t seed, int runs,
             long itNi, double timeLimit, int granularity, const std::string& solutionOut,
             const std::string& reportOut, const std::string& logOut) {
    const Instance inst = loadInstance(path, formatFromName(format));
    const SearchParams params = paramsFor(inst, itNi, timeLimit, granularity);

    std::vector<RunReport> reports;
    RunResult bestRun;
    bool haveBest = false;
    for (int r = 0; r < runs; ++r) {
        const std::uint64_t runSeed = seed + static_cast<std::uint64_t>(r);
        GeneticSearch search(inst, params);
        RunResult run = search.run(runSeed);
        reports.push_back(reportFromRun(inst, inst.name, runSeed, run));
        std::cout << reports.back().toJson() << "\n";
        if (!haveBest || (run.feasibleFound && !bestRun.feasibleFound) ||
            (run.feasibleFound == bestRun.feasibleFound && run.best.cost < bestRun.best.cost)) {
            bestRun = std::move(run);
            haveBest = true;
        }
    }

    // The emitted cost must match a from-scratch re-evaluation of the routes.
    Solution verify = bestRun.best;
    verify.evaluate(inst, PenaltyState::initial(inst.nbGroups()));
    if (std::abs(verify.cost - bestRun.best.cost) > 1e-6 * std::max(1.0, std::abs(verify.cost)))
        throw std::runtime_error("internal error: reported cost does not re-evaluate");

    if (!solutionOut.empty()) writeFile(solutionOut, solutionToJson(bestRun.best, inst));
    if (!reportOut.empty()) {
        std::string all = "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i)
            all += reports[i].toJson() + (i + 1 < reports.size() ? ",\n" : "\n");
        all += "]\n";
        writeFile(reportOut, all);
    }
    if (!logOut.empty()) {
        std::string lines;
        for (const auto& e : bestRun.log) lines += e.toJsonLine() + "\n";
        writeFile(logOut, lines);
    }

    if (runs > 1) {
        const auto row = aggregate(inst.name, reports, std::nullopt);
        std::cout << formatAggregateTable({row});
    }
    return bestRun.feasibleFound ? 0 : 2;
}

int cmdGenerate(const std::string& basePath, const std::string& baseFormat, std::uint64_t seed,
                const std::string& set, const std::vector<std::string>& configs,
                const std::string& outDir) {
    const Instance base = loadInstance(basePath, formatFromName(baseFormat));
    for (const auto& cfgName : configs) {
        const GroupConfig cfg = groupConfigFromName(cfgName);
        Instance derived;
        if (set == "s1") derived = generateS1(seed, base, cfg);
        else if (set == "s2") derived = generateS2(seed, base, cfg);
        else throw std::runtime_error("unknown set '" + set + "' (expected s1 or s2)");
        const std::string path = outDir + "/" + derived.name + ".vrp";
        saveInstance(derived, path);
        std::cout << path << "\n";
    }
    return 0;
}

int cmdPrice(const std::string& path, const std::string& format, const std::string& dualsPath,
             int ngSize, bool heuristic, const std::string& outPath) {
    const Instance inst = loadInstance(path, formatFromName(format));
    DualVector duals = DualVector::zeros(inst.nbCustomers);
    if (!dualsPath.empty()) {
        std::ifstream in(dualsPath);
        if (!in) throw std::runtime_error("cannot open duals file '" + dualsPath + "'");
        nlohmann::json j;
        in >> j;
        duals.gamma = j.value("gamma", 0.0);
        const auto beta = j.at("beta").get<std::vector<double>>();
        if (static_cast<int>(beta.size()) != inst.nbCustomers)
            throw std::runtime_error("duals: beta must list one value per customer");
        for (int c = 1; c <= inst.nbCustomers; ++c)
            duals.beta[static_cast<std::size_t>(c)] = beta[static_cast<std::size_t>(c - 1)];
    }

    const NgConfig ng = NgConfig::nearest(inst, ngSize);
    const auto routes = heuristic ? priceHeuristic(inst, duals, ng) : priceNgRoutes(inst, duals, ng);

    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : routes) {
        nlohmann::json jr;
        jr["visits"] = r.visits;
        jr["reduced_cost"] = r.reducedCost;
        jr["load"] = r.load;
        out.push_back(jr);
    }
    const std::string text = out.dump(2) + "\n";
    if (outPath.empty()) std::cout << text;
    else writeFile(outPath, text);
    return 0;
}

int cmdBench(const std::vector<std::string>& paths, const std::string& format, std::uint64_t seed,
             int runs, long itNi, double timeLimit, const std::string& referencePath,
             const std::string& outPath) {
    std::map<std::string, double> reference;
    if (!referencePath.empty()) reference = loadReference(referencePath);

    std::vector<Instance> instances;
    instances.reserve(paths.size());
    for (const auto& p : paths) instances.push_back(loadInstance(p, formatFromName(format)));

    std::vector<BenchJob> jobs;
    for (const auto& inst : instances) {
        for (int r = 0; r < runs; ++r) {
            BenchJob job;
            job.inst = &inst;
            job.name = inst.name;
            job.seed = seed + static_cast<std::uint64_t>(r);
            job.params = paramsFor(inst, itNi, timeLimit, 0);
            jobs.push_back(std::move(job));
        }
    }

    const auto reports = runBench(jobs);
    std::vector<AggregateRow> rows;
    bool allFeasible = true;
    std::size_t idx = 0;
    for (const auto& inst : instances) {
        std::vector<RunReport> perInstance(reports.begin() + static_cast<std::ptrdiff_t>(idx),
                                           reports.begin() + static_cast<std::ptrdiff_t>(idx + runs));
        idx += static_cast<std::size_t>(runs);
        std::optional<double> ref;
        if (const auto it = reference.find(inst.name); it != reference.end()) ref = it->second;
        rows.push_back(aggregate(inst.name, perInstance, ref));
        for (const auto& r : perInstance) allFeasible = allFeasible && r.feasible;
    }

    std::cout << formatAggregateTable(rows);
    if (!outPath.empty()) writeFile(outPath, aggregateToJson(rows) + "\n");
    return allFeasible ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"VRP with service levels: hybrid genetic search, instance tooling and ng-route pricing"};
    app.require_subcommand(1);

    std::string instancePath, format = "vrpsl";
    std::uint64_t seed = 1;
    int runs = 1;
    long itNi = 0;
    double timeLimit = 0.0;
    int granularity = 0;
    std::string solutionOut, reportOut, logOut;

    auto* solve = app.add_subcommand("solve", "Run the hybrid genetic search on one instance");
    solve->add_option("--instance", instancePath, "instance file")->required();
    solve->add_option("--format", format, "vrpsl|cvrplib|vrppfcc|cptp");
    solve->add_option("--seed", seed, "base random seed");
    solve->add_option("--runs", runs, "number of seeded runs (seed, seed+1, ...)");
    solve->add_option("--iterations", itNi, "termination patience It_NI (default 20000)");
    solve->add_option("--time-limit", timeLimit, "wall-clock limit per run in seconds");
    solve->add_option("--granularity", granularity, "neighbor-list size for the local search");
    solve->add_option("--solution", solutionOut, "write the best solution as JSON");
    solve->add_option("--report", reportOut, "write all run reports as JSON");
    solve->add_option("--log", logOut, "write the search log as JSON lines");

    std::string basePath, baseFormat = "cvrplib", set = "s1", outDir = ".";
    std::vector<std::string> configs = {"1", "2R", "2C", "5R", "5C"};
    auto* generate = app.add_subcommand("generate", "Derive grouped benchmark instances");
    generate->add_option("--base", basePath, "base instance file")->required();
    generate->add_option("--base-format", baseFormat, "format of the base instance");
    generate->add_option("--set", set, "s1 (CVRP base) or s2 (CPTP base)");
    generate->add_option("--seed", seed, "generator seed");
    generate->add_option("--configs", configs, "group configurations (subset of 1 2R 2C 5R 5C)");
    generate->add_option("--out-dir", outDir, "output directory");

    std::string dualsPath, priceOut;
    int ngSize = 8;
    bool heuristicPricing = false;
    auto* price = app.add_subcommand("price", "Run the ng-route pricing engine");
    price->add_option("--instance", instancePath, "instance file")->required();
    price->add_option("--format", format, "instance format");
    price->add_option("--duals", dualsPath, "JSON file {gamma, beta: [per customer]}");
    price->add_option("--ng-size", ngSize, "ng memory size");
    price->add_flag("--heuristic", heuristicPricing, "single label per (vertex, load)");
    price->add_option("--out", priceOut, "write priced routes as JSON");

    std::vector<std::string> benchPaths;
    std::string referencePath, benchOut;
    auto* bench = app.add_subcommand("bench", "Aggregate multi-run results over instances");
    bench->add_option("--instances", benchPaths, "instance files")->required();
    bench->add_option("--format", format, "instance format");
    bench->add_option("--seed", seed, "base seed");
    bench->add_option("--runs", runs, "runs per instance");
    bench->add_option("--iterations", itNi, "termination patience It_NI");
    bench->add_option("--time-limit", timeLimit, "wall-clock limit per run in seconds");
    bench->add_option("--reference", referencePath, "JSON {instance name: reference cost}");
    bench->add_option("--out", benchOut, "write aggregate rows as JSON");

    double gapValue = 0.0, gapReference = 0.0;
    auto* gap = app.add_subcommand("gap", "Percentage gap of a value against a reference");
    gap->add_option("value", gapValue, "observed value")->required();
    gap->add_option("reference", gapReference, "reference value")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed())
            return cmdSolve(instancePath, format, seed, runs, itNi, timeLimit, granularity,
                            solutionOut, reportOut, logOut);
        if (generate->parsed())
            return cmdGenerate(basePath, baseFormat, seed, set, configs, outDir);
        if (price->parsed())
            return cmdPrice(instancePath, format, dualsPath, ngSize, heuristicPricing, priceOut);
        if (bench->parsed())
            return cmdBench(benchPaths, format, seed, runs, itNi, timeLimit, referencePath,
                            benchOut);
        if (gap->parsed()) {
            std::cout << gapPercent(gapValue, gapReference) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
