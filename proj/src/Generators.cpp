#include "vrpsl/Generators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vrpsl {

namespace {

constexpr double kLevelChoices[] = {0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 1.0};

int configGroups(GroupConfig config) {
    switch (config) {
        case GroupConfig::One: return 1;
        case GroupConfig::TwoRandom:
        case GroupConfig::TwoClustered: return 2;
        case GroupConfig::FiveRandom:
        case GroupConfig::FiveClustered: return 5;
    }
    return 1;
}

bool configClustered(GroupConfig config) {
    return config == GroupConfig::TwoClustered || config == GroupConfig::FiveClustered;
}

double sq(double x) { return x * x; }

// Seeded k-means++ initialization followed by Lloyd iterations; assignment
// ties go to the lowest center index so the partition is reproducible.
std::vector<int> kmeansPartition(const Instance& inst, int k, Rng& rng) {
    const int n = inst.nbCustomers;
    std::vector<std::array<double, 2>> centers;
    centers.reserve(static_cast<std::size_t>(k));

    auto pt = [&](int c) { return inst.coords[static_cast<std::size_t>(c)]; };

    centers.push_back(pt(rng.uniformInt(1, n)));
    std::vector<double> d2(static_cast<std::size_t>(n) + 1, 0.0);
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (int c = 1; c <= n; ++c) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& ctr : centers)
                best = std::min(best, sq(pt(c)[0] - ctr[0]) + sq(pt(c)[1] - ctr[1]));
            d2[static_cast<std::size_t>(c)] = best;
            total += best;
        }
        if (total <= 1e-12) {
            centers.push_back(pt(rng.uniformInt(1, n)));
            continue;
        }
        double pick = rng.uniform01() * total;
        int chosen = n;
        for (int c = 1; c <= n; ++c) {
            pick -= d2[static_cast<std::size_t>(c)];
            if (pick <= 0.0) { chosen = c; break; }
        }
        centers.push_back(pt(chosen));
    }

    std::vector<int> assign(static_cast<std::size_t>(n) + 1, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (int c = 1; c <= n; ++c) {
            int best = 0;
            double bestD = std::numeric_limits<double>::infinity();
            for (int g = 0; g < k; ++g) {
                const double d = sq(pt(c)[0] - centers[static_cast<std::size_t>(g)][0]) +
                                 sq(pt(c)[1] - centers[static_cast<std::size_t>(g)][1]);
                if (d < bestD - 1e-12) { bestD = d; best = g; }
            }
            if (assign[static_cast<std::size_t>(c)] != best) {
                assign[static_cast<std::size_t>(c)] = best;
                changed = true;
            }
        }
        std::vector<std::array<double, 2>> sums(static_cast<std::size_t>(k), {0.0, 0.0});
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int c = 1; c <= n; ++c) {
            const int g = assign[static_cast<std::size_t>(c)];
            sums[static_cast<std::size_t>(g)][0] += pt(c)[0];
            sums[static_cast<std::size_t>(g)][1] += pt(c)[1];
            ++counts[static_cast<std::size_t>(g)];
        }
        for (int g = 0; g < k; ++g) {
            if (counts[static_cast<std::size_t>(g)] == 0) {
                // Re-seed an emptied cluster on the customer farthest from its center.
                int far = 1;
                double farD = -1.0;
                for (int c = 1; c <= n; ++c) {
                    const int gc = assign[static_cast<std::size_t>(c)];
                    const double d = sq(pt(c)[0] - centers[static_cast<std::size_t>(gc)][0]) +
                                     sq(pt(c)[1] - centers[static_cast<std::size_t>(gc)][1]);
                    if (d > farD) { farD = d; far = c; }
                }
                centers[static_cast<std::size_t>(g)] = pt(far);
                changed = true;
            } else {
                centers[static_cast<std::size_t>(g)] = {
                    sums[static_cast<std::size_t>(g)][0] / counts[static_cast<std::size_t>(g)],
                    sums[static_cast<std::size_t>(g)][1] / counts[static_cast<std::size_t>(g)]};
            }
        }
        if (!changed) break;
    }
    return assign;
}

} // namespace

GroupConfig groupConfigFromName(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (s == "1") return GroupConfig::One;
    if (s == "2R") return GroupConfig::TwoRandom;
    if (s == "2C") return GroupConfig::TwoClustered;
    if (s == "5R") return GroupConfig::FiveRandom;
    if (s == "5C") return GroupConfig::FiveClustered;
    throw std::invalid_argument("unknown group configuration '" + name + "'");
}

std::string groupConfigName(GroupConfig config) {
    switch (config) {
        case GroupConfig::One: return "1";
        case GroupConfig::TwoRandom: return "2R";
        case GroupConfig::TwoClustered: return "2C";
        case GroupConfig::FiveRandom: return "5R";
        case GroupConfig::FiveClustered: return "5C";
    }
    return "?";
}

Instance assignGroups(std::uint64_t seed, const Instance& inst, GroupConfig config) {
    const int k = configGroups(config);
    if (k > inst.nbCustomers)
        throw std::invalid_argument("more groups than customers");

    Instance out = inst;
    Rng rng(seed);

    if (k == 1) {
        std::fill(out.groupOf.begin() + 1, out.groupOf.end(), 0);
    } else if (configClustered(config)) {
        const auto assign = kmeansPartition(inst, k, rng);
        for (int c = 1; c <= inst.nbCustomers; ++c)
            out.groupOf[static_cast<std::size_t>(c)] = assign[static_cast<std::size_t>(c)];
    } else {
        for (int c = 1; c <= inst.nbCustomers; ++c)
            out.groupOf[static_cast<std::size_t>(c)] = rng.uniformInt(0, k - 1);
    }

    out.serviceLevel.assign(static_cast<std::size_t>(k), 1.0);
    for (int g = 0; g < k; ++g)
        out.serviceLevel[static_cast<std::size_t>(g)] = kLevelChoices[rng.uniformInt(0, 6)];

    out.weight = out.demand;
    out.weight[0] = 0.0;
    out.finalize();
    return out;
}

Instance generateS1(std::uint64_t seed, const Instance& base, GroupConfig config) {
    Instance out = base;
    Rng rng(seed);
    for (int c = 1; c <= base.nbCustomers; ++c) {
        const double h = rng.uniform(0.75, 2.25);
        // Rounded so all S1 quantities stay integral alongside EUC_2D costs.
        out.profit[static_cast<std::size_t>(c)] =
            std::round(h * base.demand[static_cast<std::size_t>(c)]);
    }
    out.rounding = DistanceRounding::NearestInteger;
    out.name = base.name + "-S1-" + groupConfigName(config);
    // Grouping consumes a dedicated stream so profit draws stay stable per seed.
    return assignGroups(seed ^ 0x9e3779b97f4a7c15ULL, out, config);
}

Instance generateS2(std::uint64_t seed, const Instance& base, GroupConfig config) {
    Instance out = base;
    for (int c = 1; c <= base.nbCustomers; ++c)
        out.profit[static_cast<std::size_t>(c)] = 0.5 * base.profit[static_cast<std::size_t>(c)];
    out.capacity = 500.0;
    out.name = base.name + "-S2-" + groupConfigName(config);
    out.finalize();
    out = assignGroups(seed ^ 0x9e3779b97f4a7c15ULL, out, config);

    double sum = 0.0;
    for (int g = 0; g < out.nbGroups(); ++g) {
        const GroupQuantities gq = groupQuantities(out, g);
        sum += gq.qMin + gq.qMax;
    }
    out.fleetSize = std::max(1, static_cast<int>(std::ceil(sum / (2.0 * out.capacity) - 1e-9)));
    out.finalize();
    return out;
}

Instance reduceVrppfcc(const Instance& input) {
    Instance out = input;
    std::fill(out.groupOf.begin() + 1, out.groupOf.end(), 0);
    out.serviceLevel.assign(1, 0.0);
    out.rounding = DistanceRounding::Exact;
    out.finalize();
    return out;
}

Instance reduceCptp(const Instance& input) { return reduceVrppfcc(input); }

Instance reduceCvrp(const Instance& input) {
    Instance out = input;
    std::fill(out.groupOf.begin() + 1, out.groupOf.end(), 0);
    out.serviceLevel.assign(1, 1.0);
    std::fill(out.profit.begin(), out.profit.end(), 0.0);
    out.weight = out.demand;
    out.weight[0] = 0.0;
    out.finalize();
    return out;
}

Instance reduceGvrp(const Instance& input) {
    Instance out = input;
    for (int g = 0; g < out.nbGroups(); ++g) {
        const auto& members = out.groups[static_cast<std::size_t>(g)];
        if (members.empty()) throw std::invalid_argument("GVRP cluster is empty");
        double minW = std::numeric_limits<double>::infinity();
        double sumW = 0.0;
        for (int c : members) {
            minW = std::min(minW, out.weight[static_cast<std::size_t>(c)]);
            sumW += out.weight[static_cast<std::size_t>(c)];
        }
        if (minW <= 0.0 || sumW <= 0.0)
            throw std::invalid_argument("GVRP clusters need positive service weights");
        out.serviceLevel[static_cast<std::size_t>(g)] = minW / sumW;
    }
    out.finalize();
    return out;
}

Instance reducePvrp(const Instance& base, const std::vector<PvrpCustomer>& customers,
                    int nbDays, int vehiclesPerDay) {
    if (nbDays < 1 || vehiclesPerDay < 1)
        throw std::invalid_argument("PVRP needs at least one day and one vehicle per day");

    int total = 0;
    for (const auto& c : customers) {
        if (c.baseCustomer < 1 || c.baseCustomer > base.nbCustomers)
            throw std::invalid_argument("PVRP customer index out of range");
        if (c.frequency < 1 || c.frequency > static_cast<int>(c.days.size()))
            throw std::invalid_argument("PVRP customer " + std::to_string(c.baseCustomer) +
                                        ": no feasible combination of " +
                                        std::to_string(c.frequency) + " days");
        for (int d : c.days)
            if (d < 0 || d >= nbDays) throw std::invalid_argument("PVRP day out of range");
        total += static_cast<int>(c.days.size());
    }

    Instance out;
    out.name = base.name + "-pvrp";
    out.nbCustomers = total;
    out.coords.assign(static_cast<std::size_t>(total) + 1, base.coords[0]);
    out.demand.assign(static_cast<std::size_t>(total) + 1, 0.0);
    out.profit.assign(static_cast<std::size_t>(total) + 1, 0.0);
    out.weight.assign(static_cast<std::size_t>(total) + 1, 0.0);
    out.groupOf.assign(static_cast<std::size_t>(total) + 1, -1);
    out.capacity = base.capacity;
    out.fleetSize = vehiclesPerDay * nbDays;
    out.rounding = base.rounding;

    std::vector<int> dayOf(static_cast<std::size_t>(total) + 1, -1);
    int idx = 0;
    out.serviceLevel.assign(customers.size(), 0.0);
    for (std::size_t ci = 0; ci < customers.size(); ++ci) {
        const auto& c = customers[ci];
        for (int d : c.days) {
            ++idx;
            out.coords[static_cast<std::size_t>(idx)] =
                base.coords[static_cast<std::size_t>(c.baseCustomer)];
            out.demand[static_cast<std::size_t>(idx)] =
                base.demand[static_cast<std::size_t>(c.baseCustomer)];
            out.weight[static_cast<std::size_t>(idx)] = 1.0;
            out.groupOf[static_cast<std::size_t>(idx)] = static_cast<int>(ci);
            dayOf[static_cast<std::size_t>(idx)] = d;
        }
        out.serviceLevel[ci] =
            static_cast<double>(c.frequency) / static_cast<double>(c.days.size());
    }
    out.finalize();

    // Cross-day edges are priced out with M = n * max d_ij.
    double maxD = 0.0;
    for (int i = 0; i <= total; ++i)
        for (int j = i + 1; j <= total; ++j) maxD = std::max(maxD, out.dist(i, j));
    const double bigM = static_cast<double>(total) * maxD;

    const auto n1 = static_cast<std::size_t>(total) + 1;
    std::vector<double> matrix(n1 * n1, 0.0);
    for (int i = 0; i <= total; ++i) {
        for (int j = 0; j <= total; ++j) {
            if (i == j) continue;
            double d = out.dist(i, j);
            if (i > 0 && j > 0 && dayOf[static_cast<std::size_t>(i)] != dayOf[static_cast<std::size_t>(j)])
                d = bigM;
            matrix[static_cast<std::size_t>(i) * n1 + static_cast<std::size_t>(j)] = d;
        }
    }
    out.setExplicitDistances(std::move(matrix));
    return out;
}

} // namespace vrpsl
