#pragma once

#include "vrpsl/Instance.h"
#include "vrpsl/Rng.h"

#include <cstdint>
#include <string>
#include <vector>

namespace vrpsl {

// Group layouts used by the benchmark derivations: one group, or 2/5 groups
// assigned at random (R) or by spatial clustering (C).
enum class GroupConfig { One, TwoRandom, TwoClustered, FiveRandom, FiveClustered };

GroupConfig groupConfigFromName(const std::string& name); // "1", "2R", "2C", "5R", "5C"
std::string groupConfigName(GroupConfig config);

// Repartitions the customers of an existing instance: K groups per config,
// service levels drawn from {0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 1}, and
// service weights set to the demands. Deterministic in (seed, inst, config).
Instance assignGroups(std::uint64_t seed, const Instance& inst, GroupConfig config);

// S1 derivation from a CVRP base: profits h * q_i with h uniform in
// [0.75, 2.25] per customer (rounded to keep costs integral), then grouping.
Instance generateS1(std::uint64_t seed, const Instance& base, GroupConfig config);

// S2 derivation from a CPTP base: capacity 500, profits halved, grouping, and
// fleet size ceil(sum_k (Qmin_k + Qmax_k) / (2Q)).
Instance generateS2(std::uint64_t seed, const Instance& base, GroupConfig config);

// Special cases reduced to VRP-SL instances.
Instance reduceVrppfcc(const Instance& input); // profits are outsourcing costs
Instance reduceCptp(const Instance& input);    // profits are prizes
Instance reduceCvrp(const Instance& input);    // full service, no profits

// GVRP: input groups are clusters; levels are set so a single cheapest-weight
// visit satisfies each cluster.
Instance reduceGvrp(const Instance& input);

// PVRP: every customer is duplicated per available day; a group per customer
// enforces f_i visits; edges across different days cost n * max d_ij.
struct PvrpCustomer {
    int baseCustomer = 0;        // customer index in the base instance
    int frequency = 0;           // f_i, required number of visit days
    std::vector<int> days;       // D_i, available days (0-based)
};
Instance reducePvrp(const Instance& base, const std::vector<PvrpCustomer>& customers,
                    int nbDays, int vehiclesPerDay);

} // namespace vrpsl
