#pragma once

#include "vrpsl/Instance.h"

#include <bitset>
#include <optional>
#include <vector>

namespace vrpsl {

// Duals of the set-partitioning master: beta per customer, gamma for the
// fleet bound (beta_0 = gamma at the depot), optional per-edge adjustments
// rho from edge-fixing branching constraints.
struct DualVector {
    std::vector<double> beta; // size n+1, beta[0] ignored
    double gamma = 0.0;
    std::optional<std::vector<double>> rho; // flattened symmetric (n+1)^2

    double betaOf(int i) const { return i == 0 ? gamma : beta[static_cast<std::size_t>(i)]; }
    double rhoOf(int i, int j, int n) const {
        if (!rho) return 0.0;
        return (*rho)[static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1) +
                      static_cast<std::size_t>(j)];
    }
    static DualVector zeros(int nbCustomers) {
        DualVector d;
        d.beta.assign(static_cast<std::size_t>(nbCustomers) + 1, 0.0);
        return d;
    }
};

constexpr int kMaxPricingCustomers = 511;
using NgMemory = std::bitset<kMaxPricingCustomers + 1>;

// Per-vertex ng memories; a vertex always remembers itself so the
// "j not in Pi(P)" guard blocks immediate revisits.
struct NgConfig {
    std::vector<NgMemory> masks; // masks[i] = NG_i as a bitset
    int ngSize = 8;

    static NgConfig nearest(const Instance& inst, int ngSize = 8);
    static NgConfig full(const Instance& inst);    // elementary behavior
    static NgConfig minimal(const Instance& inst); // NG_i = {i}
};

struct PricedRoute {
    std::vector<int> visits; // customers in order, depot implicit
    double reducedCost = 0.0;
    double load = 0.0;
};

struct PricingOptions {
    double threshold = -1e-9; // keep routes with reduced cost below this
    bool useDominance = true; // disabled only by the soundness tests
    std::size_t maxRoutes = 10000;
};

// c_ij - (beta_i + beta_j)/2 - rho_ij, with beta_0 = gamma.
double edgeReducedCost(int i, int j, const Instance& inst, const DualVector& duals);

// c_r - gamma - sum_i a^r_i beta_i, evaluated edge-wise.
double routeReducedCost(const std::vector<int>& visits, const Instance& inst,
                        const DualVector& duals);

// Forward ng-route labeling over load levels. Returns the negative
// reduced-cost depot-to-depot walks surviving dominance, best first.
// Demands must be positive integers.
std::vector<PricedRoute> priceNgRoutes(const Instance& inst, const DualVector& duals,
                                       const NgConfig& ng, const PricingOptions& opts = {});

// Restricted labeling keeping one best label per (vertex, load).
std::vector<PricedRoute> priceHeuristic(const Instance& inst, const DualVector& duals,
                                        const NgConfig& ng, const PricingOptions& opts = {});

// Exhaustive enumeration of capacity-feasible elementary routes; the test
// oracle for the labeling engine. Refuses instances above maxCustomers.
PricedRoute oracleElementary(const Instance& inst, const DualVector& duals, int maxCustomers = 10);

// Convex smoothing alpha * prev + (1 - alpha) * next of gamma and all betas.
DualVector stabilizeDuals(const DualVector& prev, const DualVector& next, double alpha);

} // namespace vrpsl
