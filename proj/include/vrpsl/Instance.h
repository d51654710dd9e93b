#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrpsl {

enum class DistanceRounding { NearestInteger, Exact };

// Integer right-hand side of a service-level constraint with integer weights.
// The small guard absorbs binary representation noise of decimal levels
// (e.g. 0.55 * 20 evaluating to 11.000000000000002).
inline long long ceilThreshold(double x) {
    return static_cast<long long>(std::ceil(x - 1e-6));
}

inline bool isIntegral(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// A VRP-SL instance. Node 0 is the depot; customers are 1..n. Customers are
// partitioned into groups, each carrying a required service level in [0,1].
class Instance {
public:
    std::string name = "unnamed";
    int nbCustomers = 0;                           // n, excluding the depot
    std::vector<std::array<double, 2>> coords;     // size n+1, depot first
    std::vector<double> demand;                    // size n+1, demand[0] = 0
    std::vector<double> profit;                    // size n+1, profit[0] = 0
    std::vector<double> weight;                    // size n+1, weight[0] = 0
    std::vector<int> groupOf;                      // size n+1, groupOf[0] = -1
    std::vector<std::vector<int>> groups;          // K customer lists
    std::vector<double> serviceLevel;              // K values in [0,1]
    int fleetSize = 1;
    double capacity = 0.0;
    DistanceRounding rounding = DistanceRounding::NearestInteger;

    int nbGroups() const { return static_cast<int>(groups.size()); }

    double dist(int i, int j) const {
        return distances[static_cast<std::size_t>(i) * static_cast<std::size_t>(nbCustomers + 1) +
                         static_cast<std::size_t>(j)];
    }

    double totalProfit() const;
    double groupWeight(int k) const;    // sum of service weights of group k
    double groupDemand(int k) const;    // sum of demands of group k
    bool groupWeightsIntegral(int k) const;

    // Exact or ceil-strengthened weight threshold for group k.
    double groupThreshold(int k) const;

    // Builds the distance matrix from coordinates and the group lists from
    // groupOf, then validates the structural invariants. Must be called after
    // any mutation of the raw fields.
    void finalize();

    // Overrides the computed matrix with explicit distances (tests only).
    void setExplicitDistances(std::vector<double> matrix);

private:
    std::vector<double> distances; // flattened (n+1) x (n+1)
};

// Quantities of one customer group used by cuts and the S2 fleet formula.
// rhsCeil is only defined when every weight in the group is integer.
struct GroupQuantities {
    double zMin = 0.0;
    std::optional<long long> rhsCeil;
    double qMin = 0.0; // alias of zMin in the fleet-size formula
    double qMax = 0.0; // total demand of the group
};

// Computes Z_k by a pseudo-polynomial scan over attained-weight states, plus
// the ceil right-hand side. Throws when weights are fractional and the group
// is too large for the exact-threshold fallback.
GroupQuantities groupQuantities(const Instance& inst, int k);

// Lower bound 2 * ceil(Z_k / Q) on edges crossing the group boundary.
int capacityCutRhs(const GroupQuantities& gq, double capacity);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vrpsl
