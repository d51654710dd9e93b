#include "vrpsl/Instance.h"

#include <algorithm>
#include <limits>
#include <numeric>

namespace vrpsl {

double Instance::totalProfit() const {
    return std::accumulate(profit.begin(), profit.end(), 0.0);
}

double Instance::groupWeight(int k) const {
    double s = 0.0;
    for (int c : groups[static_cast<std::size_t>(k)]) s += weight[static_cast<std::size_t>(c)];
    return s;
}

double Instance::groupDemand(int k) const {
    double q = 0.0;
    for (int c : groups[static_cast<std::size_t>(k)]) q += demand[static_cast<std::size_t>(c)];
    return q;
}

bool Instance::groupWeightsIntegral(int k) const {
    for (int c : groups[static_cast<std::size_t>(k)])
        if (!isIntegral(weight[static_cast<std::size_t>(c)])) return false;
    return true;
}

double Instance::groupThreshold(int k) const {
    const double target = serviceLevel[static_cast<std::size_t>(k)] * groupWeight(k);
    if (groupWeightsIntegral(k)) return static_cast<double>(ceilThreshold(target));
    return target;
}

void Instance::finalize() {
    const auto n = static_cast<std::size_t>(nbCustomers);
    if (coords.size() != n + 1 || demand.size() != n + 1 || profit.size() != n + 1 ||
        weight.size() != n + 1 || groupOf.size() != n + 1)
        throw std::invalid_argument("instance arrays must have size n+1");
    if (fleetSize < 1) throw std::invalid_argument("fleet size must be at least 1");
    if (capacity <= 0.0) throw std::invalid_argument("capacity must be positive");

    const int k = serviceLevel.empty() ? 0 : static_cast<int>(serviceLevel.size());
    groups.assign(static_cast<std::size_t>(k), {});
    for (int c = 1; c <= nbCustomers; ++c) {
        const int g = groupOf[static_cast<std::size_t>(c)];
        if (g < 0 || g >= k)
            throw std::invalid_argument("customer " + std::to_string(c) + " has no valid group");
        groups[static_cast<std::size_t>(g)].push_back(c);
    }
    for (double alpha : serviceLevel)
        if (alpha < 0.0 || alpha > 1.0)
            throw std::invalid_argument("service levels must lie in [0,1]");
    for (int c = 1; c <= nbCustomers; ++c) {
        if (demand[static_cast<std::size_t>(c)] < 0.0) throw std::invalid_argument("negative demand");
        if (profit[static_cast<std::size_t>(c)] < 0.0) throw std::invalid_argument("negative profit");
        if (weight[static_cast<std::size_t>(c)] < 0.0) throw std::invalid_argument("negative weight");
    }

    distances.assign((n + 1) * (n + 1), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            const double dx = coords[i][0] - coords[j][0];
            const double dy = coords[i][1] - coords[j][1];
            double d = std::sqrt(dx * dx + dy * dy);
            if (rounding == DistanceRounding::NearestInteger) d = std::round(d);
            distances[i * (n + 1) + j] = d;
            distances[j * (n + 1) + i] = d;
        }
    }
}

void Instance::setExplicitDistances(std::vector<double> matrix) {
    const auto n = static_cast<std::size_t>(nbCustomers);
    if (matrix.size() != (n + 1) * (n + 1))
        throw std::invalid_argument("explicit distance matrix has wrong size");
    for (std::size_t i = 0; i <= n; ++i) {
        if (matrix[i * (n + 1) + i] != 0.0)
            throw std::invalid_argument("distance diagonal must be zero");
        for (std::size_t j = 0; j <= n; ++j)
            if (matrix[i * (n + 1) + j] != matrix[j * (n + 1) + i])
                throw std::invalid_argument("distance matrix must be symmetric");
    }
    distances = std::move(matrix);
}

GroupQuantities groupQuantities(const Instance& inst, int k) {
    const auto& members = inst.groups[static_cast<std::size_t>(k)];
    const double alpha = inst.serviceLevel[static_cast<std::size_t>(k)];
    const double totalWeight = inst.groupWeight(k);
    const double target = alpha * totalWeight;

    GroupQuantities gq;
    gq.qMax = inst.groupDemand(k);

    const bool integral = inst.groupWeightsIntegral(k);
    if (integral) gq.rhsCeil = ceilThreshold(target);

    if (target <= 1e-12) {
        gq.zMin = 0.0;
        gq.qMin = 0.0;
        return gq;
    }

    if (integral) {
        // Knapsack-style scan: best[w] = min load reaching attained weight >= w,
        // with w clamped at the integer threshold.
        const auto cap = static_cast<std::size_t>(*gq.rhsCeil);
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> best(cap + 1, inf);
        best[0] = 0.0;
        for (int c : members) {
            const auto w = static_cast<std::size_t>(
                std::llround(inst.weight[static_cast<std::size_t>(c)]));
            const double q = inst.demand[static_cast<std::size_t>(c)];
            if (w == 0) continue;
            for (std::size_t a = cap + 1; a-- > 0;) {
                if (best[a] == inf) continue;
                const std::size_t b = std::min(cap, a + w);
                best[b] = std::min(best[b], best[a] + q);
            }
        }
        gq.zMin = best[cap];
    } else {
        // Exact real threshold by subset enumeration; only viable for small groups.
        if (members.size() > 25)
            throw std::invalid_argument("group " + std::to_string(k) +
                                        " has fractional weights; ceil threshold undefined and the "
                                        "group is too large for exact enumeration");
        double bestLoad = std::numeric_limits<double>::infinity();
        const std::size_t m = members.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            double w = 0.0, q = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    w += inst.weight[static_cast<std::size_t>(members[i])];
                    q += inst.demand[static_cast<std::size_t>(members[i])];
                }
            }
            if (w >= target - 1e-9) bestLoad = std::min(bestLoad, q);
        }
        gq.zMin = bestLoad;
    }
    gq.qMin = gq.zMin;
    return gq;
}

int capacityCutRhs(const GroupQuantities& gq, double capacity) {
    if (capacity <= 0.0) throw std::invalid_argument("capacity must be positive");
    if (gq.zMin <= 1e-12) return 0;
    return 2 * static_cast<int>(std::ceil(gq.zMin / capacity - 1e-9));
}

} // namespace vrpsl
