#include "vrpsl/Split.h"

#include <limits>
#include <stdexcept>

namespace vrpsl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Arc cost of the route serving tour[i..j-1] (both depot legs, penalized
// load). Profits cancel across segmentations but are kept so per-route costs
// come out right.
struct ArcScan {
    const Instance& inst;
    const PenaltyState& pen;
    const std::vector<int>& tour;

    double distance = 0.0, load = 0.0, profit = 0.0;
    std::size_t from = 0, to = 0;

    void start(std::size_t i) {
        from = to = i;
        distance = load = profit = 0.0;
    }
    // Extends the open segment by tour[to]; call while to < tour.size().
    void extend() {
        const int c = tour[to];
        const int prev = to == from ? 0 : tour[to - 1];
        distance += inst.dist(prev, c);
        load += inst.demand[static_cast<std::size_t>(c)];
        profit += inst.profit[static_cast<std::size_t>(c)];
        ++to;
    }
    double cost() const {
        return distance + inst.dist(tour[to - 1], 0) - profit +
               pen.wCapacity * std::max(0.0, load - inst.capacity);
    }
};

} // namespace

Solution splitGiantTour(const std::vector<int>& giantTour, const Instance& inst,
                        const PenaltyState& pen) {
    const std::size_t t = giantTour.size();
    Solution sol;
    sol.giantTour = giantTour;

    {
        std::vector<char> seen(static_cast<std::size_t>(inst.nbCustomers) + 1, 0);
        for (int c : giantTour) {
            if (c < 1 || c > inst.nbCustomers)
                throw std::invalid_argument("giant tour contains an invalid customer");
            if (seen[static_cast<std::size_t>(c)]++)
                throw std::invalid_argument("giant tour contains a duplicate customer");
        }
    }

    if (t == 0) {
        sol.routes.clear();
        sol.evaluate(inst, pen);
        return sol;
    }

    // Unlimited-fleet Bellman pass over the segmentation DAG.
    std::vector<double> value(t + 1, kInf);
    std::vector<std::size_t> pred(t + 1, 0);
    value[0] = 0.0;
    ArcScan scan{inst, pen, giantTour};
    for (std::size_t i = 0; i < t; ++i) {
        if (value[i] == kInf) continue;
        scan.start(i);
        for (std::size_t j = i + 1; j <= t; ++j) {
            scan.extend();
            const double candidate = value[i] + scan.cost();
            if (candidate < value[j]) {
                value[j] = candidate;
                pred[j] = i;
            }
        }
    }

    std::size_t usedRoutes = 0;
    for (std::size_t j = t; j > 0; j = pred[j]) ++usedRoutes;

    std::vector<std::size_t> cuts;
    if (usedRoutes <= static_cast<std::size_t>(inst.fleetSize)) {
        for (std::size_t j = t; j > 0; j = pred[j]) cuts.push_back(j);
    } else {
        // Route-count cap active: add a fleet dimension to the recursion.
        const auto m = static_cast<std::size_t>(inst.fleetSize);
        std::vector<std::vector<double>> v(m + 1, std::vector<double>(t + 1, kInf));
        std::vector<std::vector<std::size_t>> p(m + 1, std::vector<std::size_t>(t + 1, 0));
        v[0][0] = 0.0;
        for (std::size_t k = 1; k <= m; ++k) {
            for (std::size_t i = 0; i < t; ++i) {
                if (v[k - 1][i] == kInf) continue;
                scan.start(i);
                for (std::size_t j = i + 1; j <= t; ++j) {
                    scan.extend();
                    const double candidate = v[k - 1][i] + scan.cost();
                    if (candidate < v[k][j]) {
                        v[k][j] = candidate;
                        p[k][j] = i;
                    }
                }
            }
        }
        std::size_t bestK = m;
        for (std::size_t k = 1; k <= m; ++k)
            if (v[k][t] < v[bestK][t]) bestK = k;
        if (v[bestK][t] == kInf)
            throw std::logic_error("split failed to decode the giant tour");
        for (std::size_t j = t, k = bestK; j > 0; j = p[k][j], --k) cuts.push_back(j);
    }

    sol.routes.clear();
    std::size_t begin = 0;
    for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) {
        Route r;
        r.visits.assign(giantTour.begin() + static_cast<std::ptrdiff_t>(begin),
                        giantTour.begin() + static_cast<std::ptrdiff_t>(*it));
        sol.routes.push_back(std::move(r));
        begin = *it;
    }
    sol.evaluate(inst, pen);
    return sol;
}

} // namespace vrpsl
