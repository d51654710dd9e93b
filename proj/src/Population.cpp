#include "vrpsl/Population.h"

#include <algorithm>
#include <numeric>

namespace vrpsl {

Individual makeIndividual(Solution sol) {
    Individual indiv;
    indiv.edges = solutionEdges(sol);
    indiv.sol = std::move(sol);
    return indiv;
}

void SubPopulation::insert(Individual indiv) {
    indiv.sequence = nextSequence++;
    auto owned = std::make_unique<Individual>(std::move(indiv));
    const int old = size();
    for (int i = 0; i < old; ++i) {
        const double d = edgeSetDistance(items[static_cast<std::size_t>(i)]->edges, owned->edges);
        dist[static_cast<std::size_t>(i)].push_back(d);
    }
    dist.emplace_back();
    auto& row = dist.back();
    row.reserve(static_cast<std::size_t>(old) + 1);
    for (int i = 0; i < old; ++i) row.push_back(dist[static_cast<std::size_t>(i)].back());
    row.push_back(0.0);
    items.push_back(std::move(owned));
}

void SubPopulation::removeAt(int i) {
    items.erase(items.begin() + i);
    dist.erase(dist.begin() + i);
    for (auto& row : dist) row.erase(row.begin() + i);
}

void SubPopulation::refreshBiasedFitness() {
    const int n = size();
    if (n == 0) return;

    for (int i = 0; i < n; ++i) {
        auto& indiv = at(i);
        std::vector<double> d;
        d.reserve(static_cast<std::size_t>(n) - 1);
        for (int j = 0; j < n; ++j)
            if (j != i) d.push_back(distance(i, j));
        const auto close = std::min<std::size_t>(static_cast<std::size_t>(nClose), d.size());
        std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(close), d.end());
        double sum = 0.0;
        for (std::size_t k = 0; k < close; ++k) sum += d[k];
        indiv.diversity = close > 0 ? sum / static_cast<double>(close) : 0.0;
    }

    // Competition ranking: equal keys share the rank, so ties in cost are
    // decided by the diversity contribution alone (and vice versa).
    auto ranks = [this, n](auto key) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (key(at(a)) != key(at(b))) return key(at(a)) < key(at(b));
            return at(a).sequence < at(b).sequence;
        });
        std::vector<int> rank(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r) {
            const int i = order[static_cast<std::size_t>(r)];
            const int prev = r > 0 ? order[static_cast<std::size_t>(r - 1)] : -1;
            rank[static_cast<std::size_t>(i)] =
                (r > 0 && key(at(i)) == key(at(prev))) ? rank[static_cast<std::size_t>(prev)]
                                                       : r + 1;
        }
        return rank;
    };
    const auto costRank = ranks([](const Individual& x) { return x.sol.cost; });
    const auto divRank = ranks([](const Individual& x) { return -x.diversity; });
    const double eliteFactor = 1.0 - static_cast<double>(nElite) / static_cast<double>(n);
    for (int i = 0; i < n; ++i)
        at(i).biasedFitness = costRank[static_cast<std::size_t>(i)] +
                              eliteFactor * divRank[static_cast<std::size_t>(i)];
}

bool SubPopulation::isClone(int i) const {
    for (int j = 0; j < size(); ++j)
        if (j != i && distance(i, j) <= 1e-12) return true;
    return false;
}

int SubPopulation::selectVictim() const {
    int victim = -1;
    for (int i = 0; i < size(); ++i) {
        if (!isClone(i)) continue;
        if (victim < 0 || at(i).biasedFitness > at(victim).biasedFitness) victim = i;
    }
    if (victim >= 0) return victim;
    for (int i = 0; i < size(); ++i)
        if (victim < 0 || at(i).biasedFitness > at(victim).biasedFitness) victim = i;
    return victim;
}

int SubPopulation::bestCostIndex() const {
    int best = -1;
    for (int i = 0; i < size(); ++i)
        if (best < 0 || at(i).sol.cost < at(best).sol.cost) best = i;
    return best;
}

int SubPopulation::truncateTo(int keep) {
    int removed = 0;
    while (size() > keep) {
        refreshBiasedFitness();
        const int protect = bestCostIndex();
        int victim = -1;
        for (int i = 0; i < size(); ++i) {
            if (i == protect) continue;
            if (victim < 0 || at(i).biasedFitness > at(victim).biasedFitness) victim = i;
        }
        removeAt(victim);
        ++removed;
    }
    return removed;
}

std::vector<const Individual*> SubPopulation::members() const {
    std::vector<const Individual*> out;
    out.reserve(items.size());
    for (const auto& p : items) out.push_back(p.get());
    return out;
}

bool Population::insert(Individual indiv) {
    const bool fits = checkFeasibility(indiv.sol, inst).feasible;
    SubPopulation& sub = fits ? feasibleSub : infeasibleSub;
    sub.insert(std::move(indiv));
    if (sub.size() >= mu + lambda) {
        for (int i = 0; i < lambda; ++i) {
            sub.refreshBiasedFitness();
            sub.removeAt(sub.selectVictim());
        }
    }
    return fits;
}

void Population::repriceAll(const PenaltyState& pen) {
    for (int i = 0; i < infeasibleSub.size(); ++i) infeasibleSub.at(i).sol.reprice(inst, pen);
    for (int i = 0; i < feasibleSub.size(); ++i) feasibleSub.at(i).sol.reprice(inst, pen);
}

} // namespace vrpsl
