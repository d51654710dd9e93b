#pragma once

#include "vrpsl/Instance.h"
#include "vrpsl/Solution.h"

#include <memory>
#include <utility>
#include <vector>

namespace vrpsl {

struct Individual {
    Solution sol;
    std::vector<std::pair<int, int>> edges; // sorted undirected edge set
    long sequence = 0;                      // insertion order, breaks rank ties
    double biasedFitness = 0.0;
    double diversity = 0.0;                 // mean distance to nClose nearest
};

// One of the two sub-populations (feasible / infeasible), with the pairwise
// distance cache and the rank-based biased fitness of the paper.
class SubPopulation {
public:
    SubPopulation(int nElite, int nClose) : nElite(nElite), nClose(nClose) {}

    int size() const { return static_cast<int>(items.size()); }
    const Individual& at(int i) const { return *items[static_cast<std::size_t>(i)]; }
    Individual& at(int i) { return *items[static_cast<std::size_t>(i)]; }
    double distance(int i, int j) const {
        return dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    void insert(Individual indiv);
    void removeAt(int i);

    // Ranks by cost (ascending) and diversity contribution (descending),
    // combined as rank_cost + (1 - nElite/|P|) * rank_div.
    void refreshBiasedFitness();

    // True if individual i has distance exactly 0 to some other member.
    bool isClone(int i) const;

    // Victim of one survivor-selection step: a clone when one exists,
    // otherwise the worst biased fitness.
    int selectVictim() const;

    int bestCostIndex() const;

    // Keeps the best `keep` members by biased fitness (the best-cost member is
    // always retained); returns the number removed.
    int truncateTo(int keep);

    std::vector<const Individual*> members() const;

private:
    int nElite;
    int nClose;
    long nextSequence = 0;
    std::vector<std::unique_ptr<Individual>> items;
    std::vector<std::vector<double>> dist;
};

// Two sub-populations plus the survivor-selection policy: insertion routes by
// feasibility; reaching mu + lambda triggers removal of lambda individuals,
// clones first, then worst biased fitness.
class Population {
public:
    Population(const Instance& inst, int mu, int lambda, int nElite, int nClose)
        : inst(inst), mu(mu), lambda(lambda),
          feasibleSub(nElite, nClose), infeasibleSub(nElite, nClose) {}

    SubPopulation& feasible() { return feasibleSub; }
    SubPopulation& infeasible() { return infeasibleSub; }
    const SubPopulation& feasible() const { return feasibleSub; }
    const SubPopulation& infeasible() const { return infeasibleSub; }

    int totalSize() const { return feasibleSub.size() + infeasibleSub.size(); }

    // Returns true when the individual landed in the feasible sub-population.
    bool insert(Individual indiv);

    void repriceAll(const PenaltyState& pen);

    int muSize() const { return mu; }
    int lambdaSize() const { return lambda; }

private:
    const Instance& inst;
    int mu, lambda;
    SubPopulation feasibleSub, infeasibleSub;
};

Individual makeIndividual(Solution sol);

} // namespace vrpsl
