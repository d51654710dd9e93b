#pragma once

#include "vrpsl/Instance.h"
#include "vrpsl/Rng.h"
#include "vrpsl/Solution.h"

#include <vector>

namespace vrpsl {

enum class MoveKind {
    TwoOpt,      // intra-route segment reversal
    TwoOptStar,  // inter-route tail exchange (two recombinations via variant)
    Swap11,      // exchange u and v
    Swap21,      // exchange (u, next(u)) and v
    Swap22,      // exchange (u, next(u)) and (v, next(v))
    Relocate1,   // move u after v (v = 0: into an empty route)
    Relocate2,   // move (u, next(u)) after v (v = 0: into an empty route)
    Remove,      // drop u from the solution
    Add,         // insert unvisited v after u (u = 0: into an empty route)
    Replace      // unvisited v takes u's position
};

struct Move {
    MoveKind kind;
    int u = 0;
    int v = 0;
    int variant = 0; // 2-opt* recombination selector
};

// Granular first-improvement local search over the ten neighborhoods,
// including the customer-selection moves. One engine instance per thread;
// load() installs a solution, educate()/repair() are the spec entry points.
class LocalSearch {
public:
    static int defaultGranularity(const Instance& inst) {
        return std::min(20, inst.nbCustomers - 1);
    }

    explicit LocalSearch(const Instance& inst, int granularity = -1);

    // Installs a decoded solution (at most fleetSize routes) and the penalty
    // state under which deltas are measured.
    void load(const Solution& sol, const PenaltyState& pen);

    // Exact cost change of applying the move now; +infinity when the move is
    // not applicable to the current state.
    double deltaCost(const Move& move) const;

    // Applies a move previously judged applicable.
    void apply(const Move& move);

    // Full granular move list; applicability is resolved by deltaCost.
    const std::vector<Move>& moves() const { return moveList; }

    void runToLocalOptimum(Rng& rng);

    Solution extract() const;

    Solution educate(const Solution& sol, const PenaltyState& pen, Rng& rng);

    // Re-educates an infeasible solution under penalties x10, then x100 if
    // still infeasible. The result is evaluated back under the base penalties.
    Solution repair(const Solution& sol, const PenaltyState& pen, Rng& rng);

    const std::vector<int>& neighborsOf(int u) const {
        return neighbors[static_cast<std::size_t>(u)];
    }

    static constexpr double kImproveEps = 1e-6;

private:
    const Instance& inst;
    int granularity;
    std::vector<std::vector<int>> neighbors; // per customer, granularity nearest
    std::vector<Move> moveList;

    PenaltyState pen;
    std::vector<std::vector<int>> slots;     // fleetSize route slots
    std::vector<double> slotLoad;
    std::vector<std::vector<double>> cumLoad; // per slot, prefix loads
    std::vector<int> routeOf;                // -1 when unvisited
    std::vector<int> posOf;
    std::vector<double> groupVisited;        // visited weight per group
    std::vector<double> groupTotal;
    int visitedCount = 0;

    int prevOf(int u) const;
    int nextOf(int u) const;
    int firstEmptySlot() const;
    double prefixLoad(int u) const; // load up to and including u
    double capDelta(double oldLoad, double newLoad) const;
    double levelDelta(int group, double weightChange) const;
    void rebuildSlot(int r);
    void markUnvisited(int u);

    double deltaTwoOpt(int u, int v) const;
    double deltaTwoOptStar(int u, int v, int variant) const;
    double deltaSwap11(int u, int v) const;
    double deltaSwap21(int u, int v) const;
    double deltaSwap22(int u, int v) const;
    double deltaRelocate1(int u, int v) const;
    double deltaRelocate2(int u, int v) const;
    double deltaRemove(int u) const;
    double deltaAdd(int u, int v) const;
    double deltaReplace(int u, int v) const;
};

} // namespace vrpsl
