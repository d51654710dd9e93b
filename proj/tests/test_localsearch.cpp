#include "doctest.h"

#include "TestSupport.h"
#include "vrpsl/LocalSearch.h"
#include "vrpsl/Split.h"

using namespace vrpsl;
using namespace vrpsl::test;

namespace {

Solution randomLoadedSolution(const Instance& inst, const PenaltyState& pen, Rng& rng) {
    std::vector<int> tour;
    for (int c = 1; c <= inst.nbCustomers; ++c)
        if (rng.chance(0.7)) tour.push_back(c);
    rng.shuffle(tour);
    return splitGiantTour(tour, inst, pen);
}

} // namespace

TEST_CASE("educate: an already-optimal tiny instance is a fixed point") {
    // Close customer: the 6-unit round trip beats the 10-unit level penalty,
    // so no selection move can improve either.
    InstanceSpec spec;
    spec.coords = {{0, 0}, {3, 0}};
    spec.demand = {0, 5};
    spec.profit = {0, 0};
    spec.weight = {0, 5};
    spec.groupOf = {-1, 0};
    spec.serviceLevel = {1.0};
    spec.capacity = 10;
    spec.fleetSize = 1;
    const Instance inst = makeInstance(spec);
    const PenaltyState pen = PenaltyState::initial(1);

    LocalSearch ls(inst);
    Rng rng(1);
    const Solution sol = splitGiantTour({1}, inst, pen);
    const Solution out = ls.educate(sol, pen, rng);
    CHECK(out.giantTour == std::vector<int>{1});
    CHECK(out.cost == doctest::Approx(sol.cost));
}

TEST_CASE("educate: 2-opt uncrosses a crossing route") {
    // Square geometry: visiting the corners in the order 1,3,2,4 crosses.
    InstanceSpec spec;
    spec.coords = {{0, 0}, {0, 10}, {10, 10}, {10, 0}, {-5, 5}};
    spec.demand = {0, 1, 1, 1, 1};
    spec.profit = {0, 0, 0, 0, 0};
    spec.weight = {0, 1, 1, 1, 1};
    spec.groupOf = {-1, 0, 0, 0, 0};
    spec.serviceLevel = {1.0};
    spec.capacity = 10;
    spec.fleetSize = 1;
    const Instance inst = makeInstance(spec);
    const PenaltyState pen = PenaltyState::initial(1);

    Solution crossed = buildSolution({{1, 3, 2, 4}}, inst, pen);

    LocalSearch ls(inst);
    ls.load(crossed, pen);
    // The exhaustive 2-opt oracle must see the crossing.
    double bestTwoOpt = 0.0;
    for (const auto& move : ls.moves())
        if (move.kind == MoveKind::TwoOpt)
            bestTwoOpt = std::min(bestTwoOpt, ls.deltaCost(move));
    CHECK(bestTwoOpt < -1e-6);

    Rng rng(3);
    const Solution out = ls.educate(crossed, pen, rng);
    CHECK(out.cost < crossed.cost - 1e-6);
}

TEST_CASE("educate: Remove fires on an unprofitable covered customer") {
    // Customer 2 costs a detour of 10 but pays 1; the group level stays
    // satisfied without it (alpha = 0).
    InstanceSpec spec;
    spec.coords = {{0, 0}, {10, 0}, {20, 5}, {30, 0}};
    spec.demand = {0, 1, 1, 1};
    spec.profit = {0, 100, 1, 100};
    spec.weight = {0, 1, 1, 1};
    spec.groupOf = {-1, 0, 0, 0};
    spec.serviceLevel = {0.0};
    spec.capacity = 10;
    spec.fleetSize = 1;
    const Instance inst = makeInstance(spec);
    const PenaltyState pen = PenaltyState::initial(1);

    Solution sol = buildSolution({{1, 2, 3}}, inst, pen);
    LocalSearch ls(inst);
    ls.load(sol, pen);
    const double removalDelta = ls.deltaCost({MoveKind::Remove, 2, 0, 0});
    CHECK(removalDelta < -1e-6); // detour minus profit is negative

    Rng rng(5);
    const Solution out = ls.educate(sol, pen, rng);
    bool has2 = false;
    for (int c : out.giantTour) has2 = has2 || c == 2;
    CHECK_FALSE(has2);
}

TEST_CASE("delta cost: null relocate is exactly zero") {
    const Instance inst = [] {
        InstanceSpec spec;
        spec.coords = {{0, 0}, {5, 0}, {10, 0}};
        spec.demand = {0, 1, 1};
        spec.profit = {0, 0, 0};
        spec.weight = {0, 1, 1};
        spec.groupOf = {-1, 0, 0};
        spec.serviceLevel = {1.0};
        spec.capacity = 10;
        spec.fleetSize = 1;
        return makeInstance(spec);
    }();
    const PenaltyState pen = PenaltyState::initial(1);
    LocalSearch ls(inst);
    ls.load(buildSolution({{1, 2}}, inst, pen), pen);
    CHECK(ls.deltaCost({MoveKind::Relocate1, 2, 1, 0}) == 0.0); // same position
}

TEST_CASE("delta cost matches full re-evaluation on random moves") {
    Rng rng(2024);
    long checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        RandomInstanceOptions opt;
        opt.nbGroups = rng.uniformInt(1, 4);
        opt.weightsEqualDemands = rng.chance(0.5);
        opt.capacityFactor = rng.uniform(0.25, 0.7);
        opt.extraVehicles = rng.uniformInt(0, 2);
        const int n = rng.uniformInt(4, 18);
        const Instance inst = randomInstance(rng, n, opt);
        PenaltyState pen = PenaltyState::initial(inst.nbGroups(), rng.uniform(1.0, 25.0));

        LocalSearch ls(inst);
        ls.load(randomLoadedSolution(inst, pen, rng), pen);

        auto movesCopy = ls.moves();
        rng.shuffle(movesCopy);
        int applied = 0;
        for (const auto& move : movesCopy) {
            const double delta = ls.deltaCost(move);
            if (!std::isfinite(delta)) continue;
            const double before = ls.extract().cost;
            ls.apply(move);
            const double after = ls.extract().cost;
            const double tol = 1e-9 * std::max(1.0, std::abs(after));
            CHECK(std::abs((after - before) - delta) <= tol);
            ++checked;
            if (++applied >= 40) break;
        }
    }
    CHECK(checked > 1200);
}

TEST_CASE("delta cost: removing a needed group member prices the shortfall") {
    // Group 0 = {1}, alpha = 1: removing customer 1 loses its profit and adds
    // the full service penalty.
    InstanceSpec spec;
    spec.coords = {{0, 0}, {3, 4}};
    spec.demand = {0, 2};
    spec.profit = {0, 6};
    spec.weight = {0, 2};
    spec.groupOf = {-1, 0};
    spec.serviceLevel = {1.0};
    spec.capacity = 10;
    spec.fleetSize = 1;
    const Instance inst = makeInstance(spec);
    PenaltyState pen = PenaltyState::initial(1);
    pen.wService = {17.0};

    LocalSearch ls(inst);
    ls.load(buildSolution({{1}}, inst, pen), pen);
    const double delta = ls.deltaCost({MoveKind::Remove, 1, 0, 0});
    CHECK(delta == doctest::Approx(-10.0 + 6.0 + 17.0 * 1.0));
}

TEST_CASE("apply then undo restores the evaluated cost exactly") {
    Rng rng(31);
    const Instance inst = randomInstance(rng, 10);
    const PenaltyState pen = PenaltyState::initial(1);
    LocalSearch ls(inst);
    ls.load(splitGiantTour({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, inst, pen), pen);

    const double before = ls.extract().cost;

    // Swap11 is its own inverse.
    REQUIRE(std::isfinite(ls.deltaCost({MoveKind::Swap11, 2, 5, 0})));
    ls.apply({MoveKind::Swap11, 2, 5, 0});
    ls.apply({MoveKind::Swap11, 2, 5, 0});
    CHECK(ls.extract().cost == before);

    // 2-opt(u, v) reverses the segment after u; the inverse re-reverses it,
    // which is 2-opt(u, w) where w was u's successor before the move.
    {
        const Solution snap = ls.extract();
        const auto& r0 = snap.routes[0].visits;
        if (r0.size() >= 4) {
            const int u = r0[0], w = r0[1], v = r0[r0.size() - 2];
            if (std::isfinite(ls.deltaCost({MoveKind::TwoOpt, u, v, 0}))) {
                ls.apply({MoveKind::TwoOpt, u, v, 0});
                ls.apply({MoveKind::TwoOpt, u, w, 0});
                CHECK(ls.extract().cost == before);
            }
        }
    }

    // Remove then re-insert behind the prior predecessor.
    const Solution snapshot = ls.extract();
    int u = snapshot.routes[0].visits.size() > 1 ? snapshot.routes[0].visits[1] : -1;
    REQUIRE(u > 0);
    const int prev = snapshot.routes[0].visits[0];
    ls.apply({MoveKind::Remove, u, 0, 0});
    ls.apply({MoveKind::Add, prev, u, 0});
    CHECK(ls.extract().cost == before);
}

TEST_CASE("structural moves: Add keeps visits unique, Replace keeps length, Remove shrinks") {
    Rng rng(67);
    const Instance inst = randomInstance(rng, 12);
    const PenaltyState pen = PenaltyState::initial(1);
    LocalSearch ls(inst);
    ls.load(splitGiantTour({1, 2, 3, 4, 5, 6}, inst, pen), pen);

    ls.apply({MoveKind::Add, 3, 9, 0});
    Solution sol = ls.extract();
    CHECK(sol.nbVisits() == 7);
    std::vector<char> seen(13, 0);
    for (int c : sol.giantTour) {
        CHECK_FALSE(seen[static_cast<std::size_t>(c)]);
        seen[static_cast<std::size_t>(c)] = 1;
    }

    ls.apply({MoveKind::Replace, 5, 11, 0});
    CHECK(ls.extract().nbVisits() == 7);

    ls.apply({MoveKind::Remove, 11, 0, 0});
    CHECK(ls.extract().nbVisits() == 6);
}

TEST_CASE("educate reaches a granular local optimum") {
    Rng rng(404);
    for (int trial = 0; trial < 12; ++trial) {
        RandomInstanceOptions opt;
        opt.nbGroups = rng.uniformInt(1, 3);
        opt.capacityFactor = rng.uniform(0.3, 0.6);
        const Instance inst = randomInstance(rng, rng.uniformInt(5, 14), opt);
        const PenaltyState pen = PenaltyState::initial(inst.nbGroups());
        LocalSearch ls(inst);
        const Solution out = ls.educate(randomLoadedSolution(inst, pen, rng), pen, rng);

        ls.load(out, pen);
        for (const auto& move : ls.moves()) {
            const double delta = ls.deltaCost(move);
            if (std::isfinite(delta)) CHECK(delta >= -LocalSearch::kImproveEps);
        }

        // Education preserves the structural invariants of the solution type.
        std::vector<int> cat;
        for (const auto& r : out.routes) {
            CHECK_FALSE(r.visits.empty());
            cat.insert(cat.end(), r.visits.begin(), r.visits.end());
        }
        CHECK(cat == out.giantTour);
        CHECK(out.cost == doctest::Approx(solutionCost(out, inst, pen)).epsilon(1e-12));
    }
}

TEST_CASE("repair: overloaded single route splits onto the spare vehicle") {
    InstanceSpec spec;
    spec.coords = {{0, 0}, {8, 0}, {0, 8}};
    spec.demand = {0, 6, 6};
    spec.profit = {0, 0, 0};
    spec.weight = {0, 6, 6};
    spec.groupOf = {-1, 0, 0};
    spec.serviceLevel = {1.0};
    spec.capacity = 6;
    spec.fleetSize = 2;
    const Instance inst = makeInstance(spec);
    // A weak capacity penalty (with service kept expensive) makes the merged
    // route a local optimum until repair raises the factors.
    PenaltyState pen = PenaltyState::initial(1, 0.5);
    pen.wService = {50.0};

    const Solution merged = buildSolution({{1, 2}}, inst, pen);
    REQUIRE_FALSE(checkFeasibility(merged, inst).feasible);

    LocalSearch ls(inst);
    Rng rng(9);
    ls.load(merged, pen);
    for (const auto& move : ls.moves()) {
        const double delta = ls.deltaCost(move);
        if (std::isfinite(delta)) REQUIRE(delta >= -LocalSearch::kImproveEps);
    }
    const Solution repaired = ls.repair(merged, pen, rng);
    CHECK(checkFeasibility(repaired, inst).feasible);
    CHECK(repaired.routes.size() == 2);
}

TEST_CASE("repair never increases the violation count") {
    Rng rng(555);
    for (int trial = 0; trial < 25; ++trial) {
        RandomInstanceOptions opt;
        opt.nbGroups = rng.uniformInt(1, 3);
        opt.capacityFactor = rng.uniform(0.2, 0.4);
        opt.minAlpha = 0.5;
        opt.extraVehicles = rng.uniformInt(1, 2);
        const Instance inst = randomInstance(rng, rng.uniformInt(5, 12), opt);
        const PenaltyState pen = PenaltyState::initial(inst.nbGroups());

        Solution sol = randomLoadedSolution(inst, pen, rng);
        if (checkFeasibility(sol, inst).feasible) continue;
        const auto before = checkFeasibility(sol, inst).violations.size();

        LocalSearch ls(inst);
        const Solution repaired = ls.repair(sol, pen, rng);
        const auto after = checkFeasibility(repaired, inst).violations.size();
        CHECK(after <= before);
    }
}
