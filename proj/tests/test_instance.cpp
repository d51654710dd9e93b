#include "doctest.h"

#include "TestSupport.h"
#include "vrpsl/Generators.h"
#include "vrpsl/InstanceIO.h"

#include <cmath>
#include <set>

using namespace vrpsl;
using namespace vrpsl::test;

namespace {

const char* kTwoCustomerFile = R"(NAME : tiny
DIMENSION : 3
CAPACITY : 10
VEHICLES : 2
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 4
3 6 8
DEMAND_SECTION
1 0
2 4
3 5
PROFIT_SECTION
2 7
3 2
SERVICE_WEIGHT_SECTION
2 2
3 3
GROUP_SECTION
2 1
3 1
SERVICE_LEVEL_SECTION
1 1.0
EOF
)";

const char* kCvrpFile = R"(NAME : mini-k2
COMMENT : plain CVRP
DIMENSION : 4
CAPACITY : 10
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 0 5
3 5 0
4 5 5
DEMAND_SECTION
1 0
2 4
3 5
4 6
DEPOT_SECTION
1
-1
EOF
)";

bool sameInstance(const Instance& a, const Instance& b) {
    if (a.name != b.name || a.nbCustomers != b.nbCustomers || a.fleetSize != b.fleetSize)
        return false;
    if (a.capacity != b.capacity || a.rounding != b.rounding) return false;
    if (a.coords != b.coords || a.demand != b.demand || a.profit != b.profit ||
        a.weight != b.weight || a.groupOf != b.groupOf || a.serviceLevel != b.serviceLevel)
        return false;
    return true;
}

Instance cvrpBase(Rng& rng, int n) {
    RandomInstanceOptions opt;
    opt.maxProfit = 0;
    Instance base = randomInstance(rng, n, opt);
    base.rounding = DistanceRounding::NearestInteger;
    base.finalize();
    return base;
}

} // namespace

TEST_CASE("parse: two customers, one group, full service level") {
    const Instance inst = parseInstance(kTwoCustomerFile);
    CHECK(inst.nbCustomers == 2);
    CHECK(inst.nbGroups() == 1);
    CHECK(inst.serviceLevel[0] == 1.0);
    CHECK(inst.dist(0, 1) == 5.0);
    CHECK(inst.dist(0, 2) == 10.0);
    const auto gq = groupQuantities(inst, 0);
    CHECK(gq.rhsCeil == 5); // s1 + s2 under alpha = 1
}

TEST_CASE("parse: CVRPLIB file without groups becomes the CVRP reduction") {
    const Instance inst = parseInstance(kCvrpFile, InstanceFormat::Cvrplib);
    CHECK(inst.nbCustomers == 3);
    CHECK(inst.nbGroups() == 1);
    CHECK(inst.serviceLevel[0] == 1.0);
    for (int c = 1; c <= 3; ++c) {
        CHECK(inst.profit[static_cast<std::size_t>(c)] == 0.0);
        CHECK(inst.weight[static_cast<std::size_t>(c)] ==
              inst.demand[static_cast<std::size_t>(c)]);
    }
    CHECK(inst.fleetSize == 2); // from the -k2 name suffix
}

TEST_CASE("parse: vrppfcc and cptp conventions force exact distances, zero levels") {
    for (const auto format : {InstanceFormat::Vrppfcc, InstanceFormat::Cptp}) {
        const Instance inst = parseInstance(kTwoCustomerFile, format);
        CHECK(inst.rounding == DistanceRounding::Exact);
        CHECK(inst.serviceLevel[0] == 0.0);
        CHECK(inst.profit[1] == 7.0); // outsourcing cost / prize preserved
        CHECK(inst.dist(0, 1) == doctest::Approx(5.0));
        CHECK(inst.dist(1, 2) == doctest::Approx(5.0)); // (3,4)-(6,8)
    }
}

TEST_CASE("parse: errors name the offending line or section") {
    std::string overlapping = kTwoCustomerFile;
    overlapping.replace(overlapping.find("3 1\nSERVICE_LEVEL"), 3, "2 1");
    CHECK_THROWS_AS(parseInstance(overlapping), ParseError);

    std::string missingLevels = kTwoCustomerFile;
    const auto at = missingLevels.find("SERVICE_LEVEL_SECTION\n1 1.0\n");
    missingLevels.erase(at, std::string("SERVICE_LEVEL_SECTION\n1 1.0\n").size());
    CHECK_THROWS_WITH_AS(parseInstance(missingLevels),
                         "GROUP_SECTION present but SERVICE_LEVEL_SECTION missing", ParseError);

    std::string malformed = kTwoCustomerFile;
    malformed.replace(malformed.find("2 3 4"), 5, "2 3 x");
    CHECK_THROWS_AS(parseInstance(malformed), ParseError);
    try {
        parseInstance(malformed);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("parse is the left inverse of serialize on generated instances") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance base = cvrpBase(rng, rng.uniformInt(4, 20));
        const Instance s1 = generateS1(rng.nextBits(), base, GroupConfig::TwoRandom);
        const Instance back = parseInstance(serializeInstance(s1));
        CHECK(sameInstance(s1, back));
    }
}

TEST_CASE("group quantities: ceil right-hand side") {
    InstanceSpec spec;
    spec.coords.push_back({0, 0});
    spec.demand.push_back(0);
    spec.profit.push_back(0);
    spec.weight.push_back(0);
    spec.groupOf.push_back(-1);
    for (int c = 0; c < 10; ++c) {
        spec.coords.push_back({1.0 * c, 0.0});
        spec.demand.push_back(1);
        spec.profit.push_back(0);
        spec.weight.push_back(1);
        spec.groupOf.push_back(0);
    }
    spec.serviceLevel = {0.45};
    spec.capacity = 100;
    spec.fleetSize = 3;
    const Instance inst = makeInstance(spec);
    CHECK(groupQuantities(inst, 0).rhsCeil == 5); // ceil(4.5)
}

TEST_CASE("group quantities: z_min on q = s = (3,4,5), alpha = 0.5") {
    InstanceSpec spec;
    spec.coords = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    spec.demand = {0, 3, 4, 5};
    spec.profit = {0, 0, 0, 0};
    spec.weight = {0, 3, 4, 5};
    spec.groupOf = {-1, 0, 0, 0};
    spec.serviceLevel = {0.5};
    spec.capacity = 100;
    spec.fleetSize = 2;
    const Instance inst = makeInstance(spec);
    const auto gq = groupQuantities(inst, 0);
    CHECK(gq.zMin == doctest::Approx(7.0)); // threshold 6, cheapest subset {3,4}
    CHECK(gq.zMin == doctest::Approx(bruteForceZmin(inst, 0)));
    CHECK(gq.rhsCeil == 6);
    CHECK(gq.qMax == doctest::Approx(12.0));
}

TEST_CASE("group quantities: alpha = 0 selects nothing") {
    InstanceSpec spec;
    spec.coords = {{0, 0}, {1, 0}, {2, 0}};
    spec.demand = {0, 3, 4};
    spec.profit = {0, 0, 0};
    spec.weight = {0, 3, 4};
    spec.groupOf = {-1, 0, 0};
    spec.serviceLevel = {0.0};
    spec.capacity = 100;
    spec.fleetSize = 1;
    const Instance inst = makeInstance(spec);
    const auto gq = groupQuantities(inst, 0);
    CHECK(gq.zMin == 0.0);
    CHECK(gq.rhsCeil == 0);
}

TEST_CASE("z_min equals the brute-force subset minimum on random groups") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        RandomInstanceOptions opt;
        opt.nbGroups = rng.uniformInt(1, 4);
        opt.weightsEqualDemands = false;
        Instance inst = randomInstance(rng, rng.uniformInt(opt.nbGroups, 14), opt);
        for (int k = 0; k < inst.nbGroups(); ++k) {
            const auto gq = groupQuantities(inst, k);
            CHECK(gq.zMin == doctest::Approx(bruteForceZmin(inst, k)).epsilon(1e-12));
            CHECK(gq.zMin <= gq.qMax + 1e-9);
        }
    }
}

TEST_CASE("group quantities: fractional weights leave the ceil threshold undefined") {
    InstanceSpec spec;
    spec.coords = {{0, 0}, {1, 0}, {2, 0}};
    spec.demand = {0, 3, 4};
    spec.profit = {0, 0, 0};
    spec.weight = {0, 1.5, 2.5};
    spec.groupOf = {-1, 0, 0};
    spec.serviceLevel = {0.5};
    spec.capacity = 100;
    spec.fleetSize = 1;
    const Instance inst = makeInstance(spec);
    const auto gq = groupQuantities(inst, 0);
    CHECK_FALSE(gq.rhsCeil.has_value());
    // The exact real threshold is 2.0; the 2.5-weight customer alone covers it.
    CHECK(gq.zMin == doctest::Approx(4.0));
    CHECK(gq.zMin == doctest::Approx(bruteForceZmin(inst, 0)));
}

TEST_CASE("capacity cut right-hand side") {
    GroupQuantities gq;
    gq.zMin = 7.0;
    CHECK(capacityCutRhs(gq, 5.0) == 4); // 2 * ceil(1.4)
    gq.zMin = 0.0;
    CHECK(capacityCutRhs(gq, 5.0) == 0);
    gq.zMin = 10.0;
    CHECK(capacityCutRhs(gq, 10.0) == 2);
}

TEST_CASE("generate S1: profit range, zero demand, determinism") {
    Rng rng(3);
    Instance base = cvrpBase(rng, 12);
    base.demand[3] = 0.0; // a zero-demand customer keeps zero profit
    base.finalize();
    const Instance a = generateS1(99, base, GroupConfig::FiveRandom);
    const Instance b = generateS1(99, base, GroupConfig::FiveRandom);
    CHECK(sameInstance(a, b));
    CHECK(a.profit[3] == 0.0);
    for (int c = 1; c <= a.nbCustomers; ++c) {
        const double q = a.demand[static_cast<std::size_t>(c)];
        if (q <= 0.0) continue;
        const double ratio = a.profit[static_cast<std::size_t>(c)] / q;
        // Profits are rounded, so allow the rounding slack around [0.75, 2.25].
        CHECK(ratio >= 0.75 - 0.5 / q);
        CHECK(ratio <= 2.25 + 0.5 / q);
    }
    CHECK(a.weight == a.demand);
}

TEST_CASE("generate S2: capacity, halved profits and the fleet formula") {
    Rng rng(11);
    RandomInstanceOptions opt;
    opt.maxProfit = 40;
    Instance base = randomInstance(rng, 15, opt);
    for (int c = 1; c <= base.nbCustomers; ++c)
        base.profit[static_cast<std::size_t>(c)] = 2.0 * rng.uniformInt(0, 20); // even values
    base.finalize();

    const Instance s2 = generateS2(5, base, GroupConfig::One);
    CHECK(s2.capacity == 500.0);
    for (int c = 1; c <= base.nbCustomers; ++c)
        CHECK(s2.profit[static_cast<std::size_t>(c)] ==
              0.5 * base.profit[static_cast<std::size_t>(c)]);

    // Fleet formula recomputed from the output instance with the brute-force Z_k.
    double sum = 0.0;
    for (int k = 0; k < s2.nbGroups(); ++k) sum += bruteForceZmin(s2, k) + s2.groupDemand(k);
    CHECK(s2.fleetSize == std::max(1, static_cast<int>(std::ceil(sum / 1000.0 - 1e-9))));

    // m is never below the trivial bound ceil(sum Z_k / Q).
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = generateS2(seed, base, GroupConfig::TwoRandom);
        double zSum = 0.0;
        for (int k = 0; k < inst.nbGroups(); ++k) zSum += bruteForceZmin(inst, k);
        CHECK(inst.fleetSize >= static_cast<int>(std::ceil(zSum / inst.capacity - 1e-9)));
    }
}

TEST_CASE("assign groups: configurations and level sampling") {
    Rng rng(17);
    const Instance base = cvrpBase(rng, 20);

    const Instance one = assignGroups(1, base, GroupConfig::One);
    CHECK(one.nbGroups() == 1);
    CHECK(one.groups[0].size() == 20);

    const std::set<double> levels = {0.45, 0.55, 0.65, 0.75, 0.85, 0.95, 1.0};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance five = assignGroups(seed, base, GroupConfig::FiveRandom);
        CHECK(five.nbGroups() == 5);
        for (double a : five.serviceLevel) CHECK(levels.count(a) == 1);
        CHECK(five.weight == five.demand);
    }

    const Instance tiny = cvrpBase(rng, 3);
    CHECK_THROWS(assignGroups(1, tiny, GroupConfig::FiveRandom));
}

TEST_CASE("assign groups: 5C keeps well-separated clusters whole") {
    InstanceSpec spec;
    spec.coords.push_back({500, 500});
    spec.demand.push_back(0);
    spec.profit.push_back(0);
    spec.weight.push_back(0);
    spec.groupOf.push_back(-1);
    const std::array<std::array<double, 2>, 5> centers = {
        {{0, 0}, {1000, 0}, {0, 1000}, {1000, 1000}, {500, 0}}};
    std::vector<int> blob;
    for (int b = 0; b < 5; ++b) {
        for (int i = 0; i < 6; ++i) {
            spec.coords.push_back({centers[static_cast<std::size_t>(b)][0] + i,
                                   centers[static_cast<std::size_t>(b)][1] + (i % 3)});
            spec.demand.push_back(1);
            spec.profit.push_back(0);
            spec.weight.push_back(1);
            spec.groupOf.push_back(0);
            blob.push_back(b);
        }
    }
    spec.serviceLevel = {1.0};
    spec.capacity = 100;
    spec.fleetSize = 3;
    const Instance inst = makeInstance(spec);

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance grouped = assignGroups(seed, inst, GroupConfig::FiveClustered);
        // All members of one spatial blob must share a group, and distinct
        // blobs must get distinct groups.
        std::set<std::pair<int, int>> pairs;
        for (int c = 1; c <= inst.nbCustomers; ++c)
            pairs.insert({blob[static_cast<std::size_t>(c - 1)],
                          grouped.groupOf[static_cast<std::size_t>(c)]});
        CHECK(pairs.size() == 5);
    }
}

TEST_CASE("reductions: VRPPFCC, CPTP and CVRP conventions") {
    Rng rng(23);
    RandomInstanceOptions opt;
    opt.nbGroups = 3;
    const Instance base = randomInstance(rng, 10, opt);

    const Instance pfcc = reduceVrppfcc(base);
    CHECK(pfcc.nbGroups() == 1);
    CHECK(pfcc.serviceLevel[0] == 0.0);
    CHECK(pfcc.rounding == DistanceRounding::Exact);
    CHECK(pfcc.profit == base.profit);

    const Instance cvrp = reduceCvrp(base);
    CHECK(cvrp.serviceLevel[0] == 1.0);
    CHECK(cvrp.totalProfit() == 0.0);
    CHECK(groupQuantities(cvrp, 0).rhsCeil ==
          static_cast<long long>(std::llround(cvrp.groupWeight(0))));

    // Any solution feasible under the reduction services every customer.
    const PenaltyState pen = PenaltyState::initial(1);
    std::vector<int> allButOne;
    for (int c = 2; c <= cvrp.nbCustomers; ++c) allButOne.push_back(c);
    CHECK_FALSE(checkFeasibility(buildSolution({allButOne}, cvrp, pen), cvrp).feasible);
    Instance roomy = cvrp;
    roomy.capacity = 1e6;
    roomy.finalize();
    std::vector<int> everyone = allButOne;
    everyone.push_back(1);
    CHECK(checkFeasibility(buildSolution({everyone}, roomy, pen), roomy).feasible);
}

TEST_CASE("reduction: GVRP levels make a single visit sufficient") {
    Rng rng(29);
    RandomInstanceOptions opt;
    opt.nbGroups = 4;
    opt.weightsEqualDemands = false;
    const Instance base = randomInstance(rng, 12, opt);
    const Instance gvrp = reduceGvrp(base);
    for (int k = 0; k < gvrp.nbGroups(); ++k) {
        double minW = 1e18;
        for (int c : gvrp.groups[static_cast<std::size_t>(k)])
            minW = std::min(minW, gvrp.weight[static_cast<std::size_t>(c)]);
        CHECK(groupQuantities(gvrp, k).rhsCeil == static_cast<long long>(std::llround(minW)));
    }
}

TEST_CASE("reduction: PVRP duplicates, thresholds and big-M edges") {
    InstanceSpec spec;
    spec.coords = {{0, 0}, {10, 0}, {0, 10}};
    spec.demand = {0, 4, 6};
    spec.profit = {0, 0, 0};
    spec.weight = {0, 4, 6};
    spec.groupOf = {-1, 0, 0};
    spec.serviceLevel = {1.0};
    spec.capacity = 10;
    spec.fleetSize = 1;
    const Instance base = makeInstance(spec);

    std::vector<PvrpCustomer> customers;
    customers.push_back({1, 2, {0, 1, 2}}); // f = 2 over 3 days
    customers.push_back({2, 1, {0, 1}});
    const Instance pvrp = reducePvrp(base, customers, 3, 1);

    CHECK(pvrp.nbCustomers == 5);
    CHECK(pvrp.nbGroups() == 2);
    CHECK(pvrp.groups[0].size() == 3);
    CHECK(groupQuantities(pvrp, 0).rhsCeil == 2); // ceil(2/3 * 3)
    CHECK(pvrp.fleetSize == 3);

    // Duplicates of customer 1 live on different days: their edges carry
    // M = n * max d_ij (here 5 * the (10,0)-(0,10) diagonal).
    const double bigM = 5.0 * std::hypot(10.0, 10.0);
    CHECK(pvrp.dist(1, 2) == doctest::Approx(bigM));
    CHECK(pvrp.dist(0, 1) == doctest::Approx(10.0));
    // Same-day duplicates of different customers keep their true distance.
    // Customer 1 day 0 is vertex 1; customer 2 day 0 is vertex 4.
    CHECK(pvrp.dist(1, 4) == doctest::Approx(std::hypot(10.0, 10.0)));

    std::vector<PvrpCustomer> bad;
    bad.push_back({1, 3, {0, 1}}); // frequency above the available days
    CHECK_THROWS(reducePvrp(base, bad, 3, 1));
}
