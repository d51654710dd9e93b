#include "vrpsl/LocalSearch.h"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vrpsl {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LocalSearch::LocalSearch(const Instance& instance, int granularityArg)
    : inst(instance),
      granularity(granularityArg > 0 ? std::min(granularityArg, inst.nbCustomers - 1)
                                     : defaultGranularity(inst)) {
    const int n = inst.nbCustomers;
    neighbors.assign(static_cast<std::size_t>(n) + 1, {});
    std::vector<int> order;
    for (int u = 1; u <= n; ++u) {
        order.clear();
        for (int v = 1; v <= n; ++v)
            if (v != u) order.push_back(v);
        const auto cut = std::min<std::size_t>(static_cast<std::size_t>(std::max(granularity, 0)),
                                               order.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut),
                          order.end(), [&](int a, int b) {
                              const double da = inst.dist(u, a), db = inst.dist(u, b);
                              return da < db || (da == db && a < b);
                          });
        order.resize(cut);
        neighbors[static_cast<std::size_t>(u)] = order;
    }

    // Static descriptor list; applicability is decided at evaluation time.
    for (int u = 1; u <= n; ++u) {
        moveList.push_back({MoveKind::Remove, u, 0, 0});
        moveList.push_back({MoveKind::Relocate1, u, 0, 0});
        moveList.push_back({MoveKind::Relocate2, u, 0, 0});
        moveList.push_back({MoveKind::Add, 0, u, 0});
        for (int v : neighbors[static_cast<std::size_t>(u)]) {
            moveList.push_back({MoveKind::TwoOpt, u, v, 0});
            moveList.push_back({MoveKind::TwoOptStar, u, v, 0});
            moveList.push_back({MoveKind::TwoOptStar, u, v, 1});
            moveList.push_back({MoveKind::Swap11, u, v, 0});
            moveList.push_back({MoveKind::Swap21, u, v, 0});
            moveList.push_back({MoveKind::Swap22, u, v, 0});
            moveList.push_back({MoveKind::Relocate1, u, v, 0});
            moveList.push_back({MoveKind::Relocate2, u, v, 0});
            moveList.push_back({MoveKind::Add, u, v, 0});
            moveList.push_back({MoveKind::Replace, u, v, 0});
        }
    }

    groupTotal.assign(static_cast<std::size_t>(inst.nbGroups()), 0.0);
    for (int k = 0; k < inst.nbGroups(); ++k) groupTotal[static_cast<std::size_t>(k)] = inst.groupWeight(k);
}

void LocalSearch::load(const Solution& sol, const PenaltyState& penalties) {
    pen = penalties;
    const auto m = static_cast<std::size_t>(inst.fleetSize);
    std::size_t nonEmpty = 0;
    for (const auto& r : sol.routes)
        if (!r.visits.empty()) ++nonEmpty;
    if (nonEmpty > m) throw std::invalid_argument("solution uses more routes than the fleet allows");

    slots.assign(m, {});
    slotLoad.assign(m, 0.0);
    cumLoad.assign(m, {});
    routeOf.assign(static_cast<std::size_t>(inst.nbCustomers) + 1, -1);
    posOf.assign(static_cast<std::size_t>(inst.nbCustomers) + 1, -1);
    groupVisited.assign(static_cast<std::size_t>(inst.nbGroups()), 0.0);
    visitedCount = 0;

    std::size_t slot = 0;
    for (const auto& r : sol.routes) {
        if (r.visits.empty()) continue;
        slots[slot] = r.visits;
        rebuildSlot(static_cast<int>(slot));
        ++slot;
    }
    for (int c = 1; c <= inst.nbCustomers; ++c) {
        if (routeOf[static_cast<std::size_t>(c)] >= 0) {
            ++visitedCount;
            groupVisited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(c)])] +=
                inst.weight[static_cast<std::size_t>(c)];
        }
    }
}

void LocalSearch::rebuildSlot(int r) {
    auto& visits = slots[static_cast<std::size_t>(r)];
    auto& cum = cumLoad[static_cast<std::size_t>(r)];
    cum.assign(visits.size(), 0.0);
    double load = 0.0;
    for (std::size_t i = 0; i < visits.size(); ++i) {
        const int c = visits[i];
        load += inst.demand[static_cast<std::size_t>(c)];
        cum[i] = load;
        routeOf[static_cast<std::size_t>(c)] = r;
        posOf[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
    slotLoad[static_cast<std::size_t>(r)] = load;
}

void LocalSearch::markUnvisited(int u) {
    routeOf[static_cast<std::size_t>(u)] = -1;
    posOf[static_cast<std::size_t>(u)] = -1;
}

int LocalSearch::prevOf(int u) const {
    const int r = routeOf[static_cast<std::size_t>(u)];
    const int i = posOf[static_cast<std::size_t>(u)];
    return i == 0 ? 0 : slots[static_cast<std::size_t>(r)][static_cast<std::size_t>(i - 1)];
}

int LocalSearch::nextOf(int u) const {
    const int r = routeOf[static_cast<std::size_t>(u)];
    const auto i = static_cast<std::size_t>(posOf[static_cast<std::size_t>(u)]);
    const auto& route = slots[static_cast<std::size_t>(r)];
    return i + 1 == route.size() ? 0 : route[i + 1];
}

int LocalSearch::firstEmptySlot() const {
    for (std::size_t r = 0; r < slots.size(); ++r)
        if (slots[r].empty()) return static_cast<int>(r);
    return -1;
}

double LocalSearch::prefixLoad(int u) const {
    return cumLoad[static_cast<std::size_t>(routeOf[static_cast<std::size_t>(u)])]
                  [static_cast<std::size_t>(posOf[static_cast<std::size_t>(u)])];
}

double LocalSearch::capDelta(double oldLoad, double newLoad) const {
    return pen.wCapacity *
           (std::max(0.0, newLoad - inst.capacity) - std::max(0.0, oldLoad - inst.capacity));
}

double LocalSearch::levelDelta(int group, double weightChange) const {
    const double total = groupTotal[static_cast<std::size_t>(group)];
    if (total <= 0.0) return 0.0;
    const double alpha = inst.serviceLevel[static_cast<std::size_t>(group)];
    const double before = groupVisited[static_cast<std::size_t>(group)] / total;
    const double after = (groupVisited[static_cast<std::size_t>(group)] + weightChange) / total;
    return pen.wService[static_cast<std::size_t>(group)] *
           (std::max(0.0, alpha - after) - std::max(0.0, alpha - before));
}

double LocalSearch::deltaCost(const Move& move) const {
    switch (move.kind) {
        case MoveKind::TwoOpt: return deltaTwoOpt(move.u, move.v);
        case MoveKind::TwoOptStar: return deltaTwoOptStar(move.u, move.v, move.variant);
        case MoveKind::Swap11: return deltaSwap11(move.u, move.v);
        case MoveKind::Swap21: return deltaSwap21(move.u, move.v);
        case MoveKind::Swap22: return deltaSwap22(move.u, move.v);
        case MoveKind::Relocate1: return deltaRelocate1(move.u, move.v);
        case MoveKind::Relocate2: return deltaRelocate2(move.u, move.v);
        case MoveKind::Remove: return deltaRemove(move.u);
        case MoveKind::Add: return deltaAdd(move.u, move.v);
        case MoveKind::Replace: return deltaReplace(move.u, move.v);
    }
    return kInf;
}

double LocalSearch::deltaTwoOpt(int u, int v) const {
    if (u == v) return kInf;
    if (routeOf[static_cast<std::size_t>(u)] < 0 || routeOf[static_cast<std::size_t>(v)] < 0)
        return kInf;
    if (routeOf[static_cast<std::size_t>(u)] != routeOf[static_cast<std::size_t>(v)]) return kInf;
    if (posOf[static_cast<std::size_t>(u)] > posOf[static_cast<std::size_t>(v)]) std::swap(u, v);
    const int nu = nextOf(u), nv = nextOf(v);
    if (nu == v) return 0.0; // reversing a single visit is the identity
    return inst.dist(u, v) + inst.dist(nu, nv) - inst.dist(u, nu) - inst.dist(v, nv);
}

double LocalSearch::deltaTwoOptStar(int u, int v, int variant) const {
    const int ru = routeOf[static_cast<std::size_t>(u)], rv = routeOf[static_cast<std::size_t>(v)];
    if (ru < 0 || rv < 0 || ru == rv) return kInf;
    const int nu = nextOf(u), nv = nextOf(v);
    const double headU = prefixLoad(u), headV = prefixLoad(v);
    const double loadU = slotLoad[static_cast<std::size_t>(ru)];
    const double loadV = slotLoad[static_cast<std::size_t>(rv)];
    double dDist, newLoad1, newLoad2;
    if (variant == 0) {
        // Tails swapped: ...u -> tail(v), ...v -> tail(u).
        dDist = inst.dist(u, nv) + inst.dist(v, nu) - inst.dist(u, nu) - inst.dist(v, nv);
        newLoad1 = headU + (loadV - headV);
        newLoad2 = headV + (loadU - headU);
    } else {
        // Heads joined: head(u) + reversed head(v), reversed tail(u) + tail(v).
        dDist = inst.dist(u, v) + inst.dist(nu, nv) - inst.dist(u, nu) - inst.dist(v, nv);
        newLoad1 = headU + headV;
        newLoad2 = (loadU - headU) + (loadV - headV);
    }
    return dDist + capDelta(loadU, newLoad1) + capDelta(loadV, newLoad2);
}

double LocalSearch::deltaSwap11(int u, int v) const {
    if (u == v) return kInf;
    const int ru = routeOf[static_cast<std::size_t>(u)], rv = routeOf[static_cast<std::size_t>(v)];
    if (ru < 0 || rv < 0) return kInf;
    const int pu = prevOf(u), nu = nextOf(u);
    const int pv = prevOf(v), nv = nextOf(v);
    double dDist;
    if (nu == v) // adjacent: ...pu,u,v,nv...
        dDist = inst.dist(pu, v) + inst.dist(u, nv) - inst.dist(pu, u) - inst.dist(v, nv);
    else if (nv == u) // adjacent: ...pv,v,u,nu...
        dDist = inst.dist(pv, u) + inst.dist(v, nu) - inst.dist(pv, v) - inst.dist(u, nu);
    else
        dDist = inst.dist(pu, v) + inst.dist(v, nu) - inst.dist(pu, u) - inst.dist(u, nu) +
                inst.dist(pv, u) + inst.dist(u, nv) - inst.dist(pv, v) - inst.dist(v, nv);
    if (ru == rv) return dDist;
    const double qu = inst.demand[static_cast<std::size_t>(u)];
    const double qv = inst.demand[static_cast<std::size_t>(v)];
    return dDist + capDelta(slotLoad[static_cast<std::size_t>(ru)],
                            slotLoad[static_cast<std::size_t>(ru)] - qu + qv) +
           capDelta(slotLoad[static_cast<std::size_t>(rv)],
                    slotLoad[static_cast<std::size_t>(rv)] - qv + qu);
}

double LocalSearch::deltaSwap21(int u, int v) const {
    const int ru = routeOf[static_cast<std::size_t>(u)], rv = routeOf[static_cast<std::size_t>(v)];
    if (ru < 0 || rv < 0) return kInf;
    const int x = nextOf(u);
    if (x == 0 || v == u || v == x) return kInf;
    const int pu = prevOf(u), nx = nextOf(x);
    const int pv = prevOf(v), nv = nextOf(v);
    double dDist;
    if (v == nx) // ...pu,u,x,v,nv... -> ...pu,v,u,x,nv...
        dDist = inst.dist(pu, v) + inst.dist(v, u) + inst.dist(x, nv) - inst.dist(pu, u) -
                inst.dist(x, v) - inst.dist(v, nv);
    else if (u == nv) // ...pv,v,u,x,nx... -> ...pv,u,x,v,nx...
        dDist = inst.dist(pv, u) + inst.dist(x, v) + inst.dist(v, nx) - inst.dist(pv, v) -
                inst.dist(v, u) - inst.dist(x, nx);
    else
        dDist = inst.dist(pu, v) + inst.dist(v, nx) - inst.dist(pu, u) - inst.dist(x, nx) +
                inst.dist(pv, u) + inst.dist(x, nv) - inst.dist(pv, v) - inst.dist(v, nv);
    if (ru == rv) return dDist;
    const double seg = inst.demand[static_cast<std::size_t>(u)] + inst.demand[static_cast<std::size_t>(x)];
    const double qv = inst.demand[static_cast<std::size_t>(v)];
    return dDist + capDelta(slotLoad[static_cast<std::size_t>(ru)],
                            slotLoad[static_cast<std::size_t>(ru)] - seg + qv) +
           capDelta(slotLoad[static_cast<std::size_t>(rv)],
                    slotLoad[static_cast<std::size_t>(rv)] - qv + seg);
}

double LocalSearch::deltaSwap22(int u, int v) const {
    const int ru = routeOf[static_cast<std::size_t>(u)], rv = routeOf[static_cast<std::size_t>(v)];
    if (ru < 0 || rv < 0) return kInf;
    const int x = nextOf(u), y = nextOf(v);
    if (x == 0 || y == 0 || v == u || v == x || y == u) return kInf;
    const int pu = prevOf(u), nx = nextOf(x);
    const int pv = prevOf(v), ny = nextOf(y);
    double dDist;
    if (v == nx) // ...pu,u,x,v,y,ny... -> ...pu,v,y,u,x,ny...
        dDist = inst.dist(pu, v) + inst.dist(y, u) + inst.dist(x, ny) - inst.dist(pu, u) -
                inst.dist(x, v) - inst.dist(y, ny);
    else if (u == ny) // ...pv,v,y,u,x,nx... -> ...pv,u,x,v,y,nx...
        dDist = inst.dist(pv, u) + inst.dist(x, v) + inst.dist(y, nx) - inst.dist(pv, v) -
                inst.dist(y, u) - inst.dist(x, nx);
    else
        dDist = inst.dist(pu, v) + inst.dist(y, nx) - inst.dist(pu, u) - inst.dist(x, nx) +
                inst.dist(pv, u) + inst.dist(x, ny) - inst.dist(pv, v) - inst.dist(y, ny);
    if (ru == rv) return dDist;
    const double segU = inst.demand[static_cast<std::size_t>(u)] + inst.demand[static_cast<std::size_t>(x)];
    const double segV = inst.demand[static_cast<std::size_t>(v)] + inst.demand[static_cast<std::size_t>(y)];
    return dDist + capDelta(slotLoad[static_cast<std::size_t>(ru)],
                            slotLoad[static_cast<std::size_t>(ru)] - segU + segV) +
           capDelta(slotLoad[static_cast<std::size_t>(rv)],
                    slotLoad[static_cast<std::size_t>(rv)] - segV + segU);
}

double LocalSearch::deltaRelocate1(int u, int v) const {
    const int ru = routeOf[static_cast<std::size_t>(u)];
    if (ru < 0 || u == v) return kInf;
    const int pu = prevOf(u), nu = nextOf(u);
    const double removal = inst.dist(pu, nu) - inst.dist(pu, u) - inst.dist(u, nu);
    const double qu = inst.demand[static_cast<std::size_t>(u)];
    if (v == 0) {
        if (firstEmptySlot() < 0) return kInf;
        if (pu == 0 && nu == 0) return 0.0; // singleton to another empty slot
        return removal + 2.0 * inst.dist(0, u) +
               capDelta(slotLoad[static_cast<std::size_t>(ru)],
                        slotLoad[static_cast<std::size_t>(ru)] - qu) +
               capDelta(0.0, qu);
    }
    const int rv = routeOf[static_cast<std::size_t>(v)];
    if (rv < 0) return kInf;
    if (v == pu) return 0.0; // reinsertion at the same position
    const int nv = nextOf(v);
    const double insertion = inst.dist(v, u) + inst.dist(u, nv) - inst.dist(v, nv);
    if (ru == rv) return removal + insertion;
    return removal + insertion +
           capDelta(slotLoad[static_cast<std::size_t>(ru)],
                    slotLoad[static_cast<std::size_t>(ru)] - qu) +
           capDelta(slotLoad[static_cast<std::size_t>(rv)],
                    slotLoad[static_cast<std::size_t>(rv)] + qu);
}

double LocalSearch::deltaRelocate2(int u, int v) const {
    const int ru = routeOf[static_cast<std::size_t>(u)];
    if (ru < 0) return kInf;
    const int x = nextOf(u);
    if (x == 0 || v == u || v == x) return kInf;
    const int pu = prevOf(u), nx = nextOf(x);
    const double removal = inst.dist(pu, nx) - inst.dist(pu, u) - inst.dist(x, nx);
    const double seg = inst.demand[static_cast<std::size_t>(u)] + inst.demand[static_cast<std::size_t>(x)];
    if (v == 0) {
        if (firstEmptySlot() < 0) return kInf;
        return removal + inst.dist(0, u) + inst.dist(x, 0) +
               capDelta(slotLoad[static_cast<std::size_t>(ru)],
                        slotLoad[static_cast<std::size_t>(ru)] - seg) +
               capDelta(0.0, seg);
    }
    const int rv = routeOf[static_cast<std::size_t>(v)];
    if (rv < 0) return kInf;
    if (v == pu) return 0.0;
    const int nv = nextOf(v);
    const double insertion = inst.dist(v, u) + inst.dist(x, nv) - inst.dist(v, nv);
    if (ru == rv) return removal + insertion;
    return removal + insertion +
           capDelta(slotLoad[static_cast<std::size_t>(ru)],
                    slotLoad[static_cast<std::size_t>(ru)] - seg) +
           capDelta(slotLoad[static_cast<std::size_t>(rv)],
                    slotLoad[static_cast<std::size_t>(rv)] + seg);
}

double LocalSearch::deltaRemove(int u) const {
    const int ru = routeOf[static_cast<std::size_t>(u)];
    if (ru < 0) return kInf;
    const int pu = prevOf(u), nu = nextOf(u);
    const double qu = inst.demand[static_cast<std::size_t>(u)];
    return inst.dist(pu, nu) - inst.dist(pu, u) - inst.dist(u, nu) +
           inst.profit[static_cast<std::size_t>(u)] +
           levelDelta(inst.groupOf[static_cast<std::size_t>(u)],
                      -inst.weight[static_cast<std::size_t>(u)]) +
           capDelta(slotLoad[static_cast<std::size_t>(ru)],
                    slotLoad[static_cast<std::size_t>(ru)] - qu);
}

double LocalSearch::deltaAdd(int u, int v) const {
    if (routeOf[static_cast<std::size_t>(v)] >= 0) return kInf;
    const double qv = inst.demand[static_cast<std::size_t>(v)];
    const double gain = -inst.profit[static_cast<std::size_t>(v)] +
                        levelDelta(inst.groupOf[static_cast<std::size_t>(v)],
                                   inst.weight[static_cast<std::size_t>(v)]);
    if (u == 0) {
        // Open a fresh route for v; also the only entry point when nothing
        // is visited yet.
        if (firstEmptySlot() < 0) return kInf;
        return 2.0 * inst.dist(0, v) + gain + capDelta(0.0, qv);
    }
    const int ru = routeOf[static_cast<std::size_t>(u)];
    if (ru < 0) return kInf;
    const int nu = nextOf(u);
    return inst.dist(u, v) + inst.dist(v, nu) - inst.dist(u, nu) + gain +
           capDelta(slotLoad[static_cast<std::size_t>(ru)],
                    slotLoad[static_cast<std::size_t>(ru)] + qv);
}

double LocalSearch::deltaReplace(int u, int v) const {
    const int ru = routeOf[static_cast<std::size_t>(u)];
    if (ru < 0 || routeOf[static_cast<std::size_t>(v)] >= 0) return kInf;
    const int pu = prevOf(u), nu = nextOf(u);
    const int gu = inst.groupOf[static_cast<std::size_t>(u)];
    const int gv = inst.groupOf[static_cast<std::size_t>(v)];
    double level;
    if (gu == gv) {
        level = levelDelta(gu, inst.weight[static_cast<std::size_t>(v)] -
                                   inst.weight[static_cast<std::size_t>(u)]);
    } else {
        level = levelDelta(gu, -inst.weight[static_cast<std::size_t>(u)]) +
                levelDelta(gv, inst.weight[static_cast<std::size_t>(v)]);
    }
    return inst.dist(pu, v) + inst.dist(v, nu) - inst.dist(pu, u) - inst.dist(u, nu) +
           inst.profit[static_cast<std::size_t>(u)] - inst.profit[static_cast<std::size_t>(v)] +
           level +
           capDelta(slotLoad[static_cast<std::size_t>(ru)],
                    slotLoad[static_cast<std::size_t>(ru)] -
                        inst.demand[static_cast<std::size_t>(u)] +
                        inst.demand[static_cast<std::size_t>(v)]);
}

void LocalSearch::apply(const Move& move) {
    const int u = move.u, v = move.v;
    auto route = [&](int c) { return routeOf[static_cast<std::size_t>(c)]; };
    auto pos = [&](int c) { return posOf[static_cast<std::size_t>(c)]; };

    switch (move.kind) {
        case MoveKind::TwoOpt: {
            int a = u, b = v;
            if (pos(a) > pos(b)) std::swap(a, b);
            auto& visits = slots[static_cast<std::size_t>(route(a))];
            std::reverse(visits.begin() + pos(a) + 1, visits.begin() + pos(b) + 1);
            rebuildSlot(route(a));
            break;
        }
        case MoveKind::TwoOptStar: {
            const int ru = route(u), rv = route(v);
            auto& a = slots[static_cast<std::size_t>(ru)];
            auto& b = slots[static_cast<std::size_t>(rv)];
            std::vector<int> headU(a.begin(), a.begin() + pos(u) + 1);
            std::vector<int> tailU(a.begin() + pos(u) + 1, a.end());
            std::vector<int> headV(b.begin(), b.begin() + pos(v) + 1);
            std::vector<int> tailV(b.begin() + pos(v) + 1, b.end());
            if (move.variant == 0) {
                a = headU;
                a.insert(a.end(), tailV.begin(), tailV.end());
                b = headV;
                b.insert(b.end(), tailU.begin(), tailU.end());
            } else {
                a = headU;
                a.insert(a.end(), headV.rbegin(), headV.rend());
                b.assign(tailU.rbegin(), tailU.rend());
                b.insert(b.end(), tailV.begin(), tailV.end());
            }
            rebuildSlot(ru);
            rebuildSlot(rv);
            break;
        }
        case MoveKind::Swap11: {
            const int ru = route(u), rv = route(v);
            slots[static_cast<std::size_t>(ru)][static_cast<std::size_t>(pos(u))] = v;
            slots[static_cast<std::size_t>(rv)][static_cast<std::size_t>(pos(v))] = u;
            rebuildSlot(ru);
            if (rv != ru) rebuildSlot(rv);
            break;
        }
        case MoveKind::Swap21:
        case MoveKind::Swap22: {
            const int lenU = 2;
            const int lenV = move.kind == MoveKind::Swap21 ? 1 : 2;
            const int ru = route(u), rv = route(v);
            auto& a = slots[static_cast<std::size_t>(ru)];
            auto& b = slots[static_cast<std::size_t>(rv)];
            std::vector<int> segU(a.begin() + pos(u), a.begin() + pos(u) + lenU);
            std::vector<int> segV(b.begin() + pos(v), b.begin() + pos(v) + lenV);
            if (ru == rv) {
                std::vector<int> rebuilt;
                rebuilt.reserve(a.size());
                for (int i = 0; i < static_cast<int>(a.size());) {
                    if (i == pos(u)) {
                        rebuilt.insert(rebuilt.end(), segV.begin(), segV.end());
                        i += lenU;
                    } else if (i == pos(v)) {
                        rebuilt.insert(rebuilt.end(), segU.begin(), segU.end());
                        i += lenV;
                    } else {
                        rebuilt.push_back(a[static_cast<std::size_t>(i)]);
                        ++i;
                    }
                }
                a = rebuilt;
                rebuildSlot(ru);
            } else {
                a.erase(a.begin() + pos(u), a.begin() + pos(u) + lenU);
                a.insert(a.begin() + pos(u), segV.begin(), segV.end());
                b.erase(b.begin() + pos(v), b.begin() + pos(v) + lenV);
                b.insert(b.begin() + pos(v), segU.begin(), segU.end());
                rebuildSlot(ru);
                rebuildSlot(rv);
            }
            break;
        }
        case MoveKind::Relocate1:
        case MoveKind::Relocate2: {
            const int len = move.kind == MoveKind::Relocate1 ? 1 : 2;
            const int ru = route(u);
            auto& a = slots[static_cast<std::size_t>(ru)];
            std::vector<int> seg(a.begin() + pos(u), a.begin() + pos(u) + len);
            a.erase(a.begin() + pos(u), a.begin() + pos(u) + len);
            if (v == 0) {
                const int e = firstEmptySlot();
                slots[static_cast<std::size_t>(e)] = seg;
                rebuildSlot(ru);
                rebuildSlot(e);
            } else {
                const int rv = route(v);
                auto& b = slots[static_cast<std::size_t>(rv)];
                int at = pos(v);
                if (rv == ru && at > pos(u)) at -= len;
                b.insert(b.begin() + at + 1, seg.begin(), seg.end());
                rebuildSlot(ru);
                if (rv != ru) rebuildSlot(rv);
            }
            break;
        }
        case MoveKind::Remove: {
            const int ru = route(u);
            auto& a = slots[static_cast<std::size_t>(ru)];
            a.erase(a.begin() + pos(u));
            groupVisited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(u)])] -=
                inst.weight[static_cast<std::size_t>(u)];
            --visitedCount;
            markUnvisited(u);
            rebuildSlot(ru);
            break;
        }
        case MoveKind::Add: {
            int target, at;
            if (u == 0) {
                target = firstEmptySlot();
                at = 0;
            } else {
                target = route(u);
                at = pos(u) + 1;
            }
            auto& a = slots[static_cast<std::size_t>(target)];
            a.insert(a.begin() + at, v);
            groupVisited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(v)])] +=
                inst.weight[static_cast<std::size_t>(v)];
            ++visitedCount;
            rebuildSlot(target);
            break;
        }
        case MoveKind::Replace: {
            const int ru = route(u);
            slots[static_cast<std::size_t>(ru)][static_cast<std::size_t>(pos(u))] = v;
            groupVisited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(u)])] -=
                inst.weight[static_cast<std::size_t>(u)];
            groupVisited[static_cast<std::size_t>(inst.groupOf[static_cast<std::size_t>(v)])] +=
                inst.weight[static_cast<std::size_t>(v)];
            markUnvisited(u);
            rebuildSlot(ru);
            break;
        }
    }
}

void LocalSearch::runToLocalOptimum(Rng& rng) {
    std::vector<std::size_t> order(moveList.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    bool improved = true;
    int guard = 0;
    while (improved && ++guard < 10000) {
        improved = false;
        rng.shuffle(order);
        for (const std::size_t idx : order) {
            const Move& move = moveList[idx];
            const double delta = deltaCost(move);
            if (delta < -kImproveEps) {
                apply(move);
                improved = true;
            }
        }
    }
}

Solution LocalSearch::extract() const {
    Solution sol;
    for (const auto& visits : slots) {
        if (visits.empty()) continue;
        Route r;
        r.visits = visits;
        sol.routes.push_back(std::move(r));
    }
    sol.syncGiantTour();
    sol.evaluate(inst, pen);
    return sol;
}

Solution LocalSearch::educate(const Solution& sol, const PenaltyState& penalties, Rng& rng) {
    load(sol, penalties);
    runToLocalOptimum(rng);
    return extract();
}

Solution LocalSearch::repair(const Solution& sol, const PenaltyState& penalties, Rng& rng) {
    Solution tenfold = educate(sol, penalties.scaled(10.0), rng);
    if (checkFeasibility(tenfold, inst).feasible) {
        tenfold.evaluate(inst, penalties);
        return tenfold;
    }
    Solution hundredfold = educate(tenfold, penalties.scaled(100.0), rng);

    // The higher-penalty optimum can in rare cases trade one large violation
    // for several small ones; never hand back more broken constraints than
    // we were given.
    Solution entry = sol;
    entry.evaluate(inst, penalties);
    tenfold.evaluate(inst, penalties);
    hundredfold.evaluate(inst, penalties);
    Solution* best = &hundredfold;
    for (Solution* cand : {&tenfold, &entry}) {
        const auto a = checkFeasibility(*cand, inst).violations.size();
        const auto b = checkFeasibility(*best, inst).violations.size();
        if (a < b || (a == b && cand->cost < best->cost)) best = cand;
    }
    return *best;
}

} // namespace vrpsl
