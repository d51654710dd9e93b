#include "vrpsl/Pricing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vrpsl {

namespace {

void validatePricingInstance(const Instance& inst) {
    if (inst.nbCustomers > kMaxPricingCustomers)
        throw std::invalid_argument("pricing supports at most " +
                                    std::to_string(kMaxPricingCustomers) + " customers");
    for (int c = 1; c <= inst.nbCustomers; ++c) {
        const double q = inst.demand[static_cast<std::size_t>(c)];
        if (!isIntegral(q) || q < 1.0)
            throw std::invalid_argument("pricing requires positive integer demands");
    }
    if (inst.capacity <= 0.0) throw std::invalid_argument("pricing requires positive capacity");
}

struct Label {
    int vertex = 0;
    int load = 0;
    double rcost = 0.0;
    int parent = -1;
    NgMemory memory;
    bool dead = false;
};

std::vector<int> reconstruct(const std::vector<Label>& arena, int idx) {
    std::vector<int> visits;
    for (int cur = idx; cur >= 0; cur = arena[static_cast<std::size_t>(cur)].parent)
        visits.push_back(arena[static_cast<std::size_t>(cur)].vertex);
    std::reverse(visits.begin(), visits.end());
    return visits;
}

} // namespace

NgConfig NgConfig::nearest(const Instance& inst, int ngSize) {
    validatePricingInstance(inst);
    NgConfig cfg;
    cfg.ngSize = ngSize;
    cfg.masks.assign(static_cast<std::size_t>(inst.nbCustomers) + 1, NgMemory{});
    for (int i = 1; i <= inst.nbCustomers; ++i) {
        std::vector<int> others;
        for (int j = 1; j <= inst.nbCustomers; ++j)
            if (j != i) others.push_back(j);
        const auto keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(ngSize - 1, 0)),
                                                others.size());
        std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(keep),
                          others.end(), [&](int a, int b) {
                              const double da = inst.dist(i, a), db = inst.dist(i, b);
                              return da < db || (da == db && a < b);
                          });
        auto& mask = cfg.masks[static_cast<std::size_t>(i)];
        mask.set(static_cast<std::size_t>(i));
        for (std::size_t t = 0; t < keep; ++t) mask.set(static_cast<std::size_t>(others[t]));
    }
    return cfg;
}

NgConfig NgConfig::full(const Instance& inst) {
    validatePricingInstance(inst);
    NgConfig cfg;
    cfg.ngSize = inst.nbCustomers;
    cfg.masks.assign(static_cast<std::size_t>(inst.nbCustomers) + 1, NgMemory{});
    for (int i = 1; i <= inst.nbCustomers; ++i) {
        auto& mask = cfg.masks[static_cast<std::size_t>(i)];
        for (int j = 1; j <= inst.nbCustomers; ++j) mask.set(static_cast<std::size_t>(j));
    }
    return cfg;
}

NgConfig NgConfig::minimal(const Instance& inst) {
    validatePricingInstance(inst);
    NgConfig cfg;
    cfg.ngSize = 1;
    cfg.masks.assign(static_cast<std::size_t>(inst.nbCustomers) + 1, NgMemory{});
    for (int i = 1; i <= inst.nbCustomers; ++i)
        cfg.masks[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(i));
    return cfg;
}

double edgeReducedCost(int i, int j, const Instance& inst, const DualVector& duals) {
    return inst.dist(i, j) - 0.5 * (duals.betaOf(i) + duals.betaOf(j)) -
           duals.rhoOf(i, j, inst.nbCustomers);
}

double routeReducedCost(const std::vector<int>& visits, const Instance& inst,
                        const DualVector& duals) {
    if (visits.empty()) return 0.0;
    double total = edgeReducedCost(0, visits.front(), inst, duals);
    for (std::size_t i = 0; i + 1 < visits.size(); ++i)
        total += edgeReducedCost(visits[i], visits[i + 1], inst, duals);
    total += edgeReducedCost(visits.back(), 0, inst, duals);
    return total;
}

std::vector<PricedRoute> priceNgRoutes(const Instance& inst, const DualVector& duals,
                                       const NgConfig& ng, const PricingOptions& opts) {
    validatePricingInstance(inst);
    const int n = inst.nbCustomers;
    const int capInt = static_cast<int>(std::floor(inst.capacity + 1e-9));

    std::vector<Label> arena;
    std::vector<std::vector<int>> byLoad(static_cast<std::size_t>(capInt) + 1);
    std::vector<std::vector<int>> atVertex(static_cast<std::size_t>(n) + 1);

    auto tryInsert = [&](int vertex, int load, double rcost, int parent, const NgMemory& memory) {
        auto& bucket = atVertex[static_cast<std::size_t>(vertex)];
        if (opts.useDominance) {
            for (int idx : bucket) {
                const Label& other = arena[static_cast<std::size_t>(idx)];
                if (other.dead || other.load > load) continue;
                if (other.rcost <= rcost + 1e-12 && (other.memory & ~memory).none())
                    return;
            }
            // Unprocessed heavier (or equal-load) siblings may be dominated in turn.
            for (int idx : bucket) {
                Label& other = arena[static_cast<std::size_t>(idx)];
                if (other.dead || other.load < load) continue;
                if (rcost <= other.rcost + 1e-12 && (memory & ~other.memory).none())
                    other.dead = true;
            }
        }
        Label label;
        label.vertex = vertex;
        label.load = load;
        label.rcost = rcost;
        label.parent = parent;
        label.memory = memory;
        arena.push_back(label);
        const int idx = static_cast<int>(arena.size()) - 1;
        bucket.push_back(idx);
        byLoad[static_cast<std::size_t>(load)].push_back(idx);
    };

    for (int j = 1; j <= n; ++j) {
        const int qj = static_cast<int>(std::llround(inst.demand[static_cast<std::size_t>(j)]));
        if (qj > capInt) continue;
        NgMemory memory;
        memory.set(static_cast<std::size_t>(j));
        tryInsert(j, qj, edgeReducedCost(0, j, inst, duals), -1, memory);
    }

    std::vector<PricedRoute> routes;
    for (int load = 1; load <= capInt; ++load) {
        // Buckets can grow while processing same-load extensions of weight 0;
        // demands are >= 1 so the index loop below is safe.
        for (std::size_t b = 0; b < byLoad[static_cast<std::size_t>(load)].size(); ++b) {
            const int idx = byLoad[static_cast<std::size_t>(load)][b];
            if (arena[static_cast<std::size_t>(idx)].dead) continue;
            const Label label = arena[static_cast<std::size_t>(idx)]; // copy: arena reallocates
            const double closed = label.rcost + edgeReducedCost(label.vertex, 0, inst, duals);
            if (closed < opts.threshold) {
                PricedRoute route;
                route.visits = reconstruct(arena, idx);
                route.reducedCost = closed;
                route.load = label.load;
                routes.push_back(std::move(route));
                if (routes.size() > opts.maxRoutes * 4)
                    throw std::runtime_error("pricing exceeded the route buffer");
            }
            for (int j = 1; j <= n; ++j) {
                if (j == label.vertex) continue;
                if (label.memory.test(static_cast<std::size_t>(j))) continue;
                const int qj =
                    static_cast<int>(std::llround(inst.demand[static_cast<std::size_t>(j)]));
                if (label.load + qj > capInt) continue;
                NgMemory memory = (label.memory & ng.masks[static_cast<std::size_t>(j)]);
                memory.set(static_cast<std::size_t>(j));
                tryInsert(j, label.load + qj,
                          label.rcost + edgeReducedCost(label.vertex, j, inst, duals), idx, memory);
            }
        }
    }

    std::sort(routes.begin(), routes.end(),
              [](const PricedRoute& a, const PricedRoute& b) { return a.reducedCost < b.reducedCost; });
    if (routes.size() > opts.maxRoutes) routes.resize(opts.maxRoutes);
    return routes;
}

std::vector<PricedRoute> priceHeuristic(const Instance& inst, const DualVector& duals,
                                        const NgConfig& ng, const PricingOptions& opts) {
    validatePricingInstance(inst);
    const int n = inst.nbCustomers;
    const int capInt = static_cast<int>(std::floor(inst.capacity + 1e-9));

    // One label per (vertex, load): index into the arena or -1.
    std::vector<Label> arena;
    std::vector<std::vector<int>> best(static_cast<std::size_t>(n) + 1,
                                       std::vector<int>(static_cast<std::size_t>(capInt) + 1, -1));

    auto consider = [&](int vertex, int load, double rcost, int parent, const NgMemory& memory) {
        int& slot = best[static_cast<std::size_t>(vertex)][static_cast<std::size_t>(load)];
        if (slot >= 0 && arena[static_cast<std::size_t>(slot)].rcost <= rcost) return;
        Label label;
        label.vertex = vertex;
        label.load = load;
        label.rcost = rcost;
        label.parent = parent;
        label.memory = memory;
        arena.push_back(label);
        slot = static_cast<int>(arena.size()) - 1;
    };

    for (int j = 1; j <= n; ++j) {
        const int qj = static_cast<int>(std::llround(inst.demand[static_cast<std::size_t>(j)]));
        if (qj > capInt) continue;
        NgMemory memory;
        memory.set(static_cast<std::size_t>(j));
        consider(j, qj, edgeReducedCost(0, j, inst, duals), -1, memory);
    }

    for (int load = 1; load <= capInt; ++load) {
        for (int v = 1; v <= n; ++v) {
            const int idx = best[static_cast<std::size_t>(v)][static_cast<std::size_t>(load)];
            if (idx < 0) continue;
            const Label label = arena[static_cast<std::size_t>(idx)];
            for (int j = 1; j <= n; ++j) {
                if (j == v || label.memory.test(static_cast<std::size_t>(j))) continue;
                const int qj =
                    static_cast<int>(std::llround(inst.demand[static_cast<std::size_t>(j)]));
                if (load + qj > capInt) continue;
                NgMemory memory = (label.memory & ng.masks[static_cast<std::size_t>(j)]);
                memory.set(static_cast<std::size_t>(j));
                consider(j, load + qj, label.rcost + edgeReducedCost(v, j, inst, duals), idx,
                         memory);
            }
        }
    }

    std::vector<PricedRoute> routes;
    for (int v = 1; v <= n; ++v) {
        for (int load = 1; load <= capInt; ++load) {
            const int idx = best[static_cast<std::size_t>(v)][static_cast<std::size_t>(load)];
            if (idx < 0) continue;
            const Label& label = arena[static_cast<std::size_t>(idx)];
            const double closed = label.rcost + edgeReducedCost(v, 0, inst, duals);
            if (closed < opts.threshold) {
                PricedRoute route;
                route.visits = reconstruct(arena, idx);
                route.reducedCost = closed;
                route.load = label.load;
                routes.push_back(std::move(route));
            }
        }
    }
    std::sort(routes.begin(), routes.end(),
              [](const PricedRoute& a, const PricedRoute& b) { return a.reducedCost < b.reducedCost; });
    if (routes.size() > opts.maxRoutes) routes.resize(opts.maxRoutes);
    return routes;
}

PricedRoute oracleElementary(const Instance& inst, const DualVector& duals, int maxCustomers) {
    if (inst.nbCustomers > maxCustomers)
        throw std::invalid_argument("elementary oracle limited to " +
                                    std::to_string(maxCustomers) + " customers");
    const int n = inst.nbCustomers;

    PricedRoute best;
    best.reducedCost = std::numeric_limits<double>::infinity();
    std::vector<int> path;
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);

    auto dfs = [&](auto&& self, int last, double load, double rcost) -> void {
        if (!path.empty()) {
            const double closed = rcost + edgeReducedCost(last, 0, inst, duals);
            if (closed < best.reducedCost) {
                best.reducedCost = closed;
                best.visits = path;
                best.load = load;
            }
        }
        for (int j = 1; j <= n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double qj = inst.demand[static_cast<std::size_t>(j)];
            if (load + qj > inst.capacity + 1e-9) continue;
            used[static_cast<std::size_t>(j)] = 1;
            path.push_back(j);
            self(self, j, load + qj, rcost + edgeReducedCost(last, j, inst, duals));
            path.pop_back();
            used[static_cast<std::size_t>(j)] = 0;
        }
    };
    dfs(dfs, 0, 0.0, 0.0);
    return best;
}

DualVector stabilizeDuals(const DualVector& prev, const DualVector& next, double alpha) {
    if (prev.beta.size() != next.beta.size())
        throw std::invalid_argument("dual vectors have mismatched dimensions");
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("stabilization weight must lie in [0,1)");
    DualVector out = next;
    out.gamma = alpha * prev.gamma + (1.0 - alpha) * next.gamma;
    for (std::size_t i = 0; i < out.beta.size(); ++i)
        out.beta[i] = alpha * prev.beta[i] + (1.0 - alpha) * next.beta[i];
    return out;
}

} // namespace vrpsl
