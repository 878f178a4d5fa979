#include "vrptree/oracle.hpp"

#include "vrptree/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace vrpt {

namespace {

struct SubsetCosts {
    std::vector<VertexId> clients;
    std::vector<Length> cost; // 2 * Steiner length of each client subset
};

SubsetCosts subset_costs(const RoutingTree& tree) {
    SubsetCosts sc;
    sc.clients = tree.clients();
    const std::size_t n = sc.clients.size();
    if (n > kOracleMaxClients) {
        throw TooLarge("exact oracle supports at most " + std::to_string(kOracleMaxClients) + " clients, got " +
                       std::to_string(n));
    }
    std::vector<std::uint32_t> below(tree.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (VertexId v = sc.clients[i]; v != kNoVertex; v = tree.parent(v)) below[v] |= 1u << i;
    }
    sc.cost.assign(std::size_t{1} << n, 0);
    for (std::uint32_t mask = 1; mask < sc.cost.size(); ++mask) {
        Length s = 0;
        for (VertexId v = 0; v < tree.size(); ++v) {
            if (v != tree.root() && (below[v] & mask)) s += tree.parent_length(v);
        }
        sc.cost[mask] = 2 * s;
    }
    return sc;
}

std::vector<std::vector<VertexId>> unpack(const SubsetCosts& sc, const std::vector<std::uint32_t>& parts) {
    std::vector<std::vector<VertexId>> out;
    for (std::uint32_t p : parts) {
        std::vector<VertexId> g;
        for (std::size_t i = 0; i < sc.clients.size(); ++i) {
            if (p & (1u << i)) g.push_back(sc.clients[i]);
        }
        std::sort(g.begin(), g.end());
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

ExactResult exact_makespan(const RoutingTree& tree, std::size_t k) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    SubsetCosts sc = subset_costs(tree);
    const std::size_t n = sc.clients.size();
    const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
    const std::size_t parts = std::min(k, std::max<std::size_t>(n, 1));
    // best[j][mask]: min makespan covering mask with at most j + 1 tours.
    std::vector<std::vector<Length>> best(parts, sc.cost);
    std::vector<std::vector<std::uint32_t>> choice(parts, std::vector<std::uint32_t>(sc.cost.size(), 0));
    for (std::uint32_t m = 0; m <= full; ++m) choice[0][m] = m;
    for (std::size_t j = 1; j < parts; ++j) {
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            Length b = best[j - 1][mask];
            std::uint32_t pick = mask;
            const std::uint32_t low = mask & (~mask + 1);
            const std::uint32_t rest = mask ^ low;
            // Submasks s of mask containing the lowest bit.
            for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
                std::uint32_t s = sub | low;
                if (s != mask) {
                    Length v = std::max(sc.cost[s], best[j - 1][mask ^ s]);
                    if (v < b) {
                        b = v;
                        pick = s;
                    }
                }
                if (sub == 0) break;
            }
            best[j][mask] = b;
            choice[j][mask] = pick;
        }
    }
    ExactResult r;
    r.value = best[parts - 1][full];
    std::vector<std::uint32_t> groups;
    std::uint32_t mask = full;
    std::size_t j = parts - 1;
    while (mask) {
        // Walk down the tour count while it does not change the optimum.
        while (j > 0 && best[j - 1][mask] == best[j][mask]) --j;
        std::uint32_t s = choice[j][mask];
        groups.push_back(s);
        mask ^= s;
        if (j > 0) --j;
    }
    r.groups = unpack(sc, groups);
    return r;
}

ExactResult exact_capacitated(const RoutingTree& tree, std::size_t Q) {
    if (Q < 1) throw InvalidArgument("capacity Q must be at least 1");
    SubsetCosts sc = subset_costs(tree);
    const std::size_t n = sc.clients.size();
    const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
    std::vector<Length> best(sc.cost.size(), std::numeric_limits<Length>::max());
    std::vector<std::uint32_t> choice(sc.cost.size(), 0);
    best[0] = 0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);
        const std::uint32_t rest = mask ^ low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            std::uint32_t s = sub | low;
            if (static_cast<std::size_t>(std::popcount(s)) <= Q) {
                Length v = sc.cost[s] + best[mask ^ s];
                if (v < best[mask]) {
                    best[mask] = v;
                    choice[mask] = s;
                }
            }
            if (sub == 0) break;
        }
    }
    ExactResult r;
    r.value = best[full];
    std::vector<std::uint32_t> groups;
    for (std::uint32_t mask = full; mask; mask ^= choice[mask]) groups.push_back(choice[mask]);
    r.groups = unpack(sc, groups);
    return r;
}

Solution solution_from_groups(const RoutingTree& tree, const std::vector<std::vector<VertexId>>& groups,
                              const std::string& objective) {
    Solution s;
    s.objective = objective;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        Tour t;
        t.clients = g;
        s.tours.push_back(std::move(t));
    }
    s.recompute(tree);
    return s;
}

VerifyReport verify(const RoutingTree& tree, const Solution& s, std::size_t k, std::optional<std::size_t> capacity) {
    auto fail = [](std::string m) { return VerifyReport{false, std::move(m)}; };
    const std::int64_t sc = tree.scale();
    std::vector<int> seen(tree.size(), 0);
    Length makespan = 0, total = 0;
    for (std::size_t i = 0; i < s.tours.size(); ++i) {
        const Tour& t = s.tours[i];
        if (t.clients.empty()) return fail("tour " + std::to_string(i) + " is empty");
        for (VertexId c : t.clients) {
            if (c >= tree.size()) return fail("tour " + std::to_string(i) + " names an unknown vertex");
            if (!tree.is_client(c)) return fail("vertex '" + tree.name(c) + "' is not a client");
            if (seen[c]++) return fail("client '" + tree.name(c) + "' covered twice");
        }
        Length len = tour_length(tree, t.clients);
        if (len != t.length) {
            return fail("tour " + std::to_string(i) + " declares length " + format_length(t.length, sc) +
                        ", recomputed " + format_length(len, sc));
        }
        if (capacity && t.clients.size() > *capacity) {
            return fail("tour " + std::to_string(i) + " has " + std::to_string(t.clients.size()) +
                        " clients, capacity " + std::to_string(*capacity));
        }
        makespan = std::max(makespan, len);
        total += len;
    }
    for (VertexId c : tree.clients()) {
        if (!seen[c]) return fail("uncovered client '" + tree.name(c) + "'");
    }
    if (s.tours.size() > k) {
        return fail("uses " + std::to_string(s.tours.size()) + " tours, budget " + std::to_string(k));
    }
    if (makespan != s.makespan) {
        return fail("declared makespan " + format_length(s.makespan, sc) + ", recomputed " + format_length(makespan, sc));
    }
    if (total != s.total_length) {
        return fail("declared total length " + format_length(s.total_length, sc) + ", recomputed " +
                    format_length(total, sc));
    }
    return {true, "ok"};
}

Solution greedy_baseline(const RoutingTree& tree, std::size_t k) {
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (tree.clients().empty()) throw InvalidArgument("instance has no clients");
    const Length total = tree.total_length();
    const std::int64_t D0 = std::max<std::int64_t>(1, (2 * total + static_cast<std::int64_t>(k) - 1) /
                                                          static_cast<std::int64_t>(k));
    CondensedTree ct = condense(binarize(tree), LoadFunction{}, Ratio(1, 2), D0);
    TreeMetrics m(ct.tree);
    struct Unit {
        Length load;
        std::vector<VertexId> clients;
    };
    std::vector<Unit> units;
    for (VertexId v = 0; v < ct.tree.size(); ++v) {
        if (!ct.leaf_clients[v].empty()) units.push_back({2 * m.depth[v], ct.leaf_clients[v]});
    }
    std::stable_sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) { return a.load > b.load; });
    std::vector<std::vector<VertexId>> tours(k);
    std::vector<Length> len(k, 0);
    for (const Unit& u : units) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < k; ++i) {
            if (len[i] < len[best]) best = i;
        }
        tours[best].insert(tours[best].end(), u.clients.begin(), u.clients.end());
        len[best] = tour_length(tree, tours[best]);
    }
    Solution s = solution_from_groups(tree, tours);
    s.params["method"] = "greedy";
    s.params["k"] = std::to_string(k);
    return s;
}

} // namespace vrpt
