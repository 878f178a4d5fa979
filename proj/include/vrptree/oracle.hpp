#ifndef VRPTREE_ORACLE_HPP
#define VRPTREE_ORACLE_HPP

#include "vrptree/solution.hpp"
#include "vrptree/tree.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vrpt {

inline constexpr std::size_t kOracleMaxClients = 14;

struct ExactResult {
    Length value = 0; // optimum makespan, or optimum total length
    std::vector<std::vector<VertexId>> groups;
};

// Subset DP over client bitmasks; at most kOracleMaxClients clients.
ExactResult exact_makespan(const RoutingTree& tree, std::size_t k);
ExactResult exact_capacitated(const RoutingTree& tree, std::size_t Q);

Solution solution_from_groups(const RoutingTree& tree, const std::vector<std::vector<VertexId>>& groups,
                              const std::string& objective = "makespan");

struct VerifyReport {
    bool ok = true;
    std::string message; // first violation, or "ok"
};

// Coverage, tour budget, declared lengths against the tree, and the
// per-tour client capacity when given.
VerifyReport verify(const RoutingTree& tree, const Solution& s, std::size_t k,
                    std::optional<std::size_t> capacity = std::nullopt);

// Condense at delta = 1/2 of ceil(2 l(T) / k), then place the condensed units
// in descending load order on the currently shortest tour.
Solution greedy_baseline(const RoutingTree& tree, std::size_t k);

} // namespace vrpt

#endif
