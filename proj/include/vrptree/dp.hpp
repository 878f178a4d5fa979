#ifndef VRPTREE_DP_HPP
#define VRPTREE_DP_HPP

#include "vrptree/clustering.hpp"
#include "vrptree/ratio.hpp"
#include "vrptree/solution.hpp"
#include "vrptree/tree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vrpt {

// eps_hat = delta = epsilon / kDefaultPrecision unless overridden.
inline constexpr std::int64_t kDefaultPrecision = 4;

struct SolverParams {
    Ratio epsilon{1, 4};
    std::optional<Ratio> eps_hat; // default epsilon / kDefaultPrecision
    std::optional<Ratio> delta;   // default eps_hat
    std::optional<Ratio> theta;   // default eps_hat^4
    std::size_t k = 1;
    bool dominance = true;
    std::size_t max_configs = 4'000'000; // TooLarge beyond this many stored configurations

    Ratio eps_hat_value() const;
    Ratio delta_value() const;
    Ratio theta_value() const;
    // floor((1 + epsilon) / theta): largest admissible bucket index.
    std::uint32_t bucket_cap() const;
    void validate() const;
    std::map<std::string, std::string> echo() const;
};

// A configuration is the sorted multiset of bucket indices of the open tours.
using Config = std::vector<std::uint32_t>;

struct DecideStats {
    std::int64_t unit_scale = 1;
    std::size_t tstar_nodes = 0;
    std::size_t leaf_clusters = 0;
    std::size_t edge_clusters = 0;
    std::size_t small_clusters = 0;
    std::size_t relaxed_clusters = 0;
    std::size_t promoted_clusters = 0;
    std::size_t configs_stored = 0;
    std::size_t configs_pruned = 0;
    std::size_t max_table = 0;
    std::size_t root_configs = 0;

    void export_to(std::map<std::string, std::int64_t>& counters) const;
};

// Decision procedure for makespan bound D (in the tree's length units).
// Returns a verified solution whose makespan is at most (1 + epsilon) D, or
// nothing when the root of T* has no admissible configuration.
std::optional<Solution> decide(const RoutingTree& tree, const SolverParams& params, std::int64_t D,
                               DecideStats* stats = nullptr);

// Binary search on integer D. Returns the best solution over all bounds for
// which decide succeeded.
Solution ptas(const RoutingTree& tree, const SolverParams& params);

struct CapacityParams {
    std::int64_t Q = 1;
    Ratio epsilon{1, 4};
    std::optional<Ratio> eps_hat;
    std::optional<Ratio> delta;
    std::optional<Ratio> theta;
    bool dominance = true;
    std::size_t max_configs = 4'000'000;

    SolverParams as_solver_params() const;
};

// Succeeds iff some tour family with per-tour client count at most
// (1 + epsilon) Q and total length at most `budget` is found by the DP.
std::optional<Solution> decide_capacity(const RoutingTree& tree, const CapacityParams& params, Length budget,
                                        DecideStats* stats = nullptr);

// Least budget for which decide_capacity succeeds, with its solution.
Solution ptas_capacity(const RoutingTree& tree, const CapacityParams& params);

} // namespace vrpt

#endif
