#ifndef VRPTREE_SOLUTION_HPP
#define VRPTREE_SOLUTION_HPP

#include "vrptree/ratio.hpp"
#include "vrptree/tree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vrpt {

struct Tour {
    std::vector<VertexId> clients; // original client ids, ascending
    Length length = 0;             // 2 * Steiner length of clients and the depot
    std::optional<Ratio> rounded;  // DP value (length, or client count for capacity runs)
    std::size_t roundups = 0;
    std::size_t clusters = 0;      // clusters whose clients it covers
    std::size_t merges = 0;        // branch vertices where it was merged
};

struct Solution {
    std::string objective = "makespan"; // "makespan" or "capacity"
    std::vector<Tour> tours;
    Length makespan = 0;
    Length total_length = 0;
    std::size_t max_clients = 0;
    std::int64_t D = 0;                        // decision bound (Q for capacity runs)
    std::map<std::string, std::string> params; // echo of solver parameters
    std::map<std::string, std::int64_t> counters;

    // Recompute every length from the tree and refresh the aggregates.
    void recompute(const RoutingTree& tree);
};

// 2 * length of the union of root paths of `clients`.
Length tour_length(const RoutingTree& tree, const std::vector<VertexId>& clients);

// Structured form; lengths use the tree's scale and clients are named.
std::string solution_to_json(const RoutingTree& tree, const Solution& s);
Solution solution_from_json(const RoutingTree& tree, std::string_view text);
void save_solution_file(const RoutingTree& tree, const Solution& s, const std::string& path);
Solution load_solution_file(const RoutingTree& tree, const std::string& path);

// Human readable table.
std::string solution_to_text(const RoutingTree& tree, const Solution& s);

} // namespace vrpt

#endif
