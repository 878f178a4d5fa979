#ifndef VRPTREE_TEST_SUPPORT_HPP
#define VRPTREE_TEST_SUPPORT_HPP

#include "vrptree/clustering.hpp"
#include "vrptree/reassign.hpp"
#include "vrptree/tree.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

// Independent reference implementations used by the unit and acceptance
// tests. None of these call into the solver code they check.
namespace testsupport {

using vrpt::Length;
using vrpt::RoutingTree;
using vrpt::VertexId;

// Builds a tree from "parent child length" triples; the first parent is the root.
struct E {
    const char* u;
    const char* v;
    Length len;
};
RoutingTree make_tree(const std::vector<E>& edges, const std::vector<const char*>& clients);

// 2 * length of the union of root paths, by explicit edge marking.
Length steiner_tour(const RoutingTree& t, const std::vector<VertexId>& clients);

// Enumerates all set partitions of the clients (restricted growth strings).
Length naive_min_makespan(const RoutingTree& t, std::size_t k);
Length naive_min_capacitated(const RoutingTree& t, std::size_t Q);

// Exhaustive minimum overload over every feasible assignment.
vrpt::reassign::Weight naive_min_overload(const vrpt::reassign::AssignmentInstance& inst);

// Skewed instances give facility 0 the heaviest edge of every client, so the
// initial assignment piles everything onto it.
vrpt::reassign::AssignmentInstance random_assignment(std::mt19937_64& rng, std::size_t max_side, std::int64_t max_w,
                                                     bool skewed = false);

// Returns an empty string when the condensed tree satisfies length
// conservation, client coverage, branch maximality (by brute force over all
// branches) and the sibling rule; otherwise the first violation.
std::string check_condensed(const RoutingTree& binary, const vrpt::CondensedTree& ct);

struct ClusterReport {
    std::string error;
    std::size_t relaxed = 0;
    std::size_t promoted = 0;
};
// Partition of the condensed edges, load recomputation and load windows.
ClusterReport check_clustering(const vrpt::CondensedTree& ct, const vrpt::Clustering& cl);

// Tries explicit subdivisions (none, at the large threshold, at the top) on
// every edge and searches leaf-partitioning antichains directly. Small trees.
bool brute_force_cr_exists(const RoutingTree& t, Length tau);

// Random tree with at most `max_vertices` vertices and lengths in [0, max_len].
RoutingTree random_small_tree(std::mt19937_64& rng, std::size_t max_vertices, Length max_len);

} // namespace testsupport

#endif
