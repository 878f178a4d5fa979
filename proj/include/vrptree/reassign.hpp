#ifndef VRPTREE_REASSIGN_HPP
#define VRPTREE_REASSIGN_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace vrpt::reassign {

using Weight = std::int64_t;

struct Edge {
    std::size_t facility;
    std::size_t client;
    Weight weight; // w(a, b) >= 0
};

/*
 * Bipartite weight-capacitated assignment instance. Facility capacities are
 * derived: q(a) is the sum of w(a, b) over incident edges.
 */
class AssignmentInstance {
public:
    AssignmentInstance(std::size_t facilities, std::vector<Weight> client_weights, std::vector<Edge> edges);

    std::size_t facility_count() const { return facility_adj_.size(); }
    std::size_t client_count() const { return client_weight_.size(); }
    Weight client_weight(std::size_t b) const { return client_weight_[b]; }
    Weight capacity(std::size_t a) const { return capacity_[a]; }
    Weight max_client_weight() const;
    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbours sorted by id; each entry is (other endpoint, w(a, b)).
    const std::vector<std::pair<std::size_t, Weight>>& facility_neighbors(std::size_t a) const { return facility_adj_[a]; }
    const std::vector<std::pair<std::size_t, Weight>>& client_neighbors(std::size_t b) const { return client_adj_[b]; }
    bool adjacent(std::size_t a, std::size_t b) const;

    // Throws InvalidArgument naming the first client with no edge or with
    // w(b) greater than the sum of its edge weights.
    void check_preconditions() const;

private:
    std::vector<Weight> client_weight_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, Weight>>> facility_adj_;
    std::vector<std::vector<std::pair<std::size_t, Weight>>> client_adj_;
    std::vector<Weight> capacity_;
};

struct Assignment {
    std::vector<std::size_t> facility_of; // f(b)
    std::vector<Weight> facility_overload; // h_f(a) = w(f^-1(a)) - q(a)
    Weight overload = 0;                   // max_a h_f(a)
    std::size_t steps = 0;                 // improvement steps taken
};

// Recompute overloads for an arbitrary feasible f.
Assignment evaluate(const AssignmentInstance& inst, std::vector<std::size_t> facility_of);

inline constexpr std::size_t kInfiniteLevel = static_cast<std::size_t>(-1);

struct Levels {
    std::vector<std::vector<std::size_t>> facilities; // A_0, A_1, ...
    std::vector<std::vector<std::size_t>> clients;    // B_0, B_1, ...
    std::vector<std::size_t> facility_level;          // kInfiniteLevel when unreached
    std::vector<std::size_t> client_level;
};

// A_0 = facilities with overload > max_b w(b); B_i = f^-1(A_i);
// A_i = N(B_{i-1}) minus earlier levels.
Levels levels(const AssignmentInstance& inst, const std::vector<std::size_t>& facility_of);

// Text dump used for goldens: one line per level, "A<i>: a.. | B<i>: b..".
std::string dump_levels(const Levels& lv);

struct SolveOptions {
    // Recompute levels after every step and throw InternalError if the moved
    // client's level does not strictly increase or any other level drops.
    bool check_level_monotonicity = false;
};

// Finds an assignment with overload at most max_b w(b) within |B|^2 steps.
Assignment solve(const AssignmentInstance& inst, const SolveOptions& opts = {});

// Minimum overload over all |N(b)| product assignments. Test oracle; small only.
Weight brute_force_min_overload(const AssignmentInstance& inst);

} // namespace vrpt::reassign

#endif
