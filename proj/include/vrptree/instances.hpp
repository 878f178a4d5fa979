#ifndef VRPTREE_INSTANCES_HPP
#define VRPTREE_INSTANCES_HPP

#include "vrptree/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vrpt {

enum class Shape { Random, Caterpillar, Star };

Shape parse_shape(const std::string& name);
const char* shape_name(Shape s);

// Deterministic per seed. Names: r (depot), v<i> (internal), c<i> (clients).
// Edge lengths are uniform in [1, max_len].
RoutingTree gen_random(std::uint64_t seed, std::size_t n_clients, Length max_len, Shape shape = Shape::Random);

struct CounterexampleParams {
    std::size_t l = 5;
    Length path_len = 1;
    Length side_len = 4;
    Length main_len = 10;
    Length tau = 10;

    void validate() const;
};

// Central path r, v1..vl with side leaves s1..sl, and a main subtree
// v_{l+1} - m below v_l.
RoutingTree gen_counterexample(const CounterexampleParams& p);

inline constexpr std::size_t kCrMaxVertices = 25;

struct CrMember {
    bool is_virtual = false;
    VertexId vertex = kNoVertex; // real member, or the child end of the subdivided edge
    Length lower = 0;            // virtual: length of the part below the subdivision point
    Length subtree_length = 0;   // l(T_v)
    Length max_child_subtree = 0;
    bool small = false;          // property 1
    bool large = false;          // property 2
};

struct CrWitness {
    std::vector<CrMember> members;
    bool independent = false;    // property 3
};

std::optional<CrWitness> check_cr(const RoutingTree& tree, Length tau);

// Applies the subdivisions explicitly and re-checks properties 1-3 and the
// leaf partition. Returns an empty string when the witness holds.
std::string recheck_cr(const RoutingTree& tree, Length tau, const CrWitness& w);

std::string describe_cr(const RoutingTree& tree, const CrWitness& w);

} // namespace vrpt

#endif
