#ifndef VRPTREE_TREE_HPP
#define VRPTREE_TREE_HPP

#include "vrptree/ratio.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vrpt {

using VertexId = std::uint32_t;
using Length = std::int64_t;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

/*
 * Rooted, edge-weighted tree. The root is the depot, clients sit at leaves.
 * Vertices are dense indices; every non-root vertex has exactly one parent
 * edge whose length is stored on the child. Child order is the insertion
 * order, which keeps every downstream enumeration deterministic.
 */
class RoutingTree {
public:
    RoutingTree() = default;

    VertexId add_vertex(std::string name);
    void add_edge(VertexId parent, VertexId child, Length length);
    void set_root(VertexId v);
    void set_client(VertexId v, bool is_client = true);

    std::size_t size() const { return names_.size(); }
    VertexId root() const { return root_; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    Length parent_length(VertexId v) const { return parent_len_[v]; }
    const std::vector<VertexId>& children(VertexId v) const { return children_[v]; }
    bool is_leaf(VertexId v) const { return children_[v].empty(); }
    bool is_client(VertexId v) const { return client_[v]; }
    const std::string& name(VertexId v) const { return names_[v]; }
    std::optional<VertexId> find(std::string_view name) const;

    // Clients in the order they were declared.
    const std::vector<VertexId>& clients() const { return client_order_; }
    // Edges in declaration order, identified by their child vertex.
    const std::vector<VertexId>& edge_order() const { return edge_order_; }

    // Units per length unit; lengths are stored as integers in 1/scale units.
    std::int64_t scale() const { return scale_; }
    void set_scale(std::int64_t s);

    const std::vector<std::string>& comments() const { return comments_; }
    void add_comment(std::string line) { comments_.push_back(std::move(line)); }

    // Checks rootedness, reachability and the client-leaf invariant.
    void validate() const;

    Length total_length() const;
    Length subtree_length(VertexId v) const;
    Length dist_to_root(VertexId v) const;
    std::size_t clients_below(VertexId v) const;

    // Vertices with every child listed after its parent.
    std::vector<VertexId> preorder() const;
    bool is_ancestor(VertexId anc, VertexId v) const;

    std::size_t max_children() const;

private:
    std::vector<std::string> names_;
    std::vector<VertexId> parent_;
    std::vector<Length> parent_len_;
    std::vector<std::vector<VertexId>> children_;
    std::vector<bool> client_;
    std::vector<VertexId> client_order_;
    std::vector<VertexId> edge_order_;
    std::unordered_map<std::string, VertexId> by_name_;
    std::vector<std::string> comments_;
    VertexId root_ = kNoVertex;
    std::int64_t scale_ = 1;
};

// Precomputed per-vertex metrics (linear time).
struct TreeMetrics {
    std::vector<Length> depth;          // d_T(v, r)
    std::vector<Length> subtree_length; // l(T_v)
    std::vector<std::size_t> clients;   // clients in T_v

    explicit TreeMetrics(const RoutingTree& tree);
};

enum class LoadKind { TourLength, ClientCount };

// Monotone subadditive load g. TourLength: 2 * edge length, ClientCount:
// number of clients.
struct LoadFunction {
    LoadKind kind = LoadKind::TourLength;

    std::int64_t of_length_and_clients(Length length, std::size_t clients) const {
        return kind == LoadKind::TourLength ? 2 * length : static_cast<std::int64_t>(clients);
    }
    // Load per unit of client-free backbone length.
    std::int64_t per_backbone_unit() const { return kind == LoadKind::TourLength ? 2 : 0; }
    const char* name() const { return kind == LoadKind::TourLength ? "tour-length" : "client-count"; }
};

std::int64_t branch_load(const RoutingTree& tree, const LoadFunction& load, VertexId v);

// Every vertex gets at most two children. A vertex with children c1..cl keeps
// c1 and moves the rest under a new zero-length child, recursively.
// Existing vertex ids are preserved; auxiliary vertices are appended.
RoutingTree binarize(const RoutingTree& tree);

// Subdivide the parent edge of v at `upper` units below the parent.
VertexId subdivide_edge(RoutingTree& tree, VertexId v, Length upper, std::string name);

/*
 * Result of condensing every maximal branch of load <= floor(delta * D) into
 * a single leaf edge. Surviving vertices keep their names; each condensed
 * branch becomes one new leaf whose parent edge carries the total branch
 * length, and that leaf is flagged as a client standing for the branch.
 */
struct CondensedBranch {
    VertexId attach = kNoVertex;          // u, in the input tree
    std::vector<VertexId> tops;           // several when siblings were pre-merged
    Length length = 0;                    // l(b)
    std::int64_t load = 0;                // g(b)
    std::vector<VertexId> clients;        // original clients inside b
    VertexId leaf = kNoVertex;            // leaf vertex in the condensed tree
    bool sibling_merged = false;
};

struct CondensedTree {
    RoutingTree tree;                           // condensed form
    std::vector<CondensedBranch> branches;      // condensed_leaf_info
    std::vector<VertexId> provenance;           // condensed vertex -> input vertex (kNoVertex if synthetic)
    std::vector<std::vector<VertexId>> leaf_clients; // condensed vertex -> original clients it stands for
    std::int64_t threshold = 0;                 // floor(delta * D)
    LoadFunction load;
};

CondensedTree condense(const RoutingTree& binary_tree, const LoadFunction& load, const Ratio& delta,
                       std::int64_t D);

// Instance I/O. The text form is line oriented; the structured form is JSON.
// Leaves without a client are pruned on load.
RoutingTree load_instance(std::string_view text);
RoutingTree load_instance_file(const std::string& path);
std::string save_instance(const RoutingTree& tree, bool structured = false);
void save_instance_file(const RoutingTree& tree, const std::string& path, bool structured = false);

// 64-bit FNV-1a of the canonical text form, hex encoded.
std::string instance_digest(const RoutingTree& tree);

std::string format_length(Length units, std::int64_t scale);

// Whole-file helpers; failures raise IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& data);

} // namespace vrpt

#endif
