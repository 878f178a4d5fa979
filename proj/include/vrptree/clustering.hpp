#ifndef VRPTREE_CLUSTERING_HPP
#define VRPTREE_CLUSTERING_HPP

#include "vrptree/ratio.hpp"
#include "vrptree/tree.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace vrpt {

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// A maximal chain from a condensed leaf up through unary vertices. It ends
// below `attach`, which is the root or a vertex with two children.
struct PendantPath {
    VertexId top = kNoVertex;
    VertexId leaf = kNoVertex;
    VertexId attach = kNoVertex;
    Length length = 0;
    Length attach_depth = 0;
    std::size_t clients = 0; // original clients behind the leaf
    std::int64_t load = 0;
};

// Portion of the condensed edge (parent(child), child) starting `top_offset`
// below the parent.
struct BackbonePiece {
    VertexId child = kNoVertex;
    Length top_offset = 0;
    Length length = 0;
    Length top_depth = 0;
    bool synthetic = false; // zero-length padding

    Length bottom_depth() const { return top_depth + length; }
};

struct LeafSlot {
    std::size_t pendant = kNone; // kNone for a zero-length placeholder
    Length length = 0;
    Length attach_depth = 0;
    std::size_t clients = 0;
    std::int64_t load = 0;

    bool placeholder() const { return pendant == kNone; }
};

enum class ClusterKind { Leaf, Small, Edge };

const char* cluster_kind_name(ClusterKind k);

/*
 * Leaf clusters hold one pendant path. Small and edge clusters hold a
 * contiguous run of a woolly edge, normalized top to bottom as
 * p_1, e_1, p_2, ..., e_{m-1}, p_m.
 */
struct Cluster {
    ClusterKind kind = ClusterKind::Leaf;
    std::int64_t load = 0;
    std::size_t pendant = kNone;          // leaf clusters
    std::vector<BackbonePiece> pieces;    // small / edge clusters
    std::vector<LeafSlot> leaves;
    std::size_t woolly = kNone;
    VertexId top_vertex = kNoVertex; // kNoVertex when the top is a subdivision point
    bool relaxed = false;   // edge cluster outside the nominal window
    bool promoted = false;  // leaf cluster below the nominal threshold

    std::size_t client_leaves() const;
    Length leaf_length() const;
};

// Root, branching vertices and leaf clusters, linked along the backbone.
struct BNode {
    enum class Kind { Root, Branch, Leaf };
    Kind kind = Kind::Root;
    VertexId vertex = kNoVertex;  // attach vertex for leaf clusters
    std::size_t cluster = kNone;  // leaf cluster index
    std::size_t parent = kNone;
    std::vector<std::size_t> children;
    std::size_t woolly_above = kNone;
};

struct WoollyEdge {
    std::size_t upper = kNone;
    std::size_t lower = kNone;
    std::int64_t load = 0;
    std::vector<std::size_t> clusters; // top to bottom; empty if the edge is empty
};

struct Clustering {
    LoadFunction load;
    std::int64_t D = 0;
    Ratio eps_hat;
    Ratio delta;
    Ratio lower_bound; // eps_hat * delta * D / 2
    Ratio upper_bound; // delta * D / 2

    std::vector<Length> depth; // condensed-tree depths
    std::vector<PendantPath> pendants;
    std::vector<bool> backbone;   // condensed vertex v: edge (parent(v), v) is backbone
    std::vector<Cluster> clusters;
    std::vector<std::size_t> leaf_clusters;
    std::vector<std::size_t> small_clusters;
    std::vector<std::size_t> edge_clusters;
    std::vector<BNode> bnodes; // bnodes[0] is the root
    std::vector<WoollyEdge> woolly;

    std::size_t relaxed_count() const;
    std::size_t promoted_count() const;
};

Clustering build_clustering(const CondensedTree& ct, const Ratio& eps_hat, const Ratio& delta, std::int64_t D);

enum class StarKind { Base, Grow, Merge };

struct StarNode {
    StarKind kind = StarKind::Merge;
    std::size_t cluster = kNone;  // Base and Grow
    std::size_t bnode = kNone;    // Base and Merge
    VertexId vertex = kNoVertex;  // root-most tree vertex u
    Length depth = 0;             // d_T(u, r)
    std::size_t parent = kNone;
    std::vector<std::size_t> children;
};

// T*: leaves are leaf clusters, grow vertices are edge clusters, merge
// vertices are branching vertices and the root.
struct ClusterTree {
    std::vector<StarNode> nodes;
    std::size_t root = kNone;
    std::vector<std::size_t> postorder;
    std::vector<std::size_t> node_of_cluster; // kNone for small clusters
};

ClusterTree build_cluster_tree(const Clustering& cl);

struct SmallClusterAssignment {
    std::vector<std::size_t> target;                // cluster id -> leaf cluster id (small clusters only)
    std::vector<std::vector<std::size_t>> assigned; // cluster id -> small clusters (leaf clusters only)
};

SmallClusterAssignment assign_small_clusters(const Clustering& cl, const ClusterTree& tstar);

// Everything decide() needs for one load bound. Lengths inside are measured
// in units of 1/unit_scale of the input tree's units.
struct Decomposition {
    RoutingTree tree; // binarized, lengths multiplied by unit_scale
    std::int64_t unit_scale = 1;
    std::int64_t D = 0; // already multiplied by unit_scale
    CondensedTree condensed;
    Clustering clustering;
    ClusterTree tstar;
    SmallClusterAssignment smalls;
};

// Refines the length unit so backbone edges can be cut inside the edge
// cluster window, then binarizes, condenses and clusters.
Decomposition decompose(const RoutingTree& tree, const LoadFunction& load, const Ratio& eps_hat,
                        const Ratio& delta, std::int64_t D);

RoutingTree scale_lengths(const RoutingTree& tree, std::int64_t factor);

// Tab separated: id, kind, load, flags, edges.
std::string dump_clusters(const CondensedTree& ct, const Clustering& cl);
std::string clusters_dot(const CondensedTree& ct, const Clustering& cl);

} // namespace vrpt

#endif
