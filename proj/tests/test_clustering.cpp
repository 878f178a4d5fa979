#include "support.hpp"

#include "vrptree/clustering.hpp"
#include "vrptree/errors.hpp"
#include "vrptree/instances.hpp"

#include <doctest.h>

#include <random>

using namespace vrpt;
using testsupport::make_tree;

namespace {

Decomposition dec(const RoutingTree& t, Ratio eps_hat, Ratio delta, std::int64_t D) {
    return decompose(t, LoadFunction{}, eps_hat, delta, D);
}

// Backbone r-v1..v6 with edges of 25, side leaves of 25 and a long bottom leaf.
RoutingTree caterpillar() {
    std::vector<testsupport::E> edges;
    std::vector<const char*> clients;
    static const char* v[] = {"r", "v1", "v2", "v3", "v4", "v5", "v6"};
    static const char* s[] = {"s1", "s2", "s3", "s4", "s5", "s6"};
    for (int i = 0; i < 6; ++i) {
        edges.push_back({v[i], v[i + 1], 25});
        edges.push_back({v[i + 1], s[i], 25});
        clients.push_back(s[i]);
    }
    edges.push_back({"v6", "L", 500});
    clients.push_back("L");
    return make_tree(edges, clients);
}

} // namespace

TEST_SUITE("clustering") {

TEST_CASE("a single client is one leaf cluster") {
    RoutingTree t = make_tree({{"r", "a", 10}}, {"a"});
    Decomposition d = dec(t, Ratio(1, 4), Ratio(1, 4), 20);
    CHECK(d.clustering.leaf_clusters.size() == 1);
    CHECK(d.clustering.edge_clusters.empty());
    CHECK(d.tstar.nodes.size() == 2);
    CHECK(testsupport::check_clustering(d.condensed, d.clustering).error == "");
}

TEST_CASE("window bounds") {
    RoutingTree t = caterpillar();
    Decomposition d = dec(t, Ratio(1, 4), Ratio(1, 4), 3200);
    const Clustering& cl = d.clustering;
    const std::int64_t s = d.unit_scale;
    CHECK(cl.lower_bound == Ratio(100 * s));
    CHECK(cl.upper_bound == Ratio(400 * s));
}

TEST_CASE("caterpillar backbone is cut into edge clusters") {
    RoutingTree t = caterpillar();
    Decomposition d = dec(t, Ratio(1, 4), Ratio(1, 4), 3200);
    const Clustering& cl = d.clustering;
    auto rep = testsupport::check_clustering(d.condensed, cl);
    CHECK(rep.error == "");
    CHECK(cl.leaf_clusters.size() == 1);
    REQUIRE(cl.edge_clusters.size() >= 2);
    std::size_t in_window = 0;
    for (std::size_t c : cl.edge_clusters) {
        const Cluster& x = cl.clusters[c];
        if (at_least(x.load, cl.lower_bound) && at_most(x.load, cl.upper_bound)) ++in_window;
    }
    CHECK(in_window >= 2);
    CHECK(rep.relaxed == cl.relaxed_count());
}

TEST_CASE("light woolly remainder becomes a small cluster") {
    // Two long leaves make v a branch vertex; the short r-v edge is light.
    RoutingTree t = make_tree({{"r", "v", 5}, {"v", "a", 200}, {"v", "b", 200}}, {"a", "b"});
    Decomposition d = dec(t, Ratio(1, 4), Ratio(1, 4), 1600);
    const Clustering& cl = d.clustering;
    CHECK(testsupport::check_clustering(d.condensed, cl).error == "");
    CHECK(cl.leaf_clusters.size() == 2);
    REQUIRE(cl.small_clusters.size() == 1);
    CHECK(below(cl.clusters[cl.small_clusters[0]].load, cl.lower_bound));
}

TEST_CASE("cluster tree shape") {
    RoutingTree one = make_tree({{"r", "a", 10}}, {"a"});
    Decomposition d1 = dec(one, Ratio(1, 4), Ratio(1, 4), 20);
    CHECK(d1.tstar.nodes[d1.tstar.root].kind == StarKind::Merge);

    RoutingTree two = make_tree({{"r", "v", 5}, {"v", "a", 200}, {"v", "b", 200}}, {"a", "b"});
    Decomposition d2 = dec(two, Ratio(1, 4), Ratio(1, 4), 1600);
    std::size_t merges_with_two = 0;
    for (const StarNode& n : d2.tstar.nodes) {
        if (n.kind == StarKind::Merge && n.children.size() == 2) ++merges_with_two;
    }
    CHECK(merges_with_two >= 1);

    Decomposition d3 = dec(caterpillar(), Ratio(1, 4), Ratio(1, 4), 3200);
    for (const StarNode& n : d3.tstar.nodes) {
        if (n.kind == StarKind::Grow) CHECK(n.children.size() == 1);
        if (n.kind == StarKind::Base) CHECK(n.children.empty());
    }
    CHECK(d3.tstar.postorder.back() == d3.tstar.root);
}

TEST_CASE("small clusters go to descendant leaf clusters with capacity two") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RoutingTree t = gen_random(seed, 10, 20);
        const std::int64_t D = 2 * t.total_length() / 3 + 1;
        Decomposition d = dec(t, Ratio(1, 4), Ratio(1, 4), D);
        const Clustering& cl = d.clustering;
        INFO("seed " << seed);
        std::vector<std::size_t> count(cl.clusters.size(), 0);
        for (std::size_t c : cl.small_clusters) {
            const std::size_t target = d.smalls.target[c];
            REQUIRE(target < cl.clusters.size());
            CHECK(cl.clusters[target].kind == ClusterKind::Leaf);
            ++count[target];
            // The leaf cluster lies below the small cluster.
            const PendantPath& p = cl.pendants[cl.clusters[target].pendant];
            const BackbonePiece& top = cl.clusters[c].pieces.front();
            CHECK(d.condensed.tree.is_ancestor(top.child, p.leaf));
        }
        for (std::size_t c : cl.leaf_clusters) CHECK(count[c] <= 2);
    }
}

TEST_CASE("random clusterings satisfy the partition and window invariants") {
    const Ratio grid[] = {Ratio(1, 2), Ratio(1, 4), Ratio(1, 8)};
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RoutingTree t = gen_random(seed, 12, 20, seed % 4 == 0 ? Shape::Caterpillar : Shape::Random);
        for (const Ratio& e : grid) {
            for (std::int64_t D : {t.total_length() / 2 + 1, t.total_length(), 2 * t.total_length()}) {
                Decomposition d = dec(t, e, e, D);
                INFO("seed " << seed << " eps " << e.str() << " D " << D);
                CHECK(testsupport::check_clustering(d.condensed, d.clustering).error == "");
            }
        }
    }
}

TEST_CASE("dump lists every cluster") {
    Decomposition d = dec(caterpillar(), Ratio(1, 4), Ratio(1, 4), 3200);
    const std::string table = dump_clusters(d.condensed, d.clustering);
    std::size_t lines = 0;
    for (char ch : table) lines += ch == '\n';
    CHECK(lines >= d.clustering.clusters.size());
    CHECK(clusters_dot(d.condensed, d.clustering).rfind("digraph", 0) == 0);
}

TEST_CASE("invalid parameters") {
    RoutingTree t = make_tree({{"r", "a", 10}}, {"a"});
    CHECK_THROWS_AS(dec(t, Ratio(0), Ratio(1, 4), 20), InvalidArgument);
    CHECK_THROWS_AS(dec(t, Ratio(1, 4), Ratio(1, 4), 0), InvalidArgument);
}

} // TEST_SUITE
