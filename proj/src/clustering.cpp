#include "vrptree/clustering.hpp"

#include "vrptree/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace vrpt {

const char* cluster_kind_name(ClusterKind k) {
    switch (k) {
    case ClusterKind::Leaf: return "leaf";
    case ClusterKind::Small: return "small";
    case ClusterKind::Edge: return "edge";
    }
    return "?";
}

std::size_t Cluster::client_leaves() const {
    std::size_t n = 0;
    for (const auto& e : leaves) n += e.placeholder() ? 0 : 1;
    return n;
}

Length Cluster::leaf_length() const {
    Length s = 0;
    for (const auto& e : leaves) s += e.length;
    return s;
}

std::size_t Clustering::relaxed_count() const {
    return static_cast<std::size_t>(
        std::count_if(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.relaxed; }));
}

std::size_t Clustering::promoted_count() const {
    return static_cast<std::size_t>(
        std::count_if(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.promoted; }));
}

namespace {

// One element of a woolly edge while it is being cut, listed bottom to top.
struct Item {
    bool is_leaf = false;
    std::size_t pendant = kNone;
    VertexId child = kNoVertex;
    Length top_offset = 0;
    Length length = 0;
};

struct Run {
    std::vector<Item> items; // bottom to top
    std::int64_t load = 0;
};

std::vector<Run> cut_woolly(const std::vector<Item>& items, const Clustering& cl) {
    const std::int64_t unit = cl.load.per_backbone_unit();
    const std::int64_t hi = cl.upper_bound.floor_times(1);
    std::vector<Run> done;
    Run cur;
    auto close = [&] {
        done.push_back(std::move(cur));
        cur = Run{};
    };
    for (const Item& it : items) {
        if (it.is_leaf) {
            std::int64_t g = cl.pendants[it.pendant].load;
            if (cur.load + g > hi && !cur.items.empty() && at_least(cur.load, cl.lower_bound)) close();
            cur.items.push_back(it);
            cur.load += g;
            continue;
        }
        if (unit == 0 || it.length == 0) {
            cur.items.push_back(it);
            cur.load += unit * it.length;
            continue;
        }
        Length x = it.length; // the part [0, x) from the top is still unassigned
        while (x > 0) {
            Length room = cur.load >= hi ? 0 : (hi - cur.load) / unit;
            if (room >= x) {
                cur.items.push_back({false, kNone, it.child, 0, x});
                cur.load += unit * x;
                x = 0;
                break;
            }
            if (room > 0) {
                cur.items.push_back({false, kNone, it.child, x - room, room});
                cur.load += unit * room;
                x -= room;
            }
            if (at_least(cur.load, cl.lower_bound)) {
                close();
            } else {
                // Integer granularity: one unit overshoots the window.
                cur.items.push_back({false, kNone, it.child, x - 1, 1});
                cur.load += unit;
                x -= 1;
            }
        }
    }
    if (!cur.items.empty()) {
        if (at_least(cur.load, cl.lower_bound) || done.empty()) {
            close();
        } else {
            Run& prev = done.back();
            prev.items.insert(prev.items.end(), cur.items.begin(), cur.items.end());
            prev.load += cur.load;
        }
    }
    return done;
}

Cluster normalize(const Run& run, ClusterKind kind, const RoutingTree& t, const Clustering& cl) {
    Cluster c;
    c.kind = kind;
    c.load = run.load;
    bool want_piece = true;
    auto add_leaf = [&](const Item& it) {
        const PendantPath& p = cl.pendants[it.pendant];
        c.leaves.push_back({it.pendant, p.length, p.attach_depth, p.clients, p.load});
    };
    auto pad_piece = [&](Length depth) {
        BackbonePiece bp;
        bp.top_depth = depth;
        bp.synthetic = true;
        c.pieces.push_back(bp);
    };
    for (auto i = run.items.rbegin(); i != run.items.rend(); ++i) {
        const Item& it = *i;
        if (it.is_leaf) {
            Length at = cl.pendants[it.pendant].attach_depth;
            if (want_piece) pad_piece(at);
            add_leaf(it);
            want_piece = true;
        } else {
            if (!want_piece) {
                LeafSlot ph;
                ph.attach_depth = c.pieces.back().bottom_depth();
                c.leaves.push_back(ph);
            }
            BackbonePiece bp;
            bp.child = it.child;
            bp.top_offset = it.top_offset;
            bp.length = it.length;
            bp.top_depth = cl.depth[t.parent(it.child)] + it.top_offset;
            c.pieces.push_back(bp);
            want_piece = false;
        }
    }
    if (want_piece) pad_piece(c.leaves.empty() ? 0 : c.leaves.back().attach_depth);
    const BackbonePiece& first = c.pieces.front();
    if (!first.synthetic) {
        c.top_vertex = first.top_offset == 0 ? t.parent(first.child) : kNoVertex;
    } else if (!c.leaves.empty() && !c.leaves.front().placeholder()) {
        c.top_vertex = cl.pendants[c.leaves.front().pendant].attach;
    }
    return c;
}

} // namespace

Clustering build_clustering(const CondensedTree& ct, const Ratio& eps_hat, const Ratio& delta, std::int64_t D) {
    const RoutingTree& t = ct.tree;
    if (D < 1) throw InvalidArgument("load bound must be positive");
    if (eps_hat <= Ratio(0) || eps_hat > Ratio(1)) throw InvalidArgument("eps_hat must lie in (0, 1]");
    if (delta <= Ratio(0) || delta > Ratio(1)) throw InvalidArgument("delta must lie in (0, 1]");
    if (t.clients().empty()) throw InvalidArgument("instance has no clients");

    Clustering cl;
    cl.load = ct.load;
    cl.D = D;
    cl.eps_hat = eps_hat;
    cl.delta = delta;
    cl.upper_bound = delta * Ratio(D) / Ratio(2);
    cl.lower_bound = eps_hat * cl.upper_bound;
    cl.depth = TreeMetrics(t).depth;
    const VertexId root = t.root();
    const auto order = t.preorder();

    std::vector<std::size_t> pendant_of_top(t.size(), kNone);
    for (VertexId v : order) {
        if (v == root || !t.is_leaf(v)) continue;
        if (!t.is_client(v)) throw InternalError("condensed leaf '" + t.name(v) + "' is not a client");
        VertexId top = v;
        while (t.parent(top) != root && t.children(t.parent(top)).size() == 1) top = t.parent(top);
        PendantPath p;
        p.top = top;
        p.leaf = v;
        p.attach = t.parent(top);
        p.attach_depth = cl.depth[p.attach];
        p.length = cl.depth[v] - p.attach_depth;
        p.clients = ct.leaf_clients[v].size();
        p.load = cl.load.of_length_and_clients(p.length, p.clients);
        pendant_of_top[top] = cl.pendants.size();
        cl.pendants.push_back(p);
    }

    // Leaf clusters: pendant load >= delta * D / 2.
    std::vector<bool> is_leaf_cluster(cl.pendants.size(), false);
    bool any = false;
    for (std::size_t i = 0; i < cl.pendants.size(); ++i) {
        is_leaf_cluster[i] = at_least(cl.pendants[i].load, cl.upper_bound);
        any = any || is_leaf_cluster[i];
    }
    std::size_t promoted = kNone;
    if (!any) {
        promoted = 0;
        for (std::size_t i = 1; i < cl.pendants.size(); ++i) {
            if (cl.pendants[i].load > cl.pendants[promoted].load) promoted = i;
        }
        is_leaf_cluster[promoted] = true;
    }

    std::vector<bool> on_backbone(t.size(), false);
    cl.backbone.assign(t.size(), false);
    for (std::size_t i = 0; i < cl.pendants.size(); ++i) {
        if (!is_leaf_cluster[i]) continue;
        for (VertexId v = cl.pendants[i].attach; v != kNoVertex && !on_backbone[v]; v = t.parent(v)) {
            on_backbone[v] = true;
            if (v != root) cl.backbone[v] = true;
        }
    }
    auto is_lc_top = [&](VertexId c) {
        return pendant_of_top[c] != kNone && is_leaf_cluster[pendant_of_top[c]];
    };
    std::vector<int> cluster_children(t.size(), 0);
    std::vector<std::size_t> leaf_at(t.size(), kNone);
    for (VertexId v : order) {
        if (!on_backbone[v]) continue;
        for (VertexId c : t.children(v)) {
            if (on_backbone[c] || is_lc_top(c)) {
                ++cluster_children[v];
            } else if (pendant_of_top[c] != kNone) {
                leaf_at[v] = pendant_of_top[c];
            } else {
                throw InternalError("vertex '" + t.name(c) + "' is neither on the backbone nor a leaf edge");
            }
        }
    }
    auto is_bvertex = [&](VertexId v) { return v == root || cluster_children[v] == 2; };

    // B-nodes and leaf clusters in preorder.
    std::vector<std::size_t> bnode_of(t.size(), kNone);
    cl.bnodes.push_back({BNode::Kind::Root, root, kNone, kNone, {}, kNone});
    bnode_of[root] = 0;
    for (VertexId v : order) {
        if (!on_backbone[v]) continue;
        if (v != root && cluster_children[v] == 2) {
            bnode_of[v] = cl.bnodes.size();
            cl.bnodes.push_back({BNode::Kind::Branch, v, kNone, kNone, {}, kNone});
        }
        for (VertexId c : t.children(v)) {
            if (!is_lc_top(c)) continue;
            std::size_t pi = pendant_of_top[c];
            Cluster lc;
            lc.kind = ClusterKind::Leaf;
            lc.pendant = pi;
            lc.load = cl.pendants[pi].load;
            lc.promoted = pi == promoted;
            std::size_t id = cl.clusters.size();
            cl.clusters.push_back(std::move(lc));
            cl.leaf_clusters.push_back(id);
            cl.bnodes.push_back({BNode::Kind::Leaf, v, id, kNone, {}, kNone});
        }
    }

    const std::int64_t unit = cl.load.per_backbone_unit();
    for (std::size_t x = 1; x < cl.bnodes.size(); ++x) {
        std::vector<Item> items;
        auto push_leaf = [&](VertexId v) {
            if (leaf_at[v] != kNone) items.push_back({true, leaf_at[v], kNoVertex, 0, 0});
        };
        VertexId v = cl.bnodes[x].vertex;
        bool leaf_node = cl.bnodes[x].kind == BNode::Kind::Leaf;
        if (!(leaf_node && is_bvertex(v))) {
            if (leaf_node) push_leaf(v);
            for (;;) {
                items.push_back({false, kNone, v, 0, t.parent_length(v)});
                v = t.parent(v);
                if (is_bvertex(v)) break;
                push_leaf(v);
            }
        }
        if (v == root && cluster_children[root] == 1) push_leaf(root);

        std::size_t up = bnode_of[v];
        cl.bnodes[x].parent = up;
        cl.bnodes[up].children.push_back(x);
        WoollyEdge w;
        w.upper = up;
        w.lower = x;
        for (const Item& it : items) {
            w.load += it.is_leaf ? cl.pendants[it.pendant].load : unit * it.length;
        }
        std::size_t wi = cl.woolly.size();
        cl.bnodes[x].woolly_above = wi;
        if (!items.empty()) {
            std::vector<Run> runs;
            ClusterKind kind = ClusterKind::Edge;
            if (below(w.load, cl.lower_bound)) {
                kind = ClusterKind::Small;
                runs.push_back(Run{items, w.load});
            } else {
                runs = cut_woolly(items, cl);
            }
            for (auto r = runs.rbegin(); r != runs.rend(); ++r) {
                Cluster c = normalize(*r, kind, t, cl);
                c.woolly = wi;
                if (kind == ClusterKind::Edge) {
                    c.relaxed = !at_least(c.load, cl.lower_bound) || !at_most(c.load, cl.upper_bound);
                }
                std::size_t id = cl.clusters.size();
                (kind == ClusterKind::Edge ? cl.edge_clusters : cl.small_clusters).push_back(id);
                cl.clusters.push_back(std::move(c));
                w.clusters.push_back(id);
            }
        }
        cl.woolly.push_back(std::move(w));
    }
    return cl;
}

ClusterTree build_cluster_tree(const Clustering& cl) {
    ClusterTree ts;
    ts.node_of_cluster.assign(cl.clusters.size(), kNone);
    auto add = [&](StarNode n) {
        std::size_t id = ts.nodes.size();
        if (n.cluster != kNone) ts.node_of_cluster[n.cluster] = id;
        ts.nodes.push_back(std::move(n));
        return id;
    };
    auto link = [&](std::size_t parent, std::size_t child) {
        ts.nodes[parent].children.push_back(child);
        ts.nodes[child].parent = parent;
    };

    // Children are created before their parents; postorder falls out below.
    std::vector<std::size_t> star_of(cl.bnodes.size(), kNone);
    std::vector<std::pair<std::size_t, bool>> stack{{0, false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        const BNode& b = cl.bnodes[x];
        if (!expanded) {
            stack.push_back({x, true});
            for (auto c = b.children.rbegin(); c != b.children.rend(); ++c) stack.push_back({*c, false});
            continue;
        }
        StarNode n;
        n.vertex = b.vertex;
        n.bnode = x;
        if (b.kind == BNode::Kind::Leaf) {
            n.kind = StarKind::Base;
            n.cluster = b.cluster;
            n.depth = cl.pendants[cl.clusters[b.cluster].pendant].attach_depth;
        } else {
            n.kind = StarKind::Merge;
            n.depth = cl.depth[b.vertex];
        }
        std::size_t id = add(std::move(n));
        star_of[x] = id;
        for (std::size_t c : b.children) {
            std::size_t below_id = star_of[c];
            const WoollyEdge& w = cl.woolly[cl.bnodes[c].woolly_above];
            for (auto ci = w.clusters.rbegin(); ci != w.clusters.rend(); ++ci) {
                const Cluster& cc = cl.clusters[*ci];
                if (cc.kind != ClusterKind::Edge) continue;
                StarNode g;
                g.kind = StarKind::Grow;
                g.cluster = *ci;
                g.depth = cc.pieces.front().top_depth;
                g.vertex = cc.top_vertex;
                std::size_t gid = add(std::move(g));
                link(gid, below_id);
                below_id = gid;
            }
            link(id, below_id);
        }
    }
    ts.root = star_of[0];

    std::vector<std::pair<std::size_t, bool>> st{{ts.root, false}};
    while (!st.empty()) {
        auto [v, expanded] = st.back();
        st.pop_back();
        if (expanded) {
            ts.postorder.push_back(v);
            continue;
        }
        st.push_back({v, true});
        const auto& ch = ts.nodes[v].children;
        for (auto c = ch.rbegin(); c != ch.rend(); ++c) st.push_back({*c, false});
    }
    return ts;
}

SmallClusterAssignment assign_small_clusters(const Clustering& cl, const ClusterTree&) {
    SmallClusterAssignment sa;
    sa.target.assign(cl.clusters.size(), kNone);
    sa.assigned.assign(cl.clusters.size(), {});

    std::vector<std::size_t> bdepth(cl.bnodes.size(), 0);
    for (std::size_t x = 1; x < cl.bnodes.size(); ++x) bdepth[x] = bdepth[cl.bnodes[x].parent] + 1;

    std::vector<std::size_t> order = cl.small_clusters;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return bdepth[cl.woolly[cl.clusters[a].woolly].lower] > bdepth[cl.woolly[cl.clusters[b].woolly].lower];
    });
    for (std::size_t s : order) {
        std::size_t lower = cl.woolly[cl.clusters[s].woolly].lower;
        // Nearest descendant leaf cluster with spare capacity, breadth first.
        std::deque<std::size_t> q{lower};
        std::size_t chosen = kNone;
        while (!q.empty() && chosen == kNone) {
            std::size_t x = q.front();
            q.pop_front();
            const BNode& b = cl.bnodes[x];
            if (b.kind == BNode::Kind::Leaf && sa.assigned[b.cluster].size() < 2) chosen = b.cluster;
            for (std::size_t c : b.children) q.push_back(c);
        }
        if (chosen == kNone) throw InternalError("small cluster " + std::to_string(s) + " has no leaf cluster with capacity");
        sa.target[s] = chosen;
        sa.assigned[chosen].push_back(s);
    }
    return sa;
}

RoutingTree scale_lengths(const RoutingTree& tree, std::int64_t factor) {
    if (factor < 1) throw InvalidArgument("scale factor must be positive");
    if (factor == 1) return tree;
    RoutingTree out;
    out.set_scale(tree.scale() * factor);
    for (const auto& c : tree.comments()) out.add_comment(c);
    for (VertexId v = 0; v < tree.size(); ++v) out.add_vertex(tree.name(v));
    out.set_root(tree.root());
    for (VertexId c : tree.edge_order()) out.add_edge(tree.parent(c), c, tree.parent_length(c) * factor);
    for (VertexId c : tree.clients()) out.set_client(c);
    return out;
}

Decomposition decompose(const RoutingTree& tree, const LoadFunction& load, const Ratio& eps_hat,
                        const Ratio& delta, std::int64_t D) {
    if (tree.clients().empty()) throw InvalidArgument("instance has no clients");
    if (D < 1) throw InvalidArgument("load bound must be positive");
    if (eps_hat <= Ratio(0) || eps_hat > Ratio(1)) throw InvalidArgument("eps_hat must lie in (0, 1]");
    if (delta <= Ratio(0) || delta > Ratio(1)) throw InvalidArgument("delta must lie in (0, 1]");
    Decomposition d;
    std::int64_t s = 1;
    if (load.per_backbone_unit() > 0) {
        // Want delta*D*s/2 * (1 - eps_hat) >= unit so a cut never has to overshoot.
        Ratio slack = eps_hat < Ratio(1) ? Ratio(1) - eps_hat : Ratio(1, 2);
        Ratio need = Ratio(2 * load.per_backbone_unit()) / (delta * Ratio(D) * slack);
        s = std::max<std::int64_t>(1, need.ceil_times(1));
        const Length total = std::max<Length>(tree.total_length(), 1);
        const std::int64_t limit = (std::int64_t{1} << 40) / std::max<std::int64_t>(total, D);
        s = std::clamp<std::int64_t>(s, 1, std::max<std::int64_t>(1, std::min<std::int64_t>(limit, 1 << 16)));
    }
    d.unit_scale = s;
    d.D = D * s;
    d.tree = scale_lengths(binarize(tree), s);
    d.condensed = condense(d.tree, load, delta, d.D);
    d.clustering = build_clustering(d.condensed, eps_hat, delta, d.D);
    d.tstar = build_cluster_tree(d.clustering);
    d.smalls = assign_small_clusters(d.clustering, d.tstar);
    return d;
}

std::string dump_clusters(const CondensedTree& ct, const Clustering& cl) {
    const RoutingTree& t = ct.tree;
    std::ostringstream out;
    out << "# id\tkind\tload\tflags\tedges\n";
    for (std::size_t i = 0; i < cl.clusters.size(); ++i) {
        const Cluster& c = cl.clusters[i];
        out << i << '\t' << cluster_kind_name(c.kind) << '\t' << c.load << '\t';
        std::string flags;
        if (c.relaxed) flags += "relaxed";
        if (c.promoted) flags += flags.empty() ? "promoted" : ",promoted";
        out << (flags.empty() ? "-" : flags) << '\t';
        auto pendant_str = [&](std::size_t pi) {
            const PendantPath& p = cl.pendants[pi];
            return t.name(p.attach) + ">" + t.name(p.leaf) + ":" + std::to_string(p.length);
        };
        if (c.kind == ClusterKind::Leaf) {
            out << pendant_str(c.pendant);
        } else {
            bool first = true;
            auto sep = [&] {
                if (!first) out << ' ';
                first = false;
            };
            for (std::size_t j = 0; j < c.pieces.size(); ++j) {
                const BackbonePiece& p = c.pieces[j];
                if (!p.synthetic) {
                    sep();
                    out << t.name(t.parent(p.child)) << "-" << t.name(p.child) << "[" << p.top_offset << "+"
                        << p.length << "]";
                }
                if (j < c.leaves.size() && !c.leaves[j].placeholder()) {
                    sep();
                    out << pendant_str(c.leaves[j].pendant);
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string clusters_dot(const CondensedTree& ct, const Clustering& cl) {
    const RoutingTree& t = ct.tree;
    std::vector<std::string> label(t.size());
    for (std::size_t i = 0; i < cl.clusters.size(); ++i) {
        const Cluster& c = cl.clusters[i];
        std::string tag = std::string(cluster_kind_name(c.kind)) + " " + std::to_string(i);
        auto mark_pendant = [&](std::size_t pi) {
            const PendantPath& p = cl.pendants[pi];
            for (VertexId v = p.leaf; v != p.attach; v = t.parent(v)) label[v] = tag;
        };
        if (c.kind == ClusterKind::Leaf) mark_pendant(c.pendant);
        for (const auto& p : c.pieces) {
            if (p.synthetic) continue;
            label[p.child] += label[p.child].empty() ? tag : ", " + tag;
        }
        for (const auto& e : c.leaves) {
            if (!e.placeholder()) mark_pendant(e.pendant);
        }
    }
    std::ostringstream out;
    out << "digraph clusters {\n  node [shape=circle];\n";
    for (VertexId v = 0; v < t.size(); ++v) {
        out << "  \"" << t.name(v) << "\"";
        if (v == t.root()) out << " [shape=box]";
        else if (t.is_client(v)) out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (VertexId c : t.edge_order()) {
        out << "  \"" << t.name(t.parent(c)) << "\" -> \"" << t.name(c) << "\" [label=\"" << t.parent_length(c);
        if (!label[c].empty()) out << " | " << label[c];
        out << "\"" << (cl.backbone[c] ? ", penwidth=2" : "") << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace vrpt
