#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace testsupport {

using vrpt::CondensedTree;
using vrpt::kNoVertex;

RoutingTree make_tree(const std::vector<E>& edges, const std::vector<const char*>& clients) {
    RoutingTree t;
    t.set_root(t.add_vertex(edges.front().u));
    for (const E& e : edges) {
        VertexId u = *t.find(e.u);
        VertexId v = t.add_vertex(e.v);
        t.add_edge(u, v, e.len);
    }
    for (const char* c : clients) t.set_client(*t.find(c));
    t.validate();
    return t;
}

Length steiner_tour(const RoutingTree& t, const std::vector<VertexId>& clients) {
    std::set<VertexId> edges;
    for (VertexId c : clients) {
        for (VertexId v = c; v != t.root(); v = t.parent(v)) edges.insert(v);
    }
    Length s = 0;
    for (VertexId v : edges) s += t.parent_length(v);
    return 2 * s;
}

namespace {

template <class Score>
Length enumerate_partitions(const RoutingTree& t, std::size_t max_blocks, Score score) {
    const auto& cl = t.clients();
    const std::size_t n = cl.size();
    std::vector<std::size_t> block(n, 0);
    Length best = -1;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            std::vector<std::vector<VertexId>> groups(used);
            for (std::size_t j = 0; j < n; ++j) groups[block[j]].push_back(cl[j]);
            Length v = score(groups);
            if (v >= 0 && (best < 0 || v < best)) best = v;
            return;
        }
        for (std::size_t b = 0; b <= used && b < max_blocks; ++b) {
            block[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    return best;
}

} // namespace

Length naive_min_makespan(const RoutingTree& t, std::size_t k) {
    return enumerate_partitions(t, k, [&](const std::vector<std::vector<VertexId>>& groups) {
        Length m = 0;
        for (const auto& g : groups) m = std::max(m, steiner_tour(t, g));
        return m;
    });
}

Length naive_min_capacitated(const RoutingTree& t, std::size_t Q) {
    return enumerate_partitions(t, t.clients().size(), [&](const std::vector<std::vector<VertexId>>& groups) {
        Length s = 0;
        for (const auto& g : groups) {
            if (g.size() > Q) return Length{-1};
            s += steiner_tour(t, g);
        }
        return s;
    });
}

vrpt::reassign::Weight naive_min_overload(const vrpt::reassign::AssignmentInstance& inst) {
    using vrpt::reassign::Weight;
    const std::size_t nb = inst.client_count(), na = inst.facility_count();
    std::vector<std::vector<std::size_t>> options(nb);
    for (const auto& e : inst.edges()) options[e.client].push_back(e.facility);
    std::vector<Weight> cap(na, 0);
    for (const auto& e : inst.edges()) cap[e.facility] += e.weight;
    std::vector<Weight> load(na, 0);
    Weight best = 0;
    bool have = false;
    std::function<void(std::size_t)> rec = [&](std::size_t b) {
        if (b == nb) {
            Weight h = 0;
            bool first = true;
            for (std::size_t a = 0; a < na; ++a) {
                Weight x = load[a] - cap[a];
                if (first || x > h) h = x;
                first = false;
            }
            if (!have || h < best) best = h;
            have = true;
            return;
        }
        for (std::size_t a : options[b]) {
            load[a] += inst.client_weight(b);
            rec(b + 1);
            load[a] -= inst.client_weight(b);
        }
    };
    rec(0);
    return best;
}

vrpt::reassign::AssignmentInstance random_assignment(std::mt19937_64& rng, std::size_t max_side, std::int64_t max_w,
                                                     bool skewed) {
    using namespace vrpt::reassign;
    std::uniform_int_distribution<std::size_t> side(1, max_side);
    std::uniform_int_distribution<std::int64_t> weight(0, max_w);
    const std::size_t na = side(rng), nb = side(rng);
    std::vector<Edge> edges;
    std::vector<Weight> wb(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        Weight sum = 0;
        bool any = false;
        if (skewed) {
            const Weight w = std::max<Weight>(1, max_w / 2);
            edges.push_back({0, b, w});
            sum += w;
            any = true;
        }
        for (std::size_t a = skewed ? 1 : 0; a < na; ++a) {
            if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
                Weight w = skewed ? std::uniform_int_distribution<Weight>(0, std::max<Weight>(0, max_w / 2 - 1))(rng)
                                  : weight(rng);
                edges.push_back({a, b, w});
                sum += w;
                any = true;
            }
        }
        if (!any) {
            std::size_t a = std::uniform_int_distribution<std::size_t>(0, na - 1)(rng);
            Weight w = weight(rng);
            edges.push_back({a, b, w});
            sum += w;
        }
        const Weight top = std::min<Weight>(sum, max_w);
        wb[b] = skewed ? top : std::uniform_int_distribution<Weight>(0, top)(rng);
    }
    return AssignmentInstance(na, wb, edges);
}

namespace {

struct Brute {
    Length len = 0; // edge to parent plus everything below
    std::size_t clients = 0;
};

Brute brute_branch(const RoutingTree& t, VertexId v) {
    Brute b;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (x != t.root()) b.len += t.parent_length(x);
        if (t.is_client(x)) ++b.clients;
        for (VertexId c : t.children(x)) stack.push_back(c);
    }
    return b;
}

bool is_aux(const RoutingTree& t, VertexId v) {
    return v != t.root() && !t.is_client(v) && t.parent_length(v) == 0 && t.name(v).rfind("_aux", 0) == 0;
}

} // namespace

std::string check_condensed(const RoutingTree& binary, const CondensedTree& ct) {
    if (ct.tree.total_length() != binary.total_length()) return "total length changed";
    auto g = [&](VertexId v) {
        Brute b = brute_branch(binary, v);
        return ct.load.of_length_and_clients(b.len, b.clients);
    };
    const std::int64_t thr = ct.threshold;

    std::map<VertexId, int> covered;
    for (VertexId v = 0; v < ct.tree.size(); ++v) {
        if (!ct.tree.is_client(v)) continue;
        for (VertexId c : ct.leaf_clients[v]) covered[c]++;
    }
    for (VertexId c : binary.clients()) {
        if (covered[c] != 1) return "client '" + binary.name(c) + "' covered " + std::to_string(covered[c]) + " times";
    }
    if (covered.size() != binary.clients().size()) return "condensed leaves name non-clients";

    std::map<VertexId, int> top_count;
    for (const auto& b : ct.branches) {
        Length len = 0;
        std::int64_t load = 0;
        for (VertexId t : b.tops) {
            top_count[t]++;
            if (g(t) > thr) return "branch at '" + binary.name(t) + "' exceeds the threshold";
            VertexId p = binary.parent(t);
            if (p != binary.root() && g(p) <= thr) return "branch at '" + binary.name(t) + "' is not maximal";
            len += brute_branch(binary, t).len;
            load += g(t);
        }
        if (load > thr) return "merged siblings exceed the threshold";
        if (len != b.length) return "condensed leaf length differs from its branch";
        if (ct.tree.parent_length(b.leaf) != len) return "condensed edge length differs from its branch";
    }
    for (VertexId v = 0; v < binary.size(); ++v) {
        if (v == binary.root()) continue;
        VertexId p = binary.parent(v);
        bool maximal = g(v) <= thr && (p == binary.root() || g(p) > thr);
        if (maximal != (top_count[v] == 1)) {
            return "vertex '" + binary.name(v) + (maximal ? "' is maximal but not condensed" : "' condensed twice or wrongly");
        }
    }
    auto head = [&](VertexId v) {
        while (is_aux(binary, v)) v = binary.parent(v);
        return v;
    };
    for (std::size_t i = 0; i < ct.branches.size(); ++i) {
        for (std::size_t j = i + 1; j < ct.branches.size(); ++j) {
            const auto& a = ct.branches[i];
            const auto& b = ct.branches[j];
            if (head(a.attach) == head(b.attach) && a.load + b.load <= thr) {
                return "sibling branches at '" + binary.name(head(a.attach)) + "' fit together";
            }
        }
    }
    return {};
}

ClusterReport check_clustering(const CondensedTree& ct, const vrpt::Clustering& cl) {
    using vrpt::ClusterKind;
    ClusterReport r;
    const RoutingTree& t = ct.tree;
    auto fail = [&](std::string m) {
        r.error = std::move(m);
        return r;
    };
    std::vector<int> pendant_cover(t.size(), 0);
    std::vector<int> pendant_use(cl.pendants.size(), 0);
    for (const auto& p : cl.pendants) {
        Length len = 0;
        VertexId x = p.leaf;
        for (;;) {
            pendant_cover[x]++;
            len += t.parent_length(x);
            if (x == p.top) break;
            x = t.parent(x);
            if (x == kNoVertex || x == t.root()) return fail("pendant path does not reach its top");
        }
        if (t.parent(p.top) != p.attach) return fail("pendant attach is not the parent of its top");
        if (len != p.length) return fail("pendant length mismatch");
    }
    std::map<VertexId, std::vector<std::pair<Length, Length>>> pieces;
    for (std::size_t id = 0; id < cl.clusters.size(); ++id) {
        const auto& c = cl.clusters[id];
        std::int64_t load = 0;
        if (c.kind == ClusterKind::Leaf) {
            if (c.pendant >= cl.pendants.size()) return fail("leaf cluster without pendant");
            pendant_use[c.pendant]++;
            const auto& p = cl.pendants[c.pendant];
            load = cl.load.of_length_and_clients(p.length, p.clients);
        } else {
            Length blen = 0;
            for (const auto& pc : c.pieces) {
                if (pc.length > 0) pieces[pc.child].push_back({pc.top_offset, pc.length});
                blen += pc.length;
            }
            load = cl.load.per_backbone_unit() * blen;
            if (!c.leaves.empty() && c.leaves.size() + 1 != c.pieces.size()) return fail("edge cluster slots mismatch");
            for (const auto& s : c.leaves) {
                if (s.placeholder()) continue;
                pendant_use[s.pendant]++;
                const auto& p = cl.pendants[s.pendant];
                load += cl.load.of_length_and_clients(p.length, p.clients);
            }
        }
        if (load != c.load) return fail("cluster " + std::to_string(id) + " load recomputes to " + std::to_string(load));
        r.relaxed += c.relaxed ? 1 : 0;
        r.promoted += c.promoted ? 1 : 0;
        switch (c.kind) {
        case ClusterKind::Leaf:
            if (!c.promoted && !vrpt::at_least(c.load, cl.upper_bound)) return fail("leaf cluster below the window");
            break;
        case ClusterKind::Small:
            if (!vrpt::below(c.load, cl.lower_bound)) return fail("small cluster not below the window");
            break;
        case ClusterKind::Edge:
            if (c.relaxed) {
                if (!vrpt::at_most(c.load, cl.upper_bound * vrpt::Ratio(2))) return fail("relaxed cluster above twice the window");
            } else if (!vrpt::at_least(c.load, cl.lower_bound) || !vrpt::at_most(c.load, cl.upper_bound)) {
                return fail("edge cluster " + std::to_string(id) + " outside the window");
            }
            break;
        }
    }
    for (std::size_t i = 0; i < pendant_use.size(); ++i) {
        if (pendant_use[i] != 1) return fail("pendant used " + std::to_string(pendant_use[i]) + " times");
    }
    for (VertexId v = 0; v < t.size(); ++v) {
        if (v == t.root()) continue;
        auto& iv = pieces[v];
        std::sort(iv.begin(), iv.end());
        if (pendant_cover[v] > 1) return fail("edge in two pendant paths");
        if (pendant_cover[v] == 1) {
            if (!iv.empty()) return fail("pendant edge also on the backbone");
            continue;
        }
        if (!cl.backbone[v]) return fail("non-backbone edge outside every pendant path");
        Length at = 0;
        for (const auto& [off, len] : iv) {
            if (off != at) return fail("backbone pieces of '" + t.name(v) + "' overlap or leave a gap");
            at += len;
        }
        if (at != t.parent_length(v)) return fail("backbone edge '" + t.name(v) + "' not fully covered");
    }
    return r;
}

namespace {

bool search_cover(const RoutingTree& t, Length tau) {
    const std::size_t n = t.size();
    std::vector<Length> sub(n, 0);
    auto order = t.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (*it != t.root()) sub[t.parent(*it)] += sub[*it] + t.parent_length(*it);
    }
    std::vector<bool> valid(n, false);
    for (VertexId v = 0; v < n; ++v) {
        bool ok = sub[v] >= tau;
        for (VertexId c : t.children(v)) ok = ok && sub[c] < tau;
        valid[v] = ok;
    }
    std::vector<VertexId> leaves;
    for (VertexId v = 0; v < n; ++v) {
        if (t.is_leaf(v)) leaves.push_back(v);
    }
    auto related = [&](VertexId a, VertexId b) { return t.is_ancestor(a, b) || t.is_ancestor(b, a); };
    std::vector<VertexId> chosen;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == leaves.size()) return true;
        for (VertexId m : chosen) {
            if (t.is_ancestor(m, leaves[i])) return rec(i + 1);
        }
        for (VertexId a = leaves[i];; a = t.parent(a)) {
            if (valid[a]) {
                bool free = true;
                for (VertexId m : chosen) free = free && !related(a, m);
                if (free) {
                    chosen.push_back(a);
                    if (rec(i + 1)) return true;
                    chosen.pop_back();
                }
            }
            if (a == t.root()) break;
        }
        return false;
    };
    return rec(0);
}

} // namespace

bool brute_force_cr_exists(const RoutingTree& t, Length tau) {
    std::vector<VertexId> edges;
    std::vector<std::vector<Length>> lowers;
    for (VertexId c = 0; c < t.size(); ++c) {
        if (c == t.root()) continue;
        const Length len = t.parent_length(c);
        std::vector<Length> opts;
        const Length at_threshold = tau - t.subtree_length(c);
        if (at_threshold > 0 && at_threshold <= len) opts.push_back(at_threshold);
        if (len > 0 && (opts.empty() || opts.back() != len)) opts.push_back(len);
        edges.push_back(c);
        lowers.push_back(opts);
    }
    std::vector<std::size_t> pick(edges.size(), 0); // 0 = untouched
    for (;;) {
        RoutingTree s = t;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (pick[i] == 0) continue;
            Length lower = lowers[i][pick[i] - 1];
            vrpt::subdivide_edge(s, edges[i], s.parent_length(edges[i]) - lower, "_x" + std::to_string(i));
        }
        if (search_cover(s, tau)) return true;
        std::size_t i = 0;
        while (i < edges.size() && pick[i] == lowers[i].size()) pick[i++] = 0;
        if (i == edges.size()) return false;
        ++pick[i];
    }
}

RoutingTree random_small_tree(std::mt19937_64& rng, std::size_t max_vertices, Length max_len) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_vertices)(rng);
    RoutingTree t;
    t.set_root(t.add_vertex("r"));
    std::uniform_int_distribution<Length> len(0, max_len);
    for (std::size_t i = 1; i < n; ++i) {
        VertexId p = static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
        VertexId v = t.add_vertex("x" + std::to_string(i));
        t.add_edge(p, v, len(rng));
    }
    for (VertexId v = 0; v < t.size(); ++v) {
        if (v != t.root() && t.is_leaf(v)) t.set_client(v);
    }
    t.validate();
    return t;
}

} // namespace testsupport
