#include "vrptree/instances.hpp"

#include "vrptree/errors.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace vrpt {

Shape parse_shape(const std::string& name) {
    if (name == "random") return Shape::Random;
    if (name == "caterpillar") return Shape::Caterpillar;
    if (name == "star") return Shape::Star;
    throw InvalidArgument("unknown shape '" + name + "' (random, caterpillar, star)");
}

const char* shape_name(Shape s) {
    switch (s) {
    case Shape::Random: return "random";
    case Shape::Caterpillar: return "caterpillar";
    case Shape::Star: return "star";
    }
    return "?";
}

namespace {

struct EdgeSpec {
    std::string u, v;
    Length len;
};

RoutingTree assemble(const std::string& header, const std::vector<EdgeSpec>& edges,
                     const std::vector<std::string>& clients) {
    RoutingTree t;
    t.add_comment(header);
    t.set_root(t.add_vertex("r"));
    // Parents are emitted before children so a plain scan can add vertices.
    std::vector<bool> placed(edges.size(), false);
    std::size_t left = edges.size();
    while (left > 0) {
        bool progress = false;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (placed[i] || !t.find(edges[i].u)) continue;
            VertexId u = *t.find(edges[i].u);
            VertexId v = t.add_vertex(edges[i].v);
            t.add_edge(u, v, edges[i].len);
            placed[i] = true;
            --left;
            progress = true;
        }
        if (!progress) throw InternalError("generator produced a disconnected edge list");
    }
    for (const auto& c : clients) t.set_client(*t.find(c));
    t.validate();
    return t;
}

} // namespace

RoutingTree gen_random(std::uint64_t seed, std::size_t n, Length max_len, Shape shape) {
    if (n < 1) throw InvalidArgument("need at least one client");
    if (max_len < 1) throw InvalidArgument("max_len must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Length> len(1, max_len);
    std::ostringstream header;
    header << "# gen " << shape_name(shape) << " seed=" << seed << " n=" << n << " max_len=" << max_len;

    std::vector<EdgeSpec> edges;
    std::vector<std::string> clients;
    auto client = [&](std::size_t i) { return "c" + std::to_string(i); };
    switch (shape) {
    case Shape::Star:
        for (std::size_t i = 1; i <= n; ++i) {
            edges.push_back({"r", client(i), len(rng)});
            clients.push_back(client(i));
        }
        break;
    case Shape::Caterpillar: {
        std::string prev = "r";
        for (std::size_t i = 1; i < n; ++i) {
            std::string s = "v" + std::to_string(i);
            edges.push_back({prev, s, len(rng)});
            edges.push_back({s, client(i), len(rng)});
            clients.push_back(client(i));
            prev = s;
        }
        edges.push_back({prev, client(n), len(rng)});
        clients.push_back(client(n));
        break;
    }
    case Shape::Random: {
        // Each client attaches to the depot, to an internal vertex, or to a
        // fresh vertex subdividing an existing edge.
        std::vector<std::string> internal{"r"};
        std::size_t next_internal = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            std::string host;
            if (!edges.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
                std::size_t e = std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng);
                host = "v" + std::to_string(next_internal++);
                EdgeSpec lower{host, edges[e].v, len(rng)};
                edges[e].v = host;
                edges[e].len = len(rng);
                edges.push_back(lower);
                internal.push_back(host);
            } else {
                host = internal[std::uniform_int_distribution<std::size_t>(0, internal.size() - 1)(rng)];
            }
            edges.push_back({host, client(i), len(rng)});
            clients.push_back(client(i));
        }
        break;
    }
    }
    return assemble(header.str(), edges, clients);
}

void CounterexampleParams::validate() const {
    if (l < 1) throw InvalidArgument("counterexample needs l >= 1");
    if (path_len <= 0) throw InvalidArgument("path_len must be positive");
    if (side_len < 0 || main_len < 0 || tau < 0) throw InvalidArgument("lengths must be nonnegative");
    if (2 * side_len >= tau) throw InvalidArgument("side_len must be below tau / 2");
    if (2 * main_len < tau) throw InvalidArgument("main_len must be at least tau / 2");
}

RoutingTree gen_counterexample(const CounterexampleParams& p) {
    p.validate();
    std::ostringstream header;
    header << "# gen counterexample l=" << p.l << " path_len=" << p.path_len << " side_len=" << p.side_len
           << " main_len=" << p.main_len << " tau=" << p.tau;
    std::vector<EdgeSpec> edges;
    std::vector<std::string> clients;
    std::string prev = "r";
    for (std::size_t i = 1; i <= p.l; ++i) {
        std::string v = "v" + std::to_string(i);
        edges.push_back({prev, v, p.path_len});
        edges.push_back({v, "s" + std::to_string(i), p.side_len});
        clients.push_back("s" + std::to_string(i));
        prev = v;
    }
    std::string top = "v" + std::to_string(p.l + 1);
    edges.push_back({prev, top, p.path_len});
    edges.push_back({top, "m", p.main_len});
    clients.push_back("m");
    return assemble(header.str(), edges, clients);
}

std::optional<CrWitness> check_cr(const RoutingTree& tree, Length tau) {
    if (tree.size() > kCrMaxVertices) {
        throw TooLarge("check-cr supports at most " + std::to_string(kCrMaxVertices) + " vertices, got " +
                       std::to_string(tree.size()));
    }
    if (tau < 0) throw InvalidArgument("tau must be nonnegative");
    TreeMetrics m(tree);
    const auto order = tree.preorder();

    std::vector<Length> max_child(tree.size(), 0);
    for (VertexId v = 0; v < tree.size(); ++v) {
        for (VertexId c : tree.children(v)) max_child[v] = std::max(max_child[v], m.subtree_length[c]);
    }
    auto real_ok = [&](VertexId v) {
        bool small = true;
        for (VertexId c : tree.children(v)) small = small && m.subtree_length[c] < tau;
        return small && m.subtree_length[v] >= tau;
    };
    auto virtual_ok = [&](VertexId c) {
        return c != tree.root() && m.subtree_length[c] < tau && tau <= m.subtree_length[c] + tree.parent_length(c);
    };

    std::vector<bool> covered(tree.size(), false);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        bool all = !tree.is_leaf(v);
        for (VertexId c : tree.children(v)) all = all && (virtual_ok(c) || covered[c]);
        covered[v] = real_ok(v) || all;
    }
    if (!covered[tree.root()]) return std::nullopt;

    CrWitness w;
    std::vector<VertexId> stack{tree.root()};
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (real_ok(v)) {
            w.members.push_back({false, v, 0, m.subtree_length[v], max_child[v], true, true});
            continue;
        }
        const auto& ch = tree.children(v);
        for (auto c = ch.rbegin(); c != ch.rend(); ++c) {
            if (virtual_ok(*c)) {
                Length lower = tau - m.subtree_length[*c];
                w.members.push_back({true, *c, lower, m.subtree_length[*c] + lower, m.subtree_length[*c], true, true});
            } else {
                stack.push_back(*c);
            }
        }
    }
    w.independent = true;
    return w;
}

std::string recheck_cr(const RoutingTree& tree, Length tau, const CrWitness& w) {
    if (w.members.empty()) return "witness is empty";
    RoutingTree t = tree;
    std::vector<VertexId> member;
    for (std::size_t i = 0; i < w.members.size(); ++i) {
        const CrMember& x = w.members[i];
        if (x.vertex >= tree.size()) return "member names an unknown vertex";
        if (!x.is_virtual) {
            member.push_back(x.vertex);
            continue;
        }
        if (x.vertex == tree.root()) return "virtual member on the root";
        Length edge = t.parent_length(x.vertex);
        if (x.lower < 0 || x.lower > edge) return "subdivision point outside its edge";
        member.push_back(subdivide_edge(t, x.vertex, edge - x.lower, "_cr" + std::to_string(i)));
    }
    for (std::size_t i = 0; i < member.size(); ++i) {
        VertexId v = member[i];
        Length sub = t.subtree_length(v);
        if (sub < tau) return "member '" + t.name(v) + "' is not large: subtree length " + std::to_string(sub);
        for (VertexId c : t.children(v)) {
            if (t.subtree_length(c) >= tau) return "member '" + t.name(v) + "' is not small: child '" + t.name(c) + "'";
        }
        for (std::size_t j = 0; j < member.size(); ++j) {
            if (i != j && t.is_ancestor(v, member[j])) {
                return "members '" + t.name(v) + "' and '" + t.name(member[j]) + "' are not independent";
            }
        }
    }
    for (VertexId leaf = 0; leaf < t.size(); ++leaf) {
        if (!t.is_leaf(leaf) || leaf == t.root()) continue;
        std::size_t hits = 0;
        for (VertexId v : member) hits += t.is_ancestor(v, leaf) ? 1 : 0;
        if (hits != 1) return "leaf '" + t.name(leaf) + "' lies below " + std::to_string(hits) + " members";
    }
    return {};
}

std::string describe_cr(const RoutingTree& tree, const CrWitness& w) {
    std::ostringstream out;
    out << "member\tkind\tlower\tsubtree\tmax_child\tsmall\tlarge\n";
    for (const auto& m : w.members) {
        out << tree.name(m.vertex) << '\t' << (m.is_virtual ? "virtual" : "vertex") << '\t'
            << format_length(m.lower, tree.scale()) << '\t' << format_length(m.subtree_length, tree.scale()) << '\t'
            << format_length(m.max_child_subtree, tree.scale()) << '\t' << (m.small ? "yes" : "no") << '\t'
            << (m.large ? "yes" : "no") << '\n';
    }
    out << "independent\t" << (w.independent ? "yes" : "no") << '\n';
    return out.str();
}

} // namespace vrpt
