#include "vrptree/tree.hpp"

#include "vrptree/errors.hpp"

#include <algorithm>
#include <cstdint>

namespace vrpt {

VertexId RoutingTree::add_vertex(std::string name) {
    if (name.empty()) throw InvalidArgument("empty vertex id");
    if (by_name_.count(name)) throw InvalidArgument("duplicate vertex id '" + name + "'");
    auto id = static_cast<VertexId>(names_.size());
    by_name_.emplace(name, id);
    names_.push_back(std::move(name));
    parent_.push_back(kNoVertex);
    parent_len_.push_back(0);
    children_.emplace_back();
    client_.push_back(false);
    return id;
}

void RoutingTree::add_edge(VertexId parent, VertexId child, Length length) {
    if (parent >= size() || child >= size()) throw InvalidArgument("edge references unknown vertex");
    if (length < 0) throw InvalidArgument("negative edge length on '" + names_[child] + "'");
    if (parent == child) throw InvalidArgument("self loop at '" + names_[child] + "'");
    if (parent_[child] != kNoVertex) {
        if (parent_[child] == parent) {
            throw InvalidArgument("duplicate edge " + names_[parent] + " -> " + names_[child]);
        }
        throw InvalidArgument("vertex '" + names_[child] + "' has two parents");
    }
    if (child == root_) throw InvalidArgument("root '" + names_[child] + "' cannot have a parent");
    parent_[child] = parent;
    parent_len_[child] = length;
    children_[parent].push_back(child);
    edge_order_.push_back(child);
}

void RoutingTree::set_root(VertexId v) {
    if (v >= size()) throw InvalidArgument("unknown root");
    if (parent_[v] != kNoVertex) throw InvalidArgument("root '" + names_[v] + "' cannot have a parent");
    root_ = v;
}

void RoutingTree::set_client(VertexId v, bool is_client) {
    if (v >= size()) throw InvalidArgument("unknown client");
    if (client_[v] == is_client) {
        if (is_client) throw InvalidArgument("duplicate client '" + names_[v] + "'");
        return;
    }
    client_[v] = is_client;
    if (is_client) {
        client_order_.push_back(v);
    } else {
        client_order_.erase(std::find(client_order_.begin(), client_order_.end(), v));
    }
}

void RoutingTree::set_scale(std::int64_t s) {
    if (s < 1) throw InvalidArgument("scale must be a positive integer");
    scale_ = s;
}

std::optional<VertexId> RoutingTree::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

void RoutingTree::validate() const {
    if (root_ == kNoVertex) throw InvalidArgument("instance has no root");
    auto order = preorder();
    if (order.size() != size()) {
        for (VertexId v = 0; v < size(); ++v) {
            if (v != root_ && parent_[v] == kNoVertex) {
                throw InvalidArgument("vertex '" + names_[v] + "' is disconnected from the root");
            }
        }
        throw InvalidArgument("edge list contains a cycle");
    }
    for (VertexId v : client_order_) {
        if (!children_[v].empty()) throw InvalidArgument("client '" + names_[v] + "' is not a leaf");
        if (v == root_) throw InvalidArgument("the depot cannot be a client");
    }
}

std::vector<VertexId> RoutingTree::preorder() const {
    std::vector<VertexId> out;
    if (root_ == kNoVertex) return out;
    out.reserve(size());
    std::vector<VertexId> stack{root_};
    std::vector<bool> seen(size(), false);
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        out.push_back(v);
        const auto& ch = children_[v];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

bool RoutingTree::is_ancestor(VertexId anc, VertexId v) const {
    while (v != kNoVertex) {
        if (v == anc) return true;
        v = parent_[v];
    }
    return false;
}

std::size_t RoutingTree::max_children() const {
    std::size_t m = 0;
    for (const auto& c : children_) m = std::max(m, c.size());
    return m;
}

Length RoutingTree::total_length() const {
    Length s = 0;
    for (VertexId v = 0; v < size(); ++v) s += parent_len_[v];
    return s;
}

Length RoutingTree::subtree_length(VertexId v) const {
    if (v >= size()) throw InvalidArgument("unknown vertex");
    Length s = 0;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        for (VertexId c : children_[x]) {
            s += parent_len_[c];
            stack.push_back(c);
        }
    }
    return s;
}

Length RoutingTree::dist_to_root(VertexId v) const {
    if (v >= size()) throw InvalidArgument("unknown vertex");
    Length d = 0;
    while (parent_[v] != kNoVertex) {
        d += parent_len_[v];
        v = parent_[v];
    }
    return d;
}

std::size_t RoutingTree::clients_below(VertexId v) const {
    if (v >= size()) throw InvalidArgument("unknown vertex");
    std::size_t n = 0;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (client_[x]) ++n;
        for (VertexId c : children_[x]) stack.push_back(c);
    }
    return n;
}

TreeMetrics::TreeMetrics(const RoutingTree& tree)
    : depth(tree.size(), 0), subtree_length(tree.size(), 0), clients(tree.size(), 0) {
    auto order = tree.preorder();
    for (VertexId v : order) {
        if (v != tree.root()) depth[v] = depth[tree.parent(v)] + tree.parent_length(v);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        VertexId v = *it;
        if (tree.is_client(v)) clients[v] += 1;
        if (v != tree.root()) {
            VertexId p = tree.parent(v);
            subtree_length[p] += subtree_length[v] + tree.parent_length(v);
            clients[p] += clients[v];
        }
    }
}

std::int64_t branch_load(const RoutingTree& tree, const LoadFunction& load, VertexId v) {
    if (v >= tree.size()) throw InvalidArgument("unknown vertex");
    Length len = tree.subtree_length(v) + (v == tree.root() ? 0 : tree.parent_length(v));
    return load.of_length_and_clients(len, tree.clients_below(v));
}

RoutingTree binarize(const RoutingTree& tree) {
    RoutingTree out;
    out.set_scale(tree.scale());
    for (const auto& c : tree.comments()) out.add_comment(c);
    for (VertexId v = 0; v < tree.size(); ++v) out.add_vertex(tree.name(v));
    if (tree.root() != kNoVertex) out.set_root(tree.root());
    if (tree.max_children() <= 2) {
        for (VertexId c : tree.edge_order()) out.add_edge(tree.parent(c), c, tree.parent_length(c));
        for (VertexId c : tree.clients()) out.set_client(c);
        return out;
    }

    std::size_t aux = 0;
    auto fresh_name = [&]() {
        for (;;) {
            std::string n = "_aux" + std::to_string(++aux);
            if (!out.find(n)) return n;
        }
    };
    for (VertexId v : tree.preorder()) {
        const auto& ch = tree.children(v);
        VertexId host = v;
        std::size_t i = 0;
        while (ch.size() - i > 2) {
            out.add_edge(host, ch[i], tree.parent_length(ch[i]));
            VertexId extra = out.add_vertex(fresh_name());
            out.add_edge(host, extra, 0);
            host = extra;
            ++i;
        }
        for (; i < ch.size(); ++i) out.add_edge(host, ch[i], tree.parent_length(ch[i]));
    }
    for (VertexId c : tree.clients()) out.set_client(c);
    return out;
}

VertexId subdivide_edge(RoutingTree& tree, VertexId v, Length upper, std::string name) {
    if (v >= tree.size() || v == tree.root()) throw InvalidArgument("cannot subdivide: no parent edge");
    if (upper < 0 || upper > tree.parent_length(v)) throw InvalidArgument("subdivision point outside edge");
    // Rebuild: the tree type is append-only, so re-create with the new vertex.
    RoutingTree out;
    out.set_scale(tree.scale());
    for (const auto& c : tree.comments()) out.add_comment(c);
    for (VertexId x = 0; x < tree.size(); ++x) out.add_vertex(tree.name(x));
    VertexId mid = out.add_vertex(std::move(name));
    out.set_root(tree.root());
    for (VertexId c : tree.edge_order()) {
        if (c == v) {
            out.add_edge(tree.parent(v), mid, upper);
            out.add_edge(mid, v, tree.parent_length(v) - upper);
        } else {
            out.add_edge(tree.parent(c), c, tree.parent_length(c));
        }
    }
    for (VertexId c : tree.clients()) out.set_client(c);
    tree = std::move(out);
    return mid;
}

namespace {

void collect_clients(const RoutingTree& t, VertexId top, std::vector<VertexId>& out) {
    std::vector<VertexId> stack{top};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (t.is_client(x)) out.push_back(x);
        const auto& ch = t.children(x);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
}

} // namespace

CondensedTree condense(const RoutingTree& tree, const LoadFunction& load, const Ratio& delta, std::int64_t D) {
    if (tree.max_children() > 2) throw InvalidArgument("condense requires a binarized tree");
    if (D < 0) throw InvalidArgument("negative load bound");
    CondensedTree out;
    out.load = load;
    out.threshold = delta.floor_times(D);
    const std::int64_t thr = out.threshold;

    TreeMetrics m(tree);
    const VertexId root = tree.root();
    std::vector<std::int64_t> g(tree.size(), 0);
    for (VertexId v = 0; v < tree.size(); ++v) {
        if (v == root) continue;
        g[v] = load.of_length_and_clients(m.subtree_length[v] + tree.parent_length(v), m.clients[v]);
    }
    // Maximal branches: g(b) <= thr and the parent branch (if any) is heavier.
    std::vector<bool> maximal(tree.size(), false);
    for (VertexId v = 0; v < tree.size(); ++v) {
        if (v == root) continue;
        VertexId p = tree.parent(v);
        maximal[v] = g[v] <= thr && (p == root || g[p] > thr);
    }

    RoutingTree& ct = out.tree;
    ct.set_scale(tree.scale());
    for (const auto& c : tree.comments()) ct.add_comment(c);
    std::vector<VertexId> map(tree.size(), kNoVertex);
    auto add = [&](std::string name, VertexId prov) {
        VertexId id = ct.add_vertex(std::move(name));
        out.provenance.push_back(prov);
        out.leaf_clients.emplace_back();
        return id;
    };
    map[root] = add(tree.name(root), root);
    ct.set_root(map[root]);

    auto emit_branch = [&](VertexId u, const std::vector<VertexId>& tops) {
        CondensedBranch b;
        b.attach = u;
        b.sibling_merged = tops.size() > 1;
        std::string name;
        for (VertexId t : tops) {
            b.length += m.subtree_length[t] + tree.parent_length(t);
            b.load += g[t];
            collect_clients(tree, t, b.clients);
            if (!name.empty()) name += "+";
            name += tree.name(t);
        }
        b.tops = tops;
        b.leaf = add(name, tops.size() == 1 ? tops.front() : kNoVertex);
        ct.add_edge(map[u], b.leaf, b.length);
        ct.set_client(b.leaf);
        out.leaf_clients[b.leaf] = b.clients;
        out.branches.push_back(std::move(b));
    };

    // Children of one input vertex are spread over a chain of zero-length
    // auxiliary vertices by binarize; the sibling rule applies to the whole
    // group.
    auto is_aux = [&](VertexId v) {
        return v != root && !maximal[v] && !tree.is_client(v) && tree.parent_length(v) == 0 &&
               tree.name(v).rfind("_aux", 0) == 0;
    };
    std::vector<std::size_t> unit_of(tree.size(), SIZE_MAX);
    std::vector<bool> content(tree.size(), false);

    for (VertexId u : tree.preorder()) {
        if (map[u] == kNoVertex || (u != root && is_aux(u))) continue;
        std::vector<VertexId> cands;
        auto gather = [&](auto&& self, VertexId x) -> void {
            for (VertexId c : tree.children(x)) {
                if (maximal[c]) {
                    cands.push_back(c);
                } else if (is_aux(c)) {
                    self(self, c);
                }
            }
        };
        gather(gather, u);

        struct Unit {
            std::vector<VertexId> tops;
            std::int64_t load = 0;
        };
        std::vector<Unit> units;
        for (VertexId c : cands) units.push_back({{c}, g[c]});
        for (;;) {
            std::size_t a = SIZE_MAX, b = SIZE_MAX;
            for (std::size_t i = 0; i < units.size(); ++i) {
                if (units[i].tops.empty()) continue;
                if (a == SIZE_MAX || units[i].load < units[a].load) {
                    b = a;
                    a = i;
                } else if (b == SIZE_MAX || units[i].load < units[b].load) {
                    b = i;
                }
            }
            if (b == SIZE_MAX || units[a].load + units[b].load > thr) break;
            if (b < a) std::swap(a, b);
            units[a].tops.insert(units[a].tops.end(), units[b].tops.begin(), units[b].tops.end());
            units[a].load += units[b].load;
            units[b].tops.clear();
        }
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (!units[i].tops.empty()) unit_of[cands[i]] = i;
        }

        auto mark = [&](auto&& self, VertexId x) -> bool {
            bool any = false;
            for (VertexId c : tree.children(x)) {
                if (maximal[c]) {
                    any = any || unit_of[c] != SIZE_MAX;
                } else if (is_aux(c)) {
                    any = self(self, c) || any;
                } else {
                    any = true;
                }
            }
            content[x] = any;
            return any;
        };
        mark(mark, u);

        auto emit = [&](auto&& self, VertexId x) -> void {
            for (VertexId c : tree.children(x)) {
                if (maximal[c]) {
                    if (unit_of[c] != SIZE_MAX) emit_branch(x, units[unit_of[c]].tops);
                    continue;
                }
                if (is_aux(c) && !content[c]) continue;
                map[c] = add(tree.name(c), c);
                ct.add_edge(map[x], map[c], tree.parent_length(c));
                if (tree.is_client(c)) {
                    ct.set_client(map[c]);
                    out.leaf_clients[map[c]] = {c};
                }
                if (is_aux(c)) self(self, c);
            }
        };
        emit(emit, u);
    }
    return out;
}

std::string format_length(Length units, std::int64_t scale) {
    if (scale == 1) return std::to_string(units);
    Ratio r(units, scale);
    return r.str();
}

} // namespace vrpt
