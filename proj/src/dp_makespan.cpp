#include "dp_engine.hpp"

#include "vrptree/errors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace vrpt {

Ratio SolverParams::eps_hat_value() const {
    return eps_hat ? *eps_hat : epsilon / Ratio(kDefaultPrecision);
}

Ratio SolverParams::delta_value() const { return delta ? *delta : eps_hat_value(); }

Ratio SolverParams::theta_value() const {
    if (theta) return *theta;
    Ratio e = eps_hat_value();
    return e * e * e * e;
}

std::uint32_t SolverParams::bucket_cap() const {
    std::int64_t c = ((Ratio(1) + epsilon) / theta_value()).floor_times(1);
    if (c > (std::int64_t{1} << 31)) throw InvalidArgument("theta too small: more than 2^31 buckets");
    return static_cast<std::uint32_t>(c);
}

void SolverParams::validate() const {
    if (epsilon <= Ratio(0)) throw InvalidArgument("epsilon must be positive");
    Ratio e = eps_hat_value();
    if (e <= Ratio(0) || e > Ratio(1)) throw InvalidArgument("eps-hat must lie in (0, 1]");
    Ratio dl = delta_value();
    if (dl <= Ratio(0) || dl > Ratio(1)) throw InvalidArgument("delta must lie in (0, 1]");
    Ratio th = theta_value();
    if (th <= Ratio(0) || th > Ratio(1)) throw InvalidArgument("theta must lie in (0, 1]");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    bucket_cap();
}

std::map<std::string, std::string> SolverParams::echo() const {
    return {{"epsilon", epsilon.str()},
            {"eps_hat", eps_hat_value().str()},
            {"delta", delta_value().str()},
            {"theta", theta_value().str()},
            {"k", std::to_string(k)},
            {"dominance", dominance ? "on" : "off"}};
}

void DecideStats::export_to(std::map<std::string, std::int64_t>& c) const {
    c["unit_scale"] = unit_scale;
    c["tstar_nodes"] = static_cast<std::int64_t>(tstar_nodes);
    c["leaf_clusters"] = static_cast<std::int64_t>(leaf_clusters);
    c["edge_clusters"] = static_cast<std::int64_t>(edge_clusters);
    c["small_clusters"] = static_cast<std::int64_t>(small_clusters);
    c["relaxed_clusters"] = static_cast<std::int64_t>(relaxed_clusters);
    c["promoted_clusters"] = static_cast<std::int64_t>(promoted_clusters);
    c["configs_stored"] = static_cast<std::int64_t>(configs_stored);
    c["configs_pruned"] = static_cast<std::int64_t>(configs_pruned);
    c["max_table"] = static_cast<std::int64_t>(max_table);
    c["root_configs"] = static_cast<std::int64_t>(root_configs);
}

namespace detail {

namespace {

struct ConfigHash {
    std::size_t operator()(const Config& c) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : c) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

class TableBuilder {
public:
    explicit TableBuilder(std::vector<Entry>& out) : out_(out) {}

    void offer(Config&& tours, std::int64_t value, Back&& back) {
        auto [it, fresh] = index_.try_emplace(tours, out_.size());
        if (fresh) {
            out_.push_back({std::move(tours), value, std::move(back)});
        } else if (value < out_[it->second].value) {
            out_[it->second].value = value;
            out_[it->second].back = std::move(back);
        }
    }

private:
    std::vector<Entry>& out_;
    std::unordered_map<Config, std::size_t, ConfigHash> index_;
};

} // namespace

Bucketer::Bucketer(const Ratio& theta, std::int64_t base) {
    Ratio w = theta * Ratio(base);
    num = w.num();
    den = w.den();
    if (num <= 0) throw InvalidArgument("bucket width must be positive");
}

__extension__ using i128 = __int128;

std::uint32_t Bucketer::ceil_index(std::int64_t x) const {
    i128 p = static_cast<i128>(x) * den;
    i128 q = p / num + ((p % num) > 0 ? 1 : 0);
    if (q > UINT32_MAX) return UINT32_MAX;
    return static_cast<std::uint32_t>(q);
}

std::int64_t Bucketer::floor_index(std::int64_t x) const {
    i128 p = static_cast<i128>(x) * den;
    return static_cast<std::int64_t>(p / num);
}

ConfigDp::ConfigDp(const Decomposition& d, DpMode mode, const SolverParams& params, std::size_t max_tours)
    : d_(d), mode_(mode), params_(params), max_tours_(max_tours), bucket_(params.theta_value(), d.D),
      cap_(params.bucket_cap()) {
    const Clustering& cl = d.clustering;
    stats_.unit_scale = d.unit_scale;
    stats_.tstar_nodes = d.tstar.nodes.size();
    stats_.leaf_clusters = cl.leaf_clusters.size();
    stats_.edge_clusters = cl.edge_clusters.size();
    stats_.small_clusters = cl.small_clusters.size();
    stats_.relaxed_clusters = cl.relaxed_count();
    stats_.promoted_clusters = cl.promoted_count();
}

void ConfigDp::run() {
    table_of_.assign(d_.tstar.nodes.size(), kNone);
    for (std::size_t v : d_.tstar.postorder) {
        switch (d_.tstar.nodes[v].kind) {
        case StarKind::Base: base(v); break;
        case StarKind::Grow: grow(v); break;
        case StarKind::Merge: merge(v); break;
        }
    }
    stats_.root_configs = root_entries().size();
}

void ConfigDp::finish(std::vector<Entry>& table) {
    if (params_.dominance && table.size() > 1) {
        // Drop entries dominated pointwise by an entry with as many tours.
        std::vector<std::size_t> idx(table.size());
        std::iota(idx.begin(), idx.end(), 0);
        auto sum = [&](std::size_t i) {
            return std::accumulate(table[i].tours.begin(), table[i].tours.end(), std::uint64_t{0});
        };
        std::vector<std::uint64_t> sums(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) sums[i] = sum(i);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (table[a].tours.size() != table[b].tours.size()) return table[a].tours.size() < table[b].tours.size();
            if (sums[a] != sums[b]) return sums[a] < sums[b];
            return table[a].value < table[b].value;
        });
        const bool use_value = mode_ == DpMode::Capacity;
        std::vector<std::size_t> kept;
        std::size_t group_start = 0;
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            const Entry& e = table[idx[pos]];
            if (pos > 0 && table[idx[pos - 1]].tours.size() != e.tours.size()) group_start = kept.size();
            bool dominated = false;
            for (std::size_t q = group_start; q < kept.size() && !dominated; ++q) {
                const Entry& f = table[kept[q]];
                if (use_value && f.value > e.value) continue;
                bool le = true;
                for (std::size_t t = 0; t < e.tours.size() && le; ++t) le = f.tours[t] <= e.tours[t];
                dominated = le;
            }
            if (!dominated) kept.push_back(idx[pos]);
        }
        if (kept.size() < table.size()) {
            std::sort(kept.begin(), kept.end());
            stats_.configs_pruned += table.size() - kept.size();
            std::vector<Entry> out;
            out.reserve(kept.size());
            for (std::size_t i : kept) out.push_back(std::move(table[i]));
            table = std::move(out);
        }
    }
    stored_ += table.size();
    stats_.configs_stored = stored_;
    stats_.max_table = std::max(stats_.max_table, table.size());
    if (stored_ > params_.max_configs) {
        throw TooLarge("configuration table exceeded " + std::to_string(params_.max_configs) + " entries");
    }
}

void ConfigDp::base(std::size_t node) {
    const StarNode& n = d_.tstar.nodes[node];
    const Clustering& cl = d_.clustering;
    const PendantPath& p = cl.pendants[cl.clusters[n.cluster].pendant];
    Length small_len = 0;
    std::size_t small_clients = 0;
    for (std::size_t s : d_.smalls.assigned[n.cluster]) {
        for (const auto& e : cl.clusters[s].leaves) {
            small_len += e.length;
            small_clients += e.clients;
        }
    }
    const std::int64_t value = 2 * (p.length + small_len + p.attach_depth);
    const std::int64_t q = mode_ == DpMode::Makespan ? value : static_cast<std::int64_t>(p.clients + small_clients);
    std::vector<Entry> table;
    std::uint32_t idx = bucket_.ceil_index(q);
    if (idx <= cap_ && max_tours_ >= 1) table.push_back({{idx}, value, {}});
    finish(table);
    table_of_[node] = tables_.size();
    tables_.push_back(std::move(table));
}

void ConfigDp::grow(std::size_t node) {
    const StarNode& n = d_.tstar.nodes[node];
    const Cluster& c = d_.clustering.clusters[n.cluster];
    const std::size_t child = n.children.front();
    if (c.client_leaves() == 0) {
        table_of_[node] = table_of_[child];
        return;
    }
    const auto& leaves = c.leaves;
    const std::size_t m = leaves.size();
    std::vector<Length> pre_len(m + 1, 0);
    std::vector<std::int64_t> pre_cl(m + 1, 0);
    std::vector<std::size_t> clients_from(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        pre_len[j + 1] = pre_len[j] + leaves[j].length;
        pre_cl[j + 1] = pre_cl[j] + static_cast<std::int64_t>(leaves[j].clients);
    }
    for (std::size_t j = m; j-- > 0;) clients_from[j] = clients_from[j + 1] + (leaves[j].placeholder() ? 0 : 1);

    std::vector<std::uint32_t> splits{0};
    for (std::size_t j = 0; j < m; ++j) {
        if (!leaves[j].placeholder()) splits.push_back(static_cast<std::uint32_t>(j + 1));
    }

    const auto& src = tables_[table_of_[child]];
    std::vector<Entry> table;
    TableBuilder tb(table);
    for (std::uint32_t s : splits) {
        bool has_end = s > 0;
        std::uint32_t end_idx = 0;
        std::int64_t end_value = 0;
        if (has_end) {
            end_value = 2 * (leaves[s - 1].attach_depth + pre_len[s]);
            end_idx = bucket_.ceil_index(mode_ == DpMode::Makespan ? end_value : pre_cl[s]);
            if (end_idx > cap_) continue;
        }
        const bool has_rest = clients_from[s] > 0;
        const std::int64_t rest_value = 2 * (pre_len[m] - pre_len[s]);
        const std::uint32_t inc =
            has_rest ? bucket_.ceil_index(mode_ == DpMode::Makespan ? rest_value : pre_cl[m] - pre_cl[s]) : 0;
        for (std::size_t ei = 0; ei < src.size(); ++ei) {
            const Entry& e = src[ei];
            if (has_end && e.tours.size() + 1 > max_tours_) continue;
            if (!has_rest) {
                Config t = e.tours;
                t.insert(std::upper_bound(t.begin(), t.end(), end_idx), end_idx);
                Back b;
                b.child = static_cast<std::uint32_t>(ei);
                b.split = s;
                tb.offer(std::move(t), e.value + end_value, std::move(b));
                continue;
            }
            for (std::size_t pos = 0; pos < e.tours.size(); ++pos) {
                if (pos > 0 && e.tours[pos] == e.tours[pos - 1]) continue;
                std::uint64_t grown = static_cast<std::uint64_t>(e.tours[pos]) + inc;
                if (grown > cap_) break; // sorted: later buckets only grow further
                Config t = e.tours;
                t.erase(t.begin() + static_cast<std::ptrdiff_t>(pos));
                auto g = static_cast<std::uint32_t>(grown);
                t.insert(std::upper_bound(t.begin(), t.end(), g), g);
                if (has_end) t.insert(std::upper_bound(t.begin(), t.end(), end_idx), end_idx);
                Back b;
                b.child = static_cast<std::uint32_t>(ei);
                b.split = s;
                b.collect = e.tours[pos];
                tb.offer(std::move(t), e.value + end_value + rest_value, std::move(b));
            }
        }
    }
    finish(table);
    table_of_[node] = tables_.size();
    tables_.push_back(std::move(table));
}

void ConfigDp::merge(std::size_t node) {
    const StarNode& n = d_.tstar.nodes[node];
    if (n.children.size() == 1) {
        table_of_[node] = table_of_[n.children.front()];
        return;
    }
    if (n.children.size() != 2) throw InternalError("merge vertex without two children");
    const auto& left = tables_[table_of_[n.children[0]]];
    const auto& right = tables_[table_of_[n.children[1]]];
    const std::int64_t discount = mode_ == DpMode::Makespan ? bucket_.floor_index(2 * n.depth) : 0;
    const std::int64_t pair_value = 2 * n.depth;

    std::vector<Entry> table;
    TableBuilder tb(table);

    // Distinct buckets with multiplicities for both sides.
    std::vector<std::pair<std::uint32_t, int>> xs, ys;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    auto runs = [](const Config& c, std::vector<std::pair<std::uint32_t, int>>& out) {
        out.clear();
        for (auto x : c) {
            if (!out.empty() && out.back().first == x) ++out.back().second;
            else out.push_back({x, 1});
        }
    };

    for (std::size_t li = 0; li < left.size(); ++li) {
        const Entry& a = left[li];
        runs(a.tours, xs);
        for (std::size_t ri = 0; ri < right.size(); ++ri) {
            const Entry& b = right[ri];
            const std::size_t total = a.tours.size() + b.tours.size();
            const std::size_t max_pairs = std::min(a.tours.size(), b.tours.size());
            if (total - max_pairs > max_tours_) continue;
            runs(b.tours, ys);
            cells.clear();
            for (std::size_t i = 0; i < xs.size(); ++i) {
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    std::int64_t merged = std::int64_t{xs[i].first} + ys[j].first - discount;
                    if (merged <= static_cast<std::int64_t>(cap_)) cells.push_back({i, j});
                }
            }
            std::vector<int> rx(xs.size()), ry(ys.size());
            for (std::size_t i = 0; i < xs.size(); ++i) rx[i] = xs[i].second;
            for (std::size_t j = 0; j < ys.size(); ++j) ry[j] = ys[j].second;
            pairs.clear();

            auto emit = [&] {
                if (total - pairs.size() > max_tours_) return;
                Config t;
                t.reserve(total - pairs.size());
                for (std::size_t i = 0; i < xs.size(); ++i) t.insert(t.end(), rx[i], xs[i].first);
                for (std::size_t j = 0; j < ys.size(); ++j) t.insert(t.end(), ry[j], ys[j].first);
                for (auto [x, y] : pairs) t.push_back(static_cast<std::uint32_t>(std::int64_t{x} + y - discount));
                std::sort(t.begin(), t.end());
                Back back;
                back.child = static_cast<std::uint32_t>(li);
                back.child2 = static_cast<std::uint32_t>(ri);
                back.pairs = pairs;
                tb.offer(std::move(t), a.value + b.value - pair_value * static_cast<std::int64_t>(pairs.size()),
                         std::move(back));
            };
            auto rec = [&](auto&& self, std::size_t cell) -> void {
                if (cell == cells.size()) {
                    emit();
                    return;
                }
                auto [i, j] = cells[cell];
                int most = std::min(rx[i], ry[j]);
                for (int m = 0; m <= most; ++m) {
                    if (m > 0) {
                        --rx[i];
                        --ry[j];
                        pairs.push_back({xs[i].first, ys[j].first});
                    }
                    self(self, cell + 1);
                }
                for (int m = 0; m < most; ++m) {
                    ++rx[i];
                    ++ry[j];
                    pairs.pop_back();
                }
            };
            rec(rec, 0);
        }
    }
    finish(table);
    table_of_[node] = tables_.size();
    tables_.push_back(std::move(table));
}

void ConfigDp::add_leaf_clients(std::size_t pendant, std::vector<VertexId>& out) const {
    const auto& lc = d_.condensed.leaf_clients[d_.clustering.pendants[pendant].leaf];
    out.insert(out.end(), lc.begin(), lc.end());
}

std::vector<BuiltTour> ConfigDp::reconstruct(std::size_t root_entry) const {
    return rebuild(d_.tstar.root, root_entry);
}

std::vector<BuiltTour> ConfigDp::rebuild(std::size_t node, std::size_t entry) const {
    const StarNode& n = d_.tstar.nodes[node];
    const Clustering& cl = d_.clustering;
    if (n.kind != StarKind::Base && table_of_[node] == table_of_[n.children.front()]) {
        return rebuild(n.children.front(), entry);
    }
    const Entry& e = tables_[table_of_[node]].at(entry);
    auto take = [](std::vector<BuiltTour>& from, std::uint32_t bucket) {
        for (std::size_t i = 0; i < from.size(); ++i) {
            if (from[i].bucket == bucket) {
                BuiltTour t = std::move(from[i]);
                from.erase(from.begin() + static_cast<std::ptrdiff_t>(i));
                return t;
            }
        }
        throw InternalError("backpointer names a bucket the child configuration lacks");
    };
    std::vector<BuiltTour> out;
    switch (n.kind) {
    case StarKind::Base: {
        BuiltTour t;
        t.bucket = e.tours.front();
        add_leaf_clients(cl.clusters[n.cluster].pendant, t.clients);
        t.clusters = 1;
        for (std::size_t s : d_.smalls.assigned[n.cluster]) {
            bool any = false;
            for (const auto& leaf : cl.clusters[s].leaves) {
                if (leaf.placeholder()) continue;
                add_leaf_clients(leaf.pendant, t.clients);
                any = true;
            }
            t.clusters += any ? 1 : 0;
        }
        t.roundups = 1;
        out.push_back(std::move(t));
        break;
    }
    case StarKind::Grow: {
        const Cluster& c = cl.clusters[n.cluster];
        out = rebuild(n.children.front(), e.back.child);
        const std::uint32_t s = e.back.split;
        BuiltTour ending;
        if (e.back.collect != UINT32_MAX) {
            BuiltTour t = take(out, e.back.collect);
            for (std::size_t j = s; j < c.leaves.size(); ++j) {
                if (!c.leaves[j].placeholder()) add_leaf_clients(c.leaves[j].pendant, t.clients);
            }
            std::int64_t rest_len = 0, rest_cl = 0;
            for (std::size_t j = s; j < c.leaves.size(); ++j) {
                rest_len += c.leaves[j].length;
                rest_cl += static_cast<std::int64_t>(c.leaves[j].clients);
            }
            t.bucket += bucket_.ceil_index(mode_ == DpMode::Makespan ? 2 * rest_len : rest_cl);
            t.roundups += 1;
            t.clusters += 1;
            out.push_back(std::move(t));
        }
        if (s > 0) {
            Length len = 0;
            std::int64_t cnt = 0;
            for (std::size_t j = 0; j < s; ++j) {
                len += c.leaves[j].length;
                cnt += static_cast<std::int64_t>(c.leaves[j].clients);
                if (!c.leaves[j].placeholder()) add_leaf_clients(c.leaves[j].pendant, ending.clients);
            }
            std::int64_t v = 2 * (c.leaves[s - 1].attach_depth + len);
            ending.bucket = bucket_.ceil_index(mode_ == DpMode::Makespan ? v : cnt);
            ending.roundups = 1;
            ending.clusters = 1;
            out.push_back(std::move(ending));
        }
        break;
    }
    case StarKind::Merge: {
        std::vector<BuiltTour> l = rebuild(n.children[0], e.back.child);
        std::vector<BuiltTour> r = rebuild(n.children[1], e.back.child2);
        const std::int64_t discount = mode_ == DpMode::Makespan ? bucket_.floor_index(2 * n.depth) : 0;
        for (auto [x, y] : e.back.pairs) {
            BuiltTour a = take(l, x);
            BuiltTour b = take(r, y);
            a.bucket = static_cast<std::uint32_t>(std::int64_t{a.bucket} + b.bucket - discount);
            a.clients.insert(a.clients.end(), b.clients.begin(), b.clients.end());
            a.roundups += b.roundups + 1;
            a.clusters += b.clusters;
            a.merges += b.merges + 1;
            out.push_back(std::move(a));
        }
        for (auto& t : l) out.push_back(std::move(t));
        for (auto& t : r) out.push_back(std::move(t));
        break;
    }
    }
    // The rebuilt multiset must be the stored configuration.
    Config check;
    for (const auto& t : out) check.push_back(t.bucket);
    std::sort(check.begin(), check.end());
    if (check != e.tours) throw InternalError("reconstruction disagrees with the stored configuration");
    return out;
}

Solution assemble(const RoutingTree& tree, const Decomposition& d, const ConfigDp& dp,
                  const std::vector<BuiltTour>& built, DpMode mode) {
    Solution s;
    s.objective = mode == DpMode::Makespan ? "makespan" : "capacity";
    std::vector<int> seen(tree.size(), 0);
    for (const auto& b : built) {
        Tour t;
        t.clients = b.clients;
        for (VertexId c : t.clients) {
            if (c >= tree.size() || !tree.is_client(c)) throw InternalError("tour contains a non-client vertex");
            if (seen[c]++) throw InternalError("client '" + tree.name(c) + "' covered twice");
        }
        Ratio rounded = dp.bucketer().value(b.bucket);
        if (mode == DpMode::Makespan) rounded = rounded / Ratio(d.unit_scale);
        t.rounded = rounded;
        t.roundups = b.roundups;
        t.clusters = b.clusters;
        t.merges = b.merges;
        s.tours.push_back(std::move(t));
    }
    for (VertexId c : tree.clients()) {
        if (!seen[c]) throw InternalError("client '" + tree.name(c) + "' left uncovered");
    }
    std::sort(s.tours.begin(), s.tours.end(), [](const Tour& a, const Tour& b) {
        auto ma = *std::min_element(a.clients.begin(), a.clients.end());
        auto mb = *std::min_element(b.clients.begin(), b.clients.end());
        return ma < mb;
    });
    s.recompute(tree);
    for (const auto& t : s.tours) {
        Ratio truth = mode == DpMode::Makespan ? Ratio(t.length) : Ratio(static_cast<std::int64_t>(t.clients.size()));
        if (truth > *t.rounded) throw InternalError("a tour is longer than its rounded DP value");
    }
    return s;
}

} // namespace detail

std::optional<Solution> decide(const RoutingTree& tree, const SolverParams& params, std::int64_t D,
                               DecideStats* stats) {
    params.validate();
    if (D < 1) throw InvalidArgument("D must be a positive integer");
    Decomposition d =
        decompose(tree, LoadFunction{LoadKind::TourLength}, params.eps_hat_value(), params.delta_value(), D);
    detail::ConfigDp dp(d, detail::DpMode::Makespan, params, params.k);
    dp.run();
    if (stats) *stats = dp.stats();
    const auto& roots = dp.root_entries();
    if (roots.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        auto key = [&](std::size_t j) { return std::make_pair(roots[j].tours.back(), roots[j].value); };
        if (key(i) < key(best)) best = i;
    }
    Solution s = detail::assemble(tree, d, dp, dp.reconstruct(best), detail::DpMode::Makespan);
    if (s.tours.size() > params.k) throw InternalError("solution uses more than k tours");
    s.D = D;
    s.params = params.echo();
    dp.stats().export_to(s.counters);
    return s;
}

Solution ptas(const RoutingTree& tree, const SolverParams& params) {
    params.validate();
    if (tree.clients().empty()) throw InvalidArgument("instance has no clients");
    const std::int64_t n = static_cast<std::int64_t>(tree.clients().size());
    const Length total = tree.total_length();
    Length max_depth = 0;
    for (VertexId c : tree.clients()) max_depth = std::max(max_depth, tree.dist_to_root(c));

    std::int64_t hi = std::max<std::int64_t>(1, 2 * total);
    const std::int64_t k = static_cast<std::int64_t>(params.k);
    std::int64_t lo = std::max<std::int64_t>({1, 2 * max_depth, (2 * total + k - 1) / k, (hi + n - 1) / n});
    lo = std::min(lo, hi);

    std::map<std::int64_t, std::optional<Solution>> memo;
    std::int64_t calls = 0;
    auto probe = [&](std::int64_t D) -> bool {
        auto it = memo.find(D);
        if (it == memo.end()) {
            ++calls;
            it = memo.emplace(D, decide(tree, params, D)).first;
        }
        return it->second.has_value();
    };
    // The one-tour bound only fails through rounding; widen until it holds.
    int widen = 0;
    while (!probe(hi)) {
        if (++widen > 40) throw InternalError("decide fails even for very large D");
        lo = hi + 1;
        hi *= 2;
    }
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (probe(mid)) hi = mid;
        else lo = mid + 1;
    }
    const Solution* best = nullptr;
    for (const auto& [D, s] : memo) {
        if (s && (!best || s->makespan < best->makespan)) best = &*s;
    }
    Solution out = *best;
    out.counters["decide_calls"] = calls;
    out.counters["smallest_feasible_D"] = hi;
    return out;
}

} // namespace vrpt
