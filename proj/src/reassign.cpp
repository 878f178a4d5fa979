#include "vrptree/reassign.hpp"

#include "vrptree/errors.hpp"

#include <algorithm>
#include <sstream>

namespace vrpt::reassign {

AssignmentInstance::AssignmentInstance(std::size_t facilities, std::vector<Weight> client_weights,
                                       std::vector<Edge> edges)
    : client_weight_(std::move(client_weights)),
      edges_(std::move(edges)),
      facility_adj_(facilities),
      client_adj_(client_weight_.size()),
      capacity_(facilities, 0) {
    for (Weight w : client_weight_) {
        if (w < 0) throw InvalidArgument("negative client weight");
    }
    for (const auto& e : edges_) {
        if (e.facility >= facilities || e.client >= client_weight_.size()) {
            throw InvalidArgument("edge references unknown facility or client");
        }
        if (e.weight < 0) throw InvalidArgument("negative edge weight");
        if (adjacent(e.facility, e.client)) throw InvalidArgument("duplicate edge");
        facility_adj_[e.facility].emplace_back(e.client, e.weight);
        client_adj_[e.client].emplace_back(e.facility, e.weight);
        capacity_[e.facility] += e.weight;
    }
    for (auto& adj : facility_adj_) std::sort(adj.begin(), adj.end());
    for (auto& adj : client_adj_) std::sort(adj.begin(), adj.end());
}

bool AssignmentInstance::adjacent(std::size_t a, std::size_t b) const {
    for (const auto& [x, w] : client_adj_[b]) {
        if (x == a) return true;
    }
    return false;
}

Weight AssignmentInstance::max_client_weight() const {
    Weight m = 0;
    for (Weight w : client_weight_) m = std::max(m, w);
    return m;
}

void AssignmentInstance::check_preconditions() const {
    for (std::size_t b = 0; b < client_count(); ++b) {
        if (client_adj_[b].empty()) throw InvalidArgument("client " + std::to_string(b) + " has no incident edge");
        Weight sum = 0;
        for (const auto& [a, w] : client_adj_[b]) sum += w;
        if (client_weight_[b] > sum) {
            throw InvalidArgument("client " + std::to_string(b) + " has weight " + std::to_string(client_weight_[b]) +
                                  " above its incident edge weight " + std::to_string(sum));
        }
    }
}

Assignment evaluate(const AssignmentInstance& inst, std::vector<std::size_t> facility_of) {
    if (facility_of.size() != inst.client_count()) throw InvalidArgument("assignment size mismatch");
    Assignment out;
    out.facility_overload.assign(inst.facility_count(), 0);
    for (std::size_t a = 0; a < inst.facility_count(); ++a) out.facility_overload[a] = -inst.capacity(a);
    for (std::size_t b = 0; b < facility_of.size(); ++b) {
        std::size_t a = facility_of[b];
        if (a >= inst.facility_count() || !inst.adjacent(a, b)) {
            throw InvalidArgument("client " + std::to_string(b) + " assigned to a non-adjacent facility");
        }
        out.facility_overload[a] += inst.client_weight(b);
    }
    out.overload = inst.facility_count() == 0 ? 0 : *std::max_element(out.facility_overload.begin(),
                                                                       out.facility_overload.end());
    out.facility_of = std::move(facility_of);
    return out;
}

Levels levels(const AssignmentInstance& inst, const std::vector<std::size_t>& facility_of) {
    Assignment cur = evaluate(inst, facility_of);
    const Weight wmax = inst.max_client_weight();
    Levels lv;
    lv.facility_level.assign(inst.facility_count(), kInfiniteLevel);
    lv.client_level.assign(inst.client_count(), kInfiniteLevel);

    std::vector<std::vector<std::size_t>> assigned(inst.facility_count());
    for (std::size_t b = 0; b < facility_of.size(); ++b) assigned[facility_of[b]].push_back(b);

    std::vector<std::size_t> layer;
    for (std::size_t a = 0; a < inst.facility_count(); ++a) {
        if (cur.facility_overload[a] > wmax) layer.push_back(a);
    }
    while (!layer.empty()) {
        std::size_t i = lv.facilities.size();
        std::vector<std::size_t> bl;
        for (std::size_t a : layer) {
            lv.facility_level[a] = i;
            for (std::size_t b : assigned[a]) {
                lv.client_level[b] = i;
                bl.push_back(b);
            }
        }
        std::sort(bl.begin(), bl.end());
        std::vector<std::size_t> next;
        for (std::size_t b : bl) {
            for (const auto& [a, w] : inst.client_neighbors(b)) {
                if (lv.facility_level[a] == kInfiniteLevel &&
                    std::find(next.begin(), next.end(), a) == next.end()) {
                    next.push_back(a);
                }
            }
        }
        std::sort(next.begin(), next.end());
        lv.facilities.push_back(std::move(layer));
        lv.clients.push_back(std::move(bl));
        layer = std::move(next);
    }
    return lv;
}

std::string dump_levels(const Levels& lv) {
    std::ostringstream out;
    for (std::size_t i = 0; i < lv.facilities.size(); ++i) {
        out << "A" << i << ":";
        for (auto a : lv.facilities[i]) out << " a" << a;
        out << " | B" << i << ":";
        for (auto b : lv.clients[i]) out << " b" << b;
        out << "\n";
    }
    out << "infinite:";
    for (std::size_t b = 0; b < lv.client_level.size(); ++b) {
        if (lv.client_level[b] == kInfiniteLevel) out << " b" << b;
    }
    out << "\n";
    return out.str();
}

Assignment solve(const AssignmentInstance& inst, const SolveOptions& opts) {
    inst.check_preconditions();
    const std::size_t nb = inst.client_count();
    const Weight wmax = inst.max_client_weight();

    // Start from the heaviest incident edge, ties to the smallest facility.
    std::vector<std::size_t> f(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const auto& nbrs = inst.client_neighbors(b);
        std::size_t best = nbrs.front().first;
        Weight bw = nbrs.front().second;
        for (const auto& [a, w] : nbrs) {
            if (w > bw) {
                best = a;
                bw = w;
            }
        }
        f[b] = best;
    }

    std::vector<Weight> load(inst.facility_count(), 0);
    for (std::size_t b = 0; b < nb; ++b) load[f[b]] += inst.client_weight(b);

    std::size_t steps = 0;
    for (;;) {
        Levels lv = levels(inst, f);
        if (lv.facilities.empty()) break;
        if (steps >= nb * nb) throw InternalError("reassignment exceeded |B|^2 improvement steps");

        // Smallest level, then smallest facility id, with w(f^-1(a)) <= q(a).
        std::size_t target = static_cast<std::size_t>(-1);
        std::size_t level = 0;
        for (std::size_t i = 1; i < lv.facilities.size() && target == static_cast<std::size_t>(-1); ++i) {
            for (std::size_t a : lv.facilities[i]) {
                if (load[a] <= inst.capacity(a)) {
                    target = a;
                    level = i;
                    break;
                }
            }
        }
        if (target == static_cast<std::size_t>(-1)) {
            throw InternalError("no underloaded facility reachable from an overloaded one");
        }
        std::size_t moved = static_cast<std::size_t>(-1);
        for (std::size_t b : lv.clients[level - 1]) {
            if (inst.adjacent(target, b)) {
                moved = b;
                break;
            }
        }
        if (moved == static_cast<std::size_t>(-1)) throw InternalError("level structure inconsistent");

        load[f[moved]] -= inst.client_weight(moved);
        load[target] += inst.client_weight(moved);
        f[moved] = target;
        ++steps;

        if (opts.check_level_monotonicity) {
            Levels after = levels(inst, f);
            auto rank = [](std::size_t l) { return l; }; // kInfiniteLevel is the largest value
            for (std::size_t b = 0; b < nb; ++b) {
                std::size_t before_l = rank(lv.client_level[b]);
                std::size_t after_l = rank(after.client_level[b]);
                if (b == moved) {
                    if (!(after_l > before_l)) throw InternalError("moved client level did not increase");
                } else if (after_l < before_l) {
                    throw InternalError("client " + std::to_string(b) + " level decreased");
                }
            }
        }
    }

    Assignment out = evaluate(inst, std::move(f));
    out.steps = steps;
    if (out.overload > wmax) throw InternalError("overload bound violated");
    return out;
}

Weight brute_force_min_overload(const AssignmentInstance& inst) {
    const std::size_t nb = inst.client_count();
    std::vector<std::size_t> idx(nb, 0);
    std::vector<std::size_t> f(nb);
    Weight best = 0;
    bool first = true;
    for (;;) {
        for (std::size_t b = 0; b < nb; ++b) f[b] = inst.client_neighbors(b)[idx[b]].first;
        Weight h = evaluate(inst, f).overload;
        if (first || h < best) {
            best = h;
            first = false;
        }
        std::size_t b = 0;
        while (b < nb && ++idx[b] == inst.client_neighbors(b).size()) {
            idx[b] = 0;
            ++b;
        }
        if (b == nb) break;
    }
    return best;
}

} // namespace vrpt::reassign
