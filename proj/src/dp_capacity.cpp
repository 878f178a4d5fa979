#include "dp_engine.hpp"

#include "vrptree/errors.hpp"

namespace vrpt {

SolverParams CapacityParams::as_solver_params() const {
    SolverParams p;
    p.epsilon = epsilon;
    p.eps_hat = eps_hat;
    p.delta = delta;
    p.theta = theta;
    p.dominance = dominance;
    p.max_configs = max_configs;
    return p;
}

namespace {

struct CapacityRun {
    Decomposition d;
    std::optional<detail::ConfigDp> dp;
    std::size_t best = kNone;
};

void run_capacity(const RoutingTree& tree, const CapacityParams& params, CapacityRun& run) {
    if (params.Q < 1) throw InvalidArgument("capacity Q must be at least 1");
    if (tree.clients().empty()) throw InvalidArgument("instance has no clients");
    SolverParams sp = params.as_solver_params();
    sp.k = tree.clients().size();
    sp.validate();
    run.d = decompose(tree, LoadFunction{LoadKind::ClientCount}, sp.eps_hat_value(), sp.delta_value(), params.Q);
    run.dp.emplace(run.d, detail::DpMode::Capacity, sp, sp.k);
    run.dp->run();
    const auto& roots = run.dp->root_entries();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (run.best == kNone || roots[i].value < roots[run.best].value ||
            (roots[i].value == roots[run.best].value && roots[i].tours.back() < roots[run.best].tours.back())) {
            run.best = i;
        }
    }
}

Solution finish(const RoutingTree& tree, const CapacityParams& params, CapacityRun& run) {
    Solution s = detail::assemble(tree, run.d, *run.dp, run.dp->reconstruct(run.best), detail::DpMode::Capacity);
    if (s.total_length != run.dp->root_entries()[run.best].value) {
        throw InternalError("capacity DP value differs from the reconstructed total length");
    }
    s.D = params.Q;
    s.params = params.as_solver_params().echo();
    s.params.erase("k");
    s.params["Q"] = std::to_string(params.Q);
    run.dp->stats().export_to(s.counters);
    return s;
}

} // namespace

std::optional<Solution> decide_capacity(const RoutingTree& tree, const CapacityParams& params, Length budget,
                                        DecideStats* stats) {
    CapacityRun run;
    run_capacity(tree, params, run);
    if (stats) *stats = run.dp->stats();
    if (run.best == kNone || run.dp->root_entries()[run.best].value > budget) return std::nullopt;
    Solution s = finish(tree, params, run);
    s.params["budget"] = format_length(budget, tree.scale());
    return s;
}

Solution ptas_capacity(const RoutingTree& tree, const CapacityParams& params) {
    // decide_capacity(b) succeeds exactly when b reaches the least root value,
    // so the budget search collapses to one DP pass.
    CapacityRun run;
    run_capacity(tree, params, run);
    if (run.best == kNone) throw InternalError("capacity DP found no configuration");
    Solution s = finish(tree, params, run);
    s.params["budget"] = format_length(s.total_length, tree.scale());
    return s;
}

} // namespace vrpt
