#include "support.hpp"

#include "vrptree/clustering.hpp"
#include "vrptree/dp.hpp"
#include "vrptree/errors.hpp"
#include "vrptree/instances.hpp"
#include "vrptree/oracle.hpp"
#include "vrptree/reassign.hpp"
#include "vrptree/solution.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

using namespace vrpt;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void fail(const std::string& why) {
        if (pass) first_failure = why;
        pass = false;
    }
};

struct RoundupTally {
    std::size_t tours = 0;
    std::size_t violations = 0;
    std::string first;

    void add(const Solution& s, const std::string& where) {
        for (const Tour& t : s.tours) {
            ++tours;
            if (t.roundups > t.clusters + t.merges) {
                if (violations++ == 0) {
                    first = where + ": roundups " + std::to_string(t.roundups) + " > clusters " +
                            std::to_string(t.clusters) + " + merges " + std::to_string(t.merges);
                }
            }
        }
    }
};

RoundupTally g_roundups;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Shape shape_for(std::uint64_t seed) {
    switch (seed % 4) {
    case 0: return Shape::Star;
    case 1: return Shape::Caterpillar;
    default: return Shape::Random;
    }
}

SolverParams makespan_params(std::size_t k) {
    SolverParams p;
    p.k = k;
    p.epsilon = Ratio(1, 4);
    return p;
}

Outcome ptas_vs_oracle() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t runs = 0;
    Ratio worst(1);
    for (std::uint64_t seed = 1; seed <= 210; ++seed) {
        const std::size_t n = 2 + seed % 9;
        const std::size_t k = 1 + seed % 3;
        RoutingTree t = gen_random(seed, n, 20, shape_for(seed));
        const Length opt = exact_makespan(t, k).value;
        Solution s = ptas(t, makespan_params(k));
        ++runs;
        const std::string where = "seed " + std::to_string(seed) + " n " + std::to_string(n) + " k " + std::to_string(k);
        g_roundups.add(s, "makespan " + where);
        VerifyReport rep = verify(t, s, k);
        if (!rep.ok) o.fail(where + ": verify: " + rep.message);
        const Ratio r = Ratio(s.makespan) / Ratio(opt);
        worst = std::max(worst, r);
        if (r > Ratio(5, 4)) o.fail(where + ": ratio " + r.str());
        if (s.makespan < opt) o.fail(where + ": makespan below the optimum");
    }
    std::ostringstream d;
    d << runs << " instances, worst ratio " << worst.str() << " (" << worst.to_double() << "), "
      << seconds_since(t0) << "s";
    if (seconds_since(t0) > 300) o.fail("runtime above 5 minutes");
    o.detail = d.str();
    return o;
}

Outcome decide_monotonicity() {
    Outcome o;
    std::size_t calls = 0;
    std::size_t violations = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const std::size_t k = 1 + seed % 3;
        RoutingTree t = gen_random(1000 + seed, 3 + seed % 8, 20, shape_for(seed));
        const Length opt = exact_makespan(t, k).value;
        const Length lo = std::max<Length>(1, (opt * 7) / 10);
        const Length hi = opt + opt / 5 + 1;
        bool seen_success = false;
        Length first_success = 0;
        for (int i = 0; i < 10; ++i) {
            const Length D = lo + (hi - lo) * i / 9;
            auto s = decide(t, makespan_params(k), D);
            ++calls;
            if (s) g_roundups.add(*s, "decide seed " + std::to_string(seed));
            if (s && !seen_success) {
                seen_success = true;
                first_success = D;
            } else if (!s && seen_success) {
                ++violations;
                o.fail("seed " + std::to_string(seed) + ": D=" + std::to_string(first_success) +
                       " succeeds but D=" + std::to_string(D) + " fails");
            }
        }
        if (!seen_success) o.fail("seed " + std::to_string(seed) + ": no tested bound succeeded");
    }
    o.detail = std::to_string(calls) + " decide calls over 50 instances, " + std::to_string(violations) + " violations";
    return o;
}

Outcome reassignment_bound() {
    using namespace vrpt::reassign;
    Outcome o;
    std::mt19937_64 rng(31337);
    std::size_t steps_max = 0;
    std::size_t with_steps = 0;
    std::size_t assertion_failures = 0;
    for (int i = 0; i < 1000; ++i) {
        AssignmentInstance inst = testsupport::random_assignment(rng, 8, 10, i % 2 == 1);
        const std::string where = "instance " + std::to_string(i);
        try {
            Assignment a = solve(inst, SolveOptions{true});
            if (a.overload > inst.max_client_weight()) o.fail(where + ": overload above max weight");
            const std::size_t nb = inst.client_count();
            if (a.steps > nb * nb) o.fail(where + ": too many improvement steps");
            steps_max = std::max(steps_max, a.steps);
            with_steps += a.steps > 0;
            if (evaluate(inst, a.facility_of).overload != a.overload) o.fail(where + ": overload mismatch");
        } catch (const InternalError& e) {
            ++assertion_failures;
            o.fail(where + ": " + e.what());
        }
    }
    o.detail = "1000 instances (half skewed), " + std::to_string(with_steps) + " needed improvement steps, max steps " +
               std::to_string(steps_max) + ", level assertions fired " +
               std::to_string(assertion_failures);
    return o;
}

Outcome condense_cluster_invariants() {
    Outcome o;
    const Ratio grid[] = {Ratio(1, 2), Ratio(1, 4), Ratio(1, 16)};
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::size_t relaxed = 0;
    std::size_t promoted = 0;
    for (std::uint64_t seed = 1; seed <= 110; ++seed) {
        RoutingTree t = gen_random(2000 + seed, 3 + seed % 18, 20, shape_for(seed));
        ++instances;
        RoutingTree b = binarize(t);
        for (const Ratio& delta : grid) {
            for (const Ratio& eps_hat : grid) {
                for (std::int64_t D : {t.total_length() / 3 + 1, t.total_length(), 3 * t.total_length()}) {
                    const std::string where = "seed " + std::to_string(seed) + " delta " + delta.str() + " eps_hat " +
                                              eps_hat.str() + " D " + std::to_string(D);
                    for (LoadKind kind : {LoadKind::TourLength, LoadKind::ClientCount}) {
                        const LoadFunction load{kind};
                        const std::int64_t bound = kind == LoadKind::TourLength ? D : 1 + seed % 4;
                        CondensedTree ct = condense(b, load, delta, bound);
                        const std::string err = testsupport::check_condensed(b, ct);
                        if (!err.empty()) o.fail(where + ": condense: " + err);
                        Decomposition d = decompose(t, load, eps_hat, delta, bound);
                        const std::string cerr = testsupport::check_condensed(d.tree, d.condensed);
                        if (!cerr.empty()) o.fail(where + ": decomposition condense: " + cerr);
                        auto rep = testsupport::check_clustering(d.condensed, d.clustering);
                        if (!rep.error.empty()) o.fail(where + ": clustering: " + rep.error);
                        relaxed += rep.relaxed;
                        promoted += rep.promoted;
                        ++checks;
                    }
                }
            }
        }
    }
    o.detail = std::to_string(instances) + " instances, " + std::to_string(checks) +
               " decompositions, relaxed edge clusters " + std::to_string(relaxed) + ", promoted leaf clusters " +
               std::to_string(promoted);
    return o;
}

Outcome counterexample() {
    Outcome o;
    RoutingTree ce = gen_counterexample(CounterexampleParams{});
    if (check_cr(ce, 10)) o.fail("counterexample admits a CR set");
    if (testsupport::brute_force_cr_exists(ce, 10)) o.fail("brute force finds a CR set in the counterexample");

    RoutingTree control = testsupport::make_tree({{"r", "a", 12}, {"r", "b", 15}}, {"a", "b"});
    auto w = check_cr(control, 10);
    if (!w) {
        o.fail("positive control has no witness");
    } else {
        const std::string err = recheck_cr(control, 10, *w);
        if (!err.empty()) o.fail("positive control witness rejected: " + err);
    }

    std::mt19937_64 rng(4242);
    std::size_t agree = 0;
    std::size_t positive = 0;
    const std::size_t cases = 1000;
    for (std::size_t i = 0; i < cases; ++i) {
        RoutingTree t = testsupport::random_small_tree(rng, 10, 8);
        const Length tau = std::uniform_int_distribution<Length>(0, 16)(rng);
        auto cw = check_cr(t, tau);
        const bool brute = testsupport::brute_force_cr_exists(t, tau);
        if (cw.has_value() != brute) {
            o.fail("case " + std::to_string(i) + ": checker " + (cw ? "found" : "missed") + " a CR set");
            continue;
        }
        if (cw) {
            ++positive;
            const std::string err = recheck_cr(t, tau, *cw);
            if (!err.empty()) o.fail("case " + std::to_string(i) + ": witness rejected: " + err);
        }
        ++agree;
    }
    o.detail = "counterexample none, control witness verified, brute force agreement " + std::to_string(agree) + "/" +
               std::to_string(cases) + " (" + std::to_string(positive) + " with a CR set)";
    return o;
}

Outcome capacitated() {
    Outcome o;
    std::size_t runs = 0;
    std::size_t strictly_better = 0;
    for (std::uint64_t seed = 1; seed <= 110; ++seed) {
        const std::size_t n = 1 + seed % 8;
        const std::int64_t Q = 1 + static_cast<std::int64_t>(seed % 4);
        RoutingTree t = gen_random(3000 + seed, n, 20, shape_for(seed));
        const Length opt = exact_capacitated(t, static_cast<std::size_t>(Q)).value;
        CapacityParams p;
        p.Q = Q;
        Solution s = ptas_capacity(t, p);
        ++runs;
        const std::string where = "seed " + std::to_string(seed) + " n " + std::to_string(n) + " Q " + std::to_string(Q);
        g_roundups.add(s, "capacity " + where);
        const std::size_t cap = static_cast<std::size_t>(Ratio(5, 4).ceil_times(Q));
        if (s.total_length > opt) o.fail(where + ": total length above the optimum");
        if (s.total_length < opt) ++strictly_better;
        if (s.max_clients > cap) o.fail(where + ": tour with too many clients");
        VerifyReport rep = verify(t, s, s.tours.size(), cap);
        if (!rep.ok) o.fail(where + ": verify: " + rep.message);
    }
    o.detail = std::to_string(runs) + " instances, " + std::to_string(strictly_better) +
               " below the Q-feasible optimum via the relaxed capacity";
    return o;
}

Outcome round_trip() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "vrptree_acceptance";
    std::filesystem::create_directories(dir);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RoutingTree t = gen_random(4000 + seed, 2 + seed % 9, 20, shape_for(seed));
        const std::string where = "seed " + std::to_string(seed);
        for (bool structured : {false, true}) {
            const std::string text = save_instance(t, structured);
            if (save_instance(load_instance(text), structured) != text) o.fail(where + ": instance round trip");
        }
        const std::size_t k = 1 + seed % 3;
        Solution s = ptas(t, makespan_params(k));
        const std::string path = (dir / ("sol" + std::to_string(seed) + ".json")).string();
        save_solution_file(t, s, path);
        RoutingTree reloaded = load_instance(save_instance(t));
        Solution back = load_solution_file(reloaded, path);
        if (solution_to_json(reloaded, back) != solution_to_json(t, s)) o.fail(where + ": solution round trip");
        VerifyReport rep = verify(reloaded, back, k);
        if (!rep.ok) o.fail(where + ": reloaded solution: " + rep.message);
    }
    std::filesystem::remove_all(dir);
    o.detail = "100 instances (text and structured), 100 solution files";
    return o;
}

void report(int id, const char* name, const Outcome& o, bool& all) {
    std::printf("criterion %d %s: %s - %s\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    if (!o.pass) std::printf("  first failure: %s\n", o.first_failure.c_str());
    std::fflush(stdout);
    all = all && o.pass;
}

Outcome guarded(Outcome (*f)()) {
    try {
        return f();
    } catch (const std::exception& e) {
        Outcome o;
        o.fail(std::string("exception: ") + e.what());
        o.detail = "aborted";
        return o;
    }
}

} // namespace

int main() {
    bool all = true;
    report(1, "ptas-vs-oracle", guarded(ptas_vs_oracle), all);
    report(2, "decide-monotonicity", guarded(decide_monotonicity), all);
    report(3, "reassignment-bound", guarded(reassignment_bound), all);
    report(4, "condense-cluster-invariants", guarded(condense_cluster_invariants), all);
    const Outcome cap = guarded(capacitated);
    Outcome roundups;
    roundups.detail = std::to_string(g_roundups.tours) + " tours across criteria 1, 2 and 7, " +
                      std::to_string(g_roundups.violations) + " violations";
    if (g_roundups.violations > 0) roundups.fail(g_roundups.first);
    report(5, "rounding-accounting", roundups, all);
    report(6, "counterexample", guarded(counterexample), all);
    report(7, "capacitated-bicriteria", cap, all);
    report(8, "format-round-trip", guarded(round_trip), all);
    return all ? 0 : 1;
}
