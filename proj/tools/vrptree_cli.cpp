// vrptree command line: gen, solve, compare, verify, check-cr.
//
// Exit codes: 0 success, 1 negative answer (verify failed, no CR set, ratio
// above 1 + epsilon), 2 invalid parameters or infeasible, 3 I/O error,
// 4 parse error, 5 internal error.

#include "vrptree/vrptree.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kNegative = 1, kInvalid = 2, kIo = 3, kParse = 4, kInternal = 5 };

int exit_code(vrpt_status s) {
    switch (s) {
    case VRPT_OK: return kOk;
    case VRPT_E_INVALID:
    case VRPT_E_TOO_LARGE:
    case VRPT_E_INFEASIBLE: return kInvalid;
    case VRPT_E_IO: return kIo;
    case VRPT_E_PARSE: return kParse;
    case VRPT_E_INTERNAL: return kInternal;
    }
    return kInternal;
}

struct Failure {
    vrpt_status status;
    std::string message;
};

void check(vrpt_status s) {
    if (s != VRPT_OK) throw Failure{s, vrpt_last_error()};
}

struct TreeDel {
    void operator()(vrpt_tree* t) const { vrpt_tree_free(t); }
};
struct SolDel {
    void operator()(vrpt_solution* s) const { vrpt_solution_free(s); }
};
using TreePtr = std::unique_ptr<vrpt_tree, TreeDel>;
using SolPtr = std::unique_ptr<vrpt_solution, SolDel>;

std::string take(char* s) {
    std::string out = s ? s : "";
    vrpt_string_free(s);
    return out;
}

TreePtr load_tree(const std::string& path) {
    vrpt_tree* t = nullptr;
    check(vrpt_tree_load_file(path.c_str(), &t));
    return TreePtr(t);
}

std::string digest(const vrpt_tree* t) {
    char* d = nullptr;
    check(vrpt_tree_digest(t, &d));
    return take(d);
}

std::string fmt(const vrpt_tree* t, int64_t units) {
    char* s = nullptr;
    check(vrpt_format_length(t, units, &s));
    return take(s);
}

json solution_json(const vrpt_tree* t, const vrpt_solution* s) {
    char* text = nullptr;
    check(vrpt_solution_to_json(t, s, &text));
    return json::parse(take(text));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct SolverFlags {
    std::string epsilon = "1/4";
    std::optional<std::string> eps_hat, delta, theta;
    std::size_t k = 1;
    bool no_dominance = false;
    std::size_t max_configs = 0;

    void add(CLI::App* app, bool with_k = true) {
        app->add_option("--epsilon,-e", epsilon, "Approximation parameter (decimal or a/b)")->capture_default_str();
        app->add_option("--eps-hat", eps_hat, "Cluster window parameter (default epsilon / 4)");
        app->add_option("--delta", delta, "Condense parameter (default eps-hat)");
        app->add_option("--theta", theta, "Bucket width fraction (default eps-hat^4)");
        if (with_k) app->add_option("-k", k, "Number of vehicles")->capture_default_str();
        app->add_flag("--no-dominance", no_dominance, "Keep dominated configurations");
        app->add_option("--max-configs", max_configs, "Abort once this many configurations are stored");
    }

    vrpt_options options() const {
        vrpt_options o;
        vrpt_options_init(&o);
        o.epsilon = epsilon.c_str();
        o.eps_hat = eps_hat ? eps_hat->c_str() : nullptr;
        o.delta = delta ? delta->c_str() : nullptr;
        o.theta = theta ? theta->c_str() : nullptr;
        o.k = k;
        o.dominance = no_dominance ? 0 : 1;
        if (max_configs > 0) o.max_configs = max_configs;
        return o;
    }

    json echo() const {
        json j{{"epsilon", epsilon}, {"k", k}};
        if (eps_hat) j["eps_hat"] = *eps_hat;
        if (delta) j["delta"] = *delta;
        if (theta) j["theta"] = *theta;
        if (no_dominance) j["dominance"] = false;
        return j;
    }
};

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::string kind = "random";
    std::uint64_t seed = 1;
    std::size_t n = 8;
    int64_t max_len = 20;
    std::string shape = "random";
    std::size_t l = 5;
    int64_t path_len = 1, side_len = 4, main_len = 10, tau = 10;
    std::string out;
    std::string format = "text";
};

int cmd_gen(const GenArgs& a) {
    vrpt_tree* raw = nullptr;
    if (a.kind == "random") {
        check(vrpt_gen_random(a.seed, a.n, a.max_len, a.shape.c_str(), &raw));
    } else {
        check(vrpt_gen_counterexample(a.l, a.path_len, a.side_len, a.main_len, a.tau, &raw));
    }
    TreePtr t(raw);
    const int structured = a.format == "structured" ? 1 : 0;
    if (a.out.empty() || a.out == "-") {
        char* text = nullptr;
        check(vrpt_tree_to_string(t.get(), structured, &text));
        std::cout << take(text);
    } else {
        check(vrpt_tree_save_file(t.get(), a.out.c_str(), structured));
    }
    return kOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string input;
    SolverFlags solver;
    std::optional<std::size_t> capacity;
    std::optional<int64_t> budget;
    std::optional<int64_t> decide;
    std::string method = "ptas";
    std::string out;
    std::string format = "text";
    std::string dump_clusters, dot;
};

int cmd_solve(const SolveArgs& a) {
    TreePtr t = load_tree(a.input);
    vrpt_options o = a.solver.options();
    const auto start = std::chrono::steady_clock::now();
    vrpt_solution* raw = nullptr;
    if (a.method == "exact") {
        check(a.capacity ? vrpt_solve_exact_capacity(t.get(), *a.capacity, &raw)
                         : vrpt_solve_exact_makespan(t.get(), a.solver.k, &raw));
    } else if (a.method == "greedy") {
        if (a.capacity) throw Failure{VRPT_E_INVALID, "greedy supports the makespan objective only"};
        check(vrpt_solve_greedy(t.get(), a.solver.k, &raw));
    } else if (a.capacity) {
        check(vrpt_solve_capacity(t.get(), &o, *a.capacity, a.budget.value_or(-1), &raw));
    } else if (a.decide) {
        check(vrpt_decide_makespan(t.get(), &o, *a.decide, &raw));
    } else {
        check(vrpt_solve_makespan(t.get(), &o, &raw));
    }
    SolPtr s(raw);
    const double elapsed = seconds_since(start);

    if (!a.dump_clusters.empty() || !a.dot.empty()) {
        const int64_t D = a.capacity ? static_cast<int64_t>(*a.capacity) : vrpt_solution_bound(s.get());
        char* table = nullptr;
        char* dot = nullptr;
        check(vrpt_dump_clusters(t.get(), &o, std::max<int64_t>(D, 1), a.capacity ? 1 : 0, &table, &dot));
        std::string tab = take(table), graph = take(dot);
        auto write = [](const std::string& path, const std::string& data) {
            if (path.empty()) return;
            FILE* f = std::fopen(path.c_str(), "w");
            if (!f || std::fwrite(data.data(), 1, data.size(), f) != data.size()) {
                if (f) std::fclose(f);
                throw Failure{VRPT_E_IO, "cannot write '" + path + "'"};
            }
            std::fclose(f);
        };
        write(a.dump_clusters, tab);
        write(a.dot, graph);
    }

    if (!a.out.empty()) check(vrpt_solution_save_file(t.get(), s.get(), a.out.c_str()));
    if (a.format == "structured") {
        json params = a.solver.echo();
        params["method"] = a.method;
        if (a.capacity) params["Q"] = *a.capacity;
        if (a.budget) params["budget"] = *a.budget;
        if (a.decide) params["D"] = *a.decide;
        json record{{"command", "solve"},
                    {"instance", a.input},
                    {"digest", digest(t.get())},
                    {"parameters", params},
                    {"results", {{"seconds", elapsed}, {"solution", solution_json(t.get(), s.get())}}},
                    {"exit_status", 0}};
        std::cout << record.dump(2) << '\n';
    } else {
        char* text = nullptr;
        check(vrpt_solution_to_text(t.get(), s.get(), &text));
        std::cout << take(text);
        std::cout << "time\t" << std::fixed << std::setprecision(3) << elapsed << "s\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
    std::string seeds = "1-10";
    std::vector<std::size_t> sizes{8};
    SolverFlags solver;
    int64_t max_len = 20;
    std::string shape = "random";
    std::string format = "text";
};

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoull(part));
            } else {
                std::uint64_t lo = std::stoull(part.substr(0, dash)), hi = std::stoull(part.substr(dash + 1));
                if (hi < lo) throw std::invalid_argument("range");
                for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
            }
        } catch (const std::exception&) {
            throw Failure{VRPT_E_INVALID, "bad seed list '" + spec + "' (use 1-10 or 1,4,7)"};
        }
    }
    if (out.empty()) throw Failure{VRPT_E_INVALID, "empty seed list"};
    return out;
}

int cmd_compare(const CompareArgs& a) {
    const auto seeds = parse_seeds(a.seeds);
    vrpt_options o = a.solver.options();
    const std::size_t oracle_cap = 14;
    json rows = json::array();
    bool bad = false;
    const bool text = a.format != "structured";
    if (text) std::cout << "seed\tn\texact\tptas\tratio\tgreedy\troundups\ttime\tverify\n";
    for (std::size_t n : a.sizes) {
        for (std::uint64_t seed : seeds) {
            vrpt_tree* raw = nullptr;
            check(vrpt_gen_random(seed, n, a.max_len, a.shape.c_str(), &raw));
            TreePtr t(raw);
            const auto start = std::chrono::steady_clock::now();
            vrpt_solution* ps = nullptr;
            check(vrpt_solve_makespan(t.get(), &o, &ps));
            SolPtr ptas(ps);
            const double elapsed = seconds_since(start);
            vrpt_solution* gs = nullptr;
            check(vrpt_solve_greedy(t.get(), a.solver.k, &gs));
            SolPtr greedy(gs);
            int ok = 0;
            char* msg = nullptr;
            check(vrpt_verify(t.get(), ptas.get(), a.solver.k, 0, &ok, &msg));
            std::string verdict = take(msg);
            bad = bad || !ok;

            json row{{"seed", seed},
                     {"n", n},
                     {"digest", digest(t.get())},
                     {"ptas", vrpt_solution_makespan(ptas.get())},
                     {"greedy", vrpt_solution_makespan(greedy.get())},
                     {"roundups", vrpt_solution_max_roundups(ptas.get())},
                     {"seconds", elapsed},
                     {"verify", verdict}};
            std::string exact_col = "-", ratio_col = "-";
            if (vrpt_tree_client_count(t.get()) <= oracle_cap) {
                vrpt_solution* es = nullptr;
                check(vrpt_solve_exact_makespan(t.get(), a.solver.k, &es));
                SolPtr exact(es);
                const int64_t opt = vrpt_solution_makespan(exact.get());
                const int64_t got = vrpt_solution_makespan(ptas.get());
                int within = 0;
                check(vrpt_within_factor(got, opt, a.solver.epsilon.c_str(), &within));
                bad = bad || !within;
                const double ratio = opt > 0 ? static_cast<double>(got) / static_cast<double>(opt) : 1.0;
                row["exact"] = opt;
                row["ratio"] = ratio;
                row["within"] = within == 1;
                exact_col = fmt(t.get(), opt);
                std::ostringstream r;
                r << std::fixed << std::setprecision(4) << ratio << (within ? "" : " !");
                ratio_col = r.str();
            } else {
                row["exact"] = nullptr;
                row["ratio"] = nullptr;
            }
            if (text) {
                std::cout << seed << '\t' << n << '\t' << exact_col << '\t' << fmt(t.get(), vrpt_solution_makespan(ptas.get()))
                          << '\t' << ratio_col << '\t' << fmt(t.get(), vrpt_solution_makespan(greedy.get())) << '\t'
                          << vrpt_solution_max_roundups(ptas.get()) << '\t' << std::fixed << std::setprecision(3)
                          << elapsed << "s\t" << verdict << '\n';
            }
            rows.push_back(std::move(row));
        }
    }
    const int code = bad ? kNegative : kOk;
    if (!text) {
        json record{{"command", "compare"},
                    {"parameters",
                     {{"seeds", a.seeds}, {"sizes", a.sizes}, {"max_len", a.max_len}, {"shape", a.shape},
                      {"solver", a.solver.echo()}}},
                    {"results", rows},
                    {"exit_status", code}};
        std::cout << record.dump(2) << '\n';
    }
    return code;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string instance, solution;
    std::size_t k = 1;
    std::size_t capacity = 0;
};

int cmd_verify(const VerifyArgs& a) {
    TreePtr t = load_tree(a.instance);
    vrpt_solution* raw = nullptr;
    check(vrpt_solution_load_file(t.get(), a.solution.c_str(), &raw));
    SolPtr s(raw);
    int ok = 0;
    char* msg = nullptr;
    check(vrpt_verify(t.get(), s.get(), a.k, a.capacity, &ok, &msg));
    std::string m = take(msg);
    if (ok) {
        std::cout << "pass\n";
        return kOk;
    }
    std::cout << "fail: " << m << '\n';
    return kNegative;
}

// ---------------------------------------------------------------- check-cr

struct CrArgs {
    std::string instance;
    int64_t tau = 0;
};

int cmd_check_cr(const CrArgs& a) {
    TreePtr t = load_tree(a.instance);
    int found = 0;
    char* report = nullptr;
    check(vrpt_check_cr(t.get(), a.tau, &found, &report));
    std::cout << take(report);
    return found ? kOk : kNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vehicle routing on trees: approximation scheme, exact oracles and diagnostics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vrpt_version()));

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate an instance");
    g->add_option("kind", gen.kind, "random or counterexample")
        ->check(CLI::IsMember({"random", "counterexample"}))
        ->capture_default_str();
    g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    g->add_option("-n,--clients", gen.n, "Number of clients")->capture_default_str();
    g->add_option("--max-len", gen.max_len, "Largest edge length")->capture_default_str();
    g->add_option("--shape", gen.shape, "random, caterpillar or star")->capture_default_str();
    g->add_option("--l", gen.l, "Counterexample: number of side leaves")->capture_default_str();
    g->add_option("--path-len", gen.path_len, "Counterexample: central path edge length")->capture_default_str();
    g->add_option("--side-len", gen.side_len, "Counterexample: side leaf length")->capture_default_str();
    g->add_option("--main-len", gen.main_len, "Counterexample: main subtree length")->capture_default_str();
    g->add_option("--tau", gen.tau, "Counterexample: threshold")->capture_default_str();
    g->add_option("-o,--out", gen.out, "Output file (default stdout)");
    g->add_option("--format", gen.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Solve an instance");
    s->add_option("input", solve.input, "Instance file")->required();
    solve.solver.add(s);
    s->add_option("--capacity,-Q", solve.capacity, "Per-tour client capacity (capacitated objective)");
    s->add_option("--budget", solve.budget, "Total length budget for the capacitated decision");
    s->add_option("--decide", solve.decide, "Run the decision procedure for this makespan bound only");
    s->add_option("--method", solve.method, "ptas, exact or greedy")
        ->check(CLI::IsMember({"ptas", "exact", "greedy"}))
        ->capture_default_str();
    s->add_option("-o,--out", solve.out, "Write the solution file here");
    s->add_option("--format", solve.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    s->add_option("--dump-clusters", solve.dump_clusters, "Write the cluster table for the final bound");
    s->add_option("--dot", solve.dot, "Write the cluster graph in DOT form");

    CompareArgs cmp;
    auto* c = app.add_subcommand("compare", "Approximation scheme vs greedy vs exact on generated instances");
    c->add_option("--seeds", cmp.seeds, "Seed list, e.g. 1-10 or 1,5,9")->capture_default_str();
    c->add_option("--sizes,-n", cmp.sizes, "Client counts")->capture_default_str()->delimiter(',');
    cmp.solver.add(c);
    c->add_option("--max-len", cmp.max_len, "Largest edge length")->capture_default_str();
    c->add_option("--shape", cmp.shape, "random, caterpillar or star")->capture_default_str();
    c->add_option("--format", cmp.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Check a solution file against an instance");
    v->add_option("instance", ver.instance, "Instance file")->required();
    v->add_option("solution", ver.solution, "Solution file")->required();
    v->add_option("-k", ver.k, "Tour budget")->capture_default_str();
    v->add_option("--capacity,-Q", ver.capacity, "Per-tour client capacity (0 = none)")->capture_default_str();

    CrArgs cr;
    auto* r = app.add_subcommand("check-cr", "Search for a CR set at threshold tau");
    r->add_option("instance", cr.instance, "Instance file")->required();
    r->add_option("--tau", cr.tau, "Threshold")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*s) {
            if (solve.budget && !solve.capacity) throw Failure{VRPT_E_INVALID, "--budget needs --capacity"};
            return cmd_solve(solve);
        }
        if (*c) return cmd_compare(cmp);
        if (*v) return cmd_verify(ver);
        if (*r) return cmd_check_cr(cr);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInvalid;
}
