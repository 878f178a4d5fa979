#include "vrptree/vrptree.h"

#include "vrptree/clustering.hpp"
#include "vrptree/dp.hpp"
#include "vrptree/errors.hpp"
#include "vrptree/instances.hpp"
#include "vrptree/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct vrpt_tree {
    vrpt::RoutingTree tree;
};

struct vrpt_solution {
    vrpt::Solution solution;
};

namespace {

thread_local std::string last_error;

vrpt_status fail(vrpt_status s, const char* what) {
    last_error = what;
    return s;
}

template <class F>
vrpt_status guarded(F&& f) {
    try {
        return f();
    } catch (const vrpt::InvalidArgument& e) {
        return fail(VRPT_E_INVALID, e.what());
    } catch (const vrpt::ParseError& e) {
        return fail(VRPT_E_PARSE, e.what());
    } catch (const vrpt::IoError& e) {
        return fail(VRPT_E_IO, e.what());
    } catch (const vrpt::TooLarge& e) {
        return fail(VRPT_E_TOO_LARGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(VRPT_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(VRPT_E_INTERNAL, e.what());
    } catch (...) {
        return fail(VRPT_E_INTERNAL, "unknown error");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void need(const void* p, const char* what) {
    if (!p) throw vrpt::InvalidArgument(std::string(what) + " is NULL");
}

vrpt::SolverParams solver_params(const vrpt_options* o) {
    vrpt::SolverParams p;
    if (!o) return p;
    if (o->epsilon) p.epsilon = vrpt::Ratio::parse(o->epsilon);
    if (o->eps_hat) p.eps_hat = vrpt::Ratio::parse(o->eps_hat);
    if (o->delta) p.delta = vrpt::Ratio::parse(o->delta);
    if (o->theta) p.theta = vrpt::Ratio::parse(o->theta);
    p.k = o->k;
    p.dominance = o->dominance != 0;
    p.max_configs = o->max_configs;
    p.validate();
    return p;
}

vrpt::CapacityParams capacity_params(const vrpt_options* o, size_t Q) {
    vrpt::SolverParams sp = solver_params(o);
    vrpt::CapacityParams c;
    c.Q = static_cast<std::int64_t>(Q);
    c.epsilon = sp.epsilon;
    c.eps_hat = sp.eps_hat;
    c.delta = sp.delta;
    c.theta = sp.theta;
    c.dominance = sp.dominance;
    c.max_configs = sp.max_configs;
    return c;
}

vrpt_status give(vrpt::Solution s, vrpt_solution** out) {
    *out = new vrpt_solution{std::move(s)};
    return VRPT_OK;
}

} // namespace

extern "C" {

const char* vrpt_last_error(void) { return last_error.c_str(); }

const char* vrpt_version(void) { return "0.1.0"; }

const char* vrpt_status_name(vrpt_status s) {
    switch (s) {
    case VRPT_OK: return "ok";
    case VRPT_E_INVALID: return "invalid argument";
    case VRPT_E_PARSE: return "parse error";
    case VRPT_E_IO: return "i/o error";
    case VRPT_E_TOO_LARGE: return "too large";
    case VRPT_E_INFEASIBLE: return "infeasible";
    case VRPT_E_INTERNAL: return "internal error";
    }
    return "unknown";
}

void vrpt_string_free(char* s) { std::free(s); }

vrpt_status vrpt_tree_load_file(const char* path, vrpt_tree** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new vrpt_tree{vrpt::load_instance_file(path)};
        return VRPT_OK;
    });
}

vrpt_status vrpt_tree_parse(const char* text, vrpt_tree** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new vrpt_tree{vrpt::load_instance(text)};
        return VRPT_OK;
    });
}

vrpt_status vrpt_tree_save_file(const vrpt_tree* t, const char* path, int structured) {
    return guarded([&] {
        need(t, "tree");
        need(path, "path");
        vrpt::save_instance_file(t->tree, path, structured != 0);
        return VRPT_OK;
    });
}

vrpt_status vrpt_tree_to_string(const vrpt_tree* t, int structured, char** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        *out = dup(vrpt::save_instance(t->tree, structured != 0));
        return VRPT_OK;
    });
}

vrpt_status vrpt_tree_digest(const vrpt_tree* t, char** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        *out = dup(vrpt::instance_digest(t->tree));
        return VRPT_OK;
    });
}

void vrpt_tree_free(vrpt_tree* t) { delete t; }

size_t vrpt_tree_vertex_count(const vrpt_tree* t) { return t ? t->tree.size() : 0; }

size_t vrpt_tree_client_count(const vrpt_tree* t) { return t ? t->tree.clients().size() : 0; }

int64_t vrpt_tree_total_length(const vrpt_tree* t) { return t ? t->tree.total_length() : 0; }

int64_t vrpt_tree_scale(const vrpt_tree* t) { return t ? t->tree.scale() : 1; }

vrpt_status vrpt_format_length(const vrpt_tree* t, int64_t units, char** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        *out = dup(vrpt::format_length(units, t->tree.scale()));
        return VRPT_OK;
    });
}

vrpt_status vrpt_gen_random(uint64_t seed, size_t n_clients, int64_t max_len, const char* shape, vrpt_tree** out) {
    return guarded([&] {
        need(out, "out");
        vrpt::Shape sh = shape ? vrpt::parse_shape(shape) : vrpt::Shape::Random;
        *out = new vrpt_tree{vrpt::gen_random(seed, n_clients, max_len, sh)};
        return VRPT_OK;
    });
}

vrpt_status vrpt_gen_counterexample(size_t l, int64_t path_len, int64_t side_len, int64_t main_len, int64_t tau,
                                    vrpt_tree** out) {
    return guarded([&] {
        need(out, "out");
        vrpt::CounterexampleParams p{l, path_len, side_len, main_len, tau};
        *out = new vrpt_tree{vrpt::gen_counterexample(p)};
        return VRPT_OK;
    });
}

void vrpt_options_init(vrpt_options* o) {
    if (!o) return;
    vrpt::SolverParams d;
    *o = vrpt_options{nullptr, nullptr, nullptr, nullptr, d.k, d.dominance ? 1 : 0, d.max_configs};
}

vrpt_status vrpt_solve_makespan(const vrpt_tree* t, const vrpt_options* o, vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        return give(vrpt::ptas(t->tree, solver_params(o)), out);
    });
}

vrpt_status vrpt_decide_makespan(const vrpt_tree* t, const vrpt_options* o, int64_t D, vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        auto s = vrpt::decide(t->tree, solver_params(o), D);
        if (!s) return fail(VRPT_E_INFEASIBLE, ("no solution for D = " + std::to_string(D)).c_str());
        return give(std::move(*s), out);
    });
}

vrpt_status vrpt_solve_capacity(const vrpt_tree* t, const vrpt_options* o, size_t Q, int64_t budget,
                                vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        vrpt::CapacityParams c = capacity_params(o, Q);
        if (budget < 0) return give(vrpt::ptas_capacity(t->tree, c), out);
        auto s = vrpt::decide_capacity(t->tree, c, budget);
        if (!s) return fail(VRPT_E_INFEASIBLE, ("no solution within budget " + std::to_string(budget)).c_str());
        return give(std::move(*s), out);
    });
}

vrpt_status vrpt_solve_exact_makespan(const vrpt_tree* t, size_t k, vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        vrpt::ExactResult r = vrpt::exact_makespan(t->tree, k);
        vrpt::Solution s = vrpt::solution_from_groups(t->tree, r.groups);
        s.params["method"] = "exact";
        s.params["k"] = std::to_string(k);
        return give(std::move(s), out);
    });
}

vrpt_status vrpt_solve_exact_capacity(const vrpt_tree* t, size_t Q, vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        vrpt::ExactResult r = vrpt::exact_capacitated(t->tree, Q);
        vrpt::Solution s = vrpt::solution_from_groups(t->tree, r.groups, "capacity");
        s.D = static_cast<std::int64_t>(Q);
        s.params["method"] = "exact";
        s.params["Q"] = std::to_string(Q);
        return give(std::move(s), out);
    });
}

vrpt_status vrpt_solve_greedy(const vrpt_tree* t, size_t k, vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(out, "out");
        return give(vrpt::greedy_baseline(t->tree, k), out);
    });
}

vrpt_status vrpt_dump_clusters(const vrpt_tree* t, const vrpt_options* o, int64_t D, int capacity, char** table,
                               char** dot) {
    return guarded([&] {
        need(t, "tree");
        vrpt::SolverParams p = solver_params(o);
        vrpt::LoadFunction load{capacity ? vrpt::LoadKind::ClientCount : vrpt::LoadKind::TourLength};
        vrpt::Decomposition d = vrpt::decompose(t->tree, load, p.eps_hat_value(), p.delta_value(), D);
        if (table) *table = dup(vrpt::dump_clusters(d.condensed, d.clustering));
        if (dot) *dot = dup(vrpt::clusters_dot(d.condensed, d.clustering));
        return VRPT_OK;
    });
}

vrpt_status vrpt_solution_load_file(const vrpt_tree* t, const char* path, vrpt_solution** out) {
    return guarded([&] {
        need(t, "tree");
        need(path, "path");
        need(out, "out");
        return give(vrpt::load_solution_file(t->tree, path), out);
    });
}

vrpt_status vrpt_solution_save_file(const vrpt_tree* t, const vrpt_solution* s, const char* path) {
    return guarded([&] {
        need(t, "tree");
        need(s, "solution");
        need(path, "path");
        vrpt::save_solution_file(t->tree, s->solution, path);
        return VRPT_OK;
    });
}

vrpt_status vrpt_solution_to_json(const vrpt_tree* t, const vrpt_solution* s, char** out) {
    return guarded([&] {
        need(t, "tree");
        need(s, "solution");
        need(out, "out");
        *out = dup(vrpt::solution_to_json(t->tree, s->solution));
        return VRPT_OK;
    });
}

vrpt_status vrpt_solution_to_text(const vrpt_tree* t, const vrpt_solution* s, char** out) {
    return guarded([&] {
        need(t, "tree");
        need(s, "solution");
        need(out, "out");
        *out = dup(vrpt::solution_to_text(t->tree, s->solution));
        return VRPT_OK;
    });
}

void vrpt_solution_free(vrpt_solution* s) { delete s; }

size_t vrpt_solution_tour_count(const vrpt_solution* s) { return s ? s->solution.tours.size() : 0; }

int64_t vrpt_solution_makespan(const vrpt_solution* s) { return s ? s->solution.makespan : 0; }

int64_t vrpt_solution_total_length(const vrpt_solution* s) { return s ? s->solution.total_length : 0; }

size_t vrpt_solution_max_clients(const vrpt_solution* s) { return s ? s->solution.max_clients : 0; }

int64_t vrpt_solution_bound(const vrpt_solution* s) { return s ? s->solution.D : 0; }

size_t vrpt_solution_max_roundups(const vrpt_solution* s) {
    size_t r = 0;
    if (s) {
        for (const auto& t : s->solution.tours) r = std::max(r, t.roundups);
    }
    return r;
}

int vrpt_solution_counter(const vrpt_solution* s, const char* name, int64_t* value) {
    if (!s || !name || !value) return 0;
    auto it = s->solution.counters.find(name);
    if (it == s->solution.counters.end()) return 0;
    *value = it->second;
    return 1;
}

vrpt_status vrpt_verify(const vrpt_tree* t, const vrpt_solution* s, size_t k, size_t capacity, int* ok,
                        char** message) {
    return guarded([&] {
        need(t, "tree");
        need(s, "solution");
        need(ok, "ok");
        std::optional<std::size_t> cap;
        if (capacity > 0) cap = capacity;
        vrpt::VerifyReport r = vrpt::verify(t->tree, s->solution, k, cap);
        *ok = r.ok ? 1 : 0;
        if (message) *message = dup(r.message);
        return VRPT_OK;
    });
}

vrpt_status vrpt_check_cr(const vrpt_tree* t, int64_t tau, int* found, char** report) {
    return guarded([&] {
        need(t, "tree");
        need(found, "found");
        auto w = vrpt::check_cr(t->tree, tau);
        *found = w ? 1 : 0;
        std::string text = "no CR set for tau = " + vrpt::format_length(tau, t->tree.scale()) + "\n";
        if (w) {
            std::string err = vrpt::recheck_cr(t->tree, tau, *w);
            if (!err.empty()) throw vrpt::InternalError("witness failed the re-check: " + err);
            text = vrpt::describe_cr(t->tree, *w);
        }
        if (report) *report = dup(text);
        return VRPT_OK;
    });
}

vrpt_status vrpt_within_factor(int64_t value, int64_t reference, const char* epsilon, int* ok) {
    return guarded([&] {
        need(epsilon, "epsilon");
        need(ok, "ok");
        vrpt::Ratio f = vrpt::Ratio(1) + vrpt::Ratio::parse(epsilon);
        *ok = f.compare_scaled(reference, value) >= 0 ? 1 : 0;
        return VRPT_OK;
    });
}

} // extern "C"
