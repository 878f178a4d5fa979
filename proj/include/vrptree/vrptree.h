#ifndef VRPTREE_H
#define VRPTREE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VRPT_BUILDING_LIBRARY)
#    define VRPT_API __declspec(dllexport)
#  else
#    define VRPT_API __declspec(dllimport)
#  endif
#else
#  define VRPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vrpt_status {
    VRPT_OK = 0,
    VRPT_E_INVALID = 1,    /* bad parameter or violated precondition */
    VRPT_E_PARSE = 2,
    VRPT_E_IO = 3,
    VRPT_E_TOO_LARGE = 4,  /* above an exact solver or checker cap */
    VRPT_E_INFEASIBLE = 5, /* decision procedure found no solution */
    VRPT_E_INTERNAL = 6
} vrpt_status;

typedef struct vrpt_tree vrpt_tree;
typedef struct vrpt_solution vrpt_solution;

/* Message for the last failed call on this thread; never NULL. */
VRPT_API const char* vrpt_last_error(void);
VRPT_API const char* vrpt_version(void);
VRPT_API const char* vrpt_status_name(vrpt_status s);

/* Strings returned through char** are owned by the caller. */
VRPT_API void vrpt_string_free(char* s);

/* Trees */
VRPT_API vrpt_status vrpt_tree_load_file(const char* path, vrpt_tree** out);
VRPT_API vrpt_status vrpt_tree_parse(const char* text, vrpt_tree** out);
VRPT_API vrpt_status vrpt_tree_save_file(const vrpt_tree* t, const char* path, int structured);
VRPT_API vrpt_status vrpt_tree_to_string(const vrpt_tree* t, int structured, char** out);
VRPT_API vrpt_status vrpt_tree_digest(const vrpt_tree* t, char** out);
VRPT_API void vrpt_tree_free(vrpt_tree* t);
VRPT_API size_t vrpt_tree_vertex_count(const vrpt_tree* t);
VRPT_API size_t vrpt_tree_client_count(const vrpt_tree* t);
VRPT_API int64_t vrpt_tree_total_length(const vrpt_tree* t);
VRPT_API int64_t vrpt_tree_scale(const vrpt_tree* t);
/* Formats a length in units of 1/scale, e.g. "7/2". */
VRPT_API vrpt_status vrpt_format_length(const vrpt_tree* t, int64_t units, char** out);

/* Generators. shape: "random", "caterpillar" or "star". */
VRPT_API vrpt_status vrpt_gen_random(uint64_t seed, size_t n_clients, int64_t max_len, const char* shape,
                                     vrpt_tree** out);
VRPT_API vrpt_status vrpt_gen_counterexample(size_t l, int64_t path_len, int64_t side_len, int64_t main_len,
                                             int64_t tau, vrpt_tree** out);

/* Solver options. Rationals are strings ("0.25", "1/4"); NULL selects the default. */
typedef struct vrpt_options {
    const char* epsilon;
    const char* eps_hat;
    const char* delta;
    const char* theta;
    size_t k;
    int dominance;
    size_t max_configs;
} vrpt_options;

VRPT_API void vrpt_options_init(vrpt_options* o);

/* Makespan. decide returns VRPT_E_INFEASIBLE when the bound is rejected. */
VRPT_API vrpt_status vrpt_solve_makespan(const vrpt_tree* t, const vrpt_options* o, vrpt_solution** out);
VRPT_API vrpt_status vrpt_decide_makespan(const vrpt_tree* t, const vrpt_options* o, int64_t D,
                                          vrpt_solution** out);

/* Capacitated: per-tour clients at most (1 + epsilon) Q. budget < 0 searches
   for the least budget; otherwise decides that budget. o->k is ignored. */
VRPT_API vrpt_status vrpt_solve_capacity(const vrpt_tree* t, const vrpt_options* o, size_t Q, int64_t budget,
                                         vrpt_solution** out);

VRPT_API vrpt_status vrpt_solve_exact_makespan(const vrpt_tree* t, size_t k, vrpt_solution** out);
VRPT_API vrpt_status vrpt_solve_exact_capacity(const vrpt_tree* t, size_t Q, vrpt_solution** out);
VRPT_API vrpt_status vrpt_solve_greedy(const vrpt_tree* t, size_t k, vrpt_solution** out);

/* Decomposition diagnostics for bound D: cluster table and DOT graph. */
VRPT_API vrpt_status vrpt_dump_clusters(const vrpt_tree* t, const vrpt_options* o, int64_t D, int capacity,
                                        char** table, char** dot);

/* Solutions */
VRPT_API vrpt_status vrpt_solution_load_file(const vrpt_tree* t, const char* path, vrpt_solution** out);
VRPT_API vrpt_status vrpt_solution_save_file(const vrpt_tree* t, const vrpt_solution* s, const char* path);
VRPT_API vrpt_status vrpt_solution_to_json(const vrpt_tree* t, const vrpt_solution* s, char** out);
VRPT_API vrpt_status vrpt_solution_to_text(const vrpt_tree* t, const vrpt_solution* s, char** out);
VRPT_API void vrpt_solution_free(vrpt_solution* s);
VRPT_API size_t vrpt_solution_tour_count(const vrpt_solution* s);
VRPT_API int64_t vrpt_solution_makespan(const vrpt_solution* s);
VRPT_API int64_t vrpt_solution_total_length(const vrpt_solution* s);
VRPT_API size_t vrpt_solution_max_clients(const vrpt_solution* s);
/* Decision bound the solution was built for (Q for capacitated runs). */
VRPT_API int64_t vrpt_solution_bound(const vrpt_solution* s);
/* Largest per-tour roundup count. */
VRPT_API size_t vrpt_solution_max_roundups(const vrpt_solution* s);
/* Returns 0 and leaves *value untouched when the counter is absent. */
VRPT_API int vrpt_solution_counter(const vrpt_solution* s, const char* name, int64_t* value);

/* Verification. capacity 0 means unconstrained. *ok is 1 on pass. */
VRPT_API vrpt_status vrpt_verify(const vrpt_tree* t, const vrpt_solution* s, size_t k, size_t capacity, int* ok,
                                 char** message);

/* CR-set search. *found is 1 when a witness exists; report describes it. */
VRPT_API vrpt_status vrpt_check_cr(const vrpt_tree* t, int64_t tau, int* found, char** report);

/* *ok = value <= (1 + epsilon) * reference, evaluated exactly. */
VRPT_API vrpt_status vrpt_within_factor(int64_t value, int64_t reference, const char* epsilon, int* ok);

#ifdef __cplusplus
}
#endif

#endif
