#include "vrptree/vrptree.h"

#include <doctest.h>

#include <cstdio>
#include <string>

namespace {

const char* kStar = "vrptree-instance 1\nroot r\nedge r a 5\nedge r b 5\nclient a\nclient b\n";

std::string take(char* s) {
    std::string out = s ? s : "";
    vrpt_string_free(s);
    return out;
}

} // namespace

TEST_CASE("parse, solve and verify through the C interface") {
    vrpt_tree* t = nullptr;
    REQUIRE(vrpt_tree_parse(kStar, &t) == VRPT_OK);
    CHECK(vrpt_tree_client_count(t) == 2);
    CHECK(vrpt_tree_total_length(t) == 10);

    vrpt_options o;
    vrpt_options_init(&o);
    o.k = 2;
    vrpt_solution* s = nullptr;
    REQUIRE(vrpt_solve_makespan(t, &o, &s) == VRPT_OK);
    CHECK(vrpt_solution_makespan(s) == 10);
    CHECK(vrpt_solution_tour_count(s) == 2);

    int ok = 0;
    char* msg = nullptr;
    REQUIRE(vrpt_verify(t, s, 2, 0, &ok, &msg) == VRPT_OK);
    CHECK(ok == 1);
    take(msg);
    REQUIRE(vrpt_verify(t, s, 1, 0, &ok, &msg) == VRPT_OK);
    CHECK(ok == 0);
    CHECK_FALSE(take(msg).empty());

    char* json = nullptr;
    REQUIRE(vrpt_solution_to_json(t, s, &json) == VRPT_OK);
    CHECK(take(json).find("\"makespan\": 10") != std::string::npos);

    vrpt_solution_free(s);
    vrpt_tree_free(t);
}

TEST_CASE("error codes and messages") {
    vrpt_tree* t = nullptr;
    CHECK(vrpt_tree_parse("edge r a x\n", &t) == VRPT_E_PARSE);
    CHECK(t == nullptr);
    CHECK(std::string(vrpt_last_error()).size() > 0);
    CHECK(vrpt_tree_load_file("/nonexistent/file.txt", &t) == VRPT_E_IO);
    CHECK(std::string(vrpt_status_name(VRPT_E_TOO_LARGE)) == "too large");

    REQUIRE(vrpt_tree_parse(kStar, &t) == VRPT_OK);
    vrpt_options o;
    vrpt_options_init(&o);
    o.k = 0;
    vrpt_solution* s = nullptr;
    CHECK(vrpt_solve_makespan(t, &o, &s) == VRPT_E_INVALID);
    o.k = 2;
    o.epsilon = "nope";
    CHECK(vrpt_solve_makespan(t, &o, &s) != VRPT_OK);
    o.epsilon = nullptr;
    CHECK(vrpt_decide_makespan(t, &o, 5, &s) == VRPT_E_INFEASIBLE);
    CHECK(vrpt_solve_makespan(nullptr, &o, &s) == VRPT_E_INVALID);
    vrpt_tree_free(t);
}

TEST_CASE("capacity, exact and greedy") {
    vrpt_tree* t = nullptr;
    REQUIRE(vrpt_tree_parse(
                "vrptree-instance 1\nroot r\nedge r a 5\nedge r b 5\nedge r c 5\nedge r d 5\n"
                "client a\nclient b\nclient c\nclient d\n",
                &t) == VRPT_OK);
    vrpt_options o;
    vrpt_options_init(&o);
    vrpt_solution* s = nullptr;
    REQUIRE(vrpt_solve_exact_capacity(t, 2, &s) == VRPT_OK);
    CHECK(vrpt_solution_total_length(s) == 40);
    vrpt_solution_free(s);
    REQUIRE(vrpt_solve_capacity(t, &o, 2, -1, &s) == VRPT_OK);
    CHECK(vrpt_solution_total_length(s) <= 40);
    vrpt_solution_free(s);
    CHECK(vrpt_solve_capacity(t, &o, 2, 20, &s) == VRPT_E_INFEASIBLE);
    REQUIRE(vrpt_solve_exact_makespan(t, 2, &s) == VRPT_OK);
    CHECK(vrpt_solution_makespan(s) == 20);
    vrpt_solution_free(s);
    REQUIRE(vrpt_solve_greedy(t, 2, &s) == VRPT_OK);
    CHECK(vrpt_solution_makespan(s) == 20);
    vrpt_solution_free(s);
    vrpt_tree_free(t);
}

TEST_CASE("generators, round trip and solution files") {
    vrpt_tree* t = nullptr;
    REQUIRE(vrpt_gen_random(5, 6, 20, "random", &t) == VRPT_OK);
    char* text = nullptr;
    REQUIRE(vrpt_tree_to_string(t, 0, &text) == VRPT_OK);
    const std::string first = take(text);
    vrpt_tree* u = nullptr;
    REQUIRE(vrpt_tree_parse(first.c_str(), &u) == VRPT_OK);
    REQUIRE(vrpt_tree_to_string(u, 0, &text) == VRPT_OK);
    CHECK(take(text) == first);

    vrpt_options o;
    vrpt_options_init(&o);
    o.k = 2;
    vrpt_solution* s = nullptr;
    REQUIRE(vrpt_solve_makespan(t, &o, &s) == VRPT_OK);
    const std::string path = "capi_solution.json";
    REQUIRE(vrpt_solution_save_file(t, s, path.c_str()) == VRPT_OK);
    vrpt_solution* back = nullptr;
    REQUIRE(vrpt_solution_load_file(u, path.c_str(), &back) == VRPT_OK);
    CHECK(vrpt_solution_makespan(back) == vrpt_solution_makespan(s));
    int ok = 0;
    char* msg = nullptr;
    REQUIRE(vrpt_verify(u, back, 2, 0, &ok, &msg) == VRPT_OK);
    CHECK(ok == 1);
    take(msg);
    std::remove(path.c_str());

    char* table = nullptr;
    char* dot = nullptr;
    REQUIRE(vrpt_dump_clusters(t, &o, vrpt_solution_makespan(s), 0, &table, &dot) == VRPT_OK);
    CHECK_FALSE(take(table).empty());
    CHECK(take(dot).rfind("digraph", 0) == 0);

    vrpt_solution_free(back);
    vrpt_solution_free(s);
    vrpt_tree_free(u);
    vrpt_tree_free(t);

    REQUIRE(vrpt_gen_counterexample(5, 1, 4, 10, 10, &t) == VRPT_OK);
    int found = 1;
    char* report = nullptr;
    REQUIRE(vrpt_check_cr(t, 10, &found, &report) == VRPT_OK);
    CHECK(found == 0);
    take(report);
    vrpt_tree_free(t);

    int within = 0;
    REQUIRE(vrpt_within_factor(125, 100, "1/4", &within) == VRPT_OK);
    CHECK(within == 1);
    REQUIRE(vrpt_within_factor(126, 100, "0.25", &within) == VRPT_OK);
    CHECK(within == 0);
}
