#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mcdist/graph.hpp>

#include "test_support.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace mcdist;
using namespace mcdist::testing;

namespace
{
    auto parse(const std::string & text) -> Graph
    {
        std::istringstream input(text);
        return parse_dimacs(input);
    }

    auto parse_error_line(const std::string & text) -> std::size_t
    {
        try {
            parse(text);
        }
        catch (const ParseError & e) {
            return e.line();
        }
        FAIL("expected a parse error");
        return 0;
    }

    auto check_graph_invariants(const Graph & g) -> void
    {
        for (Vertex v = 0 ; v < g.size() ; ++v) {
            CHECK_FALSE(g.adjacent(v, v));
            unsigned degree = 0;
            for (Vertex w = 0 ; w < g.size() ; ++w) {
                CHECK(g.adjacent(v, w) == g.adjacent(w, v));
                degree += g.adjacent(v, w);
            }
            CHECK(g.degree(v) == degree);
        }
    }
}

TEST_CASE("parse_dimacs reads a triangle")
{
    auto g = parse("p edge 3 3\ne 1 2\ne 2 3\ne 1 3");
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 3);
    for (Vertex v = 0 ; v < 3 ; ++v)
        CHECK(g.degree(v) == 2);
    CHECK(g == complete_graph(3));
}

TEST_CASE("parse_dimacs collapses duplicate edges and skips comments")
{
    auto g = parse("c a comment\np edge 4 2\ne 1 2\n\nc another\ne 2 1\n");
    CHECK(g.size() == 4);
    CHECK(g.edge_count() == 1);
    CHECK(g.adjacent(0, 1));
    CHECK(g.degree(2) == 0);
}

TEST_CASE("parse_dimacs accepts the BHOSLIB 'p col' header")
{
    auto g = parse("p col 2 1\ne 1 2\n");
    CHECK(g.edge_count() == 1);
}

TEST_CASE("parse_dimacs errors name the offending line")
{
    CHECK(parse_error_line("p edge 2 1\ne 2 3") == 2);
    CHECK(parse_error_line("p edge 2 1\ne 0 1") == 2);
    CHECK(parse_error_line("p edge 3 1\nc x\ne 2 2") == 3);
    CHECK(parse_error_line("e 1 2\np edge 2 1") == 1);
    CHECK(parse_error_line("p edge 2 1\np edge 2 1") == 2);
    CHECK(parse_error_line("p edge 2 1\ne 1") == 2);
    CHECK(parse_error_line("p edge 2 1\nx 1 2") == 2);
    CHECK(parse_error_line("p edge two 1") == 1);
    CHECK(parse_error_line("p edge 0 0") == 1);
    CHECK_THROWS_AS(parse("c only comments\n"), ParseError);
}

TEST_CASE("out of range vertex message mentions it")
{
    try {
        parse("p edge 2 1\ne 2 3");
        FAIL("no error");
    }
    catch (const ParseError & e) {
        CHECK(std::string(e.what()).find("vertex 3 out of range") != std::string::npos);
    }
}

TEST_CASE("Graph constructor rejects self-loops and bad endpoints")
{
    std::vector<Edge> loop{ { 1, 1 } };
    CHECK_THROWS_AS(Graph(3, loop), std::invalid_argument);
    std::vector<Edge> out{ { 0, 3 } };
    CHECK_THROWS_AS(Graph(3, out), std::invalid_argument);
}

TEST_CASE("write then parse is the identity")
{
    std::mt19937_64 random(11);
    for (int trial = 0 ; trial < 40 ; ++trial) {
        std::size_t n = 1 + random() % 30;
        double p = double(random() % 11) / 10.0;
        auto g = generate_gnp(n, p, random());
        std::ostringstream out;
        write_dimacs(out, g, trial % 2 ? "with a comment" : "");
        CHECK(parse(out.str()) == g);
    }
}

TEST_CASE("generate_gnp extremes")
{
    auto none = generate_gnp(5, 0.0, 123);
    CHECK(none.edge_count() == 0);
    CHECK(brute_force_omega(none).size == 1);

    auto all = generate_gnp(5, 1.0, 99);
    CHECK(all == complete_graph(5));
    CHECK(brute_force_omega(all).size == 5);
}

TEST_CASE("generate_gnp is deterministic and respects invariants")
{
    CHECK(generate_gnp(60, 0.3, 5) == generate_gnp(60, 0.3, 5));
    CHECK_FALSE(generate_gnp(60, 0.3, 5) == generate_gnp(60, 0.3, 6));

    for (std::uint64_t seed = 0 ; seed < 10 ; ++seed)
        check_graph_invariants(generate_gnp(25, 0.1 * double(seed), seed));
}

TEST_CASE("generate_gnp edge density is close to p")
{
    auto g = generate_gnp(400, 0.25, 2024);
    double density = double(g.edge_count()) / (400.0 * 399.0 / 2.0);
    CHECK(density == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("generate_gnp argument checks")
{
    CHECK_THROWS_AS(generate_gnp(0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_gnp(5, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_gnp(5, 1.5, 1), std::invalid_argument);
}

TEST_CASE("degree_sort examples")
{
    std::vector<Edge> star_edges{ { 0, 1 }, { 0, 2 }, { 0, 3 } };
    CHECK(degree_sort(Graph(4, star_edges)).front() == 0);
    CHECK(degree_sort(complete_graph(4)) == VertexOrder{ 0, 1, 2, 3 });
    // path 1-2-3-4 has degrees (1,2,2,1): 1-based order (2,3,1,4)
    CHECK(degree_sort(path_graph(4)) == VertexOrder{ 1, 2, 0, 3 });
}

TEST_CASE("degree_sort is a permutation with non-increasing degrees")
{
    std::mt19937_64 random(3);
    for (int trial = 0 ; trial < 30 ; ++trial) {
        auto g = generate_gnp(1 + random() % 40, 0.5, random());
        auto order = degree_sort(g);
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (Vertex v = 0 ; v < g.size() ; ++v)
            CHECK(sorted[v] == v);
        for (std::size_t i = 1 ; i < order.size() ; ++i) {
            CHECK(g.degree(order[i - 1]) >= g.degree(order[i]));
            if (g.degree(order[i - 1]) == g.degree(order[i]))
                CHECK(order[i - 1] < order[i]);
        }
    }
}

TEST_CASE("is_clique")
{
    std::vector<Vertex> three{ 0, 1, 2 };
    CHECK(is_clique(complete_graph(5), three));
    std::vector<Vertex> ends{ 0, 2 };
    CHECK_FALSE(is_clique(path_graph(3), ends));
    CHECK(is_clique(path_graph(3), std::vector<Vertex>{}));
    CHECK(is_clique(path_graph(3), std::vector<Vertex>{ 1 }));
    CHECK_THROWS_AS(is_clique(path_graph(3), std::vector<Vertex>{ 3 }), std::out_of_range);
}

TEST_CASE("brute_force_omega examples")
{
    auto empty = brute_force_omega(empty_graph(6));
    CHECK(empty.size == 1);
    CHECK(empty.witness.size() == 1);

    auto c5 = brute_force_omega(cycle_graph(5));
    CHECK(c5.size == 2);
    CHECK(is_clique(cycle_graph(5), c5.witness));

    CHECK(brute_force_omega(complete_graph(32)).size == 32);
    CHECK_THROWS_AS(brute_force_omega(empty_graph(33)), std::invalid_argument);
}

TEST_CASE("brute_force_omega witness is a clique and nothing larger is")
{
    std::mt19937_64 random(17);
    for (int trial = 0 ; trial < 25 ; ++trial) {
        std::size_t n = 1 + random() % 14;
        auto g = generate_gnp(n, double(1 + random() % 9) / 10.0, random());
        auto result = brute_force_omega(g);
        CHECK(result.witness.size() == result.size);
        CHECK(is_clique(g, result.witness));

        // Plain subset enumeration, no pruning at all.
        std::size_t largest = 0;
        for (std::uint32_t mask = 0 ; mask < (1u << n) ; ++mask) {
            std::vector<Vertex> members;
            for (Vertex v = 0 ; v < n ; ++v)
                if (mask & (1u << v))
                    members.push_back(v);
            if (is_clique(g, members))
                largest = std::max(largest, members.size());
        }
        CHECK(result.size == largest);
    }
}
