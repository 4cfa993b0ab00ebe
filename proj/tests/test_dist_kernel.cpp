#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mcdist/dist_kernel.hpp>

#include "test_support.hpp"

#include <random>

using namespace mcdist;
using namespace mcdist::testing;

namespace
{
    auto spec_for(std::uint64_t t, std::size_t n, std::size_t c = 0, unsigned f = default_split_factor) -> JobSpec
    {
        return JobSpec{ .t = t, .size = n, .split_factor = f, .initial_bound = c };
    }

    /// Largest clique over every job of the partition, all started from the same bound.
    auto best_over_all_jobs(const Graph & g, std::size_t c, unsigned f = default_split_factor) -> std::size_t
    {
        auto order = degree_sort(g);
        std::size_t best = 0;
        for (std::uint64_t t = 0 ; t < std::uint64_t{ f } * g.size() ; ++t) {
            auto ctx = mc_dist(g, order, spec_for(t, g.size(), c, f));
            if (! ctx.best_clique.empty()) {
                CHECK(ctx.best_clique.size() > c);
                CHECK(is_clique(g, ctx.best_clique));
            }
            best = std::max(best, ctx.best_clique.size());
        }
        return best;
    }
}

TEST_CASE("job_membership examples")
{
    auto t0 = spec_for(0, 10);
    CHECK(job_membership(t0, { 0, 0 }));
    CHECK(job_membership(t0, { 0, 8 }));
    CHECK(job_membership(t0, { 0, 16 }));
    CHECK_FALSE(job_membership(t0, { 0, 1 }));
    CHECK_FALSE(job_membership(t0, { 1, 0 }));

    auto t13 = spec_for(13, 10);
    CHECK(job_membership(t13, { 3, 1 }));
    CHECK(job_membership(t13, { 3, 9 }));
    CHECK_FALSE(job_membership(t13, { 3, 2 }));
    CHECK_FALSE(job_membership(t13, { 1, 3 }));
}

TEST_CASE("job_membership assigns every address to exactly one job")
{
    for (unsigned f : { 1u, 3u, 8u })
        for (std::size_t n : { 1u, 2u, 10u, 17u })
            for (std::size_t first = 0 ; first < n ; ++first)
                for (std::size_t second = 0 ; second < 3 * std::max<std::size_t>(n, f) ; ++second) {
                    int owners = 0;
                    for (std::uint64_t t = 0 ; t < f * n ; ++t)
                        owners += job_membership(spec_for(t, n, 0, f), { first, second });
                    CHECK(owners == 1);
                }
}

TEST_CASE("job spec validation")
{
    CHECK_THROWS_AS(job_membership(spec_for(80, 10), { 0, 0 }), std::out_of_range);
    auto bad_arity = spec_for(0, 10);
    bad_arity.arity = 3;
    CHECK_THROWS_AS(bad_arity.validate(), std::invalid_argument);
    CHECK_NOTHROW(spec_for(79, 10).validate());
    CHECK_THROWS(mc_dist(complete_graph(5), spec_for(0, 6)));
}

TEST_CASE("consider_branch")
{
    CHECK(consider_branch(0, 2, false));
    CHECK(consider_branch(1, 2, false));
    CHECK(consider_branch(3, 2, false));
    CHECK_FALSE(consider_branch(2, 2, false));
    CHECK(consider_branch(2, 2, true));
}

TEST_CASE("K5: the job holding the first pop at both levels finds the 5-clique")
{
    auto g = complete_graph(5);
    // root labels run 4..0 in pop order, depth-1 labels 3..0; (4, 3) is job 3 * 5 + 4
    auto hit = mc_dist(g, spec_for(19, 5));
    CHECK(hit.best_clique == std::vector<Vertex>{ 0, 1, 2, 3, 4 });

    // (4, 0) is the last depth-1 pop: nothing left to extend it with
    auto last = mc_dist(g, spec_for(4, 5));
    CHECK(last.best_clique.size() == 2);

    CHECK(best_over_all_jobs(g, 0) == 5);
}

TEST_CASE("a job covering nothing still terminates")
{
    // t / n = 7 but depth-1 labels only reach 3
    auto ctx = mc_dist(complete_graph(5), spec_for(39, 5));
    CHECK(ctx.best_clique.empty());
    CHECK(ctx.nodes == 2);
}

TEST_CASE("bound saturation")
{
    auto c5 = cycle_graph(5);
    for (std::uint64_t t = 0 ; t < 40 ; ++t)
        CHECK(mc_dist(c5, spec_for(t, 5, 10)).best_clique.empty());
    CHECK(best_over_all_jobs(c5, 2) == 0);
    CHECK(best_over_all_jobs(c5, 0) == 2);
}

TEST_CASE("partition completeness and bound injection soundness")
{
    std::mt19937_64 random(5);
    for (int trial = 0 ; trial < 12 ; ++trial) {
        std::size_t n = 8 + random() % 30;
        auto g = generate_gnp(n, double(3 + random() % 6) / 10.0, random());
        auto omega = mc(g).best_size;
        CHECK(best_over_all_jobs(g, 0) == omega);
        CHECK(best_over_all_jobs(g, omega - 1) == omega);
        CHECK(best_over_all_jobs(g, omega) == 0);
        CHECK(best_over_all_jobs(g, 0, 1) == omega);
        CHECK(best_over_all_jobs(g, 0, 3) == omega);
    }
}

TEST_CASE("full coverage through a single split factor of one behaves like mc")
{
    // f = 1, n = 1: one job covering every branch
    auto g = empty_graph(1);
    auto ctx = mc_dist(g, spec_for(0, 1, 0, 1));
    CHECK(ctx.best_clique == std::vector<Vertex>{ 0 });
}

TEST_CASE("incumbent feed")
{
    auto g = generate_gnp(60, 0.7, 9);
    auto order = degree_sort(g);
    std::uint64_t plain_nodes = 0, fed_nodes = 0;
    for (std::uint64_t t = 0 ; t < 8 * 60 ; t += 7) {
        auto spec = spec_for(t, 60);
        auto plain = mc_dist(g, order, spec);
        auto zero = mc_dist(g, order, spec, [] { return std::size_t{ 0 }; });
        CHECK(plain.best_clique == zero.best_clique);
        CHECK(plain.nodes == zero.nodes);

        auto fed = mc_dist(g, order, spec, [] { return std::size_t{ 1000 }; });
        plain_nodes += plain.nodes;
        fed_nodes += fed.nodes;
    }
    CHECK(fed_nodes <= plain_nodes);
}

TEST_CASE("dist_expand requires the ctx to start at the injected bound")
{
    auto g = complete_graph(4);
    SearchContext ctx;
    ctx.best_size = 4;
    std::vector<Vertex> growing;
    auto order = degree_sort(g);
    dist_expand(growing, order, spec_for(15, 4, 4), ctx, g);
    CHECK(ctx.best_clique.empty());
    CHECK(ctx.nodes == 1);
}
