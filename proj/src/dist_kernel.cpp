#include <mcdist/dist_kernel.hpp>

#include "search.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

using namespace mcdist;

auto JobSpec::validate() const -> void
{
    if (arity != 2)
        throw std::invalid_argument("only arity 2 splitting is supported");
    if (split_factor == 0)
        throw std::invalid_argument("split factor must be positive");
    if (size == 0)
        throw std::invalid_argument("job needs a non-empty graph");
    if (t >= job_count())
        throw std::out_of_range("job id " + std::to_string(t) + " outside [0, " + std::to_string(job_count()) + ")");
}

auto mcdist::job_membership(const JobSpec & spec, const BranchAddress & address) -> bool
{
    spec.validate();
    return address.first == spec.t % spec.size
        && address.second % spec.split_factor == spec.t / spec.size;
}

auto mcdist::consider_branch(std::size_t clique_size, unsigned arity, bool covered) -> bool
{
    return clique_size < arity || clique_size > arity || covered;
}

namespace
{
    // Decides branches by the size of the clique they would create. Depth-1 branches are
    // only opened if they prefix a covered address, and the root stops once its single
    // covered branch is done; depth-2 branches go through consider_branch before their
    // subtree is built, so rejected nodes never pay for a colour sort.
    struct JobFilter
    {
        const JobSpec & spec;
        const IncumbentFeed & feed;
        std::size_t first_label = 0;

        auto consider(std::size_t depth, std::size_t label) -> detail::BranchDecision
        {
            using detail::BranchDecision;
            switch (depth) {
                case 0:
                    if (label != spec.t % spec.size)
                        return BranchDecision::skip;
                    first_label = label;
                    return BranchDecision::take_then_stop;

                case 1:
                    return consider_branch(depth + 1, spec.arity, job_membership(spec, { first_label, label }))
                        ? BranchDecision::take : BranchDecision::skip;

                default:
                    return BranchDecision::take;
            }
        }

        auto between_children(std::size_t depth, SearchContext & ctx) -> void
        {
            // best_size may now exceed |best_clique|: the external clique is not ours to report
            if (depth == 1 && feed)
                ctx.best_size = std::max(ctx.best_size, feed());
        }
    };
}

auto mcdist::dist_expand(std::vector<Vertex> & growing, std::span<const Vertex> candidates,
        const JobSpec & spec, SearchContext & ctx, const Graph & graph,
        const IncumbentFeed & feed) -> void
{
    spec.validate();
    JobFilter filter{ spec, feed };
    if (! growing.empty())
        throw std::invalid_argument("dist_expand starts from the root");
    detail::BranchSearch search(graph, ctx, filter);
    search.run(growing, candidates);
}

auto mcdist::mc_dist(const Graph & graph, const VertexOrder & order, const JobSpec & spec,
        const IncumbentFeed & feed) -> SearchContext
{
    if (spec.size != graph.size())
        throw std::invalid_argument("job spec is for a graph with " + std::to_string(spec.size)
                + " vertices, graph has " + std::to_string(graph.size()));

    SearchContext ctx;
    ctx.best_size = spec.initial_bound;
    std::vector<Vertex> growing;
    dist_expand(growing, order, spec, ctx, graph, feed);
    std::sort(ctx.best_clique.begin(), ctx.best_clique.end());
    return ctx;
}

auto mcdist::mc_dist(const Graph & graph, const JobSpec & spec) -> SearchContext
{
    return mc_dist(graph, degree_sort(graph), spec);
}
