#include <mcdist/clique_core.hpp>

#include "search.hpp"

#include <algorithm>

using namespace mcdist;

auto mcdist::colour_sort(std::span<const Vertex> candidates, const Graph & graph) -> Colouring
{
    detail::Frame frame;
    Colouring result;
    result.colours_used = detail::colour_positions(candidates, graph, frame);
    result.colours = frame.colours;
    result.stack.reserve(frame.stack.size());
    for (auto pos : frame.stack)
        result.stack.push_back(candidates[pos]);
    return result;
}

auto mcdist::adjacent_to_set(Vertex v, std::span<const Vertex> vertices, const Graph & graph) -> bool
{
    return std::any_of(vertices.begin(), vertices.end(), [&] (Vertex w) { return graph.adjacent(v, w); });
}

auto mcdist::expand(std::vector<Vertex> & growing, std::span<const Vertex> candidates,
        SearchContext & ctx, const Graph & graph) -> void
{
    detail::TakeEverything filter;
    detail::BranchSearch search(graph, ctx, filter);
    search.run(growing, candidates);
}

auto mcdist::mc(const Graph & graph) -> SearchContext
{
    return mc(graph, degree_sort(graph));
}

auto mcdist::mc(const Graph & graph, const VertexOrder & order) -> SearchContext
{
    SearchContext ctx;
    std::vector<Vertex> growing;
    expand(growing, order, ctx, graph);
    std::sort(ctx.best_clique.begin(), ctx.best_clique.end());
    return ctx;
}
