#pragma once

#include <mcdist/graph.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace mcdist
{
    /**
     * Result of the greedy colour sort. stack.back() is the top of the stack, and
     * colours[i] is the colour of stack[i]. Colours along the stack are non-decreasing,
     * so popping yields the largest colour first.
     */
    struct Colouring
    {
        std::vector<Vertex> stack;
        std::vector<unsigned> colours;
        unsigned colours_used = 0;
    };

    /// Incumbent and counters for one search invocation.
    struct SearchContext
    {
        std::vector<Vertex> best_clique;
        std::size_t best_size = 0;
        std::uint64_t nodes = 0;
    };

    /**
     * Sequential greedy colouring of the subgraph induced by candidates, in the given order:
     * each vertex joins the lowest-numbered colour class containing none of its neighbours.
     * Classes are then pushed onto the stack in increasing colour order, each class in
     * insertion order.
     */
    auto colour_sort(std::span<const Vertex> candidates, const Graph & graph) -> Colouring;

    /// True iff some member of vertices is adjacent to v.
    auto adjacent_to_set(Vertex v, std::span<const Vertex> vertices, const Graph & graph) -> bool;

    /**
     * Binomial search below the clique `growing`, choosing from `candidates` in colour order
     * with the colour cutoff. Every candidate must be adjacent to every member of `growing`.
     * Updates ctx when a strictly larger maximal clique is found.
     */
    auto expand(std::vector<Vertex> & growing, std::span<const Vertex> candidates,
            SearchContext & ctx, const Graph & graph) -> void;

    /// Maximum clique of graph. The returned best_clique is sorted ascending.
    auto mc(const Graph & graph) -> SearchContext;
    auto mc(const Graph & graph, const VertexOrder & order) -> SearchContext;
}
