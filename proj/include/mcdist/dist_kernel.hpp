#pragma once

#include <mcdist/clique_core.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mcdist
{
    inline constexpr unsigned default_split_factor = 8;

    /**
     * One subproblem of the distributed search. The job explores the first-level branch
     * labelled t mod n, and below it the second-level branches whose label is congruent to
     * t / n modulo the split factor. Together the split_factor * n jobs cover every
     * depth-2 branch exactly once.
     */
    struct JobSpec
    {
        std::uint64_t t = 0;
        std::size_t size = 0;
        unsigned split_factor = default_split_factor;
        unsigned arity = 2;
        std::size_t initial_bound = 0;

        auto job_count() const -> std::uint64_t { return std::uint64_t{ split_factor } * size; }

        /// Throws std::out_of_range / std::invalid_argument if the invariants do not hold.
        auto validate() const -> void;
    };

    /// Labels of a depth-2 node: its depth-1 parent's label and its own label within the parent.
    struct BranchAddress
    {
        std::size_t first = 0;
        std::size_t second = 0;
    };

    auto job_membership(const JobSpec & spec, const BranchAddress & address) -> bool;

    /// True iff the clique is shallower or deeper than arity, or sits at a covered address.
    auto consider_branch(std::size_t clique_size, unsigned arity, bool covered) -> bool;

    /// Called between depth-1 siblings; return a (possibly higher) external incumbent.
    using IncumbentFeed = std::function<std::size_t ()>;

    /// ctx.best_size must already hold spec.initial_bound.
    auto dist_expand(std::vector<Vertex> & growing, std::span<const Vertex> candidates,
            const JobSpec & spec, SearchContext & ctx, const Graph & graph,
            const IncumbentFeed & feed = nullptr) -> void;

    /**
     * Runs one job from the root. The returned best_clique is empty unless a clique strictly
     * larger than spec.initial_bound was found in the covered subtrees; otherwise it is sorted
     * ascending. order must be degree_sort(graph) for numbering to agree across jobs.
     */
    auto mc_dist(const Graph & graph, const VertexOrder & order, const JobSpec & spec,
            const IncumbentFeed & feed = nullptr) -> SearchContext;
    auto mc_dist(const Graph & graph, const JobSpec & spec) -> SearchContext;
}
