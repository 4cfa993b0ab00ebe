#pragma once

// Shared branch-and-bound engine behind expand and dist_expand. The two differ only in
// which branches a node is allowed to take, which is supplied as a filter policy.

#include <mcdist/clique_core.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace mcdist::detail
{
    enum class BranchDecision
    {
        skip,
        take,
        take_then_stop
    };

    struct TakeEverything
    {
        auto consider(std::size_t, std::size_t) -> BranchDecision { return BranchDecision::take; }
        auto between_children(std::size_t, SearchContext &) -> void { }
    };

    /// Scratch for one level of the search; reused across calls at the same depth.
    struct Frame
    {
        std::vector<std::vector<unsigned>> classes;
        std::vector<unsigned> stack;
        std::vector<unsigned> colours;
        std::vector<std::uint8_t> alive;
        std::vector<Vertex> next;
    };

    /// Greedy colour sort writing positions into candidates, stack-ordered, plus parallel colours.
    inline auto colour_positions(std::span<const Vertex> candidates, const Graph & graph, Frame & frame) -> unsigned
    {
        unsigned colours_used = 0;
        for (unsigned pos = 0 ; pos < candidates.size() ; ++pos) {
            Vertex v = candidates[pos];
            unsigned k = 0;
            for ( ; k < colours_used ; ++k) {
                auto & members = frame.classes[k];
                bool clash = std::any_of(members.begin(), members.end(),
                        [&] (unsigned w) { return graph.adjacent(v, candidates[w]); });
                if (! clash)
                    break;
            }
            if (k == colours_used) {
                if (frame.classes.size() <= k)
                    frame.classes.emplace_back();
                frame.classes[k].clear();
                ++colours_used;
            }
            frame.classes[k].push_back(pos);
        }

        frame.stack.clear();
        frame.colours.clear();
        for (unsigned k = 0 ; k < colours_used ; ++k)
            for (auto pos : frame.classes[k]) {
                frame.stack.push_back(pos);
                frame.colours.push_back(k + 1);
            }

        return colours_used;
    }

    template <typename Filter>
    class BranchSearch
    {
        public:
            BranchSearch(const Graph & graph, SearchContext & ctx, Filter & filter) :
                _graph(graph),
                _ctx(ctx),
                _filter(filter),
                _frames(graph.size() + 2)
            {
            }

            auto run(std::vector<Vertex> & growing, std::span<const Vertex> candidates) -> void
            {
                ++_ctx.nodes;

                auto & frame = _frames[growing.size()];
                colour_positions(candidates, _graph, frame);
                frame.alive.assign(candidates.size(), 1);

                // The k-th pop from a stack of size s carries branch label s - k.
                for (std::size_t label = frame.stack.size() ; label-- > 0 ; ) {
                    unsigned pos = frame.stack[label];
                    Vertex v = candidates[pos];

                    if (frame.colours[label] + growing.size() <= _ctx.best_size)
                        return;

                    auto decision = _filter.consider(growing.size(), label);
                    if (decision != BranchDecision::skip) {
                        growing.push_back(v);

                        auto & next = frame.next;
                        next.clear();
                        for (unsigned i = 0 ; i < candidates.size() ; ++i)
                            if (frame.alive[i] && _graph.adjacent(v, candidates[i]))
                                next.push_back(candidates[i]);

                        if (next.empty() && growing.size() > _ctx.best_size) {
                            _ctx.best_clique = growing;
                            _ctx.best_size = growing.size();
                        }
                        if (! next.empty())
                            run(growing, next);

                        growing.pop_back();

                        if (decision == BranchDecision::take_then_stop)
                            return;
                    }

                    frame.alive[pos] = 0;
                    _filter.between_children(growing.size(), _ctx);
                }
            }

        private:
            const Graph & _graph;
            SearchContext & _ctx;
            Filter & _filter;
            std::vector<Frame> _frames;
    };
}
