#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcdist
{
    /// Internal vertex id, 0-based. DIMACS ids are 1-based and converted at the parse boundary.
    using Vertex = unsigned;

    using Edge = std::pair<Vertex, Vertex>;

    class ParseError : public std::runtime_error
    {
        public:
            ParseError(std::size_t line, const std::string & what);

            auto line() const -> std::size_t { return _line; }

        private:
            std::size_t _line;
    };

    /// Simple undirected graph with a dense adjacency matrix. Immutable once built.
    class Graph
    {
        public:
            /// Duplicate edges are collapsed. Throws std::invalid_argument on a self-loop or an
            /// out-of-range endpoint.
            Graph(std::size_t size, std::span<const Edge> edges);

            auto size() const -> std::size_t { return _size; }
            auto edge_count() const -> std::size_t { return _edge_count; }

            auto adjacent(Vertex a, Vertex b) const -> bool
            {
                return _adjacency[std::size_t{ a } * _size + b];
            }

            auto degree(Vertex v) const -> unsigned { return _degrees[v]; }

            /// Edges (u, v) with u < v, in ascending lexicographic order.
            auto edges() const -> std::vector<Edge>;

            friend auto operator== (const Graph &, const Graph &) -> bool = default;

        private:
            std::size_t _size;
            std::size_t _edge_count = 0;
            std::vector<std::uint8_t> _adjacency;
            std::vector<unsigned> _degrees;
    };

    /// Vertices sorted by non-increasing degree, ties broken by ascending id.
    using VertexOrder = std::vector<Vertex>;

    auto parse_dimacs(std::istream & input) -> Graph;
    auto read_dimacs_file(const std::string & path) -> Graph;

    /// Canonical writer: one `p edge n m` line followed by `e u v` lines with u < v ascending.
    /// An optional comment is emitted first as a `c` line.
    auto write_dimacs(std::ostream & output, const Graph & graph, const std::string & comment = "") -> void;

    /// G(n, p): pairs (u, v), u < v, are visited in lexicographic order and each draws one
    /// 64-bit word from std::mt19937_64(seed); the edge is present iff (word >> 11) * 2^-53 < p.
    auto generate_gnp(std::size_t size, double probability, std::uint64_t seed) -> Graph;

    auto degree_sort(const Graph & graph) -> VertexOrder;

    /// Throws std::out_of_range if a vertex is outside the graph.
    auto is_clique(const Graph & graph, std::span<const Vertex> vertices) -> bool;

    struct OracleResult
    {
        std::size_t size;
        std::vector<Vertex> witness;
    };

    inline constexpr std::size_t brute_force_max_size = 32;

    /// Exhaustive enumeration of cliques, pruned only by the trivial count bound
    /// |current| + |candidates| <= best. Independent of any colouring. Requires n <= 32.
    auto brute_force_omega(const Graph & graph) -> OracleResult;
}
