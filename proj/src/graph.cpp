#include <mcdist/graph.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

using namespace mcdist;

ParseError::ParseError(std::size_t line, const std::string & what) :
    std::runtime_error("line " + std::to_string(line) + ": " + what),
    _line(line)
{
}

Graph::Graph(std::size_t size, std::span<const Edge> edges) :
    _size(size),
    _adjacency(size * size, 0),
    _degrees(size, 0)
{
    for (auto [a, b] : edges) {
        if (a >= size || b >= size)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b)
            throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        if (adjacent(a, b))
            continue;

        _adjacency[std::size_t{ a } * size + b] = 1;
        _adjacency[std::size_t{ b } * size + a] = 1;
        ++_degrees[a];
        ++_degrees[b];
        ++_edge_count;
    }
}

auto Graph::edges() const -> std::vector<Edge>
{
    std::vector<Edge> result;
    result.reserve(_edge_count);
    for (Vertex a = 0 ; a < _size ; ++a)
        for (Vertex b = a + 1 ; b < _size ; ++b)
            if (adjacent(a, b))
                result.emplace_back(a, b);
    return result;
}

namespace
{
    auto split_tokens(const std::string & line) -> std::vector<std::string>
    {
        std::vector<std::string> tokens;
        std::istringstream stream(line);
        for (std::string token ; stream >> token ; )
            tokens.push_back(std::move(token));
        return tokens;
    }

    auto parse_unsigned(const std::string & token, std::size_t line) -> unsigned long long
    {
        unsigned long long value = 0;
        auto [end, error] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (error != std::errc() || end != token.data() + token.size())
            throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
        return value;
    }
}

auto mcdist::parse_dimacs(std::istream & input) -> Graph
{
    std::size_t size = 0;
    bool seen_problem = false;
    std::vector<Edge> edges;

    std::string line;
    for (std::size_t line_number = 1 ; std::getline(input, line) ; ++line_number) {
        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens[0] == "c")
            continue;

        if (tokens[0] == "p") {
            if (seen_problem)
                throw ParseError(line_number, "duplicate 'p' line");
            // BHOSLIB instances use "p col"; both mean an undirected simple graph
            if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col"))
                throw ParseError(line_number, "malformed 'p' line, expected 'p edge <n> <m>'");
            size = parse_unsigned(tokens[2], line_number);
            parse_unsigned(tokens[3], line_number);
            if (size == 0)
                throw ParseError(line_number, "graph must have at least one vertex");
            seen_problem = true;
        }
        else if (tokens[0] == "e") {
            if (! seen_problem)
                throw ParseError(line_number, "'e' line before 'p' line");
            if (tokens.size() != 3)
                throw ParseError(line_number, "malformed 'e' line, expected 'e <u> <v>'");
            auto a = parse_unsigned(tokens[1], line_number);
            auto b = parse_unsigned(tokens[2], line_number);
            for (auto v : { a, b })
                if (v < 1 || v > size)
                    throw ParseError(line_number, "vertex " + std::to_string(v) + " out of range 1.." + std::to_string(size));
            if (a == b)
                throw ParseError(line_number, "self-loop on vertex " + std::to_string(a));
            edges.emplace_back(Vertex(a - 1), Vertex(b - 1));
        }
        else
            throw ParseError(line_number, "unrecognised line type '" + tokens[0] + "'");
    }

    if (! seen_problem)
        throw ParseError(0, "missing 'p' line");

    return Graph(size, edges);
}

auto mcdist::read_dimacs_file(const std::string & path) -> Graph
{
    std::ifstream input(path);
    if (! input)
        throw std::runtime_error("cannot open graph file '" + path + "'");
    try {
        return parse_dimacs(input);
    }
    catch (const ParseError & e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

auto mcdist::write_dimacs(std::ostream & output, const Graph & graph, const std::string & comment) -> void
{
    if (! comment.empty())
        output << "c " << comment << '\n';
    output << "p edge " << graph.size() << ' ' << graph.edge_count() << '\n';
    for (auto [a, b] : graph.edges())
        output << "e " << a + 1 << ' ' << b + 1 << '\n';
}

auto mcdist::generate_gnp(std::size_t size, double probability, std::uint64_t seed) -> Graph
{
    if (size == 0)
        throw std::invalid_argument("G(n,p) needs n >= 1");
    if (! (probability >= 0.0 && probability <= 1.0))
        throw std::invalid_argument("G(n,p) needs 0 <= p <= 1");

    std::mt19937_64 random(seed);
    std::vector<Edge> edges;
    for (Vertex a = 0 ; a < size ; ++a)
        for (Vertex b = a + 1 ; b < size ; ++b) {
            double draw = double(random() >> 11) * 0x1.0p-53;
            if (draw < probability)
                edges.emplace_back(a, b);
        }

    return Graph(size, edges);
}

auto mcdist::degree_sort(const Graph & graph) -> VertexOrder
{
    VertexOrder order(graph.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&] (Vertex a, Vertex b) {
            return graph.degree(a) > graph.degree(b);
            });
    return order;
}

auto mcdist::is_clique(const Graph & graph, std::span<const Vertex> vertices) -> bool
{
    for (auto v : vertices)
        if (v >= graph.size())
            throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");

    for (std::size_t i = 0 ; i < vertices.size() ; ++i)
        for (std::size_t j = i + 1 ; j < vertices.size() ; ++j)
            if (! graph.adjacent(vertices[i], vertices[j]))
                return false;
    return true;
}

namespace
{
    struct Enumerator
    {
        std::vector<std::uint32_t> neighbours;
        std::uint32_t best_mask = 0;
        int best_size = 0;

        auto extend(std::uint32_t current, std::uint32_t candidates) -> void
        {
            int current_size = std::popcount(current);
            if (current_size > best_size) {
                best_size = current_size;
                best_mask = current;
            }

            if (current_size + std::popcount(candidates) <= best_size)
                return;

            while (candidates) {
                int v = std::countr_zero(candidates);
                candidates &= candidates - 1;
                extend(current | (std::uint32_t{ 1 } << v), candidates & neighbours[v]);
                if (current_size + std::popcount(candidates) <= best_size)
                    return;
            }
        }
    };
}

auto mcdist::brute_force_omega(const Graph & graph) -> OracleResult
{
    if (graph.size() > brute_force_max_size)
        throw std::invalid_argument("brute force oracle limited to " + std::to_string(brute_force_max_size)
                + " vertices, graph has " + std::to_string(graph.size()));

    Enumerator enumerator;
    enumerator.neighbours.assign(graph.size(), 0);
    for (auto [a, b] : graph.edges()) {
        enumerator.neighbours[a] |= std::uint32_t{ 1 } << b;
        enumerator.neighbours[b] |= std::uint32_t{ 1 } << a;
    }

    std::uint32_t all = graph.size() == 32 ? ~std::uint32_t{ 0 } : (std::uint32_t{ 1 } << graph.size()) - 1;
    enumerator.extend(0, all);

    OracleResult result{ std::size_t(enumerator.best_size), {} };
    for (Vertex v = 0 ; v < graph.size() ; ++v)
        if (enumerator.best_mask & (std::uint32_t{ 1 } << v))
            result.witness.push_back(v);
    return result;
}
