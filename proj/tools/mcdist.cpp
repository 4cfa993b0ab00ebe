#include <mcdist/clique_core.hpp>
#include <mcdist/graph.hpp>
#include <mcdist/report.hpp>
#include <mcdist/work_queue.hpp>
#include <mcdist/worker.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mcdist;
namespace fs = std::filesystem;

namespace
{
    template <typename Container>
    auto join(const Container & values) -> std::string
    {
        std::ostringstream out;
        bool first = true;
        for (auto & v : values) {
            out << (first ? "" : " ") << v;
            first = false;
        }
        return out.str();
    }

    auto one_based(const std::vector<Vertex> & clique) -> std::vector<unsigned>
    {
        std::vector<unsigned> result;
        for (auto v : clique)
            result.push_back(v + 1);
        return result;
    }

    auto cmd_solve(const std::string & path) -> int
    {
        auto graph = read_dimacs_file(path);
        auto start = std::chrono::steady_clock::now();
        auto result = mc(graph);
        auto wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        std::cout << "omega=" << result.best_clique.size() << '\n'
            << "clique=" << join(one_based(result.best_clique)) << '\n'
            << "nodes=" << result.nodes << '\n'
            << "wall_ms=" << wall << std::endl;
        return 0;
    }

    auto cmd_oracle(const std::string & path) -> int
    {
        auto graph = read_dimacs_file(path);
        auto result = brute_force_omega(graph);
        std::cout << "omega=" << result.size << '\n'
            << "clique=" << join(one_based(result.witness)) << std::endl;
        return 0;
    }

    auto cmd_gen(std::size_t size, double probability, std::uint64_t seed, const std::string & out) -> int
    {
        auto graph = generate_gnp(size, probability, seed);
        std::ofstream output(out, std::ios::binary | std::ios::trunc);
        std::ostringstream comment;
        comment << "G(n,p) n=" << size << " p=" << probability << " seed=" << seed;
        write_dimacs(output, graph, comment.str());
        output.flush();
        if (! output)
            throw std::runtime_error("cannot write '" + out + "'");
        return 0;
    }

    auto cmd_init(const std::string & graph_path, const std::string & root, unsigned split_factor) -> int
    {
        auto graph = read_dimacs_file(graph_path);
        QueueMeta meta{ fs::path(graph_path).filename().string(), graph.size(), split_factor };
        auto queue = WorkQueue::init(root, meta);
        std::cout << "jobs=" << queue.meta().job_count() << std::endl;
        return 0;
    }

    auto cmd_work(WorkerConfig config, const std::string & reread) -> int
    {
        if (reread != "never") {
            double seconds = 0;
            try {
                std::size_t used = 0;
                seconds = std::stod(reread, &used);
                if (used != reread.size())
                    throw std::invalid_argument(reread);
            }
            catch (const std::logic_error &) {
                throw std::invalid_argument("--reread-best takes 'never' or a number of seconds, got '" + reread + "'");
            }
            if (! (seconds > 0))
                throw std::invalid_argument("--reread-best interval must be positive");
            config.reread_interval = std::chrono::milliseconds(std::max<long long>(1, std::llround(seconds * 1000)));
        }

        auto summary = worker_loop(config, std::cout);
        std::cout << "worker=" << config.worker_id << " jobs=" << summary.jobs << " nodes=" << summary.nodes
            << " wall_ms=" << summary.wall_ms << std::endl;
        return 0;
    }

    auto cmd_collect(const std::string & root) -> int
    {
        WorkQueue queue(root);
        auto collection = queue.collect_results();

        std::cout << "complete=" << (collection.complete ? "true" : "false") << '\n'
            << "missing_count=" << collection.missing.size() << '\n'
            << "missing=" << join(collection.missing) << '\n'
            << "omega=" << collection.omega << '\n'
            << "clique=" << join(collection.clique) << '\n';
        if (! collection.records.empty()) {
            auto report = build_report(collection.records);
            std::cout << "makespan_ms=" << report.makespan_ms << '\n';
        }
        for (auto & problem : collection.unparseable)
            std::cerr << "unparseable result " << problem << '\n';
        std::cout.flush();
        return 0;
    }

    auto cmd_requeue(const std::string & root, std::int64_t grace) -> int
    {
        WorkQueue queue(root);
        auto moved = queue.requeue_stale(grace);
        std::cout << "requeued_count=" << moved.size() << '\n'
            << "requeued=" << join(moved) << std::endl;
        return 0;
    }

    auto write_text(const fs::path & path, const std::string & text) -> void
    {
        std::ofstream output(path, std::ios::binary | std::ios::trunc);
        output << text;
        output.flush();
        if (! output)
            throw std::runtime_error("cannot write '" + path.string() + "'");
    }

    auto cmd_report(const std::string & root, const std::string & out, std::optional<std::int64_t> baseline) -> int
    {
        WorkQueue queue(root);
        auto collection = queue.collect_results();
        auto report = build_report(collection.records, baseline);

        fs::create_directories(out);
        write_text(fs::path(out) / "busy.csv", emit_busy_csv(report.busy_steps));
        write_text(fs::path(out) / "workers.csv", emit_workers_csv(report.per_worker));
        write_text(fs::path(out) / "tail.csv", emit_tail_csv(report.tail_contour));

        std::cout << "jobs=" << collection.records.size() << '\n'
            << "makespan_ms=" << report.makespan_ms << '\n';
        if (report.speedup)
            std::cout << "speedup=" << *report.speedup << '\n';
        if (report.clock_skew_caveat)
            std::cout << "note: first start and last finish were stamped by different workers; "
                "makespan is approximate under clock skew\n";
        std::cout.flush();
        return 0;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Exact maximum clique, sequential or as a farm of workers sharing a job queue directory" };
    app.require_subcommand(1);

    std::string graph_path, queue_root, out_path, worker_id, reread = "never";
    std::size_t size = 0;
    double probability = 0;
    std::uint64_t seed = 0;
    unsigned split_factor = default_split_factor;
    std::int64_t grace = 0, baseline = 0;

    auto solve = app.add_subcommand("solve", "Solve sequentially");
    solve->add_option("graph", graph_path, "DIMACS graph file")->required();

    auto oracle = app.add_subcommand("oracle", "Brute-force omega (n <= 32)");
    oracle->add_option("graph", graph_path, "DIMACS graph file")->required();

    auto gen = app.add_subcommand("gen", "Write a G(n,p) random graph");
    gen->add_option("--n", size)->required();
    gen->add_option("--p", probability)->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("--out", out_path)->required();

    auto init = app.add_subcommand("init", "Create a job queue for a graph");
    init->add_option("--graph", graph_path)->required();
    init->add_option("--queue", queue_root)->required();
    init->add_option("--split-factor", split_factor)->check(CLI::PositiveNumber);

    auto work = app.add_subcommand("work", "Run jobs from a queue until it drains");
    work->add_option("--graph", graph_path)->required();
    work->add_option("--queue", queue_root)->required();
    work->add_option("--id", worker_id)->required();
    work->add_option("--seed", seed);
    work->add_option("--reread-best", reread, "never, or an interval in seconds");

    auto collect = app.add_subcommand("collect", "Summarise results");
    collect->add_option("--queue", queue_root)->required();

    auto requeue = app.add_subcommand("requeue", "Return stale running jobs to pending");
    requeue->add_option("--queue", queue_root)->required();
    requeue->add_option("--grace-seconds", grace)->required()->check(CLI::PositiveNumber);

    auto report = app.add_subcommand("report", "Write busy/workers/tail CSVs for a finished run");
    report->add_option("--queue", queue_root)->required();
    report->add_option("--out", out_path)->required();
    auto baseline_option = report->add_option("--baseline-wall-ms", baseline);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve)
            return cmd_solve(graph_path);
        if (*oracle)
            return cmd_oracle(graph_path);
        if (*gen)
            return cmd_gen(size, probability, seed, out_path);
        if (*init)
            return cmd_init(graph_path, queue_root, split_factor);
        if (*work)
            return cmd_work(WorkerConfig{ worker_id, graph_path, queue_root, std::nullopt, seed }, reread);
        if (*collect)
            return cmd_collect(queue_root);
        if (*requeue)
            return cmd_requeue(queue_root, grace);
        if (*report)
            return cmd_report(queue_root, out_path,
                    *baseline_option ? std::optional<std::int64_t>(baseline) : std::nullopt);
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}
