#include <mcdist/worker.hpp>

#include <iostream>
#include <ostream>

using namespace mcdist;

namespace
{
    auto unix_ms_now() -> std::int64_t
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::system_clock::now().time_since_epoch()).count();
    }
}

auto WorkerConfig::validate() const -> void
{
    if (worker_id.empty())
        throw std::invalid_argument("worker id must not be empty");
    if (reread_interval && reread_interval->count() <= 0)
        throw std::invalid_argument("re-read interval must be positive");
}

auto mcdist::run_job(const Graph & graph, const VertexOrder & order, const JobSpec & spec,
        const std::string & worker_id, const IncumbentFeed & feed) -> JobResultRecord
{
    JobResultRecord record;
    record.t = spec.t;
    record.worker = worker_id;
    record.started_unix_ms = unix_ms_now();

    auto start = std::chrono::steady_clock::now();
    auto ctx = mc_dist(graph, order, spec, feed);
    auto finish = std::chrono::steady_clock::now();

    record.finished_unix_ms = std::max(unix_ms_now(), record.started_unix_ms);
    record.wall_ms = std::chrono::duration<double, std::milli>(finish - start).count();
    record.nodes = ctx.nodes;
    record.omega = ctx.best_clique.size();
    for (auto v : ctx.best_clique)
        record.clique.push_back(v + 1);
    return record;
}

auto mcdist::run_job(const Graph & graph, std::uint64_t t, std::size_t initial_bound,
        const std::string & worker_id, unsigned split_factor) -> JobResultRecord
{
    JobSpec spec{ .t = t, .size = graph.size(), .split_factor = split_factor, .initial_bound = initial_bound };
    return run_job(graph, degree_sort(graph), spec, worker_id);
}

auto mcdist::worker_loop(const WorkerConfig & config, std::ostream & log) -> WorkerSummary
{
    config.validate();
    auto graph = read_dimacs_file(config.graph_path);
    return worker_loop(config, graph, log);
}

auto mcdist::worker_loop(const WorkerConfig & config, const Graph & graph, std::ostream & log) -> WorkerSummary
{
    config.validate();
    WorkQueue queue(config.queue_root);
    if (queue.meta().size != graph.size())
        throw std::invalid_argument("queue was built for a graph with " + std::to_string(queue.meta().size)
                + " vertices, but '" + config.graph_path + "' has " + std::to_string(graph.size()));

    auto order = degree_sort(graph);
    auto shards = shuffled_shard_order(config.seed);

    WorkerSummary summary;
    while (auto t = queue.claim_job(shards)) {
        auto best_in = queue.read_best();

        IncumbentFeed feed;
        if (config.reread_interval) {
            feed = [&queue, interval = *config.reread_interval,
                    last = std::chrono::steady_clock::now(), cached = best_in] () mutable {
                auto now = std::chrono::steady_clock::now();
                if (now - last >= interval) {
                    cached = queue.read_best();
                    last = now;
                }
                return cached;
            };
        }

        JobSpec spec{ .t = *t, .size = graph.size(), .split_factor = queue.meta().split_factor, .initial_bound = best_in };
        auto record = run_job(graph, order, spec, config.worker_id, feed);

        try {
            queue.publish_result(record);
        }
        catch (const JobNotRunning & e) {
            // requeued from under us; whoever holds it now will publish
            std::cerr << config.worker_id << ": " << e.what() << std::endl;
        }

        if (! record.clique.empty())
            queue.update_best(record.omega);

        log << "job=" << record.t << " omega=" << record.omega << " nodes=" << record.nodes
            << " wall_ms=" << record.wall_ms << " best_in=" << best_in << std::endl;

        ++summary.jobs;
        summary.nodes += record.nodes;
        summary.wall_ms += record.wall_ms;
    }

    return summary;
}
