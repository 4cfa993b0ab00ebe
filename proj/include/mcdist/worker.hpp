#pragma once

#include <mcdist/dist_kernel.hpp>
#include <mcdist/graph.hpp>
#include <mcdist/work_queue.hpp>

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mcdist
{
    struct WorkerConfig
    {
        std::string worker_id;
        std::string graph_path;
        std::string queue_root;
        /// Unset: best is read once per job, at its start. Set: also re-read at most this
        /// often during a job, between depth-1 siblings.
        std::optional<std::chrono::milliseconds> reread_interval;
        std::uint64_t seed = 0;

        auto validate() const -> void;
    };

    struct WorkerSummary
    {
        std::uint64_t jobs = 0;
        std::uint64_t nodes = 0;
        double wall_ms = 0.0;
    };

    /// Runs job t with initial bound c. omega is 0 and clique empty if nothing beat c.
    auto run_job(const Graph & graph, const VertexOrder & order, const JobSpec & spec,
            const std::string & worker_id, const IncumbentFeed & feed = nullptr) -> JobResultRecord;
    auto run_job(const Graph & graph, std::uint64_t t, std::size_t initial_bound,
            const std::string & worker_id, unsigned split_factor = default_split_factor) -> JobResultRecord;

    /// Claims and runs jobs until a full pass over the shards finds nothing. Writes one
    /// `job=<t> omega=<k> nodes=<n> wall_ms=<ms> best_in=<c>` line per job to log.
    auto worker_loop(const WorkerConfig & config, std::ostream & log) -> WorkerSummary;
    auto worker_loop(const WorkerConfig & config, const Graph & graph, std::ostream & log) -> WorkerSummary;
}
