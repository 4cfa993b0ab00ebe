#pragma once

#include <mcdist/work_queue.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcdist
{
    class ReportError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    struct BusyStep
    {
        std::int64_t timestamp_ms;
        std::size_t busy;

        friend auto operator== (const BusyStep &, const BusyStep &) -> bool = default;
    };

    struct WorkerRow
    {
        std::string worker;
        std::uint64_t total_nodes;
        /// Nodes of the worker's longest-running job.
        std::uint64_t longest_job_nodes;
        double total_wall_ms;

        friend auto operator== (const WorkerRow &, const WorkerRow &) -> bool = default;
    };

    struct TailPoint
    {
        double threshold_ms;
        std::size_t jobs_exceeding;

        friend auto operator== (const TailPoint &, const TailPoint &) -> bool = default;
    };

    inline constexpr std::size_t tail_grid_points = 32;

    struct RunReport
    {
        std::vector<BusyStep> busy_steps;
        std::vector<WorkerRow> per_worker;      // increasing total_wall_ms
        std::vector<TailPoint> tail_contour;
        std::int64_t makespan_ms = 0;
        std::optional<double> speedup;
        /// Earliest start and latest finish were stamped by different workers' clocks.
        bool clock_skew_caveat = false;
    };

    /**
     * Busy steps apply +1 at each start and -1 at each finish, one row per distinct
     * timestamp holding the count after that timestamp's events. The tail contour counts
     * jobs whose wall_ms strictly exceeds each of 32 log-spaced thresholds from 1 ms to
     * the longest job. Throws ReportError on an empty trace or if one worker has two
     * overlapping jobs.
     */
    auto build_report(std::span<const JobResultRecord> records,
            std::optional<std::int64_t> baseline_wall_ms = std::nullopt) -> RunReport;

    auto emit_busy_csv(std::span<const BusyStep> steps) -> std::string;
    auto emit_workers_csv(std::span<const WorkerRow> rows) -> std::string;
    auto emit_tail_csv(std::span<const TailPoint> points) -> std::string;

    auto parse_busy_csv(const std::string & text) -> std::vector<BusyStep>;
    auto parse_workers_csv(const std::string & text) -> std::vector<WorkerRow>;
    auto parse_tail_csv(const std::string & text) -> std::vector<TailPoint>;
}
