#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcdist
{
    class QueueError : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;
    };

    /// publish_result was called for a job that is no longer in running/.
    class JobNotRunning : public QueueError
    {
        public:
            using QueueError::QueueError;
    };

    struct QueueMeta
    {
        std::string graph;
        std::size_t size = 0;
        unsigned split_factor = 8;

        auto job_count() const -> std::uint64_t { return std::uint64_t{ split_factor } * size; }

        friend auto operator== (const QueueMeta &, const QueueMeta &) -> bool = default;
    };

    struct JobResultRecord
    {
        std::uint64_t t = 0;
        std::size_t omega = 0;
        std::vector<unsigned> clique;   // ascending, 1-based
        std::uint64_t nodes = 0;
        double wall_ms = 0.0;
        std::string worker;
        std::int64_t started_unix_ms = 0;
        std::int64_t finished_unix_ms = 0;

        friend auto operator== (const JobResultRecord &, const JobResultRecord &) -> bool = default;
    };

    /// key=value lines, one per field; clique as space-separated ids.
    auto serialise_record(const JobResultRecord & record) -> std::string;
    auto parse_record(const std::string & text) -> JobResultRecord;

    inline constexpr unsigned shard_count = 100;

    /// Two-digit shard name of a job id: t mod 100, zero-padded.
    auto shard_name(std::uint64_t t) -> std::string;

    using ShardOrder = std::array<unsigned, shard_count>;

    auto identity_shard_order() -> ShardOrder;
    auto shuffled_shard_order(std::uint64_t seed) -> ShardOrder;

    struct BestUpdate
    {
        bool wrote;
        std::size_t value;
    };

    struct Collection
    {
        bool complete = false;
        std::vector<std::uint64_t> missing;
        std::size_t omega = 0;
        std::vector<unsigned> clique;
        std::vector<JobResultRecord> records;           // ascending t
        std::vector<std::string> unparseable;           // file name: reason
    };

    /**
     * Job queue rooted at a shared directory:
     *
     *   meta, best, best.lock, best.history
     *   pending/00..99/<t>, pending/00..99.lock
     *   running/<t>
     *   results/<t>
     *
     * Coordination uses advisory flock() locks on the .lock files and same-filesystem
     * rename() for every move, so any number of processes may operate on one root.
     * best.history gets one line per successful write to best, in write order.
     */
    class WorkQueue
    {
        public:
            /// Root must be absent or empty. Creates meta.job_count() pending jobs and best = 0.
            static auto init(const std::filesystem::path & root, const QueueMeta & meta) -> WorkQueue;

            /// Opens an initialised queue; throws QueueError if meta is missing or malformed.
            explicit WorkQueue(std::filesystem::path root);

            auto root() const -> const std::filesystem::path & { return _root; }
            auto meta() const -> const QueueMeta & { return _meta; }

            /// Moves one pending job to running/ and refreshes its mtime, or returns nullopt
            /// if every shard was empty when visited.
            auto claim_job(const ShardOrder & order) -> std::optional<std::uint64_t>;

            auto read_best() const -> std::size_t;

            /// Shared-lock compare, then exclusive-lock re-compare and write. Strict >.
            auto update_best(std::size_t candidate) -> BestUpdate;

            /// Values ever written to best after initialisation, in order.
            auto best_history() const -> std::vector<std::size_t>;

            /// Writes the record into running/<t> and renames it to results/<t>.
            auto publish_result(const JobResultRecord & record) -> void;

            /// Moves running jobs not modified for more than grace_seconds back to pending.
            auto requeue_stale(std::int64_t grace_seconds) -> std::vector<std::uint64_t>;

            auto collect_results() const -> Collection;
            auto collect_results(std::uint64_t expected_count) const -> Collection;

            auto pending_jobs() const -> std::vector<std::uint64_t>;
            auto running_jobs() const -> std::vector<std::uint64_t>;
            auto finished_jobs() const -> std::vector<std::uint64_t>;

        private:
            std::filesystem::path _root;
            QueueMeta _meta;

            auto pending_dir(unsigned shard) const -> std::filesystem::path;
            auto shard_lock(unsigned shard) const -> std::filesystem::path;
            auto running_dir() const -> std::filesystem::path { return _root / "running"; }
            auto results_dir() const -> std::filesystem::path { return _root / "results"; }
    };

    auto parse_meta(const std::string & text) -> QueueMeta;
    auto serialise_meta(const QueueMeta & meta) -> std::string;
}
