#include <mcdist/work_queue.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

using namespace mcdist;
namespace fs = std::filesystem;

namespace
{
    auto system_error_text(const std::string & what, const fs::path & path) -> std::string
    {
        return what + " '" + path.string() + "': " + std::strerror(errno);
    }

    /// flock() held for the lifetime of the object on a dedicated lock file.
    class FileLock
    {
        public:
            enum class Mode { shared, exclusive };

            FileLock(const fs::path & path, Mode mode)
            {
                _fd = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
                if (_fd < 0)
                    throw QueueError(system_error_text("cannot open lock file", path));

                int operation = mode == Mode::shared ? LOCK_SH : LOCK_EX;
                while (::flock(_fd, operation) != 0) {
                    if (errno == EINTR)
                        continue;
                    auto message = system_error_text("cannot lock", path);
                    ::close(_fd);
                    throw QueueError(message);
                }
            }

            FileLock(const FileLock &) = delete;
            FileLock & operator= (const FileLock &) = delete;

            ~FileLock()
            {
                ::flock(_fd, LOCK_UN);
                ::close(_fd);
            }

        private:
            int _fd = -1;
    };

    auto read_file(const fs::path & path) -> std::string
    {
        std::ifstream input(path, std::ios::binary);
        if (! input)
            throw QueueError("cannot read '" + path.string() + "'");
        std::ostringstream content;
        content << input.rdbuf();
        return content.str();
    }

    auto write_file(const fs::path & path, const std::string & content) -> void
    {
        std::ofstream output(path, std::ios::binary | std::ios::trunc);
        output << content;
        output.flush();
        if (! output)
            throw QueueError("cannot write '" + path.string() + "'");
    }

    /// Writes into an existing file only; ENOENT becomes JobNotRunning.
    auto overwrite_existing(const fs::path & path, const std::string & content) -> void
    {
        int fd = ::open(path.c_str(), O_WRONLY | O_TRUNC | O_CLOEXEC);
        if (fd < 0) {
            if (errno == ENOENT)
                throw JobNotRunning("job file '" + path.string() + "' is not in running/");
            throw QueueError(system_error_text("cannot open", path));
        }
        std::size_t written = 0;
        while (written < content.size()) {
            auto n = ::write(fd, content.data() + written, content.size() - written);
            if (n < 0) {
                if (errno == EINTR)
                    continue;
                auto message = system_error_text("cannot write", path);
                ::close(fd);
                throw QueueError(message);
            }
            written += std::size_t(n);
        }
        ::close(fd);
    }

    template <typename Integer>
    auto parse_integer(std::string_view text, Integer & value) -> bool
    {
        auto [end, error] = std::from_chars(text.data(), text.data() + text.size(), value);
        return error == std::errc() && end == text.data() + text.size() && ! text.empty();
    }

    auto parse_job_name(const fs::path & path) -> std::optional<std::uint64_t>
    {
        std::uint64_t t = 0;
        auto name = path.filename().string();
        // canonical decimal only, so "007" or "5.tmp" are never taken for jobs
        if (! parse_integer(std::string_view(name), t) || std::to_string(t) != name)
            return std::nullopt;
        return t;
    }

    auto list_jobs(const fs::path & dir) -> std::vector<std::uint64_t>
    {
        std::vector<std::uint64_t> result;
        std::error_code ec;
        for (auto & entry : fs::directory_iterator(dir, ec))
            if (auto t = parse_job_name(entry.path()))
                result.push_back(*t);
        if (ec)
            throw QueueError("cannot list '" + dir.string() + "': " + ec.message());
        std::sort(result.begin(), result.end());
        return result;
    }

    auto parse_key_values(const std::string & text, const std::string & what) -> std::map<std::string, std::string>
    {
        std::map<std::string, std::string> result;
        std::istringstream input(text);
        for (std::string line ; std::getline(input, line) ; ) {
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw QueueError(what + ": line without '=': '" + line + "'");
            auto key = line.substr(0, eq);
            if (! result.emplace(key, line.substr(eq + 1)).second)
                throw QueueError(what + ": duplicate key '" + key + "'");
        }
        return result;
    }

    template <typename Integer>
    auto require_integer(const std::map<std::string, std::string> & values, const std::string & key,
            const std::string & what) -> Integer
    {
        auto it = values.find(key);
        if (it == values.end())
            throw QueueError(what + ": missing key '" + key + "'");
        Integer result{};
        if (! parse_integer(std::string_view(it->second), result))
            throw QueueError(what + ": bad integer for '" + key + "': '" + it->second + "'");
        return result;
    }

    auto format_double(double value) -> std::string
    {
        char buffer[64];
        auto [end, error] = std::to_chars(buffer, buffer + sizeof(buffer), value);
        return std::string(buffer, end);
    }

    auto parse_best_value(const std::string & text, const fs::path & path) -> std::size_t
    {
        std::string_view view(text);
        if (! view.empty() && view.back() == '\n')
            view.remove_suffix(1);
        std::size_t value = 0;
        if (! parse_integer(view, value))
            throw QueueError("corrupt best file '" + path.string() + "': '" + text + "'");
        return value;
    }
}

auto mcdist::shard_name(std::uint64_t t) -> std::string
{
    auto shard = t % shard_count;
    return std::string{ char('0' + shard / 10), char('0' + shard % 10) };
}

auto mcdist::identity_shard_order() -> ShardOrder
{
    ShardOrder order;
    std::iota(order.begin(), order.end(), 0u);
    return order;
}

auto mcdist::shuffled_shard_order(std::uint64_t seed) -> ShardOrder
{
    auto order = identity_shard_order();
    std::mt19937_64 random(seed);
    std::shuffle(order.begin(), order.end(), random);
    return order;
}

auto mcdist::serialise_record(const JobResultRecord & record) -> std::string
{
    std::ostringstream out;
    out << "t=" << record.t << '\n'
        << "omega=" << record.omega << '\n'
        << "clique=";
    for (std::size_t i = 0 ; i < record.clique.size() ; ++i)
        out << (i ? " " : "") << record.clique[i];
    out << '\n'
        << "nodes=" << record.nodes << '\n'
        << "wall_ms=" << format_double(record.wall_ms) << '\n'
        << "worker=" << record.worker << '\n'
        << "started_unix_ms=" << record.started_unix_ms << '\n'
        << "finished_unix_ms=" << record.finished_unix_ms << '\n';
    return out.str();
}

auto mcdist::parse_record(const std::string & text) -> JobResultRecord
{
    static const std::set<std::string> keys{ "t", "omega", "clique", "nodes", "wall_ms", "worker",
        "started_unix_ms", "finished_unix_ms" };
    const std::string what = "result record";

    auto values = parse_key_values(text, what);
    for (auto & [key, value] : values)
        if (! keys.contains(key))
            throw QueueError(what + ": unknown key '" + key + "'");
    for (auto & key : keys)
        if (! values.contains(key))
            throw QueueError(what + ": missing key '" + key + "'");

    JobResultRecord record;
    record.t = require_integer<std::uint64_t>(values, "t", what);
    record.omega = require_integer<std::size_t>(values, "omega", what);
    record.nodes = require_integer<std::uint64_t>(values, "nodes", what);
    record.started_unix_ms = require_integer<std::int64_t>(values, "started_unix_ms", what);
    record.finished_unix_ms = require_integer<std::int64_t>(values, "finished_unix_ms", what);
    record.worker = values["worker"];

    auto & wall = values["wall_ms"];
    auto [end, error] = std::from_chars(wall.data(), wall.data() + wall.size(), record.wall_ms);
    if (error != std::errc() || end != wall.data() + wall.size() || record.wall_ms < 0)
        throw QueueError(what + ": bad wall_ms '" + wall + "'");

    std::istringstream clique(values["clique"]);
    for (std::string token ; clique >> token ; ) {
        unsigned v = 0;
        if (! parse_integer(std::string_view(token), v) || v == 0)
            throw QueueError(what + ": bad clique vertex '" + token + "'");
        if (! record.clique.empty() && v <= record.clique.back())
            throw QueueError(what + ": clique not strictly ascending");
        record.clique.push_back(v);
    }

    if (! record.clique.empty() && record.omega != record.clique.size())
        throw QueueError(what + ": omega does not match clique size");
    if (record.finished_unix_ms < record.started_unix_ms)
        throw QueueError(what + ": finished before started");
    if (record.nodes < 1)
        throw QueueError(what + ": node count must be at least 1");

    return record;
}

auto mcdist::serialise_meta(const QueueMeta & meta) -> std::string
{
    return "graph=" + meta.graph + "\nn=" + std::to_string(meta.size) + "\nf=" + std::to_string(meta.split_factor) + "\n";
}

auto mcdist::parse_meta(const std::string & text) -> QueueMeta
{
    const std::string what = "queue meta";
    auto values = parse_key_values(text, what);
    if (! values.contains("graph"))
        throw QueueError(what + ": missing key 'graph'");

    QueueMeta meta;
    meta.graph = values["graph"];
    meta.size = require_integer<std::size_t>(values, "n", what);
    meta.split_factor = require_integer<unsigned>(values, "f", what);
    if (meta.size == 0 || meta.split_factor == 0)
        throw QueueError(what + ": n and f must be positive");
    return meta;
}

auto WorkQueue::init(const fs::path & root, const QueueMeta & meta) -> WorkQueue
{
    if (meta.size == 0 || meta.split_factor == 0)
        throw QueueError("queue needs n >= 1 and f >= 1");

    std::error_code ec;
    if (fs::exists(root, ec) && ! fs::is_empty(root, ec))
        throw QueueError("queue root '" + root.string() + "' exists and is not empty");

    fs::create_directories(root / "running");
    fs::create_directories(root / "results");
    for (unsigned shard = 0 ; shard < shard_count ; ++shard) {
        fs::create_directories(root / "pending" / shard_name(shard));
        write_file(root / "pending" / (shard_name(shard) + ".lock"), "");
    }

    for (std::uint64_t t = 0 ; t < meta.job_count() ; ++t)
        write_file(root / "pending" / shard_name(t) / std::to_string(t), "");

    write_file(root / "best.lock", "");
    write_file(root / "best", "0\n");
    write_file(root / "best.history", "");
    write_file(root / "meta", serialise_meta(meta));

    return WorkQueue(root);
}

WorkQueue::WorkQueue(fs::path root) :
    _root(std::move(root))
{
    if (! fs::exists(_root / "meta"))
        throw QueueError("'" + _root.string() + "' is not an initialised queue (no meta file)");
    _meta = parse_meta(read_file(_root / "meta"));
}

auto WorkQueue::pending_dir(unsigned shard) const -> fs::path
{
    return _root / "pending" / shard_name(shard);
}

auto WorkQueue::shard_lock(unsigned shard) const -> fs::path
{
    return _root / "pending" / (shard_name(shard) + ".lock");
}

auto WorkQueue::claim_job(const ShardOrder & order) -> std::optional<std::uint64_t>
{
    for (auto shard : order) {
        auto dir = pending_dir(shard);
        std::error_code ec;
        if (fs::is_empty(dir, ec) && ! ec)
            continue;

        FileLock lock(shard_lock(shard), FileLock::Mode::exclusive);
        for (auto t : list_jobs(dir)) {
            auto target = running_dir() / std::to_string(t);
            fs::rename(dir / std::to_string(t), target, ec);
            if (ec == std::errc::no_such_file_or_directory)
                continue;
            if (ec)
                throw QueueError("cannot claim job " + std::to_string(t) + ": " + ec.message());

            // rename keeps the old mtime; stale detection measures time since the claim
            fs::last_write_time(target, fs::file_time_type::clock::now(), ec);
            return t;
        }
    }
    return std::nullopt;
}

auto WorkQueue::read_best() const -> std::size_t
{
    FileLock lock(_root / "best.lock", FileLock::Mode::shared);
    return parse_best_value(read_file(_root / "best"), _root / "best");
}

auto WorkQueue::update_best(std::size_t candidate) -> BestUpdate
{
    {
        auto current = read_best();
        if (candidate <= current)
            return { false, current };
    }

    FileLock lock(_root / "best.lock", FileLock::Mode::exclusive);
    auto current = parse_best_value(read_file(_root / "best"), _root / "best");
    if (candidate <= current)
        return { false, current };

    auto temporary = _root / "best.tmp";
    write_file(temporary, std::to_string(candidate) + "\n");
    std::error_code ec;
    fs::rename(temporary, _root / "best", ec);
    if (ec)
        throw QueueError("cannot replace best file: " + ec.message());

    std::ofstream history(_root / "best.history", std::ios::app);
    history << candidate << '\n';
    history.flush();
    if (! history)
        throw QueueError("cannot append to best.history");

    return { true, candidate };
}

auto WorkQueue::best_history() const -> std::vector<std::size_t>
{
    FileLock lock(_root / "best.lock", FileLock::Mode::shared);
    std::vector<std::size_t> result;
    std::istringstream input(read_file(_root / "best.history"));
    for (std::string line ; std::getline(input, line) ; )
        result.push_back(parse_best_value(line, _root / "best.history"));
    return result;
}

auto WorkQueue::publish_result(const JobResultRecord & record) -> void
{
    auto source = running_dir() / std::to_string(record.t);
    overwrite_existing(source, serialise_record(record));

    std::error_code ec;
    fs::rename(source, results_dir() / std::to_string(record.t), ec);
    if (ec == std::errc::no_such_file_or_directory)
        throw JobNotRunning("job " + std::to_string(record.t) + " left running/ while being published");
    if (ec)
        throw QueueError("cannot publish job " + std::to_string(record.t) + ": " + ec.message());
}

auto WorkQueue::requeue_stale(std::int64_t grace_seconds) -> std::vector<std::uint64_t>
{
    if (grace_seconds <= 0)
        throw QueueError("grace period must be positive");

    auto cutoff = fs::file_time_type::clock::now() - std::chrono::seconds(grace_seconds);
    std::vector<std::uint64_t> moved;
    for (auto t : running_jobs()) {
        auto path = running_dir() / std::to_string(t);
        std::error_code ec;
        auto modified = fs::last_write_time(path, ec);
        if (ec || modified >= cutoff)
            continue;

        unsigned shard = unsigned(t % shard_count);
        FileLock lock(shard_lock(shard), FileLock::Mode::exclusive);
        fs::rename(path, pending_dir(shard) / std::to_string(t), ec);
        if (! ec)
            moved.push_back(t);
    }
    return moved;
}

auto WorkQueue::collect_results() const -> Collection
{
    return collect_results(_meta.job_count());
}

auto WorkQueue::collect_results(std::uint64_t expected_count) const -> Collection
{
    Collection collection;
    std::set<std::uint64_t> present;
    for (auto t : finished_jobs()) {
        auto path = results_dir() / std::to_string(t);
        try {
            auto record = parse_record(read_file(path));
            if (record.t != t)
                throw QueueError("record names job " + std::to_string(record.t));
            present.insert(t);
            collection.records.push_back(std::move(record));
        }
        catch (const QueueError & e) {
            collection.unparseable.push_back(path.filename().string() + ": " + e.what());
        }
    }

    for (std::uint64_t t = 0 ; t < expected_count ; ++t)
        if (! present.contains(t))
            collection.missing.push_back(t);
    collection.complete = collection.missing.empty();

    const JobResultRecord * best = nullptr;
    for (auto & record : collection.records) {
        if (record.clique.empty())
            continue;
        if (! best || record.omega > best->omega)
            best = &record;
    }
    if (best) {
        collection.omega = best->omega;
        collection.clique = best->clique;
    }

    return collection;
}

auto WorkQueue::pending_jobs() const -> std::vector<std::uint64_t>
{
    std::vector<std::uint64_t> result;
    for (unsigned shard = 0 ; shard < shard_count ; ++shard) {
        auto jobs = list_jobs(pending_dir(shard));
        result.insert(result.end(), jobs.begin(), jobs.end());
    }
    std::sort(result.begin(), result.end());
    return result;
}

auto WorkQueue::running_jobs() const -> std::vector<std::uint64_t>
{
    return list_jobs(running_dir());
}

auto WorkQueue::finished_jobs() const -> std::vector<std::uint64_t>
{
    return list_jobs(results_dir());
}
