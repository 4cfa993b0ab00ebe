#include <mcdist/report.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

using namespace mcdist;

auto mcdist::build_report(std::span<const JobResultRecord> records,
        std::optional<std::int64_t> baseline_wall_ms) -> RunReport
{
    if (records.empty())
        throw ReportError("cannot build a report from no records");

    std::map<std::string, std::vector<const JobResultRecord *>> by_worker;
    for (auto & record : records)
        by_worker[record.worker].push_back(&record);

    RunReport report;

    for (auto & [worker, jobs] : by_worker) {
        std::sort(jobs.begin(), jobs.end(), [] (auto * a, auto * b) {
                return std::tie(a->started_unix_ms, a->finished_unix_ms) < std::tie(b->started_unix_ms, b->finished_unix_ms);
                });
        for (std::size_t i = 1 ; i < jobs.size() ; ++i)
            if (jobs[i]->started_unix_ms < jobs[i - 1]->finished_unix_ms)
                throw ReportError("worker '" + worker + "' ran jobs " + std::to_string(jobs[i - 1]->t) + " and "
                        + std::to_string(jobs[i]->t) + " at the same time");

        WorkerRow row{ worker, 0, 0, 0.0 };
        const JobResultRecord * longest = nullptr;
        for (auto * job : jobs) {
            row.total_nodes += job->nodes;
            row.total_wall_ms += job->wall_ms;
            if (! longest || job->wall_ms > longest->wall_ms || (job->wall_ms == longest->wall_ms && job->nodes > longest->nodes))
                longest = job;
        }
        row.longest_job_nodes = longest->nodes;
        report.per_worker.push_back(std::move(row));
    }
    std::stable_sort(report.per_worker.begin(), report.per_worker.end(),
            [] (const WorkerRow & a, const WorkerRow & b) { return a.total_wall_ms < b.total_wall_ms; });

    std::map<std::int64_t, long> deltas;
    for (auto & record : records) {
        ++deltas[record.started_unix_ms];
        --deltas[record.finished_unix_ms];
    }
    long busy = 0;
    for (auto [timestamp, delta] : deltas) {
        busy += delta;
        report.busy_steps.push_back({ timestamp, std::size_t(busy) });
    }

    auto earliest = std::min_element(records.begin(), records.end(),
            [] (auto & a, auto & b) { return a.started_unix_ms < b.started_unix_ms; });
    auto latest = std::max_element(records.begin(), records.end(),
            [] (auto & a, auto & b) { return a.finished_unix_ms < b.finished_unix_ms; });
    report.makespan_ms = latest->finished_unix_ms - earliest->started_unix_ms;
    report.clock_skew_caveat = earliest->worker != latest->worker;

    double longest_ms = 0.0;
    for (auto & record : records)
        longest_ms = std::max(longest_ms, record.wall_ms);
    double upper = std::max(longest_ms, 1.0);
    for (std::size_t i = 0 ; i < tail_grid_points ; ++i) {
        double threshold = i + 1 == tail_grid_points ? upper
            : std::exp(std::log(upper) * double(i) / double(tail_grid_points - 1));
        auto exceeding = std::count_if(records.begin(), records.end(),
                [&] (auto & r) { return r.wall_ms > threshold; });
        report.tail_contour.push_back({ threshold, std::size_t(exceeding) });
    }

    if (baseline_wall_ms && report.makespan_ms > 0)
        report.speedup = double(*baseline_wall_ms) / double(report.makespan_ms);

    return report;
}

namespace
{
    auto format_double(double value) -> std::string
    {
        char buffer[64];
        auto [end, error] = std::to_chars(buffer, buffer + sizeof(buffer), value);
        return std::string(buffer, end);
    }

    auto split_csv_rows(const std::string & text, const std::string & header, std::size_t columns)
        -> std::vector<std::vector<std::string>>
    {
        std::istringstream input(text);
        std::string line;
        if (! std::getline(input, line) || line != header)
            throw ReportError("expected CSV header '" + header + "'");

        std::vector<std::vector<std::string>> rows;
        while (std::getline(input, line)) {
            if (line.empty())
                continue;
            std::vector<std::string> fields;
            std::istringstream row(line);
            for (std::string field ; std::getline(row, field, ',') ; )
                fields.push_back(field);
            if (fields.size() != columns)
                throw ReportError("CSV row '" + line + "' does not have " + std::to_string(columns) + " fields");
            rows.push_back(std::move(fields));
        }
        return rows;
    }

    template <typename Number>
    auto parse_number(const std::string & text) -> Number
    {
        Number value{};
        auto [end, error] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (error != std::errc() || end != text.data() + text.size() || text.empty())
            throw ReportError("bad number in CSV: '" + text + "'");
        return value;
    }
}

auto mcdist::emit_busy_csv(std::span<const BusyStep> steps) -> std::string
{
    std::string out = "timestamp_ms,busy\n";
    for (auto & step : steps)
        out += std::to_string(step.timestamp_ms) + "," + std::to_string(step.busy) + "\n";
    return out;
}

auto mcdist::emit_workers_csv(std::span<const WorkerRow> rows) -> std::string
{
    std::string out = "worker,total_nodes,longest_job_nodes,total_wall_ms\n";
    for (auto & row : rows) {
        if (row.worker.find_first_of(",\n") != std::string::npos)
            throw ReportError("worker id '" + row.worker + "' cannot be written to CSV");
        out += row.worker + "," + std::to_string(row.total_nodes) + "," + std::to_string(row.longest_job_nodes)
            + "," + format_double(row.total_wall_ms) + "\n";
    }
    return out;
}

auto mcdist::emit_tail_csv(std::span<const TailPoint> points) -> std::string
{
    std::string out = "threshold_ms,jobs_exceeding\n";
    for (auto & point : points)
        out += format_double(point.threshold_ms) + "," + std::to_string(point.jobs_exceeding) + "\n";
    return out;
}

auto mcdist::parse_busy_csv(const std::string & text) -> std::vector<BusyStep>
{
    std::vector<BusyStep> result;
    for (auto & row : split_csv_rows(text, "timestamp_ms,busy", 2))
        result.push_back({ parse_number<std::int64_t>(row[0]), parse_number<std::size_t>(row[1]) });
    return result;
}

auto mcdist::parse_workers_csv(const std::string & text) -> std::vector<WorkerRow>
{
    std::vector<WorkerRow> result;
    for (auto & row : split_csv_rows(text, "worker,total_nodes,longest_job_nodes,total_wall_ms", 4))
        result.push_back({ row[0], parse_number<std::uint64_t>(row[1]), parse_number<std::uint64_t>(row[2]),
                parse_number<double>(row[3]) });
    return result;
}

auto mcdist::parse_tail_csv(const std::string & text) -> std::vector<TailPoint>
{
    std::vector<TailPoint> result;
    for (auto & row : split_csv_rows(text, "threshold_ms,jobs_exceeding", 2))
        result.push_back({ parse_number<double>(row[0]), parse_number<std::size_t>(row[1]) });
    return result;
}
