#include <chrono>
#include <ostream>
#include <sstream>

#include "overlapfree/pipeline.hpp"
#include "overlapfree/synthetic.hpp"
#include "overlapfree/transcriptor.hpp"

namespace overlapfree {

namespace {

constexpr std::size_t kSweepPoints = 10000;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

std::size_t transcribed_count(std::span<const DataPoint> points, const LayoutParams& params) {
    return transcribe(points, params).nodes.size();
}

std::vector<BenchRow> run_bench(const std::string& spec, std::uint64_t seed, std::ostream* log) {
    bool do_time = false, do_k = false, do_size = false, do_rate = false;
    std::vector<std::size_t> sizes = {10000, 20000, 40000, 80000, 160000, 320000, 640000, 1000000};
    for (const auto& item : split(spec, ',')) {
        auto parts = split(item, ':');
        const std::string name = parts.empty() ? "" : parts[0];
        if (name == "all") {
            do_time = do_k = do_size = do_rate = true;
        } else if (name == "time") {
            do_time = true;
            if (parts.size() > 1) {
                sizes.clear();
                for (std::size_t i = 1; i < parts.size(); ++i) sizes.push_back(std::stoull(parts[i]));
            }
        } else if (name == "k") {
            do_k = true;
        } else if (name == "size") {
            do_size = true;
        } else if (name == "rate") {
            do_rate = true;
        } else {
            throw ParameterError("unknown bench table '" + item + "'");
        }
    }

    std::vector<BenchRow> rows;
    if (do_time) {
        for (std::size_t n : sizes) {
            const auto nodes = unit_disk_nodes(n, seed);
            const auto t0 = std::chrono::steady_clock::now();
            const auto placed = pack_nodes(nodes, {});
            const auto t1 = std::chrono::steady_clock::now();
            const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            rows.push_back({"time", static_cast<double>(n), placed.size(), ms});
            if (log) *log << "time N'=" << n << " " << ms << " ms\n";
        }
    }
    const auto data = mixed_dataset(kSweepPoints, seed);
    if (do_k) {
        for (int k = 1; k <= 20; ++k) {
            LayoutParams p;
            p.k = k;
            rows.push_back({"k", static_cast<double>(k), transcribed_count(data, p), 0.0});
        }
        if (log) *log << "k sweep done\n";
    }
    if (do_size) {
        for (int size = 1; size <= 10; ++size) {
            LayoutParams p;
            p.size = size;
            rows.push_back({"size", static_cast<double>(size), transcribed_count(data, p), 0.0});
        }
        if (log) *log << "size sweep done\n";
    }
    if (do_rate) {
        for (int step = 1; step <= 10; ++step) {
            const double rate = step / 10.0;
            const auto sample = subsample(data, rate, seed + static_cast<std::uint64_t>(step));
            rows.push_back({"rate", rate, transcribed_count(sample, {}), 0.0});
        }
        if (log) *log << "rate sweep done\n";
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string s = "table,param,n_prime,time_ms\n";
    for (const auto& r : rows)
        s += r.table + "," + format_double(r.param) + "," + std::to_string(r.n_prime) + "," + format_double(r.time_ms) + "\n";
    return s;
}

}  // namespace overlapfree
