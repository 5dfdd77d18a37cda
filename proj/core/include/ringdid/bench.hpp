#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringdid/ring_signature.hpp"

namespace ringdid::bench {

struct OpStats {
    double ops_per_sec = 0;
    double mean_us = 0;
    double stddev_us = 0;
    std::uint64_t iterations = 0;
};

struct BenchRow {
    std::size_t ring_size = 0;
    OpStats creation;      // ring assembly: key decode + canonical ordering
    OpStats signing;
    OpStats verification;
    std::optional<OpStats> identifier;  // identifier generation, reported separately
};

struct BenchReport {
    SchemeKind scheme = SchemeKind::borromean;
    std::vector<BenchRow> rows;  // sizes strictly ascending
    double timer_resolution_us = 0;
    double loop_overhead_ns = 0;
    bool deterministic = false;
    unsigned threads = 1;
    std::string environment;
};

struct BenchOptions {
    std::size_t min_size = 2;
    std::size_t max_size = 10;
    /// Total measured time per (size, operation) cell, split across three
    /// sub-runs whose median ops/sec is reported.
    double seconds_per_cell = 3.0;
    SchemeKind scheme = SchemeKind::borromean;
    /// Seeded mode pins the iteration count per sub-run instead of running
    /// for a fixed duration, so repeated runs execute identical work.
    std::optional<std::uint64_t> seed;
    std::uint64_t iterations_per_subrun = 64;
    bool with_identifier = false;
    unsigned threads = 1;  // parallel mode; throughput cells only
};

/// Runs the full grid. Sizes must lie in [2, 64]; duration-mode cells need at
/// least one second. Timer resolution is measured up front and the run fails
/// if the clock cannot resolve a microsecond.
Result<BenchReport> run_bench(const BenchOptions& options);

/// `ring_size,creation_ops,signing_ops,verification_ops` plus an
/// identifier_ops column when that cell was measured.
std::string report_csv(const BenchReport& report);
std::string report_text(const BenchReport& report);
std::string report_json(const BenchReport& report);

}  // namespace ringdid::bench
