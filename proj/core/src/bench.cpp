#include "ringdid/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ringdid/did.hpp"

namespace ringdid::bench {

namespace {

using Clock = std::chrono::steady_clock;

double measure_timer_resolution_us() {
    double best = 1e9;
    for (int trial = 0; trial < 64; ++trial) {
        auto t0 = Clock::now();
        auto t1 = t0;
        while (t1 == t0) t1 = Clock::now();
        double delta_us =
            std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(t1 - t0).count();
        best = std::min(best, delta_us);
    }
    return best;
}

double measure_loop_overhead_ns() {
    // per-measurement cost of the timing harness itself
    constexpr int kSamples = 4096;
    std::vector<double> samples;
    samples.reserve(kSamples);
    for (int i = 0; i < kSamples; ++i) {
        auto t0 = Clock::now();
        auto t1 = Clock::now();
        samples.push_back(
            std::chrono::duration_cast<std::chrono::duration<double, std::nano>>(t1 - t0).count());
    }
    std::nth_element(samples.begin(), samples.begin() + kSamples / 2, samples.end());
    return samples[kSamples / 2];
}

struct SubRun {
    std::uint64_t count = 0;
    double elapsed_sec = 0;
    double sum_us = 0;
    double sumsq_us = 0;
};

/// Runs `op` either for a wall-clock budget or a pinned iteration count,
/// timing each call individually with the harness overhead subtracted.
SubRun run_subrun(const std::function<void()>& op, double budget_sec,
                  std::optional<std::uint64_t> pinned_iterations, double overhead_ns) {
    SubRun result;
    auto start = Clock::now();
    for (;;) {
        auto t0 = Clock::now();
        op();
        auto t1 = Clock::now();
        double dt_us =
            std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(t1 - t0).count() -
            overhead_ns / 1000.0;
        if (dt_us < 0) dt_us = 0;
        result.count += 1;
        result.sum_us += dt_us;
        result.sumsq_us += dt_us * dt_us;
        if (pinned_iterations) {
            if (result.count >= *pinned_iterations) break;
        } else if (std::chrono::duration_cast<std::chrono::duration<double>>(t1 - start).count() >=
                   budget_sec) {
            break;
        }
    }
    result.elapsed_sec =
        std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start).count();
    return result;
}

/// Three sub-runs; the reported throughput is the median, latencies are
/// pooled. `make_op` builds one op per worker so parallel workers never share
/// mutable state.
OpStats run_cell(const std::function<std::function<void()>(unsigned)>& make_op, double cell_sec,
                 std::optional<std::uint64_t> pinned_iterations, double overhead_ns,
                 unsigned threads) {
    const double subrun_sec = cell_sec / 3.0;

    // warm-up, untimed
    {
        auto op = make_op(0);
        for (int i = 0; i < 4; ++i) op();
    }

    std::vector<double> throughput;
    double sum_us = 0, sumsq_us = 0;
    std::uint64_t total = 0;

    for (int subrun = 0; subrun < 3; ++subrun) {
        std::vector<SubRun> results(threads);
        if (threads == 1) {
            results[0] = run_subrun(make_op(0), subrun_sec, pinned_iterations, overhead_ns);
        } else {
            std::vector<std::thread> workers;
            for (unsigned t = 0; t < threads; ++t)
                workers.emplace_back([&, t] {
                    results[t] = run_subrun(make_op(t), subrun_sec, pinned_iterations, overhead_ns);
                });
            for (auto& worker : workers) worker.join();
        }

        std::uint64_t count = 0;
        double elapsed = 0;
        for (const SubRun& r : results) {
            count += r.count;
            elapsed = std::max(elapsed, r.elapsed_sec);
            sum_us += r.sum_us;
            sumsq_us += r.sumsq_us;
            total += r.count;
        }
        throughput.push_back(elapsed > 0 ? static_cast<double>(count) / elapsed : 0);
    }

    std::sort(throughput.begin(), throughput.end());

    OpStats stats;
    stats.ops_per_sec = throughput[1];
    stats.iterations = total;
    if (total > 0) {
        stats.mean_us = sum_us / static_cast<double>(total);
        double variance = sumsq_us / static_cast<double>(total) - stats.mean_us * stats.mean_us;
        stats.stddev_us = variance > 0 ? std::sqrt(variance) : 0;
    }
    return stats;
}

struct CellFixture {
    std::vector<KeyPair> keypairs;
    std::vector<Bytes> shuffled_encodings;
    Ring ring;
    Bytes message;
    Bytes random32;
};

Result<CellFixture> build_fixture(std::size_t n, Entropy& entropy) {
    std::vector<KeyPair> keypairs;
    std::vector<GroupElement> keys;
    for (std::size_t i = 0; i < n; ++i) {
        auto kp = gen_keypair(entropy);
        if (!kp.ok()) return std::move(kp).take_error();
        keys.push_back(kp.value().pk);
        keypairs.push_back(kp.value());
    }
    auto ring = Ring::create(keys);
    if (!ring.ok()) return std::move(ring).take_error();

    // reversed ring order, so creation always has sorting work to do
    std::vector<Bytes> shuffled;
    for (auto it = ring.value().keys().rbegin(); it != ring.value().keys().rend(); ++it)
        shuffled.emplace_back(it->bytes().begin(), it->bytes().end());

    Bytes message(32);
    entropy.fill(message);
    Bytes random32(32);
    entropy.fill(random32);
    return CellFixture{std::move(keypairs), std::move(shuffled), std::move(ring).value(),
                       std::move(message), std::move(random32)};
}

std::string environment_string(unsigned threads) {
    std::ostringstream out;
    out << "compiler=" << __VERSION__ << " arch="
#if defined(__x86_64__)
        << "x86_64"
#elif defined(__aarch64__)
        << "aarch64"
#else
        << "unknown"
#endif
        << " threads=" << threads;
    return out.str();
}

long long rounded(double v) { return std::llround(v); }

}  // namespace

Result<BenchReport> run_bench(const BenchOptions& options) {
    if (options.min_size < 2 || options.max_size > 64 || options.min_size > options.max_size)
        return make_error(Errc::bad_config, "ring sizes must satisfy 2 <= min <= max <= 64");
    if (!options.seed && options.seconds_per_cell < 1.0)
        return make_error(Errc::bad_config, "duration-mode cells need at least 1 second");
    if (options.seed && options.iterations_per_subrun == 0)
        return make_error(Errc::bad_config, "seeded mode needs at least 1 iteration per sub-run");
    if (options.threads == 0 || options.threads > 256)
        return make_error(Errc::bad_config, "threads must be in [1, 256]");

    BenchReport report;
    report.scheme = options.scheme;
    report.deterministic = options.seed.has_value();
    report.threads = options.threads;
    report.environment = environment_string(options.threads);

    report.timer_resolution_us = measure_timer_resolution_us();
    if (report.timer_resolution_us > 1.0)
        return make_error(Errc::bad_config, "timer resolution is coarser than 1 microsecond");
    report.loop_overhead_ns = measure_loop_overhead_ns();

    const std::uint64_t base_seed = options.seed.value_or(0);
    std::optional<std::uint64_t> pinned =
        options.seed ? std::optional<std::uint64_t>(options.iterations_per_subrun) : std::nullopt;

    for (std::size_t n = options.min_size; n <= options.max_size; ++n) {
        // fixture keys are always derived from a fixed per-size seed so that
        // seeded runs are fully reproducible
        SeededEntropy fixture_entropy(base_seed * 1000003 + n);
        auto fixture = build_fixture(n, fixture_entropy);
        if (!fixture.ok()) return std::move(fixture).take_error();
        const CellFixture& fx = fixture.value();

        BenchRow row;
        row.ring_size = n;

        row.creation = run_cell(
            [&](unsigned) -> std::function<void()> {
                return [&fx] {
                    std::vector<GroupElement> keys;
                    keys.reserve(fx.shuffled_encodings.size());
                    for (const Bytes& enc : fx.shuffled_encodings)
                        keys.push_back(GroupElement::decode(enc).value());
                    auto ring = Ring::create(std::move(keys));
                    if (!ring.ok()) std::abort();
                };
            },
            options.seconds_per_cell, pinned, report.loop_overhead_ns, options.threads);

        row.signing = run_cell(
            [&](unsigned worker) -> std::function<void()> {
                auto entropy = std::make_shared<SeededEntropy>(base_seed * 7919 + n * 131 + worker);
                auto counter = std::make_shared<std::size_t>(0);
                return [&fx, entropy, counter, scheme = options.scheme] {
                    std::size_t s = (*counter)++ % fx.ring.size();
                    SignerPosition signer{fx.ring.index_of(fx.keypairs[s].pk).value(),
                                          fx.keypairs[s].sk};
                    if (scheme == SchemeKind::aos) {
                        if (!aos_sign(signer, fx.message, fx.ring, *entropy).ok()) std::abort();
                    } else {
                        const Ring& r = fx.ring;
                        if (!borromean_sign({&signer, 1}, fx.message, {&r, 1}, *entropy).ok())
                            std::abort();
                    }
                };
            },
            options.seconds_per_cell, pinned, report.loop_overhead_ns, options.threads);

        {
            SeededEntropy sign_entropy(base_seed * 104729 + n);
            SignerPosition signer{fx.ring.index_of(fx.keypairs[0].pk).value(), fx.keypairs[0].sk};
            Bytes wire;
            if (options.scheme == SchemeKind::aos) {
                auto sig = aos_sign(signer, fx.message, fx.ring, sign_entropy);
                if (!sig.ok()) return std::move(sig).take_error();
                wire = encode_signature(sig.value());
            } else {
                const Ring& r = fx.ring;
                auto sig = borromean_sign({&signer, 1}, fx.message, {&r, 1}, sign_entropy);
                if (!sig.ok()) return std::move(sig).take_error();
                wire = encode_signature(sig.value());
            }
            row.verification = run_cell(
                [&](unsigned) -> std::function<void()> {
                    return [&fx, wire] {
                        auto verdict = verify_wire(fx.ring, fx.message, wire);
                        if (!verdict.ok() || verdict.value() != Verdict::accept) std::abort();
                    };
                },
                options.seconds_per_cell, pinned, report.loop_overhead_ns, options.threads);
        }

        if (options.with_identifier) {
            row.identifier = run_cell(
                [&](unsigned) -> std::function<void()> {
                    return [&fx] {
                        if (!generate_ring_identifier(fx.ring[0], fx.random32, fx.ring).ok())
                            std::abort();
                    };
                },
                options.seconds_per_cell, pinned, report.loop_overhead_ns, options.threads);
        }

        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string report_csv(const BenchReport& report) {
    std::ostringstream out;
    bool with_identifier =
        !report.rows.empty() && report.rows.front().identifier.has_value();
    out << "ring_size,creation_ops,signing_ops,verification_ops";
    if (with_identifier) out << ",identifier_ops";
    out << "\n";
    for (const BenchRow& row : report.rows) {
        out << row.ring_size << "," << rounded(row.creation.ops_per_sec) << ","
            << rounded(row.signing.ops_per_sec) << "," << rounded(row.verification.ops_per_sec);
        if (with_identifier) out << "," << rounded(row.identifier->ops_per_sec);
        out << "\n";
    }
    return out.str();
}

std::string report_text(const BenchReport& report) {
    std::ostringstream out;
    out << "scheme: " << scheme_name(report.scheme) << "  (" << report.environment << ")\n";
    out << "timer resolution: " << report.timer_resolution_us << " us, harness overhead: "
        << report.loop_overhead_ns << " ns\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %14s %14s %14s\n", "ring size", "creation/s",
                  "signing/s", "verification/s");
    out << line;
    for (const BenchRow& row : report.rows) {
        std::snprintf(line, sizeof(line), "%-10zu %14lld %14lld %14lld", row.ring_size,
                      rounded(row.creation.ops_per_sec), rounded(row.signing.ops_per_sec),
                      rounded(row.verification.ops_per_sec));
        out << line;
        if (row.identifier)
            out << "  identifier/s " << rounded(row.identifier->ops_per_sec);
        out << "\n";
    }
    return out.str();
}

std::string report_json(const BenchReport& report) {
    nlohmann::json j;
    j["scheme"] = scheme_name(report.scheme);
    j["environment"] = report.environment;
    j["timerResolutionUs"] = report.timer_resolution_us;
    j["loopOverheadNs"] = report.loop_overhead_ns;
    j["deterministic"] = report.deterministic;
    j["threads"] = report.threads;
    j["rows"] = nlohmann::json::array();
    auto stats_json = [](const OpStats& stats) {
        return nlohmann::json{{"opsPerSec", stats.ops_per_sec},
                              {"meanUs", stats.mean_us},
                              {"stddevUs", stats.stddev_us},
                              {"iterations", stats.iterations}};
    };
    for (const BenchRow& row : report.rows) {
        nlohmann::json r;
        r["ringSize"] = row.ring_size;
        r["creation"] = stats_json(row.creation);
        r["signing"] = stats_json(row.signing);
        r["verification"] = stats_json(row.verification);
        if (row.identifier) r["identifier"] = stats_json(*row.identifier);
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

}  // namespace ringdid::bench
