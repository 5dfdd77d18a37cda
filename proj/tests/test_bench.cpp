#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ringdid/bench.hpp"

using namespace ringdid;
using bench::BenchOptions;
using bench::BenchReport;

namespace {

BenchOptions fast_options() {
    BenchOptions options;
    options.min_size = 2;
    options.max_size = 3;
    options.seed = 12345;
    options.iterations_per_subrun = 4;
    return options;
}

}  // namespace

TEST_CASE("configuration is validated") {
    BenchOptions options = fast_options();

    options.min_size = 1;
    CHECK(bench::run_bench(options).code() == Errc::bad_config);

    options = fast_options();
    options.max_size = 65;
    CHECK(bench::run_bench(options).code() == Errc::bad_config);

    options = fast_options();
    options.seed.reset();
    options.seconds_per_cell = 0.2;
    CHECK(bench::run_bench(options).code() == Errc::bad_config);

    options = fast_options();
    options.iterations_per_subrun = 0;
    CHECK(bench::run_bench(options).code() == Errc::bad_config);

    options = fast_options();
    options.threads = 0;
    CHECK(bench::run_bench(options).code() == Errc::bad_config);
}

TEST_CASE("seeded runs execute identical operation counts") {
    BenchOptions options = fast_options();
    BenchReport a = bench::run_bench(options).value();
    BenchReport b = bench::run_bench(options).value();

    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].ring_size == b.rows[i].ring_size);
        CHECK(a.rows[i].creation.iterations == b.rows[i].creation.iterations);
        CHECK(a.rows[i].signing.iterations == b.rows[i].signing.iterations);
        CHECK(a.rows[i].verification.iterations == b.rows[i].verification.iterations);
    }
    CHECK(a.deterministic);
}

TEST_CASE("reports cover the requested grid with positive throughput") {
    BenchOptions options = fast_options();
    options.max_size = 4;
    options.with_identifier = true;
    BenchReport report = bench::run_bench(options).value();

    REQUIRE(report.rows.size() == 3);
    std::size_t expected = 2;
    for (const auto& row : report.rows) {
        CHECK(row.ring_size == expected++);
        CHECK(row.creation.ops_per_sec > 0);
        CHECK(row.signing.ops_per_sec > 0);
        CHECK(row.verification.ops_per_sec > 0);
        CHECK(row.signing.mean_us > 0);
        REQUIRE(row.identifier.has_value());
        CHECK(row.identifier->ops_per_sec > 0);
    }
    CHECK(report.timer_resolution_us <= 1.0);
    CHECK(report.timer_resolution_us > 0.0);
}

TEST_CASE("csv layout matches the documented header") {
    BenchOptions options = fast_options();
    BenchReport report = bench::run_bench(options).value();
    std::string csv = bench::report_csv(report);

    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "ring_size,creation_ops,signing_ops,verification_ops");

    std::string row;
    int rows = 0;
    while (std::getline(lines, row)) {
        CHECK(row.find(',') != std::string::npos);
        ++rows;
    }
    CHECK(rows == 2);

    options.with_identifier = true;
    BenchReport with_id = bench::run_bench(options).value();
    std::string csv_id = bench::report_csv(with_id);
    CHECK(csv_id.substr(0, csv_id.find('\n')) ==
          "ring_size,creation_ops,signing_ops,verification_ops,identifier_ops");
}

TEST_CASE("json and text renderings stay in sync with the report") {
    BenchOptions options = fast_options();
    BenchReport report = bench::run_bench(options).value();
    std::string json = bench::report_json(report);
    CHECK(json.find("\"scheme\": \"borromean\"") != std::string::npos);
    CHECK(json.find("\"ringSize\": 2") != std::string::npos);
    std::string text = bench::report_text(report);
    CHECK(text.find("scheme: borromean") != std::string::npos);
}

TEST_CASE("aos cells run too") {
    BenchOptions options = fast_options();
    options.scheme = SchemeKind::aos;
    options.max_size = 2;
    BenchReport report = bench::run_bench(options).value();
    CHECK(report.rows.size() == 1);
    CHECK(report.rows[0].verification.ops_per_sec > 0);
}
