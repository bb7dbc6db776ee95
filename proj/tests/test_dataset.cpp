#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "miniant/dataset.hpp"
#include "miniant/physics.hpp"
#include "support/checks.hpp"

using namespace miniant;
using testsupport::close_abs;

namespace {

std::string header_line() { return std::string(kDatasetHeader) + "\n"; }

// Canonical multiset key for the partition check.
std::multiset<std::string> keys(const std::vector<SampleRecord>& records) {
    std::multiset<std::string> out;
    for (const auto& r : records)
        out.insert(std::to_string(r.d_inner_mm) + "/" + std::to_string(r.d_outer_mm) + "/" +
                   std::to_string(r.f_res_ghz));
    return out;
}

} // namespace

TEST_CASE("parse a published-geometry row") {
    const auto records = parse_csv(header_line() + "6.2441,11.8614,1.4208,-18.0,-18.0,0.85\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].d_inner_mm == 6.2441);
    CHECK(records[0].d_outer_mm == 11.8614);
    CHECK(records[0].f_res_ghz == 1.4208);
    CHECK(records[0].efficiency == 0.85);
}

TEST_CASE("header-only file parses to an empty list") {
    CHECK(parse_csv(header_line()).empty());
}

TEST_CASE("rejects bad headers and empty files") {
    CHECK_THROWS(parse_csv(""));
    CHECK_THROWS_WITH(parse_csv("a,b,c\n1,2,3\n"), doctest::Contains("header"));
}

TEST_CASE("row validation names row and field") {
    CHECK_THROWS_WITH(parse_csv(header_line() + "1.0,5.0,1.5,-10,-10,0.8\n"),
                      doctest::Contains("row 1: d_inner_mm"));
    CHECK_THROWS_WITH(parse_csv(header_line() + "3.0,12.5,1.5,-10,-10,0.8\n"),
                      doctest::Contains("d_outer_mm"));
    CHECK_THROWS_WITH(parse_csv(header_line() + "3.0,9.0,-1.5,-10,-10,0.8\n"),
                      doctest::Contains("f_res_ghz"));
    CHECK_THROWS_WITH(parse_csv(header_line() + "3.0,9.0,1.5,-10,-10,1.2\n"),
                      doctest::Contains("efficiency"));
    CHECK_THROWS_WITH(parse_csv(header_line() + "3.0,9.0,1.5,-10,-10,0.8\n" +
                                "3.0,nine,1.5,-10,-10,0.8\n"),
                      doctest::Contains("row 2: d_outer_mm"));
    CHECK_THROWS_WITH(parse_csv(header_line() + "3.0,9.0,1.5\n"),
                      doctest::Contains("expected 6 fields"));
}

TEST_CASE("write and load round-trip at 6 significant digits") {
    // Values already at 6-digit precision survive the cycle bit-for-bit.
    const auto fixture = parse_csv(header_line() + "6.2441,11.8614,1.4208,-18,-18,0.85\n" +
                                   "2.9498,11.9787,1.5912,-15.25,-16.5,0.9\n");
    const auto path = std::filesystem::temp_directory_path() / "miniant_dataset_rt.csv";
    write_csv(path, fixture);
    const auto loaded = load_csv(path);
    CHECK(loaded == fixture);
    std::filesystem::remove(path);
}

TEST_CASE("rendering is idempotent after one canonicalization pass") {
    SynthConfig cfg;
    cfg.n_samples = 40;
    cfg.seed = 9;
    const auto raw = generate_synthetic(cfg);
    const auto canonical = parse_csv(render_csv(raw));
    const std::string first = render_csv(canonical);
    CHECK(parse_csv(first) == canonical);
    CHECK(render_csv(parse_csv(first)) == first);
}

TEST_CASE("split sizes follow the 90/5/5 rule with remainder to train") {
    SynthConfig cfg;
    cfg.n_samples = 936;
    cfg.seed = 3;
    const auto records = generate_synthetic(cfg);
    const DatasetSplit split = split_dataset(records, 11);
    CHECK(split.train.size() == 844);
    CHECK(split.validation.size() == 46);
    CHECK(split.test.size() == 46);

    SynthConfig small;
    small.n_samples = 20;
    small.seed = 3;
    const auto small_records = generate_synthetic(small);
    const DatasetSplit s2 = split_dataset(small_records, 11);
    CHECK(s2.train.size() == 18);
    CHECK(s2.validation.size() == 1);
    CHECK(s2.test.size() == 1);
}

TEST_CASE("split is a deterministic partition") {
    SynthConfig cfg;
    cfg.n_samples = 101;
    cfg.seed = 5;
    const auto records = generate_synthetic(cfg);

    const DatasetSplit a = split_dataset(records, 77);
    const DatasetSplit b = split_dataset(records, 77);
    CHECK(a.train == b.train);
    CHECK(a.validation == b.validation);
    CHECK(a.test == b.test);

    std::vector<SampleRecord> merged = a.train;
    merged.insert(merged.end(), a.validation.begin(), a.validation.end());
    merged.insert(merged.end(), a.test.begin(), a.test.end());
    CHECK(merged.size() == records.size());
    CHECK(keys(merged) == keys(records));

    const DatasetSplit c = split_dataset(records, 78);
    CHECK(c.train != a.train); // different seed shuffles differently
}

TEST_CASE("split rejects undersized datasets") {
    SynthConfig cfg;
    cfg.n_samples = 19;
    cfg.seed = 2;
    CHECK_THROWS_AS(split_dataset(generate_synthetic(cfg), 1), std::invalid_argument);
}

TEST_CASE("noiseless uncoupled generator reproduces the closed form exactly") {
    SynthConfig cfg;
    cfg.n_samples = 50;
    cfg.noise_std_ghz = 0.0;
    cfg.inner_coupling = 0.0;
    cfg.seed = 4;
    for (const auto& r : generate_synthetic(cfg)) {
        const double expected =
            resonant_frequency_ghz(reference_geometry(r.d_inner_mm, r.d_outer_mm));
        CHECK(r.f_res_ghz == expected);
    }
}

TEST_CASE("inner coupling vanishes at the half ratio") {
    const double d_out = 9.0;
    const double base = resonant_frequency_ghz(reference_geometry(4.5, d_out));
    CHECK(synthetic_frequency_ghz(d_out / 2.0, d_out, 0.05) == base);
    CHECK(synthetic_frequency_ghz(3.0, d_out, 0.0) == base);
    CHECK(synthetic_frequency_ghz(6.0, d_out, 0.05) != base);
}

TEST_CASE("generator honors count, feasibility, and determinism") {
    SynthConfig cfg; // defaults: 936 samples
    const auto a = generate_synthetic(cfg);
    CHECK(a.size() == 936);
    for (const auto& r : a) {
        CHECK(is_feasible(r.d_inner_mm, r.d_outer_mm));
        CHECK(r.f_res_ghz > 0.0);
        CHECK(r.efficiency >= 0.0);
        CHECK(r.efficiency <= 1.0);
    }
    const auto b = generate_synthetic(cfg);
    CHECK(a == b);

    SynthConfig other = cfg;
    other.seed = cfg.seed + 1;
    CHECK(generate_synthetic(other) != a);
}

TEST_CASE("generator config validation") {
    SynthConfig cfg;
    cfg.n_samples = 9;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_samples = 100;
    cfg.noise_std_ghz = -0.1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
