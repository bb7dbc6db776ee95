#include "miniant/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "miniant/format.hpp"
#include "miniant/physics.hpp"
#include "miniant/rng.hpp"

namespace miniant {

namespace {

constexpr const char* kFieldNames[6] = {"d_inner_mm", "d_outer_mm",   "f_res_ghz",
                                        "return_loss_db", "rl_depth_db", "efficiency"};

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
    throw std::runtime_error("row " + std::to_string(row) + ": " + what);
}

void validate_record(const SampleRecord& r, std::size_t row) {
    if (!is_feasible(r.d_inner_mm, r.d_outer_mm)) {
        const FeasibleRegion region;
        const char* field =
            (r.d_inner_mm <= region.inner_min_mm || !(r.d_inner_mm < r.d_outer_mm))
                ? "d_inner_mm"
                : "d_outer_mm";
        row_error(row, std::string(field) + ": loop diameters outside the feasible region");
    }
    if (!(r.f_res_ghz > 0.0)) row_error(row, "f_res_ghz: must be > 0");
    if (!(r.efficiency >= 0.0 && r.efficiency <= 1.0))
        row_error(row, "efficiency: must be within [0, 1]");
}

} // namespace

void SynthConfig::validate() const {
    if (n_samples < 10) throw std::invalid_argument("synth config: n_samples must be >= 10");
    if (!(noise_std_ghz >= 0.0)) throw std::invalid_argument("synth config: noise_std must be >= 0");
}

std::string render_csv(const std::vector<SampleRecord>& records) {
    std::string out = kDatasetHeader;
    out += '\n';
    for (const auto& r : records) {
        out += format_general(r.d_inner_mm, 6);
        out += ',';
        out += format_general(r.d_outer_mm, 6);
        out += ',';
        out += format_general(r.f_res_ghz, 6);
        out += ',';
        out += format_general(r.return_loss_db, 6);
        out += ',';
        out += format_general(r.rl_depth_db, 6);
        out += ',';
        out += format_general(r.efficiency, 6);
        out += '\n';
    }
    return out;
}

std::vector<SampleRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("dataset csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kDatasetHeader)
        throw std::runtime_error("dataset csv: bad header, expected '" +
                                 std::string(kDatasetHeader) + "'");

    std::vector<SampleRecord> records;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;

        double values[6];
        std::size_t start = 0;
        for (int f = 0; f < 6; ++f) {
            std::size_t comma = line.find(',', start);
            const bool last = (f == 5);
            if (!last && comma == std::string::npos)
                row_error(row, "expected 6 fields, got " + std::to_string(f + 1));
            if (last && comma != std::string::npos)
                row_error(row, "expected 6 fields, got more");
            const std::string_view field(line.data() + start,
                                         (last ? line.size() : comma) - start);
            try {
                values[f] = parse_double(field);
            } catch (const std::exception&) {
                row_error(row, std::string(kFieldNames[f]) + ": malformed number '" +
                                   std::string(field) + "'");
            }
            start = comma + 1;
        }
        SampleRecord r{values[0], values[1], values[2], values[3], values[4], values[5]};
        validate_record(r, row);
        records.push_back(r);
    }
    return records;
}

void write_csv(const std::filesystem::path& path, const std::vector<SampleRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << render_csv(records);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<SampleRecord> load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_csv(buf.str());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

DatasetSplit split_dataset(std::vector<SampleRecord> records, std::uint64_t seed) {
    const std::size_t n = records.size();
    if (n < 20)
        throw std::invalid_argument("split: need at least 20 records, got " + std::to_string(n));

    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = rng.below(i + 1);
        std::swap(records[i], records[j]);
    }

    const std::size_t n_val = n / 20;  // floor(0.05 n)
    const std::size_t n_test = n / 20;
    const std::size_t n_train = n - n_val - n_test;

    DatasetSplit split;
    split.seed = seed;
    split.train.assign(records.begin(), records.begin() + n_train);
    split.validation.assign(records.begin() + n_train, records.begin() + n_train + n_val);
    split.test.assign(records.begin() + n_train + n_val, records.end());
    return split;
}

double synthetic_frequency_ghz(double d_inner_mm, double d_outer_mm, double inner_coupling) {
    const double base = resonant_frequency_ghz(reference_geometry(d_inner_mm, d_outer_mm));
    return base * (1.0 + inner_coupling * (d_inner_mm / d_outer_mm - 0.5));
}

std::vector<SampleRecord> generate_synthetic(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const FeasibleRegion region;

    std::vector<SampleRecord> records;
    records.reserve(cfg.n_samples);
    while (records.size() < cfg.n_samples) {
        const double d_in = rng.uniform(region.inner_min_mm, region.outer_max_mm);
        const double d_out = rng.uniform(region.inner_min_mm, region.outer_max_mm);
        if (!region.contains(d_in, d_out)) continue;

        double f = synthetic_frequency_ghz(d_in, d_out, cfg.inner_coupling) +
                   cfg.noise_std_ghz * rng.normal();
        while (!(f > 0.0)) // unreachable at sane noise levels
            f = synthetic_frequency_ghz(d_in, d_out, cfg.inner_coupling) +
                cfg.noise_std_ghz * rng.normal();

        // Placeholder response maps for the fields no surrogate exists for.
        // Smooth, feasible-by-construction, and clearly not physics.
        const double u = (d_out - (region.inner_min_mm + region.min_gap_mm)) /
                         (region.outer_max_mm - region.inner_min_mm - region.min_gap_mm);
        const double ratio = d_in / d_out;
        SampleRecord r;
        r.d_inner_mm = d_in;
        r.d_outer_mm = d_out;
        r.f_res_ghz = f;
        r.return_loss_db = -(12.0 + 6.0 * u);
        r.rl_depth_db = r.return_loss_db - 1.5 * (1.0 - ratio);
        r.efficiency = 0.70 + 0.25 * u;
        records.push_back(r);
    }
    return records;
}

} // namespace miniant
