#ifndef MINIANT_DATASET_HPP
#define MINIANT_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace miniant {

// One sweep sample: the two loop diameters plus the four response variables.
// Only f_res is ever predicted; the remaining responses are carried as data
// fields.
struct SampleRecord {
    double d_inner_mm = 0.0;
    double d_outer_mm = 0.0;
    double f_res_ghz = 0.0;
    double return_loss_db = 0.0;
    double rl_depth_db = 0.0;
    double efficiency = 0.0;

    bool operator==(const SampleRecord&) const = default;
};

inline constexpr const char* kDatasetHeader =
    "d_inner_mm,d_outer_mm,f_res_ghz,return_loss_db,rl_depth_db,efficiency";

// 90/5/5 partition; the integer remainder of the 5% slices goes to train.
struct DatasetSplit {
    std::vector<SampleRecord> train;
    std::vector<SampleRecord> validation;
    std::vector<SampleRecord> test;
    std::uint64_t seed = 0;
};

struct SynthConfig {
    std::size_t n_samples = 936;
    double noise_std_ghz = 0.02;
    double inner_coupling = 0.05; // strength of the synthetic d_inner effect
    std::uint64_t seed = 1;

    void validate() const;
};

// CSV (UTF-8, LF, '.' decimal separator), values at 6 significant digits.
std::string render_csv(const std::vector<SampleRecord>& records);
std::vector<SampleRecord> parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const std::vector<SampleRecord>& records);
std::vector<SampleRecord> load_csv(const std::filesystem::path& path);

// Deterministic shuffle-then-slice partition. Requires at least 20 records.
DatasetSplit split_dataset(std::vector<SampleRecord> records, std::uint64_t seed);

// Noiseless synthetic response surface: the closed-form frequency of d_outer
// modulated by a configurable d_inner coupling. The coupling is an artifact of
// dataset synthesis, not physics; it exists so the learning problem is
// genuinely two-dimensional. It vanishes at d_inner/d_outer = 0.5.
double synthetic_frequency_ghz(double d_inner_mm, double d_outer_mm, double inner_coupling);

// Samples the feasible diameter region uniformly and fills the response
// fields; deterministic per seed.
std::vector<SampleRecord> generate_synthetic(const SynthConfig& cfg);

} // namespace miniant

#endif
