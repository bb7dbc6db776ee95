#ifndef MINIANT_MODELS_PERSIST_HPP
#define MINIANT_MODELS_PERSIST_HPP

#include <filesystem>
#include <iosfwd>

#include "miniant/models/forest.hpp"
#include "miniant/models/gbt.hpp"
#include "miniant/models/stacked.hpp"
#include "miniant/models/svr.hpp"

namespace miniant {

// Versioned line-oriented text format. Decimal values are written in their
// shortest exact form, so a loaded model predicts bit-for-bit like the saved
// one.

void save_model(std::ostream& out, const RandomForest& model);
void save_model(std::ostream& out, const GradientBoostedTrees& model);
void save_model(std::ostream& out, const SvrModel& model);
void save_model(std::ostream& out, const StackedModel& model);

RandomForest load_forest(std::istream& in);
GradientBoostedTrees load_gbt(std::istream& in);
SvrModel load_svr(std::istream& in);
StackedModel load_stacked(std::istream& in);

template <typename Model>
void save_model_file(const std::filesystem::path& path, const Model& model);

RandomForest load_forest_file(const std::filesystem::path& path);
GradientBoostedTrees load_gbt_file(const std::filesystem::path& path);
SvrModel load_svr_file(const std::filesystem::path& path);
StackedModel load_stacked_file(const std::filesystem::path& path);

} // namespace miniant

#endif
