#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "villus/augment.hpp"
#include "villus/diversity.hpp"
#include "villus/morphology.hpp"
#include "villus/patch_synth.hpp"

namespace villus {

using json = nlohmann::json;

// JSON documents use the C++ field names as keys.
void to_json(json& j, const BaseAugmentConfig& c);
void from_json(const json& j, BaseAugmentConfig& c);  // missing keys keep defaults
void to_json(json& j, const BaseAugmentDraw& d);
void to_json(json& j, const GridSpec& s);
void to_json(json& j, const MorphometricsReport& r);

// bin_center,count
void write_radius_csv(std::ostream& os, const RadiusHistogram& h);
// name,tag,volume_fraction,specific_surface
void write_feature_csv(std::ostream& os, const std::vector<FeaturePoint>& points,
                       const std::vector<std::string>& names);
// grid_ratio,repeat,seed,volume_fraction,specific_surface
void write_sweep_csv(std::ostream& os, const std::vector<SweepResult>& results);
json sweep_summary(const std::vector<SweepResult>& results);
// gnuplot script plotting the sweep CSV means.
std::string sweep_plot_script(const std::string& csv_name);

// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Truncates and writes.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace villus
