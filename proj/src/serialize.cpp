#include "villus/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>

namespace villus {

void to_json(json& j, const BaseAugmentConfig& c) {
  j = json{{"color_shift_limit", c.color_shift_limit},
           {"zoom_max", c.zoom_max},
           {"rotation_max", c.rotation_max},
           {"enable_color_shift", c.enable_color_shift},
           {"enable_zoom", c.enable_zoom},
           {"enable_rotation", c.enable_rotation},
           {"enable_flip", c.enable_flip},
           {"enable_elastic", c.enable_elastic},
           {"elastic_y_uses_y", c.elastic_y_uses_y},
           {"seed", c.seed}};
}

void from_json(const json& j, BaseAugmentConfig& c) {
  auto read = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  read("color_shift_limit", c.color_shift_limit);
  read("zoom_max", c.zoom_max);
  read("rotation_max", c.rotation_max);
  read("enable_color_shift", c.enable_color_shift);
  read("enable_zoom", c.enable_zoom);
  read("enable_rotation", c.enable_rotation);
  read("enable_flip", c.enable_flip);
  read("enable_elastic", c.enable_elastic);
  read("elastic_y_uses_y", c.elastic_y_uses_y);
  read("seed", c.seed);
  c.validate();
}

void to_json(json& j, const BaseAugmentDraw& d) {
  j = json{{"color_deltas", d.color_deltas},
           {"zoom_factor", d.zoom_factor},
           {"rotation_degrees", d.rotation_degrees},
           {"flip_axis", to_string(d.flip_axis)},
           {"elastic_sigma", d.elastic_sigma},
           {"elastic_mesh_ratio", d.elastic_mesh_ratio},
           {"elastic_phase", d.elastic_phase}};
}

void to_json(json& j, const GridSpec& s) {
  j = json{{"output_size", s.output_size},
           {"grid_ratio", s.grid_ratio},
           {"overlap", s.overlap},
           {"tile_size", s.tile_size()},
           {"tile_extent", s.tile_extent()}};
}

void to_json(json& j, const MorphometricsReport& r) {
  j = json{{"volume_fraction", r.volume_fraction},
           {"specific_surface", r.specific_surface},
           {"mean_chamber_radius", r.mean_chamber_radius},
           {"mean_connectivity", r.mean_connectivity},
           {"chamber_count", r.chamber_count},
           {"edge_count", r.edge_count},
           {"radius_distribution",
            {{"bin_edges", r.radius_distribution.bin_edges},
             {"counts", r.radius_distribution.counts}}}};
}

namespace {

std::string num(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

}  // namespace

void write_radius_csv(std::ostream& os, const RadiusHistogram& h) {
  os << "bin_center,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    os << num((h.bin_edges[k] + h.bin_edges[k + 1]) / 2.0) << ',' << h.counts[k] << '\n';
}

void write_feature_csv(std::ostream& os, const std::vector<FeaturePoint>& points,
                       const std::vector<std::string>& names) {
  os << "name,tag,volume_fraction,specific_surface\n";
  for (std::size_t i = 0; i < points.size(); ++i)
    os << (i < names.size() ? names[i] : std::to_string(i)) << ',' << to_string(points[i].tag) << ','
       << num(points[i].volume_fraction) << ',' << num(points[i].specific_surface) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepResult>& results) {
  os << "grid_ratio,repeat,seed,volume_fraction,specific_surface\n";
  for (const auto& r : results)
    for (std::size_t k = 0; k < r.repeats(); ++k)
      os << r.grid_ratio << ',' << k << ',' << r.seeds[k] << ',' << num(r.volume_fraction[k]) << ','
         << num(r.specific_surface[k]) << '\n';
}

json sweep_summary(const std::vector<SweepResult>& results) {
  json rows = json::array();
  std::vector<double> ratio, vf, ss;
  for (const auto& r : results) {
    rows.push_back({{"grid_ratio", r.grid_ratio},
                    {"repeats", r.repeats()},
                    {"mean_volume_fraction", r.mean_volume_fraction},
                    {"std_volume_fraction", r.std_volume_fraction},
                    {"mean_specific_surface", r.mean_specific_surface},
                    {"std_specific_surface", r.std_specific_surface}});
    ratio.push_back(r.grid_ratio);
    vf.push_back(r.mean_volume_fraction);
    ss.push_back(r.mean_specific_surface);
  }
  json out{{"results", rows}};
  if (results.size() >= 2) {
    out["spearman_volume_fraction"] = spearman(ratio, vf);
    out["spearman_specific_surface"] = spearman(ratio, ss);
  }
  return out;
}

std::string sweep_plot_script(const std::string& csv_name) {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'image-to-grid-size ratio'\n"
         "set multiplot layout 1,2\n"
         "set ylabel 'volume fraction'\n"
         "plot '" + csv_name + "' using 1:4 with points pt 7 ps 0.5 notitle\n"
         "set ylabel 'specific surface (1/px)'\n"
         "plot '" + csv_name + "' using 1:5 with points pt 7 ps 0.5 notitle\n"
         "unset multiplot\n";
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace villus
