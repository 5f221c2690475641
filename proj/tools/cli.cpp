#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "villus/augment.hpp"
#include "villus/diversity.hpp"
#include "villus/image.hpp"
#include "villus/morphology.hpp"
#include "villus/parallel.hpp"
#include "villus/patch_synth.hpp"
#include "villus/serialize.hpp"

#ifndef VILLUS_VERSION
#define VILLUS_VERSION "dev"
#endif

namespace villus::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string key_of(const std::string& flag) {
  std::string key = flag.substr(flag.find_first_not_of('-'));
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

// Binds CLI11 options to variables and lets a JSON config file fill any
// option that was not given on the command line. The resolved values are
// dumped into the run manifest, and a manifest can be fed back as --config.
class OptionSet {
 public:
  explicit OptionSet(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "JSON config file or a run manifest");
  }

  template <typename T>
  CLI::Option* option(const std::string& flag, T& var, const std::string& help) {
    CLI::Option* opt = app_->add_option(flag, var, help);
    if constexpr (!std::is_same_v<T, std::string>) opt->capture_default_str();
    bind(opt, key_of(flag), var);
    return opt;
  }

  CLI::Option* flag(const std::string& flag, bool& var, const std::string& help) {
    CLI::Option* opt = app_->add_flag(flag, var, help);
    bind(opt, key_of(flag), var);
    return opt;
  }

  void apply_config() {
    if (config_path_.empty()) return;
    std::ifstream in(config_path_);
    if (!in) throw UsageError("cannot read config file " + config_path_);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("config file " + config_path_ + " is not valid JSON: " + e.what());
    }
    if (cfg.contains("config") && cfg["config"].is_object()) cfg = cfg["config"];
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    for (auto& b : bindings_) {
      if (b.opt->count() > 0 || !cfg.contains(b.key)) continue;
      try {
        b.load(cfg[b.key]);
      } catch (const json::exception& e) {
        throw UsageError("config key '" + b.key + "': " + e.what());
      }
    }
  }

  json dump() const {
    json j = json::object();
    for (const auto& b : bindings_) j[b.key] = b.save();
    return j;
  }

 private:
  struct Binding {
    CLI::Option* opt;
    std::string key;
    std::function<void(const json&)> load;
    std::function<json()> save;
  };

  template <typename T>
  void bind(CLI::Option* opt, std::string key, T& var) {
    bindings_.push_back({opt, std::move(key), [&var](const json& j) { var = j.get<T>(); },
                         [&var] { return json(var); }});
  }

  CLI::App* app_;
  std::string config_path_;
  std::vector<Binding> bindings_;
};

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
}

std::string sample_name(std::size_t i, const char* kind) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "sample_%06zu_%s.png", i, kind);
  return buf;
}

// One [col, row, image_entry, mask_entry] row per cell, in fill order.
json placements_json(const std::vector<Placement>& placements) {
  json rows = json::array();
  for (const auto& p : placements)
    rows.push_back({p.cell.col, p.cell.row, p.image_entry, p.mask_entry});
  return rows;
}

json file_entry(const fs::path& path, const fs::path& base = {}) {
  const std::string shown = base.empty() ? path.string() : path.lexically_relative(base).string();
  return json{{"path", shown}, {"sha256", sha256_file(path)}};
}

std::vector<int> parse_ratios(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots)), hi = std::stoi(item.substr(dots + 2));
        if (hi < lo) throw UsageError("bad ratio range '" + item + "'");
        for (int r = lo; r <= hi; ++r) out.push_back(r);
      }
    }
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse --ratios '" + text + "'");
  }
  if (out.empty()) throw UsageError("--ratios is empty");
  for (int r : out)
    if (r < 1) throw UsageError("grid ratios must be >= 1");
  return out;
}

GridSpec make_spec(int output_size, const LabeledPair& exemplar, int grid_ratio, int overlap) {
  GridSpec spec{output_size > 0 ? output_size : std::min(exemplar.width(), exemplar.height()),
                grid_ratio, overlap};
  try {
    spec.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (spec.tile_extent() > exemplar.width() || spec.tile_extent() > exemplar.height())
    throw UsageError("tile extent " + std::to_string(spec.tile_extent()) +
                     " exceeds the exemplar; lower --output-size or raise --grid-ratio");
  return spec;
}

json manifest_header(const std::string& command, std::uint64_t seed, const OptionSet& opts) {
  return json{{"tool", "villus"},
              {"version", VILLUS_VERSION},
              {"command", command},
              {"seed", seed},
              {"config", opts.dump()}};
}

// ---------------------------------------------------------------- reconstruct

struct ReconstructArgs {
  std::string image, mask, out_dir;
  int grid_ratio = 6;
  int overlap = 5;
  int n = 1;
  std::uint64_t seed = 0;
  int stride = kDefaultStride;
  double priority_factor = kDefaultPriorityFactor;
  int output_size = 0;
  int jobs = 1;
};

void add_reconstruct(CLI::App&, OptionSet& o, ReconstructArgs& a) {
  o.option("--image", a.image, "Exemplar RGB PNG");
  o.option("--mask", a.mask, "Exemplar two-level mask PNG");
  o.option("--out-dir", a.out_dir, "Output directory");
  o.option("--grid-ratio", a.grid_ratio, "Image-to-grid-size ratio");
  o.option("--overlap", a.overlap, "Overlap between neighbouring cells (px)");
  o.option("--n", a.n, "Number of realizations");
  o.option("--seed", a.seed, "Root seed");
  o.option("--stride", a.stride, "Sliding-window step for the patch dataset (px)");
  o.option("--priority-factor", a.priority_factor, "No-flip preference factor (>= 1)");
  o.option("--output-size", a.output_size, "Output side length; 0 = exemplar size");
  o.option("--jobs", a.jobs, "Worker threads");
}

int run_reconstruct(const ReconstructArgs& a, const OptionSet& opts, std::ostream& out,
                    std::ostream& err) {
  require(a.image, "--image");
  require(a.mask, "--mask");
  require(a.out_dir, "--out-dir");
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (a.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (a.stride < 1) throw UsageError("--stride must be >= 1");
  if (a.priority_factor < 1.0) throw UsageError("--priority-factor must be >= 1");

  const LabeledPair exemplar = load_pair(a.image, a.mask);
  const GridSpec spec = make_spec(a.output_size, exemplar, a.grid_ratio, a.overlap);
  const PatchDataset dataset = build_dataset(exemplar, spec, a.stride);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  err << "villus: " << dataset.size() << " dataset entries, " << spec.cell_count()
      << " cells per realization\n";

  const MatchOptions match{a.priority_factor, 1};
  std::vector<json> samples(static_cast<std::size_t>(a.n));
  std::mutex log_mutex;
  parallel_for(samples.size(), a.jobs, [&](std::size_t i) {
    const std::uint64_t s = sample_seed(a.seed, i);
    const auto r = reconstruct_traced(dataset, spec, reconstruct_stage_seed(s), match);
    save_image(r.pair.image, dir / sample_name(i, "img"));
    save_mask(r.pair.mask, dir / sample_name(i, "mask"));
    samples[i] = {{"index", i}, {"seed", s}, {"tiles", placements_json(r.placements)}};
    std::lock_guard lock(log_mutex);
    err << "villus: wrote sample " << i << "\n";
  });

  json manifest = manifest_header("reconstruct", a.seed, opts);
  manifest["grid"] = spec;
  manifest["dataset_entries"] = dataset.size();
  manifest["inputs"] = {file_entry(a.image), file_entry(a.mask)};
  json outputs = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    outputs.push_back(file_entry(dir / sample_name(i, "img"), dir));
    outputs.push_back(file_entry(dir / sample_name(i, "mask"), dir));
  }
  manifest["outputs"] = outputs;
  manifest["samples"] = samples;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  out << json{{"command", "reconstruct"}, {"samples", a.n}, {"out_dir", a.out_dir},
              {"manifest", (dir / "manifest.json").string()}}.dump()
      << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- augment

struct AugmentArgs {
  ReconstructArgs r;
  std::string method = "proposed";
  std::string order = "base-first";
  double color_shift_limit = 0.10;
  double zoom_max = 1.5;
  double rotation_max = 10.0;
  bool no_color_shift = false;
  bool no_zoom = false;
  bool no_rotation = false;
  bool no_flip = false;
  bool no_elastic = false;
  bool elastic_y_uses_y = false;
};

void add_augment(CLI::App& app, OptionSet& o, AugmentArgs& a) {
  add_reconstruct(app, o, a.r);
  o.option("--method", a.method, "base | proposed");
  o.option("--order", a.order, "base-first | reconstruct-first (proposed arm)");
  o.option("--color-shift-limit", a.color_shift_limit, "Max per-channel color shift fraction");
  o.option("--zoom-max", a.zoom_max, "Max zoom factor");
  o.option("--rotation-max", a.rotation_max, "Max clockwise rotation (degrees, exclusive)");
  o.flag("--no-color-shift", a.no_color_shift, "Disable color shift");
  o.flag("--no-zoom", a.no_zoom, "Disable zoom");
  o.flag("--no-rotation", a.no_rotation, "Disable rotation");
  o.flag("--no-flip", a.no_flip, "Disable flips");
  o.flag("--no-elastic", a.no_elastic, "Disable elastic deformation");
  o.flag("--elastic-y-uses-y", a.elastic_y_uses_y, "Drive vertical elastic displacement by the row");
}

int run_augment(const AugmentArgs& a, const OptionSet& opts, std::ostream& out, std::ostream& err) {
  const ReconstructArgs& r = a.r;
  require(r.image, "--image");
  require(r.mask, "--mask");
  require(r.out_dir, "--out-dir");
  if (r.n < 1) throw UsageError("--n must be >= 1");
  if (r.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (a.method != "base" && a.method != "proposed") throw UsageError("--method must be base or proposed");
  if (a.order != "base-first" && a.order != "reconstruct-first")
    throw UsageError("--order must be base-first or reconstruct-first");

  BaseAugmentConfig base;
  base.color_shift_limit = a.color_shift_limit;
  base.zoom_max = a.zoom_max;
  base.rotation_max = a.rotation_max;
  base.enable_color_shift = !a.no_color_shift;
  base.enable_zoom = !a.no_zoom;
  base.enable_rotation = !a.no_rotation;
  base.enable_flip = !a.no_flip;
  base.enable_elastic = !a.no_elastic;
  base.elastic_y_uses_y = a.elastic_y_uses_y;
  base.seed = r.seed;
  try {
    base.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const LabeledPair exemplar = load_pair(r.image, r.mask);
  BatchOptions batch;
  batch.mode = a.method == "base" ? BatchMode::kBaseOnly : BatchMode::kProposed;
  batch.order = a.order == "base-first" ? BatchOrder::kBaseThenReconstruct : BatchOrder::kReconstructThenBase;
  batch.reconstruct.stride = r.stride;
  batch.reconstruct.match.priority_factor = r.priority_factor;
  GridSpec spec{};
  if (batch.mode == BatchMode::kProposed) spec = make_spec(r.output_size, exemplar, r.grid_ratio, r.overlap);

  const fs::path dir(r.out_dir);
  fs::create_directories(dir);
  std::vector<json> samples(static_cast<std::size_t>(r.n));
  std::mutex log_mutex;
  parallel_for(samples.size(), r.jobs, [&](std::size_t i) {
    const BatchSample s = generate_sample(exemplar, spec, base, r.seed, i, batch);
    save_image(s.pair.image, dir / sample_name(i, "img"));
    save_mask(s.pair.mask, dir / sample_name(i, "mask"));
    samples[i] = {{"index", i}, {"seed", s.seed}, {"draw", s.draw}};
    if (!s.placements.empty()) samples[i]["tiles"] = placements_json(s.placements);
    std::lock_guard lock(log_mutex);
    err << "villus: wrote sample " << i << "\n";
  });

  json manifest = manifest_header("augment", r.seed, opts);
  manifest["base_config"] = base;
  if (batch.mode == BatchMode::kProposed) manifest["grid"] = spec;
  manifest["inputs"] = {file_entry(r.image), file_entry(r.mask)};
  json outputs = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    outputs.push_back(file_entry(dir / sample_name(i, "img"), dir));
    outputs.push_back(file_entry(dir / sample_name(i, "mask"), dir));
  }
  manifest["outputs"] = outputs;
  manifest["samples"] = samples;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  out << json{{"command", "augment"}, {"method", a.method}, {"samples", r.n},
              {"out_dir", r.out_dir}, {"manifest", (dir / "manifest.json").string()}}.dump()
      << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input, out_dir;
  std::string suffix = ".png";
  std::string tag = "proposed";
  double h_min = kDefaultHMin;
  bool cloud = false;
  bool hist = false;
  int jobs = 1;
};

void add_analyze(CLI::App&, OptionSet& o, AnalyzeArgs& a) {
  o.option("--input", a.input, "Mask PNG or directory of mask PNGs");
  o.option("--out-dir", a.out_dir, "Directory for reports; omitted = reports on stdout");
  o.option("--suffix", a.suffix, "File-name suffix selecting masks inside a directory");
  o.option("--tag", a.tag, "Feature-point tag: training | validation | base_case | proposed");
  o.option("--h-min", a.h_min, "h-maxima depth for chamber seeds (px)");
  o.flag("--cloud", a.cloud, "Write the feature-point CSV and hull-area summary");
  o.flag("--hist", a.hist, "Write radius-distribution CSVs");
  o.option("--jobs", a.jobs, "Worker threads");
}

int run_analyze(const AnalyzeArgs& a, const OptionSet&, std::ostream& out, std::ostream& err) {
  require(a.input, "--input");
  if (a.h_min < 0) throw UsageError("--h-min must be >= 0");
  if (a.jobs < 1) throw UsageError("--jobs must be >= 1");
  if ((a.cloud || a.hist) && a.out_dir.empty()) throw UsageError("--cloud and --hist need --out-dir");
  SourceTag tag;
  try {
    tag = source_tag_from_string(a.tag);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  std::vector<fs::path> files;
  const fs::path input(a.input);
  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input)) {
      const std::string name = entry.path().filename().string();
      if (entry.is_regular_file() && name.size() >= a.suffix.size() &&
          name.compare(name.size() - a.suffix.size(), a.suffix.size(), a.suffix) == 0)
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no '*" + a.suffix + "' masks in " + a.input);
  } else if (fs::is_regular_file(input)) {
    files.push_back(input);
  } else {
    throw UsageError(a.input + " does not exist");
  }

  std::vector<BinaryMask> masks(files.size());
  std::vector<MorphometricsReport> reports(files.size());
  parallel_for(files.size(), a.jobs, [&](std::size_t i) {
    masks[i] = load_mask(files[i]);
    reports[i] = morphometrics(masks[i], a.h_min);
  });

  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.stem().string());
  json summary{{"command", "analyze"}, {"count", files.size()}};

  if (!a.out_dir.empty()) {
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    for (std::size_t i = 0; i < files.size(); ++i) {
      json report = reports[i];
      report["source"] = files[i].string();
      write_text(dir / (names[i] + ".json"), report.dump(2) + "\n");
      if (a.hist) {
        std::ostringstream csv;
        write_radius_csv(csv, reports[i].radius_distribution);
        write_text(dir / (names[i] + "_radius.csv"), csv.str());
      }
    }
    summary["out_dir"] = a.out_dir;
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < files.size(); ++i) {
      json report = reports[i];
      report["source"] = files[i].string();
      rows.push_back(report);
    }
    summary["reports"] = rows;
  }

  if (a.cloud) {
    const auto points = feature_cloud(masks, tag, a.jobs);
    std::ostringstream csv;
    write_feature_csv(csv, points, names);
    const fs::path dir(a.out_dir);
    write_text(dir / "cloud.csv", csv.str());
    json cloud{{"points", points.size()}, {"tag", a.tag}};
    try {
      cloud["hull_area"] = hull_area(points);
    } catch (const DegenerateCloud& e) {
      cloud["hull_area"] = nullptr;
      cloud["hull_error"] = e.what();
    }
    cloud["bounding_box_area"] = bounding_box_area(points);
    write_text(dir / "cloud_summary.json", cloud.dump(2) + "\n");
    summary["cloud"] = cloud;
  }
  err << "villus: analyzed " << files.size() << " mask(s)\n";
  out << summary.dump() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string image, mask, out_dir;
  std::string ratios = "1..20";
  int repeats = 20;
  std::uint64_t seed = 0;
  int overlap = 5;
  int stride = kDefaultStride;
  double priority_factor = kDefaultPriorityFactor;
  int output_size = 0;
  bool plot = false;
  int jobs = 1;
};

void add_sweep(CLI::App&, OptionSet& o, SweepArgs& a) {
  o.option("--image", a.image, "Exemplar RGB PNG");
  o.option("--mask", a.mask, "Exemplar two-level mask PNG");
  o.option("--out-dir", a.out_dir, "Output directory");
  o.option("--ratios", a.ratios, "Grid ratios, e.g. 1..20 or 1,6,20");
  o.option("--repeats", a.repeats, "Reconstructions per ratio");
  o.option("--seed", a.seed, "Root seed");
  o.option("--overlap", a.overlap, "Overlap between neighbouring cells (px)");
  o.option("--stride", a.stride, "Sliding-window step for the patch dataset (px)");
  o.option("--priority-factor", a.priority_factor, "No-flip preference factor (>= 1)");
  o.option("--output-size", a.output_size, "Output side length; 0 = exemplar size");
  o.flag("--plot", a.plot, "Also write a gnuplot script");
  o.option("--jobs", a.jobs, "Worker threads");
}

int run_sweep(const SweepArgs& a, const OptionSet& opts, std::ostream& out, std::ostream& err) {
  require(a.image, "--image");
  require(a.mask, "--mask");
  require(a.out_dir, "--out-dir");
  if (a.repeats < 1) throw UsageError("--repeats must be >= 1");
  if (a.jobs < 1) throw UsageError("--jobs must be >= 1");
  if (a.priority_factor < 1.0) throw UsageError("--priority-factor must be >= 1");
  const std::vector<int> ratios = parse_ratios(a.ratios);

  const LabeledPair exemplar = load_pair(a.image, a.mask);
  for (int r : ratios) make_spec(a.output_size, exemplar, r, a.overlap);

  SweepOptions options;
  options.output_size = a.output_size;
  options.overlap = a.overlap;
  options.reconstruct.stride = a.stride;
  options.reconstruct.match.priority_factor = a.priority_factor;
  options.jobs = a.jobs;
  err << "villus: sweeping " << ratios.size() << " ratios x " << a.repeats << " repeats\n";
  const auto results = grid_sweep(exemplar, ratios, a.repeats, a.seed, options);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::ostringstream csv;
  write_sweep_csv(csv, results);
  write_text(dir / "sweep.csv", csv.str());
  const json summary = sweep_summary(results);
  write_text(dir / "sweep_summary.json", summary.dump(2) + "\n");
  json outputs = json::array({file_entry(dir / "sweep.csv", dir), file_entry(dir / "sweep_summary.json", dir)});
  if (a.plot) {
    write_text(dir / "sweep.gp", sweep_plot_script("sweep.csv"));
    outputs.push_back(file_entry(dir / "sweep.gp", dir));
  }

  json manifest = manifest_header("sweep", a.seed, opts);
  manifest["ratios"] = ratios;
  manifest["inputs"] = {file_entry(a.image), file_entry(a.mask)};
  manifest["outputs"] = outputs;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");

  json line{{"command", "sweep"}, {"ratios", ratios.size()}, {"repeats", a.repeats},
            {"out_dir", a.out_dir}};
  if (summary.contains("spearman_specific_surface")) {
    line["spearman_volume_fraction"] = summary["spearman_volume_fraction"];
    line["spearman_specific_surface"] = summary["spearman_specific_surface"];
  }
  out << line.dump() << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paired histology image/mask synthesis and intervillous morphometrics", "villus"};
  app.set_version_flag("--version", VILLUS_VERSION);
  app.require_subcommand(1);

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "Synthesize realizations by patch reconstruction");
  CLI::App* augment = app.add_subcommand("augment", "Generate a base-case or proposed augmentation arm");
  CLI::App* analyze = app.add_subcommand("analyze", "Morphometrics of one mask or a directory of masks");
  CLI::App* sweep = app.add_subcommand("sweep", "Grid-ratio sensitivity sweep");

  OptionSet reconstruct_opts(reconstruct), augment_opts(augment), analyze_opts(analyze), sweep_opts(sweep);
  ReconstructArgs reconstruct_args;
  AugmentArgs augment_args;
  AnalyzeArgs analyze_args;
  SweepArgs sweep_args;
  add_reconstruct(*reconstruct, reconstruct_opts, reconstruct_args);
  add_augment(*augment, augment_opts, augment_args);
  add_analyze(*analyze, analyze_opts, analyze_args);
  add_sweep(*sweep, sweep_opts, sweep_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << VILLUS_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "villus: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (reconstruct->parsed()) {
      reconstruct_opts.apply_config();
      return run_reconstruct(reconstruct_args, reconstruct_opts, out, err);
    }
    if (augment->parsed()) {
      augment_opts.apply_config();
      return run_augment(augment_args, augment_opts, out, err);
    }
    if (analyze->parsed()) {
      analyze_opts.apply_config();
      return run_analyze(analyze_args, analyze_opts, out, err);
    }
    sweep_opts.apply_config();
    return run_sweep(sweep_args, sweep_opts, out, err);
  } catch (const UsageError& e) {
    err << "villus: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "villus: error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace villus::cli
