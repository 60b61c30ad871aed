#include "commands.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "imf/characterization.h"
#include "imf/error.h"
#include "imf/filters.h"
#include "imf/pbm.h"

namespace imf::cli {
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string frame_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%05zu.pbm", i);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

// Replaces any frames left from an earlier run so directory reads stay exact.
void write_frames(const fs::path& dir, std::span<const BinaryFrame> frames) {
  fs::create_directories(dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("frame_") && entry.path().extension() == ".pbm") {
      fs::remove(entry.path());
    }
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    write_pbm_file(dir / frame_name(i), frames[i]);
  }
}

BinaryFrame software_filter(const BinaryFrame& frame, FilterKind kind, int n) {
  return kind == FilterKind::kOmf ? median_filter_overlap(frame, KernelSpec{n})
                                  : nomf(frame, KernelSpec{n});
}

}  // namespace

FilterKind parse_filter(std::string_view text) {
  if (text == "omf") return FilterKind::kOmf;
  if (text == "nomf") return FilterKind::kNomf;
  if (text == "imc") return FilterKind::kImc;
  throw ConfigError("filter", "expected omf, nomf or imc, got '" + std::string(text) + "'");
}

std::vector<BinaryFrame> load_frames(const fs::path& input, const FrameConfig& frame_cfg) {
  if (fs::is_directory(input)) return read_pbm_directory(input);
  if (!fs::exists(input)) throw Error("input not found: " + input.string());
  if (input.extension() == ".pbm") return {read_pbm_file(input)};
  std::ifstream in(input);
  if (!in) throw Error("cannot open " + input.string());
  const std::vector<Event> events = parse_event_stream(in);
  return aggregate_frames(events, frame_cfg);
}

RecordingInput load_recording(const fs::path& dir, const FrameConfig& frame_cfg) {
  RecordingInput rec;
  rec.id = dir.filename().string();
  if (rec.id.empty()) rec.id = dir.parent_path().filename().string();
  if (fs::is_directory(dir / "frames")) {
    rec.frames = read_pbm_directory(dir / "frames");
  } else if (fs::exists(dir / "events.csv")) {
    rec.frames = load_frames(dir / "events.csv", frame_cfg);
  } else {
    throw Error("recording " + dir.string() + " has neither frames/ nor events.csv");
  }
  rec.ground_truth = read_annotations_file(dir / "gt.csv");
  return rec;
}

std::vector<RecordingInput> synthetic_dataset(const RunConfig& cfg,
                                              const std::vector<int>& locations) {
  std::vector<RecordingInput> out;
  for (int loc : locations) {
    SyntheticConfig s = cfg.synthetic;
    s.location = loc;
    s.seed = cfg.seed + static_cast<std::uint64_t>(loc - 1);
    SyntheticRecording rec = generate_recording(s);
    out.push_back({"loc" + std::to_string(loc), std::move(rec.frames),
                   std::move(rec.ground_truth)});
  }
  return out;
}

TrackEvalResult track_eval(std::span<const RecordingInput> recordings, const RunConfig& cfg) {
  std::vector<Recording> omf;
  std::vector<Recording> nomf_runs;
  for (const RecordingInput& rec : recordings) {
    std::vector<BinaryFrame> a;
    std::vector<BinaryFrame> b;
    for (const BinaryFrame& f : rec.frames) {
      a.push_back(software_filter(f, FilterKind::kOmf, cfg.n));
      b.push_back(software_filter(f, FilterKind::kNomf, cfg.n));
    }
    omf.push_back({rec.id, track_frames(a, cfg.tracker), rec.ground_truth});
    nomf_runs.push_back({rec.id, track_frames(b, cfg.tracker), rec.ground_truth});
  }
  const std::vector<double> thr = default_iou_thresholds();
  return {f1_curve_auc(omf, thr), f1_curve_auc(nomf_runs, thr)};
}

void cmd_gen(const RunConfig& cfg, const GenOptions& opts, std::ostream& log) {
  for (int loc : opts.locations) {
    SyntheticConfig s = cfg.synthetic;
    s.location = loc;
    s.seed = cfg.seed + static_cast<std::uint64_t>(loc - 1);
    const SyntheticRecording rec = generate_recording(s);
    const fs::path dir = cfg.out / ("loc" + std::to_string(loc));
    write_frames(dir / "frames", rec.frames);
    write_annotations_file(dir / "gt.csv", rec.ground_truth);

    const std::vector<Event> events = frames_to_events(rec.frames, cfg.frame.t_f_us, s.seed);
    std::ofstream ev = open_out(dir / "events.csv");
    write_event_stream(ev, events);

    int objects = 0;
    for (const Annotation& a : rec.ground_truth) objects = std::max(objects, a.track_id + 1);
    log << dir.string() << ": " << rec.frames.size() << " frames, " << objects
        << " objects, " << events.size() << " events\n";
  }
}

void cmd_denoise(const RunConfig& cfg, const DenoiseOptions& opts, std::ostream& log) {
  const std::vector<BinaryFrame> frames = load_frames(opts.input, cfg.frame);
  std::vector<BinaryFrame> filtered;
  filtered.reserve(frames.size());

  if (opts.filter != FilterKind::kImc) {
    for (const BinaryFrame& f : frames) filtered.push_back(software_filter(f, opts.filter, cfg.n));
    write_frames(cfg.out / "frames", filtered);
    log << "filtered " << frames.size() << " frames\n";
    return;
  }

  const DeviceParams device = cfg.device();
  std::ofstream report = open_out(cfg.out / "report.csv");
  report << "frame_index,bit_errors,ber,patches,patch_errors,cycles,rho_plus_lambda,"
            "valid_frame\n";
  std::int64_t errors = 0;
  std::int64_t pixels = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const BinaryFrame& frame = frames[i];
    MacroGeometry geometry = cfg.macro;
    geometry.cols = frame.width();
    geometry.rows = frame.height();
    MacroState macro = init_macro(geometry, device, cfg.variation(i));
    macro.clear_memory();
    macro.load_frame(frame);
    const FilterReport r = macro.filter_in_memory(cfg.n, device);
    BinaryFrame out = macro.read_frame(frame.width(), frame.height());
    const std::size_t diff = hamming_distance(out, nomf(frame, KernelSpec{cfg.n}));
    errors += static_cast<std::int64_t>(diff);
    pixels += static_cast<std::int64_t>(frame.pixel_count());
    report << i << ',' << diff << ','
           << num(static_cast<double>(diff) / static_cast<double>(frame.pixel_count())) << ','
           << r.patches << ',' << r.patch_errors << ',' << r.cycles << ','
           << num(r.mean_rho_plus_lambda()) << ',' << (r.valid_frame ? 1 : 0) << '\n';
    filtered.push_back(std::move(out));
  }
  write_frames(cfg.out / "frames", filtered);
  log << "filtered " << frames.size() << " frames in memory, " << errors
      << " bit errors, ber = " << num(pixels ? static_cast<double>(errors) / pixels : 0.0)
      << '\n';
}

void cmd_characterize(const RunConfig& cfg, const CharacterizeOptions& opts,
                      std::ostream& log) {
  PatternSelection selection = PatternSelection::every();
  if (opts.patterns != "all") {
    int count = 0;
    const char* end = opts.patterns.data() + opts.patterns.size();
    auto [ptr, ec] = std::from_chars(opts.patterns.data(), end, count);
    if (ec != std::errc() || ptr != end || count < 1) {
      throw ConfigError("patterns", "expected 'all' or a positive count");
    }
    selection = PatternSelection::sample(count, cfg.seed);
  }

  std::ofstream csv = open_out(cfg.out / "characterize.csv");
  csv << "vdd,temp_c,corner,n,k,pattern_id,trials,ber\n";
  for (double vdd : opts.vdds) {
    OperatingPoint op = cfg.op;
    op.vdd = vdd;
    const DeviceParams device = cfg.model.device_at(op);
    const CellVariation variation = cfg.model.variation_at(op, cfg.seed);
    for (int k : opts.ks) {
      const BerStat stat =
          ber_pattern_sweep(cfg.n, k, device, variation, cfg.trials, selection, cfg.macro);
      for (const PatternBer& p : stat.patterns) {
        csv << num(vdd) << ',' << num(op.temperature_c) << ',' << to_string(op.corner) << ','
            << cfg.n << ',' << k << ',' << p.pattern_id << ',' << cfg.trials << ','
            << num(p.ber) << '\n';
      }
      log << "vdd " << num(vdd) << " k " << k << ": " << stat.patterns.size()
          << " patterns, ber = " << num(stat.ber) << '\n';
    }
  }
}

void cmd_perf(const RunConfig& cfg, std::ostream& log) {
  struct Row {
    std::string metric;
    double value;
    std::string unit;
  };
  std::vector<Row> rows;
  const WorkloadParams& w = cfg.workload;

  for (FilterMethod m : {FilterMethod::kNNFilt, FilterMethod::kMedianFilter, FilterMethod::kNomf,
                         FilterMethod::kNomfImc}) {
    const FilterCost c = op_counts(m, w);
    const std::string p(to_string(m));
    rows.push_back({p + "_reads", static_cast<double>(c.reads), "count"});
    rows.push_back({p + "_writes", static_cast<double>(c.writes), "count"});
    rows.push_back({p + "_ops", static_cast<double>(c.ops), "count"});
    rows.push_back({p + "_sram_cells", static_cast<double>(c.sram_cells), "count"});
  }
  rows.push_back({"beta_t_gamma_over_alpha", w.beta_t * w.gamma / w.alpha, "ratio"});

  const std::int64_t imf_macro =
      digital_latency(DigitalArch::kIMF, cfg.macro.cols, cfg.macro.rows, w.n);
  for (DigitalArch a : {DigitalArch::kMF, DigitalArch::kMFPR, DigitalArch::kMFRB,
                        DigitalArch::kMFPRRB, DigitalArch::kIMF}) {
    const std::int64_t cycles = digital_latency(a, cfg.macro.cols, cfg.macro.rows, w.n);
    const std::string p(to_string(a));
    rows.push_back({p + "_latency", static_cast<double>(cycles), "cycles"});
    rows.push_back({p + "_over_imf", static_cast<double>(cycles) / imf_macro, "ratio"});
  }
  const double frame_us =
      static_cast<double>(digital_latency(DigitalArch::kIMF, w.width, w.height, w.n)) /
      cfg.clock_hz * 1e6;
  rows.push_back({"imf_frame_time", frame_us, "us"});
  rows.push_back({"imf_frame_rate", 1.0 / frame_us, "frames/us"});

  const double vdd = cfg.op.vdd;
  const double e_mf = baseline_energy(EnergyArch::kMF, w, cfg.energy, vdd);
  const double e_mfrb = baseline_energy(EnergyArch::kMFRB, w, cfg.energy, vdd);
  const double e_imc = baseline_energy(EnergyArch::kImcNomf, w, cfg.energy, vdd);
  rows.push_back({"energy_mf", e_mf * 1e9, "nJ"});
  rows.push_back({"energy_mfrb", e_mfrb * 1e9, "nJ"});
  rows.push_back({"energy_imc_nomf", e_imc * 1e9, "nJ"});
  rows.push_back({"energy_ratio_mf_imc", e_mf / e_imc, "ratio"});
  rows.push_back({"energy_ratio_mfrb_imc", e_mfrb / e_imc, "ratio"});

  OperatingPoint cop = cfg.op;
  cop.vdd = cfg.current_vdd;
  const CurrentBreakdown cur = imc_current(w, cfg.model.device_at(cop), cfg.current_f_hz,
                                           cfg.rho_lambda_mean, 0.0, 0.0, cfg.macro.cols);
  rows.push_back({"i_ch", cur.i_ch * 1e3, "mA"});
  rows.push_back({"i_bitflip", cur.i_bitflip * 1e3, "mA"});

  const Throughput t =
      throughput_efficiency(cfg.clock_hz, w.n, cfg.macro.cols, cfg.energy.e_imc_pixel);
  rows.push_back({"throughput", t.gops, "GOPS"});
  rows.push_back({"efficiency", t.tops_per_w, "TOPS/W"});

  const SystemEnergy s_mf = system_energy_per_frame(w, cfg.energy, e_mf);
  const SystemEnergy s_mfrb = system_energy_per_frame(w, cfg.energy, e_mfrb);
  const SystemEnergy s_imc = system_energy_per_frame(w, cfg.energy, e_imc);
  rows.push_back({"system_energy_imc_nomf", s_imc.average * 1e9, "nJ"});
  rows.push_back({"savings_mf", s_mf.savings * 100.0, "%"});
  rows.push_back({"savings_mfrb", s_mfrb.savings * 100.0, "%"});
  rows.push_back({"savings_imc_nomf", s_imc.savings * 100.0, "%"});

  std::ofstream csv = open_out(cfg.out / "perf.csv");
  csv << "metric,value,unit\n";
  nlohmann::ordered_json json;
  for (const Row& r : rows) {
    csv << r.metric << ',' << num(r.value) << ',' << r.unit << '\n';
    json[r.metric] = {{"value", r.value}, {"unit", r.unit}};
  }
  std::ofstream js = open_out(cfg.out / "perf.json");
  js << json.dump(2) << '\n';

  char line[128];
  for (const Row& r : rows) {
    std::snprintf(line, sizeof line, "%-28s %.6g %s\n", r.metric.c_str(), r.value,
                  r.unit.c_str());
    log << line;
  }
  std::snprintf(line, sizeof line, "%.1f GOPS, %.1f TOPS/W\n", t.gops, t.tops_per_w);
  log << line;
}

void cmd_track_eval(const RunConfig& cfg, const TrackEvalOptions& opts, std::ostream& log) {
  std::vector<RecordingInput> recordings;
  if (opts.recordings.empty()) {
    recordings = synthetic_dataset(cfg);
  } else {
    for (const fs::path& dir : opts.recordings) {
      recordings.push_back(load_recording(dir, cfg.frame));
    }
  }
  const TrackEvalResult r = track_eval(recordings, cfg);

  std::ofstream csv = open_out(cfg.out / "track_eval.csv");
  csv << "thr,omf_weighted_f1,nomf_weighted_f1\n";
  for (std::size_t i = 0; i < r.omf.thresholds.size(); ++i) {
    csv << num(r.omf.thresholds[i]) << ',' << num(r.omf.weighted_f1[i]) << ','
        << num(r.nomf.weighted_f1[i]) << '\n';
  }
  log << "recordings " << recordings.size() << '\n'
      << "auc_omf " << num(r.omf.auc) << '\n'
      << "auc_nomf " << num(r.nomf.auc) << '\n'
      << "auc_difference " << num(r.auc_difference()) << '\n';
}

void cmd_eval(const RunConfig& cfg, const EvalOptions& opts, std::ostream& log) {
  if (opts.predictions.empty() || opts.predictions.size() != opts.ground_truth.size()) {
    throw ConfigError("pred", "need one --gt per --pred");
  }
  std::vector<Recording> recs;
  for (std::size_t i = 0; i < opts.predictions.size(); ++i) {
    recs.push_back({opts.predictions[i].stem().string(),
                    read_annotations_file(opts.predictions[i]),
                    read_annotations_file(opts.ground_truth[i])});
  }
  const F1Curve curve = f1_curve_auc(recs, default_iou_thresholds());
  std::ofstream csv = open_out(cfg.out / "eval.csv");
  csv << "thr,weighted_f1\n";
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    csv << num(curve.thresholds[i]) << ',' << num(curve.weighted_f1[i]) << '\n';
  }
  log << "auc " << num(curve.auc) << '\n';
}

void cmd_calibrate(const RunConfig& cfg, std::ostream& log) {
  SyntheticConfig s = cfg.synthetic;
  s.frames = cfg.calib_frames;
  s.seed = cfg.seed;
  const SyntheticRecording rec = generate_recording(s);
  const CalibrationResult fit = calibrate_sigma(rec.frames, cfg.model, cfg.calib_target_ber,
                                                cfg.seed, cfg.n, cfg.calib_iterations);
  OverdriveModel model = cfg.model;
  model.sigma_ref = fit.sigma_ref;

  std::ofstream csv = open_out(cfg.out / "calibration.csv");
  csv << "vdd,sigma_i_over_mu,image_ber\n";
  log << "sigma_ref " << num(fit.sigma_ref) << " (target ber " << num(cfg.calib_target_ber)
      << ", fitted ber " << num(fit.ber) << ", " << fit.evaluations << " evaluations)\n";
  for (double vdd : {0.7, 0.8, 1.0, 1.2}) {
    OperatingPoint op = cfg.op;
    op.vdd = vdd;
    const CellVariation var = model.variation_at(op, cfg.seed);
    const ImageBerRun run = simulate_image_ber(rec.frames, model.device_at(op), var, cfg.n);
    csv << num(vdd) << ',' << num(var.sigma_i_over_mu) << ',' << num(run.ber) << '\n';
    log << "vdd " << num(vdd) << " image ber " << num(run.ber) << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"In-memory median filtering for event-based binary images"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Flat key = value config file")
      ->check(CLI::ExistingFile);
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Base RNG seed");
  CLI::Option* out_opt = app.add_option("--out", out_dir, "Output directory");
  app.add_option("--set", overrides, "Config override key=value (repeatable)");

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write the synthetic traffic dataset");
  gen_cmd->add_option("--location", gen.locations, "Locations 1..3 (repeatable)")
      ->check(CLI::Range(1, 3));

  DenoiseOptions denoise;
  std::string filter = "nomf";
  CLI::App* denoise_cmd = app.add_subcommand("denoise", "Filter frames");
  denoise_cmd->add_option("--input", denoise.input, "PBM file, PBM directory or event CSV")
      ->required();
  denoise_cmd->add_option("--filter", filter, "omf | nomf | imc");

  DenoiseOptions simulate;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Filter frames in the simulated macro (denoise --filter imc)");
  simulate_cmd->alias("imc");
  simulate_cmd->add_option("--input", simulate.input, "PBM file, PBM directory or event CSV")
      ->required();

  CharacterizeOptions characterize;
  CLI::App* char_cmd = app.add_subcommand("characterize", "Per-pattern BER sweep");
  char_cmd->add_option("--k", characterize.ks, "Ones per patch (repeatable)");
  char_cmd->add_option("--vdd", characterize.vdds, "Supply voltages (repeatable)");
  char_cmd->add_option("--patterns", characterize.patterns, "all or a sample size");

  CLI::App* perf_cmd = app.add_subcommand("perf", "Analytic latency, energy and throughput");

  TrackEvalOptions track;
  CLI::App* track_cmd =
      app.add_subcommand("track-eval", "Weighted F1 of the tracker after OMF and NOMF");
  track_cmd->add_option("--recording", track.recordings,
                        "Recording directory (repeatable); default: synthetic dataset");

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Weighted F1 curve of prediction files");
  eval_cmd->add_option("--pred", eval.predictions, "Prediction CSV (repeatable)")->required();
  eval_cmd->add_option("--gt", eval.ground_truth, "Ground-truth CSV (repeatable)")->required();

  CLI::App* calib_cmd =
      app.add_subcommand("calibrate", "Fit the mismatch sigma to a target image BER");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(kv, "expected key=value");
      cfg.set(std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
    }
    if (*seed_opt) cfg.seed = seed;
    if (*out_opt) cfg.out = out_dir;
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen_cmd) {
      cmd_gen(cfg, gen, out);
    } else if (*denoise_cmd) {
      denoise.filter = parse_filter(filter);
      cmd_denoise(cfg, denoise, out);
    } else if (*simulate_cmd) {
      simulate.filter = FilterKind::kImc;
      cmd_denoise(cfg, simulate, out);
    } else if (*char_cmd) {
      cmd_characterize(cfg, characterize, out);
    } else if (*perf_cmd) {
      cmd_perf(cfg, out);
    } else if (*track_cmd) {
      cmd_track_eval(cfg, track, out);
    } else if (*eval_cmd) {
      cmd_eval(cfg, eval, out);
    } else if (*calib_cmd) {
      cmd_calibrate(cfg, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace imf::cli
