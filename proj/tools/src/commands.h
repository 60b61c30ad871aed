#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.h"
#include "imf/binary_frame.h"
#include "imf/metrics.h"

namespace imf::cli {

enum class FilterKind { kOmf, kNomf, kImc };
FilterKind parse_filter(std::string_view text);  // throws ConfigError

struct GenOptions {
  std::vector<int> locations = {1, 2, 3};
};

struct DenoiseOptions {
  std::filesystem::path input;
  FilterKind filter = FilterKind::kNomf;
};

struct CharacterizeOptions {
  std::vector<int> ks = {5};
  std::vector<double> vdds = {0.7, 0.8, 1.0, 1.2};
  std::string patterns = "all";  // "all" or a sample size
};

struct TrackEvalOptions {
  std::vector<std::filesystem::path> recordings;  // empty: synthetic dataset
};

struct EvalOptions {
  std::vector<std::filesystem::path> predictions;
  std::vector<std::filesystem::path> ground_truth;
};

// Each command writes its files under cfg.out and a short summary to `log`.
// Errors propagate as imf::Error.
void cmd_gen(const RunConfig& cfg, const GenOptions& opts, std::ostream& log);
void cmd_denoise(const RunConfig& cfg, const DenoiseOptions& opts, std::ostream& log);
void cmd_characterize(const RunConfig& cfg, const CharacterizeOptions& opts, std::ostream& log);
void cmd_perf(const RunConfig& cfg, std::ostream& log);
void cmd_track_eval(const RunConfig& cfg, const TrackEvalOptions& opts, std::ostream& log);
void cmd_eval(const RunConfig& cfg, const EvalOptions& opts, std::ostream& log);
void cmd_calibrate(const RunConfig& cfg, std::ostream& log);

// Frames from a PBM file, a directory of PBMs, or an event CSV.
std::vector<BinaryFrame> load_frames(const std::filesystem::path& input,
                                     const FrameConfig& frame_cfg);

// A recording directory holds gt.csv plus either frames/ (PBM) or
// events.csv. The directory name becomes the recording id.
struct RecordingInput {
  std::string id;
  std::vector<BinaryFrame> frames;
  std::vector<Annotation> ground_truth;
};
RecordingInput load_recording(const std::filesystem::path& dir, const FrameConfig& frame_cfg);

// The synthetic dataset used when track-eval gets no recordings: one
// recording per location, seeded cfg.seed + location - 1.
std::vector<RecordingInput> synthetic_dataset(const RunConfig& cfg,
                                              const std::vector<int>& locations = {1, 2, 3});

struct TrackEvalResult {
  F1Curve omf;
  F1Curve nomf;
  double auc_difference() const noexcept { return omf.auc - nomf.auc; }
};
TrackEvalResult track_eval(std::span<const RecordingInput> recordings, const RunConfig& cfg);

// Full command-line entry point. Returns the process exit status: 0 on
// success, 2 on usage or config errors, 1 on runtime failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace imf::cli
