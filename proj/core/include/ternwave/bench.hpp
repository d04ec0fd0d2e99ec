#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ternwave/compression.hpp"

namespace ternwave {

struct RunConfig {
  std::filesystem::path dataset;
  std::vector<WaveletKind> wavelets{WaveletKind::TernaryI, WaveletKind::TernaryII};
  WaveletKind baseline = WaveletKind::Cdf97;
  std::vector<double> targets{QualityTarget::kHigh};
  ThresholdScope scope = ThresholdScope::Global;
  MsSsimChannels channels = MsSsimChannels::Y;
  std::size_t jobs = 1;
  std::size_t guard_window = 8;
  std::optional<std::filesystem::path> out_csv;
  std::optional<std::filesystem::path> summary_json;
  std::optional<std::filesystem::path> boxplot_data;
  std::optional<std::filesystem::path> cache_dir;

  /// Throws ConfigError.
  void validate() const;
  /// Wavelets that need a search: the selection (deduplicated, in order)
  /// followed by the baseline if it was not selected.
  std::vector<WaveletKind> search_wavelets() const;
};

/// One (image, wavelet, target) work unit.
struct UnitResult {
  std::string image_id;
  std::size_t width = 0;
  std::size_t height = 0;
  WaveletKind wavelet = WaveletKind::Cdf97;
  double target = 0.0;
  std::size_t m_min = 0;
  std::size_t total = 0;
  double achieved = 0.0;
  double achieved_below = 0.0;
  bool non_monotone = false;
  bool unattainable = false;
  bool cached = false;  // not part of any report

  std::string flags() const;
};

struct BoxStats {
  std::size_t count = 0;
  double median = 0.0, q25 = 0.0, q75 = 0.0;
  double min = 0.0, max = 0.0;
  double whisker_lo = 0.0, whisker_hi = 0.0;  // extreme non-outliers
  std::vector<std::size_t> outliers;            // indices into the input
};

/// Linear-interpolation quartiles (the "type 7" rule); outliers lie more
/// than 1.5 IQR outside [q25, q75]. Throws InvalidArgument on empty input.
BoxStats summarize(const std::vector<double>& values);

struct SummaryStats {
  WaveletKind ternary = WaveletKind::TernaryI;
  WaveletKind baseline = WaveletKind::Cdf97;
  double target = 0.0;
  BoxStats beta;
  std::vector<std::string> outlier_ids;
  std::vector<double> outlier_values;
};

struct BenchmarkRun {
  std::vector<UnitResult> units;         // ordered by image, wavelet, target
  std::vector<BenchmarkRecord> records;  // ordered by image, wavelet, target
  std::vector<SummaryStats> summary;     // ordered by wavelet, target
  std::vector<std::string> warnings;
};

using LogFn = std::function<void(const std::string&)>;

/// Throws ConfigError or DatasetError. Undecodable images are skipped with a
/// warning.
BenchmarkRun run_benchmark(const RunConfig& config, const LogFn& log = {});

/// Regular files with a pixmap or PNG extension, sorted by file name.
std::vector<std::filesystem::path> list_dataset(const std::filesystem::path& dir);

/// "%.9g".
std::string format_float(double v);

void write_results_csv(std::ostream& out, const std::vector<UnitResult>& units);
/// Parses what write_results_csv produced. Throws InvalidArgument.
std::vector<UnitResult> parse_results_csv(std::istream& in);

std::string summary_json(const BenchmarkRun& run, const RunConfig& config);
void write_boxplot_data(std::ostream& out, const BenchmarkRun& run);

/// Writes whichever of CSV / JSON summary / box-plot data the config names.
void emit_reports(const BenchmarkRun& run, const RunConfig& config);

/// FNV-1a over the image samples and every setting that affects a unit.
std::uint64_t cache_key(const RasterImage& image, WaveletKind wavelet, double target,
                        const RunConfig& config);

}  // namespace ternwave
