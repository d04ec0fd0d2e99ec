#include "ternwave/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ternwave/error.hpp"
#include "ternwave/pnm.hpp"

namespace ternwave {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  if (wavelets.empty()) throw ConfigError("no wavelets selected");
  if (targets.empty()) throw ConfigError("no quality targets given");
  for (double t : targets)
    if (!(t > 0.0 && t < 1.0))
      throw ConfigError("quality target " + format_float(t) + " is outside (0, 1)");
  if (jobs == 0) throw ConfigError("--jobs must be at least 1");
  if (dataset.empty()) throw ConfigError("no dataset directory given");
}

std::vector<WaveletKind> RunConfig::search_wavelets() const {
  std::vector<WaveletKind> out;
  for (WaveletKind w : wavelets)
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  if (std::find(out.begin(), out.end(), baseline) == out.end()) out.push_back(baseline);
  return out;
}

std::string UnitResult::flags() const {
  std::string f;
  auto add = [&](const char* s) {
    if (!f.empty()) f += ';';
    f += s;
  };
  if (non_monotone) add("non_monotone");
  if (unattainable) add("unattainable");
  return f;
}

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// ---------------------------------------------------------------------------

BoxStats summarize(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("summarize: no values");
  std::vector<double> s = values;
  std::sort(s.begin(), s.end());
  auto quantile = [&](double p) {
    const double h = (double(s.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - double(lo)) * (s[hi] - s[lo]);
  };
  BoxStats b;
  b.count = s.size();
  b.q25 = quantile(0.25);
  b.median = quantile(0.5);
  b.q75 = quantile(0.75);
  b.min = s.front();
  b.max = s.back();
  const double iqr = b.q75 - b.q25;
  const double lo = b.q25 - 1.5 * iqr, hi = b.q75 + 1.5 * iqr;
  b.whisker_lo = b.max;
  b.whisker_hi = b.min;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < lo || values[i] > hi) {
      b.outliers.push_back(i);
    } else {
      b.whisker_lo = std::min(b.whisker_lo, values[i]);
      b.whisker_hi = std::max(b.whisker_hi, values[i]);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------

std::vector<fs::path> list_dataset(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DatasetError(dir.string() + ": not a directory");
  static const std::set<std::string> kExt{".ppm", ".pgm", ".pnm", ".png"};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (kExt.count(ext)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (files.empty()) throw DatasetError(dir.string() + ": no images found");
  return files;
}

std::uint64_t cache_key(const RasterImage& image, WaveletKind wavelet, double target,
                        const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ull;
    }
  };
  auto feed_u64 = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      const auto byte = static_cast<unsigned char>(v >> (8 * i));
      feed(&byte, 1);
    }
  };
  auto feed_str = [&](std::string_view s) {
    feed_u64(s.size());
    feed(s.data(), s.size());
  };
  feed_str("ternwave-unit-v2");
  feed_u64(image.width);
  feed_u64(image.height);
  feed_u64(image.channels);
  feed_u64(image.maxval);
  for (std::uint16_t s : image.samples) {
    const unsigned char b[2] = {static_cast<unsigned char>(s & 0xff),
                                static_cast<unsigned char>(s >> 8)};
    feed(b, 2);
  }
  feed_str(to_string(wavelet));
  char t[40];
  std::snprintf(t, sizeof t, "%.17g", target);
  feed_str(t);
  feed_str(to_string(config.scope));
  feed_str(to_string(config.channels));
  feed_u64(config.guard_window);
  return h;
}

namespace {

struct Loaded {
  std::string id;
  RasterImage raster;
  ImagePlanes planes;
};

fs::path cache_file(const fs::path& dir, std::uint64_t key) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(key));
  return dir / name;
}

bool load_cached(const fs::path& file, UnitResult& u) {
  std::ifstream in(file);
  if (!in) return false;
  try {
    const json j = json::parse(in);
    u.m_min = j.at("m_min").get<std::size_t>();
    u.total = j.at("total").get<std::size_t>();
    u.achieved = j.at("achieved").get<double>();
    u.achieved_below =
        j.at("achieved_below").is_null() ? std::nan("") : j.at("achieved_below").get<double>();
    u.non_monotone = j.at("non_monotone").get<bool>();
    u.unattainable = j.at("unattainable").get<bool>();
    u.cached = true;
    return true;
  } catch (const json::exception&) {
    return false;
  }
}

void store_cached(const fs::path& file, const UnitResult& u) {
  json j;
  j["m_min"] = u.m_min;
  j["total"] = u.total;
  j["achieved"] = u.achieved;
  j["achieved_below"] = std::isnan(u.achieved_below) ? json(nullptr) : json(u.achieved_below);
  j["non_monotone"] = u.non_monotone;
  j["unattainable"] = u.unattainable;
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
    if (!out) return;
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
}

void compute_unit(const Loaded& img, UnitResult& u, const RunConfig& config) {
  CompressionOptions opt;
  opt.scope = config.scope;
  opt.channels = config.channels;
  opt.guard_window = config.guard_window;
  try {
    const CompressionResult r =
        min_coeffs_for_quality(img.planes, u.wavelet, QualityTarget(u.target), opt);
    u.m_min = r.m_min;
    u.total = r.total;
    u.achieved = r.achieved;
    u.achieved_below = r.achieved_below;
    u.non_monotone = r.non_monotone;
  } catch (const UnattainableQuality& e) {
    u.unattainable = true;
    u.total = img.planes.width * img.planes.height * 3;
    u.m_min = u.total;
    u.achieved = e.best();
    u.achieved_below = std::nan("");
  }
}

}  // namespace

BenchmarkRun run_benchmark(const RunConfig& config, const LogFn& log) {
  config.validate();
  BenchmarkRun run;
  std::mutex log_mutex;
  auto say = [&](const std::string& msg) {
    std::lock_guard lock(log_mutex);
    if (log) log(msg);
  };
  auto warn = [&](const std::string& msg) {
    run.warnings.push_back(msg);
    say("warning: " + msg);
  };

  std::vector<Loaded> images;
  for (const fs::path& file : list_dataset(config.dataset)) {
    try {
      Loaded img;
      img.id = file.filename().string();
      img.raster = read_image(file.string());
      img.planes = rgb_to_ycbcr(img.raster);
      const std::size_t window = MsSsimParams{}.window();
      if (img.planes.width < window || img.planes.height < window)
        throw DecodeError(file.string() + ": smaller than the MS-SSIM window");
      images.push_back(std::move(img));
    } catch (const DecodeError& e) {
      warn(std::string("skipping ") + e.what());
    }
  }
  if (images.empty()) throw DatasetError(config.dataset.string() + ": no decodable images");

  const auto wavelets = config.search_wavelets();
  struct Job {
    std::size_t image;
    UnitResult* unit;
  };
  run.units.reserve(images.size() * wavelets.size() * config.targets.size());
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (WaveletKind w : wavelets)
      for (double t : config.targets) {
        UnitResult u;
        u.image_id = images[i].id;
        u.width = images[i].planes.width;
        u.height = images[i].planes.height;
        u.wavelet = w;
        u.target = t;
        run.units.push_back(u);
      }
  for (std::size_t k = 0; k < run.units.size(); ++k)
    jobs.push_back({k / (wavelets.size() * config.targets.size()), &run.units[k]});

  if (config.cache_dir) fs::create_directories(*config.cache_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Loaded& img = images[jobs[k].image];
      UnitResult& u = *jobs[k].unit;
      std::optional<fs::path> file;
      if (config.cache_dir)
        file = cache_file(*config.cache_dir, cache_key(img.raster, u.wavelet, u.target, config));
      if (file && load_cached(*file, u)) continue;
      compute_unit(img, u, config);
      if (file) store_cached(*file, u);
      say(u.image_id + " " + std::string(to_string(u.wavelet)) + " @" + format_float(u.target) +
          ": M = " + std::to_string(u.m_min) + " / " + std::to_string(u.total));
    }
  };
  const std::size_t threads = std::min(config.jobs, jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::map<std::tuple<std::string, WaveletKind, double>, const UnitResult*> by_key;
  for (const auto& u : run.units) {
    by_key[{u.image_id, u.wavelet, u.target}] = &u;
    if (u.unattainable)
      warn(u.image_id + ": target " + format_float(u.target) + " unreachable with " +
           std::string(to_string(u.wavelet)));
  }

  std::vector<WaveletKind> selected;
  for (WaveletKind w : config.wavelets)
    if (std::find(selected.begin(), selected.end(), w) == selected.end()) selected.push_back(w);

  for (const Loaded& img : images)
    for (WaveletKind w : selected)
      for (double t : config.targets) {
        const UnitResult* tern = by_key.at({img.id, w, t});
        const UnitResult* base = by_key.at({img.id, config.baseline, t});
        if (tern->unattainable || base->unattainable || base->m_min == 0) continue;
        BenchmarkRecord r;
        r.image_id = img.id;
        r.ternary = w;
        r.baseline = config.baseline;
        r.target = t;
        r.m_tern = tern->m_min;
        r.m_cdf = base->m_min;
        r.beta_c = relative_performance(r.m_tern, r.m_cdf);
        run.records.push_back(r);
      }
  if (run.records.empty()) throw DatasetError("benchmark produced no comparable results");

  for (WaveletKind w : selected)
    for (double t : config.targets) {
      std::vector<double> betas;
      std::vector<std::string> ids;
      for (const auto& r : run.records)
        if (r.ternary == w && r.target == t) {
          betas.push_back(r.beta_c);
          ids.push_back(r.image_id);
        }
      if (betas.empty()) continue;
      SummaryStats s;
      s.ternary = w;
      s.baseline = config.baseline;
      s.target = t;
      s.beta = summarize(betas);
      for (std::size_t i : s.beta.outliers) {
        s.outlier_ids.push_back(ids[i]);
        s.outlier_values.push_back(betas[i]);
      }
      run.summary.push_back(std::move(s));
    }
  return run;
}

// ---------------------------------------------------------------------------

namespace {

const char* kCsvHeader =
    "image_id,width,height,wavelet,target,m_min,total_coeffs,achieved_msssim,flags";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<UnitResult>& units) {
  out << kCsvHeader << '\n';
  for (const auto& u : units)
    out << csv_field(u.image_id) << ',' << u.width << ',' << u.height << ','
        << to_string(u.wavelet) << ',' << format_float(u.target) << ',' << u.m_min << ','
        << u.total << ',' << format_float(u.achieved) << ',' << u.flags() << '\n';
}

std::vector<UnitResult> parse_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw InvalidArgument("results CSV: unexpected header");
  std::vector<UnitResult> units;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw InvalidArgument("results CSV: expected 9 fields in: " + line);
    UnitResult u;
    try {
      u.image_id = f[0];
      u.width = std::stoul(f[1]);
      u.height = std::stoul(f[2]);
      const auto w = parse_wavelet(f[3]);
      if (!w) throw InvalidArgument("unknown wavelet " + f[3]);
      u.wavelet = *w;
      u.target = std::stod(f[4]);
      u.m_min = std::stoul(f[5]);
      u.total = std::stoul(f[6]);
      u.achieved = std::stod(f[7]);
    } catch (const std::logic_error& e) {
      throw InvalidArgument(std::string("results CSV: bad field: ") + e.what());
    }
    u.non_monotone = f[8].find("non_monotone") != std::string::npos;
    u.unattainable = f[8].find("unattainable") != std::string::npos;
    units.push_back(u);
  }
  return units;
}

std::string summary_json(const BenchmarkRun& run, const RunConfig& config) {
  json j;
  json cfg;
  std::vector<std::string> wl;
  for (auto w : config.wavelets) wl.emplace_back(to_string(w));
  cfg["wavelets"] = wl;
  cfg["baseline"] = std::string(to_string(config.baseline));
  cfg["targets"] = config.targets;
  cfg["threshold_scope"] = std::string(to_string(config.scope));
  cfg["msssim_channels"] = std::string(to_string(config.channels));
  cfg["guard_window"] = config.guard_window;
  j["config"] = cfg;

  json summary = json::array();
  for (const auto& s : run.summary) {
    json e;
    e["wavelet"] = std::string(to_string(s.ternary));
    e["baseline"] = std::string(to_string(s.baseline));
    e["target"] = s.target;
    e["count"] = s.beta.count;
    e["median"] = s.beta.median;
    e["q25"] = s.beta.q25;
    e["q75"] = s.beta.q75;
    e["min"] = s.beta.min;
    e["max"] = s.beta.max;
    e["whisker_lo"] = s.beta.whisker_lo;
    e["whisker_hi"] = s.beta.whisker_hi;
    json outliers = json::array();
    for (std::size_t i = 0; i < s.outlier_ids.size(); ++i)
      outliers.push_back({{"image_id", s.outlier_ids[i]}, {"beta_c", s.outlier_values[i]}});
    e["outliers"] = outliers;
    summary.push_back(e);
  }
  j["summary"] = summary;

  json records = json::array();
  for (const auto& r : run.records)
    records.push_back({{"image_id", r.image_id},
                       {"wavelet", std::string(to_string(r.ternary))},
                       {"baseline", std::string(to_string(r.baseline))},
                       {"target", r.target},
                       {"m_tern", r.m_tern},
                       {"m_cdf", r.m_cdf},
                       {"beta_c", r.beta_c}});
  j["records"] = records;
  j["warnings"] = run.warnings;
  return j.dump(2) + "\n";
}

void write_boxplot_data(std::ostream& out, const BenchmarkRun& run) {
  out << "# index wavelet target q25 whisker_lo whisker_hi q75 median count\n";
  std::size_t index = 1;
  for (const auto& s : run.summary)
    out << index++ << ' ' << to_string(s.ternary) << ' ' << format_float(s.target) << ' '
        << format_float(s.beta.q25) << ' ' << format_float(s.beta.whisker_lo) << ' '
        << format_float(s.beta.whisker_hi) << ' ' << format_float(s.beta.q75) << ' '
        << format_float(s.beta.median) << ' ' << s.beta.count << '\n';
  out << "\n\n# outliers: index beta_c image_id\n";
  index = 1;
  for (const auto& s : run.summary) {
    for (std::size_t i = 0; i < s.outlier_ids.size(); ++i)
      out << index << ' ' << format_float(s.outlier_values[i]) << ' ' << s.outlier_ids[i] << '\n';
    ++index;
  }
}

void emit_reports(const BenchmarkRun& run, const RunConfig& config) {
  if (run.records.empty()) throw InvalidArgument("emit_reports: no records");
  auto open = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
  };
  if (config.out_csv) {
    auto out = open(*config.out_csv);
    write_results_csv(out, run.units);
  }
  if (config.summary_json) {
    auto out = open(*config.summary_json);
    out << summary_json(run, config);
  }
  if (config.boxplot_data) {
    auto out = open(*config.boxplot_data);
    write_boxplot_data(out, run);
  }
}

}  // namespace ternwave
