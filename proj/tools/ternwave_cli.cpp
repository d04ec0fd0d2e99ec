// ternwave command-line tool.
//
//   ternwave bench run --dataset DIR [--wavelets tern1,tern2] [--targets 0.99,...] ...
//   ternwave transform --input IMG|--signal FILE --wavelet tern1 [--levels N] [--dump OUT]
//   ternwave metric --ref A --test B [--msssim-channels y|ycbcr-mean]
//   ternwave cost [--n N]
//   ternwave design verify|solve|render|sequences ...
//
// Exit codes: 0 success, 2 configuration error, 3 dataset/input error.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ternwave/bench.hpp"
#include "ternwave/costmeter.hpp"
#include "ternwave/design.hpp"
#include "ternwave/dump.hpp"
#include "ternwave/error.hpp"
#include "ternwave/pnm.hpp"

namespace tw = ternwave;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDataset = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

tw::WaveletKind wavelet_arg(const std::string& name) {
  const auto w = tw::parse_wavelet(name);
  if (!w) throw tw::ConfigError("unknown wavelet '" + name + "' (tern1, tern2, cdf97)");
  return *w;
}

tw::TernaryCircuitSpec ternary_arg(const std::string& name) {
  const auto w = wavelet_arg(name);
  if (w == tw::WaveletKind::Cdf97) throw tw::ConfigError("this command needs tern1 or tern2");
  return tw::ternary_spec(w);
}

std::vector<double> number_list(const std::string& s, const char* what) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw tw::ConfigError(std::string("bad ") + what + " value '" + item + "'");
    }
  }
  return out;
}

std::string fmt(double v) { return tw::format_float(v); }

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string dataset;
  std::string wavelets = "tern1,tern2";
  std::string baseline = "cdf97";
  std::string targets = "0.99";
  std::string scope = "global";
  std::string channels = "y";
  std::string out, summary, boxplot, cache;
  std::size_t jobs = 1;
  std::size_t guard = 8;
  bool quiet = false;
};

int run_bench(const BenchArgs& a) {
  tw::RunConfig cfg;
  cfg.dataset = a.dataset;
  cfg.baseline = wavelet_arg(a.baseline);
  cfg.wavelets.clear();
  for (const auto& w : split(a.wavelets, ',')) {
    const auto kind = wavelet_arg(w);
    if (kind != cfg.baseline) cfg.wavelets.push_back(kind);
  }
  // Selecting only the baseline compares it with itself.
  if (cfg.wavelets.empty() && !split(a.wavelets, ',').empty()) cfg.wavelets.push_back(cfg.baseline);
  cfg.targets = number_list(a.targets, "target");
  const auto scope = tw::parse_threshold_scope(a.scope);
  if (!scope) throw tw::ConfigError("--threshold-scope must be global or per-channel");
  cfg.scope = *scope;
  const auto ch = tw::parse_msssim_channels(a.channels);
  if (!ch) throw tw::ConfigError("--msssim-channels must be y or ycbcr-mean");
  cfg.channels = *ch;
  cfg.jobs = a.jobs;
  cfg.guard_window = a.guard;
  if (!a.out.empty()) cfg.out_csv = a.out;
  if (!a.summary.empty()) cfg.summary_json = a.summary;
  if (!a.boxplot.empty()) cfg.boxplot_data = a.boxplot;
  if (!a.cache.empty()) cfg.cache_dir = a.cache;

  const auto run = tw::run_benchmark(cfg, [&](const std::string& msg) {
    if (!a.quiet || msg.rfind("warning:", 0) == 0) std::cerr << msg << '\n';
  });
  tw::emit_reports(run, cfg);
  if (!cfg.out_csv) tw::write_results_csv(std::cout, run.units);

  std::cerr << "\nbeta_c = 1 - M_tern / M_" << tw::to_string(cfg.baseline) << '\n';
  for (const auto& s : run.summary)
    std::cerr << "  " << tw::to_string(s.ternary) << " @" << fmt(s.target) << ": median "
              << fmt(s.beta.median) << "  IQR [" << fmt(s.beta.q25) << ", " << fmt(s.beta.q75)
              << "]  range [" << fmt(s.beta.min) << ", " << fmt(s.beta.max) << "]  n = "
              << s.beta.count << "  outliers " << s.outlier_ids.size() << '\n';
  return 0;
}

// --- transform --------------------------------------------------------------

struct TransformArgs {
  std::string input, signal, wavelet = "tern1", dump;
  std::size_t levels = std::numeric_limits<std::size_t>::max();
};

std::vector<double> read_signal(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tw::DecodeError(path + ": cannot open");
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    for (auto& c : tok)
      if (c == ',') c = ' ';
    std::stringstream ss(tok);
    double x;
    while (ss >> x) v.push_back(x);
    if (!ss.eof()) throw tw::DecodeError(path + ": not a list of numbers");
  }
  if (v.empty()) throw tw::DecodeError(path + ": no samples");
  return v;
}

int run_transform(const TransformArgs& a) {
  if (a.input.empty() == a.signal.empty())
    throw tw::ConfigError("give exactly one of --input (image) or --signal (1-D samples)");
  const auto kind = wavelet_arg(a.wavelet);
  tw::CoefficientDump dump;

  if (!a.signal.empty()) {
    const auto x = read_signal(a.signal);
    if (kind == tw::WaveletKind::Cdf97) {
      const auto p = tw::forward_multi_97(x, a.levels);
      dump = tw::make_dump(p);
      std::cout << "cdf97 n=" << x.size() << " levels=" << p.size() << '\n';
      for (std::size_t l = 0; l < p.size(); ++l)
        std::cout << "  level " << l + 1 << ": approx " << p[l].approx.size() << ", detail "
                  << p[l].detail.size() << '\n';
    } else {
      const auto spec = tw::ternary_spec(kind);
      const auto p = tw::forward_multi(x, spec, a.levels);
      dump = tw::make_dump(p, spec);
      std::cout << tw::to_string(kind) << " n=" << x.size() << " levels=" << p.size() << '\n';
      for (std::size_t l = 0; l < p.size(); ++l)
        std::cout << "  level " << l + 1 << ": n " << p[l].plan.n << ", sca " << p[l].sca.size()
                  << ", wav+ " << p[l].wav_plus.size() << ", wav- " << p[l].wav_minus.size()
                  << '\n';
    }
  } else {
    const auto img = tw::ingest_image(a.input);
    std::vector<tw::Pyramid2D> pyramids;
    for (std::size_t c = 0; c < 3; ++c)
      pyramids.push_back(tw::forward2d(img.channel(c), kind, a.levels));
    dump = tw::make_dump(pyramids);
    std::cout << tw::to_string(kind) << ' ' << img.width << 'x' << img.height
              << " levels=" << pyramids[0].level_count() << '\n';
    for (std::size_t l = 0; l < pyramids[0].levels.size(); ++l) {
      const auto& g = pyramids[0].levels[l];
      std::cout << "  level " << l + 1 << ": " << g.width << 'x' << g.height << ", scaling block "
                << g.x_bands[0] << 'x' << g.y_bands[0] << '\n';
    }
  }
  if (!a.dump.empty()) {
    tw::write_dump(a.dump, dump);
    std::cout << "wrote " << dump.values.size() << " coefficients to " << a.dump << '\n';
  }
  return 0;
}

// --- metric -----------------------------------------------------------------

int run_metric(const std::string& ref, const std::string& test, const std::string& channels) {
  const auto ch = tw::parse_msssim_channels(channels);
  if (!ch) throw tw::ConfigError("--msssim-channels must be y or ycbcr-mean");
  const auto a = tw::ingest_image(ref);
  const auto b = tw::ingest_image(test);
  if (a.width != b.width || a.height != b.height)
    throw tw::ConfigError("images differ in size");
  std::printf("%.6f\n", tw::ms_ssim(a, b, *ch));
  return 0;
}

// --- cost -------------------------------------------------------------------

int run_cost(std::size_t n, std::size_t image_n, std::uint64_t seed) {
  std::printf("%-6s %14s %14s %14s %8s %12s\n", "family", "mu_analytic", "mu_counted", "envelope",
              "levels", "gap");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  for (auto k : {tw::WaveletKind::TernaryI, tw::WaveletKind::TernaryII, tw::WaveletKind::Cdf97}) {
    const auto r = tw::instrument_transform(x, k, 1);
    const double gap = (double(r.mu_instrumented) - double(r.mu_analytic)) / double(r.mu_analytic);
    std::printf("%-6s %14llu %14llu %14llu %8zu %11.4f%%\n", std::string(tw::to_string(k)).c_str(),
                static_cast<unsigned long long>(r.mu_analytic),
                static_cast<unsigned long long>(r.mu_instrumented),
                static_cast<unsigned long long>(r.envelope), r.levels, 100.0 * gap);
  }
  std::printf("\nsingle level, per sample: tern1 %.4g  tern2 %.4g  cdf97 %.4g\n",
              double(tw::mu_ternary_level(3 * (n / 3), tw::TernaryCircuitSpec::type_i())) / double(3 * (n / 3)),
              double(tw::mu_ternary_level(3 * (n / 3), tw::TernaryCircuitSpec::type_ii())) / double(3 * (n / 3)),
              double(tw::mu_cdf_level(n)) / double(n));
  std::printf("\n%zu x %zu image, all levels:\n", image_n, image_n);
  std::printf("%-6s %16s %10s %10s %8s\n", "family", "mu_total", "mu/N^2", "limit", "levels");
  for (auto k : {tw::WaveletKind::TernaryI, tw::WaveletKind::TernaryII, tw::WaveletKind::Cdf97}) {
    const auto c = tw::mu_image_total(k, image_n);
    std::printf("%-6s %16llu %10.4f %10.4f %8zu%s\n", std::string(tw::to_string(k)).c_str(),
                static_cast<unsigned long long>(c.total), c.per_n2, c.asymptote, c.levels,
                c.near_asymptote ? "" : "  (not yet within 2% of the limit)");
  }
  return 0;
}

// --- design -----------------------------------------------------------------

void print_residuals(const tw::ResidualReport& r) {
  std::printf("%-4s %5s %-5s %14s %s\n", "seq", "alpha", "band", "moment", "");
  for (const auto& e : r.entries)
    std::printf("%-4s %5u %-5s %14.3e %s\n", std::string(tw::to_string(e.constraint.sequence)).c_str(),
                e.constraint.alpha, e.constraint.highfreq ? "high" : "low", e.value,
                e.trivial ? "(vanishes by symmetry)" : "");
  std::printf("max |moment| = %.3e\n", r.max_abs);
}

int run_design_verify(const std::string& type) {
  const auto spec = ternary_arg(type);
  const auto r = tw::verify_angles(spec, tw::default_constraints(spec.cascade()));
  print_residuals(r);
  const auto seqs = tw::extract_sequences(spec);
  std::printf("alpha=3 low-frequency moment of g-: %.6g\n", tw::moment(seqs.g_minus, 3, false));
  return 0;
}

int run_design_solve(std::size_t depth, const std::string& cascade_name, const std::string& init,
                     double perturb, std::uint64_t seed, double tol) {
  tw::Cascade cascade;
  if (cascade_name == "site")
    cascade = tw::Cascade::SiteCentered;
  else if (cascade_name == "edge")
    cascade = tw::Cascade::EdgeCentered;
  else
    throw tw::ConfigError("--cascade must be site or edge");

  std::vector<double> start;
  if (!init.empty()) {
    start = number_list(init, "angle");
  } else if (depth == 6) {
    const auto spec = cascade == tw::Cascade::SiteCentered ? tw::TernaryCircuitSpec::type_i()
                                                           : tw::TernaryCircuitSpec::type_ii();
    start = spec.angles();
  } else {
    start.assign(depth, 0.3);
  }
  if (start.size() != depth) throw tw::ConfigError("--init needs one angle per layer");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-perturb, perturb);
  for (double& t : start) t += u(rng);

  tw::SolverOptions opt;
  opt.tolerance = tol;
  const auto r = tw::solve_angles(depth, cascade, tw::default_constraints(cascade), start, opt);
  if (r.already_solved) {
    std::printf("every constraint vanishes by symmetry; nothing to solve\n");
    return 0;
  }
  std::printf("converged in %zu iterations, max residual %.3e\n", r.iterations, r.max_residual);
  for (std::size_t k = 0; k < r.angles.size(); ++k)
    std::printf("theta_%zu = % .12f\n", k + 1, r.angles[k]);
  return 0;
}

int run_design_render(const std::string& type, const std::string& channel, std::size_t iterations,
                      const std::string& out) {
  const auto spec = ternary_arg(type);
  const auto id = tw::parse_sequence_id(channel);
  if (!id) throw tw::ConfigError("--channel must be h+, g+ or g-");
  const auto f = tw::render_function(spec, *id, iterations);
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  os << "x,value\n";
  for (std::size_t i = 0; i < f.x.size(); ++i) os << fmt(f.x[i]) << ',' << fmt(f.value[i]) << '\n';
  if (!out.empty()) {
    const auto d = tw::cauchy_differences(spec, *id, iterations);
    std::cerr << "wrote " << f.x.size() << " samples; successive sup differences:";
    for (double v : d) std::cerr << ' ' << fmt(v);
    std::cerr << '\n';
  }
  return 0;
}

int run_design_sequences(const std::string& type) {
  const auto spec = ternary_arg(type);
  const auto s = tw::extract_sequences(spec);
  std::printf("r,h+,g+,g-\n");
  // Common axis: h+ is centred on r = 0, g+/g- on the edge at r = 1/2.
  const double hc = s.h_plus.center;
  const double gc = s.g_plus.center - 0.5;
  const auto lo = std::min(-hc, -gc);
  const auto hi = std::max(double(s.h_plus.taps.size()) - 1 - hc, double(s.g_plus.taps.size()) - 1 - gc);
  for (double r = lo; r <= hi; r += 1.0) {
    auto tap = [](const tw::Sequence& q, double idx) {
      const auto i = static_cast<std::ptrdiff_t>(std::llround(idx));
      return i >= 0 && i < static_cast<std::ptrdiff_t>(q.taps.size()) ? q.taps[i] : 0.0;
    };
    std::printf("%g,%s,%s,%s\n", r, fmt(tap(s.h_plus, r + hc)).c_str(),
                fmt(tap(s.g_plus, r + gc)).c_str(), fmt(tap(s.g_minus, r + gc)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ternary wavelet transforms, CDF-9/7 baseline and compression benchmark"};
  app.require_subcommand(1);

  auto* bench = app.add_subcommand("bench", "Compression-efficiency benchmark");
  bench->require_subcommand(1);
  auto* bench_run = bench->add_subcommand("run", "Run the protocol over a dataset directory");
  BenchArgs ba;
  bench_run->add_option("--dataset", ba.dataset, "Directory of P5/P6 (or PNG) images")->required();
  bench_run->add_option("--wavelets", ba.wavelets, "Comma-separated: tern1,tern2,cdf97")
      ->capture_default_str();
  bench_run->add_option("--baseline", ba.baseline, "Reference wavelet for beta_c")->capture_default_str();
  bench_run->add_option("--targets", ba.targets, "Comma-separated MS-SSIM targets")->capture_default_str();
  bench_run->add_option("--threshold-scope", ba.scope, "global | per-channel")->capture_default_str();
  bench_run->add_option("--msssim-channels", ba.channels, "y | ycbcr-mean")->capture_default_str();
  bench_run->add_option("--out", ba.out, "Per-unit CSV (stdout if omitted)");
  bench_run->add_option("--summary", ba.summary, "JSON summary with quartiles and outliers");
  bench_run->add_option("--boxplot", ba.boxplot, "gnuplot box-plot data");
  bench_run->add_option("--cache", ba.cache, "Directory for per-unit result cache");
  bench_run->add_option("--jobs", ba.jobs, "Worker threads")->capture_default_str();
  bench_run->add_option("--guard", ba.guard, "Linear scan half-width around the crossover")
      ->capture_default_str();
  bench_run->add_flag("--quiet", ba.quiet, "Only print warnings");

  auto* transform = app.add_subcommand("transform", "Forward transform, optionally dumping coefficients");
  TransformArgs ta;
  transform->add_option("--input", ta.input, "Image (P5/P6/PNG); all three YCbCr planes");
  transform->add_option("--signal", ta.signal, "Text file of samples for a 1-D transform");
  transform->add_option("--wavelet", ta.wavelet, "tern1 | tern2 | cdf97")->capture_default_str();
  transform->add_option("--levels", ta.levels, "Maximum number of levels");
  transform->add_option("--dump", ta.dump, "Write a binary coefficient dump");

  auto* metric = app.add_subcommand("metric", "MS-SSIM between two images");
  std::string ref, test, channels = "y";
  metric->add_option("--ref", ref, "Reference image")->required();
  metric->add_option("--test", test, "Test image")->required();
  metric->add_option("--msssim-channels", channels, "y | ycbcr-mean")->capture_default_str();

  auto* cost = app.add_subcommand("cost", "Multiplication counts: analytic model vs counted run");
  std::size_t cost_n = 30000, image_n = 2187;
  std::uint64_t cost_seed = 1;
  cost->add_option("--n", cost_n, "1-D signal length for the counted run")->capture_default_str();
  cost->add_option("--image", image_n, "Side of the square image for totals")->capture_default_str();
  cost->add_option("--seed", cost_seed, "Random signal seed")->capture_default_str();

  auto* design = app.add_subcommand("design", "Sequences, moments and angle design");
  design->require_subcommand(1);
  std::string type = "tern1";
  auto* verify = design->add_subcommand("verify", "Moment residuals of the built-in angles");
  verify->add_option("--type", type, "tern1 | tern2")->capture_default_str();
  auto* solve = design->add_subcommand("solve", "Solve for angles meeting the moment constraints");
  std::size_t depth = 6;
  std::string cascade = "site", init;
  double perturb = 0.0, tol = 1e-10;
  std::uint64_t seed = 1;
  solve->add_option("--depth", depth, "Circuit depth")->capture_default_str();
  solve->add_option("--cascade", cascade, "site | edge")->capture_default_str();
  solve->add_option("--init", init, "Comma-separated starting angles");
  solve->add_option("--perturb", perturb, "Uniform perturbation added to the start")->capture_default_str();
  solve->add_option("--seed", seed, "Perturbation seed")->capture_default_str();
  solve->add_option("--tol", tol, "Target max residual")->capture_default_str();
  auto* render = design->add_subcommand("render", "Cascade-algorithm samples as CSV");
  std::string channel = "h+", render_out;
  std::size_t iterations = 5;
  render->add_option("--type", type, "tern1 | tern2")->capture_default_str();
  render->add_option("--channel", channel, "h+ | g+ | g-")->capture_default_str();
  render->add_option("--iterations", iterations, "Refinement iterations")->capture_default_str();
  render->add_option("--out", render_out, "CSV output (stdout if omitted)");
  auto* sequences = design->add_subcommand("sequences", "Extracted h+, g+, g- taps as CSV");
  sequences->add_option("--type", type, "tern1 | tern2")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*bench_run) return run_bench(ba);
    if (*transform) return run_transform(ta);
    if (*metric) return run_metric(ref, test, channels);
    if (*cost) return run_cost(cost_n, image_n, cost_seed);
    if (*verify) return run_design_verify(type);
    if (*solve) return run_design_solve(depth, cascade, init, perturb, seed, tol);
    if (*render) return run_design_render(type, channel, iterations, render_out);
    if (*sequences) return run_design_sequences(type);
  } catch (const tw::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tw::DatasetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataset;
  } catch (const tw::DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDataset;
  } catch (const tw::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
