#include "specrisk/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "specrisk/detrend.hpp"
#include "specrisk/errors.hpp"
#include "specrisk/ingest.hpp"
#include "specrisk/measures.hpp"
#include "specrisk/oracle.hpp"
#include "specrisk/spectrum.hpp"
#include "specrisk/synth.hpp"
#include "specrisk/text_io.hpp"

namespace specrisk {

namespace {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kInvariant = 3,
  kResource = 4,
  kIo = 5,
  kArgument = 6,
  kNoSignal = 7,
  kVerifyFailed = 8,
  kInternal = 70,
};

struct RunConfig {
  std::string input;
  std::vector<std::string> compare;
  std::string output;
  std::string dump_curve;
  double omega_max_days = 1.0;
  std::size_t points_per_osc = 1000;
  double cut_days = 10.0;
  std::string bands = "50:1,5:1";
  int workers = 0;
  std::string format = "columns";
  std::size_t samples = 100;
  std::uint64_t seed = 1;

  std::string kind = "randomwalk";
  SynthSpec synth;

  OutputFormat output_format() const {
    return format == "structured" ? OutputFormat::structured : OutputFormat::columns;
  }
  EvalOptions eval() const { return EvalOptions{workers}; }
};

std::vector<BandDays> parse_bands(const std::string& text) {
  std::vector<BandDays> bands;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ArgumentError("band `" + item + "` is not lo:hi days");
    BandDays b{};
    try {
      b.lo_days = std::stod(item.substr(0, colon));
      b.hi_days = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ArgumentError("band `" + item + "` is not lo:hi days");
    }
    if (!(b.hi_days > 0.0 && b.lo_days > b.hi_days))
      throw ArgumentError("band `" + item + "` must have lo_days > hi_days > 0");
    bands.push_back(b);
  }
  if (bands.empty()) throw ArgumentError("no bands given");
  return bands;
}

void check_positive(const RunConfig& cfg) {
  if (!(cfg.omega_max_days > 0.0)) throw ArgumentError("--omega-max-days must be positive");
  if (cfg.points_per_osc == 0) throw ArgumentError("--points-per-osc must be positive");
  if (!(cfg.cut_days > 0.0)) throw ArgumentError("--cut-days must be positive");
  if (cfg.workers < 0) throw ArgumentError("--workers must be >= 0");
}

// Writes to --output when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw IoError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  void close(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw IoError("write failed" + (path.empty() ? std::string() : " for " + path));
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct Loaded {
  std::string id;
  IndexedSeries series;
  DetrendedCurve curve;
  GridSpec spec;
};

Loaded load(const std::string& path, const RunConfig& cfg) {
  auto series = index_series(read_prices(path));
  auto curve = build_curve(series);
  auto spec = GridSpec::for_curve(curve, omega_from_days(cfg.omega_max_days), cfg.points_per_osc);
  return Loaded{std::filesystem::path(path).stem().string(), std::move(series), std::move(curve),
                spec};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_positive(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const Loaded in = load(cfg.input, cfg);
  if (!cfg.dump_curve.empty()) {
    Sink dump(cfg.dump_curve, out);
    write_curve(dump.get(), in.curve);
    dump.close(cfg.dump_curve);
  }
  Sink sink(cfg.output, out);
  SpectrumWriter writer(sink.get(), in.spec, cfg.output_format());
  double peak = 0.0;
  evaluate_grid_chunked(in.curve, in.spec, cfg.eval(), std::size_t{1} << 16,
                        [&](std::size_t first, std::span<const Complex> values) {
                          for (const auto& v : values) peak = std::max(peak, std::abs(v));
                          writer.write_chunk(first, values);
                        });
  sink.close(cfg.output);
  if (!(peak > kNullSpectrumTolerance * in.curve.p0)) err << "warning: no risk signal\n";
  err << "N=" << in.series.size() << " T=" << in.curve.span_days() << " M=" << in.spec.size()
      << " wall=" << seconds_since(t0) << "s\n";
  return kOk;
}

int cmd_cumulative(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  check_positive(cfg);
  const Loaded in = load(cfg.input, cfg);
  const auto grid = evaluate_grid(in.curve, in.spec, cfg.eval());
  const auto cs = cumulative(grid);
  Sink sink(cfg.output, out);
  write_cumulative(sink.get(), cs, cfg.output_format());
  sink.close(cfg.output);
  return kOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_positive(cfg);
  ReportConfig report_cfg;
  report_cfg.omega_cut_days = cfg.cut_days;
  report_cfg.bands = parse_bands(cfg.bands);
  const double omega_max = omega_from_days(cfg.omega_max_days);
  if (omega_from_days(cfg.cut_days) > omega_max)
    throw ArgumentError("--cut-days lies above the grid's maximum frequency");
  for (const auto& b : report_cfg.bands)
    if (b.omega_hi() > omega_max)
      throw ArgumentError("band upper edge lies above the grid's maximum frequency");

  std::vector<std::string> inputs{cfg.input};
  inputs.insert(inputs.end(), cfg.compare.begin(), cfg.compare.end());
  std::vector<RiskReport> reports;
  for (const auto& path : inputs) {
    const Loaded in = load(path, cfg);
    const auto grid = evaluate_grid(in.curve, in.spec, cfg.eval());
    reports.push_back(build_report(in.id, in.series, in.curve, grid, report_cfg, cfg.eval()));
    if (!reports.back().risk_signal) err << "warning: " << in.id << ": no risk signal\n";
  }
  Sink sink(cfg.output, out);
  write_reports(sink.get(), reports, cfg.output_format());
  sink.close(cfg.output);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  check_positive(cfg);
  if (cfg.samples < 100) throw ArgumentError("--samples must be >= 100");
  const Loaded in = load(cfg.input, cfg);
  const auto result =
      verify_transform(in.curve, cfg.samples, cfg.seed, omega_from_days(cfg.omega_max_days));
  char line[160];
  std::snprintf(line, sizeof line, "samples=%zu max_deviation=%.3e worst_omega=%.17g\n",
                result.samples, result.max_deviation, result.worst_omega);
  out << line;
  if (!result.passed()) {
    err << "verify failed: deviation " << result.max_deviation << " >= " << kVerifyThreshold
        << " at omega " << result.worst_omega << '\n';
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_synth(RunConfig cfg, std::ostream& out, std::ostream&) {
  cfg.synth.kind = parse_synth_kind(cfg.kind);
  const auto series = to_business_days(generate(cfg.synth));
  Sink sink(cfg.output, out);
  write_prices(sink.get(), series);
  sink.close(cfg.output);
  return kOk;
}

void add_grid_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "Price file (YYYY-MM-DD,price rows)")->required();
  cmd->add_option("--output", cfg.output, "Output file (default: stdout)");
  cmd->add_option("--omega-max-days", cfg.omega_max_days,
                  "Shortest period on the grid in days; omega_max = 2pi/days");
  cmd->add_option("--points-per-osc", cfg.points_per_osc, "Grid points per spectral oscillation");
  cmd->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  cmd->add_option("--format", cfg.format, "columns | structured")
      ->check(CLI::IsMember({"columns", "structured"}));
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectral speculation measures for daily price series", "specrisk"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Write omega,re,im,abs over the frequency grid");
  add_grid_options(spectrum, cfg);
  spectrum->add_option("--dump-curve", cfg.dump_curve, "Also write the detrended curve segments");

  auto* cumul = app.add_subcommand("cumulative", "Write omega,F,Fnorm");
  add_grid_options(cumul, cfg);

  auto* report = app.add_subcommand("report", "Irrationality, band shares and volatility");
  add_grid_options(report, cfg);
  report->add_option("--cut-days", cfg.cut_days, "Irrationality cutoff period in days");
  report->add_option("--bands", cfg.bands, "Bands as lo:hi period days, comma separated");
  report->add_option("--compare", cfg.compare, "Further price files reported with the same grid");

  auto* verify = app.add_subcommand("verify", "Check the closed form against quadrature");
  add_grid_options(verify, cfg);
  verify->add_option("--samples", cfg.samples, "Random frequencies to check (>= 100)");
  verify->add_option("--seed", cfg.seed, "Sampling seed");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic price file");
  synth->add_option("--kind", cfg.kind, "constant | exponential | modulated | randomwalk");
  synth->add_option("--n", cfg.synth.n, "Number of prices");
  synth->add_option("--p0", cfg.synth.p0, "First price");
  synth->add_option("--rate", cfg.synth.rate, "Drift per day");
  synth->add_option("--epsilon", cfg.synth.epsilon, "Modulation depth");
  synth->add_option("--period", cfg.synth.period, "Modulation period in days");
  synth->add_option("--sigma", cfg.synth.sigma, "Random-walk daily log volatility");
  synth->add_option("--seed", cfg.synth.seed, "Random-walk seed");
  synth->add_option("--output", cfg.output, "Output file (default: stdout)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code;
  }

  try {
    if (*spectrum) return cmd_spectrum(cfg, out, err);
    if (*cumul) return cmd_cumulative(cfg, out, err);
    if (*report) return cmd_report(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    return cmd_synth(cfg, out, err);
  } catch (const ParseError& e) {
    err << "specrisk: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvariantError& e) {
    err << "specrisk: invalid data: " << e.what() << '\n';
    return kInvariant;
  } catch (const ResourceError& e) {
    err << "specrisk: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const IoError& e) {
    err << "specrisk: io error: " << e.what() << '\n';
    return kIo;
  } catch (const ArgumentError& e) {
    err << "specrisk: bad argument: " << e.what() << '\n';
    return kArgument;
  } catch (const NoRiskSignal& e) {
    err << "specrisk: no risk signal: the spectrum is identically zero\n";
    return kNoSignal;
  } catch (const std::exception& e) {
    err << "specrisk: internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace specrisk
