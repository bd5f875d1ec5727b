#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uwqkd/config.hpp"
#include "uwqkd/dataset.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/planner.hpp"
#include "uwqkd/presets.hpp"
#include "uwqkd/qber.hpp"

namespace uwqkd::cli {
namespace {

struct GlobalOptions {
  std::string config_path;
  std::string preset;
  std::string presets_path;
  std::optional<double> tolerance;
  std::optional<double> threshold;
  std::optional<double> d_r;
  std::string output;
  std::string format;
  std::optional<unsigned> threads;
};

struct EvaluateOptions {
  std::optional<int> relays;
  std::optional<double> distance;
};

struct DistanceOptions {
  std::optional<int> relays;
  std::optional<int> max_relays;
  std::optional<double> resolution;
};

struct SweepOptions {
  std::string target;
};

void print_error(const Streams& io, const std::string& message) {
  if (io.color) {
    io.err << "\033[1;31merror:\033[0m " << message << '\n';
  } else {
    io.err << "error: " << message << '\n';
  }
}

// Writes to --output when given, otherwise to the out stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
      stream_ = file_.get();
      path_ = path;
    }
  }

  std::ostream& stream() { return *stream_; }

  void close() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("write failed" + (path_.empty() ? "" : ": " + path_));
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_;
};

PresetCatalog catalog_for(const GlobalOptions& g) {
  return g.presets_path.empty() ? PresetCatalog::builtin() : PresetCatalog::load(g.presets_path);
}

RunConfig config_for(const GlobalOptions& g, const PresetCatalog& catalog) {
  RunConfig config = g.config_path.empty() ? parse_config("", "defaults", catalog)
                                           : load_config(g.config_path, catalog);
  if (!g.preset.empty()) config.preset = g.preset;
  if (g.tolerance) config.numerics.tolerance = *g.tolerance;
  if (g.threshold) config.numerics.threshold = *g.threshold;
  if (g.d_r) config.turbulence.eddy_diffusivity_ratio = *g.d_r;
  if (g.threads) config.numerics.threads = *g.threads;
  if (!g.output.empty()) config.output.path = g.output;
  validate_config(config, catalog);
  return config;
}

std::string format_or(const GlobalOptions& g, const char* fallback) {
  return g.format.empty() ? fallback : g.format;
}

Dataset evaluation_dataset(const std::string& preset, const QberEvaluation& ev, double exact) {
  Dataset data;
  data.columns = distance_sweep_columns();
  data.rows.push_back({preset, ev.total_distance_m, static_cast<std::int64_t>(ev.relays),
                       ev.qber_bound, ev.h_hop, ev.mu_hop, ev.n_B0, ev.n_D, ev.n_N_hat, ev.a,
                       ev.b, ev.c, static_cast<std::int64_t>(ev.exceeds_half ? 1 : 0), exact});
  return data;
}

int run_evaluate(const GlobalOptions& g, const EvaluateOptions& e, const Streams& io) {
  const PresetCatalog catalog = catalog_for(g);
  RunConfig config = config_for(g, catalog);
  if (e.relays) config.layout.relays = *e.relays;
  if (e.distance) config.layout.distance_m = *e.distance;
  validate_config(config, catalog);

  const ChannelModel model = config.channel_model(catalog);
  const LinkLayout layout(config.layout.distance_m, config.layout.relays);
  const QberEvaluation ev = qber_upper_bound(model, layout);
  const double exact = qber_nonturbulent(model, layout.total_distance());

  Sink sink(config.output.path, io.out);
  const std::string format = format_or(g, "text");
  if (format == "text") {
    auto& os = sink.stream();
    os << "preset            " << config.preset << '\n'
       << "distance L        " << format_number(layout.total_distance()) << " m\n"
       << "relays K          " << layout.relays() << '\n'
       << "hop length l      " << format_number(layout.hop_length()) << " m\n"
       << "path loss h(l)    " << format_number(ev.h_hop) << '\n'
       << "power transfer mu " << format_number(ev.mu_hop) << " (+/- "
       << format_number(ev.mu_error_estimate) << ")\n"
       << "n_B0              " << format_number(ev.n_B0) << '\n'
       << "n_D               " << format_number(ev.n_D) << '\n'
       << "n_N bound         " << format_number(ev.n_N_hat) << '\n'
       << "a, b, c           " << format_number(ev.a) << ", " << format_number(ev.b) << ", "
       << format_number(ev.c) << '\n'
       << "QBER bound        " << format_number(ev.qber_bound)
       << (ev.exceeds_half ? "  (exceeds 1/2)" : "") << '\n'
       << "QBER non-turb.    " << format_number(exact) << "  (exact, no relays)\n"
       << "secure (<= " << format_number(config.numerics.threshold) << ")   "
       << (ev.qber_bound <= config.numerics.threshold ? "yes" : "no") << '\n';
  } else if (format == "json") {
    std::ostringstream os;
    const Dataset data = evaluation_dataset(config.preset, ev, exact);
    write_json_lines(data, sink.stream());
  } else {
    write_dataset(evaluation_dataset(config.preset, ev, exact), parse_output_format(format),
                  sink.stream());
  }
  sink.close();
  return 0;
}

int run_distance(const GlobalOptions& g, const DistanceOptions& d, const Streams& io) {
  const PresetCatalog catalog = catalog_for(g);
  RunConfig config = config_for(g, catalog);
  if (d.resolution) config.numerics.resolution_m = *d.resolution;
  if (d.max_relays) config.numerics.max_relays = *d.max_relays;
  validate_config(config, catalog);

  SweepSpec spec;
  spec.variable = SweepVariable::relay_count;
  spec.fixed = config.channel_model(catalog);
  spec.label = config.preset;
  spec.search = config.search_options();
  if (d.relays && !d.max_relays) {
    spec.values = {static_cast<double>(*d.relays)};
  } else {
    for (int k = 0; k <= config.numerics.max_relays; ++k) spec.values.push_back(k);
  }
  const Dataset data = run_sweep(spec, config.numerics.threads);

  Sink sink(config.output.path, io.out);
  const std::string format = format_or(g, "text");
  if (format == "text") {
    auto& os = sink.stream();
    const auto col = [&](const char* name) { return data.column(name); };
    os << "preset " << config.preset << ", threshold "
       << format_number(config.numerics.threshold) << ", resolution "
       << format_number(config.numerics.resolution_m) << " m\n";
    os << std::left << std::setw(4) << "K" << std::setw(12) << "status" << std::setw(16)
       << "achievable_m" << "bracket_m\n";
    for (const auto& row : data.rows) {
      const auto text = [](const Cell& c) {
        if (const auto* v = std::get_if<double>(&c)) return format_number(*v);
        if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
        if (const auto* s = std::get_if<std::string>(&c)) return *s;
        return std::string("-");
      };
      os << std::left << std::setw(4) << text(row[col("K")]) << std::setw(12)
         << text(row[col("status")]) << std::setw(16) << text(row[col("achievable_L_m")]) << '['
         << text(row[col("bracket_lo_m")]) << ", " << text(row[col("bracket_hi_m")]) << ']'
         << (std::get<std::int64_t>(row[col("is_optimal")]) == 1 && data.rows.size() > 1
                 ? "  <- best"
                 : "")
         << '\n';
    }
  } else {
    write_dataset(data, parse_output_format(format), sink.stream());
  }
  sink.close();
  return 0;
}

int run_sweep_command(const GlobalOptions& g, const SweepOptions& s, const Streams& io) {
  const PresetCatalog catalog = catalog_for(g);
  const RunConfig config = config_for(g, catalog);
  const std::vector<SweepSpec> specs = is_figure_name(s.target)
                                           ? figure_sweeps(s.target, config, catalog)
                                           : load_sweep_file(s.target, config, catalog);
  Dataset data;
  for (const auto& spec : specs) data.append(run_sweep(spec, config.numerics.threads));

  const OutputFormat format = parse_output_format(format_or(g, config.output.format.c_str()));
  if (!config.output.path.empty()) {
    emit_dataset(data, format, config.output.path);
  } else {
    write_dataset(data, format, io.out);
  }
  return 0;
}

int run_presets(const GlobalOptions& g, const Streams& io) {
  const PresetCatalog catalog = catalog_for(g);
  const std::string format = format_or(g, "text");
  if (format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& p : catalog.presets()) {
      doc.push_back({{"name", p.name},
                     {"R_d0_w_m2_nm", p.irradiance_w_m2_nm},
                     {"description", p.description},
                     {"source", p.source}});
    }
    io.out << doc.dump(2) << '\n';
    return 0;
  }
  if (format != "text") throw ConfigError("presets: --format must be text or json", "format");
  for (const auto& p : catalog.presets()) {
    io.out << p.name << '\n'
           << "  R_d0        " << format_number(p.irradiance_w_m2_nm) << " W m^-2 nm^-1\n"
           << "  description " << p.description << '\n'
           << "  source      " << p.source << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, const Streams& io) {
  CLI::App app{"Link-budget planner for multi-hop underwater BB84 with passive relays", "uwqkd"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--preset", g.preset, "Surface irradiance preset name");
  app.add_option("--presets-file", g.presets_path, "Preset data file (default: built in)")
      ->check(CLI::ExistingFile);
  app.add_option("--tolerance", g.tolerance, "Absolute tolerance of the power-transfer quadrature");
  app.add_option("--threshold", g.threshold, "QBER security threshold");
  app.add_option("--d-r", g.d_r, "Eddy diffusivity ratio override");
  app.add_option("--threads", g.threads, "Worker threads for sweeps (0 = all cores)");
  app.add_option("--output", g.output, "Write results to this file instead of stdout");
  app.add_option("--format", g.format, "text|json|csv|jsonl (depends on the command)");

  EvaluateOptions e;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate the QBER bound at one (L, K)");
  evaluate->add_option("--K", e.relays, "Number of relays")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--L", e.distance, "Total link distance in metres")
      ->check(CLI::PositiveNumber);

  DistanceOptions d;
  auto* distance = app.add_subcommand("distance", "Achievable distance per relay count");
  auto* k_opt = distance->add_option("--K", d.relays, "Single relay count")
                    ->check(CLI::NonNegativeNumber);
  distance->add_option("--K-max", d.max_relays, "Search K = 0..K-max and report the best")
      ->check(CLI::NonNegativeNumber)
      ->excludes(k_opt);
  distance->add_option("--resolution", d.resolution, "Distance resolution in metres")
      ->check(CLI::PositiveNumber);

  SweepOptions s;
  auto* sweep = app.add_subcommand("sweep", "Run a figure sweep (fig2|fig3|fig4|fig5) or a sweep file");
  sweep->add_option("target", s.target, "fig2, fig3, fig4, fig5, or a sweep JSON file")->required();

  auto* presets = app.add_subcommand("presets", "List surface irradiance presets");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto chosen = app.get_subcommands();
    io.out << (chosen.empty() ? app.help() : chosen.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    io.out << "uwqkd 0.1.0\n";
    return 0;
  } catch (const CLI::ParseError& err) {
    print_error(io, err.what());
    io.err << app.help();
    return 2;
  }

  try {
    if (evaluate->parsed()) return run_evaluate(g, e, io);
    if (distance->parsed()) return run_distance(g, d, io);
    if (sweep->parsed()) return run_sweep_command(g, s, io);
    if (presets->parsed()) return run_presets(g, io);
  } catch (const std::exception& ex) {
    print_error(io, ex.what());
    return 1;
  }
  return 2;
}

}  // namespace uwqkd::cli
