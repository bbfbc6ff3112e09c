#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fittsnorm/analysis.hpp"
#include "fittsnorm/error.hpp"
#include "fittsnorm/log_format.hpp"
#include "fittsnorm/normality.hpp"
#include "fittsnorm/report.hpp"
#include "fittsnorm/screening.hpp"
#include "fittsnorm/simulation.hpp"
#include "fittsnorm/svg.hpp"
#include "fittsnorm/synth.hpp"

namespace fittsnorm::cli {

namespace {

struct InputFlags {
  std::string input;
  std::string output;
  bool strict = false;
  bool drop_first_trial = false;
  bool no_screen = false;
  bool include_practice = false;
};

struct SpecFlags {
  std::string model;
  std::string axis;
  std::string sigma;
  std::string amplitude;
};

struct Loaded {
  MeasuredDataset dataset;
  std::optional<ScreeningReport> screening;
  std::vector<std::string> warnings;
};

void add_input_flags(CLI::App* cmd, InputFlags& f, bool screening_switch) {
  cmd->add_option("--input,-i", f.input, "trial log (one JSON object per line)")->required();
  cmd->add_option("--output,-o", f.output, "write the result here instead of stdout");
  cmd->add_flag("--strict", f.strict, "abort on the first malformed log line");
  cmd->add_flag("--drop-first-trial", f.drop_first_trial,
                "ignore trial 1 of every sequence (its origin is the start click)");
  cmd->add_flag("--include-practice", f.include_practice, "keep records flagged as practice");
  if (screening_switch) {
    cmd->add_flag("--no-screen", f.no_screen, "skip outlier screening");
  }
}

void add_spec_flags(CLI::App* cmd, SpecFlags& f, bool allow_all) {
  cmd->add_option("--model,-m", f.model,
                  allow_all ? "all, or one of nominal, x-tt, x-ct, xy-tt, xy-ct, x-tt-ae, x-ct-ae, "
                              "xy-tt-ae, xy-ct-ae"
                            : "one model name");
  cmd->add_option("--axis", f.axis, "tt or ct (with --sigma, selects one effective model)");
  cmd->add_option("--sigma", f.sigma, "x or xy");
  cmd->add_option("--amplitude", f.amplitude, "nominal or effective");
}

std::vector<ModelSpec> resolve_specs(const SpecFlags& f) {
  const bool piecewise = !f.sigma.empty() || !f.amplitude.empty() || !f.axis.empty();
  if (!f.model.empty() && piecewise) {
    throw ValidationError("use either --model or --axis/--sigma/--amplitude, not both");
  }
  if (piecewise) {
    const auto sigma = parse_sigma_mode(f.sigma.empty() ? "x" : f.sigma);
    const auto axis = parse_axis_mode(f.axis.empty() ? "tt" : f.axis);
    const auto amp = parse_amplitude_mode(f.amplitude.empty() ? "nominal" : f.amplitude);
    if (!sigma) throw ValidationError("unknown --sigma '" + f.sigma + "' (x or xy)");
    if (!axis) throw ValidationError("unknown --axis '" + f.axis + "' (tt or ct)");
    if (!amp) throw ValidationError("unknown --amplitude '" + f.amplitude + "' (nominal or effective)");
    return {ModelSpec::effective(*sigma, *axis, *amp)};
  }
  if (f.model.empty() || f.model == "all") {
    return {ModelSpec::all().begin(), ModelSpec::all().end()};
  }
  const auto spec = ModelSpec::from_name(f.model);
  if (!spec) throw ValidationError("unknown --model '" + f.model + "'");
  return {*spec};
}

Loaded load(const InputFlags& f, std::ostream& err) {
  const ParseResult parsed = read_log_file(f.input, {.strict = f.strict});
  for (const Diagnostic& d : parsed.diagnostics) err << "warning: " << d.to_string() << '\n';
  if (parsed.records.empty()) throw ValidationError("no valid trial records in " + f.input);
  const Dataset raw = build_dataset(parsed.records, {.drop_practice = !f.include_practice});
  MeasureResult measured = measure_dataset(raw, {.include_first_trial = !f.drop_first_trial});
  Loaded out;
  out.warnings = std::move(measured.warnings);
  if (f.no_screen) {
    out.dataset = std::move(measured.dataset);
    return out;
  }
  ScreeningResult screened = screen(measured.dataset);
  out.dataset = std::move(screened.dataset);
  for (const std::string& w : screened.report.warnings) out.warnings.push_back(w);
  out.screening = std::move(screened.report);
  return out;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

/// Writes to --output when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("error while writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw ValidationError("invalid --sizes entry '" + item + "'");
    }
    if (pos != item.size() || v == 0) throw ValidationError("invalid --sizes entry '" + item + "'");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw ValidationError("--sizes needs at least one value");
  return sizes;
}

Scope resolve_scope(const std::string& text) {
  const auto scope = parse_scope(text);
  if (!scope) throw ValidationError("unknown --scope '" + text + "'");
  return *scope;
}

AxisMode resolve_axis(const std::string& text) {
  const auto axis = parse_axis_mode(text);
  if (!axis) throw ValidationError("unknown --axis '" + text + "' (tt or ct)");
  return *axis;
}

std::string number_tag(double v) {
  std::string s = format_number(v);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective-width Fitts' law analysis for 2D pointing logs", "fittsnorm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  InputFlags in;
  SpecFlags spec_flags;
  std::string scope_text = "mixed";
  std::string axis_text = "tt";
  double alpha = kDefaultAlpha;
  bool show_points = false;

  auto* screen_cmd = app.add_subcommand("screen", "spatial, IQR and participant outlier screening");
  add_input_flags(screen_cmd, in, false);
  std::string screened_log;
  screen_cmd->add_option("--screened-log", screened_log, "also write the retained trials as a log");

  auto* fit_cmd = app.add_subcommand("fit", "regress MT on ID and rank models by R2, AIC, BIC");
  add_input_flags(fit_cmd, in, true);
  add_spec_flags(fit_cmd, spec_flags, true);
  fit_cmd->add_option("--scope", scope_text, "accurate, neutral, fast or mixed");
  fit_cmd->add_flag("--points", show_points, "print the condition points instead of the ranking");

  auto* tp_cmd = app.add_subcommand("tp", "mean-of-means throughput and its spread across biases");
  add_input_flags(tp_cmd, in, true);
  add_spec_flags(tp_cmd, spec_flags, true);

  auto* norm_cmd = app.add_subcommand("normality", "Shapiro-Wilk and Henze-Zirkler pass rates");
  add_input_flags(norm_cmd, in, true);
  norm_cmd->add_option("--axis", axis_text, "tt or ct");
  norm_cmd->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo subsampling of participants");
  add_input_flags(sim_cmd, in, true);
  std::string sizes_text = "5,10,20,40,80,160";
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  sim_cmd->add_option("--sizes", sizes_text, "comma-separated sample sizes");
  sim_cmd->add_option("--iters", iterations, "iterations per size");
  sim_cmd->add_option("--seed", seed, "master seed");

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic participant population");
  std::size_t n_participants = 342;
  std::string synth_output;
  bool synth_practice = false;
  synth_cmd->add_option("--participants,-n", n_participants, "number of agents");
  synth_cmd->add_option("--seed", seed, "master seed");
  synth_cmd->add_option("--output,-o", synth_output, "log path (stdout when omitted)");
  synth_cmd->add_flag("--practice", synth_practice, "add one practice sequence per bias");

  auto* plot_cmd = app.add_subcommand("plot", "endpoint scatter with target and 95% ellipse (SVG)");
  add_input_flags(plot_cmd, in, true);
  std::string bias_text;
  std::optional<double> plot_a;
  std::optional<double> plot_w;
  std::string participant;
  std::string out_dir = ".";
  plot_cmd->add_option("--bias", bias_text, "accurate, neutral or fast");
  plot_cmd->add_option("--A", plot_a, "amplitude in px");
  plot_cmd->add_option("--W", plot_w, "width in px");
  plot_cmd->add_option("--axis", axis_text, "tt or ct");
  plot_cmd->add_option("--participant", participant, "plot one participant only");
  plot_cmd->add_option("--output-dir", out_dir, "directory for the SVG files");

  auto* report_cmd = app.add_subcommand("report", "screening, fits, throughput and normality");
  add_input_flags(report_cmd, in, true);
  report_cmd->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*synth_cmd) {
      ExperimentDesign design = ExperimentDesign::standard();
      design.include_practice = synth_practice;
      const std::vector<TrialRecord> records =
          generate_population(AgentProfile::calibrated(), n_participants, design, seed);
      const std::vector<std::string> header = {" synthetic population seed=" + std::to_string(seed) +
                                               " participants=" + std::to_string(n_participants) +
                                               " target-order=step13"};
      Sink sink(synth_output, out);
      write_log(*sink, records, header);
      sink.finish();
      return kExitOk;
    }

    if (*screen_cmd) {
      const ParseResult parsed = read_log_file(in.input, {.strict = in.strict});
      for (const Diagnostic& d : parsed.diagnostics) err << "warning: " << d.to_string() << '\n';
      if (parsed.records.empty()) throw ValidationError("no valid trial records in " + in.input);
      const Dataset raw = build_dataset(parsed.records, {.drop_practice = !in.include_practice});
      const MeasureResult measured =
          measure_dataset(raw, {.include_first_trial = !in.drop_first_trial});
      print_warnings(measured.warnings, err);
      const ScreeningResult screened = screen(measured.dataset);
      print_warnings(screened.report.warnings, err);
      Sink sink(in.output, out);
      write_table(*sink, screening_table(screened.report));
      sink.finish();
      if (!screened_log.empty()) {
        std::vector<TrialRecord> kept;
        for (const auto& [key, trials] : screened.dataset.groups()) {
          for (const MeasuredTrial& t : trials) kept.push_back(t.record);
        }
        write_log_file(screened_log, kept);
      }
      return kExitOk;
    }

    const Loaded loaded = load(in, err);
    print_warnings(loaded.warnings, err);

    if (*plot_cmd) {
      std::optional<Bias> bias;
      if (!bias_text.empty()) {
        bias = parse_bias(bias_text);
        if (!bias) throw ValidationError("unknown --bias '" + bias_text + "'");
      }
      const AxisMode axis = resolve_axis(axis_text);
      std::map<std::pair<Bias, Condition>, std::vector<RotatedEndpoint>> pooled;
      for (const auto& [key, trials] : loaded.dataset.groups()) {
        if (bias && key.bias != *bias) continue;
        if (plot_a && key.condition.amplitude_px != *plot_a) continue;
        if (plot_w && key.condition.width_px != *plot_w) continue;
        if (!participant.empty() && key.participant_id != participant) continue;
        auto& dst = pooled[{key.bias, key.condition}];
        for (const MeasuredTrial& t : trials) dst.push_back(t.endpoint(axis));
      }
      if (pooled.empty()) throw ValidationError("no group matches the plot filters");
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      for (const auto& [k, endpoints] : pooled) {
        const std::string name = "scatter_" + std::string(to_string(k.first)) + "_A" +
                                 number_tag(k.second.amplitude_px) + "_W" +
                                 number_tag(k.second.width_px) + "_" +
                                 std::string(to_string(axis)) + ".svg";
        const std::filesystem::path path = std::filesystem::path(out_dir) / name;
        std::ofstream file(path);
        if (!file) throw IoError("cannot write " + path.string());
        file << emit_scatter_svg(endpoints, k.second,
                                 std::string(to_string(k.first)) + " A=" +
                                     format_number(k.second.amplitude_px) + " W=" +
                                     format_number(k.second.width_px) + " (" +
                                     std::string(to_string(axis)) + ", n=" +
                                     std::to_string(endpoints.size()) + ")");
        if (!file) throw IoError("error while writing " + path.string());
        out << path.string() << '\n';
      }
      return kExitOk;
    }

    if (*norm_cmd) {
      const AxisMode axis = resolve_axis(axis_text);
      const PassRateReport rates = aggregate_pass_rates(loaded.dataset, axis, alpha);
      print_warnings(rates.warnings, err);
      Sink sink(in.output, out);
      write_table(*sink, normality_table(rates, axis, alpha));
      sink.finish();
      return kExitOk;
    }

    const AnalysisTable table = build_analysis(loaded.dataset);
    print_warnings(table.warnings(), err);

    if (*fit_cmd) {
      const Scope scope = resolve_scope(scope_text);
      const std::vector<ModelSpec> specs = resolve_specs(spec_flags);
      Sink sink(in.output, out);
      if (show_points) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
          const Table t = points_table(build_points(table, specs[i], scope), specs[i]);
          if (i == 0) {
            write_table(*sink, t);
          } else {
            write_table(*sink, Table{{}, t.rows});
          }
        }
      } else {
        const std::vector<std::size_t> all = table.all_participants();
        const std::vector<ModelRow> rows = compare_models(table, scope, specs, all);
        write_table(*sink, model_table(rows, scope));
      }
      sink.finish();
      return kExitOk;
    }

    if (*tp_cmd) {
      const std::vector<ModelSpec> specs = resolve_specs(spec_flags);
      Sink sink(in.output, out);
      write_table(*sink, throughput_table(throughput_rows(table, specs)));
      sink.finish();
      return kExitOk;
    }

    if (*sim_cmd) {
      SimConfig config;
      config.sizes = parse_sizes(sizes_text);
      config.iterations = iterations;
      config.seed = seed;
      const SimResult result = run_simulation(table, config);
      Sink sink(in.output, out);
      write_table(*sink, simulation_means_table(result));
      *sink << '\n';
      write_table(*sink, simulation_wins_table(result));
      sink.finish();
      return kExitOk;
    }

    if (*report_cmd) {
      Sink sink(in.output, out);
      *sink << "# effective width factor 4.133 (sqrt(2*pi*e))\n";
      if (loaded.screening) {
        *sink << "# screening\n";
        write_table(*sink, screening_table(*loaded.screening));
      }
      for (Scope scope : {Scope::mixed, Scope::accurate, Scope::neutral, Scope::fast}) {
        *sink << "\n# models, scope " << to_string(scope) << '\n';
        write_table(*sink, model_table(compare_models(table, scope), scope));
      }
      *sink << "\n# throughput (bps)\n";
      write_table(*sink, throughput_table(throughput_rows(table, ModelSpec::all())));
      for (AxisMode axis : kAllAxisModes) {
        const PassRateReport rates = aggregate_pass_rates(loaded.dataset, axis, alpha);
        *sink << "\n# normality, axis " << to_string(axis) << '\n';
        write_table(*sink, normality_table(rates, axis, alpha));
      }
      sink.finish();
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace fittsnorm::cli
