#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "demo.hpp"
#include "lfd/calibration.hpp"
#include "lfd/decimal.hpp"
#include "lfd/gcode_emit.hpp"
#include "lfd/json_io.hpp"
#include "lfd/line_width.hpp"
#include "lfd/stats.hpp"
#include "manifest.hpp"

#ifndef LFD_VERSION
#define LFD_VERSION "0.0.0"
#endif

namespace lfd::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kConfigDirVariable = "LFD_CONFIG_DIR";

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<fs::path> config_file(const std::string& name) {
  const char* dir = std::getenv(kConfigDirVariable);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  const fs::path candidate = fs::path(dir) / name;
  if (!fs::exists(candidate)) return std::nullopt;
  return candidate;
}

std::string fmt(double v) { return format_decimal(v, 6); }

// Collects what one subcommand read and wrote, then emits manifests.
class Run {
 public:
  Run(std::string subcommand, std::ostream& out) : out_(out) {
    manifest_.tool_version = LFD_VERSION;
    manifest_.subcommand = std::move(subcommand);
  }

  void param(const std::string& key, const std::string& value) {
    manifest_.parameters[key] = value;
  }

  std::string read(const fs::path& path) {
    auto text = read_text(path);
    manifest_.inputs.push_back({path.string(), sha256_hex(text)});
    return text;
  }

  void input_digest(const fs::path& path) {
    manifest_.inputs.push_back({path.string(), sha256_file(path)});
  }

  /// Writes to `path`, or to the output stream when `path` is empty.
  void write(const std::optional<fs::path>& path, const std::string& content) {
    if (!path) {
      out_ << content;
      return;
    }
    write_file(*path, content);
  }

  void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content) || !f.flush()) throw FormatError("cannot write " + path.string());
    manifest_.outputs.push_back({path.string(), sha256_hex(content)});
  }

  void produced(const fs::path& path) {
    manifest_.outputs.push_back({path.string(), sha256_file(path)});
  }

  void finish() {
    if (manifest_.outputs.empty()) return;
    manifest_.timestamp = utc_timestamp();
    const auto text = manifest_.to_json();
    for (const auto& o : manifest_.outputs) {
      std::ofstream f(manifest_path(o.path), std::ios::binary);
      if (!f || !(f << text)) throw FormatError("cannot write manifest for " + o.path);
    }
  }

 private:
  std::ostream& out_;
  RunManifest manifest_;
};

void report(std::ostream& err, const std::vector<Diagnostic>& diagnostics,
            const char* label = "pass") {
  for (const auto& d : diagnostics) err << describe(d, label) << '\n';
}

// ---- calibrate -------------------------------------------------------------

struct CalibrateOptions {
  std::string spec;
  std::optional<double> microsteps;
  std::optional<double> mass;
  double density = 1.0;
  std::string out;
};

int calibrate(const CalibrateOptions& o, std::ostream& out, std::ostream& err) {
  Run run("calibrate", out);
  CalibrationResult result;
  if (o.microsteps || o.mass) {
    if (!o.microsteps || !o.mass) {
      throw DomainError("gravimetric calibration needs both --microsteps and --mass");
    }
    run.param("microsteps", fmt(*o.microsteps));
    run.param("mass_mg", fmt(*o.mass));
    run.param("density_mg_per_uL", fmt(o.density));
    result = gravimetric_calibration(*o.microsteps, *o.mass, o.density);
    if (!o.spec.empty()) {
      const auto geometric = microsteps_per_microliter(pump_spec_from_json(run.read(o.spec)));
      err << "geometric estimate " << fmt(geometric.microsteps_per_microliter)
          << " usteps/uL, gravimetric " << fmt(result.microsteps_per_microliter) << " usteps/uL\n";
    }
  } else {
    if (o.spec.empty()) throw DomainError("calibrate needs --spec or --microsteps with --mass");
    result = microsteps_per_microliter(pump_spec_from_json(run.read(o.spec)));
  }
  run.write(o.out.empty() ? std::nullopt : std::optional<fs::path>(o.out), to_json(result) + "\n");
  run.finish();
  return kExitOk;
}

// ---- compile ---------------------------------------------------------------

struct CompileOptions {
  std::string plan;
  std::string out;
};

int compile(const CompileOptions& o, std::ostream& out, std::ostream& err) {
  Run run("compile", out);
  const auto plan = plan_from_json(run.read(o.plan));
  const auto diagnostics = validate_plan(plan);
  report(err, diagnostics);
  const auto program = compile_plan(plan);
  run.write(o.out.empty() ? std::nullopt : std::optional<fs::path>(o.out), program.text());
  run.finish();
  return kExitOk;
}

// ---- simulate --------------------------------------------------------------

struct SimulateOptions {
  std::string gcode;
  std::string machine;
  std::string out;
  std::string profile;
  std::vector<double> window;
  double bin = kDefaultBin;
};

// Channel count implied by the highest M165 letter, at least one.
std::size_t channels_used(const std::vector<Command>& program) {
  std::size_t n = 1;
  for (const auto& c : program) {
    if (c.kind != CommandKind::M165) continue;
    for (const auto& w : c.words) {
      if (w.letter >= 'A' && w.letter <= 'F') {
        n = std::max(n, static_cast<std::size_t>(w.letter - 'A') + 1);
      }
    }
  }
  return n;
}

std::string profile_csv(const DepositionProfile& p) {
  std::string out = "region,bin_start_mm,bin_end_mm,ch,volume_uL\n";
  auto letter = [](std::size_t ch) { return std::string(1, static_cast<char>('A' + ch)); };
  for (std::size_t ch = 0; ch < p.bins.size(); ++ch) {
    out += "prime,," + fmt(p.window.lo) + ',' + letter(ch) + ',' + fmt(p.before_window[ch]) + '\n';
    for (std::size_t k = 0; k < p.bins[ch].size(); ++k) {
      const double lo = p.window.lo + static_cast<double>(k) * p.bin_width;
      const double hi = std::min(lo + p.bin_width, p.window.hi);
      out += "window," + fmt(lo) + ',' + fmt(hi) + ',' + letter(ch) + ',' + fmt(p.bins[ch][k]) +
             '\n';
    }
    out += "overrun," + fmt(p.window.hi) + ",," + letter(ch) + ',' + fmt(p.after_window[ch]) + '\n';
  }
  return out;
}

int simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  Run run("simulate", out);
  const auto program = parse_program(run.read(o.gcode));
  MachineConfig machine;
  std::string machine_source = "inferred";
  std::optional<fs::path> machine_path;
  if (!o.machine.empty()) {
    machine_path = o.machine;
  } else {
    machine_path = config_file("machine.json");
  }
  if (machine_path) {
    machine = machine_from_json(run.read(*machine_path));
    machine_source = machine_path->string();
  } else {
    machine.channels = channels_used(program);
  }
  run.param("machine", machine_source);

  const auto trace = run_program(program, MachineState::initial(machine), machine);
  run.write(o.out.empty() ? std::nullopt : std::optional<fs::path>(o.out), trace_to_csv(trace));

  if (!o.profile.empty()) {
    if (o.window.size() != 2) throw DomainError("--profile needs --window LO,HI");
    run.param("window", fmt(o.window[0]) + "," + fmt(o.window[1]));
    run.param("bin", fmt(o.bin));
    const auto profile = deposition_profile(trace, {o.window[0], o.window[1]}, o.bin);
    run.write_file(o.profile, profile_csv(profile));
  }
  run.finish();

  for (const auto& e : trace.events) {
    if (e.severity != Severity::info) err << describe(e, "line") << '\n';
  }
  const auto totals = trace.channel_totals();
  err << "simulated " << trace.segments.size() << " segment(s) in "
      << fmt(trace.final_state.elapsed) << " s;";
  for (std::size_t ch = 0; ch < totals.size(); ++ch) {
    err << ' ' << static_cast<char>('A' + ch) << '=' << fmt(totals[ch]) << " uL";
  }
  err << '\n';
  return trace.ok() ? kExitOk : kExitDomain;
}

// ---- predict ---------------------------------------------------------------

struct PredictOptions {
  double dr = 0;
  std::string model;
};

int predict(const PredictOptions& o, std::ostream& out, std::ostream&) {
  Run run("predict", out);
  WidthModel model = default_model();
  std::string source = "default";
  std::optional<fs::path> path;
  if (!o.model.empty()) {
    path = o.model;
  } else {
    path = config_file("width_model.json");
  }
  if (path) {
    model = width_model_from_json(run.read(*path));
    source = path->string();
  }
  const auto p = predict_width(model, o.dr);
  json flags = json::array();
  if (p.low_dr()) flags.push_back("LOW_DR");
  if (p.excess_dr()) flags.push_back("EXCESS_DR");
  const json j = {{"dr_nL_per_mm", o.dr}, {"width_mm", p.width}, {"flags", flags},
                  {"model", source}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
  std::string image;
  double mm_per_px = 0;
  std::size_t lines = 1;
  std::string axis = "horizontal";
  double sigma = kDefaultCannySigma;
  double exclusion = kDefaultExclusion;
  double window = kDefaultWindow;
  double bin = kDefaultBin;
  std::string out_dir;
  std::string edges;
};

int analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  Run run("analyze", out);
  run.input_digest(o.image);
  const auto image = load_image(o.image, o.mm_per_px);
  AnalysisParams params;
  params.lines = o.lines;
  params.axis = travel_axis_from_string(o.axis);
  params.sigma = o.sigma;
  params.exclusion = o.exclusion;
  params.window = o.window;
  params.bin = o.bin;
  for (const auto& [k, v] :
       std::map<std::string, std::string>{{"mm_per_px", fmt(o.mm_per_px)},
                                          {"lines", std::to_string(o.lines)},
                                          {"axis", to_string(params.axis)},
                                          {"sigma", fmt(o.sigma)},
                                          {"exclusion_mm", fmt(o.exclusion)},
                                          {"window_mm", fmt(o.window)},
                                          {"bin_mm", fmt(o.bin)}}) {
    run.param(k, v);
  }

  ImageAnalysis result;
  try {
    result = analyze_image(image, params);
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << '\n';
    for (std::size_t i = 1; i < e.details().size(); ++i) err << "  " << e.details()[i] << '\n';
    return kExitDomain;
  }

  if (!o.edges.empty()) {
    const fs::path edges_path = o.edges;
    if (edges_path.has_parent_path()) fs::create_directories(edges_path.parent_path());
    const auto rendered = result.edges.to_image();
    if (edges_path.extension() == ".pgm") {
      save_pgm(rendered, edges_path);
    } else {
      save_png(rendered, edges_path);
    }
    run.produced(edges_path);
  }

  for (std::size_t i = 0; i < result.series.size(); ++i) {
    const auto& band = result.bands[i];
    err << "line " << (i + 1) << ": " << band.paired_count() << " paired, " << band.gap_count()
        << " gap position(s)\n";
    const auto csv = width_series_to_csv(result.series[i]);
    if (!o.out_dir.empty()) {
      run.write_file(fs::path(o.out_dir) / ("line_" + std::to_string(i + 1) + ".csv"), csv);
    } else {
      if (result.series.size() > 1) out << "# line " << (i + 1) << '\n';
      out << csv;
    }
  }
  run.finish();
  return kExitOk;
}

// ---- stats -----------------------------------------------------------------

struct StatsOptions {
  std::vector<std::string> series;
  std::string tests = "bartlett,anova,ttest";
  bool welch = false;
  double confidence = 0.95;
  double alpha = 0.05;
  std::string out;
};

json test_json(const TestResult& r, double alpha, const std::vector<std::size_t>& groups) {
  json df = json::array({r.df1});
  if (r.df2) df.push_back(*r.df2);
  json stat = r.statistic;
  if (!std::isfinite(r.statistic)) stat = r.statistic > 0 ? "inf" : "-inf";
  return {{"test", r.test},          {"statistic", stat},
          {"df", df},                {"p_value", r.p_value},
          {"significant", r.significant(alpha)}, {"groups", groups}};
}

int stats(const StatsOptions& o, std::ostream& out, std::ostream& err) {
  Run run("stats", out);
  if (!(o.alpha > 0 && o.alpha < 1)) throw DomainError("--alpha must lie in (0, 1)");
  std::vector<std::string> tests;
  {
    std::istringstream in(o.tests);
    std::string t;
    while (std::getline(in, t, ',')) {
      if (t.empty()) continue;
      if (t != "bartlett" && t != "anova" && t != "ttest") {
        throw DomainError("unknown test '" + t + "' (expected bartlett, anova, ttest)");
      }
      tests.push_back(t);
    }
  }
  run.param("tests", o.tests);
  run.param("ttest_variant", o.welch ? "welch" : "pooled");
  run.param("confidence", fmt(o.confidence));
  run.param("alpha", fmt(o.alpha));

  std::vector<std::vector<double>> groups;
  json group_json = json::array();
  for (const auto& path : o.series) {
    groups.push_back(samples_from_csv(run.read(path)));
    const auto g = group_stats(groups.back(), o.confidence);
    group_json.push_back({{"source", path},
                          {"n", g.n},
                          {"mean", g.mean},
                          {"sample_variance", g.sample_variance},
                          {"ci", {g.ci_lo, g.ci_hi}},
                          {"confidence", g.confidence}});
  }

  json test_results = json::array();
  if (groups.size() < 2) {
    if (!tests.empty()) err << "note: tests need at least two series; only group statistics reported\n";
  } else {
    std::vector<std::size_t> all(groups.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (const auto& t : tests) {
      if (t == "bartlett") test_results.push_back(test_json(bartlett(groups), o.alpha, all));
      if (t == "anova") test_results.push_back(test_json(anova_oneway(groups), o.alpha, all));
      if (t == "ttest") {
        const auto variant = o.welch ? TTestVariant::welch : TTestVariant::pooled;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          for (std::size_t j = i + 1; j < groups.size(); ++j) {
            test_results.push_back(
                test_json(ttest_two_sample(groups[i], groups[j], variant), o.alpha, {i, j}));
          }
        }
      }
    }
  }
  const json report = {{"alpha", o.alpha},
                       {"alpha_assumed", true},
                       {"groups", group_json},
                       {"tests", test_results}};
  run.write(o.out.empty() ? std::nullopt : std::optional<fs::path>(o.out), report.dump(2) + "\n");
  run.finish();
  return kExitOk;
}

// ---- demo-leptospirosis ----------------------------------------------------

int demo(const std::string& out_dir, std::ostream& out, std::ostream& err) {
  Run run("demo-leptospirosis", out);
  const auto result = run_leptospirosis_demo();
  report(err, validate_plan(result.plan));
  const auto summary = demo_summary_json(result);
  if (!out_dir.empty()) {
    const fs::path dir = out_dir;
    run.write_file(dir / "plan.json", to_json(result.plan) + "\n");
    run.write_file(dir / "program.gcode", result.program.text());
    run.write_file(dir / "trace.csv", trace_to_csv(result.trace));
    run.write_file(dir / "summary.json", summary);
  }
  out << summary;
  run.finish();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reagent line dispensing toolchain: calibrate syringe pumps, compile dispensing "
               "plans to G-code, simulate them, predict and measure line widths, compare "
               "width series."};
  app.name("lfd");
  app.set_version_flag("--version", LFD_VERSION);
  app.require_subcommand(0, 1);
  app.footer(std::string("Environment: ") + kConfigDirVariable +
             " names a directory holding default machine.json and width_model.json.");

  CalibrateOptions cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Microsteps per microliter for a syringe pump");
  cal_cmd->add_option("--spec", cal.spec, "SyringePumpSpec JSON");
  cal_cmd->add_option("--microsteps", cal.microsteps, "Commanded microsteps (gravimetric)");
  cal_cmd->add_option("--mass", cal.mass, "Dispensed mass in mg (gravimetric)");
  cal_cmd->add_option("--density", cal.density, "Fluid density in mg/uL")->capture_default_str();
  cal_cmd->add_option("--out", cal.out, "Output JSON file (default: stdout)");

  CompileOptions comp;
  auto* comp_cmd = app.add_subcommand("compile", "Compile a DispensePlan JSON to G-code");
  comp_cmd->add_option("--plan", comp.plan, "DispensePlan JSON")->required();
  comp_cmd->add_option("--out", comp.out, "Output G-code file (default: stdout)");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Execute G-code on the virtual rig");
  sim_cmd->add_option("--gcode", sim.gcode, "G-code program")->required();
  sim_cmd->add_option("--machine", sim.machine, "MachineConfig JSON");
  sim_cmd->add_option("--out", sim.out, "Trace CSV (default: stdout)");
  sim_cmd->add_option("--profile", sim.profile, "Deposition profile CSV");
  sim_cmd->add_option("--window", sim.window, "Profile window LO,HI in mm")->delimiter(',')->expected(2);
  sim_cmd->add_option("--bin", sim.bin, "Profile bin width in mm")->capture_default_str();

  PredictOptions pred;
  auto* pred_cmd = app.add_subcommand("predict", "Predict line width from dispensing rate");
  pred_cmd->add_option("--dr", pred.dr, "Dispensing rate in nL/mm")->required();
  pred_cmd->add_option("--model", pred.model, "WidthModel JSON (default: built-in table)");

  AnalyzeOptions ana;
  auto* ana_cmd = app.add_subcommand("analyze", "Measure line widths in a membrane scan");
  ana_cmd->add_option("--image", ana.image, "PNG or binary PGM scan")->required();
  ana_cmd->add_option("--mm-per-px", ana.mm_per_px, "Image scale in mm per pixel")->required();
  ana_cmd->add_option("--lines", ana.lines, "Number of dispensed lines")->capture_default_str();
  ana_cmd->add_option("--axis", ana.axis, "Travel axis: horizontal or vertical")
      ->capture_default_str();
  ana_cmd->add_option("--sigma", ana.sigma, "Gaussian sigma in px")->capture_default_str();
  ana_cmd->add_option("--exclusion", ana.exclusion, "Excluded initial length in mm")
      ->capture_default_str();
  ana_cmd->add_option("--window", ana.window, "Analyzed length in mm")->capture_default_str();
  ana_cmd->add_option("--bin", ana.bin, "Bin length in mm")->capture_default_str();
  ana_cmd->add_option("--out-dir", ana.out_dir, "Write line_<n>.csv files here (default: stdout)");
  ana_cmd->add_option("--edges", ana.edges, "Also write the edge map (.png or .pgm)");

  StatsOptions st;
  auto* st_cmd = app.add_subcommand("stats", "Compare width series");
  st_cmd->add_option("--series", st.series, "Width series CSV files")->required()->expected(1, -1);
  st_cmd->add_option("--tests", st.tests, "Comma-separated: bartlett,anova,ttest")
      ->capture_default_str();
  st_cmd->add_flag("--welch", st.welch, "Welch t-test instead of pooled variance");
  st_cmd->add_option("--confidence", st.confidence, "Confidence level for intervals")
      ->capture_default_str();
  st_cmd->add_option("--alpha", st.alpha, "Significance level")->capture_default_str();
  st_cmd->add_option("--out", st.out, "Report JSON (default: stdout)");

  std::string demo_dir;
  auto* demo_cmd =
      app.add_subcommand("demo-leptospirosis", "Two-reagent strip plan: compile and simulate");
  demo_cmd->add_option("--out-dir", demo_dir, "Write plan, program, trace and summary here");

  if (args.empty()) {
    err << app.help();
    return kExitInput;
  }
  std::vector<const char*> argv{"lfd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << LFD_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kExitInput;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return kExitInput;
  }

  try {
    if (cal_cmd->parsed()) return calibrate(cal, out, err);
    if (comp_cmd->parsed()) return compile(comp, out, err);
    if (sim_cmd->parsed()) return simulate(sim, out, err);
    if (pred_cmd->parsed()) return predict(pred, out, err);
    if (ana_cmd->parsed()) return analyze(ana, out, err);
    if (st_cmd->parsed()) return stats(st, out, err);
    if (demo_cmd->parsed()) return demo(demo_dir, out, err);
  } catch (const CompileError& e) {
    report(err, e.diagnostics());
    err << "error: plan rejected\n";
    return kExitDomain;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitInput;
}

}  // namespace lfd::cli
