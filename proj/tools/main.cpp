// warpft: command-line front end for the warped-transform library.
//
// Subcommands: warp eval|invert|check-bracket, gft, chirp synth|harmonize|
// estimate, diffuse run|msd. Config-driven commands read a JSON run config;
// see the README for the schemas. Exit codes: 0 success, 1 numeric failure,
// 2 usage or validation failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "warpft/chirp.hpp"
#include "warpft/diffusion.hpp"
#include "warpft/errors.hpp"
#include "warpft/gft.hpp"
#include "warpft/grid.hpp"
#include "warpft/io.hpp"
#include "warpft/numerics.hpp"
#include "warpft/svg.hpp"
#include "warpft/warp.hpp"

namespace {

using nlohmann::json;
using namespace warpft;

struct GlobalArgs {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  int threads = 1;
};

// Inline JSON if the argument starts with '{', otherwise a file path.
std::string json_text_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return read_text_file(arg);
}

json parse_config(const GlobalArgs& g) {
  if (g.config.empty())
    throw ValidationError("this subcommand requires --config <path>");
  json j = json::parse(json_text_arg(g.config), nullptr, false);
  if (j.is_discarded())
    throw ValidationError(g.config + ": invalid JSON");
  if (!j.is_object())
    throw ValidationError(g.config + ": config must be a JSON object");
  return j;
}

std::string out_path(const GlobalArgs& g, const std::string& name) {
  std::filesystem::create_directories(g.out);
  return (std::filesystem::path(g.out) / name).string();
}

Warp warp_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError(std::string("config: missing '") + key + "' warp");
  return warp_from_json_text(j[key].dump());
}

GridSpec grid_field(const json& j, const char* key) {
  if (!j.contains(key))
    throw ValidationError(std::string("config: missing '") + key + "' grid");
  return grid_from_json_text(j[key].dump());
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ValidationError(std::string("config: missing numeric '") + key + "'");
  return j[key].get<double>();
}

std::string string_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    throw ValidationError(std::string("config: missing string '") + key + "'");
  return j[key].get<std::string>();
}

SamplingMode sampling_field(const json& j, const char* key, SamplingMode dflt) {
  if (!j.contains(key)) return dflt;
  const std::string s = string_field(j, key);
  if (s == "warped_uniform") return SamplingMode::WarpedUniform;
  if (s == "raw") return SamplingMode::Raw;
  throw ValidationError(std::string("config: '") + key +
                        "' must be warped_uniform or raw");
}

// ---------------------------------------------------------------- warp ----

int cmd_warp_eval(const std::string& warp_arg, double x) {
  const Warp w = warp_from_json_text(json_text_arg(warp_arg));
  std::printf("{\"W\":%s}\n", format_double(w.eval(x)).c_str());
  return 0;
}

int cmd_warp_invert(const std::string& warp_arg, double value) {
  const Warp w = warp_from_json_text(json_text_arg(warp_arg));
  std::printf("{\"x\":%s}\n", format_double(w.invert(value)).c_str());
  return 0;
}

int cmd_warp_bracket(const std::string& warp_arg, double x, double p) {
  const Warp w = warp_from_json_text(json_text_arg(warp_arg));
  const double bracket = poisson_bracket_check(w, PhaseSpacePoint{x, p});
  std::printf("{\"bracket\":%s,\"residual\":%s}\n",
              format_double(bracket).c_str(),
              format_double(std::abs(bracket - 1.0)).c_str());
  return 0;
}

// ----------------------------------------------------------------- gft ----

MixedKernelSpec kernel_from_config(const json& cfg) {
  MixedKernelSpec spec;
  if (cfg.contains("kernel")) {
    const json& k = cfg["kernel"];
    if (!k.is_object())
      throw ValidationError("config: 'kernel' must be an object");
    if (k.contains("source_warp"))
      spec.source_warp = warp_from_json_text(k["source_warp"].dump());
    if (k.contains("target_warp"))
      spec.target_warp = warp_from_json_text(k["target_warp"].dump());
    if (k.contains("sign")) {
      if (!k["sign"].is_number_integer())
        throw ValidationError("config: kernel sign must be +1 or -1");
      spec.sign = k["sign"].get<int>();
    }
  }
  spec.validate();
  return spec;
}

int cmd_gft(const GlobalArgs& g, bool check_gaussian, bool roundtrip,
            bool use_fft, bool allow_truncation) {
  const json cfg = parse_config(g);
  const MixedKernelSpec spec = kernel_from_config(cfg);

  if (check_gaussian) {
    FixedPointOptions fp;
    if (cfg.contains("source_grid")) fp.source = grid_field(cfg, "source_grid");
    if (cfg.contains("target_grid")) fp.target = grid_field(cfg, "target_grid");
    fp.threads = g.threads;
    const double err = gaussian_fixed_point_residual(spec.source_warp,
                                                     spec.target_warp, fp);
    std::printf("{\"max_error\":%s}\n", format_double(err).c_str());
    return 0;
  }

  const Coord in_coord = coord_from_string(
      cfg.contains("input_coord") ? string_field(cfg, "input_coord") : "x");
  SampledSignal f = read_signal_csv(string_field(cfg, "input"), in_coord);

  // CSV carries explicit nodes only. An optional source_grid declares that
  // they lie on a uniform grid, unlocking the roundtrip and fft paths.
  if (cfg.contains("source_grid")) {
    const GridSpec sg = grid_field(cfg, "source_grid");
    if (sg.count != f.size())
      throw ValidationError("config: source_grid count does not match input");
    SampledSignal uniform(in_coord, sg);
    for (std::size_t i = 0; i < sg.count; ++i)
      if (std::abs(uniform.nodes[i] - f.nodes[i]) >
          1e-9 * std::max(1.0, std::abs(uniform.nodes[i])))
        throw ValidationError("config: source_grid does not match input nodes");
    uniform.samples = std::move(f.samples);
    f = std::move(uniform);
  }

  TransformOptions opt;
  opt.source_sampling =
      sampling_field(cfg, "source_sampling", SamplingMode::WarpedUniform);
  opt.target_sampling = sampling_field(cfg, "target_sampling", SamplingMode::Raw);
  opt.output_coord = coord_from_string(
      cfg.contains("output_coord") ? string_field(cfg, "output_coord") : "K");
  opt.allow_truncation = allow_truncation;
  opt.route = use_fft ? Route::FftFastPath : Route::Direct;
  opt.threads = g.threads;

  const GridSpec target = grid_field(cfg, "target");
  const SampledSignal out = forward(spec, f, target, opt);

  if (roundtrip) {
    // Send the transform back through the inverse on the input nodes and
    // report the largest sample deviation.
    if (!f.grid)
      throw ValidationError(
          "roundtrip needs a uniform input grid; declare it with the "
          "source_grid config key");
    TransformOptions back = opt;
    back.source_sampling = opt.target_sampling;
    back.target_sampling = opt.source_sampling;
    back.output_coord = f.coord;
    const SampledSignal rt = inverse(spec, out, *f.grid, back);
    double residual = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      residual = std::max(residual, std::abs(rt.samples[i] - f.samples[i]));
    std::printf("{\"roundtrip_residual\":%s}\n", format_double(residual).c_str());
    return 0;
  }

  const std::string out_file = cfg.contains("output")
                                   ? string_field(cfg, "output")
                                   : out_path(g, "gft_output.csv");
  write_signal_csv(out_file, out);
  return 0;
}

// --------------------------------------------------------------- chirp ----

HarmonizeOptions harmonize_from_config(const json& cfg, int threads,
                                       HarmonizeOptions opt = {}) {
  if (cfg.contains("omega_big_grid"))
    opt.omega_big_grid = grid_field(cfg, "omega_big_grid");
  if (cfg.contains("t_grid")) opt.t_grid = grid_field(cfg, "t_grid");
  if (cfg.contains("omega_grid")) opt.omega_grid = grid_field(cfg, "omega_grid");
  if (cfg.contains("warped_count")) {
    if (!cfg["warped_count"].is_number_unsigned())
      throw ValidationError("config: warped_count must be a positive integer");
    opt.warped_count = cfg["warped_count"].get<std::size_t>();
  }
  if (cfg.contains("warped_span_cap"))
    opt.warped_span_cap = number_field(cfg, "warped_span_cap");
  opt.threads = threads;
  return opt;
}

int cmd_chirp_synth(const GlobalArgs& g) {
  const json cfg = parse_config(g);
  ChirpSpec spec;
  spec.time_warp = warp_field(cfg, "warp");
  const GridSpec grid = cfg.contains("grid")
                            ? grid_field(cfg, "grid")
                            : GridSpec{-8.0, 16.0 / 1024.0, 1025};
  const SampledSignal S = synthesize(spec, grid);
  const std::string out_file = cfg.contains("output")
                                   ? string_field(cfg, "output")
                                   : out_path(g, "signal.csv");
  write_signal_csv(out_file, S);
  return 0;
}

int cmd_chirp_harmonize(const GlobalArgs& g, bool svg) {
  const json cfg = parse_config(g);
  const SampledSignal S = read_signal_csv(string_field(cfg, "input"), Coord::T);
  const Warp T = warp_field(cfg, "time_warp");
  const Warp Omega = cfg.contains("omega_warp") ? warp_field(cfg, "omega_warp")
                                                : Warp::identity();
  const HarmonizeOptions opt = harmonize_from_config(cfg, g.threads);

  const auto [S_hat, report] = harmonize(S, T, Omega, opt);
  const SampledSignal spec_sig = spectrum(S_hat, opt.omega_grid, g.threads);

  write_signal_csv(out_path(g, "harmonized.csv"), S_hat);
  write_signal_csv(out_path(g, "spectrum.csv"), spec_sig);
  std::vector<double> coeffs;  // harmonize reports carry no search state
  write_text_file(out_path(g, "report.json"),
                  report_to_json(report, coeffs) + "\n");

  if (svg) {
    std::vector<double> mag(spec_sig.size());
    for (std::size_t i = 0; i < spec_sig.size(); ++i)
      mag[i] = std::abs(spec_sig.samples[i]);
    PlotOptions po;
    po.title = "harmonized spectrum";
    po.x_label = "omega";
    po.y_label = "|S(omega)|";
    write_text_file(out_path(g, "spectrum.svg"),
                    render_polyline_svg(spec_sig.nodes, mag, po));
  }
  return 0;
}

int cmd_chirp_estimate(const GlobalArgs& g) {
  const json cfg = parse_config(g);
  const SampledSignal S = read_signal_csv(string_field(cfg, "input"), Coord::T);

  if (!cfg.contains("search") || !cfg["search"].is_object() ||
      !cfg["search"]["axes"].is_array())
    throw ValidationError("config: estimate needs search.axes");
  SearchGrid search;
  for (const json& a : cfg["search"]["axes"]) {
    SearchAxis axis;
    axis.min = number_field(a, "min");
    axis.step = number_field(a, "step");
    if (!a.contains("count") || !a["count"].is_number_unsigned())
      throw ValidationError("config: search axis count must be positive");
    axis.count = a["count"].get<std::size_t>();
    search.axes.push_back(axis);
  }

  EstimateOptions opt;
  opt.harmonize = harmonize_from_config(cfg, 1, HarmonizeOptions::search());
  opt.seed = g.seed;
  opt.threads = g.threads;

  const WarpEstimate est = estimate_warp(S, search, opt);
  write_text_file(out_path(g, "estimate.json"), estimate_to_json(est) + "\n");
  return 0;
}

// ------------------------------------------------------------- diffuse ----

int cmd_diffuse_run(const GlobalArgs& g, bool svg) {
  const json cfg = parse_config(g);
  const Warp w = warp_field(cfg, "warp");
  const double D = number_field(cfg, "D");
  if (!cfg.contains("times") || !cfg["times"].is_array())
    throw ValidationError("config: diffuse run needs a times array");
  std::vector<double> times;
  for (const json& t : cfg["times"]) {
    if (!t.is_number()) throw ValidationError("config: times must be numbers");
    times.push_back(t.get<double>());
  }

  MsdOptions opt;
  if (cfg.contains("mode")) {
    const std::string mode = string_field(cfg, "mode");
    opt.mode = measure_from_string(mode);
  }
  opt.threads = g.threads;

  const MsdSeries series = msd_experiment(w, D, times, opt);
  write_msd_csv(out_path(g, "msd.csv"), series);

  // Final-time snapshot in both coordinates.
  const DensityProfile rho_W = msd_profile_at(w, D, times.back(), opt);
  const DensityProfile rho_x = pullback_to_x(rho_W, w, opt.mode);
  write_profile_csv(out_path(g, "profile_W.csv"), rho_W);
  write_profile_csv(out_path(g, "profile_x.csv"), rho_x);

  if (svg) {
    PlotOptions po;
    po.title = "mean square displacement";
    po.x_label = "log10 t";
    po.y_label = "log10 msd";
    po.log_x = true;
    po.log_y = true;
    write_text_file(out_path(g, "msd.svg"),
                    render_polyline_svg(series.times, series.msd, po));
  }
  return 0;
}

int cmd_diffuse_msd(const std::string& profile_path, const std::string& coord,
                    const std::string& measure) {
  const DensityProfile rho = read_profile_csv(
      profile_path, profile_coord_from_string(coord),
      measure_from_string(measure));
  std::printf("{\"msd\":%s}\n", format_double(msd(rho)).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warped Fourier transform toolkit"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config, "run-config JSON path");
  app.add_option("--out", g.out, "output directory (default .)");
  app.add_option("--seed", g.seed, "search-shuffle seed (never affects results)");
  app.add_option("--threads", g.threads, "worker threads (<=0 uses all cores)");

  // Global options may appear after any subcommand.
  const auto inherit_globals = [](CLI::App* sub) { sub->fallthrough(true); };

  // warp
  auto* warp_cmd = app.add_subcommand("warp", "pointwise warp operations");
  warp_cmd->require_subcommand(1);
  std::string warp_json;
  double warp_x = 0.0, warp_p = 0.0, warp_value = 0.0;
  auto* weval = warp_cmd->add_subcommand("eval", "evaluate W(x)");
  weval->add_option("--warp", warp_json, "warp JSON (inline or path)")->required();
  weval->add_option("--x", warp_x, "evaluation point")->required();
  auto* winv = warp_cmd->add_subcommand("invert", "solve W(x) = value");
  winv->add_option("--warp", warp_json, "warp JSON (inline or path)")->required();
  winv->add_option("--value", warp_value, "target value")->required();
  auto* wbr = warp_cmd->add_subcommand("check-bracket",
                                       "Poisson bracket of (W, P_W)");
  wbr->add_option("--warp", warp_json, "warp JSON (inline or path)")->required();
  wbr->add_option("--x", warp_x, "phase-space x")->required();
  wbr->add_option("--p", warp_p, "phase-space p")->required();

  // gft
  auto* gft_cmd = app.add_subcommand("gft", "generalized Fourier transform");
  bool check_gaussian = false, roundtrip = false, use_fft = false,
       allow_truncation = false;
  gft_cmd->add_flag("--check-gaussian", check_gaussian,
                    "print the Gaussian fixed-point residual");
  gft_cmd->add_flag("--roundtrip", roundtrip,
                    "print the inverse(forward(f)) residual");
  gft_cmd->add_flag("--fft", use_fft, "use the identity-warp fast path");
  gft_cmd->add_flag("--allow-truncation", allow_truncation,
                    "skip the boundary-decay check");

  // chirp
  auto* chirp_cmd = app.add_subcommand("chirp", "chirp pipelines");
  chirp_cmd->require_subcommand(1);
  auto* csynth = chirp_cmd->add_subcommand("synth", "synthesize a chirp");
  bool chirp_svg = false;
  auto* charm = chirp_cmd->add_subcommand("harmonize", "two-stage harmonization");
  charm->add_flag("--svg", chirp_svg, "also write a spectrum plot");
  auto* cest = chirp_cmd->add_subcommand("estimate", "search for the time warp");

  // diffuse
  auto* diff_cmd = app.add_subcommand("diffuse", "diffusion experiments");
  diff_cmd->require_subcommand(1);
  bool diff_svg = false;
  auto* drun = diff_cmd->add_subcommand("run", "MSD experiment");
  drun->add_flag("--svg", diff_svg, "also write a log-log MSD plot");
  std::string profile_path, profile_coord = "x", profile_measure = "dx";
  auto* dmsd = diff_cmd->add_subcommand("msd", "MSD of a stored profile");
  dmsd->add_option("--profile", profile_path, "profile CSV path")->required();
  dmsd->add_option("--coord", profile_coord, "profile coordinate label");
  dmsd->add_option("--measure", profile_measure, "profile measure label");

  for (CLI::App* sub : {warp_cmd, gft_cmd, chirp_cmd, diff_cmd, weval, winv,
                        wbr, csynth, charm, cest, drun, dmsd})
    inherit_globals(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (weval->parsed()) return cmd_warp_eval(warp_json, warp_x);
    if (winv->parsed()) return cmd_warp_invert(warp_json, warp_value);
    if (wbr->parsed()) return cmd_warp_bracket(warp_json, warp_x, warp_p);
    if (gft_cmd->parsed())
      return cmd_gft(g, check_gaussian, roundtrip, use_fft, allow_truncation);
    if (csynth->parsed()) return cmd_chirp_synth(g);
    if (charm->parsed()) return cmd_chirp_harmonize(g, chirp_svg);
    if (cest->parsed()) return cmd_chirp_estimate(g);
    if (drun->parsed()) return cmd_diffuse_run(g, diff_svg);
    if (dmsd->parsed())
      return cmd_diffuse_msd(profile_path, profile_coord, profile_measure);
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return 1;
  }
}
