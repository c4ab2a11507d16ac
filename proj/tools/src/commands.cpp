#include "spacesplit_cli/commands.hpp"

#include "spacesplit/format.hpp"
#include "spacesplit/spacesplit.hpp"
#include "spacesplit_cli/config.hpp"
#include "spacesplit_cli/json_writer.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace spacesplit::cli {

namespace {

using nlohmann::ordered_json;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(std::string(what) + " is empty");
  return values;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open output file '" + path + "'");
  return os;
}

void write_text(const std::string& path, const std::string& text) {
  auto os = open_output(path);
  os << text;
}

/// CSV artifacts carry their config in a sidecar file.
void write_sidecar(const RunConfig& c, const std::string& path) {
  ordered_json j;
  j["config"] = to_json(c);
  write_text(path + ".config.json", dump_json(j));
}

ordered_json vector_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ParamVector param_vector(const std::vector<double>& s) {
  ParamVector p(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) p[static_cast<int>(i)] = s[i];
  return p;
}

S3Config s3_config(const RunConfig& c) {
  S3Config cfg;
  cfg.runup = c.runup;
  cfg.N = c.N;
  cfg.K = c.K;
  cfg.seed = c.seed;
  return cfg;
}

EnsembleConfig ensemble_config(const RunConfig& c) {
  EnsembleConfig e;
  e.orbits = c.oracle_orbits;
  e.orbit_length = c.oracle_orbit_length;
  e.runup = c.runup;
  e.seed = c.seed;
  e.workers = c.workers;
  return e;
}

ordered_json result_json(const RunConfig& c, const SensitivityResult& r) {
  ordered_json j;
  j["param_index"] = r.param_index >= 0 ? ordered_json(r.param_index + 1) : ordered_json(nullptr);
  j["s"] = vector_json(r.s);
  j["direction"] = vector_json(r.direction);
  j["K"] = r.K;
  j["N"] = r.N;
  j["runup"] = r.runup;
  j["seed"] = r.seed;
  j["stable"] = r.stable;
  j["unstable"] = r.unstable;
  j["total"] = r.total;
  j["stderr_stable"] = r.stderr_stable;
  j["stderr_unstable"] = r.stderr_unstable;
  j["stderr_total"] = r.stderr_total;
  j["per_k_terms"] = r.per_k_terms;
  (void)c;
  return j;
}

int cmd_sensitivity(const RunConfig& c, std::ostream& out) {
  const auto model = make_model(c.map);
  const auto J = make_observable(c.observable);
  const ParamVector s = param_vector(c.s);
  const Perturbation w(direction_weights(c, model->param_dim()));

  const SensitivityResult r = s3_sensitivity(*model, s, w, *J, s3_config(c));
  ordered_json j = result_json(c, r);

  if (c.diagnostics || !c.frames.empty() || !c.trajectory.empty()) {
    const Trajectory traj = generate_trajectory(*model, s, c.seed, c.runup, c.N);
    if (!c.trajectory.empty()) {
      auto os = open_output(c.trajectory);
      write_trajectory_csv(os, traj);
      write_sidecar(c, c.trajectory);
    }
    std::ofstream frames;
    if (!c.frames.empty()) {
      frames = open_output(c.frames);
      write_frame_csv_header(frames, model->dim(), c.diagnostics);
    }
    double max_split = 0.0;
    RunningStats g_stats;
    TangentOptions opts;
    opts.diagnostics = c.diagnostics;
    run_tangent_stack(traj, *model, s, w, opts,
                      [&](const TangentFrame& f, const DiagnosticFrame* d) {
                        if (frames.is_open()) write_frame_csv_row(frames, f, d);
                        if (d) {
                          max_split = std::max(max_split, std::abs(f.c - (f.a * d->g + d->b)));
                          g_stats.add(d->g);
                        }
                      });
    if (!c.frames.empty()) write_sidecar(c, c.frames);
    if (c.diagnostics) {
      j["diagnostics"] = {{"max_abs_c_minus_a_g_plus_b", max_split},
                          {"mean_g", g_stats.mean()}};
    }
  }
  j["config"] = to_json(c);

  out << "S3 sensitivity (" << c.map << ", J = " << c.observable << ")\n"
      << "  stable   = " << format_double(r.stable) << " +/- " << format_double(r.stderr_stable)
      << "\n  unstable = " << format_double(r.unstable) << " +/- "
      << format_double(r.stderr_unstable) << "\n  total    = " << format_double(r.total)
      << " +/- " << format_double(r.stderr_total) << "\n";
  if (!c.out.empty()) write_text(c.out, dump_json(j));
  return kExitOk;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const auto model = make_model(c.map);
  const auto J = make_observable(c.observable);
  const ParamVector base = param_vector(c.s);
  const Vector weights = direction_weights(c, model->param_dim());
  const Perturbation w(weights);

  ordered_json points = ordered_json::array();
  bool all_pass = true;
  for (double t : c.grid) {
    const ParamVector s = base + t * weights;
    const SensitivityResult r = s3_sensitivity(*model, s, w, *J, s3_config(c));
    const Estimate fd = central_difference(*model, s, w, c.oracle_delta, *J, ensemble_config(c));
    const OracleComparison cmp = compare_with_oracle(t, r, fd);
    all_pass = all_pass && cmp.pass;

    ordered_json p;
    p["s"] = t;
    p["s3_total"] = cmp.s3_total;
    p["fd"] = cmp.fd;
    p["tol"] = cmp.tol;
    p["pass"] = cmp.pass;
    p["s3_stderr"] = cmp.s3_stderr;
    p["fd_stderr"] = cmp.fd_stderr;
    p["stable"] = r.stable;
    p["unstable"] = r.unstable;
    p["per_k_terms"] = r.per_k_terms;
    points.push_back(p);

    out << "t = " << format_double(t) << ": S3 " << format_double(cmp.s3_total) << ", FD "
        << format_double(cmp.fd) << ", tol " << format_double(cmp.tol) << " -> "
        << (cmp.pass ? "PASS" : "FAIL") << "\n";
  }

  ordered_json j;
  j["points"] = points;
  j["pass"] = all_pass;
  j["config"] = to_json(c);
  if (!c.out.empty()) write_text(c.out, dump_json(j));
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_histogram(const RunConfig& c, std::ostream& out) {
  const auto model = make_model(c.map);
  if (model->dim() != 2) throw ConfigError("histogram needs a two-dimensional map");
  const Trajectory traj = generate_trajectory(*model, param_vector(c.s), c.seed, c.runup, c.N);
  const Histogram2D h = srb_histogram(traj, c.bins, c.bins);
  if (!c.out.empty()) {
    auto os = open_output(c.out);
    write_histogram_csv(os, h);
    write_sidecar(c, c.out);
  }
  if (!c.trajectory.empty()) {
    auto os = open_output(c.trajectory);
    write_trajectory_csv(os, traj);
    write_sidecar(c, c.trajectory);
  }
  out << "histogram: " << c.bins << "x" << c.bins << " bins over " << c.N << " points\n";
  return kExitOk;
}

int cmd_response_curve(const RunConfig& c, std::ostream& out) {
  const auto model = make_model(c.map);
  const auto J = make_observable(c.observable);
  const Perturbation w(direction_weights(c, model->param_dim()));
  const ResponseCurve curve =
      response_curve(*model, param_vector(c.s), w, c.grid, *J, ensemble_config(c));
  if (!c.out.empty()) {
    auto os = open_output(c.out);
    write_response_curve_csv(os, curve);
    write_sidecar(c, c.out);
  }
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]) << "  " << format_double(curve.means[i]) << " +/- "
        << format_double(curve.stderrs[i]) << "\n";
  }
  return kExitOk;
}

int cmd_variance_profile(const RunConfig& c, std::ostream& out) {
  const auto model = make_model(c.map);
  const auto J = make_observable(c.observable);
  const Perturbation w(direction_weights(c, model->param_dim()));
  DirectRuelleConfig cfg;
  cfg.K = c.K;
  cfg.ensemble = c.ensemble;
  cfg.seed = c.seed;
  cfg.runup = c.runup;
  const DirectRuelleResult r = direct_ruelle_estimate(*model, param_vector(c.s), w, *J, cfg);
  if (!c.out.empty()) {
    auto os = open_output(c.out);
    os << "k,mean,variance\n";
    for (std::size_t k = 0; k < r.per_k_mean.size(); ++k) {
      os << k << ',' << format_double(r.per_k_mean[k]) << ','
         << format_double(r.per_k_variance[k]) << '\n';
    }
    write_sidecar(c, c.out);
  }
  out << "direct Ruelle sum = " << format_double(r.value) << " +/- " << format_double(r.std_error)
      << "\nlog-slope of per-k variance over k in [2, " << std::min(c.K, 9)
      << ") = " << format_double(log_slope(r.per_k_variance, 2, 9)) << "\n";
  return kExitOk;
}

struct Flags {
  std::string config_path;
  std::string map, s, direction, observable, out, frames, trajectory, grid;
  int param = 0;
  long N = 0, runup = 0, orbits = 0, orbit_length = 0, ensemble = 0;
  int K = 0, workers = 0, bins = 0;
  std::uint64_t seed = 0;
  double oracle_delta = 0.0;
  bool diagnostics = false;
};

void add_flags(CLI::App* sub, Flags& f, std::map<std::string, CLI::Option*>& opts) {
  opts["config"] = sub->add_option("--config", f.config_path, "JSON config or prior artifact");
  opts["map"] = sub->add_option("--map", f.map, "map name");
  opts["s"] = sub->add_option("--s", f.s, "parameter vector, comma separated");
  opts["param"] = sub->add_option("--param", f.param, "active parameter (1-based)");
  opts["direction"] = sub->add_option("--direction", f.direction, "parameter weights, comma separated");
  opts["observable"] = sub->add_option("--observable", f.observable, "objective J");
  opts["N"] = sub->add_option("--N", f.N, "averaging length");
  opts["K"] = sub->add_option("--K", f.K, "correlation truncation");
  opts["runup"] = sub->add_option("--runup", f.runup, "run-up steps");
  opts["seed"] = sub->add_option("--seed", f.seed, "master seed");
  opts["out"] = sub->add_option("--out", f.out, "output file");
  opts["frames"] = sub->add_option("--frames", f.frames, "frame dump CSV");
  opts["trajectory"] = sub->add_option("--trajectory", f.trajectory, "trajectory CSV");
  opts["diagnostics"] = sub->add_flag("--diagnostics", f.diagnostics, "compute w, gamma, g, b");
  opts["oracle-delta"] = sub->add_option("--oracle-delta", f.oracle_delta, "FD half step");
  opts["orbits"] = sub->add_option("--orbits", f.orbits, "FD orbits per side");
  opts["orbit-length"] = sub->add_option("--orbit-length", f.orbit_length, "FD orbit length");
  opts["workers"] = sub->add_option("--workers", f.workers, "worker threads");
  opts["grid"] = sub->add_option("--grid", f.grid, "sweep coordinates, comma separated");
  opts["bins"] = sub->add_option("--bins", f.bins, "histogram bins per axis");
  opts["ensemble"] = sub->add_option("--ensemble", f.ensemble, "direct Ruelle ensemble size");
}

RunConfig resolve(const std::string& command, const Flags& f,
                  std::map<std::string, CLI::Option*>& opts) {
  RunConfig c;
  if (opts["config"]->count()) {
    std::ifstream is(f.config_path);
    if (!is) throw ConfigError("cannot read config file '" + f.config_path + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    merge_json(c, j);
  }
  c.command = command;
  auto given = [&](const char* name) { return opts[name]->count() > 0; };
  if (given("map")) c.map = f.map;
  if (given("s")) c.s = parse_list(f.s, "s");
  if (given("param")) {
    c.param = f.param;
    c.direction.reset();
  }
  if (given("direction")) c.direction = parse_list(f.direction, "direction");
  if (given("observable")) c.observable = f.observable;
  if (given("N")) c.N = f.N;
  if (given("K")) c.K = f.K;
  if (given("runup")) c.runup = f.runup;
  if (given("seed")) c.seed = f.seed;
  if (given("out")) c.out = f.out;
  if (given("frames")) c.frames = f.frames;
  if (given("trajectory")) c.trajectory = f.trajectory;
  if (given("diagnostics")) c.diagnostics = f.diagnostics;
  if (given("oracle-delta")) c.oracle_delta = f.oracle_delta;
  if (given("orbits")) c.oracle_orbits = f.orbits;
  if (given("orbit-length")) c.oracle_orbit_length = f.orbit_length;
  if (given("workers")) c.workers = f.workers;
  if (given("grid")) c.grid = parse_list(f.grid, "grid");
  if (given("bins")) c.bins = f.bins;
  if (given("ensemble")) c.ensemble = f.ensemble;
  if (c.s.empty()) {
    c.s.assign(static_cast<std::size_t>(make_model(c.map)->param_dim()), 0.0);
  }
  validate(c);
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Space-split sensitivity (S3) for chaotic maps"};
  app.require_subcommand(1);

  using Handler = std::function<int(const RunConfig&, std::ostream&)>;
  const std::vector<std::pair<std::string, Handler>> commands{
      {"sensitivity", cmd_sensitivity},
      {"validate", cmd_validate},
      {"histogram", cmd_histogram},
      {"response-curve", cmd_response_curve},
      {"variance-profile", cmd_variance_profile}};
  const std::map<std::string, std::string> help{
      {"sensitivity", "S3 derivative of <J> with respect to s"},
      {"validate", "S3 against the finite-difference oracle on a grid"},
      {"histogram", "SRB occupancy histogram CSV"},
      {"response-curve", "<J> along a parameter line, CSV"},
      {"variance-profile", "per-k variance of the direct Ruelle series, CSV"}};

  std::map<std::string, Flags> flags;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, handler] : commands) {
    subs[name] = app.add_subcommand(name, help.at(name));
    add_flags(subs[name], flags[name], opts[name]);
  }

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  for (const auto& [name, handler] : commands) {
    if (!subs[name]->parsed()) continue;
    try {
      const RunConfig c = resolve(name, flags[name], opts[name]);
      return handler(c, out);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfigError;
    } catch (const DegenerateTangentError& e) {
      err << "numerical error: " << e.what() << "\n";
      return kExitNumericalError;
    } catch (const InvalidStateError& e) {
      err << "numerical error: " << e.what() << "\n";
      return kExitNumericalError;
    } catch (const std::invalid_argument& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfigError;
    }
  }
  return kExitConfigError;
}

}  // namespace spacesplit::cli
