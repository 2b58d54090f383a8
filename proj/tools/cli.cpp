#include "smlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smlab/certificate.hpp"
#include "smlab/datum.hpp"
#include "smlab/density.hpp"
#include "smlab/dirichlet.hpp"
#include "smlab/errors.hpp"
#include "smlab/format.hpp"
#include "smlab/mollifier.hpp"
#include "smlab/packing.hpp"
#include "smlab/parallel.hpp"
#include "smlab/params.hpp"
#include "smlab/propagator.hpp"
#include "smlab/sweep.hpp"

namespace smlab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string config;
  std::string out_dir;
  std::string points;
  unsigned threads = 0;
  bool override_limits = false;
  bool plot_data = false;
  std::int64_t nmin = 0;
  std::int64_t nmax = 0;
};

// Keys every subcommand accepts on top of its own.
const std::set<std::string> kCommonKeys = {"threads", "override_limits"};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ContractError("config " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ContractError("config " + path + " must be a JSON object");
  return doc;
}

// Splits the config into parameter keys and extras; anything else is an error.
std::pair<json, json> split_config(const json& doc, const std::set<std::string>& extras,
                                   bool with_params) {
  json params = json::object();
  json rest = json::object();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (with_params && is_param_key(it.key())) {
      params[it.key()] = it.value();
    } else if (extras.count(it.key()) || kCommonKeys.count(it.key())) {
      rest[it.key()] = it.value();
    } else {
      throw ContractError("unknown config key: " + it.key());
    }
  }
  return {params, rest};
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ContractError(std::string("config key has the wrong type: ") + key);
  }
}

std::optional<Vec> get_theta(const json& j) {
  if (!j.contains("theta")) return std::nullopt;
  return get_or<Vec>(j, "theta", {});
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

// Writes (name, text) pairs under --out; without --out the first CSV goes to
// `out`.
void emit(const Options& opt, const std::vector<std::pair<std::string, std::string>>& files,
          std::ostream& out) {
  if (opt.out_dir.empty()) {
    out << files.front().second;
    return;
  }
  fs::create_directories(opt.out_dir);
  for (const auto& [name, text] : files) write_file(fs::path(opt.out_dir) / name, text);
}

std::string vec_header(const char* prefix, int n) {
  std::string h;
  for (int c = 1; c <= n; ++c) h += std::string(prefix) + "_" + std::to_string(c) + ",";
  return h;
}

std::string vec_fields(std::span<const double> v) {
  std::string s;
  for (double c : v) s += format_double(c) + ",";
  return s;
}

struct Context {
  json params_doc;
  json extras;
  ExperimentParams params;
  bool allow_large = false;
};

Context prepare(const Options& opt, const std::set<std::string>& extras) {
  Context ctx;
  const json doc = load_config(opt.config);
  std::tie(ctx.params_doc, ctx.extras) = split_config(doc, extras, true);
  ctx.allow_large = opt.override_limits || get_or<bool>(ctx.extras, "override_limits", false);
  ctx.params = params_from_json(ctx.params_doc, ctx.allow_large);
  return ctx;
}

int cmd_interfere(const Options& opt, std::ostream& out) {
  const auto ctx = prepare(opt, {"perturb"});
  const auto& p = ctx.params;
  const bool perturb = get_or<bool>(ctx.extras, "perturb", false);
  const Datum d = build_datum(p, std::nullopt, ctx.allow_large);
  const auto samples =
      sample_lambda(p, static_cast<std::size_t>(p.sample_count), p.seed, perturb);
  const auto report = verify_interference(d, samples);

  const double root = std::sqrt(d.omega_measure());
  const double h = p.space_spacing();
  const double dt = p.time_spacing();
  std::vector<std::string> rows(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const auto values = evaluate_lambda_times(d, samples[i].m, samples[i].u);
    double best = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double r = std::abs(values[k]) / root;
      if (r < best) {
        best = r;
        at = k;
      }
    }
    Vec x(p.n);
    for (int c = 0; c < p.n; ++c) x[c] = h * static_cast<double>(samples[i].m[c]) + samples[i].u[c];
    rows[i] = std::to_string(i) + "," + vec_fields(x) + format_double(best) + "," +
              format_double(static_cast<double>(at + 1) * dt) + "\n";
  });
  std::string csv = "sample," + vec_header("x", p.n) + "min_ratio,argmin_t\n";
  for (const auto& r : rows) csv += r;

  json doc = {{"params", to_json(p)},
              {"perturb", perturb},
              {"floor", interference_floor()},
              {"tolerance", report.tolerance},
              {"min_ratio", report.min_ratio},
              {"argmin_x", report.argmin_x},
              {"argmin_t", report.argmin_t},
              {"points", report.points},
              {"omega_measure", d.omega_measure()},
              {"passed", report.passed}};
  emit(opt, {{"interfere.csv", csv}, {"interfere.json", dump_json(doc)}}, out);
  return kExitOk;
}

std::string density_csv(const DensityWitness& w) {
  const int n = static_cast<int>(w.theta.size());
  return vec_header("theta", n) + "worst_deficiency,target,samples,violations,passed\n" +
         vec_fields(w.theta) + format_double(w.worst_deficiency) + "," +
         format_double(w.target) + "," + std::to_string(w.samples) + "," +
         std::to_string(w.violations) + "," + (w.passed() ? "1" : "0") + "\n";
}

int cmd_density(const Options& opt, std::ostream& out) {
  const auto ctx = prepare(opt, {"theta", "candidates", "search_budget", "target"});
  const auto& p = ctx.params;
  std::optional<double> target;
  if (ctx.extras.contains("target")) target = get_or<double>(ctx.extras, "target", 0.0);
  DensityWitness w;
  if (auto theta = get_theta(ctx.extras)) {
    w = density_deficiency(*theta, p, static_cast<std::size_t>(p.sample_count), p.seed, target);
  } else if (ctx.extras.contains("candidates")) {
    const auto cands = get_or<std::vector<Vec>>(ctx.extras, "candidates", {});
    if (cands.empty()) throw ContractError("candidates must be a non-empty list");
    w = search_theta_among(cands, p, p.seed, target);
  } else {
    const auto budget = get_or<std::size_t>(ctx.extras, "search_budget", 64);
    if (budget == 0) throw ContractError("search_budget must be >= 1");
    w = search_theta(p, budget, p.seed, target);
  }
  json doc = to_json(w);
  doc["params"] = to_json(p);
  emit(opt, {{"density.csv", density_csv(w)}, {"density.json", dump_json(doc)}}, out);
  return kExitOk;
}

int cmd_certify(const Options& opt, std::ostream& out) {
  const auto ctx = prepare(opt, {"theta", "search_budget", "truncation_K"});
  const auto& p = ctx.params;
  Vec theta;
  if (auto t = get_theta(ctx.extras)) {
    theta = *t;
  } else {
    const auto budget = get_or<std::size_t>(ctx.extras, "search_budget", 64);
    if (budget == 0) throw ContractError("search_budget must be >= 1");
    theta = search_theta(p, budget, p.seed).theta;
  }
  const auto K = get_or<std::int64_t>(ctx.extras, "truncation_K", default_truncation(p));
  const MollifierSpec moll(p.n, p.eps);
  const auto rep = certificate(theta, p, K, moll);

  std::string csv = vec_header("theta", p.n) +
                    "R,sigma,phi0,eta_mass,gamma_trunc,tail_bound,margin,truncation_radius,"
                    "certified\n" +
                    vec_fields(rep.theta) + format_double(rep.R) + "," + format_double(rep.sigma) +
                    "," + format_double(rep.phi0) + "," + format_double(rep.eta_mass) + "," +
                    format_double(rep.gamma_trunc) + "," + format_double(rep.tail_bound) + "," +
                    format_double(rep.margin) + "," + std::to_string(rep.truncation_radius) + "," +
                    (rep.certified() ? "1" : "0") + "\n";
  json doc = to_json(rep);
  doc["params"] = to_json(p);
  emit(opt, {{"certificate.csv", csv}, {"certificate.json", dump_json(doc)}}, out);
  return kExitOk;
}

int cmd_dirichlet(const Options& opt, std::ostream& out) {
  const json doc = load_config(opt.config);
  const auto extras = split_config(doc, {"nmin", "nmax"}, false).second;
  std::int64_t nmin = opt.nmin > 0 ? opt.nmin : get_or<std::int64_t>(extras, "nmin", 16);
  std::int64_t nmax = opt.nmax > 0 ? opt.nmax : get_or<std::int64_t>(extras, "nmax", 16384);
  if (nmin < 1 || nmax < nmin) throw ContractError("dirichlet needs 1 <= nmin <= nmax");
  const auto rows = dirichlet_sweep(nmin, nmax);
  emit(opt, {{"dirichlet.csv", dirichlet_csv(rows)}}, out);
  return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  const auto ctx = prepare(opt, {"R_list", "search_budget", "density_samples"});
  if (opt.plot_data && opt.out_dir.empty()) throw ContractError("--plot-data needs --out");
  const auto R_list = get_or<std::vector<double>>(ctx.extras, "R_list", {256.0, 1024.0, 4096.0});
  SweepOptions so;
  so.search_budget = get_or<std::size_t>(ctx.extras, "search_budget", so.search_budget);
  so.density_samples = get_or<std::size_t>(ctx.extras, "density_samples", so.density_samples);
  so.allow_large_rho_eps = ctx.allow_large;
  if (so.search_budget == 0) throw ContractError("search_budget must be >= 1");
  const auto rep = r_sweep(ctx.params, R_list, so);
  json doc = to_json(rep);
  doc["params"] = to_json(ctx.params);
  std::vector<std::pair<std::string, std::string>> files = {{"sweep.csv", sweep_csv(rep)},
                                                             {"sweep.json", dump_json(doc)}};
  if (opt.plot_data) files.emplace_back("sweep_loglog.dat", sweep_loglog(rep));
  emit(opt, files, out);
  return kExitOk;
}

int cmd_packing(const Options& opt, std::ostream& out) {
  // sigma may sit on either side of 1/(n+2) here, so the parameter
  // validator is not used.
  const json doc = load_config(opt.config);
  const auto extras = split_config(doc, {"n", "sigma", "eps", "R_list"}, false).second;
  const int n = get_or<int>(extras, "n", 3);
  const double sigma = get_or<double>(extras, "sigma", 0.15);
  const double eps = get_or<double>(extras, "eps", kDefaultSmallness);
  const auto R_list =
      get_or<std::vector<double>>(extras, "R_list", {256.0, 1024.0, 4096.0, 16384.0});
  const auto rep = packing_check(n, sigma, R_list, eps);
  emit(opt, {{"packing.csv", packing_csv(rep)}, {"packing.json", dump_json(to_json(rep))}}, out);
  return kExitOk;
}

std::vector<std::pair<Vec, double>> read_points(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open points file: " + path);
  std::vector<std::pair<Vec, double>> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' ||
          line[0] == '+' || line[0] == '.'))
      continue;  // header
    std::stringstream ss(line);
    std::string cell;
    Vec vals;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ContractError(path + ":" + std::to_string(lineno) + ": not a number: " + cell);
      }
    }
    if (static_cast<int>(vals.size()) != n + 1)
      throw ContractError(path + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(n + 1) + " columns");
    const double t = vals.back();
    vals.pop_back();
    pts.emplace_back(std::move(vals), t);
  }
  return pts;
}

int cmd_evaluate(const Options& opt, std::ostream& out) {
  const auto ctx = prepare(opt, {"theta"});
  if (opt.points.empty()) throw ContractError("evaluate needs --points <csv>");
  const auto pts = read_points(opt.points, ctx.params.n);
  const Datum d = build_datum(ctx.params, get_theta(ctx.extras), ctx.allow_large);
  const auto rows = evaluate_batch(d, pts);
  std::string csv = evaluation_csv_header(ctx.params.n);
  for (const auto& r : rows) csv += evaluation_csv_row(r);
  emit(opt, {{"evaluate.csv", csv}}, out);
  return kExitOk;
}

unsigned resolve_threads(const Options& opt) {
  if (opt.threads > 0) return opt.threads;
  if (opt.config.empty()) return 1;
  // Peek at the config; malformed files are reported by the subcommand.
  try {
    std::ifstream in(opt.config);
    json doc;
    in >> doc;
    if (doc.is_object() && doc.contains("threads")) {
      const auto t = doc.at("threads").get<int>();
      if (t < 1) throw ContractError("threads must be >= 1");
      return static_cast<unsigned>(t);
    }
  } catch (const json::exception&) {
  }
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for the lattice counterexample to the Schroedinger maximal estimate",
               "smlab"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config, "JSON config file");
    if (needs_config) c->required();
    sub->add_option("--out", opt.out_dir, "output directory (default: CSV to stdout)");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--override-limits", opt.override_limits, "allow rho, eps above 1/100");
  };
  auto* interfere = app.add_subcommand("interfere", "interference floor on sampled Lambda points");
  auto* density = app.add_subcommand("density", "torus density of a direction, or a search");
  auto* certify = app.add_subcommand("certify", "Fourier positivity certificate for a direction");
  auto* dirichlet = app.add_subcommand("dirichlet", "L1 norms of the Dirichlet kernel");
  auto* sweep = app.add_subcommand("sweep", "R sweep and exponent fit");
  auto* packing = app.add_subcommand("packing", "volume bound of the neighbourhood set");
  auto* evaluate = app.add_subcommand("evaluate", "evaluate u at points read from a CSV");
  for (auto* s : {interfere, density, certify, sweep, evaluate}) add_common(s, false);
  add_common(dirichlet, false);
  add_common(packing, false);
  dirichlet->add_option("--nmin", opt.nmin, "smallest N (default 16)");
  dirichlet->add_option("--nmax", opt.nmax, "largest N (default 16384)");
  sweep->add_flag("--plot-data", opt.plot_data, "also write sweep_loglog.dat");
  evaluate->add_option("--points", opt.points, "CSV of x_1..x_n,t rows")->required();

  std::vector<std::string> storage = args;
  std::vector<char*> argv;
  std::string name = "smlab";
  argv.push_back(name.data());
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_thread_count(resolve_threads(opt));
    if (interfere->parsed()) return cmd_interfere(opt, out);
    if (density->parsed()) return cmd_density(opt, out);
    if (certify->parsed()) return cmd_certify(opt, out);
    if (dirichlet->parsed()) return cmd_dirichlet(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (packing->parsed()) return cmd_packing(opt, out);
    if (evaluate->parsed()) return cmd_evaluate(opt, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace smlab
