#include "rwrs/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwrs/dependence.hpp"
#include "rwrs/error.hpp"
#include "rwrs/io.hpp"
#include "rwrs/limit.hpp"
#include "rwrs/parallel.hpp"
#include "rwrs/process.hpp"
#include "rwrs/verify.hpp"

namespace rwrs {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kCommands{"simulate-rwrs", "simulate-limit", "local-time",
                                         "dependence",    "verify",         "export"};

struct Common {
  std::string config;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

struct ModelFlags {
  std::string model = "iid";
  double rho = 0.5;
  double kappa = 0.5;
  double exponent = 3.0;
  double sd = 1.0;
  std::string innovation = "normal";
};

std::string default_out_dir() {
  const char* env = std::getenv("RWRS_OUTPUT_DIR");
  return env && *env ? env : "rwrs-out";
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON document with default flag values (flags override)");
  sub->add_option("--threads", c.threads, "worker threads, 0 = all cores");
  sub->add_option("--seed", c.seed, "master seed");
  c.out = default_out_dir();
  sub->add_option("--out", c.out, "output directory (default $RWRS_OUTPUT_DIR or ./rwrs-out)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_model(CLI::App* sub, ModelFlags& m) {
  sub->add_option("--model", m.model, "iid, ar1, linear-power, ifs, ifs-tanh, doubling, doubling-cos, zero")
      ->check(CLI::IsMember({"iid", "ar1", "linear-power", "ifs", "ifs-tanh", "doubling", "doubling-cos", "zero"}));
  sub->add_option("--rho", m.rho, "AR(1) coefficient");
  sub->add_option("--kappa", m.kappa, "contraction of the iterated function model");
  sub->add_option("--exponent", m.exponent, "b in a_j = (j+1)^-b for linear-power");
  sub->add_option("--sd", m.sd, "innovation standard deviation");
  sub->add_option("--innovation", m.innovation, "normal, uniform or rademacher")
      ->check(CLI::IsMember({"normal", "uniform", "rademacher"}));
}

InnovationLaw innovation_of(const ModelFlags& m) {
  if (m.innovation == "uniform") return UniformLaw{m.sd * std::sqrt(3.0)};
  if (m.innovation == "rademacher") return RademacherLaw{m.sd};
  return NormalLaw{m.sd};
}

SceneryModel model_of(const ModelFlags& m) {
  const auto eps = innovation_of(m);
  if (m.model == "zero") return SceneryModel::zero();
  if (m.model == "iid") return SceneryModel::iid(eps);
  if (m.model == "ar1") return SceneryModel::linear(GeometricCoefficients{m.rho}, eps);
  if (m.model == "linear-power") return SceneryModel::linear(PowerCoefficients{m.exponent}, eps);
  if (m.model == "ifs") return SceneryModel::iterated(m.kappa, Transfer::Linear, eps);
  if (m.model == "ifs-tanh") return SceneryModel::iterated(m.kappa, Transfer::Tanh, eps);
  if (m.model == "doubling") return SceneryModel::doubling(Observable::Centered);
  if (m.model == "doubling-cos") return SceneryModel::doubling(Observable::Cosine);
  throw ConfigError("unknown model " + m.model);
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_times(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_number(p));
  if (out.empty()) throw ConfigError("empty time grid");
  return out;
}

/// "simple" or "step:prob,step:prob,...".
IncrementLaw parse_law(const std::string& s) {
  if (s == "simple") return IncrementLaw::simple();
  std::vector<Atom> atoms;
  for (const auto& p : split(s, ',')) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) throw ConfigError("law atoms are written step:probability, got '" + p + "'");
    const double step = parse_number(p.substr(0, colon));
    if (step != std::floor(step)) throw ConfigError("steps must be integers, got '" + p + "'");
    atoms.push_back({static_cast<Site>(step), parse_number(p.substr(colon + 1))});
  }
  return IncrementLaw(std::move(atoms));
}

std::string law_string(const IncrementLaw& law) {
  std::ostringstream s;
  s << "{";
  for (std::size_t k = 0; k < law.atoms().size(); ++k)
    s << (k ? ", " : "") << law.atoms()[k].step << ":" << law.atoms()[k].probability;
  s << "}";
  return s.str();
}

/// Resolved flag values of a parsed subcommand, in --config format.
json echo_config(CLI::App* sub) {
  json options = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    if (opt->count() > 0) {
      options[name] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      options[name] = opt->get_default_str();
    }
  }
  return json{{"command", sub->get_name()}, {"options", options}};
}

/// The echo without flags that cannot change results, for CSV headers.
json result_config(json echo) {
  for (const char* key : {"out", "threads", "format"}) echo["options"].erase(key);
  return echo;
}

struct Output {
  fs::path dir;
  std::vector<std::string> written;

  void save(const std::string& name, const std::string& contents) {
    write_file(dir / name, contents);
    written.push_back((dir / name).string());
  }
  void report() const {
    std::cout << "wrote:";
    for (const auto& w : written) std::cout << " " << w;
    std::cout << "\n";
  }
};

unsigned threads_of(const Common& c) { return c.threads == 0 ? default_threads() : c.threads; }

std::string seed_list(const std::vector<std::uint64_t>& seeds, std::size_t show = 3) {
  std::ostringstream s;
  for (std::size_t k = 0; k < std::min(show, seeds.size()); ++k) s << (k ? ", " : "") << seeds[k];
  if (seeds.size() > show) s << ", ... (" << seeds.size() << " total)";
  return s.str();
}

void print_summary_rows(const json& per_t) {
  std::cout << std::setw(8) << "t" << std::setw(14) << "mean" << std::setw(14) << "variance" << std::setw(14)
            << "q05" << std::setw(14) << "median" << std::setw(14) << "q95" << "\n";
  for (const auto& row : per_t) {
    const auto& q = row["quantiles"];
    std::cout << std::setw(8) << row["t"].get<double>() << std::setw(14) << row["mean"].get<double>()
              << std::setw(14) << row["variance"].get<double>() << std::setw(14) << q["q05"].get<double>()
              << std::setw(14) << q["q50"].get<double>() << std::setw(14) << q["q95"].get<double>()
              << "\n";
  }
}

// --- subcommands ----------------------------------------------------------------

int cmd_simulate_rwrs(const Common& c, const ModelFlags& m, const std::string& law_text, std::size_t n,
                      const std::string& times, std::size_t replicates, std::size_t memory_cap, const json& echo) {
  RwrsConfig cfg;
  cfg.law = parse_law(law_text);
  cfg.model = model_of(m);
  cfg.n = n;
  cfg.times = parse_times(times);
  cfg.replicates = replicates;
  cfg.seed = c.seed;
  cfg.threads = threads_of(c);
  cfg.memory_cap = memory_cap;
  validate(cfg);
  const auto batch = simulate_rwrs(cfg);

  Output out{c.out, {}};
  const auto summary = batch_summary(batch);
  out.save("config.json", echo.dump(2) + "\n");
  if (c.format == "csv") {
    std::ostringstream csv;
    write_batch_csv(csv, batch, {"batch", c.seed, result_config(echo)});
    out.save("rwrs_batch.csv", csv.str());
    out.save("rwrs_summary.json", summary.dump(2) + "\n");
  } else {
    json doc{{"summary", summary}, {"times", batch.times}, {"raw", batch.raw}, {"normalized", batch.normalized}};
    out.save("rwrs_batch.json", doc.dump(2) + "\n");
  }

  std::cout << "simulate-rwrs  model=" << cfg.model.name() << "  law=" << law_string(cfg.law) << "  n=" << n
            << "  replicates=" << replicates << "  seed=" << c.seed << "  threads=" << cfg.threads << "\n";
  std::cout << "property (P): " << (batch.property_p.holds() ? "holds" : "inconclusive")
            << (batch.property_p.witness_q ? " (q=" + std::to_string(*batch.property_p.witness_q) + ")" : "") << "\n";
  std::cout << "walk seeds: " << seed_list(batch.walk_seeds) << "\n";
  std::cout << "scenery seeds: " << seed_list(batch.scenery_seeds) << "\n";
  std::cout << "n^{-3/4} Sigma_[nt]:\n";
  print_summary_rows(summary["per_t"]);
  out.report();
  return kExitOk;
}

int cmd_simulate_limit(const Common& c, double dt, double h, const std::string& times, std::size_t replicates,
                       bool field, const json& echo) {
  LimitConfig cfg;
  cfg.dt = dt;
  cfg.h = h;
  cfg.times = parse_times(times);
  cfg.horizon = cfg.times.back();
  cfg.replicates = replicates;
  cfg.seed = c.seed;
  cfg.threads = threads_of(c);
  validate(cfg);
  const auto batch = simulate_delta(cfg);

  Output out{c.out, {}};
  const auto summary = delta_summary(batch);
  out.save("config.json", echo.dump(2) + "\n");
  if (c.format == "csv") {
    std::ostringstream csv;
    write_delta_csv(csv, batch, {"delta", c.seed, result_config(echo)});
    out.save("delta_batch.csv", csv.str());
    out.save("delta_summary.json", summary.dump(2) + "\n");
  } else {
    json doc{{"summary", summary},
             {"times", batch.times},
             {"delta", batch.delta},
             {"squared_integral", batch.squared_integral}};
    out.save("delta_batch.json", doc.dump(2) + "\n");
  }
  if (field) {
    std::ostringstream csv;
    write_field_csv(csv, simulate_bm_local_time(cfg, 0), {"local-time-field", c.seed, result_config(echo)});
    out.save("local_time_field.csv", csv.str());
  }

  std::cout << "simulate-limit  dt=" << dt << "  h=" << h << "  replicates=" << replicates << "  seed=" << c.seed
            << "  threads=" << cfg.threads << "\n";
  std::cout << "Delta_t:\n";
  print_summary_rows(summary["per_t"]);
  std::cout << "mean int L_t^2 at t=" << batch.times.back() << ": "
            << summary["per_t"].back()["mean_squared_integral"].get<double>() << "\n";
  out.report();
  return kExitOk;
}

int cmd_local_time(const Common& c, const std::string& law_text, std::size_t n, std::size_t replicate,
                   const json& echo) {
  const auto law = parse_law(law_text);
  RandomStream rng(c.seed, replicate, StreamTag::Walk);
  const auto profile = local_time(sample_walk(law, n, rng));
  const auto table = self_intersection_table(profile);
  const auto p = check_property_P(law, 8, 64);

  Output out{c.out, {}};
  out.save("config.json", echo.dump(2) + "\n");
  if (c.format == "csv") {
    std::ostringstream a;
    std::ostringstream b;
    write_profile_csv(a, profile, {"profile", c.seed, result_config(echo)});
    write_alpha_csv(b, table, {"alpha", c.seed, result_config(echo)});
    out.save("profile.csv", a.str());
    out.save("alpha.csv", b.str());
  } else {
    json doc{{"left", profile.left()},
             {"counts", std::vector<std::uint64_t>(profile.counts().begin(), profile.counts().end())},
             {"alpha_min_lag", table.min_lag()},
             {"alpha", std::vector<std::uint64_t>(table.values().begin(), table.values().end())}};
    out.save("local_time.json", doc.dump(2) + "\n");
  }

  std::cout << "local-time  law=" << law_string(law) << "  n=" << n << "  seed=" << c.seed
            << "  replicate=" << replicate << "\n";
  std::cout << "hull [" << profile.left() << ", " << profile.right() << "]  max N=" << max_local_time(profile)
            << "  alpha(n,0)=" << table.at(0) << "  sum N=" << profile.total() << "\n";
  std::cout << "property (P): " << (p.holds() ? "holds" : "inconclusive") << "  " << p.reachable_check << "\n";
  out.report();
  return kExitOk;
}

int cmd_dependence(const Common& c, CLI::Option* family_opt, const std::string& family, double scale, double rate,
                   double a, double epsilon, const ModelFlags& m, double lambda, std::size_t lag_cap,
                   const json& echo) {
  json doc;
  std::optional<DecayBound> bound;
  if (family_opt->count() > 0) {
    if (family == "geometric") {
      bound.emplace(GeometricDecay{scale, rate}, "user");
    } else {
      bound.emplace(PolynomialDecay{scale, a}, "user");
    }
  } else {
    const auto model = model_of(m);
    bound.emplace(theta_bound(model, c.seed));
    doc["model"] = model;
    const auto w = weighted_cov_sum(model, lambda, lag_cap, c.seed);
    doc["weighted_cov_sum"] = {{"lambda", w.lambda},
                               {"lag_cap", w.lag_cap},
                               {"partial_sum", w.partial_sum},
                               {"tail_bound", std::isfinite(w.tail_bound) ? json(w.tail_bound) : json(nullptr)},
                               {"analytic", w.analytic}};
    if (const auto s = analytic_sigma_inf_sq(model)) doc["sigma_inf_sq"] = *s;
  }
  const auto report = epsilon > 0.0 ? check_A2(*bound, epsilon) : check_A2_exists(*bound);
  doc["bound"] = *bound;
  doc["a2"] = report;
  doc["verdict"] = report.verdict;

  Output out{c.out, {}};
  out.save("config.json", echo.dump(2) + "\n");
  out.save("dependence.json", doc.dump(2) + "\n");
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const Common& c, bool quick, std::size_t calibration, const json& echo) {
  VerifyOptions opts;
  opts.seed = c.seed;
  opts.quick = quick;
  opts.threads = threads_of(c);
  opts.calibration_seeds = calibration;
  const auto report = run_verification(opts);

  Output out{c.out, {}};
  out.save("config.json", echo.dump(2) + "\n");
  out.save("verify.json", json(report).dump(2) + "\n");
  std::cout << "verify  seed=" << c.seed << "  quick=" << (quick ? "yes" : "no") << "  threads=" << opts.threads
            << "\n"
            << format_report(report);
  out.report();
  return report.overall ? kExitOk : kExitCheckFailed;
}

int cmd_export(const Common& c, const ModelFlags& m, Site left, Site right, std::size_t k_max, const json& echo) {
  if (right < left) throw ConfigError("export needs left <= right");
  const auto model = model_of(m);
  RandomStream rng(c.seed, 0, StreamTag::Scenery);
  const auto window = sample_scenery(model, left, right, rng);

  Output out{c.out, {}};
  out.save("config.json", echo.dump(2) + "\n");
  out.save("model.json", json(model).dump(2) + "\n");
  json covariance = json::array();
  for (std::size_t k = 0; k <= k_max; ++k) {
    const auto r = analytic_covariance(model, k);
    if (!r) break;
    covariance.push_back({{"lag", k}, {"r", *r}});
  }
  if (c.format == "csv") {
    std::ostringstream csv;
    write_scenery_csv(csv, window, {"scenery", c.seed, result_config(echo)});
    out.save("scenery.csv", csv.str());
    if (!covariance.empty()) {
      std::ostringstream cov;
      cov << csv_header({"covariance", c.seed, result_config(echo)}) << "lag,r\n";
      for (const auto& row : covariance)
        cov << row["lag"].get<std::size_t>() << "," << format_double(row["r"].get<double>()) << "\n";
      out.save("covariance.csv", cov.str());
    }
  } else {
    json doc{{"model", model}, {"left", window.left}, {"values", window.values}, {"covariance", covariance}};
    out.save("scenery.json", doc.dump(2) + "\n");
  }
  std::cout << "export  model=" << model.name() << "  sites [" << left << ", " << right << "]  seed=" << c.seed
            << "\n";
  out.report();
  return kExitOk;
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");

  std::vector<std::string> out(args.begin(), args.begin() + (args.empty() ? 0 : 1));
  std::size_t rest = 1;
  const bool has_command =
      args.size() > 1 && std::find(kCommands.begin(), kCommands.end(), args[1]) != kCommands.end();
  if (has_command) {
    out.push_back(args[1]);
    rest = 2;
    if (doc.contains("command") && doc["command"] != args[1])
      throw ConfigError("config file is for '" + doc["command"].get<std::string>() + "', not '" + args[1] + "'");
  } else if (doc.contains("command") && doc["command"].is_string()) {
    out.push_back(doc["command"].get<std::string>());
  } else {
    throw ConfigError("no subcommand given on the command line or in the config file");
  }

  if (doc.contains("options")) {
    if (!doc["options"].is_object()) throw ConfigError("config 'options' must be an object");
    for (const auto& [key, value] : doc["options"].items()) {
      std::string text;
      if (value.is_string()) {
        text = value.get<std::string>();
      } else if (value.is_array()) {
        for (const auto& v : value) text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      } else if (value.is_primitive() && !value.is_null()) {
        text = value.dump();
      } else {
        throw ConfigError("config option '" + key + "' has an unsupported value");
      }
      out.push_back("--" + key + "=" + text);
    }
  }
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(std::min(rest, args.size())), args.end());
  return out;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"rwrs-lab: Monte Carlo laboratory for random walks in random scenery", "rwrs-lab"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();

  Common common;
  ModelFlags model;
  std::string law = "simple";
  std::size_t n = 1024;
  std::string times = "1";
  std::size_t replicates = 1000;
  std::size_t memory_cap = kDefaultMemoryCap;

  auto* rw = app.add_subcommand("simulate-rwrs", "Monte Carlo batch of normalized RWRS sums");
  add_common(rw, common);
  add_model(rw, model);
  rw->add_option("--law", law, "step law: simple or step:prob,step:prob,...");
  rw->add_option("--n", n, "number of walk steps");
  rw->add_option("--times", times, "comma-separated grid in (0, 1]");
  rw->add_option("--replicates", replicates, "independent replicates");
  rw->add_option("--memory-cap", memory_cap, "max buffered scenery values per replicate");

  double dt = 1e-4;
  double h = 1e-2;
  std::size_t limit_replicates = 5000;
  bool field = false;
  auto* lim = app.add_subcommand("simulate-limit", "Simulate the limit process Delta_t");
  add_common(lim, common);
  lim->add_option("--dt", dt, "Brownian time step");
  lim->add_option("--bin-width", h, "local-time bin width h");
  lim->add_option("--times", times, "comma-separated grid");
  lim->add_option("--replicates", limit_replicates, "independent replicates");
  lim->add_flag("--field", field, "also export the local-time field of replicate 0");

  std::size_t replicate = 0;
  auto* lt = app.add_subcommand("local-time", "Local time profile and self-intersection table of one walk");
  add_common(lt, common);
  lt->add_option("--law", law, "step law: simple or step:prob,step:prob,...");
  lt->add_option("--n", n, "number of walk steps");
  lt->add_option("--replicate", replicate, "replicate index of the walk stream");

  std::string family = "geometric";
  double scale = 1.0;
  double rate = 0.5;
  double a = 2.0;
  double epsilon = 0.0;
  double lambda = 0.25;
  std::size_t lag_cap = 200;
  auto* dep = app.add_subcommand("dependence", "theta_2 bound and the (A2) summability check");
  add_common(dep, common);
  add_model(dep, model);
  auto* family_opt = dep->add_option("--family", family, "explicit bound: geometric or polynomial")
                         ->check(CLI::IsMember({"geometric", "polynomial"}));
  dep->add_option("--scale", scale, "bound scale C");
  dep->add_option("--rate", rate, "geometric rate rho");
  dep->add_option("--a", a, "polynomial exponent a");
  dep->add_option("--epsilon", epsilon, "fixed epsilon in (0,1); 0 searches for one");
  dep->add_option("--lambda", lambda, "weight exponent of the covariance series");
  dep->add_option("--lag-cap", lag_cap, "lags summed explicitly in the covariance series");

  bool quick = false;
  std::size_t calibration = 0;
  auto* ver = app.add_subcommand("verify", "Run the verification suite");
  add_common(ver, common);
  ver->add_flag("--quick", quick, "mandatory checks only");
  ver->add_option("--calibration", calibration, "repeat the KS check over this many master seeds");

  Site left = -100;
  Site right = 100;
  std::size_t k_max = 40;
  auto* exp = app.add_subcommand("export", "Export a scenery window, its descriptor and covariances");
  add_common(exp, common);
  add_model(exp, model);
  exp->add_option("--left", left, "first site");
  exp->add_option("--right", right, "last site");
  exp->add_option("--k-max", k_max, "largest covariance lag exported");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(args);
    std::vector<const char*> ptrs;
    for (const auto& s : args) ptrs.push_back(s.c_str());
    try {
      app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kExitOk : kExitConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    const json echo = echo_config(sub);
    if (sub == rw) return cmd_simulate_rwrs(common, model, law, n, times, replicates, memory_cap, echo);
    if (sub == lim) return cmd_simulate_limit(common, dt, h, times, limit_replicates, field, echo);
    if (sub == lt) return cmd_local_time(common, law, n, replicate, echo);
    if (sub == dep)
      return cmd_dependence(common, family_opt, family, scale, rate, a, epsilon, model, lambda, lag_cap, echo);
    if (sub == ver) return cmd_verify(common, quick, calibration, echo);
    return cmd_export(common, model, left, right, k_max, echo);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const MemoryCapError& e) {
    std::cerr << "memory cap exceeded: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NegativeLongRunVariance& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace rwrs
