#include "leibniz/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "leibniz/catalog.hpp"
#include "leibniz/structure_io.hpp"
#include "leibniz/svg_plot.hpp"
#include "leibniz/trajectory_io.hpp"

#ifndef LEIBNIZ_DEFAULT_DATA_DIR
#define LEIBNIZ_DEFAULT_DATA_DIR "data"
#endif

namespace leibniz::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string default_data_dir() {
  if (const char* env = std::getenv("LEIBNIZ_DATA_DIR"); env && *env) return env;
  return LEIBNIZ_DEFAULT_DATA_DIR;
}

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct KnownMisprint {
  std::string system;
  std::string component; // rhs component, or empty
  std::string residual;
  std::string check;     // certification subject, or empty
  std::string reason;
};

std::vector<KnownMisprint> load_misprints(const std::string& dir) {
  const std::string path = (fs::path(dir) / "known_misprints.json").string();
  json j;
  try {
    j = read_json_file(path);
  } catch (const Error& e) {
    throw Error("broken installation: cannot load " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "leibniz-known-misprints" || !j.contains("entries") ||
      !j["entries"].is_array())
    throw Error("broken installation: " + path + " is not a known-misprint list");
  std::vector<KnownMisprint> out;
  for (const auto& e : j["entries"]) {
    KnownMisprint k{e.value("system", ""), e.value("component", ""), e.value("residual", ""), e.value("check", ""),
                    e.value("reason", "")};
    if (k.system.empty() || (k.component.empty() == k.check.empty()))
      throw Error("broken installation: malformed entry in " + path);
    out.push_back(std::move(k));
  }
  return out;
}

struct Common {
  std::string params;
  std::string gamma;
  std::string signs;
  std::string data_dir;
  bool json_out = false;
};

ParamValues parse_params(const Common& c) {
  ParamValues v;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  if (!c.params.empty())
    for (const auto& kv : split(c.params)) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ParameterError("--params expects k=v pairs, got '" + kv + "'");
      v[kv.substr(0, eq)] = parse_rational(kv.substr(eq + 1));
    }
  auto triple = [&](const std::string& text, const std::string& prefix, const char* flag) {
    if (text.empty()) return;
    auto parts = split(text);
    if (parts.size() != 3) throw ParameterError(std::string(flag) + " expects three comma-separated values");
    for (std::size_t i = 0; i < 3; ++i) v[prefix + std::to_string(i + 1)] = parse_rational(parts[i]);
  };
  triple(c.gamma, "gamma", "--gamma");
  triple(c.signs, "s", "--signs");
  return v;
}

void add_common(CLI::App* sub, Common& c, bool with_params) {
  if (with_params) {
    sub->add_option("--params", c.params, "parameter values k=v,... (rationals or decimals)");
    sub->add_option("--gamma", c.gamma, "gamma1,gamma2,gamma3 for gradient-beltrami");
    sub->add_option("--signs", c.signs, "s1,s2,s3 for gradient-beltrami");
  }
  sub->add_option("--data-dir", c.data_dir, "data directory (default: LEIBNIZ_DATA_DIR or the installed one)");
}

std::string data_dir_of(const Common& c) { return c.data_dir.empty() ? default_data_dir() : c.data_dir; }

struct IntegratorFlags {
  double t_end = -1;
  double step = 1e-2;
  double tol = 1e-10;
  std::string method = "rk45";
  std::string x0;
};

void add_integrator(CLI::App* sub, IntegratorFlags& f) {
  sub->add_option("--t-end", f.t_end, "final time (default: the entry's)");
  sub->add_option("--step", f.step, "fixed step (rk4) or initial step (rk45)")->capture_default_str();
  sub->add_option("--tol", f.tol, "absolute and relative tolerance for rk45")->capture_default_str();
  sub->add_option("--method", f.method, "rk4 or rk45")->check(CLI::IsMember({"rk4", "rk45"}))->capture_default_str();
  sub->add_option("--x0", f.x0, "initial condition, comma-separated (default: the entry's)");
}

IntegratorConfig make_config(const IntegratorFlags& f, const CatalogEntry& e) {
  IntegratorConfig cfg;
  cfg.method = f.method == "rk4" ? Method::rk4_fixed : Method::rk45_adaptive;
  cfg.step = f.step;
  cfg.abs_tol = cfg.rel_tol = f.tol;
  cfg.t_end = f.t_end > 0 ? f.t_end : e.t_end;
  if (f.t_end == 0 || (f.t_end < 0 && f.t_end != -1)) throw ParameterError("--t-end must be positive");
  cfg.validate();
  return cfg;
}

std::vector<double> initial_state(const IntegratorFlags& f, const CatalogEntry& e) {
  if (f.x0.empty()) return e.x0;
  std::vector<double> x;
  std::stringstream ss(f.x0);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(to_double(parse_rational(item)));
  if (x.size() != e.chart.dim())
    throw ParameterError("--x0 needs " + std::to_string(e.chart.dim()) + " values, got " + std::to_string(x.size()));
  return x;
}

CatalogEntry load_entry(const std::string& name, const std::string& file, const Common& c) {
  if (!file.empty()) {
    if (!name.empty()) throw UsageError("give either a system name or --file, not both");
    if (!parse_params(c).empty()) throw UsageError("parameters cannot be combined with --file");
    return entry_from_json(read_json_file(file));
  }
  if (name.empty()) throw UsageError("a system name is required");
  return catalog_build(name, parse_params(c));
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") out << text;
  else write_text_file(path, text);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// ---- list / describe ------------------------------------------------------

int cmd_list(const Common& c, std::ostream& out) {
  load_misprints(data_dir_of(c));
  auto entries = catalog_list();
  if (c.json_out) {
    json arr = json::array();
    for (const auto& e : entries) {
      json params = json::array();
      for (const auto& p : e.params)
        params.push_back({{"name", p.name}, {"default", to_string(p.default_value)}, {"constraint", p.constraint}});
      arr.push_back({{"name", e.name},
                     {"kind", to_string(e.kind)},
                     {"chart", e.chart},
                     {"description", e.description},
                     {"params", params}});
    }
    out << arr.dump(2) << "\n";
    return kOk;
  }
  std::size_t w = 4;
  for (const auto& e : entries) w = std::max(w, e.name.size());
  out << std::left << std::setw(static_cast<int>(w) + 2) << "NAME" << std::setw(24) << "KIND" << "PARAMETERS\n";
  for (const auto& e : entries) {
    std::string params;
    for (const auto& p : e.params) params += (params.empty() ? "" : " ") + p.name + "=" + to_string(p.default_value);
    if (params.empty()) params = "-";
    else params += "  (" + e.params.front().constraint + (e.params.size() > 3 ? "; " + e.params.back().constraint : "") + ")";
    out << std::setw(static_cast<int>(w) + 2) << e.name << std::setw(24) << to_string(e.kind) << params << "\n";
  }
  return kOk;
}

void print_matrix(std::ostream& out, const std::string& label, const TensorField2& t) {
  out << label << ":\n";
  for (const auto& row : t.to_strings()) {
    out << "  [";
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? ", " : "") << row[k];
    out << "]\n";
  }
}

int cmd_describe(const std::string& name, const std::string& file, const Common& c, std::ostream& out) {
  CatalogEntry e = load_entry(name, file, c);
  if (c.json_out) {
    out << entry_to_json(e).dump(2) << "\n";
    return kOk;
  }
  out << e.name << " (" << to_string(e.kind) << ")\n";
  if (!e.description.empty()) out << "  " << e.description << "\n";
  out << "chart: " << e.chart.describe() << "\n";
  if (!e.params.empty()) {
    out << "parameters:";
    for (const auto& [k, v] : e.params) out << " " << k << "=" << to_string(v);
    out << "\n";
  }
  if (e.tensor) print_matrix(out, "tensor", *e.tensor);
  if (e.pair) {
    print_matrix(out, "P", e.pair->p());
    print_matrix(out, "g", e.pair->g());
  }
  for (std::size_t k = 0; k < e.algebroids.size(); ++k)
    print_matrix(out, "Lambda" + (e.algebroids.size() > 1 ? std::to_string(k + 1) : std::string()),
                 lambda_from_structure(e.algebroids[k]).tensor);
  for (std::size_t k = 0; k < e.hamiltonians.size(); ++k)
    out << "h" << (e.hamiltonians.size() > 1 ? std::to_string(k + 1) : std::string()) << " = "
        << e.hamiltonians[k].to_string() << "\n";
  OdeSystem sys = e.derive();
  out << "derived system:\n";
  for (std::size_t i = 0; i < sys.dim(); ++i) out << "  " << sys.chart().var_name(i) << "' = " << sys.rhs()[i].to_string() << "\n";
  out << "initial condition:";
  for (double v : e.x0) out << " " << v;
  out << "\nt_end: " << e.t_end << "\n";
  for (const auto& n : e.notes) out << "note: " << n << "\n";
  return kOk;
}

// ---- verify ---------------------------------------------------------------

struct Judged {
  VerifyReport report;
  std::vector<std::string> whitelisted; // known-misprint notices
  std::vector<std::string> failures;
};

bool same_poly(const std::string& text, const Poly& p) {
  try {
    return parse_poly(p.chart(), text) == p;
  } catch (const Error&) {
    return false;
  }
}

Judged judge(VerifyReport report, const std::vector<KnownMisprint>& known, bool strict) {
  Judged j{std::move(report), {}, {}};
  auto listed_component = [&](const ComponentDiff& d) -> const KnownMisprint* {
    for (const auto& k : known)
      if (k.system == j.report.name && k.component == d.component && same_poly(k.residual, d.residual)) return &k;
    return nullptr;
  };
  auto listed_check = [&](const std::string& subject) -> const KnownMisprint* {
    for (const auto& k : known)
      if (k.system == j.report.name && k.check == subject) return &k;
    return nullptr;
  };
  for (const auto& d : j.report.components) {
    if (d.match()) continue;
    const KnownMisprint* k = strict ? nullptr : listed_component(d);
    if (k) j.whitelisted.push_back("known misprint in reference " + d.component + "': residual " +
                                   d.residual.to_string() + " (" + k->reason + ")");
    else j.failures.push_back("component " + d.component + "' differs from the reference");
  }
  for (const auto& o : j.report.checks) {
    if (!o.required || o.certificate.pass()) continue;
    const KnownMisprint* k = strict ? nullptr : listed_check(o.certificate.subject);
    if (k) j.whitelisted.push_back("known false claim: " + o.certificate.subject + " (" + k->reason + ")");
    else j.failures.push_back("certification failed: " + o.certificate.subject);
  }
  return j;
}

int cmd_verify(const std::string& name, bool all, const std::string& file, bool strict, const Common& c,
               std::ostream& out) {
  auto known = load_misprints(data_dir_of(c));
  ParamValues params = parse_params(c);
  std::vector<std::function<VerifyReport()>> jobs;
  if (all) {
    if (!name.empty() || !file.empty()) throw UsageError("--all takes no system name or file");
    for (const auto& s : catalog_list()) {
      std::string n = s.name;
      if (params.empty()) jobs.push_back([n] { return catalog_verify(n); });
      else throw UsageError("--all verifies symbolically and takes no parameters");
    }
  } else if (!file.empty()) {
    CatalogEntry e = load_entry("", file, c);
    jobs.push_back([e] { return catalog_verify(e); });
  } else {
    if (name.empty()) throw UsageError("verify needs a system name, --all or --file");
    if (params.empty()) {
      catalog_build(name, {}, true); // reject unknown names before fanning out
      jobs.push_back([name] { return catalog_verify(name); });
    } else {
      CatalogEntry e = catalog_build(name, params);
      jobs.push_back([e] { return catalog_verify(e); });
    }
  }

  std::vector<std::future<VerifyReport>> futures;
  for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
  std::vector<Judged> judged;
  for (auto& f : futures) judged.push_back(judge(f.get(), known, strict));

  bool ok = true;
  for (const auto& j : judged) ok = ok && j.failures.empty();

  if (c.json_out) {
    json arr = json::array();
    for (const auto& j : judged) {
      json r = j.report.to_json();
      r["known_misprints"] = j.whitelisted;
      r["failures"] = j.failures;
      r["pass"] = j.failures.empty();
      arr.push_back(r);
    }
    out << json{{"strict", strict}, {"pass", ok}, {"reports", arr}}.dump(2) << "\n";
  } else {
    for (std::size_t k = 0; k < judged.size(); ++k) {
      const auto& j = judged[k];
      if (k) out << "\n";
      out << j.report.to_text();
      for (const auto& w : j.whitelisted) out << "notice: " << w << "\n";
      for (const auto& f : j.failures) out << "failure: " << f << "\n";
      out << "result: " << (j.failures.empty() ? (j.whitelisted.empty() ? "PASS" : "PASS (with known-misprint notice)")
                                               : "FAIL")
          << "\n";
    }
  }
  return ok ? kOk : kVerificationFailed;
}

// ---- simulate / plot / export ----------------------------------------------

struct Run {
  CatalogEntry entry;
  OdeSystem system;
  Trajectory trajectory;
  ObservationReport observations;
};

Run run_entry(const CatalogEntry& e, const IntegratorFlags& f) {
  if (!e.chart.param_names().empty()) throw ParameterError("entry has unbound parameters; give values with --params");
  IntegratorConfig cfg = make_config(f, e);
  std::vector<double> x0 = initial_state(f, e);
  OdeSystem sys = e.derive();
  Trajectory traj = integrate(sys, x0, cfg);
  std::vector<Poly> obs;
  for (const auto& o : e.observables) obs.push_back(o.expr);
  ObservationReport rep = observe(sys, traj, obs);
  for (std::size_t k = 0; k < rep.series.size(); ++k) rep.series[k].label = e.observables[k].label;
  return {e, sys, std::move(traj), std::move(rep)};
}

int cmd_simulate(const std::string& name, const std::string& file, const Common& c, const IntegratorFlags& f,
                 const std::string& output, std::ostream& out) {
  CatalogEntry e = load_entry(name, file, c);
  Run r = run_entry(e, f);
  if (!output.empty()) {
    std::string text;
    if (ends_with(output, ".json")) {
      std::vector<std::string> exprs;
      for (const auto& o : e.observables) exprs.push_back(o.expr.to_string());
      text = trajectory_to_json(r.trajectory, &r.observations, exprs);
    } else {
      std::ostringstream os;
      write_trajectory_csv(os, r.trajectory);
      text = os.str();
    }
    write_output(output, text, out);
    if (output == "-") return kOk;
  }
  if (c.json_out) {
    json s{{"system", e.name},
           {"accepted_steps", r.trajectory.accepted_steps},
           {"rejected_steps", r.trajectory.rejected_steps},
           {"t_end", r.trajectory.times.back()},
           {"final_state", r.trajectory.final_state()}};
    json obs = json::array();
    for (const auto& sr : r.observations.series)
      obs.push_back({{"label", sr.label}, {"max_drift", sr.max_drift}, {"verdict", sr.verdict()}});
    s["observables"] = obs;
    out << s.dump(2) << "\n";
    return kOk;
  }
  out << e.name << ": integrated to t = " << r.trajectory.times.back() << " with " << r.trajectory.accepted_steps
      << " steps (" << r.trajectory.rejected_steps << " rejected)\n";
  out << "final state:";
  for (std::size_t k = 0; k < r.trajectory.names.size(); ++k)
    out << " " << r.trajectory.names[k] << "=" << std::setprecision(10) << r.trajectory.final_state()[k];
  out << "\n";
  for (const auto& sr : r.observations.series)
    out << "observable " << sr.label << ": max drift " << std::setprecision(3) << std::scientific << sr.max_drift
        << std::defaultfloat << ", " << sr.verdict() << "\n";
  if (!output.empty()) out << "wrote " << output << "\n";
  return kOk;
}

Trajectory read_trajectory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trajectory file " + path);
  if (ends_with(path, ".json")) {
    std::stringstream ss;
    ss << in.rdbuf();
    return trajectory_from_json(ss.str());
  }
  return read_trajectory_csv(in);
}

int cmd_plot(const std::string& name, const std::string& file, const std::string& input, const Common& c,
             const IntegratorFlags& f, const std::string& proj, int width, int height, const std::string& output,
             std::ostream& out) {
  PlotSpec spec;
  spec.projection = projection_from_string(proj);
  spec.width = width;
  spec.height = height;
  Trajectory traj;
  std::size_t base_dim = 0;
  std::string label;
  if (!input.empty()) {
    if (!name.empty() || !file.empty()) throw UsageError("give either a system or --input, not both");
    traj = read_trajectory_file(input);
    for (const auto& n : traj.names) base_dim += n.rfind("xi", 0) == 0 ? 0 : 1;
    label = fs::path(input).stem().string();
  } else {
    CatalogEntry e = load_entry(name, file, c);
    base_dim = e.chart.base_dim();
    if (is_fiber_projection(spec.projection) && e.chart.fiber_dim() == 0)
      throw ParameterError(std::string("projection ") + proj + " needs fiber coordinates, but " + e.name +
                           " has none");
    traj = run_entry(e, f).trajectory;
    label = e.name;
  }
  spec.title = label + ", " + proj;
  std::string svg = render_svg(traj, base_dim, spec);
  std::string path = output.empty() ? label + "_" + proj + ".svg" : output;
  write_output(path, svg, out);
  if (path != "-") out << "wrote " << path << "\n";
  return kOk;
}

int cmd_export(const std::string& name, const Common& c, const std::string& output, std::ostream& out) {
  CatalogEntry e = load_entry(name, "", c);
  write_output(output, entry_to_json(e).dump(2) + "\n", out);
  if (!output.empty() && output != "-") out << "wrote " << output << "\n";
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leibniz brackets, almost metriplectic systems and Leibniz algebroids: exact checks and orbits",
               "leibniz-cli"};
  app.require_subcommand(1);
  Common c;
  IntegratorFlags f;
  std::string name, file, input, output, proj = "x12";
  bool all = false, strict = false;
  int width = 640, height = 520;

  auto* list = app.add_subcommand("list", "list catalog systems");
  list->add_flag("--json", c.json_out, "JSON output");
  add_common(list, c, false);

  auto* describe = app.add_subcommand("describe", "show a system's structure and derived equations");
  describe->add_option("name", name, "catalog system");
  describe->add_option("--file", file, "entry file written by export");
  describe->add_flag("--json", c.json_out, "JSON output");
  add_common(describe, c, true);

  auto* verify = app.add_subcommand("verify", "exact verification against the reference systems");
  verify->add_option("name", name, "catalog system");
  verify->add_flag("--all", all, "verify every catalog system");
  verify->add_option("--file", file, "entry file written by export");
  verify->add_flag("--strict", strict, "treat known misprints as failures");
  verify->add_flag("--json", c.json_out, "JSON output");
  add_common(verify, c, true);

  auto* simulate = app.add_subcommand("simulate", "integrate a system and report observables");
  simulate->add_option("name", name, "catalog system");
  simulate->add_option("--file", file, "entry file written by export");
  simulate->add_option("-o,--output", output, "trajectory file (.csv or .json)");
  simulate->add_flag("--json", c.json_out, "JSON summary");
  add_common(simulate, c, true);
  add_integrator(simulate, f);

  auto* plot = app.add_subcommand("plot", "write an SVG orbit plot");
  plot->add_option("name", name, "catalog system");
  plot->add_option("--file", file, "entry file written by export");
  plot->add_option("--input", input, "trajectory file (.csv or .json) instead of a system");
  plot->add_option("--proj", proj, "x12, x13, x23, xi12, xi13, xi23, oblique3d_x, oblique3d_xi")->capture_default_str();
  plot->add_option("--width", width, "pixels")->capture_default_str();
  plot->add_option("--height", height, "pixels")->capture_default_str();
  plot->add_option("-o,--output", output, "SVG path (default <name>_<proj>.svg)");
  add_common(plot, c, true);
  add_integrator(plot, f);

  auto* exp = app.add_subcommand("export", "write a system as a JSON entry file");
  exp->add_option("name", name, "catalog system")->required();
  exp->add_option("-o,--output", output, "output path (default stdout)");
  add_common(exp, c, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list) return cmd_list(c, out);
    if (*describe) return cmd_describe(name, file, c, out);
    if (*verify) return cmd_verify(name, all, file, strict, c, out);
    if (*simulate) return cmd_simulate(name, file, c, f, output, out);
    if (*plot) return cmd_plot(name, file, input, c, f, proj, width, height, output, out);
    if (*exp) return cmd_export(name, c, output, out);
  } catch (const CertificationFailed& e) {
    err << "error: " << e.what() << "\n" << e.certificate.report();
    return kVerificationFailed;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << " (at t = " << e.time << ")\n";
    return kVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace leibniz::cli
