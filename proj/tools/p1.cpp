// p1: command-line front end. Every subcommand writes its artifacts plus
// <command>.manifest.json into --out. Exit codes: 0 ok, 1 numerical failure,
// 2 usage error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "p1/asymptotics.hpp"
#include "p1/classifier.hpp"
#include "p1/cubic.hpp"
#include "p1/error.hpp"
#include "p1/format.hpp"
#include "p1/ode.hpp"
#include "p1/stokes.hpp"
#include "p1/tables.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace p1;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Key registry: every key any subcommand understands. Defaults are per
// subcommand; "" means unset.
const std::vector<std::string> kKeys = {
    "r",     "b",       "A",     "xi",      "n",       "side",   "tol",     "out",    "workers",
    "seed",  "p",       "H",     "t_start", "t_end",   "R",      "trunc",   "input",  "s1_re",
    "s1_im", "n_first", "A_min", "A_max",   "A_count", "B1_max", "B1_count", "r_min", "r_max",
    "b_min", "b_max",   "nr",    "nb",      "T_max",   "window", "pgm",    "extended"};

using Defaults = std::vector<std::pair<std::string, std::string>>;

const std::map<std::string, Defaults>& command_defaults() {
  static const std::map<std::string, Defaults> d = {
      {"integrate",
       {{"seed", "zero"}, {"r", "0"}, {"b", "1"}, {"p", "0"}, {"H", "0"}, {"t_start", "auto"},
        {"t_end", "-20"}, {"tol", "1e-10"}, {"out", "p1_out"}}},
      {"zeros",
       {{"seed", "zero"}, {"r", "0"}, {"b", "1"}, {"p", "0"}, {"H", "0"}, {"t_start", "auto"},
        {"t_end", "-20"}, {"tol", "1e-10"}, {"out", "p1_out"}}},
      {"classify",
       {{"r", ""}, {"b", ""}, {"A", ""}, {"xi", ""}, {"side", "plus"}, {"tol", "1e-10"}, {"T_max", "60"},
        {"window", "15"}, {"out", "p1_out"}}},
      {"stokes",
       {{"r", ""}, {"b", ""}, {"A", ""}, {"xi", ""}, {"side", "plus"}, {"tol", "1e-16"}, {"R", "0"},
        {"trunc", "-1"}, {"extended", "1"}, {"out", "p1_out"}}},
      {"constants", {{"A_min", "-3"}, {"A_max", "4"}, {"A_count", "50"}, {"out", "p1_out"}}},
      {"sigma",
       {{"n", "5"}, {"side", "plus"}, {"A_min", "auto"}, {"A_max", "auto"}, {"A_count", "41"},
        {"B1_max", "5"}, {"B1_count", "21"}, {"out", "p1_out"}}},
      {"predict",
       {{"input", "tritronquee"}, {"s1_re", "0"}, {"s1_im", "1"}, {"n_first", "1"}, {"n", "5"},
        {"side", "plus"}, {"out", "p1_out"}}},
      {"table1", {{"n", "5"}, {"tol", "1e-10"}, {"out", "p1_out"}}},
      {"table2", {{"n", "5"}, {"tol", "1e-10"}, {"out", "p1_out"}}},
      {"scan",
       {{"r_min", "-2"}, {"r_max", "14"}, {"b_min", "-8"}, {"b_max", "8"}, {"nr", "280"}, {"nb", "160"},
        {"T_max", "60"}, {"window", "15"}, {"tol", "1e-10"}, {"workers", "1"}, {"n", "0"}, {"A", "0"},
        {"side", "plus"}, {"pgm", "1"}, {"out", "p1_out"}}},
  };
  return d;
}

class RunConfig {
 public:
  RunConfig(std::string command, const Defaults& defaults) : command_(std::move(command)) {
    for (const auto& [k, v] : defaults) {
      values_[k] = v;
      order_.push_back(k);
    }
  }

  void set(const std::string& key, const std::string& value) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
      throw UsageError("unknown configuration key '" + key + "'");
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = value;
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      line = trim(line);
      if (line.empty() || line.front() == '[') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  bool has(const std::string& k) const {
    auto it = values_.find(k);
    return it != values_.end() && !it->second.empty();
  }
  std::string str(const std::string& k) const {
    auto it = values_.find(k);
    return it == values_.end() ? std::string() : it->second;
  }
  double num(const std::string& k) const {
    const std::string s = str(k);
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("key '" + k + "' needs a number, got '" + s + "'");
    }
  }
  int integer(const std::string& k) const {
    const double v = num(k);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError("key '" + k + "' needs an integer");
    return static_cast<int>(v);
  }
  Side side() const {
    const std::string s = str("side");
    if (s == "plus" || s == "+") return Side::plus;
    if (s == "minus" || s == "-") return Side::minus;
    throw UsageError("side must be plus or minus");
  }
  // Record a value resolved from "auto" or derived from other keys.
  void resolve(const std::string& k, const std::string& v) { resolved_[k] = v; }

  const std::string& command() const { return command_; }

  json manifest(const std::vector<std::string>& outputs) const {
    json cfg = json::object();
    for (const auto& k : order_) cfg[k] = str(k);
    json res = json::object();
    for (const auto& [k, v] : resolved_) res[k] = v;
    return json{{"tool", "p1"},        {"version", "0.1.0"},  {"command", command_},
                {"config", cfg},       {"resolved", res},     {"outputs", outputs},
                {"number_format", "%.15g"}};
  }

 private:
  std::string command_;
  std::map<std::string, std::string> values_, resolved_;
  std::vector<std::string> order_;
};

// Round to 15 significant digits before handing numbers to the JSON writer.
json jnum(double x) {
  if (!std::isfinite(x)) return fmt(x);
  return std::stod(fmt(x));
}

struct Output {
  fs::path dir;
  std::vector<std::string> files;

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    f << content;
    files.push_back(name);
  }
  void manifest(const RunConfig& cfg) {
    auto m = cfg.manifest(files);
    fs::create_directories(dir);
    std::ofstream f(dir / (cfg.command() + ".manifest.json"), std::ios::binary);
    f << m.dump(2) << '\n';
  }
};

// (r, b) from --r/--b, or from --A/--xi with B1 = 0 and the given side.
std::pair<double, double> zero_data(RunConfig& cfg) {
  if (cfg.has("r") && cfg.has("b")) return {cfg.num("r"), cfg.num("b")};
  if (cfg.has("A") && cfg.has("xi")) {
    ScalingParams p;
    p.A = cfg.num("A");
    p.xi = cfg.num("xi");
    p.sgnb = side_sign(cfg.side());
    if (!(p.xi > 0)) throw UsageError("xi must be positive");
    const double r = r_from_scaling(p), b = b_from_scaling(p);
    cfg.resolve("r", fmt(r));
    cfg.resolve("b", fmt(b));
    return {r, b};
  }
  throw UsageError("give --r and --b, or --A and --xi");
}

IntegratorOptions integrator_opts(const RunConfig& cfg) {
  IntegratorOptions o;
  o.rtol = cfg.num("tol");
  o.atol = o.rtol * 1e-2;
  if (!(o.rtol > 0)) throw UsageError("tol must be positive");
  return o;
}

Trajectory run_trajectory(RunConfig& cfg) {
  const auto opts = integrator_opts(cfg);
  const std::string seed = cfg.str("seed");
  const double t_end = cfg.num("t_end");
  if (seed == "zero") return integrate({cfg.num("r"), 0, cfg.num("b")}, t_end, opts);
  if (seed == "tritronquee") {
    const double ts = cfg.str("t_start") == "auto" ? -20.0 : cfg.num("t_start");
    cfg.resolve("t_start", fmt(ts));
    return integrate(seed_tritronquee(ts), t_end, opts);
  }
  if (seed == "pole") {
    const PoleDatum P{cfg.num("p"), cfg.num("H")};
    const double dir = t_end >= P.p ? 1 : -1;
    const double ts = cfg.str("t_start") == "auto" ? P.p + 0.5 * dir : cfg.num("t_start");
    cfg.resolve("t_start", fmt(ts));
    return integrate_from_pole(P, ts - P.p, t_end, opts);
  }
  throw UsageError("seed must be zero, tritronquee or pole");
}

json events_json(const Trajectory& tr, const std::vector<ZeroDatum>& zeros) {
  json ev = json::array();
  for (const auto& p : tr.poles) ev.push_back({{"type", "pole"}, {"p", jnum(p.p)}, {"H", jnum(p.H)}});
  for (const auto& z : zeros)
    ev.push_back({{"type", "zero"},
                  {"r", jnum(z.r)},
                  {"b", jnum(z.b)},
                  {"side", side_name(z.side)},
                  {"index", z.index},
                  {"degenerate", z.degenerate}});
  return ev;
}

int cmd_integrate(RunConfig& cfg, Output& out, bool zeros_only) {
  const Trajectory tr = run_trajectory(cfg);
  const auto zeros = find_zeros(tr);
  if (zeros_only) {
    std::string csv = "r,b,side,index,degenerate\n";
    for (const auto& z : zeros)
      csv += csv_row({fmt(z.r), fmt(z.b), side_name(z.side), std::to_string(z.index), z.degenerate ? "1" : "0"});
    out.write("zeros.csv", csv);
    std::cout << zeros.size() << " zeros\n";
  } else {
    std::string csv = "t,y,dy\n";
    for (const auto& s : tr.samples) csv += csv_row({fmt(s.t), fmt(s.y), fmt(s.dy)});
    out.write("trajectory.csv", csv);
    out.write("events.json", events_json(tr, zeros).dump(2) + "\n");
    std::cout << tr.samples.size() << " samples, " << tr.poles.size() << " poles, " << zeros.size()
              << " zeros\n";
  }
  cfg.resolve("reached_end", tr.reached_end ? "true" : "false");
  return 0;
}

int cmd_classify(RunConfig& cfg, Output& out) {
  const auto [r, b] = zero_data(cfg);
  ClassifierConfig cc;
  cc.T_max = cfg.num("T_max");
  cc.window = cfg.num("window");
  cc.rtol = cfg.num("tol");
  cc.atol = cc.rtol * 1e-2;
  cc.validate();
  const SolutionClass c = classify_rb(r, b, cc);
  json j{{"r", jnum(r)},
         {"b", jnum(b)},
         {"label", label_name(c.label)},
         {"confidence", jnum(c.confidence)},
         {"evidence", c.evidence},
         {"t_end", jnum(classifier_t_end(r, cc))}};
  int code = 0;
  std::string scaling_error;
  try {
    const ScalingParams p = scaling_from_rb(r, b);
    j["scaling"] = {{"xi", jnum(p.xi)}, {"A", jnum(p.A)}, {"sgnb", p.sgnb}};
  } catch (const Error& e) {
    j["scaling"] = nullptr;
    j["scaling_error"] = e.what();
    scaling_error = e.what();
    code = 1;
  }
  out.write("classify.json", j.dump(2) + "\n");
  std::cout << "label " << label_name(c.label) << " (confidence " << fmt(c.confidence) << ")\n";
  if (code) std::cerr << "p1: " << scaling_error << "\n";
  return code;
}

int cmd_stokes(RunConfig& cfg, Output& out) {
  const auto [r, b] = zero_data(cfg);
  MonodromyConfig mc;
  mc.ode_tol = cfg.num("tol");
  mc.R = cfg.num("R");
  mc.trunc = cfg.integer("trunc");
  mc.extended = cfg.integer("extended") != 0;
  const StokesVector sv = compute_stokes(r, b, mc);
  const SolutionClass c = classify_from_stokes(sv);
  json s = json::array();
  for (int k = -2; k <= 2; ++k) s.push_back({jnum(sv.at(k).real()), jnum(sv.at(k).imag())});
  json j{{"r", jnum(r)},
         {"b", jnum(b)},
         {"s", s},
         {"residual_constraint", jnum(sv.residual_constraint)},
         {"residual_symmetry", jnum(sv.residual_symmetry)},
         {"class", label_name(c.label)}};
  cfg.resolve("R", fmt(sv.R));
  out.write("stokes.json", j.dump(2) + "\n");
  const cplx s0 = sv.at(0);
  std::cout << "class " << label_name(c.label) << ", s0 = " << fmt(s0.real()) << (s0.imag() < 0 ? " - " : " + ")
            << fmt(std::abs(s0.imag())) << "i\n";
  return 0;
}

int cmd_constants(RunConfig& cfg, Output& out) {
  const Constants& K = constants();
  json j{{"C0", jnum(K.C0)},
         {"A_crit", jnum(K.A_crit)},
         {"Lambda0_plus", jnum(K.Lambda0_plus)},
         {"Lambda0_minus", jnum(K.Lambda0_minus)},
         {"alpha0_C0", {jnum(K.at_C0.alpha0.real()), jnum(K.at_C0.alpha0.imag())}},
         {"alpha11_C0", {jnum(K.at_C0.alpha11.real()), jnum(K.at_C0.alpha11.imag())}},
         {"alpha12p_C0", {jnum(K.at_C0.alpha12_plus.real()), jnum(K.at_C0.alpha12_plus.imag())}}};
  out.write("constants.json", j.dump(2) + "\n");

  const double a0 = cfg.num("A_min"), a1 = cfg.num("A_max");
  const int na = cfg.integer("A_count");
  if (na < 2 || !(a1 > a0)) throw UsageError("need A_count >= 2 and A_max > A_min");
  std::string csv = "A,kappa2,Im_kappa_hat2,Re_alpha0,Im_alpha0,Re_alpha11,Im_alpha11,Re_alpha12p,Im_alpha12p\n";
  for (int i = 0; i < na; ++i) {
    const double A = a0 + (a1 - a0) * i / (na - 1);
    if (std::abs(A - A_crit) < kCoalescenceWindow) continue;
    const KappaPair kp = kappa_pair(A);
    const AlphaSet as = alpha_set(A);
    csv += csv_row({fmt(A), fmt(kp.kappa2.real()), fmt(kp.kappa_hat2.imag()), fmt(as.alpha0.real()),
                    fmt(as.alpha0.imag()), fmt(as.alpha11.real()), fmt(as.alpha11.imag()),
                    fmt(as.alpha12_plus.real()), fmt(as.alpha12_plus.imag())});
  }
  out.write("alpha_table.csv", csv);
  // C0 is shown to 16 digits, one more than the file format, so it can be read
  // against its reference value.
  char c0[32];
  std::snprintf(c0, sizeof c0, "%.16g", K.C0);
  std::cout << "C0 = " << c0 << "\nA_crit = " << fmt(K.A_crit) << "\nLambda0+ = " << fmt(K.Lambda0_plus)
            << "\nLambda0- = " << fmt(K.Lambda0_minus) << "\n";
  return 0;
}

int cmd_sigma(RunConfig& cfg, Output& out) {
  const Constants& K = constants();
  const int nmax = cfg.integer("n");
  const Side side = cfg.side();
  const double a0 = cfg.str("A_min") == "auto" ? A_crit + kCoalescenceWindow + 1e-3 : cfg.num("A_min");
  const double a1 = cfg.str("A_max") == "auto" ? K.C0 - 0.02 : cfg.num("A_max");
  cfg.resolve("A_min", fmt(a0));
  cfg.resolve("A_max", fmt(a1));
  const int na = cfg.integer("A_count"), nb1 = cfg.integer("B1_count");
  if (nmax < 1 || na < 2 || nb1 < 2) throw UsageError("need n >= 1, A_count >= 2, B1_count >= 2");
  std::vector<double> Ag;
  for (int i = 0; i < na; ++i) Ag.push_back(a0 + (a1 - a0) * i / (na - 1));
  const double L0 = side == Side::plus ? K.Lambda0_plus : K.Lambda0_minus;
  const double bmax = cfg.num("B1_max");
  if (!(bmax > L0)) throw UsageError("B1_max must exceed Lambda0");
  std::vector<double> Bg;
  for (int i = 0; i < nb1; ++i) Bg.push_back(L0 + (bmax - L0) * i / (nb1 - 1));

  std::string csv = "n,side,A_or_B1,r,b,branch\n";
  for (int n = 1; n <= nmax; ++n) {
    for (const auto& c : sigma_curves(n, side, Ag))
      csv += csv_row({std::to_string(n), side_name(side), fmt(c.param), fmt(c.r), fmt(c.b), "main"});
    for (double B1 : Bg) {
      try {
        for (const auto& c : sigma_fingertips(n, side, {B1}))
          csv += csv_row({std::to_string(n), side_name(side), fmt(c.param), fmt(c.r), fmt(c.b), "fingertip"});
      } catch (const Error&) {
        // outside the continuation's domain for this n (non-positive xi)
      }
    }
  }
  out.write("sigma.csv", csv);
  std::cout << "sigma curves n = 1.." << nmax << " side " << side_name(side) << "\n";
  return 0;
}

int cmd_predict(RunConfig& cfg, Output& out) {
  const std::string input = cfg.str("input");
  StokesInput in;
  if (input == "tritronquee") in = table_input(TableKind::tritronquee);
  else if (input == "pole00") in = table_input(TableKind::pole00);
  else if (input == "direct") in = stokes_input_direct({cfg.num("s1_re"), cfg.num("s1_im")});
  else throw UsageError("input must be tritronquee, pole00 or direct");
  cfg.resolve("s1_abs", fmt(in.s1_abs));
  cfg.resolve("s1_arg", fmt(in.s1_arg));
  const int n0 = cfg.integer("n_first"), n1 = cfg.integer("n");
  if (n0 < 1 || n1 < n0) throw UsageError("need 1 <= n_first <= n");
  const Side side = cfg.side();
  std::string csv = "n,side,r_hat,b_hat,xi_n\n";
  for (const auto& z : predict_zeros(in, n0, n1, side))
    csv += csv_row({std::to_string(z.n), side_name(side), fmt(z.r_hat), fmt(z.b_hat), fmt(z.xi_n)});
  out.write("predict.csv", csv);
  std::cout << "predicted zeros n = " << n0 << ".." << n1 << "\n";
  return 0;
}

int cmd_table(RunConfig& cfg, Output& out, TableKind kind) {
  const int n = cfg.integer("n");
  if (n < 1) throw UsageError("n must be >= 1");
  const ZeroTable t = zero_table(kind, n, integrator_opts(cfg));
  const std::string name = kind == TableKind::tritronquee ? "table1.csv" : "table2.csv";
  const std::string csv = table_csv(t);
  out.write(name, csv);
  std::cout << csv;
  return 0;
}

int cmd_scan(RunConfig& cfg, Output& out) {
  PhaseDiagramGrid g;
  g.r_min = cfg.num("r_min");
  g.r_max = cfg.num("r_max");
  g.b_min = cfg.num("b_min");
  g.b_max = cfg.num("b_max");
  g.nr = cfg.integer("nr");
  g.nb = cfg.integer("nb");
  ClassifierConfig cc;
  cc.T_max = cfg.num("T_max");
  cc.window = cfg.num("window");
  cc.rtol = cfg.num("tol");
  cc.atol = cc.rtol * 1e-2;
  try {
    g.validate();
    cc.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const int workers = cfg.integer("workers");
  if (workers < 1) throw UsageError("workers must be >= 1");
  const Raster ras = scan_phase_diagram(g, cc, workers);
  out.write("raster.csv", raster_csv(ras));
  if (cfg.integer("pgm")) out.write("raster.pgm", raster_pgm(ras));
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& c : ras.cells) ++counts[static_cast<int>(c.label)];
  std::cout << "A " << counts[0] << ", C " << counts[2] << ", undecided " << counts[3] << "\n";

  const int nb = cfg.integer("n");
  if (nb > 0) {
    const double A = cfg.num("A");
    const Side side = cfg.side();
    std::string csv = "n,side,A,xi_star,r,b\n";
    for (int n = 1; n <= nb; ++n) {
      const BoundaryPoint bp = bisect_sigma_boundary(n, side, A, cc);
      csv += csv_row({std::to_string(n), side_name(side), fmt(A), fmt(bp.xi_star), fmt(bp.r), fmt(bp.b)});
    }
    out.write("boundary.csv", csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve I toolkit: integration, Stokes data, asymptotics and classification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> r, b, A, xi, tol;
  std::optional<int> n, workers;
  std::string side, outdir, config;
  std::vector<std::string> sets;
  app.add_option("--r", r, "zero location r");
  app.add_option("--b", b, "slope b = y'(r)");
  app.add_option("--A", A, "scaling parameter A");
  app.add_option("--xi", xi, "scaling parameter xi");
  app.add_option("--n", n, "index or count");
  app.add_option("--side", side, "plus or minus");
  app.add_option("--tol", tol, "integration tolerance");
  app.add_option("--out", outdir, "output directory");
  app.add_option("--workers", workers, "worker threads (scan)");
  app.add_option("--config", config, "key=value configuration file");
  app.add_option("--set", sets, "extra key=value overrides");

  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"integrate", "integrate y'' = 6y^2 + t through poles; trajectory.csv + events.json"},
      {"zeros", "zeros of a trajectory; zeros.csv"},
      {"classify", "behavior-based type of the solution through (r, b)"},
      {"stokes", "Stokes multipliers s_-2..s_2 of (r, b)"},
      {"constants", "C0, A_crit, Lambda0 and the alpha table"},
      {"sigma", "asymptotic Sigma_n curves and fingertips"},
      {"predict", "asymptotic zero predictions"},
      {"table1", "tritronquee zero table"},
      {"table2", "(p, H) = (0, 0) zero table"},
      {"scan", "phase diagram raster (and Sigma boundaries when n > 0)"}};
  for (const auto& [name, help] : cmds) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg(command, command_defaults().at(command));
    if (!config.empty()) cfg.load_file(config);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw UsageError("--set needs key=value");
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    auto put = [&](const char* k, const auto& v) {
      if (v) cfg.set(k, fmt(static_cast<double>(*v)));
    };
    put("r", r);
    put("b", b);
    put("A", A);
    put("xi", xi);
    put("n", n);
    put("tol", tol);
    put("workers", workers);
    if (!side.empty()) cfg.set("side", side);
    if (!outdir.empty()) cfg.set("out", outdir);

    Output out{cfg.str("out"), {}};
    int code = 0;
    if (command == "integrate") code = cmd_integrate(cfg, out, false);
    else if (command == "zeros") code = cmd_integrate(cfg, out, true);
    else if (command == "classify") code = cmd_classify(cfg, out);
    else if (command == "stokes") code = cmd_stokes(cfg, out);
    else if (command == "constants") code = cmd_constants(cfg, out);
    else if (command == "sigma") code = cmd_sigma(cfg, out);
    else if (command == "predict") code = cmd_predict(cfg, out);
    else if (command == "table1") code = cmd_table(cfg, out, TableKind::tritronquee);
    else if (command == "table2") code = cmd_table(cfg, out, TableKind::pole00);
    else if (command == "scan") code = cmd_scan(cfg, out);
    out.manifest(cfg);
    return code;
  } catch (const UsageError& e) {
    std::cerr << "p1: usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "p1: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "p1: " << e.what() << "\n";
    return 1;
  }
}
