#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "capvert/pipeline.hpp"

using namespace capvert;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

constexpr int kMaxY = 8;
constexpr int kMaxZ = 12;
constexpr int kMaxVertexN = 4;
constexpr int kMaxProp1N = 3;
constexpr int kMaxProp4N = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<int> ymax;
  std::optional<int> zmax;
  std::optional<int> n;
  std::string format = "json";
  std::string out;
  int jobs = 1;
  std::vector<std::string> specialize;
  std::string conventions;
  bool timings = false;

  int y(int fallback) const { return ymax.value_or(fallback); }
  int z(int fallback) const { return zmax.value_or(fallback); }
};

void bound(const char* what, int value, int lo, int hi) {
  if (value < lo || value > hi)
    throw LimitError(std::string(what) + " = " + std::to_string(value) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
}

Ground parse_ground(const std::vector<std::string>& specs) {
  Ground g;
  std::map<Var, mpq_class> values;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--specialize expects var=rational, got '" + s + "'");
    Var v;
    if (!parse_var(s.substr(0, eq), v)) throw UsageError("unknown variable in '" + s + "'");
    if (v == Var::A) throw UsageError("a enters through limits a -> 0 and stays symbolic");
    mpq_class x;
    try {
      x = parse_rational(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad rational in '" + s + "'");
    }
    if (values.count(v)) throw UsageError("variable specialized twice: " + std::string(var_name(v)));
    values[v] = x;
  }
  for (const auto& [v, x] : values) {
    if (x == 0 || x == 1 || x == -1)
      throw UsageError(std::string(var_name(v)) + " must avoid 0 and +-1 (denominators 1 - v^k vanish there)");
    for (const auto& [w, y] : values)
      if (w < v && x == y) throw UsageError("specialization values must be pairwise distinct");
  }
  // t1^i t2^j = 1 would kill a tangent weight.
  if (values.count(Var::T1) && values.count(Var::T2)) {
    for (int i = -8; i <= 8; ++i)
      for (int j = -8; j <= 8; ++j) {
        if (i == 0 && j == 0) continue;
        mpq_class p = 1;
        for (int k = 0; k < std::abs(i); ++k) p *= i > 0 ? values[Var::T1] : mpq_class(1 / values[Var::T1]);
        for (int k = 0; k < std::abs(j); ++k) p *= j > 0 ? values[Var::T2] : mpq_class(1 / values[Var::T2]);
        if (p == 1) throw UsageError("t1^i t2^j = 1 for small i, j: a tangent weight becomes trivial");
      }
  }
  for (const auto& [v, x] : values) g.specialize(v, x);
  return g;
}

Conventions load_conventions(const std::string& path) {
  if (path.empty()) return Conventions{};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read conventions file " + path);
  json j;
  try {
    in >> j;
    if (j.contains("conventions")) j = j.at("conventions");
    return Conventions::from_json(j);
  } catch (const std::exception& e) {
    throw UsageError("bad conventions file " + path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw UsageError("cannot write " + cfg.out);
  out << text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

SeriesFock as_series(const FockElement<GroundScalar>& f) {
  SeriesFock s(f.truncation());
  for (const auto& [mu, c] : f.terms()) {
    const int d = size(mu);
    s.add_term(mu, TruncatedSeries::term(f.truncation(), 0, d, 0, c));
  }
  return s;
}

std::string render_reports(const RunConfig& cfg, const std::vector<VerificationReport>& reports) {
  bool all = true;
  for (const auto& r : reports) all = all && r.pass;
  if (cfg.format == "text") {
    std::string out;
    for (const auto& r : reports) out += r.summary() + "\n";
    return out;
  }
  if (cfg.format == "csv") {
    std::string out = "check,orders,pass,outcome,witness\n";
    for (const auto& r : reports)
      out += r.check + "," + csv_escape(r.orders.dump()) + "," + (r.pass ? "true" : "false") + "," + r.outcome + "," +
             csv_escape(r.witness.is_null() ? "" : r.witness.dump()) + "\n";
    return out;
  }
  json j = {{"pass", all}, {"reports", json::array()}};
  for (const auto& r : reports) j["reports"].push_back(r.to_json(cfg.timings));
  return j.dump(2) + "\n";
}

std::string render_series(const RunConfig& cfg, const SeriesFock& f) {
  if (cfg.format == "text") return series_to_text(f);
  const json terms = series_to_json(f);
  if (cfg.format == "csv") {
    std::string out = "y,z,p,num,den\n";
    for (const auto& t : terms) {
      std::string parts;
      for (const auto& x : t["p"]) parts += (parts.empty() ? "" : " ") + std::to_string(x.get<int>());
      out += std::to_string(t["y"].get<int>()) + "," + std::to_string(t["z"].get<int>()) + "," + csv_escape(parts) +
             "," + csv_escape(t["num"].get<std::string>()) + "," + csv_escape(t["den"].get<std::string>()) + "\n";
    }
    return out;
  }
  json j = {{"exponents", "doubled exponents are rendered as halves, e.g. t1^(3/2)"}, {"terms", terms}};
  return j.dump(2) + "\n";
}

int cmd_verify(const RunConfig& cfg, std::vector<std::string> targets) {
  const Context ctx(load_conventions(cfg.conventions), parse_ground(cfg.specialize), cfg.jobs);
  if (targets.empty() || std::find(targets.begin(), targets.end(), "all") != targets.end())
    targets = {"kernel", "mellit", "osum", "ook", "main", "prop1", "prop4"};
  // Bounds are checked for every target before any work starts.
  const int y = cfg.y(4), z = cfg.z(6), n = cfg.n.value_or(3);
  bound("ymax", y, 0, kMaxY);
  bound("zmax", z, 0, kMaxZ);
  for (const auto& t : targets) {
    if (t == "prop1") bound("n", n, 0, kMaxProp1N);
    if (t == "prop4") bound("n", n, 0, kMaxProp4N);
    if (t == "vertex") bound("n", n, 0, kMaxVertexN);
  }
  std::vector<VerificationReport> reports;
  for (const auto& t : targets) {
    if (t == "kernel") reports.push_back(check_kernel_identity(ctx, y));
    else if (t == "mellit") reports.push_back(check_mellit(ctx, y));
    else if (t == "osum") reports.push_back(check_osum(ctx, y));
    else if (t == "ook") reports.push_back(check_ook(ctx, y, z));
    else if (t == "main") reports.push_back(check_main(ctx, y, z));
    else if (t == "degenerate") reports.push_back(check_degenerate(ctx, y));
    else if (t == "prop1") reports.push_back(check_prop1(ctx, n));
    else if (t == "prop4")
      for (int k = 0; k <= n; ++k) reports.push_back(check_prop4(ctx, n, k));
    else if (t == "vertex") reports.push_back(check_vertex(ctx, n, cfg.z(n * (n + 1) + 2)));
  }
  emit(cfg, render_reports(cfg, reports));
  for (const auto& r : reports)
    if (!r.pass) return kExitMismatch;
  return kExitPass;
}

int cmd_series(const RunConfig& cfg, const std::string& target) {
  const Context ctx(load_conventions(cfg.conventions), parse_ground(cfg.specialize), cfg.jobs);
  const int y = cfg.y(4), z = cfg.z(6);
  bound("ymax", y, 0, kMaxY);
  bound("zmax", z, 0, kMaxZ);
  SeriesFock f;
  if (target == "F") f = closed_F(ctx, y, z);
  else if (target == "osum") f = as_series(osum_lhs(ctx, y));
  else f = as_series(mellit_lhs(ctx, y));
  emit(cfg, render_series(cfg, f));
  return kExitPass;
}

int cmd_vertex(const RunConfig& cfg) {
  const Context ctx(load_conventions(cfg.conventions), parse_ground(cfg.specialize), cfg.jobs);
  const int n = cfg.n.value_or(2);
  bound("n", n, 0, kMaxVertexN);
  const int z = cfg.z(n * (n + 1) + 2);
  bound("zmax", z, 0, kMaxVertexN * (kMaxVertexN + 1) + 2);
  const CappedVertexTable t = capped_vertex_table(ctx, n, z);
  std::string text;
  if (cfg.format == "csv") text = t.to_csv();
  else if (cfg.format == "text") text = t.to_text();
  else text = t.to_json().dump(2) + "\n";
  emit(cfg, text);
  for (const auto& e : t.entries)
    if (!e.denominator_divides || !e.q_free) return kExitMismatch;
  return kExitPass;
}

int cmd_calibrate(const RunConfig& cfg, const std::string& orientation) {
  std::optional<Orientation> forced;
  if (orientation == "arms-t1") forced = Orientation::ArmsT1;
  if (orientation == "arms-t2") forced = Orientation::ArmsT2;
  const Calibration cal = calibrate(parse_ground(cfg.specialize), cfg.jobs, forced);
  RunConfig out = cfg;
  if (out.out.empty()) out.out = "conventions.json";
  const json j = {{"conventions", cal.conventions.to_json()}, {"calibration", cal.log}};
  emit(out, j.dump(2) + "\n");
  std::cout << "conventions written to " << out.out << " (main shift " << cal.conventions.main_shift.to_string()
            << ")\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of the capped descendent vertex formulas for Hilbert schemes of points"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--ymax", cfg.ymax, "Fock (y) truncation order")->envname("CAPVERT_YMAX");
  app.add_option("--zmax", cfg.zmax, "z truncation order")->envname("CAPVERT_ZMAX");
  app.add_option("--n", cfg.n, "Number of points for prop1, prop4 and vertex")->envname("CAPVERT_N");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->envname("CAPVERT_FORMAT");
  app.add_option("--out", cfg.out, "Output file (default stdout)")->envname("CAPVERT_OUT");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 256))->envname("CAPVERT_JOBS");
  app.add_option("--specialize", cfg.specialize, "var=rational, repeatable")
      ->delimiter(',')
      ->envname("CAPVERT_SPECIALIZE");
  app.add_option("--conventions", cfg.conventions, "Conventions file written by calibrate")
      ->envname("CAPVERT_CONVENTIONS");
  app.add_flag("--timings", cfg.timings, "Include wall-clock seconds in JSON reports")->envname("CAPVERT_TIMINGS");

  std::vector<std::string> targets;
  auto* verify = app.add_subcommand("verify", "Run identity checks");
  verify->add_option("targets", targets, "kernel mellit osum ook main prop1 prop4 degenerate vertex all")
      ->check(CLI::IsMember({"kernel", "mellit", "osum", "ook", "main", "prop1", "prop4", "degenerate", "vertex", "all"}));

  std::string series_target;
  auto* series = app.add_subcommand("series", "Print a generating function");
  series->add_option("target", series_target, "F, osum or taubar")
      ->required()
      ->check(CLI::IsMember({"F", "osum", "taubar"}));

  auto* vertex = app.add_subcommand("vertex", "Per-fixed-point rational functions of the y^n slice");

  std::string orientation;
  auto* cal = app.add_subcommand("calibrate", "Search conventions at small order and write them out");
  cal->add_option("--orientation", orientation, "Restrict the orientation search")
      ->check(CLI::IsMember({"arms-t1", "arms-t2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(cfg, targets);
    if (*series) return cmd_series(cfg, series_target);
    if (*vertex) return cmd_vertex(cfg);
    if (*cal) return cmd_calibrate(cfg, orientation);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const CalibrationError& e) {
    std::cerr << "calibration failed: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const ReconstructError& e) {
    std::cerr << "reconstruction failed: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const ArithmeticError& e) {
    std::cerr << "error: " << e.what() << " (check --specialize values)\n";
    return kExitUsage;
  } catch (const std::bad_alloc&) {
    std::cerr << "limit: out of memory\n";
    return kExitLimit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitLimit;
  }
  return kExitUsage;
}
