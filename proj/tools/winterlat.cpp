// winterlat command-line front end. Every subcommand is turned into a RunSpec and executed by run().

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "winterlat/winterlat.hpp"

namespace fs = std::filesystem;
using namespace winterlat;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kInfeasible = 3 };

struct Context {
  fs::path out_dir = ".";
  int jobs = 1;
};

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text)
{
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path.string() + "'");
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

fs::path output_path(const Context& ctx, const RunSpec& spec, const std::string& key, const std::string& fallback)
{
  if (spec.has(key)) {
    const fs::path p = spec.get(key);
    return p.is_absolute() ? p : ctx.out_dir / p;
  }
  return ctx.out_dir / fallback;
}

std::string decimal(const Rational& r) { return format_double(to_double(r)); }

/// "k c_F" with k rational.
std::string times_cf(const Rational& k)
{
  if (k == Rational(1)) return "c_F";
  return to_string(k) + "c_F";
}

const Model& need_model(const RunSpec& spec)
{
  if (!spec.model) throw Error(ErrorKind::Parse, "command '" + spec.command + "' needs a model (--model FILE)");
  return *spec.model;
}

int int_option(const RunSpec& spec, const std::string& key, int fallback)
{
  if (!spec.has(key)) return fallback;
  const Rational r = parse_rational(spec.get(key));
  if (r.denominator() != 1) throw Error(ErrorKind::Parse, "option '" + key + "' must be an integer");
  return static_cast<int>(r.numerator());
}

std::uint64_t u64_option(const RunSpec& spec, const std::string& key, std::uint64_t fallback)
{
  if (!spec.has(key)) return fallback;
  const std::string v = spec.get(key);
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw Error(ErrorKind::Parse, "option '" + key + "' must be a u64");
  return x;
}

// ---------------------------------------------------------------------------

int cmd_classify(const RunSpec& spec, const Context&)
{
  const Model& m = need_model(spec);
  const ModelClass mc = classify(m);
  const CanonicalModel cm = reduce(mc, m.lambda());
  const int f = reduction_factor(mc);
  const Rational sg = sigma(mc, m.lambda());
  const int stated = wetting_threshold_stated(mc);
  const Rational reduced = wetting_threshold_reduced(m) / m.c_f();

  std::cout << "class:              " << to_string(mc.tag) << "\n";
  if (mc.tag == ClassTag::C4) std::cout << "s:                  " << mc.s << "\n";
  std::cout << "period q:           " << mc.q << "\n";
  std::cout << "recenter shift:     " << recenter_shift(m) << "\n";
  std::cout << "canonical model:    " << cm.name() << (f == 2 ? " with c_S' = 2c_S" : " with c_S' = c_S") << " = "
            << to_string(cm.lambda.c_s) << "\n";
  const std::string qdiv = mc.q == 1 ? "" : "/" + std::to_string(mc.q);
  const std::string sform = mc.tag == ClassTag::C2 ? "2c_F - c_S" + qdiv : "2c_F - 2c_S" + qdiv;
  std::cout << "sigma:              " << sform << " = " << to_string(sg) << " (" << decimal(sg) << ")\n";
  std::cout << "stated threshold:   " << stated << "c_F = " << to_string(stated * m.c_f()) << "\n";
  std::cout << "reduced threshold:  " << times_cf(reduced) << " = " << to_string(reduced * m.c_f()) << "\n";
  std::cout << "regime at c_S=" << to_string(m.c_s()) << ": " << (in_wetting_regime(m) ? "wetting" : "dewetting") << "\n";
  return kOk;
}

int cmd_minimize(const RunSpec& spec, const Context& ctx)
{
  const Model& m = need_model(spec);
  const int n = int_option(spec, "n", 0);
  if (n < 1) throw Error(ErrorKind::Parse, "minimize needs n >= 1 (--n)");
  const Method method = parse_method(spec.get("method", n <= 10 ? "exact" : "anneal"));
  AnnealSchedule sch;
  sch.seed = u64_option(spec, "seed", 1);
  sch.steps = u64_option(spec, "steps", sch.steps);
  sch.restarts = int_option(spec, "restarts", sch.restarts);
  sch.jobs = int_option(spec, "jobs", ctx.jobs);
  ExactOptions eo;
  eo.collect_all = true;
  const SearchResult r = minimize(m, n, method, sch, eo);
  const EnergyBreakdown e = total_energy(m, r.argmin);

  std::cout << "method:             " << to_string(r.method) << "\n";
  std::cout << "n:                  " << n << "\n";
  std::cout << "energy:             " << to_string(r.energy) << " (" << decimal(r.energy) << ")\n";
  std::cout << "film bonds:         " << e.film_bonds << "\n";
  std::cout << "substrate bonds:    " << e.substrate_bonds << "\n";
  std::cout << "wetting energy:     " << to_string(energy(m, wetting_config(m, n))) << "\n";
  std::cout << "argmin is wetting:  " << (is_wetting_configuration(m, r.argmin) ? "yes" : "no") << "\n";
  std::cout << "rescaled excess:    " << format_double(rescaled_excess(m, r.argmin)) << "\n";
  if (r.all_minimizers)
    std::cout << "minimizers:         " << r.all_minimizers->size() << (r.minimizers_complete ? "" : " (truncated)") << "\n";
  if (r.method == Method::Anneal) std::cout << "seed:               " << r.seed << "\n";

  std::ostringstream cfg;
  cfg << "# n = " << n << ", energy = " << to_string(r.energy) << ", method = " << to_string(r.method) << "\n"
      << to_text(r.argmin);
  write_file(output_path(ctx, spec, "out", "config.txt"), cfg.str());
  if (spec.has("svg")) write_file(output_path(ctx, spec, "svg", "config.svg"), config_svg(m, r.argmin));
  return kOk;
}

int cmd_wetting_check(const RunSpec& spec, const Context&)
{
  const Model& m = need_model(spec);
  const ModelClass mc = classify(m);
  const Rational stated = Rational(wetting_threshold_stated(mc)) * m.c_f();
  const Rational reduced = wetting_threshold_reduced(m);
  std::vector<Rational> grid;
  if (spec.has("c-s-grid")) {
    grid = parse_rational_list(spec.get("c-s-grid"));
  } else {
    const Rational lo = std::max(std::min(stated, reduced) - m.c_f(), Rational(1, 4) * m.c_f());
    grid = rational_grid(lo, std::max(stated, reduced) + m.c_f(), Rational(1, 4) * m.c_f());
  }
  for (const auto& g : grid)
    if (g <= 0) throw Error(ErrorKind::Parse, "c_S grid values must be positive");
  const int max_n = int_option(spec, "max-n", 8);
  if (max_n < 1 || max_n > 12) throw Error(ErrorKind::TooLarge, "max-n must lie in [1, 12]");

  const ThresholdScan scan = wetting_scan(m, grid, max_n);
  std::cout << "model class " << mc.to_string() << ", canonical " << reduce(m).name() << ", n <= " << max_n << "\n";
  std::cout << std::left << std::setw(12) << "c_S" << std::setw(10) << "wetting" << "dewetting witness\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::cout << std::left << std::setw(12) << to_string(grid[i]) << std::setw(10) << (scan.wetting[i] ? "yes" : "no");
    if (const auto& w = scan.witness[i])
      std::cout << (w->exact ? "exact minimum" : "droplet") << " at n=" << w->n << ": " << to_string(w->energy) << " < "
                << to_string(w->wetting_energy);
    else
      std::cout << "-";
    std::cout << "\n";
  }

  const std::string lo = scan.below ? to_string(*scan.below) : "-inf";
  const std::string hi = scan.above ? to_string(*scan.above) : "+inf";
  std::cout << "empirical threshold bracket: (" << lo << ", " << hi << "]" << (scan.monotone ? "" : " (non-monotone scan)")
            << "\n";
  auto consistent = [&](const Rational& t) {
    return (!scan.below || *scan.below < t) && (!scan.above || t <= *scan.above);
  };
  const bool cs = consistent(stated), cr = consistent(reduced);
  std::cout << "stated threshold  " << to_string(stated) << ": " << (cs ? "consistent" : "inconsistent") << "\n";
  std::cout << "reduced threshold " << to_string(reduced) << ": " << (cr ? "consistent" : "inconsistent") << "\n";
  if (stated == reduced) std::cout << "verdict: stated and reduced thresholds coincide (" << (cs ? "consistent" : "inconsistent") << ")\n";
  else if (cs != cr) std::cout << "verdict: " << (cs ? "stated" : "reduced") << " threshold\n";
  else std::cout << "verdict: undecided (" << (cs ? "both" : "neither") << " consistent)\n";
  return kOk;
}

int cmd_shape(const RunSpec& spec, const Context& ctx)
{
  const double c_f = spec.model ? to_double(spec.model->c_f()) : 1.0;
  Rational sg = spec.model ? sigma(*spec.model) : Rational(0);
  if (spec.has("sigma")) sg = parse_rational(spec.get("sigma"));
  const double s = to_double(sg);

  const Polygon wulff = wulff_polygon(c_f);
  const Polygon wb = winterbottom_polygon(c_f, s);
  std::cout << "c_F = " << format_double(c_f) << ", sigma = " << to_string(sg) << " (" << format_double(s) << ")\n";
  std::cout << "Wulff:        vertices " << wulff.size() << ", area " << format_double(area(wulff)) << ", perimeter "
            << format_double(perimeter(wulff)) << "\n";
  std::cout << "Winterbottom: vertices " << wb.size() << ", area " << format_double(area(wb)) << ", surface energy "
            << format_double(surface_energy(wb, c_f, s)) << "\n";
  double ymin = 1e300;
  for (const auto& v : wulff.vertices) ymin = std::min(ymin, v.y);
  write_file(ctx.out_dir / "wulff.svg", shape_svg(wulff, s >= -ymin ? ymin : -s));
  write_file(ctx.out_dir / "wulff.csv", polygon_csv(wulff));
  write_file(output_path(ctx, spec, "svg", "winterbottom.svg"), shape_svg(wb, 0.0));
  write_file(output_path(ctx, spec, "csv", "winterbottom.csv"), polygon_csv(wb));
  return kOk;
}

int cmd_converge(const RunSpec& spec, const Context& ctx)
{
  const Model& m = need_model(spec);
  const std::vector<int> n_list = parse_int_list(spec.get("n-list", "50,100,200,400"));
  for (int n : n_list)
    if (n < 1) throw Error(ErrorKind::Parse, "n-list entries must be >= 1");
  ConvergenceOptions opt;
  const std::uint64_t seed = u64_option(spec, "seed", 1);
  const int nseeds = int_option(spec, "seeds", 5);
  if (nseeds < 1) throw Error(ErrorKind::Parse, "seeds must be >= 1");
  opt.seeds.clear();
  for (int i = 0; i < nseeds; ++i) opt.seeds.push_back(seed + static_cast<std::uint64_t>(i));
  opt.schedule.steps = u64_option(spec, "steps", opt.schedule.steps);
  opt.jobs = int_option(spec, "jobs", ctx.jobs);

  const auto rows = convergence_run(m, n_list, opt);
  const std::string csv = convergence_csv(rows);
  std::cout << csv;
  write_file(output_path(ctx, spec, "csv", "converge.csv"), csv);

  const Polygon w = winterbottom_polygon(to_double(m.c_f()), to_double(sigma(m)));
  const fs::path prefix = output_path(ctx, spec, "svg-overlay", "overlay");
  for (const auto& r : rows) {
    const Footprint fp = footprint(r.config, r.n);
    const ShapeDistance sd = shape_distance(fp, w);
    write_file(prefix.string() + "_n" + std::to_string(r.n) + ".svg", overlay_svg(fp, w, sd.translation));
  }
  return kOk;
}

int cmd_verify(const RunSpec& spec, const Context& ctx)
{
  const Model& m = need_model(spec);
  SweepOptions so;
  so.max_n = int_option(spec, "max-n", 5);
  if (so.max_n < 1 || so.max_n > 6) throw Error(ErrorKind::TooLarge, "max-n must lie in [1, 6]");
  const std::string rule = spec.get("rule", "both");
  if (rule != "both" && rule != "balanced" && rule != "occupancy")
    throw Error(ErrorKind::Parse, "rule must be balanced|occupancy|both");

  struct Row {
    std::string suite, check;
    std::uint64_t checked, failed;
    bool gating;
    std::string detail;
  };
  std::vector<Row> rows;
  auto add_sweep = [&](WeightRule wr, bool gating) {
    so.rule = wr;
    so.check_transform = wr == WeightRule::Balanced || rule == "occupancy";
    const SweepReport rep = sweep_window(m, so);
    for (const auto* t : rep.tallies()) {
      if (t->checked == 0) continue;
      std::string d = t->detail;
      if (t->first_failure) d += " at {" + to_text(*t->first_failure) + "}";
      for (auto& ch : d)
        if (ch == '\n') ch = ';';
      rows.push_back({std::string("sweep/") + to_string(wr), t->name, t->checked, t->failed, gating, d});
    }
    std::cout << "sweep/" << to_string(wr) << ": " << rep.configs << " configurations, Delta_strip "
              << to_string(rep.delta_strip) << ", Delta " << to_string(rep.delta) << ", min strip "
              << (rep.min_strip ? to_string(*rep.min_strip) : "-") << "\n";
  };
  if (rule != "occupancy") add_sweep(WeightRule::Balanced, true);
  if (rule != "balanced") add_sweep(WeightRule::Occupancy, rule == "occupancy");

  const CheckTally eq = equivalence_sweep(m, std::min(so.max_n, 4));
  rows.push_back({"equivalence", eq.name, eq.checked, eq.failed, true, eq.detail});
  const CheckTally per = periodicity_check(m, 1000, 1);
  rows.push_back({"periodicity", per.name, per.checked, per.failed, true, per.detail});

  bool ok = true;
  std::ostringstream csv;
  csv << "suite,check,checked,failed,status,detail\n";
  std::cout << std::left << std::setw(20) << "suite" << std::setw(24) << "check" << std::setw(10) << "checked"
            << std::setw(8) << "failed" << "status\n";
  for (const auto& r : rows) {
    const std::string status = r.failed == 0 ? "PASS" : (r.gating ? "FAIL" : "FAIL (informational)");
    if (r.failed && r.gating) ok = false;
    std::cout << std::left << std::setw(20) << r.suite << std::setw(24) << r.check << std::setw(10) << r.checked
              << std::setw(8) << r.failed << status << "\n";
    if (r.failed) std::cout << "    first failure: " << r.detail << "\n";
    std::string d = r.detail;
    for (auto& ch : d)
      if (ch == ',' || ch == '"') ch = ' ';
    csv << r.suite << ',' << r.check << ',' << r.checked << ',' << r.failed << ',' << (r.failed ? "fail" : "pass") << ','
        << d << '\n';
  }
  if (spec.has("csv")) write_file(output_path(ctx, spec, "csv", "verify.csv"), csv.str());
  std::cout << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
  return ok ? kOk : kVerifyFailed;
}

int run(const RunSpec& spec, const Context& ctx)
{
  if (spec.command == "classify") return cmd_classify(spec, ctx);
  if (spec.command == "minimize") return cmd_minimize(spec, ctx);
  if (spec.command == "wetting-check") return cmd_wetting_check(spec, ctx);
  if (spec.command == "shape") return cmd_shape(spec, ctx);
  if (spec.command == "converge") return cmd_converge(spec, ctx);
  if (spec.command == "verify") return cmd_verify(spec, ctx);
  throw Error(ErrorKind::Parse, "unknown command '" + spec.command + "'");
}

int exit_code(ErrorKind k)
{
  switch (k) {
    case ErrorKind::InvalidWall:
    case ErrorKind::InvalidParameter:
    case ErrorKind::TooClose:
    case ErrorKind::NoBonds:
    case ErrorKind::Unclassifiable:
    case ErrorKind::WettingRegime:
    case ErrorKind::EmptyShape: return kInfeasible;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"winterlat: discrete film-on-substrate models and their Winterbottom limit"};
  app.require_subcommand(1);

  std::string model_file, out_dir = ".", spec_file;
  int jobs = 0;
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads (falls back to WINTERLAT_JOBS)");

  // flag values gathered as strings; they are validated by the RunSpec layer
  std::map<std::string, std::string> flags;
  auto str_opt = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, flags[name], help);
  };
  auto model_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--model", model_file, "Model file (key = value)");
    o->check(CLI::ExistingFile);
    if (required) o->required();
  };

  auto* classify = app.add_subcommand("classify", "Class, canonical model, sigma and thresholds");
  model_opt(classify, true);

  auto* minimize = app.add_subcommand("minimize", "Ground state for n atoms");
  model_opt(minimize, true);
  for (const auto& [k, h] : std::vector<std::pair<std::string, std::string>>{{"n", "Number of atoms"},
                                                                             {"method", "exact|anneal|naive"},
                                                                             {"seed", "RNG seed (anneal)"},
                                                                             {"steps", "Anneal steps"},
                                                                             {"restarts", "Anneal restarts"},
                                                                             {"svg", "SVG output file"}})
    str_opt(minimize, k, h);
  minimize->add_option("--config-out", flags["out"], "Config output file (default config.txt in --out)");

  auto* wetting = app.add_subcommand("wetting-check", "Empirical wetting threshold bracket");
  model_opt(wetting, true);
  str_opt(wetting, "c-s-grid", "lo:step:hi or comma list of c_S values");
  str_opt(wetting, "max-n", "Largest n brute-forced (default 8)");

  auto* shape = app.add_subcommand("shape", "Wulff and Winterbottom polygons");
  model_opt(shape, false);
  str_opt(shape, "sigma", "Adhesivity (default sigma(model) or 0)");
  str_opt(shape, "svg", "Winterbottom SVG file");
  str_opt(shape, "csv", "Winterbottom CSV file");

  auto* converge = app.add_subcommand("converge", "Convergence table against the Winterbottom shape");
  model_opt(converge, true);
  str_opt(converge, "n-list", "Comma list of n (default 50,100,200,400)");
  str_opt(converge, "seed", "First seed");
  str_opt(converge, "seeds", "Number of seeds (default 5)");
  str_opt(converge, "steps", "Anneal steps per run");
  str_opt(converge, "csv", "CSV output file");
  str_opt(converge, "svg-overlay", "Overlay SVG prefix");

  auto* verify = app.add_subcommand("verify", "Exhaustive invariant sweeps");
  model_opt(verify, true);
  str_opt(verify, "max-n", "Largest n (default 5)");
  str_opt(verify, "rule", "balanced|occupancy|both (default both)");
  str_opt(verify, "csv", "CSV table output file");

  auto* runsub = app.add_subcommand("run", "Execute a run-spec file");
  runsub->add_option("--spec", spec_file, "Run spec (model block, command, options)")->required()->check(CLI::ExistingFile);
  model_opt(runsub, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  Context ctx;
  ctx.out_dir = out_dir;
  ctx.jobs = jobs;
  if (ctx.jobs <= 0) {
    if (const char* env = std::getenv("WINTERLAT_JOBS")) ctx.jobs = std::atoi(env);
    if (ctx.jobs <= 0) ctx.jobs = 1;
  }

  try {
    RunSpec spec;
    if (runsub->parsed()) {
      spec = parse_run_spec(read_file(spec_file));
    } else {
      auto* sub = app.get_subcommands().front();
      spec.command = sub->get_name();
      const auto allowed = command_options(spec.command);
      for (const auto& [k, v] : flags)
        if (!v.empty() && std::find(allowed.begin(), allowed.end(), k) != allowed.end()) spec.options[k] = v;
    }
    if (!model_file.empty()) {
      if (spec.model) throw Error(ErrorKind::Parse, "model given both in the spec and via --model");
      spec.model = parse_model(read_file(model_file));
    }
    return run(spec, ctx);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
