#ifndef WINTERLAT_VERIFY_HPP
#define WINTERLAT_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "winterlat/classifier.hpp"
#include "winterlat/configuration.hpp"
#include "winterlat/energy.hpp"
#include "winterlat/minimizer.hpp"

namespace winterlat {

/// Counter for one property over a sweep, keeping the first counterexample.
struct CheckTally {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::optional<Config> first_failure;
  std::string detail;

  CheckTally() = default;
  explicit CheckTally(std::string n) : name(std::move(n)) {}

  bool ok() const { return failed == 0; }

  /// why() is only evaluated for the first failure.
  template <typename Why>
  void record(bool pass, const Config& c, Why&& why)
  {
    ++checked;
    if (pass) return;
    if (failed++ == 0) {
      first_failure = c;
      detail = why();
    }
  }
};

struct SweepOptions {
  int max_n = 5;
  int k1_min = -6, k1_max = 6, k2_max = 3;
  WeightRule rule = WeightRule::Balanced;
  bool check_transform = true;
};

struct SweepReport {
  std::uint64_t configs = 0;
  CheckTally strip_decomposition{"strip decomposition"};
  CheckTally strip_bound{"strip lower bound"};
  CheckTally global_bound{"global lower bound"};
  CheckTally transform{"transform T"};
  CheckTally atom_weight{"per-atom weight <= 1"};
  Rational delta_strip;
  Rational delta;
  std::optional<Rational> min_strip;
  std::optional<Config> min_strip_config;

  std::vector<const CheckTally*> tallies() const
  {
    return {&strip_decomposition, &strip_bound, &global_bound, &transform, &atom_weight};
  }
  bool ok() const
  {
    return strip_decomposition.ok() && strip_bound.ok() && global_bound.ok() && transform.ok() && atom_weight.ok();
  }
};

/// Exhaustive sweep over all configurations in a window: strip decomposition, per-strip bound,
/// boundary lower bound and the properties of T.
inline SweepReport sweep_window(const Model& model, const SweepOptions& opt = {})
{
  SweepReport rep;
  rep.delta_strip = delta_strip(model);
  rep.delta = std::min(rep.delta_strip / 6, model.c_f());
  const int q = model.period();
  const auto window = make_window(opt.k1_min, opt.k1_max, 0, opt.k2_max);
  for_each_window_config(window, opt.max_n, false, [&](const Config& c) {
    ++rep.configs;
    const auto sd = strip_decomposition_check(model, c, opt.rule);
    rep.strip_decomposition.record(sd.holds, c, [&] { return "lhs " + to_string(sd.lhs) + " < rhs " + to_string(sd.rhs); });
    rep.atom_weight.record(sd.max_weight <= 1, c, [&] {
      return "atom (" + std::to_string(sd.overweight_atom->k1) + "," + std::to_string(sd.overweight_atom->k2) +
             ") weight " + to_string(sd.max_weight);
    });
    for (const auto& x : strip_centers(model, c)) {
      const StripReport sr = strip(model, c, x, opt.rule);
      rep.strip_bound.record(sr.total >= rep.delta_strip, c, [&] {
        return "strip at (" + std::to_string(x.k1) + "," + std::to_string(x.k2) + ") = " +
                                 to_string(sr.total) + " < " + to_string(rep.delta_strip);
      });
      if (!rep.min_strip || sr.total < *rep.min_strip) {
        rep.min_strip = sr.total;
        rep.min_strip_config = c;
      }
    }
    const auto lb = lower_bound_check(model, c, rep.delta);
    rep.global_bound.record(lb.holds, c, [&] { return "V " + to_string(lb.energy) + " < bound " + to_string(lb.bound); });
    if (opt.check_transform) {
      const Config t = transform(c, model);
      bool ok = t.size() == c.size();
      std::string why;
      if (!ok) why = "cardinality changed";
      if (ok && !is_almost_connected(t, q)) {
        ok = false;
        why = "result not almost connected";
      }
      if (ok) {
        for (const auto& comp : decompose(t, q).components)
          if (!has_substrate_bond(model, comp)) {
            ok = false;
            why = "component without substrate bond";
            break;
          }
      }
      if (ok && energy(model, t) > energy(model, c)) {
        ok = false;
        why = "energy increased";
      }
      rep.transform.record(ok, c, [&] { return why; });
    }
  });
  return rep;
}

/// V under the original model against V of the associated configuration under the reduced model.
inline CheckTally equivalence_sweep(const Model& model, int max_n = 4, int k1_min = -6, int k1_max = 6, int k2_max = 3)
{
  CheckTally tally{"equivalence"};
  const Model reduced = reduce(model).to_model();
  const auto window = make_window(k1_min, k1_max, 0, k2_max);
  for_each_window_config(window, max_n, false, [&](const Config& c) {
    const Rational a = energy(model, c);
    const Rational b = energy(reduced, associated_config(c, model));
    tally.record(a == b, c, [&] { return "V " + to_string(a) + " vs reduced " + to_string(b); });
  });
  return tally;
}

/// An explicit configuration that beats the wetting configuration of the same size.
struct DewettingWitness {
  int n = 0;
  Rational energy;
  Rational wetting_energy;
  bool exact = false;  // from the exact minimizer (otherwise a compact droplet)
};

/// Energy per atom of the wetting family, measured over a span containing whole periods.
inline Rational wetting_slope(const Model& model)
{
  constexpr int a = 60, b = 120;
  return (energy(model, wetting_config(model, b)) - energy(model, wetting_config(model, a))) / (b - a);
}

/// Compact droplets of size 16, 32, ... n_max against the wetting configuration. A droplet costs
/// -6 c_F n + O(sqrt n), so one exists once the wetting slope exceeds -6 c_F; none is searched otherwise.
inline std::optional<DewettingWitness> droplet_witness(const Model& model, int n_max = 1 << 16)
{
  if (wetting_slope(model) <= -6 * model.c_f()) return std::nullopt;
  for (int n = 16; n <= n_max; n *= 2) {
    const Rational e = energy(model, detail::winterbottom_seed(model, n));
    const Rational w = energy(model, wetting_config(model, n));
    if (e < w) return DewettingWitness{n, e, w, false};
  }
  return std::nullopt;
}

struct ThresholdScan {
  std::vector<Rational> grid;
  std::vector<bool> wetting;  // no witness found at that c_S
  std::vector<std::optional<DewettingWitness>> witness;
  std::optional<Rational> below;  // largest grid value with a dewetting witness
  std::optional<Rational> above;  // smallest grid value above every witness
  bool monotone = true;
};

/// Empirical wetting threshold on a c_S grid: exact minima for n <= max_n, then compact droplets for
/// large n. A witness proves dewetting; its absence up to the search limits is evidence of wetting.
inline ThresholdScan wetting_scan(const Model& model, const std::vector<Rational>& grid, int max_n,
                                  int droplet_max_n = 1 << 16)
{
  ThresholdScan scan;
  scan.grid = grid;
  const ComponentTable table(model, max_n);
  ExactOptions eo;
  eo.collect_all = false;
  for (const auto& cs : grid) {
    const Model m = model.with_c_s(cs);
    std::optional<DewettingWitness> wit;
    for (int n = 1; n <= max_n && !wit; ++n) {
      const Rational e = exact_minimize(table, m.lambda(), n, eo).energy;
      const Rational w = energy(m, wetting_config(m, n));
      if (e < w) wit = DewettingWitness{n, e, w, true};
    }
    if (!wit && droplet_max_n > 0) wit = droplet_witness(m, droplet_max_n);
    scan.wetting.push_back(!wit);
    scan.witness.push_back(wit);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!scan.wetting[i]) scan.below = grid[i];
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (scan.wetting[i] && (!scan.below || grid[i] > *scan.below)) {
      scan.above = grid[i];
      break;
    }
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (scan.wetting[i - 1] && !scan.wetting[i]) scan.monotone = false;
  return scan;
}

/// V(D + q t1) = V(D) on random configurations (sizes 1..max_n, sites in a box around the wall).
inline CheckTally periodicity_check(const Model& model, int count, std::uint64_t seed, int max_n = 20)
{
  CheckTally tally{"periodicity"};
  std::mt19937_64 rng(seed);
  const int q = model.period();
  for (int i = 0; i < count; ++i) {
    const int n = 1 + static_cast<int>(detail::uniform_below(rng, static_cast<std::uint64_t>(max_n)));
    std::vector<SiteCoord> sites;
    for (int k = 0; k < n; ++k)
      sites.push_back({static_cast<int>(detail::uniform_below(rng, 25)) - 12, static_cast<int>(detail::uniform_below(rng, 5))});
    const Config c(std::move(sites));
    const Rational a = energy(model, c), b = energy(model, c.translated(q, 0)), m = energy(model, c.translated(-q, 0));
    tally.record(a == b && a == m, c, [&] { return "V " + to_string(a) + " vs shifted " + to_string(b) + ", " + to_string(m); });
  }
  return tally;
}

inline std::vector<Rational> rational_grid(Rational lo, Rational hi, Rational step)
{
  std::vector<Rational> g;
  for (Rational x = lo; x <= hi; x += step) g.push_back(x);
  return g;
}

}  // namespace winterlat

#endif  // WINTERLAT_VERIFY_HPP
