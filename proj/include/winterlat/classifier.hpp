#ifndef WINTERLAT_CLASSIFIER_HPP
#define WINTERLAT_CLASSIFIER_HPP

#include <string>
#include <vector>

#include "winterlat/lattice.hpp"

namespace winterlat {

enum class ClassTag { C1, C2, C3, C4 };

inline const char* to_string(ClassTag t)
{
  switch (t) {
    case ClassTag::C1: return "C1";
    case ClassTag::C2: return "C2";
    case ClassTag::C3: return "C3";
    case ClassTag::C4: return "C4";
  }
  return "?";
}

struct ModelClass {
  ClassTag tag = ClassTag::C2;
  int q = 1;
  int s = 0;  // only meaningful for C4

  friend bool operator==(const ModelClass&, const ModelClass&) = default;

  std::string to_string() const
  {
    std::string out = winterlat::to_string(tag);
    if (tag == ClassTag::C4) out += " (s=" + std::to_string(s) + ")";
    return out;
  }
};

enum class CanonicalKind { M0, M1 };

struct CanonicalModel {
  CanonicalKind kind = CanonicalKind::M0;
  int q = 1;
  int r = 0;  // M1 only
  InteractionVector lambda;

  friend bool operator==(const CanonicalModel&, const CanonicalModel&) = default;

  Model to_model(double h = 1.0) const
  {
    if (kind == CanonicalKind::M0) return make_m0(1, q, lambda.c_f, lambda.c_s, h);
    return make_m1(q, r, lambda.c_f, lambda.c_s, h);
  }

  std::string name() const
  {
    if (kind == CanonicalKind::M0) return "M0(1," + std::to_string(q) + ")";
    return "M1(" + std::to_string(q) + "," + std::to_string(r) + ")";
  }
};

/// Class from the bonded pattern of the recentered model.
inline ModelClass classify(const Model& model)
{
  const Model m = recenter(model);
  const int q = m.period();
  const auto& pat = m.pattern();
  std::vector<int> bonded;
  bool all_two = true, all_one = true;
  for (int k = 0; k < q; ++k) {
    const int c = pat[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bonded.push_back(k);
    all_two = all_two && c == 2;
    all_one = all_one && c == 1;
  }
  if (bonded.empty() || bonded.front() != 0) throw Error(ErrorKind::Unclassifiable, "recentered site is not bonded");
  if (all_two && bonded.size() == 1) return {ClassTag::C1, q, 0};
  if (all_one && bonded.size() == 1) return {ClassTag::C2, q, 0};
  if (all_one && bonded.size() == 2) {
    const int s = bonded[1];
    if (2 * s == q) return {ClassTag::C3, q, 0};
    if (q > 2) return {ClassTag::C4, q, s};
  }
  throw Error(ErrorKind::Unclassifiable, "bonded pattern matches none of C1-C4");
}

/// Multiplier k with c_S' = k c_S under reduction (2 for C1, else 1).
inline int reduction_factor(const ModelClass& c) { return c.tag == ClassTag::C1 ? 2 : 1; }

inline CanonicalModel reduce(const ModelClass& c, const InteractionVector& lambda)
{
  CanonicalModel out;
  out.lambda = lambda;
  switch (c.tag) {
    case ClassTag::C1:
      out.q = c.q;
      out.lambda.c_s = lambda.c_s * 2;
      break;
    case ClassTag::C2: out.q = c.q; break;
    case ClassTag::C3: out.q = c.q / 2; break;
    case ClassTag::C4:
      out.kind = CanonicalKind::M1;
      out.q = c.q;
      out.r = 2 * c.s < c.q ? c.s : c.q - c.s;
      break;
  }
  return out;
}

inline CanonicalModel reduce(const Model& model) { return reduce(classify(model), model.lambda()); }

inline Rational sigma(const ModelClass& c, const InteractionVector& l)
{
  if (c.tag == ClassTag::C2) return 2 * l.c_f - l.c_s / c.q;
  return 2 * l.c_f - 2 * l.c_s / c.q;
}

inline Rational sigma(const Model& model) { return sigma(classify(model), model.lambda()); }

inline Rational sigma(const CanonicalModel& m)
{
  if (m.kind == CanonicalKind::M0) return 2 * m.lambda.c_f - m.lambda.c_s / m.q;
  return 2 * m.lambda.c_f - 2 * m.lambda.c_s / m.q;
}

/// Canonical threshold multiplier for M0(1,q) / M1(q,r).
inline int wetting_threshold_multiplier(const CanonicalModel& m)
{
  if (m.kind == CanonicalKind::M0) return m.q == 1 ? 4 : 6;
  if (m.r > 1) return 6;
  return m.q == 2 ? 4 : 5;
}

/// Threshold multiplier k in c_S >= k c_F, read off the class as stated (no rescaling for C1).
inline int wetting_threshold_stated(const ModelClass& c)
{
  switch (c.tag) {
    case ClassTag::C1:
    case ClassTag::C2: return c.q == 1 ? 4 : 6;
    case ClassTag::C3: return c.q == 2 ? 4 : 6;
    case ClassTag::C4: return (c.s == 1 || c.s == c.q - 1) ? 5 : 6;
  }
  return 6;
}

inline int wetting_threshold_stated(const Model& model) { return wetting_threshold_stated(classify(model)); }

/// Threshold on the original c_S obtained by pulling the canonical threshold back through reduce.
inline Rational wetting_threshold_reduced(const Model& model)
{
  const ModelClass c = classify(model);
  const CanonicalModel cm = reduce(c, model.lambda());
  return Rational(wetting_threshold_multiplier(cm), reduction_factor(c)) * model.c_f();
}

/// True when c_S is at or above the reduction-derived threshold.
inline bool in_wetting_regime(const Model& model) { return model.c_s() >= wetting_threshold_reduced(model); }

}  // namespace winterlat

#endif  // WINTERLAT_CLASSIFIER_HPP
