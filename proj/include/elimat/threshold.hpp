#pragma once

// Degree thresholds certifying corank = fiber degree, as unions of
// orthants E(a) = { z : z_i >= a_i }.

#include <elimat/ring.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elimat {

enum class Setting { Curve, Morphism, Surface, Multigraded };

inline std::string to_string(Setting s) {
  switch (s) {
    case Setting::Curve: return "curve";
    case Setting::Morphism: return "morphism";
    case Setting::Surface: return "surface";
    case Setting::Multigraded: return "multigraded";
  }
  return "?";
}

inline Setting setting_from_string(const std::string& s) {
  if (s == "curve") return Setting::Curve;
  if (s == "morphism") return Setting::Morphism;
  if (s == "surface") return Setting::Surface;
  if (s == "multigraded") return Setting::Multigraded;
  throw std::invalid_argument("unknown setting '" + s + "'");
}

struct ValidityRegion {
  std::vector<MultiDegree> corners;

  bool contains(const MultiDegree& nu) const {
    for (const auto& c : corners)
      if (c.size() == nu.size() && leq(c, nu)) return true;
    return false;
  }
};

struct ThresholdCertificate {
  Setting setting;
  ValidityRegion region;
  std::vector<std::pair<std::string, std::vector<int>>> inputs;  ///< named integer data used
  std::string note;
  std::vector<std::string> warnings;

  /// Smallest region point: the first corner.
  const MultiDegree& default_degree() const { return region.corners.front(); }
};

/// E(max_{i != j} (mu_i + mu_j)). With a single syzygy (r = 2) there is no
/// pair; mu_1 is used.
inline ThresholdCertificate threshold_curve(const std::vector<int>& mu) {
  if (mu.empty()) throw std::invalid_argument("empty mu list");
  int t = mu.size() == 1 ? mu[0] : mu[0] + mu[1];
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = i + 1; j < mu.size(); ++j) t = std::max(t, mu[i] + mu[j]);
  ThresholdCertificate c{Setting::Curve, {{{t}}}, {{"mu", mu}}, "max over pairs of mu_i + mu_j", {}};
  if (mu.size() == 1) c.note = "single syzygy: threshold mu_1";
  return c;
}

/// (n-1)(d-1) by default; reg(I) - d with an override, which must respect
/// the lower bound floor((n-1)(d-1)/2).
inline ThresholdCertificate threshold_morphism(int n, int d, std::optional<int> reg) {
  const int coarse = (n - 1) * (d - 1);
  ThresholdCertificate c{Setting::Morphism, {{{coarse}}}, {{"n", {n}}, {"d", {d}}}, "(n-1)(d-1)", {}};
  if (reg) {
    const int nu0 = *reg - d;
    const int lower = coarse / 2;
    if (nu0 < lower)
      throw std::invalid_argument("reg override gives nu0 = " + std::to_string(nu0) +
                                  ", below the lower bound " + std::to_string(lower));
    c.region.corners = {{nu0}};
    c.inputs.push_back({"reg", {*reg}});
    c.note = "reg(I) - d from override";
  }
  return c;
}

/// 2(d-1) - indeg(I^sat), indeg defaulting to 0; clamped at 0.
inline ThresholdCertificate threshold_surface(int d, std::optional<int> indeg) {
  const int ind = indeg.value_or(0);
  int t = 2 * (d - 1) - ind;
  ThresholdCertificate c{Setting::Surface, {{{0}}}, {{"d", {d}}, {"indeg", {ind}}},
                         indeg ? "2(d-1) - indeg from override" : "2(d-1), indeg defaulted to 0", {}};
  if (t < 0) {
    c.warnings.push_back("threshold " + std::to_string(t) + " clamped to 0");
    t = 0;
  }
  c.region.corners = {{t}};
  return c;
}

enum class MultigradedSource { P2, P1xP1 };

/// Regions on X x P^1. For X = P^2 the source degree is (d, e); for
/// X = P^1 x P^1 it is (d1, d2, e).
inline ThresholdCertificate threshold_multigraded(MultigradedSource X, const std::vector<int>& d, int e) {
  ThresholdCertificate c{Setting::Multigraded, {}, {{"d", d}, {"e", {e}}}, "", {}};
  if (X == MultigradedSource::P2) {
    if (d.size() != 1) throw std::invalid_argument("P^2 source needs one degree");
    c.region.corners = {{3 * d[0] - 2, e - 1}, {2 * d[0] - 2, 3 * e - 1}};
    c.note = "P2 x P1: E(3d-2, e-1) u E(2d-2, 3e-1)";
  } else {
    if (d.size() != 2) throw std::invalid_argument("P^1 x P^1 source needs two degrees");
    c.region.corners = {{3 * d[0] - 1, 2 * d[1] - 1, e - 1},
                        {2 * d[0] - 1, 3 * d[1] - 1, e - 1},
                        {2 * d[0] - 1, 2 * d[1] - 1, 3 * e - 1}};
    c.note = "P1 x P1 x P1: three-orthant union";
  }
  for (auto& corner : c.region.corners)
    for (auto& v : corner)
      if (v < 0) {
        c.warnings.push_back("negative corner component clamped to 0");
        v = 0;
      }
  return c;
}

}  // namespace elimat
