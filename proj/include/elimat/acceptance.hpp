#pragma once

// End-to-end acceptance checks, one result per criterion. Shared by the
// acceptance binary and the selftest command.

#include <elimat/job.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace elimat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Equality after permuting rows and columns and flipping signs of rows and
/// columns. Small matrices only.
template <class K>
bool equal_up_to_perm_sign(const PolyMatrix<K>& a, const PolyMatrix<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  std::vector<std::size_t> rp(a.rows()), cp(a.cols());
  std::iota(rp.begin(), rp.end(), 0);
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      // fix row signs by the first column, then every column needs one sign
      for (unsigned rs = 0; rs < (1u << a.rows()); ++rs) {
        bool ok = true;
        for (std::size_t j = 0; j < a.cols() && ok; ++j) {
          bool plus = true, minus = true;
          for (std::size_t i = 0; i < a.rows(); ++i) {
            auto x = a(rp[i], cp[j]);
            if (rs >> i & 1u) x = -x;
            plus = plus && x == b(i, j);
            minus = minus && -x == b(i, j);
          }
          ok = plus || minus;
        }
        if (ok) return true;
      }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return false;
}

template <class K>
PolyMatrix<K> parse_matrix(const RingPtr& R, const std::vector<std::vector<std::string>>& rows) {
  PolyMatrix<K> m(R, rows.size(), rows.at(0).size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = parse_polynomial<K>(rows[i][j], R);
  return m;
}

namespace acceptance {

using Q = Rational;

struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first_failure;
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
  std::string summary() const {
    std::string s = std::to_string(checks - failures) + "/" + std::to_string(checks) + " checks";
    if (failures) s += "; first failure: " + first_failure;
    return s;
  }
};

template <class K>
std::vector<K> random_point(const Field<K>& F, Rng& rng, std::size_t n, int bound) {
  for (;;) {
    std::vector<K> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(F.random(rng, bound));
    if (!all_zero(v)) return v;
  }
}

template <class K>
void twisted_cubic_on(const FieldSpec& field, Tally& t, Rng& rng) {
  const Field<K> F(field);
  const auto R = PolyRing::make({{"x", "y"}}, field);
  const auto P = Parameterization<K>::parse(R, {"x^3", "x^2*y", "x*y^2", "y^3"});
  const auto mb = mu_basis(P);
  t.check(mb.mu == std::vector<int>{1, 1, 1}, "mu-basis degrees");
  const auto M = build_rep(P, {1}, {}, threshold_curve(mb.mu));
  const auto expected = parse_matrix<K>(P.target, {{"-T2", "-T3", "-T4"}, {"T1", "T2", "T3"}});
  t.check(equal_up_to_perm_sign(M.matrix(), expected), "M_1 matches the reference matrix");
  for (int s = 0; s < 500; ++s) {
    const auto p = random_point(F, rng, 4, 20);
    t.check(M.corank(std::span<const K>(p)) <= 1, "corank <= 1 at a random point");
  }
  for (int s = 0; s < 50; ++s) {
    const auto x = random_point(F, rng, 2, 20);
    const auto p = P.evaluate(x);
    t.check(M.corank(std::span<const K>(p)) == 1, "corank 1 at an image point");
  }
}

inline CriterionResult criterion1() {
  Tally t;
  Rng rng(101);
  twisted_cubic_on<Q>(FieldSpec::rationals(), t, rng);
  twisted_cubic_on<ModP>(FieldSpec::prime_field(101), t, rng);
  return {1, "twisted cubic", t.ok(), t.summary()};
}

inline CriterionResult criterion2() {
  Tally t;
  const auto R = PolyRing::make({{"x1", "x2", "x3"}}, FieldSpec::rationals());
  const auto P = Parameterization<Q>::parse(R, {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
  const auto M = build_rep(P, {1}, {}, threshold_surface(2, 1));
  const auto expected = parse_matrix<Q>(
      P.target, {{"0", "T2", "T3", "-T1+T4"}, {"T2", "0", "-T1-T4", "T3"}, {"-T3", "-T1-T4", "0", "T2"}});
  t.check(equal_up_to_perm_sign(M.matrix(), expected), "M_1 matches the reference matrix");
  const std::vector<Q> special{Q(1), Q(0), Q(0), Q(-1)};
  t.check(M.corank(std::span<const Q>(special)) == 2, "corank 2 at (1:0:0:-1)");
  Rng rng(202);
  const Field<Q> F;
  for (int s = 0; s < 100;) {
    const auto x = random_point(F, rng, 3, 30);
    if (x[0].is_zero()) continue;
    const auto p = P.evaluate(x);
    if (all_zero(p)) continue;
    t.check(M.corank(std::span<const Q>(p)) == 1, "corank 1 at an on-sphere point");
    ++s;
  }
  const auto g = gcd_all(maximal_minors(M.matrix()));
  t.check(g == parse_polynomial<Q>("T1^2-T2^2-T3^2-T4^2", P.target), "gcd of 3x3 minors is the quadric");
  const auto B = dim_base_locus(P);
  t.check(B.kind == BaseLocus::Kind::Dim0 && B.degree == 2, "base locus Dim0 of degree 2");
  return {2, "sphere", t.ok(), t.summary()};
}

inline CriterionResult criterion3(Tally& stability) {
  Tally t;
  Rng rng(303);
  const Field<Q> F;
  for (int inst = 0; inst < 50; ++inst) {
    InstanceSpec spec;
    spec.r = 3 + static_cast<std::size_t>(inst % 3);
    spec.seed = 3000 + static_cast<std::uint64_t>(inst);
    if (inst % 5 == 4) {
      spec.kind = InstanceSpec::Kind::CompositeCurve;
      spec.k = 2 + (inst / 5) % 2;
      spec.d = spec.k * (spec.k == 2 ? 2 + (inst / 10) % 2 : 2);
    } else {
      spec.d = 2 + inst % 7;
    }
    const auto P = random_instance<Q>(spec).P;
    const auto cert = threshold_curve(mu_basis(P).mu);
    const auto nu = cert.default_degree();
    const auto M = build_rep(P, nu, {}, cert);
    const auto M2 = build_rep(P, nu + MultiDegree{1}, {}, cert);
    std::vector<std::vector<Q>> pts;
    pts.push_back(P.evaluate(std::vector<Q>{Q(1), Q(0)}));
    pts.push_back(P.evaluate(std::vector<Q>{Q(0), Q(1)}));
    for (int s = 0; s < 8; ++s) pts.push_back(P.evaluate(random_point(F, rng, 2, 12)));
    for (int s = 0; s < 10; ++s) pts.push_back(random_point(F, rng, P.r(), 12));
    for (const auto& p : pts) {
      const std::span<const Q> ps(p);
      const auto c = M.corank(ps);
      t.check(c == fiber_degree_exact_P1(P, ps), "corank = exact P^1 fiber degree (instance " + std::to_string(inst) + ")");
      stability.check(c == M2.corank(ps), "curve corank stable at nu+1 (instance " + std::to_string(inst) + ")");
    }
  }
  return {3, "corank = fiber degree, curves", t.ok(), t.summary()};
}

inline CriterionResult criterion4(Tally& stability) {
  Tally t;
  std::size_t image_cmp = 0, off_cmp = 0;
  const auto field = FieldSpec::prime_field(101);
  const Field<ModP> F(field);
  Rng rng(404);
  for (int inst = 0; inst < 20; ++inst) {
    InstanceSpec spec;
    spec.kind = InstanceSpec::Kind::Morphism;
    spec.d = 2 + inst % 2;
    spec.field = field;
    spec.seed = 4000 + static_cast<std::uint64_t>(inst);
    const auto P = random_instance<ModP>(spec).P;
    const int d = spec.d;
    const auto cert = threshold_morphism(3, d, std::nullopt);
    BuildOptions bo;
    bo.lmax = 3;
    const auto nu = cert.default_degree();
    const auto M = build_rep(P, nu, bo, cert);
    const auto M2 = build_rep(P, nu + MultiDegree{1}, bo, cert);
    const ReducednessCheck<ModP> reduced(P);
    for (int s = 0; s < 3; ++s) {
      const auto p = P.evaluate(random_point(F, rng, 3, 0));
      if (all_zero(p)) continue;
      const std::span<const ModP> ps(p);
      const auto fiber = enumerate_fiber_Fq(P, ps);
      bool all_reduced = true;
      for (const auto& x : fiber) all_reduced = all_reduced && reduced(std::span<const ModP>(x), ps);
      const long h1 = fiber_hilbert_value(P, ps, 3 * d), h2 = fiber_hilbert_value(P, ps, 3 * d + 1);
      const auto c = M.corank(ps);
      stability.check(c == M2.corank(ps), "morphism corank stable at nu+1");
      // compare only when every fiber point is rational and reduced
      if (!all_reduced || h1 != h2 || h1 != static_cast<long>(fiber.size())) continue;
      ++image_cmp;
      t.check(c == fiber.size(), "corank = enumerated reduced fiber (instance " + std::to_string(inst) + ")");
    }
    for (int s = 0; s < 3; ++s) {
      const auto p = random_point(F, rng, 4, 0);
      const std::span<const ModP> ps(p);
      const auto c = M.corank(ps);
      stability.check(c == M2.corank(ps), "morphism corank stable at nu+1");
      if (fiber_hilbert_value(P, ps, 3 * d - 2) != 0) continue;
      ++off_cmp;
      t.check(c == 0, "corank 0 off the image (instance " + std::to_string(inst) + ")");
    }
  }
  t.check(image_cmp >= 20, "at least 20 verified image comparisons");
  t.check(off_cmp >= 20, "at least 20 verified off-image comparisons");
  auto r = CriterionResult{4, "corank = fiber degree, morphisms P^2 -> P^3", t.ok(), t.summary()};
  r.detail += "; " + std::to_string(image_cmp) + " image and " + std::to_string(off_cmp) + " off-image comparisons";
  return r;
}

template <class K>
void check_layer(const Parameterization<K>& P, const MultiDegree& nu, int l, Tally& t, const std::string& label) {
  const auto L = rees_layer(P, nu, l);
  const auto H = koszul_H1(P, nu + l * P.degree);
  t.check(L.basis.size() == L.h1_dim && L.h1_dim == H.dim(), label + ": layer dimension = dim H1");
  for (std::size_t i = 0; i < L.basis.size(); ++i) {
    t.check(substitute_maps(P, L.basis[i]).is_zero(), label + ": layer element vanishes under T -> f");
    const auto coords = H.coordinates(tuple_coordinates(downgrade(P, L.basis[i]), H.coeff_basis));
    bool unit = true;
    for (std::size_t k = 0; k < coords.size(); ++k) unit = unit && (k == i ? coords[k].is_one() : coords[k].is_zero());
    t.check(unit, label + ": downgrade(upgrade) is the identity on H1 coordinates");
  }
}

inline CriterionResult criterion5() {
  Tally t;
  std::size_t total_dim = 0;
  {
    const auto R = PolyRing::make({{"x", "y"}}, FieldSpec::rationals());
    const auto P = Parameterization<Q>::parse(R, {"x^2", "x*y", "y^2"});
    check_layer(P, {0}, 2, t, "conic l=2");
    const auto L = rees_layer(P, {0}, 2);
    total_dim += L.basis.size();
    const auto target = parse_polynomial<Q>("T1*T3-T2^2", P.target);
    bool found = false;
    for (const auto& E : L.basis) found = found || E.coeffs[0].monic() == target.monic();
    t.check(found, "conic layer contains T1*T3 - T2^2");
  }
  {
    const auto R = PolyRing::make({{"x1", "x2", "x3"}}, FieldSpec::rationals());
    const auto P = Parameterization<Q>::parse(R, {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
    // base points: x_k times a linear syzygy is a class no representative of which upgrades
    bool infeasible = false;
    try {
      rees_layer(P, {0}, 2);
    } catch (const UpgradeInfeasible&) {
      infeasible = true;
    }
    t.check(infeasible, "sphere full layer nu=0 l=2 reports infeasibility");
    const Tuple<Q> h{P.maps[0], -P.maps[1], -P.maps[2], -P.maps[3]};
    const auto E = upgrade_syzygy(P, h, 2);
    t.check(substitute_maps(P, E).is_zero(), "sphere upgrade vanishes under T -> f");
    t.check(E.coeffs[0] == parse_polynomial<Q>("T1^2-T2^2-T3^2-T4^2", P.target), "sphere cycle upgrades to the quadric");
    t.check(tuple_coordinates(downgrade(P, E), graded_basis(*R, {2})) == tuple_coordinates(h, graded_basis(*R, {2})),
            "sphere downgrade(upgrade) = cycle");
    total_dim += 1;
  }
  for (int inst = 0; inst < 2; ++inst) {
    InstanceSpec spec;
    spec.kind = InstanceSpec::Kind::Morphism;
    spec.d = 2;
    spec.field = FieldSpec::prime_field(101);
    spec.seed = 5000 + static_cast<std::uint64_t>(inst);
    const auto P = random_instance<ModP>(spec).P;
    // four general quadrics: R/I has Hilbert function 1,3,2, so nu0 = reg(I) - d = 1
    for (int nu = 1; nu <= 3; ++nu)
      for (int l = 2; l <= 3; ++l) {
        check_layer(P, {nu}, l, t, "morphism " + std::to_string(inst) + " nu=" + std::to_string(nu) + " l=" + std::to_string(l));
        total_dim += rees_layer(P, {nu}, l).basis.size();
      }
  }
  t.check(total_dim > 0, "some layer is nonzero");
  return {5, "Rees layers", t.ok(), t.summary() + "; " + std::to_string(total_dim) + " layer elements"};
}

inline CriterionResult criterion6() {
  Tally t;
  const auto R1 = PolyRing::make({{"x", "y"}}, FieldSpec::rationals());
  auto plane = [&](const Parameterization<Q>& P, const std::string& label, std::optional<int> e) {
    const auto ir = plane_curve_implicit(P);
    t.check(implicit_identity_check(P, ir.F), label + ": F(psi) = 0");
    t.check(ir.e * ir.F.total_degree() == P.degree[0], label + ": e deg F = d");
    if (e) t.check(ir.e == *e, label + ": e");
  };
  plane(Parameterization<Q>::parse(R1, {"x^2-y^2", "2*x*y", "x^2+y^2"}), "circle", 1);
  plane(Parameterization<Q>::parse(R1, {"x^4", "x^2*y^2", "y^4"}), "double conic", 2);
  {
    const auto R = PolyRing::make({{"x1", "x2", "x3"}}, FieldSpec::rationals());
    const auto P = Parameterization<Q>::parse(R, {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
    const auto ir = hypersurface_implicit_gcd(build_rep(P, {1}, {}, threshold_surface(2, 1)));
    t.check(implicit_identity_check(P, ir.F), "sphere: F(psi) = 0");
  }
  for (int inst = 0; inst < 5; ++inst) {
    InstanceSpec spec;
    spec.d = 2 + inst;
    spec.seed = 6000 + static_cast<std::uint64_t>(inst);
    plane(random_instance<Q>(spec).P, "random plane curve " + std::to_string(inst), std::nullopt);
  }
  for (int inst = 0; inst < 5; ++inst) {
    InstanceSpec spec;
    spec.kind = InstanceSpec::Kind::Morphism;
    spec.d = 2;
    spec.field = FieldSpec::prime_field(101);
    spec.seed = 6100 + static_cast<std::uint64_t>(inst);
    const auto P = random_instance<ModP>(spec).P;
    const auto cert = threshold_morphism(3, 2, std::nullopt);
    BuildOptions bo;
    bo.lmax = 3;
    const auto ir = hypersurface_implicit_gcd(build_rep(P, cert.default_degree(), bo, cert), spec.seed);
    t.check(implicit_identity_check(P, ir.F), "random morphism " + std::to_string(inst) + ": F(psi) = 0");
  }
  return {6, "implicitization identities", t.ok(), t.summary()};
}

inline CriterionResult criterion7() {
  Tally t;
  const auto R = PolyRing::make({{"x", "y", "z"}}, FieldSpec::rationals());
  const auto P = Parameterization<Q>::parse(R, {"x*y^2", "x*y*z", "x*z^2", "y^3"});
  const auto jr = jacobian_minor_gcd(P);
  const auto x = Polynomial<Q>::variable(R, 0);
  t.check(jr.F.divide_exact(x).has_value(), "Jacobian gcd divisible by x");
  t.check(jr.degree <= jr.bound, "deg F <= 3(d-1) - indeg(Syz)");
  const std::vector<Q> p{Q(0), Q(0), Q(0), Q(1)};
  const auto od = one_dim_fiber_decomposition(P, std::span<const Q>(p));
  t.check(od.h == x, "h_p = x");
  bool ok = true;
  for (std::size_t i = 0; i < 4; ++i) ok = ok && P.maps[i] == p[i] * od.lp_of_f + od.h * od.g[i];
  t.check(ok, "f_i = p_i l_p(f) + h g_i");
  return {7, "Jacobian one-dimensional fibers", t.ok(), t.summary() + "; F = " + jr.F.to_string()};
}

inline CriterionResult criterion8() {
  Tally t;
  {
    const int d = 2, e = 1;
    const auto c = threshold_multigraded(MultigradedSource::P2, {d}, e);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        const bool expect = (a >= 3 * d - 2 && b >= e - 1) || (a >= 2 * d - 2 && b >= 3 * e - 1);
        t.check(c.region.contains({a, b}) == expect, "P2 x P1 grid point " + to_string({a, b}));
      }
  }
  {
    const int d1 = 1, d2 = 1, e = 1;
    const auto c = threshold_multigraded(MultigradedSource::P1xP1, {d1, d2}, e);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b)
        for (int g = 0; g <= 6; ++g) {
          const bool expect = (a >= 3 * d1 - 1 && b >= 2 * d2 - 1 && g >= e - 1) ||
                              (a >= 2 * d1 - 1 && b >= 3 * d2 - 1 && g >= e - 1) ||
                              (a >= 2 * d1 - 1 && b >= 2 * d2 - 1 && g >= 3 * e - 1);
          t.check(c.region.contains({a, b, g}) == expect, "P1 x P1 x P1 grid point " + to_string({a, b, g}));
        }
  }
  return {8, "multigraded regions", t.ok(), t.summary()};
}

inline CriterionResult criterion9() {
  Tally t;
  const auto R = PolyRing::make({{"x1", "x2", "x3"}}, FieldSpec::rationals());
  {
    const auto S = Parameterization<Q>::parse(R, {"x1^2+x2^2+x3^2", "2*x1*x3", "2*x1*x2", "x1^2-x2^2-x3^2"});
    const auto C = build_normal_congruence(S);
    const auto nu = C.certificate.default_degree();
    const auto M = build_rep(C.psi, nu, {}, C.certificate);
    const auto M2 = build_rep(C.psi, check_degree(nu), {}, C.certificate);
    const std::vector<Q> q{Q(2), Q(0), Q(0)};
    const auto rep = project_point(C, M, M2, std::span<const Q>(q));
    t.check(rep.fiber_degree == 2, "sphere fiber degree 2 at (2,0,0)");
    std::vector<std::vector<std::string>> feet;
    for (const auto& f : rep.feet) feet.push_back(to_strings(f.foot));
    std::sort(feet.begin(), feet.end());
    t.check(feet == std::vector<std::vector<std::string>>{{"-1", "0", "0"}, {"1", "0", "0"}}, "sphere feet (+-1,0,0)");
    const std::vector<Q> center{Q(0), Q(0), Q(0)};
    bool degenerate = false;
    try {
      project_point(C, M, M2, std::span<const Q>(center));
    } catch (const DegenerateQuery&) {
      degenerate = true;
    }
    t.check(degenerate, "center query is degenerate");
  }
  {
    const auto S = Parameterization<Q>::parse(R, {"x1", "x2", "x3", "0"});
    const auto C = build_normal_congruence(S);
    const auto nu = C.certificate.default_degree();
    const auto M = build_rep(C.psi, nu, {}, C.certificate);
    const auto M2 = build_rep(C.psi, check_degree(nu), {}, C.certificate);
    Rng rng(909);
    const Field<Q> F;
    for (int s = 0; s < 20; ++s) {
      const std::vector<Q> q{F.random(rng, 20), F.random(rng, 20), F.random_nonzero(rng, 20)};
      const auto rep = project_point(C, M, M2, std::span<const Q>(q));
      const bool ok = rep.fiber_degree == 1 && rep.feet.size() == 1 && rep.feet[0].foot == std::vector<Q>{q[0], q[1], Q(0)};
      t.check(ok, "plane foot for a random query");
    }
  }
  return {9, "orthogonal projection", t.ok(), t.summary()};
}

}  // namespace acceptance

/// Runs criteria 1-10 in order; criterion 10 aggregates the degree-stability
/// checks made while running 3 and 4.
inline std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {}) {
  using namespace acceptance;
  std::vector<CriterionResult> out;
  Tally stability;
  auto timed = [&](int id, const char* name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r{id, name, false, "", 0};
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
    if (on_result) on_result(r);
  };
  timed(1, "twisted cubic", [] { return criterion1(); });
  timed(2, "sphere", [] { return criterion2(); });
  timed(3, "corank = fiber degree, curves", [&] { return criterion3(stability); });
  timed(4, "corank = fiber degree, morphisms P^2 -> P^3", [&] { return criterion4(stability); });
  timed(5, "Rees layers", [] { return criterion5(); });
  timed(6, "implicitization identities", [] { return criterion6(); });
  timed(7, "Jacobian one-dimensional fibers", [] { return criterion7(); });
  timed(8, "multigraded regions", [] { return criterion8(); });
  timed(9, "orthogonal projection", [] { return criterion9(); });
  timed(10, "degree stability inside the region", [&] {
    return CriterionResult{10, "degree stability inside the region", stability.ok() && stability.checks > 0,
                           stability.summary(), 0};
  });
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
  return "criterion " + std::to_string(r.id) + ": " + (r.passed ? "PASS" : "FAIL") + "  " + r.name + "  (" +
         r.detail + ") [" + buf + "]";
}

}  // namespace elimat
