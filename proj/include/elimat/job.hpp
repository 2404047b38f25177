#pragma once

// JSON jobs: schema parsing, command dispatch over Q or F_p, reports and the
// matrix cache. Exit codes: 0 ok, 2 invalid input, 3 uncertified degree,
// 4 degenerate query, 5 internal inconsistency.

#include <elimat/congruence.hpp>
#include <elimat/oracle.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace elimat {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitUncertified = 3, kExitDegenerate = 4, kExitInternal = 5 };

class JobError : public std::runtime_error {
 public:
  JobError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

inline const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> c{"mubasis", "matrep", "fiber",   "strata",
                                          "implicitize", "jacfibers", "project", "selftest"};
  return c;
}

struct JobSpec {
  std::string command;
  std::vector<std::vector<std::string>> blocks;
  FieldSpec field = FieldSpec::rationals();
  std::vector<std::string> maps;
  std::optional<MultiDegree> nu;
  std::optional<int> lmax;
  std::optional<int> reg, indeg;
  std::uint64_t seed = 1;
  bool force = false;
  bool numeric = false;  ///< fiber: decimal target points, SVD corank
  std::vector<std::vector<std::string>> points;
  std::string format = "json";
  std::optional<std::string> output;
  std::optional<int> fitting;  ///< strata: Fitting index whose generators to list
  std::optional<int> rdrop;    ///< jacfibers: rank drop for contracted loci
  std::optional<std::vector<std::string>> lp;
};

namespace detail {

template <class T>
T get_field(const nlohmann::json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw JobError(kExitInvalid, std::string("'") + key + "' must be " + what);
  }
}

inline std::vector<std::string> point_strings(const nlohmann::json& p) {
  if (!p.is_array()) throw JobError(kExitInvalid, "each point must be an array of coordinates");
  std::vector<std::string> out;
  for (const auto& c : p) {
    if (c.is_string())
      out.push_back(c.get<std::string>());
    else if (c.is_number_integer())
      out.push_back(std::to_string(c.get<long long>()));
    else
      throw JobError(kExitInvalid, "coordinates must be strings such as \"3/7\" or integers");
  }
  return out;
}

}  // namespace detail

inline JobSpec parse_job(const nlohmann::json& j) {
  if (!j.is_object()) throw JobError(kExitInvalid, "job must be a JSON object");
  JobSpec s;
  s.command = detail::get_field<std::string>(j, "command", "a string");
  if (std::find(job_commands().begin(), job_commands().end(), s.command) == job_commands().end())
    throw JobError(kExitInvalid, "unknown command '" + s.command + "'");
  if (s.command == "selftest") return s;
  if (!j.contains("ring")) throw JobError(kExitInvalid, "missing 'ring'");
  const auto& ring = j.at("ring");
  s.blocks = detail::get_field<std::vector<std::vector<std::string>>>(ring, "blocks", "a list of variable-name lists");
  if (ring.contains("field")) {
    try {
      s.field = field_from_json(ring.at("field"));
    } catch (const std::invalid_argument& e) {
      throw JobError(kExitInvalid, e.what());
    }
  }
  s.maps = detail::get_field<std::vector<std::string>>(j, "maps", "a list of polynomial strings");
  if (!j.contains("options")) return s;
  const auto& o = j.at("options");
  if (!o.is_object()) throw JobError(kExitInvalid, "'options' must be an object");
  static const std::vector<std::string> known{"nu",     "lmax",   "reg",     "indeg", "seed", "force",  "points",
                                              "format", "output", "fitting", "rdrop", "lp",   "numeric"};
  for (const auto& [k, v] : o.items())
    if (std::find(known.begin(), known.end(), k) == known.end())
      throw JobError(kExitInvalid, "unknown option '" + k + "'");
  auto opt_int = [&](const char* k) -> std::optional<int> {
    if (!o.contains(k) || o.at(k).is_null()) return std::nullopt;
    return detail::get_field<int>(o, k, "an integer");
  };
  if (o.contains("nu") && !o.at("nu").is_null()) s.nu = detail::get_field<MultiDegree>(o, "nu", "a list of integers");
  s.lmax = opt_int("lmax");
  s.reg = opt_int("reg");
  s.indeg = opt_int("indeg");
  s.fitting = opt_int("fitting");
  s.rdrop = opt_int("rdrop");
  if (o.contains("seed")) s.seed = detail::get_field<std::uint64_t>(o, "seed", "a nonnegative integer");
  if (o.contains("force")) s.force = detail::get_field<bool>(o, "force", "a boolean");
  if (o.contains("numeric")) s.numeric = detail::get_field<bool>(o, "numeric", "a boolean");
  if (s.numeric && s.command != "fiber") throw JobError(kExitInvalid, "numeric applies to fiber only");
  if (o.contains("format")) s.format = detail::get_field<std::string>(o, "format", "\"json\" or \"csv\"");
  if (s.format != "json" && s.format != "csv") throw JobError(kExitInvalid, "format must be json or csv");
  if (o.contains("output")) s.output = detail::get_field<std::string>(o, "output", "a path");
  if (o.contains("points")) {
    if (!o.at("points").is_array()) throw JobError(kExitInvalid, "'points' must be a list of points");
    for (const auto& p : o.at("points")) s.points.push_back(detail::point_strings(p));
  }
  if (o.contains("lp")) s.lp = detail::point_strings(o.at("lp"));
  if (s.lmax && *s.lmax < 1) throw JobError(kExitInvalid, "lmax must be at least 1");
  return s;
}

struct RunOptions {
  std::optional<std::filesystem::path> cache_dir;
};

struct JobResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::optional<std::string> text;  ///< csv body when requested
};

/// Write via a temporary file and rename.
inline void write_atomically(const std::filesystem::path& path, const std::string& body) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw JobError(kExitInvalid, "cannot write " + tmp);
    out << body;
    if (!out) throw JobError(kExitInvalid, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

template <class K>
std::vector<std::string> to_strings(const std::vector<K>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

inline std::string complex_string(std::complex<double> z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real();
  if (z.imag() != 0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "*i";
  return os.str();
}

template <class K>
class JobRunner {
 public:
  JobRunner(const JobSpec& spec, const RunOptions& opts) : spec_(spec), opts_(opts), F_(spec.field) {}

  JobResult run() {
    ring_ = PolyRing::make(spec_.blocks, spec_.field);
    if (spec_.command == "project") return project();
    P_ = Parameterization<K>::parse(ring_, spec_.maps);
    if (spec_.command == "mubasis") return mubasis();
    if (spec_.command == "matrep") return matrep();
    if (spec_.command == "fiber") return fiber();
    if (spec_.command == "strata") return strata();
    if (spec_.command == "implicitize") return implicitize();
    if (spec_.command == "jacfibers") return jacfibers();
    throw JobError(kExitInvalid, "command '" + spec_.command + "' needs no ring");
  }

 private:
  JobSpec spec_;
  RunOptions opts_;
  Field<K> F_;
  RingPtr ring_;
  Parameterization<K> P_;

  std::vector<K> parse_point(const std::vector<std::string>& p) const {
    std::vector<K> v;
    for (const auto& s : p) {
      try {
        v.push_back(F_.parse(s));
      } catch (const std::exception& e) {
        throw JobError(kExitInvalid, "bad coordinate '" + s + "': " + e.what());
      }
    }
    return v;
  }

  std::vector<std::vector<K>> target_points(const Parameterization<K>& P) const {
    if (spec_.points.empty()) throw JobError(kExitInvalid, "options.points is required");
    std::vector<std::vector<K>> out;
    for (const auto& s : spec_.points) {
      auto p = parse_point(s);
      try {
        check_target_point(P, std::span<const K>(p));
      } catch (const std::invalid_argument& e) {
        throw JobError(kExitInvalid, e.what());
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  BuildOptions build_options(const std::optional<ThresholdCertificate>& cert) const {
    BuildOptions b;
    b.force = spec_.force;
    b.reg = spec_.reg;
    b.indeg = spec_.indeg;
    if (spec_.lmax)
      b.lmax = *spec_.lmax;
    else if (cert && cert->setting == Setting::Morphism)
      b.lmax = static_cast<int>(P_.ring->nvars());
    return b;
  }

  nlohmann::json base_report() const {
    return {{"command", spec_.command}, {"field", field_to_json(spec_.field)}, {"seed", spec_.seed}};
  }

  /// Certified matrix at the requested or default degree; exit 3 outside the
  /// region unless forced.
  MatrixRep<K> certified_rep(const Parameterization<K>& P, std::optional<ThresholdCertificate> cert,
                             nlohmann::json& report) {
    BuildOptions bo = build_options(cert);
    MultiDegree nu;
    if (spec_.nu)
      nu = *spec_.nu;
    else if (cert)
      nu = cert->default_degree();
    else
      throw JobError(kExitUncertified, "no threshold applies to this parameterization; pass options.nu and force");
    if (nu.size() != P.ring->nblocks()) throw JobError(kExitInvalid, "nu needs one entry per variable block");
    const bool inside = cert && cert->region.contains(nu);
    if (!inside && !spec_.force)
      throw JobError(kExitUncertified, "degree " + to_string(nu) + " is outside the certified region");
    std::optional<MatrixRep<K>> M;
    std::optional<std::filesystem::path> cached;
    if (opts_.cache_dir) {
      cached = *opts_.cache_dir / (cache_key(P, nu, bo.lmax) + ".json");
      if (std::filesystem::exists(*cached)) {
        try {
          std::ifstream in(*cached);
          M = matrixrep_from_json<K>(nlohmann::json::parse(in));
          report["cache"] = "hit";
        } catch (const std::exception&) {
          M.reset();
        }
      }
    }
    if (!M) {
      try {
        M = build_rep(P, nu, bo, cert);
      } catch (const UpgradeInfeasible& e) {
        throw JobError(kExitUncertified, std::string("Rees layer cannot be built: ") + e.what() +
                                             " (force omits the layer)");
      }
      if (cached) {
        std::filesystem::create_directories(*opts_.cache_dir);
        write_atomically(*cached, to_json(*M).dump(1) + "\n");
        report["cache"] = "miss";
      }
    }
    report["nu"] = M->nu;
    report["certified"] = M->valid;
    report["certificate"] = cert ? certificate_to_json(*cert) : nlohmann::json(nullptr);
    report["matrix_size"] = {M->nrows(), M->ncols()};
    return *M;
  }

  std::optional<ThresholdCertificate> certificate(nlohmann::json& report) const {
    std::optional<BaseLocus> locus;
    try {
      auto c = infer_certificate(P_, build_options(std::nullopt), &locus);
      if (locus) report["base_locus"] = {{"kind", locus->to_string()}, {"degree", locus->degree}};
      return c;
    } catch (const std::invalid_argument& e) {
      throw JobError(kExitInvalid, e.what());
    }
  }

  JobResult mubasis() {
    if (!P_.is_curve()) throw JobError(kExitInvalid, "mubasis needs a P^1 source");
    JobResult res{kExitOk, base_report(), {}};
    const auto mb = mu_basis(P_);
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : mb.columns) cols.push_back(to_strings(c));
    auto& r = res.report["result"];
    r["mu"] = mb.mu;
    r["columns"] = cols;
    r["hilbert_burch"] = hilbert_burch_holds(P_, mb.columns);
    r["threshold"] = certificate_to_json(threshold_curve(mb.mu));
    if (P_.r() >= 3) {
      const int e = degree_of_map_curve(P_, spec_.seed);
      const auto b = regularity_bound_curve(mb.mu, P_.degree[0], e == 1);
      r["degree_of_map"] = e;
      r["regularity_bound"] = {{"bound", b.bound},
                               {"applicable", b.applicable},
                               {"all_mu_positive", b.all_mu_positive},
                               {"bound_minus_one_le_d_minus_codim", b.second_inequality}};
    }
    return res;
  }

  JobResult matrep() {
    JobResult res{kExitOk, base_report(), {}};
    const auto cert = certificate(res.report);
    const auto M = certified_rep(P_, cert, res.report);
    res.report["result"] = to_json(M);
    if (spec_.format == "csv") res.text = to_csv(M);
    return res;
  }

  nlohmann::json point_json(const FiberPoints<K>& fp) const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& q : fp.points) pts.push_back({{"coords", to_strings(q.coords)}, {"multiplicity", q.multiplicity}});
    nlohmann::json approx = nlohmann::json::array();
    for (const auto& a : fp.approximate) {
      std::vector<std::string> s;
      for (auto z : a) s.push_back(complex_string(z));
      approx.push_back(s);
    }
    return {{"points", pts}, {"approximate", approx}, {"diagnostics", fp.diagnostics}};
  }

  JobResult fiber() {
    JobResult res{kExitOk, base_report(), {}};
    const auto cert = certificate(res.report);
    if (spec_.numeric) return fiber_numeric(std::move(res), cert);
    const auto pts = target_points(P_);
    const auto M = certified_rep(P_, cert, res.report);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : pts) {
      const std::span<const K> ps(p);
      const auto rep = fiber_degree(M, ps);
      nlohmann::json e{{"point", to_strings(p)},
                       {"corank", rep.corank},
                       {"certified", rep.certified},
                       {"interpretation", rep.interpretation}};
      if (P_.is_curve()) {
        const auto fp = fiber_points_P1(P_, ps);
        e["exact_degree"] = fp.degree;
        e["preimages"] = point_json(fp);
      } else {
        e["preimages"] = point_json(fiber_points_from_kernel(M, ps, spec_.seed));
      }
      out.push_back(e);
    }
    res.report["result"] = out;
    return res;
  }

  static double parse_double(const std::string& s) {
    try {
      std::size_t used = 0;
      const auto slash = s.find('/');
      const double num = std::stod(s.substr(0, slash), &used);
      if (used != s.substr(0, slash).size()) throw std::invalid_argument(s);
      if (slash == std::string::npos) return num;
      const double den = std::stod(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1 || den == 0) throw std::invalid_argument(s);
      return num / den;
    } catch (const std::exception&) {
      throw JobError(kExitInvalid, "bad numeric coordinate '" + s + "'");
    }
  }

  /// Approximate targets: floating specialization, singular values below
  /// kNumericRelTol * sigma_max count as zero.
  JobResult fiber_numeric(JobResult res, const std::optional<ThresholdCertificate>& cert) {
    if constexpr (!std::is_same_v<K, Rational>) {
      throw JobError(kExitInvalid, "numeric points need the field Q");
    } else {
      if (spec_.points.empty()) throw JobError(kExitInvalid, "options.points is required");
      const auto M = certified_rep(P_, cert, res.report);
      const auto mat = M.matrix();
      nlohmann::json out = nlohmann::json::array();
      for (const auto& s : spec_.points) {
        std::vector<double> p;
        for (const auto& c : s) p.push_back(parse_double(c));
        if (p.size() != P_.r()) throw JobError(kExitInvalid, "point has the wrong number of coordinates");
        if (std::all_of(p.begin(), p.end(), [](double v) { return v == 0; }))
          throw JobError(kExitInvalid, "the zero vector is not a projective point");
        out.push_back({{"point", s},
                       {"corank", numeric_corank(specialize_double(mat, p))},
                       {"certified", M.valid},
                       {"approximate", true},
                       {"relative_tolerance", kNumericRelTol}});
      }
      res.report["result"] = out;
      return res;
    }
  }

  JobResult strata() {
    JobResult res{kExitOk, base_report(), {}};
    const auto cert = certificate(res.report);
    const auto pts = target_points(P_);
    const auto M = certified_rep(P_, cert, res.report);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : pts) {
      const auto c = M.corank(std::span<const K>(p));
      std::string label = c == 0 ? "outside V(Fitt_0)" : "V(Fitt_" + std::to_string(c - 1) + ") \\ V(Fitt_" + std::to_string(c) + ")";
      out.push_back({{"point", to_strings(p)}, {"corank", c}, {"stratum", label}});
    }
    res.report["result"] = {{"points", out}};
    if (spec_.fitting) {
      if (*spec_.fitting < 0) throw JobError(kExitInvalid, "fitting index must be nonnegative");
      const std::size_t k = static_cast<std::size_t>(*spec_.fitting);
      const std::size_t size = k < M.nrows() ? M.nrows() - k : 0;
      if (size > 0 && binomial(M.nrows(), size) * binomial(M.ncols(), size) > 5000)
        throw JobError(kExitInvalid, "too many minors for fitting generators at this size");
      res.report["result"]["fitting_generators"] = to_strings(fitting_generators(M, k));
    }
    return res;
  }

  JobResult implicitize() {
    JobResult res{kExitOk, base_report(), {}};
    ImplicitResult<K> ir;
    if (P_.is_curve() && P_.r() == 3) {
      ir = plane_curve_implicit(P_);
    } else {
      const auto cert = certificate(res.report);
      const auto M = certified_rep(P_, cert, res.report);
      ir = hypersurface_implicit_gcd(M, spec_.seed);
    }
    nlohmann::json extr = nlohmann::json::array();
    for (const auto& [m, f] : ir.extraneous) extr.push_back({{"multiplicity", m}, {"factor", f.to_string()}});
    const bool ok = implicit_identity_check(P_, ir.F);
    res.report["result"] = {{"F", ir.F.to_string()}, {"e", ir.e},          {"method", ir.method},
                            {"identity_check", ok},  {"extraneous", extr}, {"caveats", ir.caveats}};
    if (!ok) throw JobError(kExitInternal, "implicit equation does not vanish on the parameterization");
    return res;
  }

  JobResult jacfibers() {
    JobResult res{kExitOk, base_report(), {}};
    nlohmann::json r;
    try {
      const auto jr = jacobian_minor_gcd(P_);
      r["jacobian_gcd"] = {{"F", jr.F.to_string()},
                           {"degree", jr.degree},
                           {"indeg_syz", jr.indeg_syz},
                           {"bound", jr.bound},
                           {"within_bound", jr.degree <= jr.bound}};
      if (spec_.rdrop) r["contracted_locus_generators"] = to_strings(contracted_locus_generators(P_, *spec_.rdrop));
    } catch (const std::invalid_argument& e) {
      throw JobError(kExitInvalid, e.what());
    }
    nlohmann::json fibers = nlohmann::json::array();
    std::optional<std::vector<K>> lp;
    if (spec_.lp) lp = parse_point(*spec_.lp);
    for (const auto& s : spec_.points) {
      const auto p = parse_point(s);
      nlohmann::json e{{"point", s}};
      try {
        const auto od = one_dim_fiber_decomposition(P_, std::span<const K>(p), lp);
        e["lp"] = to_strings(od.lp);
        e["h"] = od.h.to_string();
        e["g"] = to_strings(od.g);
        bool ok = true;
        for (std::size_t i = 0; i < P_.r(); ++i) ok = ok && (P_.maps[i] == p[i] * od.lp_of_f + od.h * od.g[i]);
        e["reconstruction_holds"] = ok;
        if (!ok) throw JobError(kExitInternal, "reconstruction identity fails");
      } catch (const std::invalid_argument& ex) {
        e["error"] = ex.what();
      }
      fibers.push_back(e);
    }
    r["fibers"] = fibers;
    res.report["result"] = r;
    return res;
  }

  JobResult project() {
    JobResult res{kExitOk, base_report(), {}};
    const auto S = Parameterization<K>::parse(ring_, spec_.maps);
    const auto C = build_normal_congruence(S);
    std::vector<std::string> psi;
    for (const auto& f : C.psi.maps) psi.push_back(f.to_string());
    std::vector<std::string> normal;
    for (const auto& f : C.normal) normal.push_back(f.to_string());
    res.report["congruence"] = {{"psi", psi},
                                {"normal", normal},
                                {"degree", C.psi.degree},
                                {"blocks", C.psi.ring->blocks()},
                                {"hypothesis", C.hypothesis}};
    P_ = C.psi;
    const auto M = certified_rep(C.psi, C.certificate, res.report);
    nlohmann::json check;
    const auto M2 = [&] {
      JobSpec s2 = spec_;
      s2.nu = check_degree(M.nu);
      s2.force = true;
      JobRunner<K> sub(s2, RunOptions{opts_.cache_dir});
      sub.P_ = C.psi;
      return sub.certified_rep(C.psi, C.certificate, check);
    }();
    if (spec_.points.empty()) throw JobError(kExitInvalid, "options.points (affine queries) is required");
    nlohmann::json out = nlohmann::json::array();
    int code = kExitOk;
    for (const auto& s : spec_.points) {
      const auto q = parse_point(s);
      if (q.size() != 3) throw JobError(kExitInvalid, "queries need 3 affine coordinates");
      nlohmann::json e{{"query", s}};
      try {
        const auto rep = project_point(C, M, M2, std::span<const K>(q));
        nlohmann::json feet = nlohmann::json::array();
        for (const auto& f : rep.feet) feet.push_back({{"foot", to_strings(f.foot)}, {"parameters", to_strings(f.source)}});
        nlohmann::json approx = nlohmann::json::array();
        for (const auto& a : rep.approximate) {
          std::vector<std::string> sv;
          for (auto z : a) sv.push_back(complex_string(z));
          approx.push_back(sv);
        }
        e["fiber_degree"] = rep.fiber_degree;
        e["nu_check"] = rep.nu_check;
        e["corank_check"] = rep.corank_check;
        e["certified"] = rep.certified;
        e["feet"] = feet;
        e["approximate"] = approx;
        e["diagnostics"] = rep.diagnostics;
      } catch (const DegenerateQuery& ex) {
        e["error"] = ex.what();
        code = kExitDegenerate;
      }
      out.push_back(e);
    }
    res.report["result"] = out;
    res.exit_code = code;
    return res;
  }
};

/// Runs a job, mapping exceptions to exit codes; the report always carries
/// "status" and "exit_code".
template <class Selftest>
JobResult run_job(const JobSpec& spec, const RunOptions& opts, Selftest&& selftest) {
  JobResult res;
  try {
    if (spec.command == "selftest") {
      res = selftest();
    } else if (spec.field.is_rational()) {
      res = JobRunner<Rational>(spec, opts).run();
    } else {
      res = JobRunner<ModP>(spec, opts).run();
    }
  } catch (const JobError& e) {
    res.exit_code = e.code();
    res.report = {{"command", spec.command}, {"error", e.what()}};
  } catch (const ParseError& e) {
    res.exit_code = kExitInvalid;
    res.report = {{"command", spec.command}, {"error", e.what()}};
  } catch (const std::invalid_argument& e) {
    res.exit_code = kExitInvalid;
    res.report = {{"command", spec.command}, {"error", e.what()}};
  } catch (const std::exception& e) {
    res.exit_code = kExitInternal;
    res.report = {{"command", spec.command}, {"error", e.what()}};
  }
  res.report["exit_code"] = res.exit_code;
  res.report["status"] = res.exit_code == kExitOk ? "ok" : "error";
  return res;
}

}  // namespace elimat
