#pragma once

// Elimination matrices M_nu: rows are the monomials of R_nu, columns come
// from minimal syzygy generators shifted into degree nu (T-degree 1) and
// from Rees layers of T-degree l >= 2. Entries are forms in T.

#include <elimat/baselocus.hpp>
#include <elimat/threshold.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elimat {

template <class K>
struct MatrixColumn {
  int tdeg = 1;
  std::string tag;
  std::vector<Polynomial<K>> entries;  ///< one T-form per row
};

template <class K>
struct MatrixRep {
  Parameterization<K> param;
  MultiDegree nu;
  std::vector<Monomial> rows;
  std::vector<MatrixColumn<K>> columns;
  std::optional<ThresholdCertificate> certificate;
  bool valid = false;
  std::vector<std::string> diagnostics;

  std::size_t nrows() const { return rows.size(); }
  std::size_t ncols() const { return columns.size(); }

  PolyMatrix<K> matrix() const {
    PolyMatrix<K> m(param.target, rows.size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < rows.size(); ++i) m(i, j) = columns[j].entries[i];
    return m;
  }

  DenseMatrix<K> specialize(std::span<const K> p) const {
    const Field<K> F = param.field();
    DenseMatrix<K> m(rows.size(), columns.size(), F.zero());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i = 0; i < rows.size(); ++i) m(i, j) = columns[j].entries[i].evaluate(p);
    return m;
  }

  std::size_t corank(std::span<const K> p) const {
    if (columns.empty()) return rows.size();
    return rows.size() - rank(specialize(p));
  }
};

struct BuildOptions {
  int lmax = 1;
  bool force = false;
  std::optional<int> reg;
  std::optional<int> indeg;
};

/// Threshold certificate from the shape of the source and the base locus,
/// or nullopt when no setting applies.
template <class K>
std::optional<ThresholdCertificate> infer_certificate(const Parameterization<K>& P, const BuildOptions& opt,
                                                      std::optional<BaseLocus>* locus_out = nullptr) {
  const auto& R = *P.ring;
  if (P.is_curve()) return threshold_curve(mu_basis(P).mu);
  if (P.r() == 4 && P.source_is({3, 2}))
    return threshold_multigraded(MultigradedSource::P2, {P.degree[0]}, P.degree[1]);
  if (P.r() == 4 && P.source_is({2, 2, 2}))
    return threshold_multigraded(MultigradedSource::P1xP1, {P.degree[0], P.degree[1]}, P.degree[2]);
  if (R.nblocks() != 1) return std::nullopt;
  const int n = static_cast<int>(R.nvars());
  const int d = P.degree[0];
  if (P.r() != R.nvars() + 1) return std::nullopt;
  const BaseLocus B = dim_base_locus(P);
  if (locus_out) *locus_out = B;
  if (B.kind == BaseLocus::Kind::Empty) return threshold_morphism(n, d, opt.reg);
  if (n == 3 && B.kind == BaseLocus::Kind::Dim0) return threshold_surface(d, opt.indeg);
  return std::nullopt;
}

/// Degree-one column block: every generator of degree g <= nu times every
/// monomial of R_{nu-g}.
template <class K>
void append_syzygy_columns(MatrixRep<K>& M, const std::vector<SyzygyGenerator<K>>& gens) {
  const auto& P = M.param;
  const MonomialIndex ridx(M.rows);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (!leq(gens[g].degree, M.nu)) continue;
    for (const auto& u : graded_basis(*P.ring, M.nu - gens[g].degree)) {
      MatrixColumn<K> col{1, "g" + std::to_string(g + 1), std::vector<Polynomial<K>>(M.rows.size(), Polynomial<K>(P.target))};
      if (!u.is_one()) col.tag += "*" + P.ring->monomial_string(u);
      for (std::size_t i = 0; i < P.r(); ++i)
        for (const auto& t : gens[g].syz[i].terms())
          col.entries[ridx.at(t.mono * u)] += Polynomial<K>::monomial(P.target, [&] {
            Monomial ti;
            ti[i] = 1;
            return ti;
          }(), t.coeff);
      M.columns.push_back(std::move(col));
    }
  }
}

template <class K>
MatrixRep<K> build_rep(const Parameterization<K>& P, const MultiDegree& nu, const BuildOptions& opt,
                       std::optional<ThresholdCertificate> cert) {
  if (nu.size() != P.ring->nblocks() || !nonnegative(nu))
    throw std::invalid_argument("nu must be a nonnegative multidegree with one entry per block");
  MatrixRep<K> M{P, nu, graded_basis(*P.ring, nu), {}, std::move(cert), false, {}};
  append_syzygy_columns(M, minimal_generators_up_to(P, nu));
  for (int l = 2; l <= opt.lmax; ++l) {
    try {
      const ReesLayer<K> L = rees_layer(P, nu, l);
      for (std::size_t k = 0; k < L.basis.size(); ++k)
        M.columns.push_back({l, "L" + std::to_string(l) + "." + std::to_string(k + 1), L.basis[k].coeffs});
    } catch (const UpgradeInfeasible& e) {
      if (!opt.force) throw;
      M.diagnostics.push_back("layer " + std::to_string(l) + " omitted: " + e.what());
    }
  }
  M.valid = M.certificate && M.certificate->region.contains(nu);
  return M;
}

// ------------------------------------------------------------ serialization

inline nlohmann::json certificate_to_json(const ThresholdCertificate& c) {
  nlohmann::json j;
  j["setting"] = to_string(c.setting);
  j["region"] = c.region.corners;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, v] : c.inputs) in[k] = v;
  j["inputs"] = in;
  j["note"] = c.note;
  j["warnings"] = c.warnings;
  return j;
}

inline ThresholdCertificate certificate_from_json(const nlohmann::json& j) {
  ThresholdCertificate c{setting_from_string(j.at("setting")), {j.at("region").get<std::vector<MultiDegree>>()},
                         {}, j.at("note"), j.at("warnings").get<std::vector<std::string>>()};
  for (const auto& [k, v] : j.at("inputs").items()) c.inputs.push_back({k, v.get<std::vector<int>>()});
  return c;
}

inline nlohmann::json field_to_json(const FieldSpec& f) {
  if (f.is_rational()) return "Q";
  return nlohmann::json{{"Fp", f.prime}};
}

inline FieldSpec field_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return FieldSpec::rationals();
    throw std::invalid_argument("field must be \"Q\" or {\"Fp\": p}");
  }
  if (j.is_object() && j.contains("Fp")) {
    const auto& p = j.at("Fp");
    if (!p.is_number_integer() || p.get<long long>() < 2) throw std::invalid_argument("Fp needs a prime");
    return FieldSpec::prime_field(p.get<std::uint64_t>());
  }
  throw std::invalid_argument("field must be \"Q\" or {\"Fp\": p}");
}

template <class K>
nlohmann::json to_json(const MatrixRep<K>& M) {
  nlohmann::json j;
  j["setting"] = M.certificate ? nlohmann::json(to_string(M.certificate->setting)) : nlohmann::json(nullptr);
  j["field"] = field_to_json(M.param.ring->field());
  j["blocks"] = M.param.ring->blocks();
  j["target"] = M.param.target->names();
  std::vector<std::string> maps;
  for (const auto& f : M.param.maps) maps.push_back(f.to_string());
  j["maps"] = maps;
  j["removed_factor"] = M.param.removed_factor.to_string();
  j["nu"] = M.nu;
  std::vector<std::string> rows;
  for (const auto& m : M.rows) rows.push_back(M.param.ring->monomial_string(m));
  j["rows"] = rows;
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : M.columns) cols.push_back({{"tag", c.tag}, {"tdeg", c.tdeg}});
  j["columns"] = cols;
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < M.rows.size(); ++i) {
    std::vector<std::string> row;
    for (const auto& c : M.columns) row.push_back(c.entries[i].to_string());
    entries.push_back(row);
  }
  j["entries"] = entries;
  j["certificate"] = M.certificate ? certificate_to_json(*M.certificate) : nlohmann::json(nullptr);
  j["valid"] = M.valid;
  j["diagnostics"] = M.diagnostics;
  return j;
}

template <class K>
MatrixRep<K> matrixrep_from_json(const nlohmann::json& j) {
  const FieldSpec field = field_from_json(j.at("field"));
  const RingPtr ring = PolyRing::make(j.at("blocks").get<std::vector<std::vector<std::string>>>(), field);
  auto P = Parameterization<K>::parse(ring, j.at("maps").get<std::vector<std::string>>());
  P.removed_factor = parse_polynomial<K>(j.at("removed_factor").get<std::string>(), ring);
  MatrixRep<K> M;
  M.param = P;
  M.nu = j.at("nu").get<MultiDegree>();
  M.rows = graded_basis(*ring, M.nu);
  const auto rows = j.at("rows").get<std::vector<std::string>>();
  if (rows.size() != M.rows.size()) throw std::invalid_argument("row count does not match nu");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] != ring->monomial_string(M.rows[i])) throw std::invalid_argument("row basis mismatch");
  const auto& cols = j.at("columns");
  const auto& entries = j.at("entries");
  for (std::size_t c = 0; c < cols.size(); ++c) {
    MatrixColumn<K> col{cols[c].at("tdeg").get<int>(), cols[c].at("tag").get<std::string>(), {}};
    for (std::size_t i = 0; i < M.rows.size(); ++i)
      col.entries.push_back(parse_polynomial<K>(entries.at(i).at(c).get<std::string>(), P.target));
    M.columns.push_back(std::move(col));
  }
  if (!j.at("certificate").is_null()) M.certificate = certificate_from_json(j.at("certificate"));
  M.valid = j.at("valid").get<bool>();
  M.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return M;
}

/// CSV export: header of column tags, then one line per row monomial.
template <class K>
std::string to_csv(const MatrixRep<K>& M) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::string out = quote("row");
  for (const auto& c : M.columns) out += "," + quote(c.tag);
  out += "\n";
  for (std::size_t i = 0; i < M.rows.size(); ++i) {
    out += quote(M.param.ring->monomial_string(M.rows[i]));
    for (const auto& c : M.columns) out += "," + quote(c.entries[i].to_string());
    out += "\n";
  }
  return out;
}

/// FNV-1a over the canonical maps, nu, lmax and field.
template <class K>
std::string cache_key(const Parameterization<K>& P, const MultiDegree& nu, int lmax) {
  std::string text = P.ring->field().to_string() + "|";
  for (const auto& b : P.ring->blocks()) {
    for (const auto& v : b) text += v + ",";
    text += ";";
  }
  for (const auto& f : P.maps) text += f.to_string() + "|";
  text += to_string(nu) + "|" + std::to_string(lmax);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace elimat
