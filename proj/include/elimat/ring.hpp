#pragma once

// Multigraded polynomial rings over products of projective spaces: variable
// blocks, monomials, the fixed monomial order and graded-piece bases.

#include <elimat/field.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace elimat {

inline constexpr std::size_t kMaxVars = 16;

using MultiDegree = std::vector<int>;

inline bool leq(const MultiDegree& a, const MultiDegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool nonnegative(const MultiDegree& a) {
  return std::all_of(a.begin(), a.end(), [](int v) { return v >= 0; });
}

inline MultiDegree operator+(MultiDegree a, const MultiDegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline MultiDegree operator-(MultiDegree a, const MultiDegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline MultiDegree operator*(int k, MultiDegree a) {
  for (auto& v : a) v *= k;
  return a;
}

inline std::string to_string(const MultiDegree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  std::uint16_t& operator[](std::size_t i) { return e[i]; }
  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  bool operator==(const Monomial&) const = default;

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    return m;
  }
  bool divides(const Monomial& b) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }
  /// b / this; requires divides(b).
  Monomial quotient_of(const Monomial& b) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(b.e[i] - e[i]);
    return m;
  }
  int total_degree() const {
    int s = 0;
    for (auto v : e) s += v;
    return s;
  }
  bool is_one() const { return total_degree() == 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : m.e) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

/// Ring descriptor: ordered variable blocks (one per projective factor) and
/// the coefficient field. Immutable once built; shared by polynomials.
class PolyRing {
 public:
  PolyRing(std::vector<std::vector<std::string>> blocks, FieldSpec field)
      : blocks_(std::move(blocks)), field_(field) {
    std::size_t idx = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].size() < 2)
        throw std::invalid_argument("every variable block needs at least 2 variables");
      ranges_.emplace_back(idx, idx + blocks_[b].size());
      for (const auto& name : blocks_[b]) {
        if (name.empty()) throw std::invalid_argument("empty variable name");
        if (!index_.emplace(name, idx).second)
          throw std::invalid_argument("duplicate variable name '" + name + "'");
        names_.push_back(name);
        block_of_.push_back(b);
        ++idx;
      }
    }
    if (idx > kMaxVars)
      throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables supported");
    if (blocks_.empty()) throw std::invalid_argument("ring needs at least one block");
  }

  static std::shared_ptr<const PolyRing> make(std::vector<std::vector<std::string>> blocks,
                                              FieldSpec field) {
    return std::make_shared<const PolyRing>(std::move(blocks), field);
  }

  /// Single block T1..Tr.
  static std::shared_ptr<const PolyRing> target(std::size_t r, FieldSpec field,
                                                const std::string& prefix = "T") {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= r; ++i) names.push_back(prefix + std::to_string(i));
    return make({names}, field);
  }

  std::size_t nvars() const { return names_.size(); }
  std::size_t nblocks() const { return blocks_.size(); }
  const std::vector<std::vector<std::string>>& blocks() const { return blocks_; }
  std::pair<std::size_t, std::size_t> block_range(std::size_t b) const { return ranges_[b]; }
  std::size_t block_of(std::size_t var) const { return block_of_[var]; }
  const std::string& name(std::size_t var) const { return names_[var]; }
  const std::vector<std::string>& names() const { return names_; }
  const FieldSpec& field() const { return field_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  MultiDegree degree(const Monomial& m) const {
    MultiDegree d(blocks_.size(), 0);
    for (std::size_t v = 0; v < names_.size(); ++v) d[block_of_[v]] += m.e[v];
    return d;
  }

  /// Block-wise graded lexicographic order, blocks in declaration order.
  /// Returns <0, 0, >0 like strcmp; larger means earlier in printed order.
  int compare(const Monomial& a, const Monomial& b) const {
    for (const auto& [lo, hi] : ranges_) {
      int da = 0, db = 0;
      for (std::size_t v = lo; v < hi; ++v) {
        da += a.e[v];
        db += b.e[v];
      }
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t v = lo; v < hi; ++v)
        if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
    }
    return 0;
  }

  bool operator==(const PolyRing& o) const { return blocks_ == o.blocks_ && field_ == o.field_; }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (m.e[v] == 0) continue;
      if (!s.empty()) s += '*';
      s += names_[v];
      if (m.e[v] > 1) s += '^' + std::to_string(m.e[v]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  std::vector<std::vector<std::string>> blocks_;
  FieldSpec field_;
  std::vector<std::pair<std::size_t, std::size_t>> ranges_;
  std::vector<std::string> names_;
  std::vector<std::size_t> block_of_;
  std::unordered_map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

namespace detail {
inline void block_monomials(std::size_t lo, std::size_t hi, int deg, Monomial& cur,
                            std::vector<Monomial>& out) {
  if (lo + 1 == hi) {
    cur.e[lo] = static_cast<std::uint16_t>(deg);
    out.push_back(cur);
    cur.e[lo] = 0;
    return;
  }
  for (int k = deg; k >= 0; --k) {
    cur.e[lo] = static_cast<std::uint16_t>(k);
    block_monomials(lo + 1, hi, deg - k, cur, out);
  }
  cur.e[lo] = 0;
}
}  // namespace detail

/// All monomials of multidegree nu, in descending ring order (so x^3, x^2y,
/// xy^2, y^3 on P^1). Empty when any component of nu is negative.
inline std::vector<Monomial> graded_basis(const PolyRing& ring, const MultiDegree& nu) {
  if (nu.size() != ring.nblocks()) throw std::invalid_argument("degree length mismatch");
  if (!nonnegative(nu)) return {};
  std::vector<Monomial> acc{Monomial{}};
  for (std::size_t b = 0; b < ring.nblocks(); ++b) {
    const auto [lo, hi] = ring.block_range(b);
    std::vector<Monomial> part;
    Monomial cur;
    detail::block_monomials(lo, hi, nu[b], cur, part);
    std::vector<Monomial> next;
    next.reserve(acc.size() * part.size());
    for (const auto& a : acc)
      for (const auto& p : part) next.push_back(a * p);
    acc = std::move(next);
  }
  return acc;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// dim R_nu as a product of per-block binomials.
inline std::size_t graded_dimension(const PolyRing& ring, const MultiDegree& nu) {
  if (!nonnegative(nu)) return 0;
  std::size_t n = 1;
  for (std::size_t b = 0; b < ring.nblocks(); ++b) {
    const auto [lo, hi] = ring.block_range(b);
    n *= binomial(static_cast<std::size_t>(nu[b]) + (hi - lo) - 1, hi - lo - 1);
  }
  return n;
}

/// Position lookup for a list of monomials.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(const std::vector<Monomial>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) map_.emplace(list[i], i);
  }
  std::optional<std::size_t> find(const Monomial& m) const {
    auto it = map_.find(m);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(const Monomial& m) const {
    auto it = map_.find(m);
    if (it == map_.end()) throw std::logic_error("monomial outside graded basis");
    return it->second;
  }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<Monomial, std::size_t, MonomialHash> map_;
};

/// Enumerate all multidegrees 0 <= nu' <= nu_max, sorted by total degree.
inline std::vector<MultiDegree> degrees_below(const MultiDegree& nu_max) {
  std::vector<MultiDegree> out;
  if (!nonnegative(nu_max)) return out;
  MultiDegree cur(nu_max.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nu_max.size()) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= nu_max[i]; ++k) {
      cur[i] = k;
      rec(i + 1);
    }
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](const MultiDegree& a, const MultiDegree& b) {
    int sa = 0, sb = 0;
    for (int v : a) sa += v;
    for (int v : b) sb += v;
    return sa < sb;
  });
  return out;
}

}  // namespace elimat
