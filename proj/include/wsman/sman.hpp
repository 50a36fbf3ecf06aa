#ifndef WSMAN_SMAN_HPP
#define WSMAN_SMAN_HPP

// Simple multiple access network: k unit-rate sources reach a sink through n
// relays; relay j hears source i iff m_{i,j} = 1. This header holds the data
// model and the subset-enumeration checkers for the MDS, weak security (column
// and row form) and block security conditions.
//
// Indices are 0-based throughout the library; text output converts to 1-based.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wsman/bitset.hpp"
#include "wsman/errors.hpp"

namespace wsman {

class Sman {
 public:
  /// k sources, n relays, no links.
  Sman(std::size_t k, std::size_t n) : k_(k), n_(n) {
    if (k < 1) throw UsageError("an SMAN needs at least one source");
    if (n < k) throw UsageError("an SMAN needs n >= k (got k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
    rows_.assign(k, IndexSet(n));
    cols_.assign(n, IndexSet(k));
  }

  /// Rows of 0/1 entries; every row must have the same length.
  explicit Sman(const std::vector<std::vector<int>>& adjacency)
      : Sman(adjacency.size(), adjacency.empty() ? 0 : adjacency.front().size()) {
    for (std::size_t i = 0; i < k_; ++i) {
      if (adjacency[i].size() != n_) throw UsageError("adjacency rows differ in length");
      for (std::size_t j = 0; j < n_; ++j) {
        const int v = adjacency[i][j];
        if (v != 0 && v != 1) throw UsageError("adjacency entries must be 0 or 1");
        if (v == 1) set_link(i, j, true);
      }
    }
  }

  static Sman all_ones(std::size_t k, std::size_t n) {
    Sman s(k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) s.set_link(i, j, true);
    return s;
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }

  bool link(std::size_t source, std::size_t relay) const {
    check(source, relay);
    return rows_[source].contains(relay);
  }
  void set_link(std::size_t source, std::size_t relay, bool present) {
    check(source, relay);
    if (present) {
      rows_[source].insert(relay);
      cols_[relay].insert(source);
    } else {
      rows_[source].erase(relay);
      cols_[relay].erase(source);
    }
  }

  /// R_i: relays connected to source i.
  const IndexSet& row_support(std::size_t source) const { return rows_.at(source); }
  /// Sources heard by relay j.
  const IndexSet& column_support(std::size_t relay) const { return cols_.at(relay); }
  const std::vector<IndexSet>& support_sets() const noexcept { return rows_; }

  std::size_t link_count() const {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.size();
    return total;
  }

  /// True iff every link of *this is also a link of `other`.
  bool is_subgraph_of(const Sman& other) const {
    if (other.k_ != k_ || other.n_ != n_) return false;
    for (std::size_t i = 0; i < k_; ++i)
      for (auto j : rows_[i].members()) {
        if (!other.rows_[i].contains(j)) return false;
      }
    return true;
  }

  std::vector<std::vector<int>> to_rows() const {
    std::vector<std::vector<int>> out(k_, std::vector<int>(n_, 0));
    for (std::size_t i = 0; i < k_; ++i)
      for (auto j : rows_[i].members()) out[i][j] = 1;
    return out;
  }

  friend bool operator==(const Sman& a, const Sman& b) { return a.k_ == b.k_ && a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  void check(std::size_t source, std::size_t relay) const {
    if (source >= k_ || relay >= n_) throw UsageError("link index out of range");
  }

  std::size_t k_;
  std::size_t n_;
  std::vector<IndexSet> rows_;
  std::vector<IndexSet> cols_;
};

struct Verdict {
  bool holds = true;
  WitnessKind witness_kind = WitnessKind::none;
  std::vector<std::size_t> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(WitnessKind kind, std::vector<std::size_t> w) { return {false, kind, std::move(w)}; }
};

/// levels[l - 1] is b_l, the largest secure block size against l observed relays.
struct SecurityProfile {
  std::vector<std::size_t> levels;

  std::size_t level(std::size_t ell) const { return levels.at(ell - 1); }
  friend bool operator==(const SecurityProfile&, const SecurityProfile&) = default;
};

/// Sources heard by at least one relay in `relays`.
inline IndexSet column_union(const Sman& s, const std::vector<std::size_t>& relays) {
  IndexSet u(s.k());
  for (auto j : relays) {
    if (j >= s.n()) throw UsageError("relay index " + std::to_string(j) + " out of range");
    u |= s.column_support(j);
  }
  return u;
}

/// Relays connected to at least one source in `sources`.
inline IndexSet row_union(const Sman& s, const std::vector<std::size_t>& sources) {
  IndexSet u(s.n());
  for (auto i : sources) {
    if (i >= s.k()) throw UsageError("source index " + std::to_string(i) + " out of range");
    u |= s.row_support(i);
  }
  return u;
}

namespace detail {

/// Relays hearing none of `sources`.
inline std::vector<std::size_t> relays_avoiding(const Sman& s, const IndexSet& sources) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.n(); ++j) {
    if (!s.column_support(j).intersects(sources)) out.push_back(j);
  }
  return out;
}

// Among violating relay sets of size m for |U(J)| >= |J| + slack, pick the one
// built from the lexicographically first source set I of size
// max(0, k + 1 - m - slack) with at least m relays avoiding I: J is the first
// m of those relays. A violating J of size m exists iff such an I exists
// (take I = [k] \ U(J) and shrink it), so this never misses.
inline std::vector<std::size_t> canonical_column_witness(const Sman& s, std::size_t m, std::size_t slack) {
  const std::size_t k = s.k();
  const std::size_t t = (k + 1 > m + slack) ? k + 1 - m - slack : 0;
  std::vector<std::size_t> witness;
  for_each_combination(k, t, [&](const std::vector<std::size_t>& sources) {
    auto avoiding = relays_avoiding(s, IndexSet(k, sources));
    if (avoiding.size() < m) return true;
    witness.assign(avoiding.begin(), avoiding.begin() + static_cast<std::ptrdiff_t>(m));
    return false;
  });
  if (witness.empty() || column_union(s, witness).size() >= m + slack) {
    throw ConsistencyError("column witness canonicalization failed");
  }
  return witness;
}

/// Holds iff |U(J)| >= |J| + slack for every nonempty J with |J| <= max_size.
inline Verdict column_condition(const Sman& s, std::size_t max_size, std::size_t slack) {
  max_size = std::min(max_size, s.n());
  for (std::size_t m = 1; m <= max_size; ++m) {
    const bool all_ok = for_each_combination(s.n(), m, [&](const std::vector<std::size_t>& relays) {
      return column_union(s, relays).size() >= m + slack;
    });
    if (!all_ok) return Verdict::fail(WitnessKind::relay_set, canonical_column_witness(s, m, slack));
  }
  return Verdict::pass();
}

}  // namespace detail

/// Every l <= k relays jointly hear at least l sources.
inline Verdict check_mds_condition(const Sman& s) { return detail::column_condition(s, s.k(), 0); }

/// Every l < k relays jointly hear at least l + 1 sources. Vacuous for k = 1.
inline Verdict check_weak_security_condition(const Sman& s) {
  return detail::column_condition(s, s.k() - 1, 1);
}

/// Row form: |U_{i in I} R_i| >= n - k + |I| + 1 for every nonempty proper I.
/// Witness is the first violating I by cardinality, then lexicographically.
inline Verdict check_row_condition(const Sman& s) {
  const std::size_t k = s.k();
  const std::size_t n = s.n();
  for (std::size_t t = 1; t < k; ++t) {
    std::vector<std::size_t> witness;
    for_each_combination(k, t, [&](const std::vector<std::size_t>& sources) {
      if (row_union(s, sources).size() >= n - k + t + 1) return true;
      witness = sources;
      return false;
    });
    if (!witness.empty()) return Verdict::fail(WitnessKind::source_set, std::move(witness));
  }
  return Verdict::pass();
}

/// Every nonempty J with |J| <= ell hears at least |J| + b sources.
inline Verdict check_block_security_condition(const Sman& s, std::size_t ell, std::size_t b) {
  if (s.k() < 2 || ell < 1 || ell > s.k() - 1) {
    throw UsageError("adversary strength must lie in [1, k-1], got " + std::to_string(ell));
  }
  if (b < 1) throw UsageError("block size must be at least 1");
  return detail::column_condition(s, ell, b);
}

/// b_l = max(0, min over nonempty |J| <= l of |U(J)| - |J|) for l = 1..k-1.
inline SecurityProfile block_security_profile(const Sman& s) {
  auto mds = check_mds_condition(s);
  if (!mds.holds) {
    throw InfeasibleError("MDS condition fails; block security profile is undefined", mds.witness_kind,
                          mds.witness);
  }
  SecurityProfile profile;
  std::size_t running = std::numeric_limits<std::size_t>::max();
  for (std::size_t m = 1; m + 1 <= s.k(); ++m) {
    for_each_combination(s.n(), m, [&](const std::vector<std::size_t>& relays) {
      const std::size_t u = column_union(s, relays).size();
      running = std::min(running, u >= m ? u - m : 0);
      return true;
    });
    profile.levels.push_back(running);
  }
  return profile;
}

}  // namespace wsman

#endif  // WSMAN_SMAN_HPP
