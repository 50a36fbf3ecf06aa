#ifndef WSMAN_TESTS_SUPPORT_HPP
#define WSMAN_TESTS_SUPPORT_HPP

// Shared fixtures, generators and independent brute-force oracles for tests.
// The oracles here use plain bitmask arithmetic and never call the library's
// checkers, enumerators or row reduction.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "wsman/wsman.hpp"

namespace wsman::testing {

/// The (6,4) network of the worked example: each relay hears a distinct pair of sources.
inline Sman example_network() {
  return Sman({{1, 1, 1, 0, 0, 0},
               {1, 0, 0, 1, 1, 0},
               {0, 1, 0, 1, 0, 1},
               {0, 0, 1, 0, 1, 1}});
}

/// Converts 1-based indices as written in the literature to the library's 0-based ones.
inline std::vector<std::size_t> one_based(std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> out;
  for (auto i : idx) out.push_back(i - 1);
  return out;
}

inline Sman random_sman(SplitMix64& rng, std::size_t k, std::size_t n, std::uint64_t density_percent = 60) {
  Sman s(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.below(100) < density_percent) s.set_link(i, j, true);
    }
  return s;
}

inline FieldMatrix random_matrix(SplitMix64& rng, FieldPrime f, std::size_t rows, std::size_t cols) {
  FieldMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<Residue>(rng.below(f.modulus())));
  return m;
}

namespace oracle {

// Column j as a bitmask over sources; row i as a bitmask over relays.
inline std::uint64_t column_mask(const Sman& s, std::size_t j) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < s.k(); ++i) {
    if (s.link(i, j)) m |= std::uint64_t{1} << i;
  }
  return m;
}
inline std::uint64_t row_mask(const Sman& s, std::size_t i) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < s.n(); ++j) {
    if (s.link(i, j)) m |= std::uint64_t{1} << j;
  }
  return m;
}

/// |U(J)| >= |J| + slack for all nonempty J with |J| <= max_size, over all 2^n masks.
inline bool column_condition(const Sman& s, std::size_t max_size, std::size_t slack) {
  for (std::uint64_t J = 1; J < (std::uint64_t{1} << s.n()); ++J) {
    const auto size = static_cast<std::size_t>(std::popcount(J));
    if (size > max_size) continue;
    std::uint64_t u = 0;
    for (std::size_t j = 0; j < s.n(); ++j) {
      if ((J >> j) & 1) u |= column_mask(s, j);
    }
    if (static_cast<std::size_t>(std::popcount(u)) < size + slack) return false;
  }
  return true;
}

inline bool mds(const Sman& s) { return column_condition(s, s.k(), 0); }
inline bool weak_security(const Sman& s) { return column_condition(s, s.k() - 1, 1); }

inline bool row_condition(const Sman& s) {
  const std::uint64_t full = (std::uint64_t{1} << s.k()) - 1;
  for (std::uint64_t I = 1; I < full; ++I) {
    std::uint64_t u = 0;
    for (std::size_t i = 0; i < s.k(); ++i) {
      if ((I >> i) & 1) u |= row_mask(s, i);
    }
    if (static_cast<std::size_t>(std::popcount(u)) < s.n() - s.k() + std::popcount(I) + 1) return false;
  }
  return true;
}

/// b_l = max(0, min over nonempty |J| <= l of |U(J)| - |J|).
inline std::vector<std::size_t> profile(const Sman& s) {
  std::vector<std::size_t> levels;
  for (std::size_t ell = 1; ell < s.k(); ++ell) {
    long best = static_cast<long>(s.k());
    for (std::uint64_t J = 1; J < (std::uint64_t{1} << s.n()); ++J) {
      const int size = std::popcount(J);
      if (static_cast<std::size_t>(size) > ell) continue;
      std::uint64_t u = 0;
      for (std::size_t j = 0; j < s.n(); ++j) {
        if ((J >> j) & 1) u |= column_mask(s, j);
      }
      best = std::min<long>(best, std::popcount(u) - size);
    }
    levels.push_back(static_cast<std::size_t>(std::max<long>(best, 0)));
  }
  return levels;
}

/// Whether some choice of n - k + 2 links per source, within `s`, satisfies
/// weak security: plain enumeration of every per-row subset of that size.
inline bool trimming_exists(const Sman& s) {
  const std::size_t k = s.k();
  const std::size_t n = s.n();
  const auto target = static_cast<int>(n - k + 2);
  std::vector<std::vector<std::uint64_t>> choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t row = row_mask(s, i);
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << n); ++sub) {
      if ((sub & ~row) == 0 && std::popcount(sub) == target) choices[i].push_back(sub);
    }
    if (choices[i].empty()) return false;
  }
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    Sman t(k, n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if ((choices[i][pick[i]] >> j) & 1) t.set_link(i, j, true);
      }
    if (weak_security(t)) return true;
    std::size_t i = 0;
    while (i < k && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == k) return false;
  }
}

/// Leibniz expansion over all permutations, mod p.
inline Residue leibniz_determinant(const FieldMatrix& m) {
  const std::size_t n = m.rows();
  const std::uint64_t p = m.field().modulus();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
    std::uint64_t term = 1;
    for (std::size_t r = 0; r < n; ++r) term = term * m(r, perm[r]) % p;
    total = (inversions % 2 == 0) ? (total + term) % p : (total + p - term) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<Residue>(total);
}

/// Minimum capacity over every s-t cut of a small network (2^(V-2) partitions).
inline Capacity min_cut_by_enumeration(const FlowNetwork& net, std::size_t source, std::size_t sink) {
  const std::size_t v = net.node_count();
  std::vector<std::size_t> free_nodes;
  for (std::size_t x = 0; x < v; ++x) {
    if (x != source && x != sink) free_nodes.push_back(x);
  }
  Capacity best = std::numeric_limits<Capacity>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_nodes.size()); ++mask) {
    std::vector<bool> in_s(v, false);
    in_s[source] = true;
    for (std::size_t b = 0; b < free_nodes.size(); ++b) {
      if ((mask >> b) & 1) in_s[free_nodes[b]] = true;
    }
    Capacity cut = 0;
    for (const auto& a : net.arcs()) {
      if (in_s[a.from] && !in_s[a.to]) cut += a.capacity;
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace oracle
}  // namespace wsman::testing

#endif  // WSMAN_TESTS_SUPPORT_HPP
