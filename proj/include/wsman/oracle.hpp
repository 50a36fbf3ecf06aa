#ifndef WSMAN_ORACLE_HPP
#define WSMAN_ORACLE_HPP

// Information-theoretic ground truth by exhaustive enumeration of all q^k
// equiprobable messages. Entropies are exact integers in units of log q: a
// linear observation of a uniform message is uniform over a coset, so every
// distribution that arises is uniform over a power-of-q support.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wsman/bitset.hpp"
#include "wsman/codegen.hpp"
#include "wsman/errors.hpp"
#include "wsman/gf.hpp"

namespace wsman {

struct EntropyValue {
  std::size_t q_ary_units = 0;

  friend bool operator==(const EntropyValue&, const EntropyValue&) = default;
};

/// rank([transpose(G[E]); e_j for j in B]) == rank(transpose(G[E])) + |B|.
inline bool independence_rank_criterion(const FieldMatrix& g, const std::vector<std::size_t>& targets,
                                        const std::vector<std::size_t>& observed) {
  FieldMatrix a = g.select_columns(observed).transpose();
  if (observed.empty()) a = FieldMatrix(g.field(), 0, g.rows());
  const std::size_t base = rank(a);
  std::vector<Residue> unit(g.rows(), 0);
  for (auto j : targets) {
    if (j >= g.rows()) throw UsageError("target source index out of range");
    unit[j] = 1;
    a.append_row(unit);
    unit[j] = 0;
  }
  return rank(a) == base + targets.size();
}

namespace detail {

/// log_q of the support size of the empirical distribution of `rows` (flat,
/// `width` symbols per message); throws unless it is uniform over a
/// power-of-q support.
inline std::size_t uniform_log_q(const std::vector<Residue>& rows, std::size_t width, std::uint64_t q,
                                 std::uint64_t total) {
  std::vector<std::uint64_t> order(total);
  for (std::uint64_t i = 0; i < total; ++i) order[i] = i;
  auto row = [&](std::uint64_t i) { return rows.begin() + static_cast<std::ptrdiff_t>(i * width); };
  auto equal = [&](std::uint64_t a, std::uint64_t b) { return std::equal(row(a), row(a) + width, row(b)); };
  std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
    return std::lexicographical_compare(row(a), row(a) + width, row(b), row(b) + width);
  });

  std::uint64_t distinct = 0;
  std::uint64_t expected_run = 0;
  for (std::uint64_t i = 0; i < total;) {
    std::uint64_t j = i;
    while (j < total && equal(order[j], order[i])) ++j;
    const std::uint64_t run = j - i;
    if (expected_run == 0) expected_run = run;
    if (run != expected_run) throw ConsistencyError("observation distribution is not uniform");
    ++distinct;
    i = j;
  }
  std::size_t units = 0;
  std::uint64_t power = 1;
  while (power < distinct) {
    power *= q;
    ++units;
  }
  if (power != distinct || distinct * expected_run != total) {
    throw ConsistencyError("entropy is not an integer number of q-ary units");
  }
  return units;
}

inline std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v, std::size_t bound, const char* what) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  for (auto x : v) {
    if (x >= bound) throw UsageError(std::string(what) + " index out of range");
  }
  return v;
}

}  // namespace detail

/// H(X_B | Y_E) = H(X_B, Y_E) - H(Y_E), tabulated over every message and
/// cross-checked against the rank of the observation map.
inline EntropyValue conditional_entropy(const FieldMatrix& g, std::vector<std::size_t> targets,
                                        std::vector<std::size_t> observed,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
  targets = detail::sorted_unique(std::move(targets), g.rows(), "target");
  observed = detail::sorted_unique(std::move(observed), g.cols(), "observed");
  const std::uint64_t total = message_space_size(g, budget);
  const std::uint64_t q = g.field().modulus();

  // Row layout per message: the observed symbols, then the target symbols.
  const std::size_t width_observed = observed.size();
  const std::size_t width_joint = observed.size() + targets.size();
  std::vector<Residue> observation_rows;
  std::vector<Residue> joint_rows;
  observation_rows.reserve(total * width_observed);
  joint_rows.reserve(total * width_joint);
  Message x(g.rows());
  for (std::uint64_t index = 0; index < total; ++index) {
    detail::message_from_index(index, static_cast<Residue>(q), x);
    for (auto j : observed) {
      Residue y = 0;
      for (std::size_t i = 0; i < g.rows(); ++i) y = g.field().add(y, g.field().mul(x[i], g(i, j)));
      observation_rows.push_back(y);
      joint_rows.push_back(y);
    }
    for (auto i : targets) joint_rows.push_back(x[i]);
  }
  const std::size_t h_observed = detail::uniform_log_q(observation_rows, width_observed, q, total);
  const std::size_t h_joint = detail::uniform_log_q(joint_rows, width_joint, q, total);
  if (h_joint < h_observed) throw ConsistencyError("joint entropy below marginal entropy");
  const std::size_t h = h_joint - h_observed;

  // Shortcut: H = rank([G_E^T; e_B]) - rank(G_E^T).
  FieldMatrix a = observed.empty() ? FieldMatrix(g.field(), 0, g.rows()) : g.select_columns(observed).transpose();
  const std::size_t base = rank(a);
  std::vector<Residue> unit(g.rows(), 0);
  for (auto i : targets) {
    unit[i] = 1;
    a.append_row(unit);
    unit[i] = 0;
  }
  if (rank(a) - base != h) {
    throw ConsistencyError("enumerated entropy " + std::to_string(h) + " disagrees with rank shortcut " +
                           std::to_string(rank(a) - base));
  }
  return {h};
}

/// No single source symbol leaks to any k - 1 observed relays. Smaller
/// observation sets are functions of some maximal one, so they cannot leak more.
inline bool check_weak_security_exact(const FieldMatrix& g, std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t k = g.rows();
  message_space_size(g, budget);
  return for_each_combination(g.cols(), k - 1, [&](const std::vector<std::size_t>& observed) {
    for (std::size_t i = 0; i < k; ++i) {
      if (conditional_entropy(g, {i}, observed, budget).q_ary_units != 1) return false;
    }
    return true;
  });
}

/// Every block of min(b, k) sources stays fully hidden from every ell observed
/// relays. Sub-blocks of a hidden block are hidden, so maximal B suffices.
inline bool check_block_security_exact(const FieldMatrix& g, std::size_t ell, std::size_t b,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t k = g.rows();
  if (k < 2 || ell > k - 1) throw UsageError("adversary strength must be at most k - 1");
  message_space_size(g, budget);
  if (b == 0) return true;
  const std::size_t block = std::min(b, k);
  return for_each_combination(g.cols(), ell, [&](const std::vector<std::size_t>& observed) {
    return for_each_combination(k, block, [&](const std::vector<std::size_t>& targets) {
      return conditional_entropy(g, targets, observed, budget).q_ary_units == block;
    });
  });
}

/// Largest b with check_block_security_exact(g, ell, b).
inline std::size_t block_security_level_of_code(const FieldMatrix& g, std::size_t ell,
                                                std::uint64_t budget = kDefaultEnumerationBudget) {
  std::size_t b = 0;
  while (b < g.rows() && check_block_security_exact(g, ell, b + 1, budget)) ++b;
  return b;
}

/// Same level from the rank criterion alone, with no message enumeration.
inline std::size_t block_security_level_by_rank(const FieldMatrix& g, std::size_t ell) {
  const std::size_t k = g.rows();
  if (k < 2 || ell < 1 || ell > k - 1) throw UsageError("adversary strength must be in [1, k - 1]");
  std::size_t b = 0;
  while (b < k) {
    const std::size_t block = b + 1;
    const bool hidden = for_each_combination(g.cols(), ell, [&](const std::vector<std::size_t>& observed) {
      return for_each_combination(k, block, [&](const std::vector<std::size_t>& targets) {
        return independence_rank_criterion(g, targets, observed);
      });
    });
    if (!hidden) break;
    b = block;
  }
  return b;
}

}  // namespace wsman

#endif  // WSMAN_ORACLE_HPP
