#ifndef WSMAN_CODEGEN_HPP
#define WSMAN_CODEGEN_HPP

// Encoding matrices for an SMAN: exact MDS and weak-security verifiers, a
// randomized construction certified by those verifiers, the Cauchy
// construction for the fully connected network, and brute-force
// encode/decode/distance at desk scale.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wsman/bitset.hpp"
#include "wsman/errors.hpp"
#include "wsman/gf.hpp"
#include "wsman/random.hpp"
#include "wsman/sman.hpp"

namespace wsman {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 20;
inline constexpr std::uint32_t kDefaultConstructionPrime = 65537;
inline constexpr std::size_t kDefaultMaxAttempts = 64;

using Message = std::vector<Residue>;
using Codeword = std::vector<Residue>;

/// The SMAN whose links are exactly the nonzero entries of g.
inline Sman support_of(const FieldMatrix& g) {
  Sman s(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) != 0) s.set_link(i, j, true);
    }
  return s;
}

/// A k x n generator matrix of rank k whose zeros cover the non-links of its SMAN.
class EncodingMatrix {
 public:
  EncodingMatrix(FieldMatrix matrix, Sman topology) : matrix_(std::move(matrix)), topology_(std::move(topology)) {
    if (matrix_.rows() != topology_.k() || matrix_.cols() != topology_.n()) {
      throw UsageError("encoding matrix and SMAN have different dimensions");
    }
    for (std::size_t i = 0; i < topology_.k(); ++i)
      for (std::size_t j = 0; j < topology_.n(); ++j) {
        if (matrix_(i, j) != 0 && !topology_.link(i, j)) {
          throw UsageError("encoding matrix uses link (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                           ") absent from the SMAN");
        }
      }
    if (rank(matrix_) != topology_.k()) throw UsageError("encoding matrix must have rank k");
  }

  /// Topology taken to be the support of the matrix.
  explicit EncodingMatrix(FieldMatrix matrix) : EncodingMatrix(matrix, support_of(matrix)) {}

  const FieldMatrix& matrix() const noexcept { return matrix_; }
  const Sman& topology() const noexcept { return topology_; }
  const FieldPrime& field() const noexcept { return matrix_.field(); }
  std::size_t k() const noexcept { return matrix_.rows(); }
  std::size_t n() const noexcept { return matrix_.cols(); }

 private:
  FieldMatrix matrix_;
  Sman topology_;
};

/// True iff every k columns are linearly independent (minimum distance n - k + 1).
inline bool verify_mds_code(const FieldMatrix& g) {
  const std::size_t k = g.rows();
  if (g.cols() < k) return false;
  return for_each_combination(g.cols(), k, [&](const std::vector<std::size_t>& cols) {
    return determinant(g.select_columns(cols)).value() != 0;
  });
}
inline bool verify_mds_code(const EncodingMatrix& g) { return verify_mds_code(g.matrix()); }

/// True iff for every set E of k - 1 columns the code spanned by the rows of
/// transpose(G[E]) has no weight-1 codeword, i.e. no unit vector e_i lies in
/// that row space. Valid whether or not G[E] has full rank.
inline bool verify_weak_security_code(const FieldMatrix& g) {
  const std::size_t k = g.rows();
  if (k == 0 || g.cols() + 1 < k) return false;
  std::vector<Residue> unit(k, 0);
  return for_each_combination(g.cols(), k - 1, [&](const std::vector<std::size_t>& cols) {
    const FieldMatrix a = g.select_columns(cols).transpose();
    for (std::size_t i = 0; i < k; ++i) {
      unit[i] = 1;
      const bool leaks = row_space_contains(a, unit);
      unit[i] = 0;
      if (leaks) return false;
    }
    return true;
  });
}
inline bool verify_weak_security_code(const EncodingMatrix& g) { return verify_weak_security_code(g.matrix()); }

struct ConstructionResult {
  EncodingMatrix code;
  std::size_t attempts;
};

/// Las Vegas construction: each attempt fills every linked position, row-major,
/// with a uniform nonzero element drawn from SplitMix64(seed), and keeps the
/// first matrix that passes both verifiers.
inline ConstructionResult construct_code(const Sman& s, FieldPrime field, std::uint64_t seed,
                                         std::size_t max_attempts = kDefaultMaxAttempts) {
  const Verdict ws = check_weak_security_condition(s);
  if (!ws.holds) {
    throw InfeasibleError("weak security condition fails; no weakly secure MDS code exists", ws.witness_kind,
                          ws.witness);
  }
  const Verdict mds = check_mds_condition(s);
  if (!mds.holds) {
    throw InfeasibleError("MDS condition fails; no MDS code exists", mds.witness_kind, mds.witness);
  }

  SplitMix64 rng(seed);
  const std::uint64_t nonzero = field.modulus() - 1;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    FieldMatrix g(field, s.k(), s.n());
    for (std::size_t i = 0; i < s.k(); ++i)
      for (std::size_t j = 0; j < s.n(); ++j) {
        if (s.link(i, j)) g.set(i, j, static_cast<Residue>(1 + rng.below(nonzero)));
      }
    if (verify_mds_code(g) && verify_weak_security_code(g)) return {EncodingMatrix(std::move(g), s), attempt};
  }
  throw RetryExhaustedError("no weakly secure MDS matrix found in " + std::to_string(max_attempts) +
                                " attempts over GF(" + std::to_string(field.modulus()) + "); try a larger prime",
                            max_attempts);
}

/// Cauchy matrix g_{i,j} = 1 / (x_i - y_j) with x_i = i and y_j = k + j
/// (0-based), over the fully connected k x n network. Every square submatrix
/// is invertible, which needs the k + n points distinct: p >= n + k.
inline EncodingMatrix cauchy_code(std::size_t k, std::size_t n, FieldPrime field) {
  if (k < 1 || n < k) throw UsageError("cauchy_code needs n >= k >= 1");
  if (field.modulus() < n + k) {
    throw UsageError("cauchy_code needs p >= n + k = " + std::to_string(n + k) + ", got p = " +
                     std::to_string(field.modulus()));
  }
  FieldMatrix g(field, k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto x = static_cast<std::int64_t>(i);
      const auto y = static_cast<std::int64_t>(k + j);
      g.set(i, j, field.inv(field.reduce(x - y)));
    }
  return EncodingMatrix(std::move(g), Sman::all_ones(k, n));
}

inline Codeword encode(const FieldMatrix& g, std::span<const Residue> message) {
  if (message.size() != g.rows()) throw UsageError("message length must equal k");
  for (auto v : message) {
    if (v >= g.field().modulus()) throw UsageError("message symbol outside [0, p)");
  }
  return multiply(message, g);
}
inline Codeword encode(const EncodingMatrix& g, std::span<const Residue> message) {
  return encode(g.matrix(), message);
}
inline Codeword encode(const EncodingMatrix& g, const std::vector<FieldElement>& message) {
  Message raw;
  for (const auto& e : message) {
    if (e.field() != g.field()) throw UsageError("message and code belong to different fields");
    raw.push_back(e.value());
  }
  return encode(g, raw);
}

/// q^k, or a usage error when it exceeds `budget`.
inline std::uint64_t message_space_size(const FieldMatrix& g, std::uint64_t budget) {
  const std::uint64_t q = g.field().modulus();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (total > budget / q) {
      throw UsageError("q^k exceeds the enumeration budget of " + std::to_string(budget));
    }
    total *= q;
  }
  return total;
}

namespace detail {

/// Message with base-q digits of `index`, least significant first.
inline void message_from_index(std::uint64_t index, Residue q, Message& out) {
  for (auto& digit : out) {
    digit = static_cast<Residue>(index % q);
    index /= q;
  }
}

}  // namespace detail

inline std::size_t hamming_distance(std::span<const Residue> a, std::span<const Residue> b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
  return d;
}

inline std::size_t hamming_weight(std::span<const Residue> a) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [](Residue v) { return v != 0; }));
}

/// Minimum weight over the codewords of all nonzero messages.
inline std::size_t min_distance(const FieldMatrix& g, std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t total = message_space_size(g, budget);
  const Residue q = g.field().modulus();
  std::size_t best = g.cols() + 1;
  Message x(g.rows());
  for (std::uint64_t index = 1; index < total; ++index) {
    detail::message_from_index(index, q, x);
    best = std::min(best, hamming_weight(multiply(x, g)));
  }
  return best;
}
inline std::size_t min_distance(const EncodingMatrix& g, std::uint64_t budget = kDefaultEnumerationBudget) {
  return min_distance(g.matrix(), budget);
}

struct DecodeResult {
  Message message;
  std::size_t errors;
};

/// Exhaustive nearest-codeword decoder. The codebook is tabulated once.
class NearestCodewordDecoder {
 public:
  explicit NearestCodewordDecoder(const FieldMatrix& g, std::uint64_t budget = kDefaultEnumerationBudget)
      : k_(g.rows()), n_(g.cols()), q_(g.field().modulus()) {
    const std::uint64_t total = message_space_size(g, budget);
    codebook_.reserve(total * n_);
    Message x(k_);
    for (std::uint64_t index = 0; index < total; ++index) {
      detail::message_from_index(index, q_, x);
      const auto y = multiply(x, g);
      codebook_.insert(codebook_.end(), y.begin(), y.end());
    }
  }

  DecodeResult decode(std::span<const Residue> received) const {
    if (received.size() != n_) throw UsageError("received word length must equal n");
    const std::uint64_t total = codebook_.size() / std::max<std::size_t>(n_, 1);
    std::size_t best = n_ + 1;
    std::vector<std::uint64_t> tied;
    for (std::uint64_t index = 0; index < total; ++index) {
      const std::span<const Residue> word(codebook_.data() + index * n_, n_);
      const std::size_t d = hamming_distance(word, received);
      if (d < best) {
        best = d;
        tied.assign(1, index);
      } else if (d == best) {
        tied.push_back(index);
      }
    }
    if (tied.size() > 1) {
      std::vector<Message> messages;
      for (auto index : tied) messages.push_back(message_at(index));
      throw AmbiguousDecodeError(std::move(messages), best);
    }
    return {message_at(tied.front()), best};
  }

 private:
  Message message_at(std::uint64_t index) const {
    Message x(k_);
    detail::message_from_index(index, q_, x);
    return x;
  }

  std::size_t k_;
  std::size_t n_;
  Residue q_;
  std::vector<Residue> codebook_;
};

inline DecodeResult decode_nearest(const FieldMatrix& g, std::span<const Residue> received,
                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  return NearestCodewordDecoder(g, budget).decode(received);
}

}  // namespace wsman

#endif  // WSMAN_CODEGEN_HPP
