#ifndef WSMAN_BITSET_HPP
#define WSMAN_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "wsman/errors.hpp"

namespace wsman {

/// Fixed-width set of small indices packed into 64-bit words.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  IndexSet(std::size_t universe, const std::vector<std::size_t>& members) : IndexSet(universe) {
    for (auto i : members) insert(i);
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(std::size_t i) const noexcept {
    return i < universe_ && ((words_[i / 64] >> (i % 64)) & 1u) != 0;
  }
  void insert(std::size_t i) {
    check(i);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  void erase(std::size_t i) {
    check(i);
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  IndexSet& operator|=(const IndexSet& other) noexcept {
    for (std::size_t w = 0; w < words_.size() && w < other.words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  bool intersects(const IndexSet& other) const noexcept {
    for (std::size_t w = 0; w < words_.size() && w < other.words_.size(); ++w) {
      if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  void check(std::size_t i) const {
    if (i >= universe_) throw UsageError("index " + std::to_string(i) + " outside universe of size " +
                                         std::to_string(universe_));
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Visits every m-subset of {0..n-1} in lexicographic order; stops early when
/// `visit` returns false. Returns false iff stopped early.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t m, Visit&& visit) {
  if (m > n) return true;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace wsman

#endif  // WSMAN_BITSET_HPP
