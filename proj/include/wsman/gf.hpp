#ifndef WSMAN_GF_HPP
#define WSMAN_GF_HPP

// Exact arithmetic and row reduction over prime fields GF(p), p < 2^31.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsman/errors.hpp"

namespace wsman {

using Residue = std::uint32_t;

/// A prime modulus. Products of two residues fit in 64 bits because p < 2^31.
class FieldPrime {
 public:
  explicit FieldPrime(std::uint64_t p) : p_(static_cast<Residue>(p)) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) {
      throw UsageError("field modulus must satisfy 2 <= p < 2^31, got " + std::to_string(p));
    }
    if (!is_prime(p)) throw UsageError("field modulus " + std::to_string(p) + " is not prime");
  }

  static constexpr bool is_prime(std::uint64_t p) noexcept {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2) {
      if (p % d == 0) return false;
    }
    return true;
  }

  Residue modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((std::uint64_t{a} * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue result = 1 % p_;
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }
  Residue inv(Residue a) const {
    if (a % p_ == 0) throw DomainError("inverse of zero in GF(" + std::to_string(p_) + ")");
    return pow(a, p_ - 2);
  }

  friend bool operator==(const FieldPrime&, const FieldPrime&) = default;

 private:
  Residue p_;
};

class FieldElement {
 public:
  FieldElement(FieldPrime field, std::int64_t value) : field_(field), value_(field.reduce(value)) {}
  FieldElement(FieldPrime field, Residue value) : field_(field), value_(value % field.modulus()) {}
  FieldElement(FieldPrime field, int value) : FieldElement(field, std::int64_t{value}) {}

  Residue value() const noexcept { return value_; }
  const FieldPrime& field() const noexcept { return field_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), a.field_.add(a.value_, b.value_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), a.field_.sub(a.value_, b.value_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), a.field_.mul(a.value_, b.value_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return {a.same_field(b), a.field_.mul(a.value_, b.field_.inv(b.value_))};
  }
  FieldElement inverse() const { return {field_, field_.inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  const FieldPrime& same_field(const FieldElement& other) const {
    if (field_ != other.field_) throw UsageError("operands belong to different fields");
    return field_;
  }

  FieldPrime field_;
  Residue value_;
};

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement sub(const FieldElement& a, const FieldElement& b) { return a - b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement inv(const FieldElement& a) { return a.inverse(); }
inline FieldElement pow(const FieldElement& a, std::uint64_t e) { return a.pow(e); }

/// Dense row-major matrix over GF(p).
class FieldMatrix {
 public:
  FieldMatrix(FieldPrime field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  /// Entries are reduced modulo p; every row must have the same length.
  FieldMatrix(FieldPrime field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : field_(field), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw UsageError("ragged matrix literal");
      for (auto v : row) entries_.push_back(field.reduce(v));
    }
  }

  static FieldMatrix identity(FieldPrime field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  const FieldPrime& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Residue> entries() const noexcept { return entries_; }

  Residue operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  Residue at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return (*this)(r, c);
  }
  void set(std::size_t r, std::size_t c, Residue v) {
    check_index(r, c);
    if (v >= field_.modulus()) throw UsageError("entry outside [0, p)");
    entries_[r * cols_ + c] = v;
  }

  std::span<const Residue> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  FieldMatrix transpose() const {
    FieldMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = (*this)(r, c);
    return t;
  }

  FieldMatrix select_columns(std::span<const std::size_t> cols) const {
    FieldMatrix out(field_, rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] >= cols_) throw UsageError("column index out of range");
        out.entries_[r * cols.size() + i] = (*this)(r, cols[i]);
      }
    return out;
  }

  /// Appends a row; `values` must already be residues in [0, p).
  void append_row(std::span<const Residue> values) {
    if (values.size() != cols_) throw UsageError("appended row has wrong length");
    for (auto v : values) {
      if (v >= field_.modulus()) throw UsageError("entry outside [0, p)");
    }
    entries_.insert(entries_.end(), values.begin(), values.end());
    ++rows_;
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw UsageError("matrix index out of range");
  }

  FieldPrime field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> entries_;
};

namespace detail {

/// In-place reduced row echelon form; returns pivot columns in order.
/// Pivot is the first nonzero entry at or below the current row.
inline std::vector<std::size_t> rref(FieldMatrix& m) {
  const FieldPrime& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) {
      auto a = m.row(sel);
      auto b = m.row(pivot_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(pivot_row);
    const Residue scale = f.inv(prow[c]);
    for (auto& v : prow) v = f.mul(v, scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      auto row = m.row(r);
      const Residue factor = row[c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const FieldMatrix& m) {
  FieldMatrix work = m;
  return detail::rref(work).size();
}

inline FieldElement determinant(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
  const FieldPrime& f = m.field();
  FieldMatrix work = m;
  const std::size_t n = m.rows();
  Residue det = 1 % f.modulus();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && work(sel, c) == 0) ++sel;
    if (sel == n) return FieldElement(f, 0);
    if (sel != c) {
      auto a = work.row(sel);
      auto b = work.row(c);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      det = f.neg(det);
    }
    const Residue pivot = work(c, c);
    det = f.mul(det, pivot);
    const Residue pivot_inv = f.inv(pivot);
    for (std::size_t r = c + 1; r < n; ++r) {
      auto row = work.row(r);
      const Residue factor = f.mul(row[c], pivot_inv);
      if (factor == 0) continue;
      auto prow = work.row(c);
      for (std::size_t j = c; j < n; ++j) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
    }
  }
  return FieldElement(f, det);
}

inline bool row_space_contains(const FieldMatrix& m, std::span<const Residue> v) {
  if (v.size() != m.cols()) throw UsageError("vector length does not match column count");
  FieldMatrix stacked = m;
  const std::size_t before = rank(m);
  stacked.append_row(v);
  return rank(stacked) == before;
}

inline bool row_space_contains(const FieldMatrix& m, const std::vector<FieldElement>& v) {
  std::vector<Residue> raw;
  raw.reserve(v.size());
  for (const auto& e : v) {
    if (e.field() != m.field()) throw UsageError("vector and matrix belong to different fields");
    raw.push_back(e.value());
  }
  return row_space_contains(m, std::span<const Residue>(raw));
}

/// Basis of {x : m x = 0}, one vector per free column of the echelon form.
inline std::vector<std::vector<Residue>> nullspace_basis(const FieldMatrix& m) {
  const FieldPrime& f = m.field();
  FieldMatrix work = m;
  const auto pivots = detail::rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Residue>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(work(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Residue> multiply(std::span<const Residue> x, const FieldMatrix& m) {
  if (x.size() != m.rows()) throw UsageError("vector length does not match row count");
  const FieldPrime& f = m.field();
  std::vector<Residue> y(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (x[r] == 0) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) y[c] = f.add(y[c], f.mul(x[r], m(r, c)));
  }
  return y;
}

}  // namespace wsman

#endif  // WSMAN_GF_HPP
