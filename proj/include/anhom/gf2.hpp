#pragma once

// Bit-packed vectors and matrices over GF(2).
//
// Coordinates are packed little-endian into 64-bit words: coordinate i lives
// in bit (i % 64) of word (i / 64). Bits past size() are kept zero so that
// whole-word comparisons and popcounts are exact.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anhom/error.hpp"

namespace anhom {

class Gf2Vector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t len)
      : len_(len), words_((len + kWordBits - 1) / kWordBits, 0) {}

  static Gf2Vector unit(std::size_t len, std::size_t i) {
    Gf2Vector v(len);
    v.set(i, true);
    return v;
  }

  /// Parses a string of '0'/'1' characters; coordinate 0 comes first.
  static Gf2Vector from_string(std::string_view digits) {
    Gf2Vector v(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] == '1') {
        v.set(i, true);
      } else if (digits[i] != '0') {
        throw ParseError("expected 0 or 1", 1, i + 1);
      }
    }
    return v;
  }

  std::size_t size() const noexcept { return len_; }

  bool get(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  void set(std::size_t i, bool value) noexcept {
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= bit;
    } else {
      words_[i / kWordBits] &= ~bit;
    }
  }

  void flip(std::size_t i) noexcept {
    words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
  }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(),
                       [](Word w) { return w == 0; });
  }

  std::size_t popcount() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  /// Parity of the coordinatewise product, i.e. the GF(2) inner product.
  bool dot(const Gf2Vector& other) const {
    require_same_size(other);
    Word acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      acc ^= words_[k] & other.words_[k];
    }
    return std::popcount(acc) & 1;
  }

  std::optional<std::size_t> first_set() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] != 0) {
        return k * kWordBits +
               static_cast<std::size_t>(std::countr_zero(words_[k]));
      }
    }
    return std::nullopt;
  }

  Gf2Vector& operator^=(const Gf2Vector& other) {
    require_same_size(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }

  friend Gf2Vector operator^(Gf2Vector lhs, const Gf2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  friend Gf2Vector operator+(Gf2Vector lhs, const Gf2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
  friend auto operator<=>(const Gf2Vector&, const Gf2Vector&) = default;

  std::span<const Word> words() const noexcept { return words_; }

  std::string to_string() const {
    std::string out(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) out[i] = '1';
    }
    return out;
  }

 private:
  void require_same_size(const Gf2Vector& other) const {
    if (other.len_ != len_) {
      throw ShapeError("vector length mismatch: " + std::to_string(len_) +
                       " vs " + std::to_string(other.len_));
    }
  }

  std::size_t len_ = 0;
  std::vector<Word> words_;
};

/// Dense row-major GF(2) matrix; each row is a packed Gf2Vector.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, Gf2Vector(cols)) {}

  static Gf2Matrix identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static Gf2Matrix from_rows(std::vector<Gf2Vector> rows, std::size_t cols) {
    for (const auto& r : rows) {
      if (r.size() != cols) throw ShapeError("ragged matrix rows");
    }
    Gf2Matrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
  }

  /// Builds a matrix from rows of '0'/'1' digits; whitespace inside a row is
  /// ignored, blank lines are skipped.
  static Gf2Matrix parse(std::string_view text) {
    std::vector<Gf2Vector> rows;
    std::size_t cols = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
      ++line_no;
      const auto nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{}
                                          : text.substr(nl + 1);
      std::string digits;
      for (std::size_t c = 0; c < line.size(); ++c) {
        const char ch = line[c];
        if (ch == '0' || ch == '1') {
          digits.push_back(ch);
        } else if (ch != ' ' && ch != '\t' && ch != '\r' && ch != ',') {
          throw ParseError("unexpected character in matrix row", line_no,
                           c + 1);
        }
      }
      if (digits.empty()) continue;
      if (rows.empty()) {
        cols = digits.size();
      } else if (digits.size() != cols) {
        throw ParseError("row length differs from first row", line_no, 1);
      }
      rows.push_back(Gf2Vector::from_string(digits));
    }
    return from_rows(std::move(rows), cols);
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return rows_[r].get(c);
  }
  void set(std::size_t r, std::size_t c, bool value) noexcept {
    rows_[r].set(c, value);
  }

  const Gf2Vector& row(std::size_t r) const noexcept { return rows_[r]; }

  Gf2Vector column(std::size_t c) const {
    Gf2Vector v(rows());
    for (std::size_t r = 0; r < rows(); ++r) v.set(r, get(r, c));
    return v;
  }

  Gf2Matrix transposed() const {
    Gf2Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) t.set(c, r, true);
      }
    }
    return t;
  }

  bool is_zero() const noexcept {
    return std::all_of(rows_.begin(), rows_.end(),
                       [](const Gf2Vector& r) { return r.is_zero(); });
  }

  std::size_t popcount() const noexcept {
    std::size_t total = 0;
    for (const auto& r : rows_) total += r.popcount();
    return total;
  }

  /// Matrix-vector product Mv.
  Gf2Vector apply(const Gf2Vector& v) const {
    if (v.size() != cols_) {
      throw ShapeError("apply: matrix has " + std::to_string(cols_) +
                       " columns, vector has length " +
                       std::to_string(v.size()));
    }
    Gf2Vector out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
      if (rows_[r].dot(v)) out.set(r, true);
    }
    return out;
  }

  Gf2Matrix& operator+=(const Gf2Matrix& other) {
    if (other.rows() != rows() || other.cols_ != cols_) {
      throw ShapeError("matrix sum: shape mismatch");
    }
    for (std::size_t r = 0; r < rows(); ++r) rows_[r] ^= other.rows_[r];
    return *this;
  }

  friend Gf2Matrix operator+(Gf2Matrix lhs, const Gf2Matrix& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

  /// Rows of 0/1 digits separated by newlines, no trailing newline.
  std::string to_string() const {
    std::string out;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r != 0) out.push_back('\n');
      out += rows_[r].to_string();
    }
    return out;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Gf2Vector> rows_;
};

/// Product MN. Row i of the result is the XOR of the rows of N selected by
/// the set bits of row i of M.
inline Gf2Matrix mat_mul(const Gf2Matrix& m, const Gf2Matrix& n) {
  if (m.cols() != n.rows()) {
    throw ShapeError("mat_mul: " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + " times " +
                     std::to_string(n.rows()) + "x" +
                     std::to_string(n.cols()));
  }
  std::vector<Gf2Vector> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Gf2Vector acc(n.cols());
    const auto words = m.row(i).words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      for (auto bits = words[w]; bits != 0; bits &= bits - 1) {
        const auto k = w * Gf2Vector::kWordBits +
                       static_cast<std::size_t>(std::countr_zero(bits));
        acc ^= n.row(k);
      }
    }
    out.push_back(std::move(acc));
  }
  return Gf2Matrix::from_rows(std::move(out), n.cols());
}

inline Gf2Matrix operator*(const Gf2Matrix& m, const Gf2Matrix& n) {
  return mat_mul(m, n);
}

struct RowReduction {
  Gf2Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row-echelon form. Pivots are chosen as the first row with a
/// nonzero entry in the current column, so the output is deterministic.
inline RowReduction row_reduce(const Gf2Matrix& m) {
  std::vector<Gf2Vector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));

  RowReduction result;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t pivot = next;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[next], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
    }
    result.pivot_columns.push_back(c);
    ++next;
  }
  result.rank = next;
  result.reduced = Gf2Matrix::from_rows(std::move(rows), m.cols());
  return result;
}

inline std::size_t rank(const Gf2Matrix& m) { return row_reduce(m).rank; }

/// Basis of {v : Mv = 0}, one vector per free column in increasing column
/// order. Each vector has a 1 at its free column and zeros at every other
/// free column.
inline std::vector<Gf2Vector> null_space_basis(const Gf2Matrix& m) {
  const RowReduction rr = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rr.pivot_columns) is_pivot[c] = true;

  std::vector<Gf2Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Gf2Vector v(m.cols());
    v.set(free, true);
    for (std::size_t r = 0; r < rr.rank; ++r) {
      if (rr.reduced.get(r, free)) v.set(rr.pivot_columns[r], true);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Canonical basis of the span of `vectors`: the nonzero rows of their
/// reduced row-echelon form. Two families span the same subspace exactly
/// when their canonical bases are equal.
inline std::vector<Gf2Vector> canonical_basis(std::span<const Gf2Vector> vectors,
                                              std::size_t len) {
  std::vector<Gf2Vector> rows(vectors.begin(), vectors.end());
  const RowReduction rr = row_reduce(Gf2Matrix::from_rows(std::move(rows), len));
  std::vector<Gf2Vector> out;
  out.reserve(rr.rank);
  for (std::size_t r = 0; r < rr.rank; ++r) out.push_back(rr.reduced.row(r));
  return out;
}

/// Canonical basis of the column space of M.
inline std::vector<Gf2Vector> column_space_basis(const Gf2Matrix& m) {
  const Gf2Matrix t = m.transposed();
  std::vector<Gf2Vector> cols;
  cols.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) cols.push_back(t.row(r));
  return canonical_basis(cols, m.rows());
}

}  // namespace anhom
