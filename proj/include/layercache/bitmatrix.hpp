#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace layercache {

// A vector over GF(2), one entry (0 or 1) per element.
using BitVector = std::vector<std::uint8_t>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense matrix over GF(2). Rows are packed into 64-bit words and padded to a
// whole number of words, so row XOR is a word loop. Padding bits are always
// zero. Shapes with zero rows or zero columns are valid empty maps.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);

  // Each string is one row of '0'/'1' characters; all must share a width.
  // An empty list gives a 0x0 matrix, use `from_rows(cols, {})` for 0xk.
  static BitMatrix from_rows(std::initializer_list<std::string_view> rows);
  static BitMatrix from_rows(std::size_t cols, std::span<const std::string> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);

  std::span<const Word> row_words(std::size_t r) const;
  std::span<Word> row_words(std::size_t r);

  // row(dst) ^= other.row(src); widths must agree.
  void xor_row(std::size_t dst, const BitMatrix& other, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;
  bool is_zero() const;

  // Copies `src` into this matrix with its top-left corner at (row, col).
  void place(const BitMatrix& src, std::size_t row, std::size_t col);

  BitMatrix row_range(std::size_t first, std::size_t count) const;

  std::string row_string(std::size_t r) const;
  std::string to_string() const;  // rows joined by '\n'
  std::string shape() const;      // "RxC"

  BitMatrix& operator^=(const BitMatrix& other);
  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
  friend bool operator==(const BitMatrix& a, const BitMatrix& b);

 private:
  std::size_t words_per_row() const { return (cols_ + kWordBits - 1) / kWordBits; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Word> data_;
};

// GF(2) product; throws DimensionError when a.cols != b.rows.
BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);

// Matrix times column vector.
BitVector mat_vec(const BitMatrix& a, const BitVector& x);

std::size_t rank(const BitMatrix& a);

// Returns R with mat_mul(R, g) == e, or nullopt when some row of e is
// outside the row space of g. Throws DimensionError when g.cols != e.cols.
// R comes from forward elimination with leftmost pivots and is not minimized.
std::optional<BitMatrix> solve_left(const BitMatrix& g, const BitMatrix& e);

// Vertical concatenation; column counts must match.
BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom);
BitMatrix vstack(std::span<const BitMatrix> blocks, std::size_t cols);

BitVector xor_vectors(const BitVector& a, const BitVector& b);

}  // namespace layercache
