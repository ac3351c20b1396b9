#include "layercache/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace layercache {

namespace {

using Word = BitMatrix::Word;
constexpr std::size_t kWordBits = BitMatrix::kWordBits;

void check_bounds(const BitMatrix& m, std::size_t r, std::size_t c) {
  if (r >= m.rows() || c >= m.cols()) {
    throw std::out_of_range("index (" + std::to_string(r) + "," + std::to_string(c) +
                            ") outside " + m.shape() + " matrix");
  }
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * ((cols + kWordBits - 1) / kWordBits), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  std::vector<std::string> copy(rows.begin(), rows.end());
  const std::size_t cols = copy.empty() ? 0 : copy.front().size();
  return from_rows(cols, copy);
}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::span<const std::string> rows) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string& text = rows[r];
    if (text.size() != cols) {
      throw DimensionError("row " + std::to_string(r) + " has width " +
                           std::to_string(text.size()) + ", expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (text[c] == '1') {
        m.set(r, c, true);
      } else if (text[c] != '0') {
        throw std::invalid_argument("row " + std::to_string(r) + " contains '" +
                                    std::string(1, text[c]) + "', expected 0 or 1");
      }
    }
  }
  return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  check_bounds(*this, r, c);
  return (data_[r * words_per_row() + c / kWordBits] >> (c % kWordBits)) & 1U;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  check_bounds(*this, r, c);
  Word& w = data_[r * words_per_row() + c / kWordBits];
  const Word mask = Word{1} << (c % kWordBits);
  w = value ? (w | mask) : (w & ~mask);
}

std::span<const BitMatrix::Word> BitMatrix::row_words(std::size_t r) const {
  return {data_.data() + r * words_per_row(), words_per_row()};
}

std::span<BitMatrix::Word> BitMatrix::row_words(std::size_t r) {
  return {data_.data() + r * words_per_row(), words_per_row()};
}

void BitMatrix::xor_row(std::size_t dst, const BitMatrix& other, std::size_t src) {
  if (other.cols_ != cols_) {
    throw DimensionError("row xor between " + shape() + " and " + other.shape());
  }
  auto out = row_words(dst);
  auto in = other.row_words(src);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= in[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row_words(a);
  auto rb = row_words(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  auto words = row_words(r);
  return std::all_of(words.begin(), words.end(), [](Word w) { return w == 0; });
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

void BitMatrix::place(const BitMatrix& src, std::size_t row, std::size_t col) {
  if (row + src.rows_ > rows_ || col + src.cols_ > cols_) {
    throw DimensionError("cannot place " + src.shape() + " block at (" + std::to_string(row) +
                         "," + std::to_string(col) + ") in " + shape() + " matrix");
  }
  for (std::size_t r = 0; r < src.rows_; ++r) {
    for (std::size_t c = 0; c < src.cols_; ++c) {
      if (src.get(r, c)) set(row + r, col + c, true);
    }
  }
}

BitMatrix BitMatrix::row_range(std::size_t first, std::size_t count) const {
  if (first + count > rows_) {
    throw DimensionError("row range [" + std::to_string(first) + "," +
                         std::to_string(first + count) + ") outside " + shape() + " matrix");
  }
  BitMatrix out(count, cols_);
  const std::size_t wpr = words_per_row();
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * wpr), count * wpr,
              out.data_.begin());
  return out;
}

std::string BitMatrix::row_string(std::size_t r) const {
  std::string s(cols_, '0');
  for (std::size_t c = 0; c < cols_; ++c) {
    if (get(r, c)) s[c] = '1';
  }
  return s;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r > 0) s += '\n';
    s += row_string(r);
  }
  return s;
}

std::string BitMatrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("xor of " + shape() + " and " + other.shape());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] ^= other.data_[i];
  return *this;
}

bool operator==(const BitMatrix& a, const BitMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul shape mismatch: " + a.shape() + " times " + b.shape());
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto words = a.row_words(i);
    for (std::size_t w = 0; w < words.size(); ++w) {
      Word bits = words[w];
      while (bits != 0) {
        const auto k = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        out.xor_row(i, b, k);
        bits &= bits - 1;
      }
    }
  }
  return out;
}

BitVector mat_vec(const BitMatrix& a, const BitVector& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("apply shape mismatch: " + a.shape() + " times vector of length " +
                         std::to_string(x.size()));
  }
  BitVector out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      acc ^= static_cast<std::uint8_t>(a.get(r, c) & (x[c] & 1U));
    }
    out[r] = acc;
  }
  return out;
}

namespace {

struct Pivot {
  std::size_t col;
  std::size_t row;
};

// Forward elimination over GF(2). Every row operation on `work` is mirrored
// on `track` (when non-null). Returns the pivots in increasing column order;
// rows after the last pivot are zero.
std::vector<Pivot> eliminate(BitMatrix& work, BitMatrix* track) {
  std::vector<Pivot> pivots;
  std::size_t next = 0;
  for (std::size_t col = 0; col < work.cols() && next < work.rows(); ++col) {
    std::size_t p = next;
    while (p < work.rows() && !work.get(p, col)) ++p;
    if (p == work.rows()) continue;
    work.swap_rows(p, next);
    if (track) track->swap_rows(p, next);
    const std::size_t word = col / kWordBits;
    const Word mask = Word{1} << (col % kWordBits);
    for (std::size_t r = next + 1; r < work.rows(); ++r) {
      if (work.row_words(r)[word] & mask) {
        work.xor_row(r, work, next);
        if (track) track->xor_row(r, *track, next);
      }
    }
    pivots.push_back({col, next});
    ++next;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const BitMatrix& a) {
  BitMatrix work = a;
  return eliminate(work, nullptr).size();
}

std::optional<BitMatrix> solve_left(const BitMatrix& g, const BitMatrix& e) {
  if (g.cols() != e.cols()) {
    throw DimensionError("solve_left shape mismatch: g is " + g.shape() + ", e is " + e.shape());
  }
  BitMatrix work = g;
  BitMatrix track = BitMatrix::identity(g.rows());
  const std::vector<Pivot> pivots = eliminate(work, &track);

  BitMatrix residual = e;
  BitMatrix solution(e.rows(), g.rows());
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (const Pivot& p : pivots) {
      // Echelon form: later pivot rows are zero in earlier pivot columns, so
      // a single left-to-right pass fully reduces the row.
      if (!residual.get(r, p.col)) continue;
      residual.xor_row(r, work, p.row);
      solution.xor_row(r, track, p.row);
    }
    if (!residual.row_is_zero(r)) return std::nullopt;
  }
  return solution;
}

BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom) {
  const BitMatrix blocks[] = {top, bottom};
  return vstack(blocks, top.cols());
}

BitMatrix vstack(std::span<const BitMatrix> blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const BitMatrix& b : blocks) {
    if (b.cols() != cols) {
      throw DimensionError("vstack block " + b.shape() + " does not have " +
                           std::to_string(cols) + " columns");
    }
    rows += b.rows();
  }
  BitMatrix out(rows, cols);
  std::size_t at = 0;
  for (const BitMatrix& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) out.xor_row(at + r, b, r);
    at += b.rows();
  }
  return out;
}

BitVector xor_vectors(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("xor of vectors with lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  BitVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] ^ b[i]) & 1U;
  return out;
}

}  // namespace layercache
