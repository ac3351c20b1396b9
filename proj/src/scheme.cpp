#include "layercache/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace layercache {

namespace {

std::size_t scaled_count(const Rational& value, std::size_t n, const char* what) {
  const Rational scaled = value * static_cast<std::int64_t>(n);
  if (scaled.denominator() != 1 || scaled < 0) {
    throw SchemeError(std::string(what) + " " + to_display(value) + " times n=" +
                      std::to_string(n) + " is not a nonnegative integer");
  }
  return static_cast<std::size_t>(scaled.numerator());
}

void expect_shape(const BitMatrix& m, std::size_t rows, std::size_t cols, const std::string& name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw SchemeError(name + " is " + m.shape() + ", expected " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  }
}

// Re-indexes the file-bit columns of a scheme at granularity `from_n` into
// a scheme at granularity `to_n`, shifting part indices by `offset`.
BitMatrix embed_columns(const BitMatrix& src, std::size_t from_n, std::size_t to_n,
                        std::size_t offset) {
  BitMatrix out(src.rows(), 2 * to_n);
  for (std::size_t r = 0; r < src.rows(); ++r) {
    for (std::size_t c = 0; c < 2 * from_n; ++c) {
      if (!src.get(r, c)) continue;
      const std::size_t file = c / from_n;
      const std::size_t part = c % from_n;
      out.set(r, file * to_n + offset + part, true);
    }
  }
  return out;
}

struct Copy {
  const LinearScheme* scheme;
  std::size_t offset;
};

BitMatrix stack_placements(const std::vector<Copy>& copies, std::size_t n,
                           const BitMatrix LinearScheme::*field) {
  std::vector<BitMatrix> blocks;
  blocks.reserve(copies.size());
  for (const Copy& c : copies) {
    blocks.push_back(embed_columns(c.scheme->*field, c.scheme->n, n, c.offset));
  }
  return vstack(blocks, 2 * n);
}

BitMatrix block_diagonal(const std::vector<const BitMatrix*>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const BitMatrix* b : blocks) {
    rows += b->rows();
    cols += b->cols();
  }
  BitMatrix out(rows, cols);
  std::size_t r = 0, c = 0;
  for (const BitMatrix* b : blocks) {
    out.place(*b, r, c);
    r += b->rows();
    c += b->cols();
  }
  return out;
}

}  // namespace

std::size_t LinearScheme::message_rows() const { return scaled_count(load, n, "load"); }

void validate(const LinearScheme& s) {
  if (s.n == 0) throw SchemeError("granularity n must be positive");
  if (s.memory < 0 || s.memory > 2) {
    throw SchemeError("memory " + to_display(s.memory) + " outside [0,2]");
  }
  if (s.load < 0) throw SchemeError("load " + to_display(s.load) + " is negative");
  const std::size_t width = 2 * s.n;
  const std::size_t cache_rows = scaled_count(s.memory, s.n, "memory");
  const std::size_t msg_rows = scaled_count(s.load, s.n, "load");

  expect_shape(s.z1, cache_rows, width, "Z1");
  expect_shape(s.z2, cache_rows, width, "Z2");
  if (s.u1.cols() != width || s.u1.rows() > s.n) {
    throw SchemeError("U1 is " + s.u1.shape() + ", expected at most " + std::to_string(s.n) +
                      "x" + std::to_string(width));
  }
  if (s.u2.cols() != width || s.u2.rows() > s.n) {
    throw SchemeError("U2 is " + s.u2.shape() + ", expected at most " + std::to_string(s.n) +
                      "x" + std::to_string(width));
  }
  for (const Demand& d : kAllDemands) {
    const DeliveryMaps& maps = s.maps(d);
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t source_rows = i < 2 ? s.u1.rows() : s.u2.rows();
      expect_shape(maps[i], msg_rows, source_rows,
                   "D " + to_string(d) + " V" + std::to_string(i + 1));
    }
  }
}

BitMatrix message_functionals(const LinearScheme& s, const Demand& d, std::size_t i) {
  const BitMatrix& source = i < 2 ? s.u1 : s.u2;
  return mat_mul(s.maps(d).at(i), source);
}

LinearScheme memory_share(const LinearScheme& s1, const LinearScheme& s2, const Rational& lambda) {
  if (lambda < 0 || lambda > 1) {
    throw std::invalid_argument("sharing coefficient " + to_display(lambda) + " outside [0,1]");
  }
  validate(s1);
  validate(s2);

  const auto n1 = static_cast<std::int64_t>(s1.n);
  const auto n2 = static_cast<std::int64_t>(s2.n);
  const Rational rest = 1 - lambda;

  // lambda*n/n1 and (1-lambda)*n/n2 must both be integers; q*n1*n2 always works.
  const std::int64_t limit = lambda.denominator() * n1 * n2;
  std::int64_t n = 1;
  for (; n <= limit; ++n) {
    if ((lambda * n / n1).denominator() == 1 && (rest * n / n2).denominator() == 1) break;
  }
  const auto copies1 = static_cast<std::size_t>((lambda * n / n1).numerator());
  const auto copies2 = static_cast<std::size_t>((rest * n / n2).numerator());

  std::vector<Copy> copies;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < copies1; ++k, offset += s1.n) copies.push_back({&s1, offset});
  for (std::size_t k = 0; k < copies2; ++k, offset += s2.n) copies.push_back({&s2, offset});

  LinearScheme out;
  out.n = static_cast<std::size_t>(n);
  out.memory = lambda * s1.memory + rest * s2.memory;
  out.load = lambda * s1.load + rest * s2.load;
  out.z1 = stack_placements(copies, out.n, &LinearScheme::z1);
  out.z2 = stack_placements(copies, out.n, &LinearScheme::z2);
  out.u1 = stack_placements(copies, out.n, &LinearScheme::u1);
  out.u2 = stack_placements(copies, out.n, &LinearScheme::u2);
  for (const Demand& d : kAllDemands) {
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<const BitMatrix*> blocks;
      blocks.reserve(copies.size());
      for (const Copy& c : copies) blocks.push_back(&c.scheme->maps(d)[i]);
      out.delivery[index(d)][i] = block_diagonal(blocks);
    }
  }
  validate(out);
  return out;
}

LinearScheme scheme_for_memory(const Rational& m) {
  if (m < 0 || m > 2) {
    throw std::invalid_argument("M out of range [0,2]: " + to_display(m));
  }
  std::vector<LinearScheme> corners;
  for (Corner c : kAllCorners) corners.push_back(corner_scheme(c));
  std::sort(corners.begin(), corners.end(),
            [](const LinearScheme& a, const LinearScheme& b) { return a.memory < b.memory; });

  for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
    const LinearScheme& lo = corners[i];
    const LinearScheme& hi = corners[i + 1];
    if (m > hi.memory) continue;
    // m = lambda * lo.memory + (1 - lambda) * hi.memory
    const Rational lambda = (hi.memory - m) / (hi.memory - lo.memory);
    return memory_share(lo, hi, lambda);
  }
  return corners.back();  // unreachable: m <= 2 is caught by the last segment
}

}  // namespace layercache
