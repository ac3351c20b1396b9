#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "layercache/scheme.hpp"

namespace layercache {

namespace {

// Parses a sum of file parts such as "A3+B1+B3" into a functional on the 2n
// file bits. Repeated parts cancel.
BitMatrix functional(std::size_t n, std::string_view expr) {
  BitMatrix row(1, 2 * n);
  std::size_t pos = 0;
  while (pos < expr.size()) {
    const std::size_t end = std::min(expr.find('+', pos), expr.size());
    const std::string_view term = expr.substr(pos, end - pos);
    if (term.size() < 2 || (term[0] != 'A' && term[0] != 'B')) {
      throw std::logic_error("bad file part '" + std::string(term) + "'");
    }
    const std::size_t part = std::stoul(std::string(term.substr(1)));
    if (part == 0 || part > n) throw std::logic_error("part index out of range: " + std::string(term));
    const std::size_t col = (term[0] == 'A' ? 0 : n) + part - 1;
    row.set(0, col, !row.get(0, col));
    pos = end + 1;
  }
  return row;
}

BitMatrix functionals(std::size_t n, const std::vector<std::string>& exprs) {
  std::vector<BitMatrix> rows;
  rows.reserve(exprs.size());
  for (const std::string& e : exprs) rows.push_back(functional(n, e));
  return vstack(rows, 2 * n);
}

using MessageTable = std::array<std::array<std::vector<std::string>, 4>, 4>;

// Each message is given as file-bit functionals; the delivery map is the
// unique combination of transmitter cache rows producing it.
void set_deliveries(LinearScheme& s, const MessageTable& table) {
  for (const Demand& d : kAllDemands) {
    for (std::size_t i = 0; i < 4; ++i) {
      const BitMatrix& source = i < 2 ? s.u1 : s.u2;
      const BitMatrix wanted = functionals(s.n, table[index(d)][i]);
      auto coeffs = solve_left(source, wanted);
      if (!coeffs) {
        throw std::logic_error("message V" + std::to_string(i + 1) + " for " + to_string(d) +
                               " is not computable from its transmitter cache");
      }
      s.delivery[index(d)][i] = std::move(*coeffs);
    }
  }
}

LinearScheme corner_m0() {
  LinearScheme s;
  s.n = 2;
  s.memory = 0;
  s.load = Rational(1, 2);
  s.z1 = BitMatrix(0, 4);
  s.z2 = BitMatrix(0, 4);
  s.u1 = functionals(2, {"A1", "B1"});
  s.u2 = functionals(2, {"A2", "B2"});

  // Demand (W, W'): V1 = W_1, V2 = W'_1, V3 = W_2, V4 = W'_2.
  MessageTable table;
  for (const Demand& d : kAllDemands) {
    const std::string w(1, file_tag(d.w1));
    const std::string w2(1, file_tag(d.w2));
    table[index(d)] = {{{w + "1"}, {w2 + "1"}, {w + "2"}, {w2 + "2"}}};
  }
  set_deliveries(s, table);
  return s;
}

LinearScheme corner_m13() {
  LinearScheme s;
  s.n = 3;
  s.memory = Rational(1, 3);
  s.load = Rational(1, 3);
  s.z1 = functionals(3, {"A1+B1"});
  s.z2 = functionals(3, {"A2+B2"});
  s.u1 = functionals(3, {"A3", "B1+B3", "B2+B3"});
  s.u2 = functionals(3, {"B3", "A1+A3", "A2+A3"});

  MessageTable table;
  table[0] = {{{"A3"}, {"A3"}, {"A1+A3"}, {"A2+A3"}}};        // (A,A)
  table[1] = {{{"A3"}, {"B1+B3"}, {"A2+A3"}, {"B3"}}};        // (A,B)
  table[2] = {{{"B2+B3"}, {"A3"}, {"B3"}, {"A1+A3"}}};        // (B,A)
  table[3] = {{{"B1+B3"}, {"B2+B3"}, {"B3"}, {"B3"}}};        // (B,B)
  set_deliveries(s, table);
  return s;
}

LinearScheme corner_m45() {
  LinearScheme s;
  s.n = 5;
  s.memory = Rational(4, 5);
  s.load = Rational(1, 5);

  const std::string S[] = {"B2+A4", "A1+B3", "B1+B3", "B2+B4"};
  const std::string T[] = {"A1+A3", "A2+A4", "B1+A3", "A2+B4"};

  s.z1 = functionals(5, {"A1", "A2", "B1", "B2"});
  s.z2 = functionals(5, {"A3", "A4", "B3", "B4"});
  s.u1 = functionals(5, {"A5", "B5+" + S[0], "B5+" + S[1], "B5+" + S[2], "B5+" + S[3]});
  s.u2 = functionals(5, {"B5", "A5+" + T[0], "A5+" + T[1], "A5+" + T[2], "A5+" + T[3]});

  MessageTable table;
  table[0] = {{{"A5"}, {"A5"}, {"A5+" + T[0]}, {"A5+" + T[1]}}};         // (A,A)
  table[1] = {{{"A5"}, {"B5+" + S[0]}, {"A5+" + T[2]}, {"B5"}}};         // (A,B)
  table[2] = {{{"B5+" + S[1]}, {"A5"}, {"B5"}, {"A5+" + T[3]}}};         // (B,A)
  table[3] = {{{"B5+" + S[2]}, {"B5+" + S[3]}, {"B5"}, {"B5"}}};         // (B,B)
  set_deliveries(s, table);
  return s;
}

LinearScheme corner_m2() {
  LinearScheme s;
  s.n = 1;
  s.memory = 2;
  s.load = 0;
  s.z1 = BitMatrix::identity(2);
  s.z2 = BitMatrix::identity(2);
  s.u1 = functionals(1, {"A1"});
  s.u2 = functionals(1, {"B1"});
  for (auto& maps : s.delivery) {
    maps = {BitMatrix(0, 1), BitMatrix(0, 1), BitMatrix(0, 1), BitMatrix(0, 1)};
  }
  return s;
}

}  // namespace

std::string to_string(Corner c) {
  switch (c) {
    case Corner::M0: return "M0";
    case Corner::M13: return "M13";
    case Corner::M45: return "M45";
    case Corner::M2: return "M2";
  }
  return "?";
}

Corner parse_corner(std::string_view name) {
  for (Corner c : kAllCorners) {
    if (name == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown corner scheme '" + std::string(name) +
                              "' (expected M0, M13, M45 or M2)");
}

LinearScheme corner_scheme(Corner c) {
  LinearScheme s;
  switch (c) {
    case Corner::M0: s = corner_m0(); break;
    case Corner::M13: s = corner_m13(); break;
    case Corner::M45: s = corner_m45(); break;
    case Corner::M2: s = corner_m2(); break;
  }
  validate(s);
  return s;
}

}  // namespace layercache
