#include <doctest.h>

#include <string>
#include <vector>

#include "layercache/scheme.hpp"
#include "layercache/tradeoff.hpp"
#include "layercache/verifier.hpp"
#include "oracles.hpp"

using namespace layercache;

namespace {

using Column = std::array<std::string, 4>;  // V1..V4 for one demand

// Transcribed delivery columns, demand order AA, AB, BA, BB.
const std::array<Column, 4> kM13 = {{
    {"A3", "A3", "A1+A3", "A2+A3"},
    {"A3", "B1+B3", "A2+A3", "B3"},
    {"B2+B3", "A3", "B3", "A1+A3"},
    {"B1+B3", "B2+B3", "B3", "B3"},
}};

// S1 = B2+A4, S2 = A1+B3, S3 = B1+B3, S4 = B2+B4
// T1 = A1+A3, T2 = A2+A4, T3 = B1+A3, T4 = A2+B4
const std::array<Column, 4> kM45 = {{
    {"A5", "A5", "A5+A1+A3", "A5+A2+A4"},
    {"A5", "B5+B2+A4", "A5+B1+A3", "B5"},
    {"B5+A1+B3", "A5", "B5", "A5+A2+B4"},
    {"B5+B1+B3", "B5+B2+B4", "B5", "B5"},
}};

const std::array<Column, 4> kM0 = {{
    {"A1", "A1", "A2", "A2"},
    {"A1", "B1", "A2", "B2"},
    {"B1", "A1", "B2", "A2"},
    {"B1", "B1", "B2", "B2"},
}};

void check_table(const LinearScheme& s, const std::array<Column, 4>& table) {
  for (const Demand& d : kAllDemands) {
    for (std::size_t i = 0; i < 4; ++i) {
      INFO("demand " << to_string(d) << " V" << i + 1);
      CHECK(message_functionals(s, d, i) == oracle::functionals(s.n, {table[index(d)][i]}));
    }
  }
}

}  // namespace

TEST_SUITE("schemes") {

TEST_CASE("corner metrics") {
  const std::array<std::pair<Rational, Rational>, 4> expected = {{
      {Rational(0), Rational(2)},
      {Rational(1, 3), Rational(4, 3)},
      {Rational(4, 5), Rational(4, 5)},
      {Rational(2), Rational(0)},
  }};
  for (std::size_t i = 0; i < 4; ++i) {
    const LinearScheme s = corner_scheme(kAllCorners[i]);
    CHECK_NOTHROW(validate(s));
    CHECK(s.memory == expected[i].first);
    CHECK(s.sum_load() == expected[i].second);
    CHECK(s.metrics() == TradeoffPoint{expected[i].first, expected[i].second});
  }
}

TEST_CASE("corner names") {
  for (Corner c : kAllCorners) CHECK(parse_corner(to_string(c)) == c);
  CHECK_THROWS_AS(parse_corner("M3"), std::invalid_argument);
}

TEST_CASE("zero-memory placement and delivery") {
  const LinearScheme s = corner_scheme(Corner::M0);
  CHECK(s.n == 2);
  CHECK(s.z1.shape() == "0x4");
  CHECK(s.u1 == oracle::functionals(2, {"A1", "B1"}));
  CHECK(s.u2 == oracle::functionals(2, {"A2", "B2"}));
  check_table(s, kM0);
}

TEST_CASE("one-third memory placement and delivery") {
  const LinearScheme s = corner_scheme(Corner::M13);
  CHECK(s.z1 == oracle::functionals(3, {"A1+B1"}));
  CHECK(s.z2 == oracle::functionals(3, {"A2+B2"}));
  CHECK(s.u1 == oracle::functionals(3, {"A3", "B1+B3", "B2+B3"}));
  CHECK(s.u2 == oracle::functionals(3, {"B3", "A1+A3", "A2+A3"}));
  check_table(s, kM13);
  // (A,B): V1 = A3, V2 = B1+B3, V3 = A2+A3, V4 = B3.
  const Demand ab{File::A, File::B};
  CHECK(message_functionals(s, ab, 1) == oracle::functionals(3, {"B1+B3"}));
  CHECK(message_functionals(s, ab, 2) == oracle::functionals(3, {"A2+A3"}));
}

TEST_CASE("four-fifths memory placement and delivery") {
  const LinearScheme s = corner_scheme(Corner::M45);
  CHECK(s.z1 == oracle::functionals(5, {"A1", "A2", "B1", "B2"}));
  CHECK(s.z2 == oracle::functionals(5, {"A3", "A4", "B3", "B4"}));
  CHECK(s.u1 == oracle::functionals(5, {"A5", "B5+B2+A4", "B5+A1+B3", "B5+B1+B3", "B5+B2+B4"}));
  CHECK(s.u2 == oracle::functionals(5, {"B5", "A5+A1+A3", "A5+A2+A4", "A5+B1+A3", "A5+A2+B4"}));
  check_table(s, kM45);
  // (B,A): V1 = B5+S2, V2 = A5, V3 = B5, V4 = A5+T4, each one row of U.
  const DeliveryMaps& ba = s.maps({File::B, File::A});
  CHECK(ba[0] == BitMatrix::from_rows({"00100"}));
  CHECK(ba[1] == BitMatrix::from_rows({"10000"}));
  CHECK(ba[2] == BitMatrix::from_rows({"10000"}));
  CHECK(ba[3] == BitMatrix::from_rows({"00001"}));
}

TEST_CASE("full-memory scheme sends nothing") {
  const LinearScheme s = corner_scheme(Corner::M2);
  CHECK(s.load == Rational(0));
  CHECK(s.z1 == BitMatrix::identity(2));
  CHECK(s.z2 == BitMatrix::identity(2));
  for (const Demand& d : kAllDemands)
    for (const BitMatrix& m : s.maps(d)) CHECK(m.rows() == 0);
}

TEST_CASE("validate rejects shape and budget violations") {
  LinearScheme s = corner_scheme(Corner::M13);
  s.z1 = BitMatrix(2, 6);
  CHECK_THROWS_AS(validate(s), SchemeError);

  s = corner_scheme(Corner::M13);
  s.u1 = BitMatrix(4, 6);
  CHECK_THROWS_AS(validate(s), SchemeError);

  s = corner_scheme(Corner::M13);
  s.delivery[1][2] = BitMatrix(1, 2);
  CHECK_THROWS_AS(validate(s), SchemeError);

  s = corner_scheme(Corner::M13);
  s.memory = Rational(1, 2);  // 3/2 cache rows
  CHECK_THROWS_AS(validate(s), SchemeError);

  // Smaller transmitter caches are allowed.
  s = corner_scheme(Corner::M2);
  s.u1 = BitMatrix(0, 2);
  s.u2 = BitMatrix(0, 2);
  for (auto& maps : s.delivery) maps = {BitMatrix(0, 0), BitMatrix(0, 0), BitMatrix(0, 0), BitMatrix(0, 0)};
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("memory sharing between the middle corners") {
  const LinearScheme s =
      memory_share(corner_scheme(Corner::M13), corner_scheme(Corner::M45), Rational(1, 2));
  CHECK(s.n == 30);
  CHECK(s.memory == Rational(17, 30));
  CHECK(s.load == Rational(4, 15));
  CHECK(verify_all(s).pass);
  // The first copy of the first scheme sits on part 1.
  CHECK(s.z1.row_range(0, 1) == oracle::functionals(30, {"A1+B1"}));
  // The first copy of the second scheme starts after 5 copies of width 3.
  CHECK(s.z1.row_range(5, 1) == oracle::functionals(30, {"A16"}));
}

TEST_CASE("memory sharing toward the zero-memory corner") {
  const LinearScheme s =
      memory_share(corner_scheme(Corner::M0), corner_scheme(Corner::M13), Rational(1, 2));
  CHECK(s.memory == Rational(1, 6));
  CHECK(s.load == Rational(5, 12));
  CHECK(s.sum_load() == Rational(5, 3));
  CHECK(s.sum_load() == rho_star(Rational(1, 6)));
}

TEST_CASE("memory sharing edge coefficients") {
  const LinearScheme m13 = corner_scheme(Corner::M13);
  const LinearScheme m45 = corner_scheme(Corner::M45);
  CHECK(memory_share(m13, m45, Rational(1)) == m13);
  CHECK(memory_share(m13, m45, Rational(0)) == m45);
  CHECK_THROWS_AS(memory_share(m13, m45, Rational(-1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(memory_share(m13, m45, Rational(4, 3)), std::invalid_argument);
}

TEST_CASE("property: sharing metrics are the convex combination") {
  for (Corner a : kAllCorners) {
    for (Corner b : kAllCorners) {
      const LinearScheme s1 = corner_scheme(a), s2 = corner_scheme(b);
      for (std::int64_t q = 1; q <= 12; ++q) {
        for (std::int64_t p = 0; p <= q; ++p) {
          const Rational lambda(p, q);
          if (lambda.denominator() != q) continue;  // each value once
          const LinearScheme s = memory_share(s1, s2, lambda);
          CHECK(s.memory == lambda * s1.memory + (1 - lambda) * s2.memory);
          CHECK(s.load == lambda * s1.load + (1 - lambda) * s2.load);
        }
      }
    }
  }
}

TEST_CASE("scheme for a given memory") {
  CHECK(scheme_for_memory(Rational(1, 3)) == corner_scheme(Corner::M13));
  CHECK(scheme_for_memory(Rational(1)).sum_load() == Rational(2, 3));
  CHECK(scheme_for_memory(Rational(1, 6)).sum_load() == Rational(5, 3));
  CHECK(scheme_for_memory(Rational(0)) == corner_scheme(Corner::M0));
  CHECK(scheme_for_memory(Rational(2)).sum_load() == Rational(0));
  CHECK_THROWS_AS(scheme_for_memory(Rational(3)), std::invalid_argument);
  CHECK_THROWS_AS(scheme_for_memory(Rational(-1, 5)), std::invalid_argument);
}

TEST_CASE("property: schemes on the 1/30 grid verify") {
  for (std::int64_t k = 0; k <= 60; ++k) {
    const Rational m(k, 30);
    const LinearScheme s = scheme_for_memory(m);
    INFO("M = " << to_display(m));
    CHECK(s.memory == m);
    CHECK(verify_all(s).pass);
  }
}

TEST_CASE("scheme text header") {
  const std::string text = write_scheme(corner_scheme(Corner::M13));
  CHECK(text.rfind("n 3\nM 1/3\nc 1/3\n", 0) == 0);
  CHECK(text.back() == '\n');
  CHECK(write_scheme(corner_scheme(Corner::M2)).rfind("n 1\nM 2/1\nc 0/1\n", 0) == 0);
}

TEST_CASE("scheme text round trip") {
  for (Corner c : kAllCorners) {
    const LinearScheme s = corner_scheme(c);
    CHECK(read_scheme(write_scheme(s)) == s);
  }
  const LinearScheme shared = scheme_for_memory(Rational(17, 30));
  CHECK(read_scheme(write_scheme(shared)) == shared);
}

TEST_CASE("scheme text accepts comments") {
  std::string text = "# corner\n" + write_scheme(corner_scheme(Corner::M13));
  text.insert(text.find("Z1"), "  # receiver caches follow\n\n");
  CHECK(read_scheme(text) == corner_scheme(Corner::M13));
}

TEST_CASE("tampered row width is reported at its line") {
  std::string text = write_scheme(corner_scheme(Corner::M45));
  // Line 5 is the only Z1 row after "n", "M", "c", "Z1 4".
  const std::size_t z1 = text.find("Z1 4\n") + 5;
  text.insert(z1, "0");
  try {
    (void)read_scheme(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).rfind("line 5:", 0) == 0);
  }
}

TEST_CASE("malformed scheme text") {
  const std::string good = write_scheme(corner_scheme(Corner::M13));
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(read_scheme(replaced("n 3", "x 3")), ParseError);
  CHECK_THROWS_AS(read_scheme(replaced("M 1/3", "M 1/2")), ParseError);  // 3/2 rows
  CHECK_THROWS_AS(read_scheme(replaced("c 1/3", "c 1/4")), ParseError);
  CHECK_THROWS_AS(read_scheme(replaced("Z1 1\n100100", "Z1 1\n100200")), ParseError);
  CHECK_THROWS_AS(read_scheme(replaced("D AB V1", "D AC V1")), ParseError);
  CHECK_THROWS_AS(read_scheme(good + "extra\n"), ParseError);
  CHECK_THROWS_AS(read_scheme(good.substr(0, good.size() / 2)), ParseError);
  CHECK_THROWS_AS(read_scheme(""), ParseError);
}

}  // TEST_SUITE
