#include <doctest.h>

#include <set>

#include "layercache/phy.hpp"
#include "layercache/verifier.hpp"
#include "oracles.hpp"

using namespace layercache;

namespace {

PhyConfig gains_2357(int q = 2) {
  PhyConfig cfg = parse_gains("2,3,5,7");
  cfg.alphabet_size = q;
  return cfg;
}

Symbols quad(int bits) { return {bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1}; }

// Distinct values of da*a + db*b + ds*s over the symbol box, counted
// independently of the constellation code.
std::size_t distinct_values(std::int64_t da, std::int64_t db, std::int64_t ds, int q) {
  std::set<std::int64_t> values;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int s = 0; s <= 2 * q - 2; ++s) values.insert(da * a + db * b + ds * s);
  return values.size();
}

}  // namespace

TEST_SUITE("phy") {

TEST_CASE("configuration parsing and validation") {
  const PhyConfig cfg = parse_gains("2,3/2,-5,7");
  CHECK(cfg.h12 == Rational(3, 2));
  CHECK(cfg.h21 == Rational(-5));
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS(parse_gains("1,2,3"));
  CHECK_THROWS(parse_gains("1,2,3,x"));
  CHECK_THROWS_AS(parse_gains("1,0,3,4").validate(), std::invalid_argument);
  PhyConfig bad = gains_2357(1);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = gains_2357();
  bad.power = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("front end") {
  const PhyConfig cfg = gains_2357();
  CHECK(front_end(cfg, {1, 0, 0, 0}) == std::pair{Rational(7), Rational(0)});
  CHECK(front_end(cfg, {1, 1, 1, 1}) == std::pair{Rational(10), Rational(7)});
  CHECK(front_end(cfg, {0, 0, 0, 0}) == std::pair{Rational(0), Rational(0)});
}

TEST_CASE("noiseless channel outputs") {
  const PhyConfig cfg = gains_2357();
  auto y = [&](Symbols g) {
    const auto [x1, x2] = front_end(cfg, g);
    return channel_out(cfg, x1, x2);
  };
  CHECK(y({1, 0, 1, 0}).first == Rational(29));
  CHECK(y({0, 1, 0, 1}).first == Rational(12));
  CHECK(channel_out(cfg, Rational(0), Rational(0)) == std::pair{Rational(0), Rational(0)});
}

TEST_CASE("aligned coefficients") {
  const AlignedCoefficients c = aligned_coefficients(gains_2357());
  CHECK(c.user1.direct_a == Rational(14));
  CHECK(c.user1.direct_b == Rational(15));
  CHECK(c.user1.sum == Rational(6));
  CHECK(c.user2.direct_a == Rational(15));
  CHECK(c.user2.direct_b == Rational(14));
  CHECK(c.user2.sum == Rational(35));
  const AlignedCoefficients ones = aligned_coefficients(parse_gains("1,1,1,1"));
  CHECK(ones.user1.direct_a == Rational(1));
  CHECK(ones.user1.direct_b == Rational(1));
  CHECK(ones.user1.sum == Rational(1));
}

TEST_CASE("uniqueness certificate") {
  const PhyConfig cfg = gains_2357();
  const UniquenessCertificate cert = uniqueness_certificate(cfg);
  CHECK(cert.pass());
  CHECK(cert.points_per_user == 12);

  const Constellation user1(aligned_coefficients(cfg).user1, 2);
  std::vector<std::int64_t> values;
  for (const auto& p : user1.points())
    values.push_back(p.value.numerator());
  CHECK(values == std::vector<std::int64_t>{0, 6, 12, 14, 15, 20, 21, 26, 27, 29, 35, 41});

  const PhyConfig ones = parse_gains("1,1,1,1");
  CHECK_FALSE(uniqueness_certificate(ones).pass());
  const auto clash = Constellation(aligned_coefficients(ones).user1, 2).collision();
  REQUIRE(clash);
  CHECK_THROWS_AS(Demodulator{ones}, DemodError);
}

TEST_CASE("certificate size against enumeration for larger alphabets") {
  for (int q : {2, 3, 4, 5}) {
    const UniquenessCertificate cert = uniqueness_certificate(gains_2357(q));
    const std::size_t expected = static_cast<std::size_t>(q * q * (2 * q - 1));
    CHECK(cert.points_per_user == expected);
    CHECK(cert.user1 == (distinct_values(14, 15, 6, q) == expected));
    CHECK(cert.user2 == (distinct_values(15, 14, 35, q) == expected));
  }
  CHECK(uniqueness_certificate(gains_2357(3)).pass());
}

TEST_CASE("exact demodulation") {
  const PhyConfig cfg = gains_2357();
  CHECK(demodulate(cfg, Rational(29), User::One) == AlignedTriple{1, 1, 0});
  CHECK(demodulate(cfg, Rational(0), User::One) == AlignedTriple{0, 0, 0});
  CHECK(demodulate(cfg, Rational(21), User::One) == AlignedTriple{0, 1, 1});
  CHECK_THROWS_AS(demodulate(cfg, Rational(1), User::One), DemodError);
  CHECK_THROWS_AS(demodulate(cfg, Rational(29, 2), User::One), DemodError);
}

TEST_CASE("nearest-value demodulation breaks ties low") {
  const Demodulator demod(gains_2357());
  CHECK(demod.nearest(28.6, User::One, 1.0) == AlignedTriple{1, 1, 0});
  CHECK(demod.nearest(3.0, User::One, 1.0) == AlignedTriple{0, 0, 0});  // midway 0 and 6
  CHECK(demod.nearest(-100.0, User::One, 1.0) == AlignedTriple{0, 0, 0});
  CHECK(demod.nearest(58.0, User::One, 2.0) == AlignedTriple{1, 1, 0});  // 29 scaled by 2
}

TEST_CASE("property: aligned forms and round trip on all binary quadruples") {
  for (const PhyConfig& cfg : {gains_2357(), parse_gains("3/2,-2,5,1/3"), parse_gains("1,1,1,1")}) {
    const AlignedCoefficients c = aligned_coefficients(cfg);
    const bool unique = uniqueness_certificate(cfg).pass();
    for (int bits = 0; bits < 16; ++bits) {
      const Symbols g = quad(bits);
      const auto [x1, x2] = front_end(cfg, g);
      const auto [y1, y2] = channel_out(cfg, x1, x2);
      CHECK(y1 == c.user1.at(g.g1, g.g3, g.g2 + g.g4));
      CHECK(y2 == c.user2.at(g.g2, g.g4, g.g1 + g.g3));
      if (!unique) continue;
      CHECK(demodulate(cfg, y1, User::One) == AlignedTriple{g.g1, g.g3, g.g2 + g.g4});
      CHECK(demodulate(cfg, y2, User::Two) == AlignedTriple{g.g2, g.g4, g.g1 + g.g3});
      CHECK(expected_triple(g, User::Two) == AlignedTriple{g.g2, g.g4, g.g1 + g.g3});
    }
  }
}

TEST_CASE("property: integer sums reduce to xor") {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK((a + b) % 2 == (a ^ b));
}

TEST_CASE("end-to-end on known files") {
  const PhyConfig cfg = gains_2357();
  const LinearScheme s = corner_scheme(Corner::M13);
  const BitVector files = {1, 0, 1, 1, 1, 0};
  const DecodedFiles got = e2e_run(s, {File::A, File::B}, cfg, files);
  CHECK(got.user1 == BitVector{1, 0, 1});
  CHECK(got.user2 == BitVector{1, 1, 0});
  for (const Demand& d : kAllDemands) {
    const DecodedFiles zero = e2e_run(s, d, cfg, BitVector(6, 0));
    CHECK(zero.user1 == BitVector(3, 0));
    CHECK(zero.user2 == BitVector(3, 0));
  }
}

TEST_CASE("end-to-end preconditions") {
  const LinearScheme s = corner_scheme(Corner::M13);
  CHECK_THROWS_AS(e2e_run(s, {}, gains_2357(3), BitVector(6, 0)), DemodError);
  CHECK_THROWS_AS(e2e_run(s, {}, parse_gains("1,1,1,1"), BitVector(6, 0)), DemodError);
  LinearScheme broken = s;
  broken.z1 = BitMatrix(1, 6);
  CHECK_THROWS_AS(e2e_run(broken, {File::A, File::B}, gains_2357(), BitVector(6, 0)), NotDecodableError);
}

TEST_CASE("property: end-to-end matches the network-layer decoder") {
  const PhyConfig cfg = gains_2357();
  oracle::Rng rng(50);
  for (Corner c : {Corner::M0, Corner::M13, Corner::M45}) {
    const LinearScheme s = corner_scheme(c);
    for (const Demand& d : kAllDemands) {
      for (int trial = 0; trial < 50; ++trial) {
        const BitVector files = oracle::random_bits(rng, 2 * s.n);
        const DecodedFiles got = e2e_run(s, d, cfg, files);
        CHECK(got.user1 == decode_bits(s, d, User::One, files));
        CHECK(got.user2 == decode_bits(s, d, User::Two, files));
        CHECK(got.user1 == mat_vec(file_selector(s.n, d.w1), files));
        CHECK(got.user2 == mat_vec(file_selector(s.n, d.w2), files));
      }
    }
  }
}

TEST_CASE("power normalization") {
  PhyConfig cfg = gains_2357();
  cfg.power = 4.0;
  // Largest transmit amplitude over binary symbols is |x1| = 7 + 3 = 10.
  CHECK(transmit_scale(cfg) == doctest::Approx(2.0 / 10.0));
  const double p = power_for_min_gap(cfg, 20.0);
  cfg.power = p;
  CHECK(min_constellation_gap(cfg) == doctest::Approx(20.0));
}

TEST_CASE("monte carlo at high power") {
  PhyConfig cfg = gains_2357();
  cfg.power = power_for_min_gap(cfg, 20.0);
  const MonteCarloResult r = monte_carlo(cfg, 10000, 7);
  CHECK(r.trials == 10000);
  CHECK(r.ser_user1 <= 1e-3);
  CHECK(r.ser_user2 <= 1e-3);
}

TEST_CASE("monte carlo error rate falls with power") {
  PhyConfig low = gains_2357();
  low.power = power_for_min_gap(low, 1.0);
  PhyConfig high = low;
  high.power = power_for_min_gap(high, 6.0);
  const MonteCarloResult a = monte_carlo(low, 10000, 99);
  const MonteCarloResult b = monte_carlo(high, 10000, 99);
  CHECK(a.ser_user1 > 0);
  CHECK(b.ser_user1 <= a.ser_user1);
  CHECK(b.ser_user2 <= a.ser_user2);
}

TEST_CASE("monte carlo is deterministic") {
  PhyConfig cfg = gains_2357();
  cfg.power = power_for_min_gap(cfg, 2.0);
  const MonteCarloResult a = monte_carlo(cfg, 1, 5);
  const MonteCarloResult b = monte_carlo(cfg, 1, 5);
  CHECK(a.csv_row() == b.csv_row());
  CHECK(monte_carlo(cfg, 2000, 5).csv_row() == monte_carlo(cfg, 2000, 5).csv_row());
  CHECK(MonteCarloResult::csv_header() == "P,trials,ser_user1,ser_user2,seed");
  CHECK_THROWS(monte_carlo(cfg, 0, 5));
}

}  // TEST_SUITE
