#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "layercache/netchannel.hpp"
#include "layercache/rational.hpp"
#include "layercache/scheme.hpp"

namespace layercache {

// Two-user channel with rational gains h_ij (receiver i, transmitter j), a
// one-dimensional integer lattice alphabet {0, ..., Q-1} per stream, and a
// transmit power budget used only by the noisy path. Noise variance is 1.
struct PhyConfig {
  Rational h11{1}, h12{1}, h21{1}, h22{1};
  int alphabet_size = 2;
  double power = 1.0;

  // Throws std::invalid_argument on zero gains, Q outside [2, kMaxAlphabet]
  // or a nonpositive power.
  void validate() const;

  static constexpr int kMaxAlphabet = 128;
};

// Parses "h11,h12,h21,h22" with each gain as p/q or an integer.
PhyConfig parse_gains(std::string_view text);

// One lattice symbol per message stream; g1, g2 leave transmitter 1.
struct Symbols {
  int g1 = 0, g2 = 0, g3 = 0, g4 = 0;
};

// x1 = h22 g1 + h12 g2, x2 = h21 g3 + h11 g4.
std::pair<Rational, Rational> front_end(const PhyConfig& cfg, const Symbols& g);

// Noiseless receiver outputs y_i = h_i1 x1 + h_i2 x2.
std::pair<Rational, Rational> channel_out(const PhyConfig& cfg, const Rational& x1,
                                          const Rational& x2);

// Same map in floating point with unit-variance Gaussian noise drawn from rng.
std::pair<double, double> channel_out_noisy(const PhyConfig& cfg, double x1, double x2,
                                            std::mt19937_64& rng);

// y = direct_a * a + direct_b * b + sum * s, where for user 1 (a, b, s) is
// (g1, g3, g2 + g4) and for user 2 it is (g2, g4, g1 + g3).
struct AlignedForm {
  Rational direct_a, direct_b, sum;

  Rational at(int a, int b, int s) const { return direct_a * a + direct_b * b + sum * s; }
};

struct AlignedCoefficients {
  AlignedForm user1, user2;
};

AlignedCoefficients aligned_coefficients(const PhyConfig& cfg);

struct AlignedTriple {
  int direct_a = 0, direct_b = 0, sum = 0;

  friend bool operator==(const AlignedTriple&, const AlignedTriple&) = default;
};

// The triple a receiver should see for the given symbols.
AlignedTriple expected_triple(const Symbols& g, User user);

// Every value an aligned form takes over a, b in [0, Q) and s in [0, 2Q-2],
// sorted ascending.
class Constellation {
 public:
  struct Point {
    Rational value;
    double approx;
    AlignedTriple triple;
  };

  Constellation(const AlignedForm& form, int alphabet_size);

  const std::vector<Point>& points() const { return points_; }

  // Two distinct triples mapping to the same value, if any.
  std::optional<std::pair<AlignedTriple, AlignedTriple>> collision() const;

  std::optional<AlignedTriple> lookup(const Rational& y) const;

  // Nearest of the points scaled by `scale`; ties go to the smaller value.
  AlignedTriple nearest(double y, double scale) const;

  // Smallest distance between adjacent distinct values (unscaled).
  double min_gap() const;

 private:
  std::vector<Point> points_;
};

struct UniquenessCertificate {
  bool user1 = false;
  bool user2 = false;
  std::size_t points_per_user = 0;

  bool pass() const { return user1 && user2; }
};

// Exhaustive injectivity check of both users' aligned forms.
UniquenessCertificate uniqueness_certificate(const PhyConfig& cfg);

class DemodError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precomputed constellations for one configuration. Construction throws
// DemodError when the uniqueness certificate fails.
class Demodulator {
 public:
  explicit Demodulator(const PhyConfig& cfg);

  // Exact inversion; throws DemodError when y is not a constellation value.
  AlignedTriple exact(const Rational& y, User user) const;

  AlignedTriple nearest(double y, User user, double scale) const;

  const Constellation& constellation(User user) const;

 private:
  Constellation user1_, user2_;
};

AlignedTriple demodulate(const PhyConfig& cfg, const Rational& y, User user);

// Common amplitude factor so that the largest |x_i| over all symbol
// quadruples has square equal to the power budget.
double transmit_scale(const PhyConfig& cfg);

// Smallest adjacent gap of either user's scaled constellation, in noise
// standard deviations.
double min_constellation_gap(const PhyConfig& cfg);

// Power at which min_constellation_gap equals `sigmas`.
double power_for_min_gap(const PhyConfig& cfg, double sigmas);

struct DecodedFiles {
  BitVector user1;
  BitVector user2;
};

// Carries the scheme's messages over the noiseless aligned channel with
// binary symbols, one network-layer bit of each V_i per frame, recovers each
// xor from the demodulated integer sum mod 2, then decodes at both users.
// Requires Q = 2 and a passing certificate (DemodError otherwise) and a
// decodable scheme (NotDecodableError otherwise).
DecodedFiles e2e_run(const LinearScheme& s, const Demand& d, const PhyConfig& cfg,
                     const BitVector& file_bits);

struct MonteCarloResult {
  double power = 0;
  std::size_t trials = 0;
  double ser_user1 = 0;
  double ser_user2 = 0;
  std::uint64_t seed = 0;

  static std::string csv_header();  // "P,trials,ser_user1,ser_user2,seed"
  std::string csv_row() const;
};

// Uniform symbols, power-normalized transmit signals, unit noise, nearest
// value demodulation. A trial is an error for a user when any component of
// its triple is wrong. Trial t draws from its own generator seeded from
// (seed, t), so results do not depend on evaluation order.
MonteCarloResult monte_carlo(const PhyConfig& cfg, std::size_t trials, std::uint64_t seed);

}  // namespace layercache
