#include "layercache/phy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "layercache/verifier.hpp"

namespace layercache {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// The transmit signals are linear in the symbols, so their peak magnitude over
// the alphabet box is reached at one of its 16 vertices.
std::vector<Symbols> vertex_quadruples(int q) {
  const int hi = q - 1;
  std::vector<Symbols> out;
  for (int mask = 0; mask < 16; ++mask) {
    out.push_back({(mask & 1) ? hi : 0, (mask & 2) ? hi : 0, (mask & 4) ? hi : 0,
                   (mask & 8) ? hi : 0});
  }
  return out;
}

}  // namespace

void PhyConfig::validate() const {
  const Rational zero(0);
  if (h11 == zero || h12 == zero || h21 == zero || h22 == zero) {
    throw std::invalid_argument("all channel gains must be nonzero");
  }
  if (alphabet_size < 2 || alphabet_size > kMaxAlphabet) {
    throw std::invalid_argument("alphabet size must be in [2," + std::to_string(kMaxAlphabet) +
                                "], got " + std::to_string(alphabet_size));
  }
  if (!(power > 0) || !std::isfinite(power)) {
    throw std::invalid_argument("power must be positive and finite");
  }
}

PhyConfig parse_gains(std::string_view text) {
  std::vector<Rational> gains;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    gains.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (gains.size() != 4) {
    throw std::invalid_argument("expected four gains h11,h12,h21,h22, got " +
                                std::to_string(gains.size()));
  }
  PhyConfig cfg;
  cfg.h11 = gains[0];
  cfg.h12 = gains[1];
  cfg.h21 = gains[2];
  cfg.h22 = gains[3];
  return cfg;
}

std::pair<Rational, Rational> front_end(const PhyConfig& cfg, const Symbols& g) {
  return {cfg.h22 * g.g1 + cfg.h12 * g.g2, cfg.h21 * g.g3 + cfg.h11 * g.g4};
}

std::pair<Rational, Rational> channel_out(const PhyConfig& cfg, const Rational& x1,
                                          const Rational& x2) {
  return {cfg.h11 * x1 + cfg.h12 * x2, cfg.h21 * x1 + cfg.h22 * x2};
}

std::pair<double, double> channel_out_noisy(const PhyConfig& cfg, double x1, double x2,
                                            std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  const double y1 = to_double(cfg.h11) * x1 + to_double(cfg.h12) * x2 + noise(rng);
  const double y2 = to_double(cfg.h21) * x1 + to_double(cfg.h22) * x2 + noise(rng);
  return {y1, y2};
}

AlignedCoefficients aligned_coefficients(const PhyConfig& cfg) {
  return {
      {cfg.h11 * cfg.h22, cfg.h12 * cfg.h21, cfg.h11 * cfg.h12},
      {cfg.h12 * cfg.h21, cfg.h11 * cfg.h22, cfg.h21 * cfg.h22},
  };
}

AlignedTriple expected_triple(const Symbols& g, User user) {
  if (user == User::One) return {g.g1, g.g3, g.g2 + g.g4};
  return {g.g2, g.g4, g.g1 + g.g3};
}

Constellation::Constellation(const AlignedForm& form, int q) {
  points_.reserve(static_cast<std::size_t>(q) * q * (2 * q - 1));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      for (int s = 0; s <= 2 * q - 2; ++s) {
        const Rational v = form.at(a, b, s);
        points_.push_back({v, to_double(v), {a, b, s}});
      }
    }
  }
  std::stable_sort(points_.begin(), points_.end(),
                   [](const Point& x, const Point& y) { return x.value < y.value; });
}

std::optional<std::pair<AlignedTriple, AlignedTriple>> Constellation::collision() const {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].value == points_[i - 1].value) {
      return std::make_pair(points_[i - 1].triple, points_[i].triple);
    }
  }
  return std::nullopt;
}

std::optional<AlignedTriple> Constellation::lookup(const Rational& y) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), y,
                             [](const Point& p, const Rational& v) { return p.value < v; });
  if (it == points_.end() || it->value != y) return std::nullopt;
  return it->triple;
}

AlignedTriple Constellation::nearest(double y, double scale) const {
  // First point whose scaled value is >= y; the candidate below wins ties.
  auto it = std::lower_bound(points_.begin(), points_.end(), y,
                             [scale](const Point& p, double v) { return p.approx * scale < v; });
  if (it == points_.begin()) return it->triple;
  if (it == points_.end()) return std::prev(it)->triple;
  const double above = it->approx * scale - y;
  const double below = y - std::prev(it)->approx * scale;
  return below <= above ? std::prev(it)->triple : it->triple;
}

double Constellation::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].value == points_[i - 1].value) continue;
    gap = std::min(gap, to_double(points_[i].value - points_[i - 1].value));
  }
  return gap;
}

UniquenessCertificate uniqueness_certificate(const PhyConfig& cfg) {
  cfg.validate();
  const AlignedCoefficients coeffs = aligned_coefficients(cfg);
  const Constellation c1(coeffs.user1, cfg.alphabet_size);
  const Constellation c2(coeffs.user2, cfg.alphabet_size);
  return {!c1.collision().has_value(), !c2.collision().has_value(), c1.points().size()};
}

namespace {

Constellation checked_constellation(const PhyConfig& cfg, User user) {
  cfg.validate();
  const AlignedCoefficients coeffs = aligned_coefficients(cfg);
  Constellation c(user == User::One ? coeffs.user1 : coeffs.user2, cfg.alphabet_size);
  if (auto clash = c.collision()) {
    const auto& [x, y] = *clash;
    throw DemodError("aligned values of user " + std::to_string(static_cast<int>(user)) +
                     " collide: (" + std::to_string(x.direct_a) + "," + std::to_string(x.direct_b) +
                     "," + std::to_string(x.sum) + ") and (" + std::to_string(y.direct_a) + "," +
                     std::to_string(y.direct_b) + "," + std::to_string(y.sum) + ")");
  }
  return c;
}

}  // namespace

Demodulator::Demodulator(const PhyConfig& cfg)
    : user1_(checked_constellation(cfg, User::One)), user2_(checked_constellation(cfg, User::Two)) {}

const Constellation& Demodulator::constellation(User user) const {
  return user == User::One ? user1_ : user2_;
}

AlignedTriple Demodulator::exact(const Rational& y, User user) const {
  if (auto t = constellation(user).lookup(y)) return *t;
  throw DemodError("observation " + to_display(y) + " is not a constellation value of user " +
                   std::to_string(static_cast<int>(user)));
}

AlignedTriple Demodulator::nearest(double y, User user, double scale) const {
  return constellation(user).nearest(y, scale);
}

AlignedTriple demodulate(const PhyConfig& cfg, const Rational& y, User user) {
  return Demodulator(cfg).exact(y, user);
}

double transmit_scale(const PhyConfig& cfg) {
  cfg.validate();
  double peak = 0;
  for (const Symbols& g : vertex_quadruples(cfg.alphabet_size)) {
    const auto [x1, x2] = front_end(cfg, g);
    peak = std::max({peak, std::abs(to_double(x1)), std::abs(to_double(x2))});
  }
  return std::sqrt(cfg.power) / peak;
}

namespace {

double unscaled_min_gap(const PhyConfig& cfg) {
  const Demodulator demod(cfg);
  return std::min(demod.constellation(User::One).min_gap(),
                  demod.constellation(User::Two).min_gap());
}

}  // namespace

double min_constellation_gap(const PhyConfig& cfg) {
  return transmit_scale(cfg) * unscaled_min_gap(cfg);
}

double power_for_min_gap(const PhyConfig& cfg, double sigmas) {
  PhyConfig unit = cfg;
  unit.power = 1.0;
  const double scale_needed = sigmas / unscaled_min_gap(unit);
  const double unit_scale = transmit_scale(unit);
  const double ratio = scale_needed / unit_scale;
  return ratio * ratio;
}

DecodedFiles e2e_run(const LinearScheme& s, const Demand& d, const PhyConfig& cfg,
                     const BitVector& file_bits) {
  if (cfg.alphabet_size != 2) {
    throw DemodError("end-to-end runs use binary symbols (Q = 2), got Q = " +
                     std::to_string(cfg.alphabet_size));
  }
  const Demodulator demod(cfg);
  const MessageQuad messages = delivered_messages(s, d, file_bits);
  const std::size_t frames = messages.v1.size();

  ReceiverObservation obs1{BitVector(frames), BitVector(frames), BitVector(frames)};
  ReceiverObservation obs2 = obs1;
  for (std::size_t t = 0; t < frames; ++t) {
    const Symbols g{messages.v1[t], messages.v2[t], messages.v3[t], messages.v4[t]};
    const auto [x1, x2] = front_end(cfg, g);
    const auto [y1, y2] = channel_out(cfg, x1, x2);
    const AlignedTriple r1 = demod.exact(y1, User::One);
    const AlignedTriple r2 = demod.exact(y2, User::Two);
    obs1.direct_a[t] = static_cast<std::uint8_t>(r1.direct_a);
    obs1.direct_b[t] = static_cast<std::uint8_t>(r1.direct_b);
    obs1.xor_sum[t] = static_cast<std::uint8_t>(r1.sum % 2);
    obs2.direct_a[t] = static_cast<std::uint8_t>(r2.direct_a);
    obs2.direct_b[t] = static_cast<std::uint8_t>(r2.direct_b);
    obs2.xor_sum[t] = static_cast<std::uint8_t>(r2.sum % 2);
  }

  DecodedFiles out;
  for (User u : kAllUsers) {
    const Decodability dec = decodable(s, d, u);
    if (!dec) {
      throw NotDecodableError("user " + std::to_string(static_cast<int>(u)) +
                              " cannot decode demand " + to_string(d));
    }
    const BitVector cache_bits = mat_vec(s.receiver_cache(u), file_bits);
    const ReceiverObservation& obs = u == User::One ? obs1 : obs2;
    BitVector decoded = mat_vec(*dec.decoder, stack_observation(cache_bits, obs));
    (u == User::One ? out.user1 : out.user2) = std::move(decoded);
  }
  return out;
}

std::string MonteCarloResult::csv_header() { return "P,trials,ser_user1,ser_user2,seed"; }

std::string MonteCarloResult::csv_row() const {
  std::ostringstream out;
  out << std::setprecision(10) << power << ',' << trials << ',' << ser_user1 << ',' << ser_user2
      << ',' << seed;
  return out.str();
}

MonteCarloResult monte_carlo(const PhyConfig& cfg, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  const Demodulator demod(cfg);
  const double scale = transmit_scale(cfg);
  const double h11 = to_double(cfg.h11), h12 = to_double(cfg.h12);
  const double h21 = to_double(cfg.h21), h22 = to_double(cfg.h22);

  std::size_t errors1 = 0, errors2 = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t)));
    std::uniform_int_distribution<int> symbol(0, cfg.alphabet_size - 1);
    const Symbols g{symbol(rng), symbol(rng), symbol(rng), symbol(rng)};
    const double x1 = scale * (h22 * g.g1 + h12 * g.g2);
    const double x2 = scale * (h21 * g.g3 + h11 * g.g4);
    const auto [y1, y2] = channel_out_noisy(cfg, x1, x2, rng);
    if (demod.nearest(y1, User::One, scale) != expected_triple(g, User::One)) ++errors1;
    if (demod.nearest(y2, User::Two, scale) != expected_triple(g, User::Two)) ++errors2;
  }
  const auto n = static_cast<double>(trials);
  return {cfg.power, trials, static_cast<double>(errors1) / n, static_cast<double>(errors2) / n,
          seed};
}

}  // namespace layercache
