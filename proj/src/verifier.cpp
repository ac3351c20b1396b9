#include "layercache/verifier.hpp"

#include <sstream>
#include <vector>

namespace layercache {

BitMatrix observation_matrix(const LinearScheme& s, const Demand& d, User user) {
  const std::size_t k = s.message_rows();
  const std::size_t width = 2 * s.n;
  std::vector<BitMatrix> messages;
  messages.reserve(4);
  for (std::size_t i = 0; i < 4; ++i) messages.push_back(message_functionals(s, d, i));
  const BitMatrix stacked = vstack(messages, width);
  const BitMatrix observed = mat_mul(user_channel_matrix(user, k), stacked);
  return vstack(s.receiver_cache(user), observed);
}

BitMatrix file_selector(std::size_t n, File f) {
  BitMatrix sel(n, 2 * n);
  const std::size_t base = f == File::A ? 0 : n;
  for (std::size_t i = 0; i < n; ++i) sel.set(i, base + i, true);
  return sel;
}

Decodability decodable(const LinearScheme& s, const Demand& d, User user) {
  auto decoder = solve_left(observation_matrix(s, d, user), file_selector(s.n, demanded(d, user)));
  Decodability out;
  out.decodable = decoder.has_value();
  out.decoder = std::move(decoder);
  return out;
}

VerifyReport verify_all(const LinearScheme& s) {
  VerifyReport report;
  report.memory = s.memory;
  report.load = s.load;
  report.sum_load = s.sum_load();
  report.pass = true;
  std::size_t at = 0;
  for (const Demand& d : kAllDemands) {
    for (User u : kAllUsers) {
      const bool ok = decodable(s, d, u).decodable;
      report.cases[at++] = {d, u, ok};
      report.pass = report.pass && ok;
    }
  }
  return report;
}

std::string VerifyReport::render() const {
  std::ostringstream out;
  for (const CaseResult& c : cases) {
    out << "CASE " << to_string(c.demand) << ' ' << static_cast<int>(c.user) << ' '
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "M " << to_display(memory) << " (" << to_decimal(memory) << ")\n";
  out << "c " << to_display(load) << " (" << to_decimal(load) << ")\n";
  out << "rho " << to_display(sum_load) << " (" << to_decimal(sum_load) << ")\n";
  out << "RESULT " << (pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

MessageQuad delivered_messages(const LinearScheme& s, const Demand& d, const BitVector& file_bits) {
  if (file_bits.size() != 2 * s.n) {
    throw DimensionError("file bit vector has length " + std::to_string(file_bits.size()) +
                         ", expected " + std::to_string(2 * s.n));
  }
  const BitVector tx1 = mat_vec(s.u1, file_bits);
  const BitVector tx2 = mat_vec(s.u2, file_bits);
  const DeliveryMaps& maps = s.maps(d);
  return {mat_vec(maps[0], tx1), mat_vec(maps[1], tx1), mat_vec(maps[2], tx2), mat_vec(maps[3], tx2)};
}

BitVector stack_observation(const BitVector& cache_bits, const ReceiverObservation& obs) {
  BitVector out = cache_bits;
  out.insert(out.end(), obs.direct_a.begin(), obs.direct_a.end());
  out.insert(out.end(), obs.direct_b.begin(), obs.direct_b.end());
  out.insert(out.end(), obs.xor_sum.begin(), obs.xor_sum.end());
  return out;
}

BitVector decode_bits(const LinearScheme& s, const Demand& d, User user, const BitVector& file_bits) {
  const Decodability result = decodable(s, d, user);
  if (!result) {
    throw NotDecodableError("user " + std::to_string(static_cast<int>(user)) +
                            " cannot decode demand " + to_string(d));
  }
  const auto [obs1, obs2] = transmit(delivered_messages(s, d, file_bits));
  const ReceiverObservation& mine = user == User::One ? obs1 : obs2;
  const BitVector cache_bits = mat_vec(s.receiver_cache(user), file_bits);
  return mat_vec(*result.decoder, stack_observation(cache_bits, mine));
}

}  // namespace layercache
