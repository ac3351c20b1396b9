#include "layercache/netchannel.hpp"

namespace layercache {

std::size_t index(const Demand& d) {
  return (d.w1 == File::B ? 2U : 0U) + (d.w2 == File::B ? 1U : 0U);
}

char file_tag(File f) { return f == File::A ? 'A' : 'B'; }

std::string to_string(const Demand& d) { return {file_tag(d.w1), file_tag(d.w2)}; }

std::optional<Demand> parse_demand(std::string_view tag) {
  for (const Demand& d : kAllDemands) {
    if (tag == to_string(d)) return d;
  }
  return std::nullopt;
}

std::pair<ReceiverObservation, ReceiverObservation> transmit(const MessageQuad& m) {
  const std::size_t len = m.v1.size();
  if (m.v2.size() != len || m.v3.size() != len || m.v4.size() != len) {
    throw DimensionError("message lengths differ: " + std::to_string(m.v1.size()) + ", " +
                         std::to_string(m.v2.size()) + ", " + std::to_string(m.v3.size()) +
                         ", " + std::to_string(m.v4.size()));
  }
  ReceiverObservation user1{m.v1, m.v3, xor_vectors(m.v2, m.v4)};
  ReceiverObservation user2{m.v2, m.v4, xor_vectors(m.v1, m.v3)};
  return {std::move(user1), std::move(user2)};
}

BitMatrix user_channel_matrix(User user, std::size_t k) {
  // Message block offsets inside the stacked (v1; v2; v3; v4).
  const std::size_t v1 = 0, v2 = k, v3 = 2 * k, v4 = 3 * k;
  const bool first = user == User::One;
  const std::size_t direct_a = first ? v1 : v2;
  const std::size_t direct_b = first ? v3 : v4;
  const std::size_t sum_x = first ? v2 : v1;
  const std::size_t sum_y = first ? v4 : v3;

  BitMatrix m(3 * k, 4 * k);
  for (std::size_t i = 0; i < k; ++i) {
    m.set(i, direct_a + i, true);
    m.set(k + i, direct_b + i, true);
    m.set(2 * k + i, sum_x + i, true);
    m.set(2 * k + i, sum_y + i, true);
  }
  return m;
}

}  // namespace layercache
