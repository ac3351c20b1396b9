#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "layercache/bitmatrix.hpp"

namespace layercache {

enum class File { A, B };

// Demanded files of user 1 and user 2.
struct Demand {
  File w1 = File::A;
  File w2 = File::A;

  friend bool operator==(const Demand&, const Demand&) = default;
};

// Canonical order AA, AB, BA, BB; index() is the position in this list.
inline constexpr std::array<Demand, 4> kAllDemands = {
    Demand{File::A, File::A}, Demand{File::A, File::B},
    Demand{File::B, File::A}, Demand{File::B, File::B}};

std::size_t index(const Demand& d);
std::string to_string(const Demand& d);
std::optional<Demand> parse_demand(std::string_view tag);
char file_tag(File f);

enum class User { One = 1, Two = 2 };

inline constexpr std::array<User, 2> kAllUsers = {User::One, User::Two};

inline File demanded(const Demand& d, User u) { return u == User::One ? d.w1 : d.w2; }

// v1, v2 leave transmitter 1; v3, v4 leave transmitter 2.
struct MessageQuad {
  BitVector v1, v2, v3, v4;
};

// direct_a comes from transmitter 1, direct_b from transmitter 2, and
// xor_sum is the aligned combination of the two remaining messages.
struct ReceiverObservation {
  BitVector direct_a, direct_b, xor_sum;

  friend bool operator==(const ReceiverObservation&, const ReceiverObservation&) = default;
};

// Noiseless interacting bit pipes: user 1 sees (v1, v3, v2^v4), user 2 sees
// (v2, v4, v1^v3). Throws DimensionError on unequal message lengths.
std::pair<ReceiverObservation, ReceiverObservation> transmit(const MessageQuad& m);

// 3k x 4k matrix mapping the stacked (v1; v2; v3; v4) to the stacked
// (direct_a; direct_b; xor_sum) of the given user, k bits per message.
BitMatrix user_channel_matrix(User user, std::size_t rows_per_message);

}  // namespace layercache
