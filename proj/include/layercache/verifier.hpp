#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "layercache/bitmatrix.hpp"
#include "layercache/netchannel.hpp"
#include "layercache/scheme.hpp"

namespace layercache {

// Rows of the user's cache placement followed by its three observation
// blocks (direct from tx1, direct from tx2, aligned xor), each row a
// functional on the 2n file bits.
BitMatrix observation_matrix(const LinearScheme& s, const Demand& d, User user);

// n x 2n selector of file f's parts.
BitMatrix file_selector(std::size_t n, File f);

struct Decodability {
  bool decodable = false;
  // Present iff decodable: decoder * observation_matrix == selector.
  std::optional<BitMatrix> decoder;

  explicit operator bool() const { return decodable; }
};

Decodability decodable(const LinearScheme& s, const Demand& d, User user);

struct CaseResult {
  Demand demand;
  User user = User::One;
  bool pass = false;
};

struct VerifyReport {
  std::array<CaseResult, 8> cases;  // demands in canonical order, user 1 then user 2
  Rational memory;
  Rational load;
  Rational sum_load;
  bool pass = false;

  // "CASE <demand> <user> PASS|FAIL" lines followed by the metrics and verdict.
  std::string render() const;
};

VerifyReport verify_all(const LinearScheme& s);

class NotDecodableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs placement, delivery and the noiseless bit pipes on concrete file
// bits (A parts then B parts), then applies the decoder. The result is the
// demanded file's n bits. Throws NotDecodableError when no decoder exists.
BitVector decode_bits(const LinearScheme& s, const Demand& d, User user, const BitVector& file_bits);

// Helpers shared by the physical-layer path.
MessageQuad delivered_messages(const LinearScheme& s, const Demand& d, const BitVector& file_bits);
BitVector stack_observation(const BitVector& cache_bits, const ReceiverObservation& obs);

}  // namespace layercache
