#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "layercache/bitmatrix.hpp"
#include "layercache/netchannel.hpp"
#include "layercache/rational.hpp"

namespace layercache {

class SchemeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (memory, value) on a trade-off curve; value is a sum load or an inverse
// DoF depending on the caller.
struct TradeoffPoint {
  Rational memory;
  Rational value;

  friend bool operator==(const TradeoffPoint&, const TradeoffPoint&) = default;
};

// Per-demand delivery maps. Messages 0 and 1 (V1, V2) act on the rows of
// U1, messages 2 and 3 (V3, V4) on the rows of U2.
using DeliveryMaps = std::array<BitMatrix, 4>;

// A linear caching strategy at granularity n. Each file is split into n
// parts; file-bit columns 0..n-1 are A_1..A_n and n..2n-1 are B_1..B_n.
// Every cache and every message is a set of GF(2) functionals on those 2n
// columns, except deliveries, which are expressed over transmitter cache rows.
struct LinearScheme {
  std::size_t n = 1;
  Rational memory;  // rows(z1) = rows(z2) = memory * n
  Rational load;    // every delivery matrix has load * n rows
  BitMatrix z1, z2;
  BitMatrix u1, u2;
  std::array<DeliveryMaps, 4> delivery;  // indexed by index(Demand)

  Rational sum_load() const { return 4 * load; }
  std::size_t message_rows() const;
  const BitMatrix& receiver_cache(User u) const { return u == User::One ? z1 : z2; }
  const DeliveryMaps& maps(const Demand& d) const { return delivery[index(d)]; }
  TradeoffPoint metrics() const { return {memory, sum_load()}; }

  friend bool operator==(const LinearScheme&, const LinearScheme&) = default;
};

// Throws SchemeError describing the first violated shape or budget rule.
void validate(const LinearScheme& s);

// Message i of demand d as functionals on the 2n file bits: d_i * U_tx.
BitMatrix message_functionals(const LinearScheme& s, const Demand& d, std::size_t i);

enum class Corner { M0, M13, M45, M2 };

inline constexpr std::array<Corner, 4> kAllCorners = {Corner::M0, Corner::M13, Corner::M45,
                                                      Corner::M2};

std::string to_string(Corner c);
Corner parse_corner(std::string_view name);  // throws std::invalid_argument

// The four explicit strategies at M = 0, 1/3, 4/5 and 2.
LinearScheme corner_scheme(Corner c);

// Splits each file into a lambda fraction served by copies of s1 (low part
// indices) and a 1-lambda fraction served by copies of s2. Uses the smallest
// granularity for which both fractions hold whole copies.
LinearScheme memory_share(const LinearScheme& s1, const LinearScheme& s2, const Rational& lambda);

// Memory-shares the two corner schemes bracketing m. Throws
// std::invalid_argument when m is outside [0, 2].
LinearScheme scheme_for_memory(const Rational& m);

// Line-oriented text format; see README for the layout.
std::string write_scheme(const LinearScheme& s);

class ParseError : public SchemeError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : SchemeError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

LinearScheme read_scheme(std::string_view text);

}  // namespace layercache
