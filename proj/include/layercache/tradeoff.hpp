#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "layercache/rational.hpp"

namespace layercache {

// value(m) = intercept + slope * m
struct AffinePiece {
  Rational intercept;
  Rational slope;

  Rational at(const Rational& m) const { return intercept + slope * m; }
};

// The affine pieces whose pointwise max is the optimal sum network load.
std::span<const AffinePiece> load_pieces();

// Optimal sum network load at memory m. Throws std::invalid_argument when
// m is outside [0, 2].
Rational rho_star(const Rational& m);

// Memories where the active piece of rho_star changes, found by walking the
// upper envelope from m = 0, plus both ends of [0, 2].
std::vector<Rational> breakpoints();

// 3/4 of rho_star.
Rational inverse_dof(const Rational& m);

// The inverse-DoF written directly as its own max of four affine pieces;
// kept separate from inverse_dof so the two can be checked against each other.
Rational inverse_dof_closed_form(const Rational& m);

enum class Verdict { Satisfied, Tight, Violated };

std::string to_string(Verdict v);

struct ConverseInequality {
  std::string label;  // e.g. "4c+2M>=2"
  Rational slack;     // lhs - rhs
  Verdict verdict;
};

struct ConverseReport {
  std::array<ConverseInequality, 3> inequalities;

  bool violated() const;
  bool any_tight() const;
};

// Slacks of 4c+2M>=2, 7c+2M>=3 and 6c+M>=2 with c = rho/4.
ConverseReport check_converse(const Rational& m, const Rational& rho);

// max{1 - m/2, 0}; throws std::invalid_argument for negative m.
Rational dof_lower_bound(const Rational& m);

// inverse_dof(m) - dof_lower_bound(m), never negative.
Rational optimality_gap(const Rational& m);

// Sum DoF of both users for a given inverse-DoF (2 / inverse).
Rational sum_dof(const Rational& inverse);

struct BaselineSample {
  Rational memory;
  Rational layered;  // computed from inverse_dof
  Rational xchannel;
  Rational interference;

  Rational gain_over_xchannel() const { return layered / xchannel; }
  Rational gain_over_interference() const { return layered / interference; }
};

// Sum-DoF comparison points against separation through independent bit
// pipes (X-channel and interference-channel abstractions). Only these sample
// points are known; no baseline curve is computed.
std::array<BaselineSample, 2> baseline_comparison();

struct CurveRow {
  Rational memory;
  Rational rho_star;
  Rational inv_dof;
  Rational lower_bound;
  Rational gap;
};

// Rows at from, from+step, ... up to and including `to` when it lies on the
// grid. Throws std::invalid_argument for a bad range or step.
std::vector<CurveRow> sweep(const Rational& from, const Rational& to, const Rational& step);

enum class CsvFormat { Fraction, Decimal, Both };

// Header "M,rho_star,inv_dof,lower_bound,gap". Both keeps the fraction
// columns and appends the same five columns as decimals with a "_dec" suffix.
std::string curve_csv(const std::vector<CurveRow>& rows, CsvFormat format);

}  // namespace layercache
