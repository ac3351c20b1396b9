#include "layercache/tradeoff.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace layercache {

namespace {

const std::array<AffinePiece, 4> kLoadPieces = {{
    {Rational(2), Rational(-2)},
    {Rational(12, 7), Rational(-8, 7)},
    {Rational(4, 3), Rational(-2, 3)},
    {Rational(0), Rational(0)},
}};

const std::array<AffinePiece, 4> kInverseDofPieces = {{
    {Rational(3, 2), Rational(-3, 2)},
    {Rational(9, 7), Rational(-6, 7)},
    {Rational(1), Rational(-1, 2)},
    {Rational(0), Rational(0)},
}};

const Rational kMinMemory(0);
const Rational kMaxMemory(2);

void check_memory(const Rational& m) {
  if (m < kMinMemory || m > kMaxMemory) {
    throw std::invalid_argument("M out of range [0,2]: " + to_display(m));
  }
}

Rational envelope(std::span<const AffinePiece> pieces, const Rational& m) {
  Rational best = pieces.front().at(m);
  for (const AffinePiece& p : pieces.subspan(1)) best = std::max(best, p.at(m));
  return best;
}

}  // namespace

std::span<const AffinePiece> load_pieces() { return kLoadPieces; }

Rational rho_star(const Rational& m) {
  check_memory(m);
  return envelope(kLoadPieces, m);
}

std::vector<Rational> breakpoints() {
  // Active piece at the left end: largest value, ties go to the flatter
  // (larger slope) piece since it stays on top to the right.
  std::size_t active = 0;
  for (std::size_t i = 1; i < kLoadPieces.size(); ++i) {
    const Rational vi = kLoadPieces[i].at(kMinMemory);
    const Rational va = kLoadPieces[active].at(kMinMemory);
    if (vi > va || (vi == va && kLoadPieces[i].slope > kLoadPieces[active].slope)) active = i;
  }

  std::vector<Rational> points{kMinMemory};
  Rational at = kMinMemory;
  while (true) {
    // The next piece to take over is the first flatter piece crossing the
    // active one to the right of the current point.
    std::optional<Rational> next;
    std::size_t next_piece = active;
    for (std::size_t i = 0; i < kLoadPieces.size(); ++i) {
      const AffinePiece& a = kLoadPieces[active];
      const AffinePiece& p = kLoadPieces[i];
      if (p.slope <= a.slope) continue;
      const Rational cross = (p.intercept - a.intercept) / (a.slope - p.slope);
      if (cross <= at || cross > kMaxMemory) continue;
      if (!next || cross < *next || (cross == *next && p.slope > kLoadPieces[next_piece].slope)) {
        next = cross;
        next_piece = i;
      }
    }
    if (!next) break;
    points.push_back(*next);
    at = *next;
    active = next_piece;
  }
  if (points.back() != kMaxMemory) points.push_back(kMaxMemory);
  return points;
}

Rational inverse_dof(const Rational& m) { return Rational(3, 4) * rho_star(m); }

Rational inverse_dof_closed_form(const Rational& m) {
  check_memory(m);
  return envelope(kInverseDofPieces, m);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Tight: return "tight";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

bool ConverseReport::violated() const {
  return std::any_of(inequalities.begin(), inequalities.end(),
                     [](const ConverseInequality& q) { return q.verdict == Verdict::Violated; });
}

bool ConverseReport::any_tight() const {
  return std::any_of(inequalities.begin(), inequalities.end(),
                     [](const ConverseInequality& q) { return q.verdict == Verdict::Tight; });
}

ConverseReport check_converse(const Rational& m, const Rational& rho) {
  const Rational c = rho / 4;
  auto make = [](std::string label, Rational slack) {
    Verdict v = Verdict::Satisfied;
    if (slack < 0) {
      v = Verdict::Violated;
    } else if (slack == Rational(0)) {
      v = Verdict::Tight;
    }
    return ConverseInequality{std::move(label), slack, v};
  };
  return ConverseReport{{
      make("4c+2M>=2", 4 * c + 2 * m - 2),
      make("7c+2M>=3", 7 * c + 2 * m - 3),
      make("6c+M>=2", 6 * c + m - 2),
  }};
}

Rational dof_lower_bound(const Rational& m) {
  if (m < 0) throw std::invalid_argument("M must be nonnegative: " + to_display(m));
  return std::max(Rational(1) - m / 2, Rational(0));
}

Rational optimality_gap(const Rational& m) { return inverse_dof(m) - dof_lower_bound(m); }

Rational sum_dof(const Rational& inverse) {
  if (inverse <= 0) throw std::invalid_argument("sum DoF is unbounded at inverse-DoF 0");
  return 2 / inverse;
}

std::array<BaselineSample, 2> baseline_comparison() {
  // Independent bit pipes: the interference-channel abstraction gives two
  // pipes of DoF 1/2, the X-channel abstraction four pipes of DoF 1/3.
  return {{
      {Rational(0), sum_dof(inverse_dof(Rational(0))), Rational(4, 3), Rational(1)},
      {Rational(4, 5), sum_dof(inverse_dof(Rational(4, 5))), Rational(20, 9), Rational(5, 3)},
  }};
}

std::vector<CurveRow> sweep(const Rational& from, const Rational& to, const Rational& step) {
  if (step <= 0) throw std::invalid_argument("step must be positive");
  if (from < kMinMemory || to > kMaxMemory || from > to) {
    throw std::invalid_argument("sweep range must satisfy 0 <= from <= to <= 2");
  }
  std::vector<CurveRow> rows;
  for (Rational m = from; m <= to; m += step) {
    rows.push_back({m, rho_star(m), inverse_dof(m), dof_lower_bound(m), optimality_gap(m)});
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows, CsvFormat format) {
  static const char* kColumns[] = {"M", "rho_star", "inv_dof", "lower_bound", "gap"};
  std::ostringstream out;
  auto header = [&](const char* suffix, bool leading_comma) {
    for (std::size_t i = 0; i < 5; ++i) {
      if (i > 0 || leading_comma) out << ',';
      out << kColumns[i] << suffix;
    }
  };
  if (format == CsvFormat::Both) {
    header("", false);
    header("_dec", true);
  } else {
    header("", false);
  }
  out << '\n';

  for (const CurveRow& r : rows) {
    const Rational values[] = {r.memory, r.rho_star, r.inv_dof, r.lower_bound, r.gap};
    bool first = true;
    auto emit = [&](const std::string& text) {
      if (!first) out << ',';
      out << text;
      first = false;
    };
    if (format != CsvFormat::Decimal) {
      for (const Rational& v : values) emit(to_display(v));
    }
    if (format != CsvFormat::Fraction) {
      for (const Rational& v : values) emit(to_decimal(v));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace layercache
