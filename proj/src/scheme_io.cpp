#include <algorithm>
#include <sstream>
#include <vector>

#include "layercache/scheme.hpp"

namespace layercache {

namespace {

void write_block(std::ostringstream& out, const std::string& header, const BitMatrix& m) {
  out << header << ' ' << m.rows() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) out << m.row_string(r) << '\n';
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

// Sequential reader over physical lines; '#' starts a comment.
class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      const std::size_t hash = line.find('#');
      if (hash != std::string_view::npos) line = line.substr(0, hash);
      while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
      lines_.emplace_back(line);
      pos = end + 1;
    }
  }

  // Next non-blank line, split into words.
  std::vector<std::string> next_words(const std::string& expecting) {
    while (at_ < lines_.size() && split_words(lines_[at_]).empty()) ++at_;
    if (at_ == lines_.size()) {
      throw ParseError(lines_.size() + 1, "unexpected end of input, expected " + expecting);
    }
    return split_words(lines_[at_++]);
  }

  // Next matrix row. Rows of width zero are empty lines and are not skipped.
  std::string next_row(std::size_t width) {
    if (width > 0) {
      while (at_ < lines_.size() && split_words(lines_[at_]).empty()) ++at_;
    }
    if (at_ == lines_.size()) {
      throw ParseError(lines_.size() + 1, "unexpected end of input inside a matrix block");
    }
    std::string row = lines_[at_++];
    const std::size_t lead = row.find_first_not_of(" \t");
    row = lead == std::string::npos ? std::string() : row.substr(lead);
    if (row.size() != width) {
      throw ParseError(at_, "row width " + std::to_string(row.size()) + ", expected " +
                                std::to_string(width));
    }
    if (row.find_first_not_of("01") != std::string::npos) {
      throw ParseError(at_, "row contains characters other than 0 and 1");
    }
    return row;
  }

  std::size_t line() const { return at_; }

  bool has_content() {
    while (at_ < lines_.size() && split_words(lines_[at_]).empty()) ++at_;
    return at_ < lines_.size();
  }

 private:
  std::vector<std::string> lines_;
  std::size_t at_ = 0;
};

std::size_t parse_count(LineReader& in, const std::string& word) {
  std::size_t pos = 0;
  long long v = -1;
  try {
    v = std::stoll(word, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != word.size() || v < 0) {
    throw ParseError(in.line(), "expected a nonnegative integer, got '" + word + "'");
  }
  return static_cast<std::size_t>(v);
}

Rational parse_header_rational(LineReader& in, const std::string& key) {
  const auto words = in.next_words("'" + key + " <p>/<q>'");
  if (words.size() != 2 || words[0] != key) {
    throw ParseError(in.line(), "expected '" + key + " <p>/<q>'");
  }
  try {
    return parse_rational(words[1]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(in.line(), e.what());
  }
}

std::size_t scaled_rows(LineReader& in, const Rational& value, std::size_t n, const char* key) {
  const Rational scaled = value * static_cast<std::int64_t>(n);
  if (scaled.denominator() != 1 || scaled < 0) {
    throw ParseError(in.line(), std::string(key) + " * n = " + to_display(scaled) +
                                    " is not a nonnegative integer");
  }
  return static_cast<std::size_t>(scaled.numerator());
}

BitMatrix read_block(LineReader& in, const std::vector<std::string>& header_prefix,
                     std::size_t width, std::size_t max_rows, bool exact,
                     const std::string& label) {
  auto words = in.next_words("'" + label + " <rows>'");
  const std::size_t header_line = in.line();
  if (words.size() != header_prefix.size() + 1 ||
      !std::equal(header_prefix.begin(), header_prefix.end(), words.begin())) {
    throw ParseError(header_line, "expected '" + label + " <rows>'");
  }
  const std::size_t rows = parse_count(in, words.back());
  if (exact ? rows != max_rows : rows > max_rows) {
    throw ParseError(header_line, label + " has " + std::to_string(rows) + " rows, expected " +
                                      (exact ? "" : "at most ") + std::to_string(max_rows));
  }
  std::vector<std::string> text;
  text.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) text.push_back(in.next_row(width));
  return BitMatrix::from_rows(width, text);
}

}  // namespace

std::string write_scheme(const LinearScheme& s) {
  validate(s);
  std::ostringstream out;
  out << "n " << s.n << '\n';
  out << "M " << to_fraction(s.memory) << '\n';
  out << "c " << to_fraction(s.load) << '\n';
  write_block(out, "Z1", s.z1);
  write_block(out, "Z2", s.z2);
  write_block(out, "U1", s.u1);
  write_block(out, "U2", s.u2);
  for (const Demand& d : kAllDemands) {
    for (std::size_t i = 0; i < 4; ++i) {
      write_block(out, "D " + to_string(d) + " V" + std::to_string(i + 1), s.maps(d)[i]);
    }
  }
  return out.str();
}

LinearScheme read_scheme(std::string_view text) {
  LineReader in(text);
  LinearScheme s;

  const auto n_words = in.next_words("'n <int>'");
  if (n_words.size() != 2 || n_words[0] != "n") throw ParseError(in.line(), "expected 'n <int>'");
  s.n = parse_count(in, n_words[1]);
  if (s.n == 0) throw ParseError(in.line(), "granularity n must be positive");

  s.memory = parse_header_rational(in, "M");
  if (s.memory < 0 || s.memory > 2) {
    throw ParseError(in.line(), "memory " + to_display(s.memory) + " outside [0,2]");
  }
  const std::size_t cache_rows = scaled_rows(in, s.memory, s.n, "M");
  s.load = parse_header_rational(in, "c");
  const std::size_t msg_rows = scaled_rows(in, s.load, s.n, "c");

  const std::size_t width = 2 * s.n;
  s.z1 = read_block(in, {"Z1"}, width, cache_rows, true, "Z1");
  s.z2 = read_block(in, {"Z2"}, width, cache_rows, true, "Z2");
  s.u1 = read_block(in, {"U1"}, width, s.n, false, "U1");
  s.u2 = read_block(in, {"U2"}, width, s.n, false, "U2");

  for (const Demand& d : kAllDemands) {
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string tag = "V" + std::to_string(i + 1);
      const std::size_t source_rows = i < 2 ? s.u1.rows() : s.u2.rows();
      s.delivery[index(d)][i] = read_block(in, {"D", to_string(d), tag}, source_rows, msg_rows,
                                           true, "D " + to_string(d) + " " + tag);
    }
  }
  if (in.has_content()) throw ParseError(in.line() + 1, "trailing content after last block");
  validate(s);
  return s;
}

}  // namespace layercache
