#pragma once

#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "tpgrass/matrix.hpp"
#include "tpgrass/scalar.hpp"

namespace tpgrass {

// Matrix text format: one row per line, whitespace-separated entries; an entry
// is an integer, a fraction "a/b", or a decimal literal. Decimal entries force
// floating mode.

class matrix_parse_error : public std::runtime_error {
 public:
  matrix_parse_error(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

namespace detail {

enum class TokenKind { integer, fraction, decimal };

inline TokenKind classify_token(const std::string& t, int line, int col) {
  std::size_t i = 0;
  auto fail = [&](const char* msg) -> TokenKind { throw matrix_parse_error(line, col, std::string(msg) + " in '" + t + "'"); };
  auto digits = [&]() {
    std::size_t start = i;
    while (i < t.size() && t[i] >= '0' && t[i] <= '9') ++i;
    return i > start;
  };
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
  const bool int_part = digits();
  if (i == t.size()) {
    if (!int_part) fail("empty numeric token");
    return TokenKind::integer;
  }
  if (t[i] == '/') {
    ++i;
    if (!int_part) fail("fraction lacks a numerator");
    if (!digits() || i != t.size()) fail("malformed fraction");
    return TokenKind::fraction;
  }
  bool saw_decimal = false;
  if (t[i] == '.') {
    ++i;
    saw_decimal = true;
    const bool frac_part = digits();
    if (!int_part && !frac_part) fail("decimal lacks digits");
  }
  if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
    ++i;
    saw_decimal = true;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
    if (!digits()) fail("malformed exponent");
  }
  if (i != t.size()) fail("unexpected character");
  if (!saw_decimal) return TokenKind::integer;
  return TokenKind::decimal;
}

}  // namespace detail

// Tokenized matrix with per-entry provenance; conversion to a concrete scalar
// backend happens after the caller decides the mode.
struct MatrixText {
  std::vector<std::vector<std::string>> tokens;
  bool has_decimal = false;

  int rows() const { return static_cast<int>(tokens.size()); }
  int cols() const { return tokens.empty() ? 0 : static_cast<int>(tokens.front().size()); }

  Matrix<Rational> to_exact() const {
    if (has_decimal) throw std::invalid_argument("matrix has decimal entries; exact mode rejects them");
    Matrix<Rational> m(rows(), cols());
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) m(i, j) = Rational(tokens[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return m;
  }

  Matrix<double> to_floating() const {
    Matrix<double> m(rows(), cols());
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) {
        const std::string& t = tokens[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (t.find('/') != std::string::npos) {
          m(i, j) = to_double(Rational(t));
        } else {
          m(i, j) = std::strtod(t.c_str(), nullptr);
        }
      }
    return m;
  }
};

inline MatrixText parse_matrix_text(std::istream& in) {
  MatrixText out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      std::string tok = line.substr(start, i - start);
      const int col = static_cast<int>(start) + 1;
      const detail::TokenKind kind = detail::classify_token(tok, lineno, col);
      if (kind == detail::TokenKind::fraction) {
        try {
          (void)Rational(tok);
        } catch (const std::exception&) {
          throw matrix_parse_error(lineno, col, "invalid fraction '" + tok + "'");
        }
      }
      if (kind == detail::TokenKind::decimal) out.has_decimal = true;
      row.push_back(std::move(tok));
    }
    if (row.empty()) continue;
    if (!out.tokens.empty() && row.size() != out.tokens.front().size())
      throw matrix_parse_error(lineno, 1, "row has " + std::to_string(row.size()) + " entries, expected " +
                                              std::to_string(out.tokens.front().size()));
    out.tokens.push_back(std::move(row));
  }
  if (out.tokens.empty()) throw matrix_parse_error(lineno == 0 ? 1 : lineno, 1, "empty matrix");
  return out;
}

inline MatrixText parse_matrix_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_matrix_text(ss);
}

template <typename T>
std::string format_matrix_text(const Matrix<T>& m) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += scalar_to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace tpgrass
