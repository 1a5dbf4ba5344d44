// Text format for parametrised space-curve germs on X.
//
//   one branch per line:   x(t) ; y(t) ; z(t)
//   series:                term + term + ...      ("0" for the zero series)
//   term:                  coef*t^k | coef*t | t^k | t | coef
//   coef:                  [-]rational | [-]z5^j | [-]rational*z5^j | (coef + coef ...)
//
// Blank lines and lines starting with '#' are ignored.
#pragma once

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "delta.hpp"

namespace nashe8 {

struct GermParseError : std::runtime_error {
  int line = 0;
  GermParseError(int l, const std::string& m) : std::runtime_error("line " + std::to_string(l) + ": " + m), line(l) {}
};

namespace detail {

class SeriesParser {
 public:
  SeriesParser(std::string s, int line) : s_(std::move(s)), line_(line) {}

  // Returns (exponent, coefficient) pairs.
  std::vector<std::pair<int, Q5>> series() {
    std::vector<std::pair<int, Q5>> out;
    skip();
    if (eof()) fail("empty series");
    out.push_back(term());
    for (skip(); !eof(); skip()) {
      if (peek() == '+') {
        ++p_;
        out.push_back(term());
      } else if (peek() == '-') {
        auto t = term();  // the sign is read as part of the coefficient
        out.push_back(t);
      } else {
        fail(std::string("unexpected '") + peek() + "'");
      }
    }
    return out;
  }

 private:
  std::string s_;
  size_t p_ = 0;
  int line_;

  [[noreturn]] void fail(const std::string& m) const { throw GermParseError(line_, m + " in \"" + s_ + "\""); }
  bool eof() const { return p_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[p_]; }
  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool take(char c) {
    skip();
    if (peek() != c) return false;
    ++p_;
    return true;
  }
  long integer() {
    skip();
    size_t q = p_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (q == p_) fail("expected an integer");
    if (p_ - q > 18) fail("integer too long");
    return std::stol(s_.substr(q, p_ - q));
  }
  mpz_class big_integer() {
    skip();
    size_t q = p_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (q == p_) fail("expected an integer");
    return mpz_class(s_.substr(q, p_ - q));
  }
  bool at_t() {
    skip();
    return peek() == 't';
  }
  bool at_zeta() {
    skip();
    return s_.compare(p_, 2, "z5") == 0;
  }
  Q5 zeta_power() {
    p_ += 2;
    long j = 1;
    if (take('^')) j = integer();
    return Q5::zeta_pow(j % 5);
  }
  // rational | z5^j | rational*z5^j | (sum), with optional leading sign
  Q5 atom() {
    skip();
    bool neg = false;
    while (peek() == '-' || peek() == '+') {
      neg ^= peek() == '-';
      ++p_;
      skip();
    }
    Q5 v;
    if (take('(')) {
      v = atom();
      for (;;) {
        skip();
        if (peek() == '+' || peek() == '-') v += atom();
        else break;
      }
      if (!take(')')) fail("expected ')'");
    } else if (at_zeta()) {
      v = zeta_power();
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num = big_integer(), den = 1;
      if (take('/')) den = big_integer();
      if (den == 0) fail("zero denominator");
      v = Q5(mpq_class(num, den));
      const size_t save = p_;
      if (take('*') && at_zeta()) v *= zeta_power();
      else p_ = save;
    } else {
      fail("expected a coefficient");
    }
    return neg ? -v : v;
  }
  std::pair<int, Q5> term() {
    skip();
    Q5 c(1);
    bool neg = false;
    while (peek() == '-') {
      neg = !neg;
      ++p_;
      skip();
    }
    if (!at_t()) {
      c = atom();
      if (!take('*')) return {0, neg ? -c : c};
      if (!at_t()) fail("expected t after '*'");
    }
    ++p_;  // t
    int k = 1;
    if (take('^')) k = static_cast<int>(integer());
    return {k, neg ? -c : c};
  }
};

}  // namespace detail

// Parse a germ; each series is truncated at T.
inline SpaceGerm<Q60> parse_germ(std::istream& in, int T) {
  SpaceGerm<Q60> g;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> parts;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, ';')) parts.push_back(part);
    if (parts.size() != 3) throw GermParseError(n, "expected three series separated by ';', got " + std::to_string(parts.size()));
    SpaceBranch<Q60> b;
    for (size_t c = 0; c < 3; ++c) {
      PowerSeries<Q60> s(T);
      for (const auto& [k, q] : detail::SeriesParser(parts[c], n).series()) {
        if (k < 0) throw GermParseError(n, "negative exponent");
        if (k < T) s = s + PowerSeries<Q60>::monomial(q.embed<60>(), k, T);
      }
      b[c] = s;
    }
    int g_exp = 0;
    for (size_t c = 0; c < 3; ++c) {
      if (b[c].order().value_or(1) == 0) throw GermParseError(n, "branch does not pass through the origin");
      for (int k = 1; k < T; ++k)
        if (!b[c].coeff(k).is_zero()) g_exp = std::gcd(g_exp, k);
    }
    if (g_exp == 0) throw GermParseError(n, "constant branch");
    // t -> t^m covers give the same curve m times; delta would diverge
    if (g_exp > 1) throw GermParseError(n, "parametrisation is a " + std::to_string(g_exp) + "-fold cover (all exponents divisible)");
    g.push_back(b);
  }
  if (g.empty()) throw GermParseError(n, "no branches");
  return g;
}

inline SpaceGerm<Q60> parse_germ_string(const std::string& text, int T) {
  std::istringstream in(text);
  return parse_germ(in, T);
}

inline SpaceGerm<Q60> read_germ_file(const std::string& path, int T) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open germ file " + path);
  return parse_germ(in, T);
}

// x^2 + y^3 + z^5 to truncation: the germ lies on X.
inline bool germ_on_surface(const SpaceGerm<Q60>& g) {
  for (const auto& b : g) {
    auto r = b[0] * b[0] + b[1] * b[1] * b[1] + b[2] * b[2] * b[2] * b[2] * b[2];
    for (int k = 0; k < r.cap(); ++k)
      if (!r.coeff(k).is_zero()) return false;
  }
  return true;
}

}  // namespace nashe8
