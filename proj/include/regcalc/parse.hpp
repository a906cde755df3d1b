#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "regcalc/poly.hpp"

namespace regcalc {

struct ParseError : std::runtime_error {
  int line = 0, col = 0;

  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                           ": " + msg),
        line(line_),
        col(col_) {}
};

/// A parsed ideal file: ring declaration, homogeneous generators, optional
/// label and expected invariant values for regression pinning.
struct IdealFile {
  GradedRing ring;
  std::vector<std::string> var_names;
  std::vector<Poly> gens;
  std::string label;
  std::map<std::string, long long> expect;
};

namespace detail {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;

  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  char take() {
    char c = s[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws_inline() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) take();
  }
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

/// Parses one generator from term text using the declared variables.
inline Poly parse_poly(const std::string& text, const std::vector<std::string>& names,
                       const GradedRing& R, int line0) {
  Poly f;
  size_t i = 0;
  int col = 1;
  auto err = [&](const std::string& m) { throw ParseError(m, line0, col); };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i, ++col;
  };
  skip();
  if (i >= text.size()) err("empty generator");
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    long long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i, ++col;
    } else if (!first) {
      err(std::string("expected '+' or '-' before next term, got '") + text[i] + "'");
    }
    first = false;
    skip();
    if (i >= text.size()) err("dangling sign at end of generator");

    long long coeff = 1;
    Monomial mono(R.nvars);
    bool saw_factor = false;
    bool expect_factor = true;
    bool after_coeff = false;
    while (expect_factor) {
      skip();
      after_coeff = false;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        long long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + (text[i] - '0');
          if (v > (1ll << 40)) err("coefficient literal too large");
          ++i, ++col;
        }
        coeff = (coeff % R.char_p) * (v % R.char_p) % R.char_p;
        saw_factor = true;
        after_coeff = true;
      } else if (i < text.size() && ident_start(text[i])) {
        std::string id;
        while (i < text.size() && ident_char(text[i])) id += text[i], ++i, ++col;
        int var = -1;
        for (size_t k = 0; k < names.size(); ++k)
          if (names[k] == id) var = static_cast<int>(k);
        if (var < 0) err("unknown variable '" + id + "'");
        int exp = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i, ++col;
          skip();
          if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            err("expected exponent after '^'");
          exp = 0;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exp = exp * 10 + (text[i] - '0');
            if (exp > 1000) err("exponent too large");
            ++i, ++col;
          }
        }
        mono.e[var] += exp;
        saw_factor = true;
      } else {
        err("expected a coefficient or variable");
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i, ++col;
        expect_factor = true;
      } else if (after_coeff && i < text.size() && ident_start(text[i])) {
        expect_factor = true;  // implicit product as in 3x^2
      } else {
        expect_factor = false;
      }
    }
    if (!saw_factor) err("empty term");
    f.terms.push_back({mono, fp_reduce(sign * coeff, R.char_p)});
  }
  poly_normalize(f, R, grevlex_top());
  return f;
}

}  // namespace detail

inline IdealFile parse_ideal_file(const std::string& text) {
  IdealFile out;
  bool have_ring = false;
  bool have_ideal = false;
  std::string ideal_text;
  int ideal_line = 0;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::vector<std::pair<int, std::string>> pending_gens;  // (line, generator text)

  auto flush_ideal = [&]() {
    if (ideal_text.empty()) return;
    std::string cur;
    int depth_line = ideal_line;
    for (char c : ideal_text) {
      if (c == ',') {
        pending_gens.push_back({depth_line, cur});
        cur.clear();
      } else {
        cur += c;
      }
    }
    pending_gens.push_back({depth_line, cur});
    ideal_text.clear();
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "ring") {
      if (have_ring) throw ParseError("duplicate ring declaration", lineno, 1);
      long long p;
      if (!(ls >> p)) throw ParseError("expected characteristic after 'ring'", lineno, 6);
      if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw ParseError("characteristic " + std::to_string(p) + " is not prime", lineno, 6);
      std::string name;
      while (ls >> name) {
        for (const std::string& n : out.var_names)
          if (n == name) throw ParseError("duplicate variable name '" + name + "'", lineno, 1);
        if (!detail::ident_start(name[0]))
          throw ParseError("bad variable name '" + name + "'", lineno, 1);
        out.var_names.push_back(name);
      }
      if (out.var_names.empty()) throw ParseError("ring needs at least one variable", lineno, 1);
      out.ring = GradedRing(static_cast<int>(out.var_names.size()), static_cast<fp_t>(p));
      have_ring = true;
    } else if (kw == "ideal") {
      if (!have_ring) throw ParseError("missing ring declaration", lineno, 1);
      if (have_ideal) throw ParseError("duplicate ideal declaration", lineno, 1);
      have_ideal = true;
      ideal_line = lineno;
      std::string rest;
      std::getline(ls, rest);
      ideal_text = rest;
    } else if (kw == "label") {
      std::string rest;
      std::getline(ls, rest);
      size_t rb = rest.find_first_not_of(" \t");
      out.label = rb == std::string::npos ? "" : rest.substr(rb);
    } else if (kw == "expect") {
      std::string key;
      long long value;
      if (!(ls >> key >> value)) throw ParseError("expect needs '<key> <integer>'", lineno, 1);
      out.expect[key] = value;
    } else if (have_ideal) {
      // continuation of the generator list
      ideal_text += " " + line;
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno, 1);
    }
  }
  if (!have_ring) throw ParseError("missing ring declaration", lineno ? lineno : 1, 1);
  if (!have_ideal) throw ParseError("missing ideal declaration", lineno ? lineno : 1, 1);
  flush_ideal();

  for (auto& [gline, gtext] : pending_gens) {
    Poly f = detail::parse_poly(gtext, out.var_names, out.ring, gline);
    if (f.is_zero())
      throw ParseError("generator " + std::to_string(out.gens.size() + 1) + " is zero", gline, 1);
    if (!poly_is_homogeneous(f))
      throw ParseError("generator " + std::to_string(out.gens.size() + 1) + " not homogeneous",
                       gline, 1);
    out.gens.push_back(std::move(f));
  }
  return out;
}

inline std::string render_ideal_file(const IdealFile& f) {
  std::ostringstream os;
  if (!f.label.empty()) os << "label " << f.label << "\n";
  os << "ring " << f.ring.char_p;
  for (const std::string& n : f.var_names) os << " " << n;
  os << "\nideal ";
  for (size_t i = 0; i < f.gens.size(); ++i) {
    if (i) os << ", ";
    os << poly_to_string(f.gens[i], f.var_names, f.ring);
  }
  os << "\n";
  for (const auto& [k, v] : f.expect) os << "expect " << k << " " << v << "\n";
  return os.str();
}

inline bool ideal_file_equal(const IdealFile& a, const IdealFile& b) {
  if (!(a.ring == b.ring) || a.var_names != b.var_names || a.label != b.label ||
      a.expect != b.expect || a.gens.size() != b.gens.size())
    return false;
  for (size_t i = 0; i < a.gens.size(); ++i)
    if (!poly_equal(a.gens[i], b.gens[i])) return false;
  return true;
}

}  // namespace regcalc
