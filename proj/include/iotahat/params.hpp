#pragma once

// Symbol sequences (a_1, b_2, a_3, ...) describing standard complexes (even
// length) and augmented complexes (odd length), the Z^! order on symbols, and
// the integer-valued homomorphisms read off a sequence.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iotahat/complex.hpp"

namespace iotahat {

/// Raised for malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

class Params {
 public:
  Params() = default;
  explicit Params(std::vector<int> symbols) : symbols_(std::move(symbols)) { check(); }

  const std::vector<int>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  bool is_standard() const { return symbols_.size() % 2 == 0; }
  bool is_augmented() const { return !is_standard(); }

  /// 1-based symbol access; zero past the end.
  int at(std::size_t i) const { return i >= 1 && i <= symbols_.size() ? symbols_[i - 1] : 0; }

  Params with(int symbol) const {
    std::vector<int> s = symbols_;
    s.push_back(symbol);
    return Params(std::move(s));
  }

  bool operator==(const Params&) const = default;

 private:
  void check() const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const int t = symbols_[i];
      if (i % 2 == 0 && t != 1 && t != -1)
        throw Error("symbol " + std::to_string(i + 1) + " must be + or -");
      if (i % 2 == 1 && t == 0) throw Error("symbol " + std::to_string(i + 1) + " must be nonzero");
    }
  }

  std::vector<int> symbols_;
};

// ---------------------------------------------------------------------------
// Text form "(-,3,+,-2)"

inline std::string format_params(const Params& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ',';
    const int t = p.symbols()[i];
    if (i % 2 == 0)
      os << (t > 0 ? '+' : '-');
    else
      os << t;
  }
  os << ')';
  return os.str();
}

inline Params parse_params(std::string text) {
  // Accept the Unicode minus sign as well as ASCII.
  const std::string minus = "\xE2\x88\x92";
  for (auto pos = text.find(minus); pos != std::string::npos; pos = text.find(minus, pos)) text.replace(pos, 3, "-");
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("parameters must be enclosed in ( )");
  s = s.substr(1, s.size() - 2);
  std::vector<int> symbols;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw ParseError("empty parameter symbol");
      const bool odd = symbols.size() % 2 == 0;
      if (odd) {
        if (tok == "+")
          symbols.push_back(1);
        else if (tok == "-")
          symbols.push_back(-1);
        else
          throw ParseError("expected + or - at position " + std::to_string(symbols.size() + 1) + ", got '" + tok + "'");
      } else {
        char* end = nullptr;
        const long v = std::strtol(tok.c_str(), &end, 10);
        if (*end != '\0' || v == 0 || v > 1000000 || v < -1000000)
          throw ParseError("expected a nonzero integer at position " + std::to_string(symbols.size() + 1) + ", got '" +
                           tok + "'");
        symbols.push_back(static_cast<int>(v));
      }
    }
    if (s.back() == ',') throw ParseError("trailing comma in parameters");
  }
  return Params(std::move(symbols));
}

// ---------------------------------------------------------------------------
// Z^! order: -1 < -2 < -3 < ... < 0 < ... < 3 < 2 < 1

inline int compare_bang(int s, int t) {
  auto key = [](int x) {
    if (x < 0) return std::pair<int, int>{0, -x};
    if (x == 0) return std::pair<int, int>{1, 0};
    return std::pair<int, int>{2, -x};
  };
  const auto a = key(s), b = key(t);
  return a < b ? -1 : (b < a ? 1 : 0);
}

/// Lexicographic comparison in Z^!, shorter sequence padded with zeros.
inline int lex_compare(const Params& p, const Params& q) {
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t i = 1; i <= n; ++i)
    if (int c = compare_bang(p.at(i), q.at(i)); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Construction

/// Gradings of T_0 ... T_k.
inline std::vector<int> param_gradings(const Params& p) {
  std::vector<int> g{0};
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const int t = p.at(i);
    if (i % 2 == 1)
      g.push_back(g.back());
    else if (t < 0)
      g.push_back(g.back() + 2 * (-t) - 1);
    else
      g.push_back(g.back() - 2 * t + 1);
  }
  return g;
}

inline AlmostIotaComplex build(const Params& p) {
  const std::vector<int> g = param_gradings(p);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < g.size(); ++i) gens.push_back({"T" + std::to_string(i), g[i]});
  std::vector<Arrow> d, w;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const int t = p.at(i);
    if (i % 2 == 1)
      w.push_back(t < 0 ? Arrow{i - 1, i} : Arrow{i, i - 1});
    else
      d.push_back(t < 0 ? Arrow{i - 1, i} : Arrow{i, i - 1});
  }
  AlmostIotaComplex c = make_complex(std::move(gens), d, w);
  c.reduced_flag = true;
  c.augmented = p.is_augmented();
  return c;
}

// ---------------------------------------------------------------------------
// Sequence-level homomorphisms and operations

inline int phi(int n, const Params& p) {
  if (n < 1) throw Error("phi: n must be positive");
  int count = 0;
  for (std::size_t i = 2; i <= p.size(); i += 2) {
    if (p.at(i) == n) ++count;
    if (p.at(i) == -n) --count;
  }
  return count;
}

/// Every n with phi(n, p) != 0.
inline std::map<int, int> phi_vector(const Params& p) {
  std::map<int, int> out;
  for (std::size_t i = 2; i <= p.size(); i += 2) {
    const int b = p.at(i);
    out[std::abs(b)] += b > 0 ? 1 : -1;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Grading of the final generator.
inline int pivot(const Params& p) { return param_gradings(p).back(); }

inline Params shift(int n, const Params& p) {
  if (n < 1) throw Error("shift: n must be positive");
  std::vector<int> s = p.symbols();
  for (std::size_t i = 1; i < s.size(); i += 2)
    if (std::abs(s[i]) >= n) s[i] += s[i] > 0 ? 1 : -1;
  return Params(std::move(s));
}

inline Params reversal(const Params& p) {
  if (!p.is_augmented()) throw Error("reversal: expects an augmented (odd-length) sequence");
  if (pivot(p) != 0) throw Error("reversal: final generator must lie in grading zero");
  std::vector<int> s(p.symbols().rbegin(), p.symbols().rend());
  for (auto& t : s) t = -t;
  return Params(std::move(s));
}

inline Params truncate(const Params& p) {
  if (p.empty()) throw Error("truncate: empty sequence");
  return Params(std::vector<int>(p.symbols().begin(), p.symbols().end() - 1));
}

inline Params concat(const Params& p, const Params& q) {
  if (!p.is_standard()) throw Error("concat: left operand must have even length");
  std::vector<int> s = p.symbols();
  s.insert(s.end(), q.symbols().begin(), q.symbols().end());
  return Params(std::move(s));
}

/// Starts with (-, -i) or (+, i): such classes do not come from iota-complexes.
inline bool obstructed_prefix(const Params& p) { return p.size() >= 2 && p.at(1) * p.at(2) > 0; }

/// In-place negation; agrees with the representative of the dual complex on
/// every case exercised in the tests.
inline Params dual_params(const Params& p) {
  std::vector<int> s = p.symbols();
  for (auto& t : s) t = -t;
  return Params(std::move(s));
}

}  // namespace iotahat
