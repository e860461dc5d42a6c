#include "gqc/rational.hpp"

#include <cctype>

namespace gqc {

std::optional<Rat> try_parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    return Rat(Int(num), d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole)) return std::nullopt;
    if (frac.empty()) frac = "0";
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int w(whole);
    Int f(frac);
    bool neg = text[0] == '-';
    Rat r = Rat(abs(w) * scale + f, scale);
    return neg ? -r : r;
  }
  if (!is_int(text)) return std::nullopt;
  return Rat(Int(text));
}

Rat pow2_weight_bound(const Rat& x) {
  Rat m = 1;
  while (m <= x) m *= 2;
  return m;
}

int floor_log2(const Rat& r) {
  if (r <= 0) throw std::invalid_argument("floor_log2: non-positive argument");
  int e = 0;
  Rat v = r;
  while (v >= 2) {
    v /= 2;
    ++e;
  }
  while (v < 1) {
    v *= 2;
    --e;
  }
  return e;
}

int ceil_log2_int(long long n) {
  if (n < 1) throw std::invalid_argument("ceil_log2_int: argument must be >= 1");
  int e = 0;
  long long p = 1;
  while (p < n) {
    p <<= 1;
    ++e;
  }
  return e;
}

}  // namespace gqc
