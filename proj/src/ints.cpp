#include "kronewton/ints.hpp"

#include <random>

namespace kn {

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const GaussRat& x) {
  if (x.im == 0) return to_string(x.re);
  std::string im = to_string(kn::abs(Int(x.im.get_num())) == x.im.get_num()
                                 ? x.im
                                 : Rat(-x.im));
  std::string sign = x.im < 0 ? "-" : "+";
  if (x.re == 0 && x.im > 0) return im + "*i";
  if (x.re == 0) return "-" + im + "*i";
  return to_string(x.re) + sign + im + "*i";
}

namespace {

// Parses "a", "-a", "a/b" with optional surrounding spaces.
Rat parse_rat_at(const std::string& s, size_t& pos) {
  while (pos < s.size() && s[pos] == ' ') ++pos;
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    fail(Errc::usage, "bad rational literal: '" + s + "'");
  std::string num = s.substr(start, pos - start);
  std::string den = "1";
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == dstart) fail(Errc::usage, "bad rational literal: '" + s + "'");
    den = s.substr(dstart, pos - dstart);
  }
  Rat r(num + "/" + den);
  r.canonicalize();
  return r;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  size_t pos = 0;
  Rat r = parse_rat_at(s, pos);
  while (pos < s.size() && s[pos] == ' ') ++pos;
  if (pos != s.size()) fail(Errc::usage, "trailing junk in rational: '" + s + "'");
  return r;
}

// Accepts "a/b", "a/b+c/d*i", "a/b-c/d*i", "c/d*i", "i", "-i".
GaussRat parse_gauss_rat(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.empty()) fail(Errc::usage, "empty number literal");
  if (t == "i") return {Rat(0), Rat(1)};
  if (t == "-i") return {Rat(0), Rat(-1)};
  if (t == "+i") return {Rat(0), Rat(1)};

  // Pure imaginary "c/d*i" (no second sign after the leading one).
  if (t.back() == 'i') {
    if (t.size() < 2 || t[t.size() - 2] != '*')
      fail(Errc::usage, "bad gaussian literal: '" + s + "'");
    // Find split point: a sign that is not at position 0.
    size_t split = std::string::npos;
    for (size_t i = 1; i + 2 < t.size(); ++i)
      if (t[i] == '+' || t[i] == '-') split = i;
    std::string imtok = t.substr(split == std::string::npos ? 0 : split,
                                 t.size() - 2 - (split == std::string::npos ? 0 : split));
    if (imtok == "+" || imtok.empty()) imtok = "1";
    if (imtok == "-") imtok = "-1";
    Rat im = parse_rat(imtok);
    Rat re(0);
    if (split != std::string::npos) re = parse_rat(t.substr(0, split));
    return {re, im};
  }
  return {parse_rat(t), Rat(0)};
}

// Tonelli special case: the order-4 element of F_p^* for p = 1 mod 4,
// found from a quadratic nonresidue.
Int sqrt_minus_one_mod(const Int& p, uint64_t seed) {
  if (mod(p, 4) != 1) fail(Errc::usage, "sqrt(-1) requires p = 1 mod 4");
  std::mt19937_64 rng(seed);
  Int e = (p - 1) / 4;
  for (int tries = 0; tries < 4096; ++tries) {
    Int c = 2 + Int(static_cast<unsigned long>(rng() % 1000000007ULL));
    c = mod(c, p);
    if (c < 2) continue;
    Int r = powmod(c, e, p);
    if (mod(r * r, p) == p - 1) return r;
  }
  fail(Errc::internal, "no quadratic nonresidue found");
}

namespace {

Int pollard_rho(const Int& n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  while (true) {
    Int x = mod(Int(static_cast<unsigned long>(rng())), n);
    Int c = mod(Int(static_cast<unsigned long>(rng())), n);
    if (c == 0) c = 1;
    Int y = x, d = 1;
    while (d == 1) {
      x = mod(x * x + c, n);
      y = mod(y * y + c, n);
      y = mod(y * y + c, n);
      d = gcd(abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void factor_rec(Int n, std::vector<Int>& out, uint64_t seed) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n, seed);
  factor_rec(d, out, seed + 1);
  factor_rec(n / d, out, seed + 2);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factorize(Int n, uint64_t seed) {
  if (n < 0) n = -n;
  if (n <= 1) return {};
  std::vector<std::pair<Int, unsigned>> out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    auto [v, rest] = remove_factor(n, Int(p));
    if (v > 0) out.push_back({Int(p), static_cast<unsigned>(v)});
    n = rest;
    if (n == 1) return out;
  }
  std::vector<Int> primes;
  factor_rec(n, primes, seed);
  std::sort(primes.begin(), primes.end());
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.push_back({primes[i], static_cast<unsigned>(j - i)});
    i = j;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace kn
