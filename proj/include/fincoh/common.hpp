#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fincoh {

using i64 = long long;
using i128 = __int128;

class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a construction would exceed the configured table bounds.
class size_error : public error {
public:
  explicit size_error(const std::string& msg) : error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw error(msg);
}

inline i64 floordiv(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// value reduced into [0, m)
inline i64 umod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) { i64 t = a % b; a = b; b = t; }
  return a;
}

inline i64 lcm_i64(i64 a, i64 b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_i64(a, b) * b;
}

// g = gcd(a,b) together with x,y such that a*x + b*y = g
inline i64 gcdext(i64 a, i64 b, i64& x, i64& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  i64 x1, y1;
  i64 g = gcdext(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// inverse of a mod m; a must be a unit
inline i64 inv_mod(i64 a, i64 m) {
  i64 x, y;
  i64 g = gcdext(umod(a, m), m, x, y);
  require(g == 1, "inv_mod: not a unit");
  return umod(x, m);
}

inline i64 mul_mod(i64 a, i64 b, i64 m) { return (i64)((i128)a * b % m); }

inline i64 pow_mod(i64 a, i64 n, i64 m) {
  i64 r = 1 % m;
  a = umod(a, m);
  for (; n > 0; n >>= 1) {
    if (n & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
  }
  return r;
}

// n = p^e with p prime, for the small moduli used here
inline bool prime_power(i64 n, i64& p, int& e) {
  if (n < 2) return false;
  i64 q = n;
  for (i64 d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      e = 0;
      while (q % d == 0) { q /= d; ++e; }
      return q == 1;
    }
  }
  p = n;
  e = 1;
  return true;
}

inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> fs;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) { n /= d; ++e; }
      fs.push_back({d, e});
    }
  }
  if (n > 1) fs.push_back({n, 1});
  return fs;
}

// Deterministic RNG; splitmix64 keeps reports independent of the
// standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  i64 below(i64 n) { return n <= 1 ? 0 : (i64)(next() % (std::uint64_t)n); }

  bool coin() { return next() & 1; }

  // derive an independent stream
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    Rng r(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
    r.next();
    return r.next();
  }

private:
  std::uint64_t state_;
};

}  // namespace fincoh
