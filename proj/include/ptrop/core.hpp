#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptrop {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

#define PTROP_CHECK(cond, msg)                \
  do {                                        \
    if (!(cond)) throw ::ptrop::error(msg);   \
  } while (0)

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int content(const IVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

// Divides out the gcd; the zero vector stays zero.
inline IVec primitive(IVec v) {
  Int g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

inline IVec add(const IVec& a, const IVec& b) {
  PTROP_CHECK(a.size() == b.size(), "vector size mismatch");
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec sub(const IVec& a, const IVec& b) {
  PTROP_CHECK(a.size() == b.size(), "vector size mismatch");
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec neg(IVec a) {
  for (auto& x : a) x = -x;
  return a;
}

inline IVec scale(const Int& c, IVec a) {
  for (auto& x : a) x *= c;
  return a;
}

inline Int dot(const IVec& a, const IVec& b) {
  PTROP_CHECK(a.size() == b.size(), "vector size mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dotq(const IVec& a, const QVec& b) {
  PTROP_CHECK(a.size() == b.size(), "vector size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline Rat dotq(const QVec& a, const QVec& b) {
  PTROP_CHECK(a.size() == b.size(), "vector size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec to_q(const IVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

// Clears denominators and divides by the content; zero stays zero.
inline IVec primitive_of_q(const QVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, boost::multiprecision::denominator(x));
  IVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    r[i] = boost::multiprecision::numerator(v[i]) * (l / boost::multiprecision::denominator(v[i]));
  return primitive(r);
}

inline IVec unit_vector(size_t n, size_t i, Int c = 1) {
  IVec v(n, 0);
  v[i] = c;
  return v;
}

inline bool lex_less(const IVec& a, const IVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Extended gcd: returns g and writes x, y with a*x + b*y = g, g >= 0.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    if (a < 0) { x = -1; y = 0; return -a; }
    x = 1; y = 0;
    return a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline std::string to_string(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace ptrop
