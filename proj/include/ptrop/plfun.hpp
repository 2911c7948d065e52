#pragma once

#include "ptrop/fan.hpp"

namespace ptrop {

// Piecewise linear function on a fan, one linear representative per maximal
// cone. Representatives must agree on shared faces.
struct PLFunction {
  Fan fan;
  std::vector<QVec> covectors;  // indexed like fan.maximal

  bool integral() const {
    for (const auto& c : covectors)
      for (const auto& x : c)
        if (boost::multiprecision::denominator(x) != 1) return false;
    return true;
  }
};

inline void validate_plfun(const PLFunction& f) {
  PTROP_CHECK(f.covectors.size() == f.fan.maximal.size(), "covector table size mismatch");
  for (size_t i = 0; i < f.fan.maximal.size(); ++i)
    for (size_t j = i + 1; j < f.fan.maximal.size(); ++j) {
      Cone w = cone_intersection(f.fan.maximal[i], f.fan.maximal[j]);
      for (const auto& r : w.rays)
        PTROP_CHECK(dotq(r, f.covectors[i]) == dotq(r, f.covectors[j]),
                    "representatives disagree on a shared face");
      for (const auto& l : w.lineality)
        PTROP_CHECK(dotq(l, f.covectors[i]) == dotq(l, f.covectors[j]),
                    "representatives disagree on a shared face");
    }
}

inline Rat pl_eval(const PLFunction& f, const QVec& x) {
  size_t i = f.fan.find_maximal_q(x);
  PTROP_CHECK(i != Fan::npos, "point outside the support of the fan");
  return dotq(f.covectors[i], x);
}

inline Rat pl_eval(const PLFunction& f, const IVec& x) { return pl_eval(f, to_q(x)); }

namespace detail {
// maximal cone pairs sharing a wall
inline std::vector<std::pair<size_t, size_t>> wall_pairs(const Fan& fan) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < fan.maximal.size(); ++i)
    for (size_t j = i + 1; j < fan.maximal.size(); ++j) {
      Cone w = cone_intersection(fan.maximal[i], fan.maximal[j]);
      if (w.dim() + 1 == fan.maximal[i].dim() && w.dim() + 1 == fan.maximal[j].dim())
        out.push_back({i, j});
    }
  return out;
}
}  // namespace detail

inline bool pl_is_convex(const PLFunction& f, bool strict) {
  PTROP_CHECK(f.fan.complete, "convexity check needs a complete fan");
  for (auto [i, j] : detail::wall_pairs(f.fan)) {
    for (size_t a = 0; a < 2; ++a) {
      size_t k = a == 0 ? i : j, l = a == 0 ? j : i;
      for (const auto& v : f.fan.maximal[l].rays) {
        if (f.fan.maximal[k].contains(v)) continue;
        Rat fv = dotq(v, f.covectors[l]);
        Rat lin = dotq(v, f.covectors[k]);
        if (strict ? !(fv > lin) : !(fv >= lin)) return false;
      }
    }
  }
  return true;
}

inline bool is_strictly_convex(const PLFunction& f) { return pl_is_convex(f, true); }

// Newton polytope {n : <m,n> >= -f(m) for all m}; requires f convex on a
// complete fan. Throws when the result has a non-integral vertex.
inline LatticePolytope newton_polytope(const PLFunction& f) {
  PTROP_CHECK(pl_is_convex(f, false), "Newton polytope undefined for non-convex function");
  size_t n = f.fan.rank;
  std::vector<IVec> ineqs;  // on (y, t): <g, y> + f(g) t >= 0
  for (size_t i = 0; i < f.fan.maximal.size(); ++i) {
    const Cone& K = f.fan.maximal[i];
    std::vector<IVec> gens = K.rays;
    for (const auto& l : K.lineality) {
      gens.push_back(l);
      gens.push_back(neg(l));
    }
    for (const auto& g : gens) {
      Rat fg = dotq(g, f.covectors[i]);
      Int den = boost::multiprecision::denominator(fg);
      IVec a = scale(den, g);
      a.push_back(boost::multiprecision::numerator(fg));
      ineqs.push_back(primitive(a));
    }
  }
  DDResult r = dd_rays(ineqs, n + 1);
  PTROP_CHECK(r.lineality.empty(), "Newton polytope unbounded");
  std::vector<IVec> verts;
  for (const auto& ray : r.rays) {
    Int t = ray.back();
    PTROP_CHECK(t > 0, "Newton polytope unbounded");
    IVec y(n);
    for (size_t i = 0; i < n; ++i) {
      PTROP_CHECK(ray[i] % t == 0, "Newton polytope has a non-integral vertex");
      y[i] = ray[i] / t;
    }
    verts.push_back(y);
  }
  return hull_of(verts, n);
}

inline PLFunction pl_sum(const PLFunction& f, const PLFunction& g) {
  PTROP_CHECK(f.fan.maximal == g.fan.maximal, "PL sum needs a common fan");
  PLFunction h = f;
  for (size_t i = 0; i < h.covectors.size(); ++i)
    for (size_t j = 0; j < h.covectors[i].size(); ++j) h.covectors[i][j] += g.covectors[i][j];
  return h;
}

inline PLFunction pl_scale(const Rat& c, const PLFunction& f) {
  PLFunction h = f;
  for (auto& cov : h.covectors)
    for (auto& x : cov) x *= c;
  return h;
}

// The PL function taking the value 1 on the primitive generator of every ray
// of the fan (the anticanonical representative). Throws when no linear
// representative exists on some maximal cone.
inline PLFunction anticanonical_pl(const Fan& fan) {
  PLFunction f;
  f.fan = fan;
  for (const auto& K : fan.maximal) {
    PTROP_CHECK(K.lineality.empty(), "anticanonical PL needs pointed cones");
    IMat A = IMat::from_rows(K.rays);
    QVec rhs(K.rays.size(), Rat(1));
    QVec c;
    PTROP_CHECK(solve_q(A, rhs, c), "no linear representative with value 1 on all rays");
    for (const auto& r : K.rays) PTROP_CHECK(dotq(r, c) == 1, "inconsistent anticanonical data");
    f.covectors.push_back(c);
  }
  validate_plfun(f);
  return f;
}

}  // namespace ptrop
