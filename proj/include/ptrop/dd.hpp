#pragma once

#include "ptrop/linalg.hpp"

#include <set>

namespace ptrop {

// Extreme rays + lineality of {x : <a_i, x> >= 0} by double description.
struct DDResult {
  std::vector<IVec> rays;       // primitive extreme rays (modulo lineality)
  std::vector<IVec> lineality;  // lattice basis of the lineality space
};

namespace detail {

// Integer right inverse S of a surjective projection P (P*S = I).
inline IMat integral_section(const IMat& P) {
  IMat S(P.cols, P.rows);
  for (size_t j = 0; j < P.rows; ++j) {
    IVec col;
    PTROP_CHECK(solve_integral(P, unit_vector(P.rows, j), col), "projection not surjective");
    for (size_t i = 0; i < P.cols; ++i) S(i, j) = col[i];
  }
  return S;
}

struct DDRay {
  IVec v;
  std::set<size_t> zero;  // indices of processed inequalities tight at v
};

}  // namespace detail

inline DDResult dd_rays(const std::vector<IVec>& ineqs, size_t ambient) {
  DDResult res;
  // lineality = common kernel of all inequalities
  std::vector<IVec> nonzero;
  for (const auto& a : ineqs)
    if (!is_zero(a)) nonzero.push_back(a);
  res.lineality = orthogonal_complement(nonzero, ambient);
  size_t k = ambient - res.lineality.size();
  if (k == 0) return res;

  // project to the pointed quotient
  IMat P = quotient_projection(res.lineality, ambient);
  PTROP_CHECK(P.rows == k, "quotient projection rank mismatch");
  IMat S = detail::integral_section(P);
  std::vector<IVec> qineqs;  // a_i expressed in quotient coordinates: a_i * S
  qineqs.reserve(nonzero.size());
  for (const auto& a : nonzero) qineqs.push_back(mul_left(a, S));

  // initial simplicial cone from k independent inequalities
  std::vector<size_t> init;
  {
    std::vector<IVec> picked;
    for (size_t i = 0; i < qineqs.size() && picked.size() < k; ++i) {
      picked.push_back(qineqs[i]);
      if (rank_of_rows(picked) < picked.size())
        picked.pop_back();
      else
        init.push_back(i);
    }
    PTROP_CHECK(init.size() == k, "inequalities do not span the quotient");
  }
  IMat M(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) M(i, j) = qineqs[init[i]][j];
  Int d = det(M);
  std::vector<detail::DDRay> rays;
  for (size_t j = 0; j < k; ++j) {
    // ray r_j with <a_init[i], r_j> = 0 for i != j and > 0 for i = j
    IMat sub(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t c = 0; c < k; ++c) sub(i, c) = (i == j) ? Int(0) : qineqs[init[i]][c];
    // kernel of the k-1 constraints
    std::vector<IVec> rows;
    for (size_t i = 0; i < k; ++i)
      if (i != j) rows.push_back(qineqs[init[i]]);
    auto ker = rows.empty() ? std::vector<IVec>{unit_vector(k, 0)} : kernel_basis(IMat::from_rows(rows));
    PTROP_CHECK(ker.size() == 1, "initial cone degenerate");
    IVec r = primitive(ker[0]);
    if (dot(qineqs[init[j]], r) < 0) r = neg(r);
    detail::DDRay dr;
    dr.v = r;
    for (size_t i = 0; i < k; ++i)
      if (i != j) dr.zero.insert(init[i]);
    rays.push_back(std::move(dr));
  }
  (void)d;

  // incremental insertion of the remaining inequalities
  for (size_t idx = 0; idx < qineqs.size(); ++idx) {
    if (std::find(init.begin(), init.end(), idx) != init.end()) continue;
    const IVec& a = qineqs[idx];
    std::vector<detail::DDRay> pos, negs, zero;
    for (auto& r : rays) {
      Int s = dot(a, r.v);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        negs.push_back(r);
      else {
        r.zero.insert(idx);
        zero.push_back(r);
      }
    }
    std::vector<detail::DDRay> next = pos;
    for (auto& z : zero) next.push_back(z);
    for (const auto& rp : pos) {
      for (const auto& rn : negs) {
        // adjacency: no other ray is tight on zero(rp) & zero(rn)
        std::set<size_t> common;
        std::set_intersection(rp.zero.begin(), rp.zero.end(), rn.zero.begin(), rn.zero.end(),
                              std::inserter(common, common.begin()));
        bool adjacent = true;
        for (const auto& other : rays) {
          if (other.v == rp.v || other.v == rn.v) continue;
          bool covers = std::includes(other.zero.begin(), other.zero.end(), common.begin(), common.end());
          if (covers) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        IVec w = sub(scale(dot(a, rp.v), rn.v), scale(dot(a, rn.v), rp.v));
        w = primitive(w);
        detail::DDRay nr;
        nr.v = w;
        nr.zero = common;
        nr.zero.insert(idx);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  // lift back and deduplicate
  std::set<IVec> seen;
  for (const auto& r : rays) {
    IVec lifted = mul(S, r.v);
    // reduce modulo nothing needed; keep primitive
    lifted = primitive(lifted);
    if (seen.insert(lifted).second) res.rays.push_back(lifted);
  }
  std::sort(res.rays.begin(), res.rays.end(), lex_less);
  return res;
}

// Extreme rays of the cone generated by `gens` (+ lineality): computed as the
// dual of the dual. Returns generators in canonical (sorted primitive) form.
inline DDResult dd_extreme_from_generators(const std::vector<IVec>& gens,
                                           const std::vector<IVec>& lin, size_t ambient) {
  // dual cone D = {a : <a,g> >= 0 for all g, <a,l> = 0 for all l}
  std::vector<IVec> ineqs = gens;
  for (const auto& l : lin) {
    ineqs.push_back(l);
    ineqs.push_back(neg(l));
  }
  DDResult dual = dd_rays(ineqs, ambient);
  // primal extreme rays = facets of the dual: run dd again on dual rays
  std::vector<IVec> ineqs2 = dual.rays;
  for (const auto& l : dual.lineality) {
    ineqs2.push_back(l);
    ineqs2.push_back(neg(l));
  }
  return dd_rays(ineqs2, ambient);
}

}  // namespace ptrop
