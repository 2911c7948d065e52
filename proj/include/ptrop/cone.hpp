#pragma once

#include "ptrop/dd.hpp"

#include <set>

namespace ptrop {

// Rational polyhedral cone with primitive irredundant ray generators and an
// explicit lineality basis for the non-pointed case.
struct Cone {
  size_t rank = 0;
  std::vector<IVec> rays;       // sorted primitive extreme rays
  std::vector<IVec> lineality;  // canonical basis of the lineality lattice
  // H-description, computed on construction:
  std::vector<IVec> ineqs;     // <a,x> >= 0 on the cone
  std::vector<IVec> span_eqs;  // <a,x> = 0 on the cone (annihilator of span)

  size_t dim() const {
    std::vector<IVec> all = rays;
    all.insert(all.end(), lineality.begin(), lineality.end());
    return all.empty() ? 0 : rank_of_rows(all);
  }

  bool pointed() const { return lineality.empty(); }

  bool contains(const IVec& x) const {
    for (const auto& a : span_eqs)
      if (dot(a, x) != 0) return false;
    for (const auto& a : ineqs)
      if (dot(a, x) < 0) return false;
    return true;
  }

  bool contains_q(const QVec& x) const {
    for (const auto& a : span_eqs)
      if (dotq(a, x) != 0) return false;
    for (const auto& a : ineqs)
      if (dotq(a, x) < 0) return false;
    return true;
  }

  // relative interior membership
  bool contains_in_relint(const IVec& x) const {
    for (const auto& a : span_eqs)
      if (dot(a, x) != 0) return false;
    for (const auto& a : ineqs)
      if (dot(a, x) <= 0) return false;
    return true;
  }

  bool operator==(const Cone& o) const {
    return rank == o.rank && rays == o.rays && lineality == o.lineality;
  }
  bool operator<(const Cone& o) const {
    if (rays != o.rays) return rays < o.rays;
    return lineality < o.lineality;
  }
};

inline std::vector<IVec> canonical_lattice_basis(const std::vector<IVec>& gens, size_t ambient) {
  auto sat = saturated_row_basis(gens, ambient);
  if (sat.empty()) return {};
  IMat h = hnf_rows(IMat::from_rows(sat));
  std::vector<IVec> out;
  for (size_t i = 0; i < h.rows; ++i)
    if (!is_zero(h.row(i))) out.push_back(h.row(i));
  return out;
}

inline Cone make_cone(const std::vector<IVec>& generators, size_t rank,
                      const std::vector<IVec>& lineality_gens = {}) {
  Cone c;
  c.rank = rank;
  DDResult ext = dd_extreme_from_generators(generators, lineality_gens, rank);
  c.rays = ext.rays;
  c.lineality = canonical_lattice_basis(ext.lineality, rank);
  std::vector<IVec> dual_in = c.rays;
  for (const auto& l : c.lineality) {
    dual_in.push_back(l);
    dual_in.push_back(neg(l));
  }
  DDResult dual = dd_rays(dual_in, rank);
  c.ineqs = dual.rays;
  c.span_eqs = dual.lineality;
  return c;
}

inline Cone dual_cone(const Cone& c) {
  std::vector<IVec> gens = c.ineqs;
  std::vector<IVec> lin = c.span_eqs;
  return make_cone(gens, c.rank, lin);
}

// Minimal face of c containing x (x must lie in c).
inline Cone minimal_face_containing(const Cone& c, const IVec& x) {
  PTROP_CHECK(c.contains(x), "point not in cone");
  std::vector<IVec> gens;
  for (const auto& r : c.rays) {
    bool keep = true;
    for (const auto& a : c.ineqs)
      if (dot(a, x) == 0 && dot(a, r) != 0) {
        keep = false;
        break;
      }
    if (keep) gens.push_back(r);
  }
  return make_cone(gens, c.rank, c.lineality);
}

// All faces of the cone (including the cone itself and its minimal face).
inline std::vector<Cone> cone_faces(const Cone& c) {
  std::set<std::vector<IVec>> seen;
  std::vector<Cone> out;
  std::vector<std::vector<IVec>> queue = {c.rays};
  seen.insert(c.rays);
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    out.push_back(make_cone(cur, c.rank, c.lineality));
    for (const auto& a : c.ineqs) {
      std::vector<IVec> tight;
      for (const auto& r : cur)
        if (dot(a, r) == 0) tight.push_back(r);
      if (tight == cur) continue;
      if (seen.insert(tight).second) queue.push_back(tight);
    }
  }
  return out;
}

inline bool is_face_of(const Cone& face, const Cone& c) {
  // face's rays must be rays of c, cut out by tight inequalities
  for (const auto& r : face.rays)
    if (!c.contains(r)) return false;
  if (face.lineality != c.lineality) return false;
  std::vector<IVec> tight_ineqs;
  for (const auto& a : c.ineqs) {
    bool tight = true;
    for (const auto& r : face.rays)
      if (dot(a, r) != 0) {
        tight = false;
        break;
      }
    if (tight) tight_ineqs.push_back(a);
  }
  std::vector<IVec> cut;
  for (const auto& r : c.rays) {
    bool on = true;
    for (const auto& a : tight_ineqs)
      if (dot(a, r) != 0) {
        on = false;
        break;
      }
    if (on) cut.push_back(r);
  }
  return cut == face.rays;
}

// Sum of two cones (the cone generated by both).
inline Cone cone_sum(const Cone& a, const Cone& b) {
  std::vector<IVec> gens = a.rays;
  gens.insert(gens.end(), b.rays.begin(), b.rays.end());
  std::vector<IVec> lin = a.lineality;
  lin.insert(lin.end(), b.lineality.begin(), b.lineality.end());
  return make_cone(gens, a.rank, lin);
}

inline Cone cone_intersection(const Cone& a, const Cone& b) {
  std::vector<IVec> ineqs = a.ineqs;
  ineqs.insert(ineqs.end(), b.ineqs.begin(), b.ineqs.end());
  for (const auto& e : a.span_eqs) {
    ineqs.push_back(e);
    ineqs.push_back(neg(e));
  }
  for (const auto& e : b.span_eqs) {
    ineqs.push_back(e);
    ineqs.push_back(neg(e));
  }
  DDResult r = dd_rays(ineqs, a.rank);
  return make_cone(r.rays, a.rank, r.lineality);
}

// ---------------------------------------------------------------------------
// Hilbert basis of a pointed cone, by bounded brute force: candidates are the
// lattice points of the bounding box of the ray zonotope, reduced greedily.
inline std::vector<IVec> hilbert_basis(const Cone& c) {
  PTROP_CHECK(c.pointed(), "Hilbert basis needs a pointed cone");
  if (c.rays.empty()) return {};
  size_t n = c.rank;
  IVec lo(n, 0), hi(n, 0);
  for (const auto& r : c.rays)
    for (size_t i = 0; i < n; ++i) {
      if (r[i] < 0) lo[i] += r[i];
      if (r[i] > 0) hi[i] += r[i];
    }
  // functional positive on the cone minus origin
  IVec ell(n, 0);
  for (const auto& a : c.ineqs) ell = add(ell, a);
  for (const auto& e : c.span_eqs) {
    // make ell strictly positive on span directions too: not needed, the
    // cone lives inside the span
    (void)e;
  }

  std::vector<IVec> cand;
  IVec p = lo;
  while (true) {
    if (!is_zero(p) && c.contains(p)) cand.push_back(p);
    size_t i = 0;
    while (i < n) {
      if (p[i] < hi[i]) {
        ++p[i];
        break;
      }
      p[i] = lo[i];
      ++i;
    }
    if (i == n) break;
  }
  std::sort(cand.begin(), cand.end(), [&](const IVec& a, const IVec& b) {
    Int la = dot(ell, a), lb = dot(ell, b);
    return la != lb ? la < lb : lex_less(a, b);
  });
  std::vector<IVec> basis;
  for (const auto& q : cand) {
    bool reducible = false;
    for (const auto& h : basis) {
      IVec d = sub(q, h);
      if (is_zero(d)) continue;
      if (c.contains(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(q);
  }
  std::sort(basis.begin(), basis.end(), lex_less);
  return basis;
}

}  // namespace ptrop
