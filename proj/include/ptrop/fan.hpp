#pragma once

#include "ptrop/cone.hpp"
#include "ptrop/polytope.hpp"

#include <map>

namespace ptrop {

// Finite fan, stored by its maximal cones; faces are derived on demand.
struct Fan {
  size_t rank = 0;
  std::vector<Cone> maximal;
  bool complete = false;

  // index of a maximal cone containing x (first match), or npos
  static constexpr size_t npos = size_t(-1);
  size_t find_maximal(const IVec& x) const {
    for (size_t i = 0; i < maximal.size(); ++i)
      if (maximal[i].contains(x)) return i;
    return npos;
  }
  size_t find_maximal_q(const QVec& x) const {
    for (size_t i = 0; i < maximal.size(); ++i)
      if (maximal[i].contains_q(x)) return i;
    return npos;
  }
};

inline std::vector<Cone> fan_all_cones(const Fan& f) {
  std::set<Cone> seen;
  for (const auto& c : f.maximal)
    for (const auto& face : cone_faces(c)) seen.insert(face);
  return {seen.begin(), seen.end()};
}

// The fan property: pairwise intersections are faces of each.
inline void validate_fan(const Fan& f) {
  for (size_t i = 0; i < f.maximal.size(); ++i)
    for (size_t j = i + 1; j < f.maximal.size(); ++j) {
      Cone w = cone_intersection(f.maximal[i], f.maximal[j]);
      PTROP_CHECK(is_face_of(w, f.maximal[i]) && is_face_of(w, f.maximal[j]),
                  "cones do not intersect in a common face");
    }
}

// A fan of pointed full-dimensional cones is complete iff every wall (facet
// of a maximal cone) is shared by exactly two maximal cones.
inline bool fan_is_complete(const Fan& f) {
  if (f.maximal.empty()) return false;
  size_t n = f.rank;
  size_t d = f.maximal[0].dim();
  if (d < n) return false;
  if (f.maximal.size() == 1)
    return f.maximal[0].lineality.size() == n;  // only the whole space
  std::map<std::vector<IVec>, int> wall_count;
  for (const auto& c : f.maximal) {
    for (const auto& face : cone_faces(c)) {
      if (face.dim() + 1 != c.dim()) continue;
      std::vector<IVec> key = face.rays;
      for (const auto& l : face.lineality) key.push_back(l);
      std::sort(key.begin(), key.end(), lex_less);
      ++wall_count[key];
    }
  }
  for (const auto& [w, cnt] : wall_count)
    if (cnt != 2) return false;
  return true;
}

inline Fan make_fan(std::vector<Cone> maximal, size_t rank, bool validate = true) {
  Fan f;
  f.rank = rank;
  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
  f.maximal = std::move(maximal);
  if (validate) validate_fan(f);
  f.complete = fan_is_complete(f);
  return f;
}

// Inner normal fan: the cone of a face F consists of the covectors minimized
// exactly along F. Maximal cones correspond to vertices.
inline Fan normal_fan(const LatticePolytope& P) {
  PTROP_CHECK(P.full_dim(), "normal fan needs a full-dimensional polytope");
  std::vector<Cone> maximal;
  for (const auto& v : P.vertices) {
    std::vector<IVec> ineqs;
    for (const auto& u : P.vertices) {
      if (u == v) continue;
      ineqs.push_back(sub(u, v));
    }
    DDResult r = dd_rays(ineqs, P.rank);
    maximal.push_back(make_cone(r.rays, P.rank, r.lineality));
  }
  Fan f = make_fan(std::move(maximal), P.rank, false);
  PTROP_CHECK(f.complete, "normal fan of a full-dimensional polytope must be complete");
  return f;
}

// The fan in the quotient lattice by the saturated span of K, with cones the
// images of the cones containing K.
inline Fan quotient_fan(const Fan& f, const Cone& K) {
  bool found = false;
  for (const auto& c : f.maximal)
    if (is_face_of(K, c)) {
      found = true;
      break;
    }
  PTROP_CHECK(found, "K is not a cone of the fan");
  std::vector<IVec> span = K.rays;
  span.insert(span.end(), K.lineality.begin(), K.lineality.end());
  auto sat = saturated_row_basis(span, f.rank);
  IMat P = quotient_projection(sat, f.rank);
  size_t qrank = P.rows;
  std::vector<Cone> maximal;
  for (const auto& c : f.maximal) {
    if (!is_face_of(K, c)) continue;
    std::vector<IVec> gens, lin;
    for (const auto& r : c.rays) gens.push_back(mul(P, r));
    for (const auto& l : c.lineality) lin.push_back(mul(P, l));
    maximal.push_back(make_cone(gens, qrank, lin));
  }
  return make_fan(std::move(maximal), qrank, false);
}

// Fan of cones over the proper faces of a polytope containing 0 strictly
// ("the fan of cones over the faces of Delta").
inline Fan face_fan(const LatticePolytope& P) {
  PTROP_CHECK(P.full_dim() && P.strictly_contains(IVec(P.rank, 0)),
              "face fan needs 0 in the interior");
  std::vector<Cone> maximal;
  for (const auto& f : P.facets) {
    std::vector<IVec> gens;
    for (const auto& v : P.vertices)
      if (dot(f.normal, v) == -f.offset) gens.push_back(v);
    maximal.push_back(make_cone(gens, P.rank));
  }
  Fan fan = make_fan(std::move(maximal), P.rank, false);
  PTROP_CHECK(fan.complete, "face fan must be complete");
  return fan;
}

}  // namespace ptrop
