#pragma once

#include "ptrop/dd.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ptrop {

// Affine-hull data of a point set: e(x) = p0 + B^T x maps Z^dim onto the
// lattice points of the hull plane.
struct AffineEmbedding {
  size_t ambient = 0;
  size_t dim = 0;
  IVec p0;
  std::vector<IVec> basis;  // dim rows of length ambient, saturated

  IVec embed(const IVec& x) const {
    IVec p = p0;
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < ambient; ++j) p[j] += basis[i][j] * x[i];
    return p;
  }

  // coordinates of an ambient point on the hull plane
  IVec project(const IVec& p) const {
    if (dim == 0) return {};
    QVec x;
    IMat bt = IMat::from_rows(basis).transpose();
    PTROP_CHECK(solve_q(bt, sub(p, p0), x), "point not on affine hull");
    IVec r(dim);
    for (size_t i = 0; i < dim; ++i) {
      PTROP_CHECK(boost::multiprecision::denominator(x[i]) == 1, "point not a hull lattice point");
      r[i] = boost::multiprecision::numerator(x[i]);
    }
    return r;
  }
};

inline AffineEmbedding affine_embedding_of(const std::vector<IVec>& points, size_t ambient) {
  PTROP_CHECK(!points.empty(), "empty point set");
  AffineEmbedding e;
  e.ambient = ambient;
  e.p0 = *std::min_element(points.begin(), points.end(), lex_less);
  std::vector<IVec> dirs;
  for (const auto& p : points)
    if (p != e.p0) dirs.push_back(sub(p, e.p0));
  e.basis = saturated_row_basis(dirs, ambient);
  e.dim = e.basis.size();
  return e;
}

struct Facet {
  IVec normal;  // primitive
  Int offset;   // <normal, x> >= -offset on the polytope
};

// Convex hull of integer points. Stores the V-representation together with
// the affine hull equations and facet inequalities (irredundant on the hull).
struct LatticePolytope {
  size_t rank = 0;             // ambient dimension
  std::vector<IVec> vertices;  // extreme points, sorted lex
  std::vector<Facet> facets;
  std::vector<std::pair<IVec, Int>> equations;  // <a,x> = c on the polytope

  size_t dim() const { return rank - equations.size(); }
  bool full_dim() const { return equations.empty(); }

  bool contains(const IVec& p) const {
    for (const auto& [a, c] : equations)
      if (dot(a, p) != c) return false;
    for (const auto& f : facets)
      if (dot(f.normal, p) < -f.offset) return false;
    return true;
  }

  bool contains_q(const QVec& p) const {
    for (const auto& [a, c] : equations)
      if (dotq(a, p) != Rat(c)) return false;
    for (const auto& f : facets)
      if (dotq(f.normal, p) < -Rat(f.offset)) return false;
    return true;
  }

  bool strictly_contains(const IVec& p) const {
    for (const auto& [a, c] : equations)
      if (dot(a, p) != c) return false;
    for (const auto& f : facets)
      if (dot(f.normal, p) <= -f.offset) return false;
    return true;
  }

  bool operator==(const LatticePolytope& o) const {
    return rank == o.rank && vertices == o.vertices;
  }
};

inline LatticePolytope hull_of(std::vector<IVec> points, size_t rank) {
  PTROP_CHECK(!points.empty(), "hull of empty point set");
  for (const auto& p : points) PTROP_CHECK(p.size() == rank, "point dimension mismatch");
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());

  LatticePolytope P;
  P.rank = rank;
  AffineEmbedding e = affine_embedding_of(points, rank);

  if (e.dim == 0) {
    P.vertices = {points[0]};
    for (size_t i = 0; i < rank; ++i)
      P.equations.push_back({unit_vector(rank, i), points[0][i]});
    return P;
  }

  // facets of the projected full-dimensional hull, via the dual cone of the
  // homogenization {(x,1)}
  std::vector<IVec> proj;
  proj.reserve(points.size());
  for (const auto& p : points) proj.push_back(e.project(p));
  std::vector<IVec> lifted;
  for (const auto& x : proj) {
    IVec l = x;
    l.push_back(1);
    lifted.push_back(l);
  }
  DDResult dual = dd_rays(lifted, e.dim + 1);
  PTROP_CHECK(dual.lineality.empty(), "homogenized hull has lineality");

  std::vector<std::pair<IVec, Int>> pfacets;  // <a,x> >= -c in projected coords
  for (const auto& r : dual.rays) {
    IVec a(r.begin(), r.end() - 1);
    if (is_zero(a)) continue;  // far halfspace
    pfacets.push_back({a, r.back()});
  }

  // vertices: projected points tight on dim many independent facets
  std::vector<size_t> vert_idx;
  for (size_t i = 0; i < proj.size(); ++i) {
    std::vector<IVec> tight;
    for (const auto& [a, c] : pfacets)
      if (dot(a, proj[i]) == -c) tight.push_back(a);
    if (rank_of_rows(tight) == e.dim) vert_idx.push_back(i);
  }
  for (size_t i : vert_idx) P.vertices.push_back(points[i]);
  std::sort(P.vertices.begin(), P.vertices.end(), lex_less);

  // pull facets back to the ambient lattice
  if (e.dim == rank) {
    for (auto& [a, c] : pfacets) {
      Int off = c - dot(a, e.p0);
      P.facets.push_back({a, off});
    }
  } else {
    IMat B = IMat::from_rows(e.basis);
    IMat S = detail::integral_section(B);  // B*S = I
    for (auto& [a, c] : pfacets) {
      IVec amb = mul(S, a);  // B*amb = a, so amb restricts to the facet covector
      Int off = c - dot(amb, e.p0);
      P.facets.push_back({amb, off});
    }
    for (const auto& n : orthogonal_complement(e.basis, rank))
      P.equations.push_back({n, dot(n, e.p0)});
  }
  std::sort(P.facets.begin(), P.facets.end(), [](const Facet& x, const Facet& y) {
    return x.normal != y.normal ? lex_less(x.normal, y.normal) : x.offset < y.offset;
  });
  return P;
}

// ---------------------------------------------------------------------------
// duality

struct PolytopeDual {
  bool integral = false;
  std::vector<QVec> vertices_q;
  LatticePolytope lattice;  // valid when integral
};

inline PolytopeDual dual_polytope(const LatticePolytope& P) {
  PTROP_CHECK(P.full_dim() && P.strictly_contains(IVec(P.rank, 0)),
              "not full-dimensional around 0");
  // {y : <v,y> >= -1 for all vertices v}: homogenize with t, y scaled by t
  std::vector<IVec> ineqs;
  for (const auto& v : P.vertices) {
    IVec a = v;
    a.push_back(1);
    ineqs.push_back(a);
  }
  DDResult r = dd_rays(ineqs, P.rank + 1);
  PTROP_CHECK(r.lineality.empty(), "dual polytope unbounded");
  PolytopeDual out;
  out.integral = true;
  std::vector<IVec> ipts;
  for (const auto& ray : r.rays) {
    Int t = ray.back();
    PTROP_CHECK(t > 0, "dual polytope unbounded");
    QVec y(P.rank);
    bool intg = true;
    for (size_t i = 0; i < P.rank; ++i) {
      y[i] = Rat(ray[i], t);
      if (ray[i] % t != 0) intg = false;
    }
    out.vertices_q.push_back(y);
    if (intg) {
      IVec iy(P.rank);
      for (size_t i = 0; i < P.rank; ++i) iy[i] = ray[i] / t;
      ipts.push_back(iy);
    } else {
      out.integral = false;
    }
  }
  if (out.integral) out.lattice = hull_of(ipts, P.rank);
  std::sort(out.vertices_q.begin(), out.vertices_q.end());
  return out;
}

inline bool is_reflexive(const LatticePolytope& P) {
  if (!P.full_dim()) return false;
  if (!P.strictly_contains(IVec(P.rank, 0))) return false;
  for (const auto& f : P.facets)
    if (f.offset != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// lattice points, Minkowski sum, faces

inline std::vector<IVec> lattice_points(const LatticePolytope& P) {
  IVec lo = P.vertices[0], hi = P.vertices[0];
  for (const auto& v : P.vertices)
    for (size_t i = 0; i < P.rank; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  std::vector<IVec> out;
  IVec p = lo;
  while (true) {
    if (P.contains(p)) out.push_back(p);
    size_t i = 0;
    while (i < P.rank) {
      if (p[i] < hi[i]) {
        ++p[i];
        break;
      }
      p[i] = lo[i];
      ++i;
    }
    if (i == P.rank) break;
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

inline std::vector<IVec> interior_lattice_points(const LatticePolytope& P) {
  std::vector<IVec> out;
  for (const auto& p : lattice_points(P))
    if (P.full_dim() && P.strictly_contains(p)) out.push_back(p);
  return out;
}

inline LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
  PTROP_CHECK(P.rank == Q.rank, "Minkowski sum: ambient lattice mismatch");
  std::vector<IVec> sums;
  sums.reserve(P.vertices.size() * Q.vertices.size());
  for (const auto& p : P.vertices)
    for (const auto& q : Q.vertices) sums.push_back(add(p, q));
  return hull_of(sums, P.rank);
}

inline LatticePolytope dilate(const LatticePolytope& P, const Int& k) {
  std::vector<IVec> pts;
  for (const auto& v : P.vertices) pts.push_back(scale(k, v));
  return hull_of(pts, P.rank);
}

// A face recorded by the vertices lying on it. The empty face has dim -1.
struct Face {
  std::vector<size_t> vertex_ids;  // sorted indices into P.vertices
  int dim = -1;
};

// Full face poset (including the empty face and P itself), ordered by
// inclusion of vertex sets.
inline std::vector<Face> face_poset(const LatticePolytope& P) {
  std::set<std::vector<size_t>> seen;
  std::vector<Face> out;

  auto dim_of = [&](const std::vector<size_t>& ids) -> int {
    if (ids.empty()) return -1;
    std::vector<IVec> dirs;
    for (size_t i = 1; i < ids.size(); ++i)
      dirs.push_back(sub(P.vertices[ids[i]], P.vertices[ids[0]]));
    return dirs.empty() ? 0 : int(rank_of_rows(dirs));
  };

  std::vector<size_t> all(P.vertices.size());
  std::iota(all.begin(), all.end(), 0);

  std::vector<std::vector<size_t>> facet_sets;
  for (const auto& f : P.facets) {
    std::vector<size_t> ids;
    for (size_t i = 0; i < P.vertices.size(); ++i)
      if (dot(f.normal, P.vertices[i]) == -f.offset) ids.push_back(i);
    facet_sets.push_back(ids);
  }

  std::vector<std::vector<size_t>> queue = {all};
  seen.insert(all);
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    out.push_back({cur, dim_of(cur)});
    for (const auto& fs : facet_sets) {
      std::vector<size_t> inter;
      std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(),
                            std::back_inserter(inter));
      if (inter.empty() || inter == cur) continue;
      if (seen.insert(inter).second) queue.push_back(inter);
    }
  }
  out.push_back({{}, -1});
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertex_ids < b.vertex_ids;
  });
  return out;
}

// Counts of nonempty faces by dimension, the polytope itself included.
inline std::vector<size_t> f_vector(const LatticePolytope& P) {
  auto faces = face_poset(P);
  int d = int(P.dim());
  std::vector<size_t> f(size_t(d) + 1, 0);
  for (const auto& face : faces)
    if (face.dim >= 0 && face.dim <= d) ++f[size_t(face.dim)];
  return f;
}

// Lattice points of a (possibly lower-dimensional) face given by vertex ids.
inline std::vector<IVec> face_lattice_points(const LatticePolytope& P,
                                             const std::vector<size_t>& ids) {
  if (ids.empty()) return {};
  std::vector<IVec> pts;
  for (size_t i : ids) pts.push_back(P.vertices[i]);
  LatticePolytope F = hull_of(pts, P.rank);
  return lattice_points(F);
}

// Interior lattice points of a face in its own affine hull (l* in Batyrev's
// formulas); vertices and the empty face give 0.
inline std::vector<IVec> face_interior_lattice_points(const LatticePolytope& P,
                                                      const std::vector<size_t>& ids) {
  if (ids.size() <= 1) return {};
  std::vector<IVec> pts;
  for (size_t i : ids) pts.push_back(P.vertices[i]);
  LatticePolytope F = hull_of(pts, P.rank);
  AffineEmbedding e = affine_embedding_of(F.vertices, P.rank);
  std::vector<IVec> proj;
  for (const auto& v : F.vertices) proj.push_back(e.project(v));
  LatticePolytope Fp = hull_of(proj, e.dim);
  std::vector<IVec> out;
  for (const auto& x : lattice_points(Fp))
    if (Fp.strictly_contains(x)) out.push_back(e.embed(x));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// ---------------------------------------------------------------------------
// text format: "dim=<n> count=<k>" then k lines of n integers

inline std::string write_polytope_text(const LatticePolytope& P) {
  std::ostringstream os;
  os << "dim=" << P.rank << " count=" << P.vertices.size() << "\n";
  for (const auto& v : P.vertices) {
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << "\n";
  }
  return os.str();
}

inline LatticePolytope read_polytope_text(std::istream& in) {
  std::string header;
  PTROP_CHECK(bool(std::getline(in, header)), "empty polytope file");
  size_t n = 0, k = 0;
  if (sscanf(header.c_str(), "dim=%zu count=%zu", &n, &k) != 2)
    throw error("bad polytope header: " + header);
  std::vector<IVec> pts;
  for (size_t i = 0; i < k; ++i) {
    std::string line;
    PTROP_CHECK(bool(std::getline(in, line)), "truncated polytope file");
    std::istringstream ls(line);
    IVec p(n);
    for (size_t j = 0; j < n; ++j) {
      std::string tok;
      PTROP_CHECK(bool(ls >> tok), "short vertex line");
      p[j] = Int(tok);
    }
    pts.push_back(p);
  }
  return hull_of(pts, n);
}

}  // namespace ptrop
