#pragma once

#include "ptrop/fan.hpp"

#include <map>
#include <optional>
#include <set>

namespace ptrop {

// A corner is a (cell, local vertex) incidence; vertex classes can meet the
// same cell in several corners when a cell is glued to itself across two
// distinct facets (the one-cell circle).
struct Corner {
  size_t cell = 0;
  size_t vert = 0;  // index into cells[cell].vertices
  auto operator<=>(const Corner&) const = default;
};

// Identification of a facet of cell_a with a facet of cell_b by matched
// local vertex indices; the induced map on the facet's affine hull must be
// integral-affine and bijective on lattice points.
struct Gluing {
  size_t cell_a = 0, cell_b = 0;
  std::vector<size_t> verts_a, verts_b;  // parallel lists
};

struct FaceClass {
  int dim = -1;
  // members as (cell, sorted local vertex indices); one per cell incidence
  std::vector<std::pair<size_t, std::vector<size_t>>> members;
};

// Discriminant graph: nodes are the barycenters of intermediate-dimensional
// face classes, arcs the flags between them.
struct DiscriminantArc {
  size_t lo = 0, hi = 0;  // face class ids, dim(lo)+1 == dim(hi)
  bool boundary = false;  // hi wall not glued (non-closed complex)
  bool removed = false;   // trivial monodromy, erased by the extension pass
};

struct Discriminant {
  std::vector<size_t> nodes;  // face class ids with 1 <= dim <= n-1
  std::vector<DiscriminantArc> arcs;
  std::set<size_t> removed_nodes;

  bool empty_after_removal() const {
    for (const auto& a : arcs)
      if (!a.removed) return true && false;
    for (size_t n : nodes)
      if (!removed_nodes.count(n)) return false;
    return true;
  }
};

class AffineComplex {
 public:
  size_t dim = 0;  // n; all maximal cells are full-dimensional in Z^n
  std::vector<LatticePolytope> cells;
  std::vector<Gluing> gluings;
  // chart linear parts: psi_{v,cell}(x) = L * (x - position of the corner)
  std::map<Corner, IMat> charts;
  bool extend_across_facets = false;

  // derived combinatorics (filled by build)
  std::vector<FaceClass> face_classes;
  std::map<std::pair<size_t, std::vector<size_t>>, size_t> face_index;  // member -> class id
  std::vector<size_t> vertex_classes;        // class ids of dim 0, sorted
  std::map<Corner, size_t> corner_class;     // corner -> vertex class id
  std::vector<std::vector<Corner>> class_corners_by_id;  // class id -> corners
  bool closed = false;
  std::optional<Discriminant> discriminant;

  const IVec& corner_pos(const Corner& k) const { return cells[k.cell].vertices[k.vert]; }

  size_t n_vertices() const { return vertex_classes.size(); }

  // face classes of a given dimension
  std::vector<size_t> classes_of_dim(int d) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < face_classes.size(); ++i)
      if (face_classes[i].dim == d) out.push_back(i);
    return out;
  }

  // the unique corner of vertex class vc in cell c; throws if absent or
  // ambiguous
  Corner corner_of_class_in_cell(size_t vc, size_t c) const {
    std::optional<Corner> found;
    for (const auto& k : class_corners_by_id[vc])
      if (k.cell == c) {
        PTROP_CHECK(!found, "vertex class meets the cell in several corners");
        found = k;
      }
    PTROP_CHECK(bool(found), "vertex class does not meet the cell");
    return *found;
  }

  // cells incident to a face class
  std::vector<size_t> cells_of_class(size_t fc) const {
    std::vector<size_t> out;
    for (const auto& [c, s] : face_classes[fc].members) out.push_back(c);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // vertex classes of a face class
  std::vector<size_t> vertex_classes_of(size_t fc) const {
    std::set<size_t> out;
    const auto& [c, s] = face_classes[fc].members.front();
    for (size_t lv : s) out.insert(corner_class.at({c, lv}));
    return {out.begin(), out.end()};
  }

  bool class_contains(size_t small, size_t big) const {
    for (const auto& [c, s] : face_classes[big].members) {
      for (const auto& [c2, s2] : face_classes[small].members)
        if (c2 == c && std::includes(s.begin(), s.end(), s2.begin(), s2.end())) return true;
    }
    return false;
  }
};

namespace detail {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

// checks that matched vertex lists induce an integral-affine bijection of the
// two facets' lattice points
inline void validate_gluing_map(const LatticePolytope& A, const std::vector<size_t>& va,
                                const LatticePolytope& B, const std::vector<size_t>& vb) {
  PTROP_CHECK(va.size() == vb.size() && !va.empty(), "gluing vertex lists mismatch");
  std::vector<IVec> pa, pb;
  for (size_t i : va) pa.push_back(A.vertices.at(i));
  for (size_t i : vb) pb.push_back(B.vertices.at(i));
  // the linear part on hull directions must be integral both ways
  AffineEmbedding ea = affine_embedding_of(pa, A.rank);
  AffineEmbedding eb = affine_embedding_of(pb, B.rank);
  PTROP_CHECK(ea.dim == eb.dim, "glued faces have different dimensions");
  // solve for the matrix taking direction coordinates of A-side to B-side
  std::vector<IVec> ca, cb;
  for (size_t i = 0; i < pa.size(); ++i) {
    ca.push_back(ea.project(pa[i]));
    cb.push_back(eb.project(pb[i]));
  }
  // affine map in projected coords: x -> M x + t
  size_t d = ea.dim;
  IMat M(d, d);
  {
    // build from differences against the first matched vertex
    std::vector<IVec> da, db;
    for (size_t i = 1; i < ca.size(); ++i) {
      da.push_back(sub(ca[i], ca[0]));
      db.push_back(sub(cb[i], cb[0]));
    }
    // solve M * da_j = db_j: columns of M from an invertible subset
    IMat DA = IMat::from_cols(da), DB = IMat::from_cols(db);
    // find d independent columns of DA
    std::vector<size_t> pick;
    std::vector<IVec> acc;
    for (size_t j = 0; j < DA.cols && pick.size() < d; ++j) {
      acc.push_back(DA.col(j));
      if (rank_of_rows(acc) < acc.size())
        acc.pop_back();
      else
        pick.push_back(j);
    }
    PTROP_CHECK(pick.size() == d, "glued face vertices do not span");
    IMat A1(d, d), B1(d, d);
    for (size_t j = 0; j < d; ++j)
      for (size_t i = 0; i < d; ++i) {
        A1(i, j) = DA(i, pick[j]);
        B1(i, j) = DB(i, pick[j]);
      }
    // M = B1 * A1^{-1}; must be integral with det +-1
    Int dA = det(A1);
    PTROP_CHECK(dA != 0, "degenerate gluing");
    // adjugate division
    IMat adj(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        IMat minor(d - 1, d - 1);
        for (size_t r = 0, mr = 0; r < d; ++r) {
          if (r == i) continue;
          for (size_t cc = 0, mc = 0; cc < d; ++cc) {
            if (cc == j) continue;
            minor(mr, mc++) = A1(r, cc);
          }
          ++mr;
        }
        Int cof = det(minor);
        if ((i + j) % 2) cof = -cof;
        adj(j, i) = cof;
      }
    IMat num = mul(B1, adj);
    for (auto& x : num.a) {
      PTROP_CHECK(x % dA == 0, "gluing map is not integral");
      x /= dA;
    }
    M = num;
    Int dm = det(M);
    PTROP_CHECK(dm == 1 || dm == -1, "gluing linear part is not a lattice isomorphism");
    // verify on all matched vertices
    for (size_t i = 0; i < ca.size(); ++i) {
      IVec want = add(mul(M, sub(ca[i], ca[0])), cb[0]);
      PTROP_CHECK(want == cb[i], "vertex matching is not affine");
    }
  }
  // lattice point bijection on the glued faces
  LatticePolytope FA = hull_of(pa, A.rank), FB = hull_of(pb, B.rank);
  auto la = lattice_points(FA);
  auto lb = lattice_points(FB);
  PTROP_CHECK(la.size() == lb.size(), "glued faces have different lattice point counts");
  std::set<IVec> lbset(lb.begin(), lb.end());
  for (const auto& p : la) {
    IVec img = add(mul(M, sub(ea.project(p), ca[0])), cb[0]);
    PTROP_CHECK(lbset.count(eb.embed(img)), "gluing does not biject lattice points");
  }
}

}  // namespace detail

// Face poset of a cell as sorted local-vertex-index sets (proper nonempty
// faces plus the cell itself).
inline std::vector<std::pair<std::vector<size_t>, int>> cell_faces(const LatticePolytope& P) {
  std::vector<std::pair<std::vector<size_t>, int>> out;
  for (const auto& f : face_poset(P))
    if (f.dim >= 0) out.push_back({f.vertex_ids, f.dim});
  return out;
}

struct BuildReport {
  bool closed = false;
  Int euler_characteristic = 0;
  bool vertex_links_spherical = true;  // closed n=3 complexes only
  std::vector<size_t> cells_per_dim;
};

// Assembles the face-class structure, validates the gluings and (when given)
// the charts.
inline BuildReport build_complex(AffineComplex& B) {
  const size_t n = B.dim;
  PTROP_CHECK(!B.cells.empty(), "complex without cells");
  for (const auto& c : B.cells) {
    PTROP_CHECK(c.rank == n, "cell ambient dimension mismatch");
    PTROP_CHECK(c.full_dim(), "maximal cells must be full-dimensional");
  }

  // local faces
  std::vector<std::vector<std::pair<std::vector<size_t>, int>>> faces(B.cells.size());
  std::map<std::pair<size_t, std::vector<size_t>>, size_t> local_id;
  std::vector<std::pair<size_t, std::vector<size_t>>> all_faces;
  for (size_t c = 0; c < B.cells.size(); ++c) {
    faces[c] = cell_faces(B.cells[c]);
    for (const auto& [s, d] : faces[c]) {
      local_id[{c, s}] = all_faces.size();
      all_faces.push_back({c, s});
    }
  }

  // facet usage bookkeeping + gluing validation
  std::map<std::pair<size_t, std::vector<size_t>>, int> facet_use;
  detail::UnionFind uf(all_faces.size());
  for (const auto& g : B.gluings) {
    PTROP_CHECK(g.cell_a < B.cells.size() && g.cell_b < B.cells.size(), "gluing cell out of range");
    std::vector<size_t> sa = g.verts_a, sb = g.verts_b;
    std::vector<size_t> sa_sorted = sa, sb_sorted = sb;
    std::sort(sa_sorted.begin(), sa_sorted.end());
    std::sort(sb_sorted.begin(), sb_sorted.end());
    PTROP_CHECK(local_id.count({g.cell_a, sa_sorted}) && local_id.count({g.cell_b, sb_sorted}),
                "glued vertex set is not a face");
    int da = -2, db = -2;
    for (const auto& [s, d] : faces[g.cell_a])
      if (s == sa_sorted) da = d;
    for (const auto& [s, d] : faces[g.cell_b])
      if (s == sb_sorted) db = d;
    PTROP_CHECK(da == int(n) - 1 && db == int(n) - 1, "gluings must identify facets");
    PTROP_CHECK(!(g.cell_a == g.cell_b && sa_sorted == sb_sorted),
                "self-gluing of a facet to itself");
    ++facet_use[{g.cell_a, sa_sorted}];
    ++facet_use[{g.cell_b, sb_sorted}];
    detail::validate_gluing_map(B.cells[g.cell_a], g.verts_a, B.cells[g.cell_b], g.verts_b);

    // identify all subfaces via the vertex bijection
    std::map<size_t, size_t> vmap;  // local vertex of a -> local vertex of b
    for (size_t i = 0; i < g.verts_a.size(); ++i) vmap[g.verts_a[i]] = g.verts_b[i];
    for (const auto& [s, d] : faces[g.cell_a]) {
      if (!std::includes(sa_sorted.begin(), sa_sorted.end(), s.begin(), s.end())) continue;
      std::vector<size_t> t;
      for (size_t lv : s) t.push_back(vmap.at(lv));
      std::sort(t.begin(), t.end());
      PTROP_CHECK(local_id.count({g.cell_b, t}), "gluing does not map faces to faces");
      uf.unite(local_id[{g.cell_a, s}], local_id[{g.cell_b, t}]);
    }
  }
  for (const auto& [key, cnt] : facet_use)
    PTROP_CHECK(cnt == 1, "a facet appears in more than one gluing (non-manifold link)");

  // face classes
  std::map<size_t, size_t> root_to_class;
  B.face_classes.clear();
  B.face_index.clear();
  for (size_t i = 0; i < all_faces.size(); ++i) {
    size_t r = uf.find(i);
    size_t id;
    if (root_to_class.count(r)) {
      id = root_to_class[r];
    } else {
      id = B.face_classes.size();
      root_to_class[r] = id;
      FaceClass fc;
      const auto& [c, s] = all_faces[i];
      for (const auto& [ss, d] : faces[c])
        if (ss == s) fc.dim = d;
      B.face_classes.push_back(fc);
    }
    B.face_classes[id].members.push_back(all_faces[i]);
    B.face_index[all_faces[i]] = id;
  }
  for (auto& fc : B.face_classes) {
    std::sort(fc.members.begin(), fc.members.end());
    fc.members.erase(std::unique(fc.members.begin(), fc.members.end()), fc.members.end());
  }

  // vertex classes and corners
  B.vertex_classes.clear();
  B.corner_class.clear();
  B.class_corners_by_id.assign(B.face_classes.size(), {});
  for (size_t id = 0; id < B.face_classes.size(); ++id) {
    if (B.face_classes[id].dim != 0) continue;
    B.vertex_classes.push_back(id);
    for (const auto& [c, s] : B.face_classes[id].members) {
      Corner k{c, s[0]};
      B.corner_class[k] = id;
      B.class_corners_by_id[id].push_back(k);
    }
  }

  // closedness: every facet glued
  B.closed = true;
  for (size_t c = 0; c < B.cells.size(); ++c)
    for (const auto& [s, d] : faces[c])
      if (d == int(n) - 1 && !facet_use.count({c, s})) B.closed = false;

  // charts, when present, must be unimodular and wall-compatible
  if (!B.charts.empty()) {
    for (size_t vc : B.vertex_classes)
      for (const auto& k : B.class_corners_by_id[vc])
        PTROP_CHECK(B.charts.count(k), "missing chart for a corner");
    for (const auto& [k, L] : B.charts) {
      Int d = det(L);
      PTROP_CHECK(d == 1 || d == -1, "chart linear part is not in GL(n,Z)");
    }
    // wall compatibility: for each glued wall and each vertex class on it,
    // the two corner charts agree on the wall as affine maps
    for (const auto& g : B.gluings) {
      std::map<size_t, size_t> vmap;
      for (size_t i = 0; i < g.verts_a.size(); ++i) vmap[g.verts_a[i]] = g.verts_b[i];
      for (size_t lv : g.verts_a) {
        Corner ka{g.cell_a, lv};
        Corner kb{g.cell_b, vmap[lv]};
        const IMat& La = B.charts.at(ka);
        const IMat& Lb = B.charts.at(kb);
        for (size_t j = 0; j < g.verts_a.size(); ++j) {
          IVec da = sub(B.cells[g.cell_a].vertices[g.verts_a[j]], B.corner_pos(ka));
          IVec db = sub(B.cells[g.cell_b].vertices[g.verts_b[j]], B.corner_pos(kb));
          PTROP_CHECK(mul(La, da) == mul(Lb, db), "charts disagree across a glued wall");
        }
      }
    }
  }

  BuildReport rep;
  rep.closed = B.closed;
  rep.cells_per_dim.assign(n + 1, 0);
  for (const auto& fc : B.face_classes) {
    if (fc.dim >= 0) ++rep.cells_per_dim[size_t(fc.dim)];
    rep.euler_characteristic += (fc.dim % 2 == 0) ? 1 : -1;
  }

  // vertex links for closed 3-complexes: Euler characteristic 2 per vertex
  if (B.closed && n == 3) {
    for (size_t vc : B.vertex_classes) {
      Int chi = 0;
      for (const auto& fc : B.face_classes) {
        if (fc.dim <= 0) continue;
        bool has = false;
        for (const auto& [c, s] : fc.members) {
          for (size_t lv : s)
            if (B.corner_class.at({c, lv}) == vc) {
              has = true;
              break;
            }
          if (has) break;
        }
        if (has) chi += (fc.dim % 2 == 1) ? 1 : -1;
      }
      if (chi != 2) rep.vertex_links_spherical = false;
    }
  } else {
    rep.vertex_links_spherical = false;
  }
  return rep;
}

// The discriminant: barycenters of face classes of dimension 1..n-1 and the
// flags between consecutive dimensions.
inline Discriminant discriminant_locus(const AffineComplex& B) {
  Discriminant G;
  for (size_t i = 0; i < B.face_classes.size(); ++i) {
    int d = B.face_classes[i].dim;
    if (d >= 1 && d <= int(B.dim) - 1) G.nodes.push_back(i);
  }
  for (size_t lo : G.nodes)
    for (size_t hi : G.nodes) {
      if (B.face_classes[lo].dim + 1 != B.face_classes[hi].dim) continue;
      if (!B.class_contains(lo, hi)) continue;
      DiscriminantArc a;
      a.lo = lo;
      a.hi = hi;
      a.boundary = B.cells_of_class(hi).size() < 2 &&
                   B.face_classes[hi].members.size() < 2;
      G.arcs.push_back(a);
    }
  return G;
}

}  // namespace ptrop
