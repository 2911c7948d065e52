#include <catch2/catch_amalgamated.hpp>

#include "ptrop/fan.hpp"
#include "ptrop/polytope.hpp"

#include <sstream>

using namespace ptrop;

namespace {

LatticePolytope quintic_delta() {
  return hull_of({{-1, -1, -1, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 4);
}

LatticePolytope quintic_nabla() {
  return hull_of({{-1, -1, -1, -1},
                  {4, -1, -1, -1},
                  {-1, 4, -1, -1},
                  {-1, -1, 4, -1},
                  {-1, -1, -1, 4}},
                 4);
}

}  // namespace

TEST_CASE("exact linear algebra basics") {
  IMat m = IMat::from_rows({{2, 4}, {1, 3}});
  REQUIRE(det(m) == 2);
  REQUIRE(rank(m) == 2);
  IMat u = IMat::from_rows({{1, 1}, {0, 1}});
  IMat ui = inverse_unimodular(u);
  REQUIRE(mul(u, ui) == IMat::identity(2));

  auto ker = kernel_basis(IMat::from_rows({{1, 2, 3}}));
  REQUIRE(ker.size() == 2);
  for (const auto& k : ker) REQUIRE(dot(IVec{1, 2, 3}, k) == 0);

  REQUIRE(in_row_lattice(IMat::from_rows({{2, 0}, {0, 2}}), {4, 6}));
  REQUIRE_FALSE(in_row_lattice(IMat::from_rows({{2, 0}, {0, 2}}), {1, 0}));
}

TEST_CASE("hull of the unit square") {
  auto P = hull_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 2);
  REQUIRE(P.vertices.size() == 4);
  REQUIRE(P.facets.size() == 4);
  REQUIRE(P.full_dim());
  REQUIRE(lattice_points(P).size() == 4);
  auto f = f_vector(P);
  REQUIRE(f == std::vector<size_t>{4, 4, 1});
}

TEST_CASE("hull drops interior and redundant points") {
  auto P = hull_of({{0, 0}, {2, 0}, {0, 2}, {1, 1}, {1, 0}}, 2);
  REQUIRE(P.vertices == std::vector<IVec>{{0, 0}, {0, 2}, {2, 0}});
}

TEST_CASE("lower-dimensional hulls carry equations") {
  auto P = hull_of({{0, 0}, {1, 0}}, 2);
  REQUIRE(P.dim() == 1);
  REQUIRE(P.equations.size() == 1);
  REQUIRE(lattice_points(P).size() == 2);
}

TEST_CASE("quintic polytope duality matches the worked example") {
  auto D = quintic_delta();
  auto nd = dual_polytope(D);
  REQUIRE(nd.integral);
  REQUIRE(nd.lattice == quintic_nabla());

  auto back = dual_polytope(nd.lattice);
  REQUIRE(back.integral);
  REQUIRE(back.lattice == D);
}

TEST_CASE("cube dualizes to the cross-polytope") {
  auto C = hull_of({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, 2);
  auto d = dual_polytope(C);
  REQUIRE(d.integral);
  REQUIRE(d.lattice.vertices == std::vector<IVec>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
}

TEST_CASE("duality errors and rational duals") {
  auto P = hull_of({{0, 0}, {1, 0}, {0, 1}}, 2);
  REQUIRE_THROWS_WITH(dual_polytope(P), Catch::Matchers::ContainsSubstring("not full-dimensional around 0"));

  // conv{(2,0),(0,2),(-2,-2)} has 0 interior but a rational dual
  auto Q = hull_of({{2, 0}, {0, 2}, {-2, -2}}, 2);
  auto d = dual_polytope(Q);
  REQUIRE_FALSE(d.integral);
}

TEST_CASE("reflexivity checks") {
  REQUIRE(is_reflexive(quintic_delta()));
  REQUIRE(is_reflexive(quintic_nabla()));
  REQUIRE_FALSE(is_reflexive(hull_of({{0, 0}, {1, 0}, {0, 1}}, 2)));
  // unique interior lattice point
  auto D = quintic_delta();
  REQUIRE(interior_lattice_points(D) == std::vector<IVec>{IVec{0, 0, 0, 0}});
}

TEST_CASE("lattice point counts for the quintic pair") {
  REQUIRE(lattice_points(quintic_delta()).size() == 6);
  // 126 = number of degree-5 monomials in 5 variables
  REQUIRE(lattice_points(quintic_nabla()).size() == 126);
}

TEST_CASE("minkowski sums") {
  auto seg_x = hull_of({{0, 0}, {1, 0}}, 2);
  auto seg_y = hull_of({{0, 0}, {0, 1}}, 2);
  auto sq = minkowski_sum(seg_x, seg_y);
  REQUIRE(sq == hull_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 2));

  auto pt = hull_of({{0, 0}}, 2);
  REQUIRE(minkowski_sum(sq, pt) == sq);

  auto T = hull_of({{0, 0}, {1, 0}, {0, 1}}, 2);
  REQUIRE(minkowski_sum(T, T) == dilate(T, 2));

  auto other = hull_of({{0}}, 1);
  REQUIRE_THROWS(minkowski_sum(sq, other));
}

TEST_CASE("minkowski sum is commutative and associative on a small corpus") {
  std::vector<LatticePolytope> corpus = {
      hull_of({{0, 0}, {1, 0}, {0, 1}}, 2),
      hull_of({{-1, -1}, {1, 0}, {0, 1}}, 2),
      hull_of({{0, 0}, {2, 1}}, 2),
      hull_of({{0, 0}, {1, 1}, {-1, 2}, {2, -1}}, 2),
  };
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = 0; j < corpus.size(); ++j) {
      REQUIRE(minkowski_sum(corpus[i], corpus[j]) == minkowski_sum(corpus[j], corpus[i]));
      for (size_t k = 0; k < corpus.size(); ++k)
        REQUIRE(minkowski_sum(minkowski_sum(corpus[i], corpus[j]), corpus[k]) ==
                minkowski_sum(corpus[i], minkowski_sum(corpus[j], corpus[k])));
    }
}

TEST_CASE("face poset of simplices and the quintic nabla") {
  auto T = hull_of({{0, 0}, {1, 0}, {0, 1}}, 2);
  auto f = f_vector(T);
  REQUIRE(f == std::vector<size_t>{3, 3, 1});

  auto seg = hull_of({{0}, {1}}, 1);
  REQUIRE(f_vector(seg) == std::vector<size_t>{2, 1});

  // brute-force oracle: enumerate vertex subsets of the 4-simplex and count
  // the distinct faces by dimension
  auto N = quintic_nabla();
  auto fv = f_vector(N);
  REQUIRE(fv == std::vector<size_t>{5, 10, 10, 5, 1});
}

TEST_CASE("normal fans") {
  auto seg = hull_of({{-1}, {1}}, 1);
  auto f = normal_fan(seg);
  REQUIRE(f.complete);
  REQUIRE(f.maximal.size() == 2);

  auto sq = hull_of({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 2);
  auto nf = normal_fan(sq);
  REQUIRE(nf.complete);
  REQUIRE(nf.maximal.size() == 4);

  // for reflexive P the normal fan equals the fan of cones over the faces of
  // the dual polytope
  auto nd = dual_polytope(quintic_delta()).lattice;
  auto nfan = normal_fan(nd);
  auto ffan = face_fan(quintic_delta());
  REQUIRE(nfan.maximal.size() == ffan.maximal.size());
  std::set<Cone> a(nfan.maximal.begin(), nfan.maximal.end());
  std::set<Cone> b(ffan.maximal.begin(), ffan.maximal.end());
  REQUIRE(a == b);
}

TEST_CASE("lattice point count is a lattice invariant") {
  auto P = hull_of({{0, 0}, {3, 1}, {1, 2}}, 2);
  IMat U = IMat::from_rows({{2, 1}, {1, 1}});
  REQUIRE((det(U) == 1 || det(U) == -1));
  std::vector<IVec> moved;
  for (const auto& v : P.vertices) moved.push_back(mul(U, v));
  auto Q = hull_of(moved, 2);
  REQUIRE(lattice_points(P).size() == lattice_points(Q).size());
}

TEST_CASE("polytope text format round-trips with sorted vertices") {
  auto N = quintic_nabla();
  std::string text = write_polytope_text(N);
  std::istringstream in(text);
  auto back = read_polytope_text(in);
  REQUIRE(back == N);
  REQUIRE(text.substr(0, 14) == "dim=4 count=5\n");
}

TEST_CASE("cones: duality, faces, hilbert bases") {
  auto quad = make_cone({{1, 0}, {0, 1}}, 2);
  REQUIRE(quad.rays.size() == 2);
  REQUIRE(quad.pointed());
  auto hb = hilbert_basis(quad);
  REQUIRE(hb == std::vector<IVec>{{0, 1}, {1, 0}});

  // cone over the unit square at height one: 4 rays, 4 hilbert basis elements
  auto sq = make_cone({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, 3);
  REQUIRE(sq.rays.size() == 4);
  auto hb2 = hilbert_basis(sq);
  REQUIRE(hb2.size() == 4);

  // non-simplicial duals: dual of the cone over the square has 4 rays
  auto d = dual_cone(sq);
  REQUIRE(d.rays.size() == 4);

  // 2x2 quadrant with a non-unimodular cone: hilbert basis picks up the
  // interior generator
  auto c = make_cone({{1, 0}, {1, 2}}, 2);
  auto hb3 = hilbert_basis(c);
  REQUIRE(hb3 == std::vector<IVec>{{1, 0}, {1, 1}, {1, 2}});

  auto faces = cone_faces(quad);
  REQUIRE(faces.size() == 4);  // 0, two rays, the cone
}

TEST_CASE("quotient fans") {
  // fan of P^2
  auto p2 = make_fan({make_cone({{1, 0}, {0, 1}}, 2), make_cone({{0, 1}, {-1, -1}}, 2),
                      make_cone({{1, 0}, {-1, -1}}, 2)},
                     2);
  REQUIRE(p2.complete);

  auto zero = make_cone({}, 2);
  auto same = quotient_fan(p2, zero);
  REQUIRE(same.maximal.size() == 3);
  REQUIRE(same.complete);

  auto ray = make_cone({{1, 0}}, 2);
  auto q = quotient_fan(p2, ray);
  REQUIRE(q.rank == 1);
  REQUIRE(q.maximal.size() == 2);
  REQUIRE(q.complete);

  auto max = p2.maximal[0];
  auto zf = quotient_fan(p2, max);
  REQUIRE(zf.rank == 0);

  auto stray = make_cone({{1, 1}}, 2);
  REQUIRE_THROWS_WITH(quotient_fan(p2, stray), Catch::Matchers::ContainsSubstring("not a cone of the fan"));
}
