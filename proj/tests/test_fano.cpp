#include <catch2/catch_amalgamated.hpp>

#include "polymut/fano.hpp"

using namespace polymut;

TEST_CASE("edge data") {
  FanoPolygon P = p0();
  // edge conv{(0,1),(-1,-1)}
  EdgeData e = edge_data_of({0, 1}, {-1, -1});
  CHECK(e.normal == Vec{2, -1});
  CHECK(e.index == 1);
  CHECK(e.length == 1);

  EdgeData e2 = edge_data_of({1, 0}, {-1, -4});
  CHECK(e2.normal == Vec{-2, 1});
  CHECK(e2.index == 2);
  CHECK(e2.length == 2);

  FanoPolygon square{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
  EdgeData e3 = edge_data_of({1, -1}, {1, 1});
  CHECK(e3.normal == Vec{-1, 0});
  CHECK(e3.index == 1);
  CHECK(e3.length == 2);
}

TEST_CASE("weights") {
  CHECK(weights(p0()) == std::array<Int, 3>{1, 1, 1});
  CHECK(weights(Vec{0, 1}, Vec{1, 0}, Vec{-1, -4}) ==
        std::array<Int, 3>{4, 1, 1});  // the weight 4 sits at (0,1)
  CHECK(weights(FanoPolygon{{{0, 1}, {1, 0}, {-1, -4}}}) ==
        std::array<Int, 3>{1, 1, 4});  // canonical vertex order
  CHECK(weights(Vec{-1, -1}, Vec{1, 0}, Vec{3, 4}) ==
        std::array<Int, 3>{4, 1, 1});
  CHECK_THROWS_AS(weights(FanoPolygon{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}}),
                  NotATriangle);
}

TEST_CASE("labeled mutation reproduces the worked triangles") {
  MarkovTriangle T;  // P0, labels v1=(1,0), v2=(0,1), v3=(-1,-1)
  CHECK(T.vertex(0) == Vec{1, 0});
  CHECK(T.vertex(2) == Vec{-1, -1});

  auto step = T.mutate(Branch::ReplaceA1);
  CHECK(step.w == Vec{2, -1});
  CHECK(step.u == Vec{1, 2});
  const MarkovTriangle& M = step.result;
  CHECK(M.triple() == MarkovTriple{1, 1, 2});
  CHECK(M.vertex(0) == Vec{3, 4});    // fresh vertex, a1 = 1
  CHECK(M.vertex(1) == Vec{1, 0});    // a2 = 1
  CHECK(M.vertex(2) == Vec{-1, -1});  // a3 = 2
  CHECK(M.polygon() == FanoPolygon{{{-1, -1}, {1, 0}, {3, 4}}});

  // the symmetric branch mirrors across x = y
  auto step2 = T.mutate(Branch::ReplaceA2);
  CHECK(step2.result.polygon() == FanoPolygon{{{-1, -1}, {0, 1}, {4, 3}}});

  // second mutation reaches the (1,2,5) triangle
  const MarkovTriangle& M2 = M.mutate(Branch::ReplaceA1).result;
  CHECK(M2.triple() == MarkovTriple{1, 2, 5});
  CHECK(M2.vertex(0) == Vec{13, 9});
  CHECK(M2.vertex(1) == Vec{3, 4});
  CHECK(M2.vertex(2) == Vec{-1, -1});

  // mutating twice at the same edge restores the weights
  auto there = T.mutate(0, 1).result;
  auto back = there.mutate(2, 0).result;  // undo: the new a3 sits at index 2
  CHECK(back.triple() == MarkovTriple{1, 1, 1});
  CHECK(unimodular_equivalent(back.polygon(), p0()));
}

TEST_CASE("general mutation agrees with the triangle formula") {
  FanoPolygon mut = mutate_general(p0(), {2, -1}, {1, 2});
  CHECK(mut == FanoPolygon{{{-1, -1}, {1, 0}, {3, 4}}});
  CHECK_THROWS_AS(mutate_general(p0(), {1, 1}, {1, -1}), NotMutable);
}

TEST_CASE("normal transport") {
  std::array<Vec, 3> ws = {Vec{2, -1}, Vec{-1, 2}, Vec{-1, -1}};
  auto out = transform_normals(ws, 0, 1);
  CHECK(out == std::array<Vec, 3>{Vec{-2, 1}, Vec{-1, 2}, Vec{5, -4}});

  // involution at the same index
  CHECK(transform_normals(out, 0, 1) == ws);

  // matches the edge data of the mutated triangle, for all small triangles
  for (const auto& g : enumerate_markov(5)) {
    MarkovTriangle T = triangle_from_triple(g.triple);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
      auto step = T.mutate(i, j);
      auto predicted = transform_normals(T.normals(), i, j);
      auto actual = step.result.normals();
      // the mutated triangle's labels are permuted; compare as sets
      std::array<Vec, 3> p = predicted, a = actual;
      auto lt = [](const Vec& x, const Vec& y) { return lex_less(x, y); };
      std::sort(p.begin(), p.end(), lt);
      std::sort(a.begin(), a.end(), lt);
      CHECK(p == a);
    }
  }
}

TEST_CASE("normal transport: recursion sequence with s=3") {
  // repeated transport reproduces (0,1),(1,0),(3,-1),(8,-3)
  Vec w0{0, 1}, w1{1, 0};
  Vec w2 = Int(3) * w1 - w0;
  Vec w3 = Int(3) * w2 - w1;
  CHECK(w2 == Vec{3, -1});
  CHECK(w3 == Vec{8, -3});
}

TEST_CASE("triangle from triple") {
  CHECK(triangle_from_triple(markov_root()).polygon() == p0());
  CHECK(triangle_from_triple({1, 1, 2}).polygon() ==
        FanoPolygon{{{-1, -1}, {1, 0}, {3, 4}}});
  auto T = triangle_from_triple({1, 2, 5});
  auto b = weights(T.polygon());
  std::sort(b.begin(), b.end());
  CHECK(b == std::array<Int, 3>{1, 4, 25});
  CHECK(b[0] + b[1] + b[2] == 3 * 1 * 2 * 5);
}

TEST_CASE("weights and content across the tree") {
  for (const auto& g : enumerate_markov(6)) {
    MarkovTriangle T = triangle_from_triple(g.triple);
    CHECK(T.triple() == g.triple);
    for (int i = 0; i < 3; ++i) {
      EdgeData e = T.edge_data(i);
      CHECK(e.index == T.a(i));
      CHECK(e.length == T.a(i));
    }
    // pairwise normal wedges are 3*(a1,a2,a3)
    auto ws = T.normals();
    CHECK(abs(wedge(ws[1], ws[2])) == 3 * T.a(0));
    CHECK(abs(wedge(ws[2], ws[0])) == 3 * T.a(1));
    CHECK(abs(wedge(ws[0], ws[1])) == 3 * T.a(2));
    if (g.d <= 5)
      CHECK(singularity_content(T.polygon()) == SingularityContent{3, {}});
  }
}

TEST_CASE("normal form") {
  NormalForm nf = normal_form(MarkovTriangle{});
  CHECK(nf.s == 3);
  CHECK(nf.vertices == std::array<Vec, 3>{Vec{2, -1}, Vec{-1, 2}, Vec{-1, -1}});
  // E1 image is vertical, E2 image horizontal
  CHECK(nf.vertices[1].x == nf.vertices[2].x);
  CHECK(nf.vertices[0].y == nf.vertices[2].y);

  CHECK(normal_form(triangle_from_triple({1, 1, 2})).s == 6);

  for (const auto& g : enumerate_markov(6)) {
    MarkovTriangle T = triangle_from_triple(g.triple);
    NormalForm f = normal_form(T);
    CHECK(f.s == 3 * T.a(2));
    CHECK(f.vertices[1].x == f.vertices[2].x);
    CHECK(f.vertices[0].y == f.vertices[2].y);
  }
}

TEST_CASE("sublattice mutation factors") {
  auto sf = sublattice_mutation_factors(MarkovTriangle{});
  CHECK(sf.s == 3);
  std::array<Vec, 2> fs = sf.factor;
  std::sort(fs.begin(), fs.end(),
            [](const Vec& a, const Vec& b) { return lex_less(a, b); });
  CHECK(fs == std::array<Vec, 2>{Vec{0, 3}, Vec{3, 0}});

  for (const auto& g : enumerate_markov(4)) {
    MarkovTriangle T = triangle_from_triple(g.triple);
    auto f = sublattice_mutation_factors(T);
    CHECK(f.s == 3 * T.a(2));
    // each factor is axis-parallel of length s
    std::array<Vec, 2> got = f.factor;
    std::sort(got.begin(), got.end(),
              [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    CHECK(got == std::array<Vec, 2>{Vec{0, f.s}, Vec{f.s, 0}});
    // index relation R1 = s*r2, R2 = s*r1
    CHECK(f.R[0] == f.s * T.a(1));
    CHECK(f.R[1] == f.s * T.a(0));
  }
}

TEST_CASE("singularity content") {
  CHECK(singularity_content(p0()) == SingularityContent{3, {}});
  CHECK(singularity_content(FanoPolygon{{{1, 0}, {0, 1}, {-1, -2}}}) ==
        SingularityContent{4, {}});
  // mutation invariance over sampled mutations
  int samples = 0;
  for (const auto& g : enumerate_markov(8)) {
    MarkovTriangle T = triangle_from_triple(g.triple);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{2, 0}}) {
      auto M = T.mutate(i, j).result;
      CHECK(singularity_content(M.polygon()) ==
            singularity_content(T.polygon()));
      ++samples;
    }
  }
  CHECK(samples >= 200);
}

TEST_CASE("mutation equivalence search") {
  auto w = mutation_equivalent_to_p0(FanoPolygon{{{-1, -1}, {1, 0}, {3, 4}}});
  REQUIRE(w.has_value());
  CHECK(w->size() == 1);

  auto self = mutation_equivalent_to_p0(p0());
  REQUIRE(self.has_value());
  CHECK(self->empty());

  CHECK_FALSE(
      mutation_equivalent_to_p0(FanoPolygon{{{1, 0}, {0, 1}, {-1, -2}}})
          .has_value());
}
