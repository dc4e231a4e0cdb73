#include "catch_amalgamated.hpp"

#include <cmath>

#include "shemtj/problems.hpp"

using namespace shemtj;

namespace {
// Every spin assignment of an n-spin system, for exhaustive identities.
void for_all_states(int n, const std::function<void(const SpinArray&)>& f) {
  SpinArray s(n, -1);
  for (std::uint64_t mask = 0; mask < (1ull << n); mask++) {
    for (int i = 0; i < n; i++) s[i] = (mask >> i) & 1 ? 1 : -1;
    f(s);
  }
}
}  // namespace

TEST_CASE("weighted graph parse and round trip") {
  const std::string text = "4\n0 1 5\n1 2 -3\n0 3 2\n";
  const WeightedGraph wg = parse_weighted_graph("# comment\n" + text);
  CHECK(wg.n == 4);
  REQUIRE(wg.edges.size() == 3);
  CHECK(serialize_weighted_graph(wg) == text);
  CHECK(total_weight(wg) == 4);

  CHECK_THROWS_WITH(parse_weighted_graph("3\n0 1\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(parse_weighted_graph(""), ParseError);
  CHECK_THROWS_AS(parse_weighted_graph("2\n0 2 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_weighted_graph("2\n1 1 1\n"), std::invalid_argument);
  // edges get canonical u < v order regardless of input order
  const WeightedGraph swapped = parse_weighted_graph("3\n2 0 1\n");
  CHECK(swapped.edges[0].u == 0);
  CHECK(swapped.edges[0].v == 2);
}

TEST_CASE("maxcut encoding identity: H = total weight - 2 cut") {
  WeightedGraph wg;
  wg.n = 5;
  wg.add_edge(0, 1, 3);
  wg.add_edge(1, 2, -2);
  wg.add_edge(2, 3, 7);
  wg.add_edge(3, 4, 1);
  wg.add_edge(0, 4, 4);
  wg.add_edge(1, 3, 2);
  const CouplingGraph g = maxcut_encode(wg);
  const long long W = total_weight(wg);
  for_all_states(5, [&](const SpinArray& s) {
    CHECK(hamiltonian(s, g) == W - 2 * cut_value(s, wg));
  });
}

TEST_CASE("maxcut ground state maximizes the cut") {
  // Complete bipartite K23 with unit weights: max cut = 6.
  WeightedGraph wg;
  wg.n = 5;
  for (int a : {0, 1})
    for (int b : {2, 3, 4}) wg.add_edge(a, b, 1);
  const CouplingGraph g = maxcut_encode(wg);
  const GroundResult ground = brute_force(g);
  CHECK(cut_value(ground.states.front(), wg) == 6);
  CHECK(ground.energy == total_weight(wg) - 2 * 6);
  // both labelings of the bipartition
  CHECK(ground.degeneracy == 2);
}

TEST_CASE("zero weight edges are dropped by the encoder") {
  WeightedGraph wg;
  wg.n = 3;
  wg.add_edge(0, 1, 0);
  wg.add_edge(1, 2, 2);
  const CouplingGraph g = maxcut_encode(wg);
  CHECK(g.coupling(0, 1) == 0);
  CHECK(g.coupling(1, 2) == -2);
}

TEST_CASE("digit glyphs are well formed and distinct") {
  for (int d = 0; d < 5; d++) {
    const Bitmap b = digit_glyph(d);
    CHECK(b.width == 10);
    CHECK(b.height == 10);
    CHECK_NOTHROW(b.validate());
    int ink = 0;
    for (int v : b.px) ink += v;
    CHECK(ink > 10);       // not blank
    CHECK(ink < 60);       // not solid
  }
  for (int a = 0; a < 5; a++)
    for (int b = a + 1; b < 5; b++)
      CHECK(digit_glyph(a).px != digit_glyph(b).px);
  CHECK_THROWS_AS(digit_glyph(5), std::invalid_argument);
  CHECK_THROWS_AS(digit_glyph(-1), std::invalid_argument);
}

TEST_CASE("digit instance ground state is the target image") {
  const Bitmap b = digit_glyph(3);
  const DigitInstance inst = digit_instance(b);
  CHECK(inst.graph.size() == 100);
  // 4-neighbor grid: 2 * 10 * 9 edges
  CHECK(inst.graph.edges().size() == 180);
  const long long target_H = hamiltonian(inst.target, inst.graph);
  CHECK(target_H == -180);  // every bond satisfied
  // the global flip is degenerate with the target
  SpinArray flipped = inst.target;
  for (auto& v : flipped) v = -v;
  CHECK(hamiltonian(flipped, inst.graph) == target_H);
  // any other state is strictly worse: flipping one pixel breaks its bonds
  SpinArray off = inst.target;
  off[55] = -off[55];
  CHECK(hamiltonian(off, inst.graph) > target_H);
}

TEST_CASE("small grid instance ground checked exhaustively") {
  Bitmap b;
  b.width = 4;
  b.height = 4;
  b.px = {0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1};
  const DigitInstance inst = digit_instance(b);
  const GroundResult ground = brute_force(inst.graph);
  CHECK(ground.energy == hamiltonian(inst.target, inst.graph));
  CHECK(ground.degeneracy == 2);  // target and its flip, nothing else
}

TEST_CASE("hstack concatenates glyphs") {
  const Bitmap two = hstack({digit_glyph(1), digit_glyph(4)});
  CHECK(two.width == 20);
  CHECK(two.height == 10);
  CHECK(two.at(3, 1) == digit_glyph(1).at(3, 1));
  CHECK(two.at(13, 1) == digit_glyph(4).at(3, 1));
  const DigitInstance inst = digit_instance({digit_glyph(1), digit_glyph(4)});
  CHECK(inst.graph.size() == 200);
  CHECK(inst.width == 20);
}

TEST_CASE("pixel agreement is flip invariant") {
  const SpinArray t{1, -1, 1, -1};
  CHECK(pixel_agreement(t, t) == 1.0);
  SpinArray f = t;
  for (auto& v : f) v = -v;
  CHECK(pixel_agreement(f, t) == 1.0);
  SpinArray half{1, -1, -1, 1};
  CHECK(pixel_agreement(half, t) == 0.5);
}

TEST_CASE("pgm round trip") {
  const Bitmap b = digit_glyph(2);
  const std::string pgm = bitmap_to_pgm(b);
  CHECK(pgm.substr(0, 3) == "P2\n");
  const Bitmap c = parse_pgm(pgm);
  CHECK(c.width == b.width);
  CHECK(c.height == b.height);
  CHECK(c.px == b.px);
  // comments and larger maxval threshold correctly
  const Bitmap d = parse_pgm("P2\n# note\n2 2\n255\n0 255\n128 100\n");
  CHECK(d.px == std::vector<int>{0, 1, 1, 0});
  CHECK_THROWS_AS(parse_pgm("P5\n2 2\n1\n0 0 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_pgm("P2\n2 2\n1\n0 0 0\n"), ParseError);  // truncated
  CHECK_THROWS_AS(parse_pgm("P2\n2 2\n1\n0 0 0 2\n"), ParseError);
}

TEST_CASE("spins map back to a bitmap") {
  const SpinArray s{1, -1, -1, 1};
  const Bitmap b = spins_to_bitmap(s, 2, 2);
  CHECK(b.px == std::vector<int>{1, 0, 0, 1});
  CHECK_THROWS_AS(spins_to_bitmap(s, 3, 2), std::invalid_argument);
}

TEST_CASE("coloring encoding identity on every state") {
  // 4 H_penalty(x(s)) = H_ising(s) + offset, checked exhaustively.
  for (const char* name : {"triangle3", "triangle2", "square2"}) {
    const ColoringSpec spec = demo_coloring(name);
    const ColoringEncoding enc = coloring_encode(spec);
    REQUIRE(spec.spins() <= 16);
    for_all_states(spec.spins(), [&](const SpinArray& s) {
      CHECK(enc.scale * coloring_penalty(s, spec) ==
            hamiltonian(s, enc.graph) + enc.offset);
    });
  }
}

TEST_CASE("coloring identity with larger penalty weight and a field-less check") {
  ColoringSpec spec = demo_coloring("triangle2");
  spec.A = 7;
  const ColoringEncoding enc = coloring_encode(spec);
  for_all_states(spec.spins(), [&](const SpinArray& s) {
    CHECK(enc.scale * coloring_penalty(s, spec) ==
          hamiltonian(s, enc.graph) + enc.offset);
  });
}

TEST_CASE("triangle with three colors has proper ground states") {
  const ColoringSpec spec = demo_coloring("triangle3");
  const ColoringEncoding enc = coloring_encode(spec);
  const GroundResult ground = brute_force(enc.graph);
  // ground energy equals -offset exactly when a proper coloring exists
  CHECK(ground.energy == -enc.offset);
  // 3! proper colorings of a triangle
  CHECK(ground.degeneracy == 6);
  for (const auto& s : ground.states) {
    const auto res = coloring_decode(s, spec);
    CHECK(res.proper);
    CHECK(coloring_penalty(s, spec) == 0);
  }
}

TEST_CASE("triangle with two colors cannot reach zero penalty") {
  const ColoringSpec spec = demo_coloring("triangle2");
  const ColoringEncoding enc = coloring_encode(spec);
  const GroundResult ground = brute_force(enc.graph);
  CHECK(ground.energy > -enc.offset);  // no state attains penalty zero
  // the cheapest failure costs exactly one penalty unit (one conflicting
  // edge, or one vertex left uncolored)
  CHECK(ground.energy == -enc.offset + enc.scale * 1);
  for (const auto& s : ground.states) {
    CHECK(coloring_penalty(s, spec) == 1);
    CHECK_FALSE(coloring_decode(s, spec).proper);
  }
}

TEST_CASE("square with two colors is properly colorable") {
  const ColoringSpec spec = demo_coloring("square2");
  const ColoringEncoding enc = coloring_encode(spec);
  const GroundResult ground = brute_force(enc.graph);
  CHECK(ground.energy == -enc.offset);
  CHECK(ground.degeneracy == 2);  // two alternating colorings
}

TEST_CASE("wheel graph needs three colors") {
  const ColoringSpec spec = demo_coloring("wheel5");  // hub plus 4-cycle
  const ColoringEncoding enc = coloring_encode(spec);
  const GroundResult ground = brute_force(enc.graph, 24);
  CHECK(ground.energy == -enc.offset);
  const auto res = coloring_decode(ground.states.front(), spec);
  CHECK(res.proper);
  // hub color differs from every rim color
  for (int v = 1; v < 5; v++) CHECK(res.colors[v] != res.colors[0]);
}

TEST_CASE("coloring decode reports violations precisely") {
  const ColoringSpec spec = demo_coloring("triangle3");
  SpinArray s(9, -1);
  s[spec.spin_index(0, 0)] = 1;
  s[spec.spin_index(1, 0)] = 1;  // conflicts with vertex 0 on edge (0,1)
  s[spec.spin_index(2, 1)] = 1;
  s[spec.spin_index(2, 2)] = 1;  // vertex 2 is not one-hot
  const auto res = coloring_decode(s, spec);
  CHECK_FALSE(res.one_hot);
  CHECK(res.invalid_vertices == std::vector<int>{2});
  CHECK(res.colors[0] == 0);
  CHECK(res.colors[1] == 0);
  CHECK(res.colors[2] == -1);
  CHECK_FALSE(res.proper);

  SpinArray good(9, -1);
  good[spec.spin_index(0, 0)] = 1;
  good[spec.spin_index(1, 1)] = 1;
  good[spec.spin_index(2, 2)] = 1;
  const auto ok = coloring_decode(good, spec);
  CHECK(ok.proper);
  CHECK(ok.colors == std::vector<int>{0, 1, 2});
}

TEST_CASE("coloring spec json round trip") {
  const ColoringSpec spec = demo_coloring("wheel5");
  const ColoringSpec back = parse_coloring_spec(serialize_coloring_spec(spec));
  CHECK(back.n == spec.n);
  CHECK(back.k == spec.k);
  CHECK(back.A == spec.A);
  CHECK(back.edges == spec.edges);
  CHECK_THROWS_AS(parse_coloring_spec("{"), ParseError);
  CHECK_THROWS_AS(parse_coloring_spec(R"({"n":3,"k":3})"), ParseError);
  CHECK_THROWS_AS(parse_coloring_spec(R"({"n":2,"k":2,"edges":[[0,5]]})"),
                  std::invalid_argument);
}

TEST_CASE("brute force agrees with direct scan on a random instance") {
  RngStream rng(41, 0);
  CouplingGraph g(10);
  for (int i = 0; i < 10; i++)
    for (int j = i + 1; j < 10; j++) {
      long long w = static_cast<long long>(rng.uniform_below(11)) - 5;
      if (w != 0 && rng.uniform() < 0.6) g.add_coupling(i, j, w);
    }
  g.set_field(2, 3);
  g.set_field(7, -2);
  const GroundResult fast = brute_force(g);
  long long best = std::numeric_limits<long long>::max();
  std::uint64_t count = 0;
  for_all_states(10, [&](const SpinArray& s) {
    const long long H = hamiltonian(s, g);
    if (H < best) {
      best = H;
      count = 1;
    } else if (H == best) {
      count++;
    }
  });
  CHECK(fast.energy == best);
  CHECK(fast.degeneracy == count);
  for (const auto& s : fast.states) CHECK(hamiltonian(s, g) == best);
}

TEST_CASE("brute force refuses oversized instances") {
  CouplingGraph g(30);
  CHECK_THROWS_AS(brute_force(g, 24), std::invalid_argument);
  CHECK_NOTHROW(brute_force(CouplingGraph(2), 24));
}

TEST_CASE("demo coloring catalogue") {
  CHECK(demo_coloring("triangle3").k == 3);
  CHECK(demo_coloring("wheel5").edges.size() == 8);
  CHECK_THROWS_AS(demo_coloring("nope"), std::invalid_argument);
}
