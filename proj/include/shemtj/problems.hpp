#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "shemtj/ising.hpp"
#include "shemtj/io.hpp"

namespace shemtj {

// ---- Max-cut ----------------------------------------------------------------

struct WeightedEdge {
  int u = 0, v = 0;
  long long w = 0;
};

struct WeightedGraph {
  int n = 0;
  std::vector<WeightedEdge> edges;

  void validate() const {
    if (n <= 0) throw std::invalid_argument("weighted graph: n must be positive");
    for (const auto& e : edges) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
        throw std::invalid_argument("weighted graph: vertex out of range");
      if (e.u >= e.v)
        throw std::invalid_argument("weighted graph: edges must satisfy u < v");
    }
  }

  void add_edge(int u, int v, long long w) {
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, w});
  }
};

// Antiferromagnetic image of the graph: J = -w, h = 0. Minimizing H maximizes
// the cut. Zero-weight edges carry no information and are skipped.
inline CouplingGraph maxcut_encode(const WeightedGraph& wg) {
  wg.validate();
  CouplingGraph g(wg.n);
  for (const auto& e : wg.edges)
    if (e.w != 0) g.add_coupling(e.u, e.v, -e.w);
  return g;
}

inline long long cut_value(const SpinArray& s, const WeightedGraph& wg) {
  wg.validate();
  if (static_cast<int>(s.size()) != wg.n)
    throw std::invalid_argument("cut_value: spin/graph size mismatch");
  long long cut = 0;
  for (const auto& e : wg.edges) cut += e.w * (1 - s[e.u] * s[e.v]) / 2;
  return cut;
}

inline long long total_weight(const WeightedGraph& wg) {
  long long t = 0;
  for (const auto& e : wg.edges) t += e.w;
  return t;
}

// File: first non-comment line n, then `u v w` per edge.
inline WeightedGraph parse_weighted_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  WeightedGraph wg;
  bool have_n = false;
  while (std::getline(in, raw)) {
    line_no++;
    std::string_view line = trim(raw);
    if (auto pos = line.find('#'); pos != std::string_view::npos)
      line = trim(line.substr(0, pos));
    if (line.empty()) continue;
    std::istringstream ls{std::string(line)};
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    try {
      if (!have_n) {
        if (tok.size() != 1) throw ParseError("expected vertex count");
        wg.n = static_cast<int>(parse_int(tok[0]));
        have_n = true;
      } else if (tok.size() == 3) {
        wg.add_edge(static_cast<int>(parse_int(tok[0])),
                    static_cast<int>(parse_int(tok[1])), parse_int(tok[2]));
      } else {
        throw ParseError("expected 'u v w'");
      }
    } catch (const std::exception& e) {
      throw ParseError("weighted graph line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_n) throw ParseError("weighted graph: empty file");
  wg.validate();
  return wg;
}

inline std::string serialize_weighted_graph(const WeightedGraph& wg) {
  std::ostringstream out;
  out << wg.n << "\n";
  for (const auto& e : wg.edges) out << e.u << " " << e.v << " " << e.w << "\n";
  return out.str();
}

inline WeightedGraph load_weighted_graph(const std::string& path) {
  return parse_weighted_graph(read_text_file(path));
}

// ---- bitmaps and digit instances ---------------------------------------------

struct Bitmap {
  int width = 0, height = 0;
  std::vector<int> px;  // row-major, values 0/1

  void validate() const {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("bitmap: empty dimensions");
    if (static_cast<int>(px.size()) != width * height)
      throw std::invalid_argument("bitmap: pixel count mismatch");
    for (int v : px)
      if (v != 0 && v != 1) throw std::invalid_argument("bitmap: pixels must be 0/1");
  }

  int at(int x, int y) const { return px[y * width + x]; }
};

namespace detail {
// 10x10 glyphs for digits 0-4; '#' = 1.
inline const char* const kDigitRows[5][10] = {
    {"..######..", ".##....##.", ".##....##.", ".##....##.", ".##....##.",
     ".##....##.", ".##....##.", ".##....##.", "..######..", ".........."},
    {"....##....", "...###....", "..####....", "....##....", "....##....",
     "....##....", "....##....", "....##....", "..######..", ".........."},
    {"..######..", ".##....##.", ".......##.", "......##..", ".....##...",
     "....##....", "...##.....", "..##......", ".########.", ".........."},
    {"..######..", ".##....##.", ".......##.", "...####...", ".......##.",
     ".......##.", ".......##.", ".##....##.", "..######..", ".........."},
    {".....##...", "....###...", "...##.##..", "..##..##..", ".##...##..",
     ".########.", "......##..", "......##..", "......##..", ".........."}};
}  // namespace detail

inline Bitmap digit_glyph(int digit) {
  if (digit < 0 || digit > 4)
    throw std::invalid_argument("digit_glyph: only digits 0-4 are built in");
  Bitmap b;
  b.width = 10;
  b.height = 10;
  b.px.reserve(100);
  for (int y = 0; y < 10; y++)
    for (int x = 0; x < 10; x++)
      b.px.push_back(detail::kDigitRows[digit][y][x] == '#' ? 1 : 0);
  return b;
}

// Lay bitmaps of equal height side by side.
inline Bitmap hstack(const std::vector<Bitmap>& maps) {
  if (maps.empty()) throw std::invalid_argument("hstack: no bitmaps");
  int w = 0;
  const int h = maps.front().height;
  for (const auto& m : maps) {
    m.validate();
    if (m.height != h) throw std::invalid_argument("hstack: heights differ");
    w += m.width;
  }
  Bitmap out;
  out.width = w;
  out.height = h;
  out.px.resize(static_cast<std::size_t>(w) * h);
  int x0 = 0;
  for (const auto& m : maps) {
    for (int y = 0; y < h; y++)
      for (int x = 0; x < m.width; x++) out.px[y * w + x0 + x] = m.at(x, y);
    x0 += m.width;
  }
  return out;
}

struct DigitInstance {
  CouplingGraph graph{1};
  SpinArray target;
  int width = 0, height = 0;
};

// Grid Ising instance whose ground states are the bitmap and its global flip:
// 4-neighbor couplings, J = +1 between equal target pixels, -1 otherwise.
inline DigitInstance digit_instance(const Bitmap& bmp) {
  bmp.validate();
  const int w = bmp.width, h = bmp.height;
  DigitInstance inst{CouplingGraph(w * h), {}, w, h};
  inst.target.resize(static_cast<std::size_t>(w) * h);
  for (int i = 0; i < w * h; i++) inst.target[i] = bmp.px[i] ? 1 : -1;
  for (int y = 0; y < h; y++) {
    for (int x = 0; x < w; x++) {
      const int i = y * w + x;
      if (x + 1 < w)
        inst.graph.add_coupling(i, i + 1, bmp.px[i] == bmp.px[i + 1] ? 1 : -1);
      if (y + 1 < h)
        inst.graph.add_coupling(i, i + w, bmp.px[i] == bmp.px[i + w] ? 1 : -1);
    }
  }
  return inst;
}

inline DigitInstance digit_instance(const std::vector<Bitmap>& maps) {
  return digit_instance(hstack(maps));
}

// Fraction of pixels matching the target, counting the better of the state
// and its global flip (the instance is exactly flip-symmetric).
inline double pixel_agreement(const SpinArray& s, const SpinArray& target) {
  if (s.size() != target.size() || s.empty())
    throw std::invalid_argument("pixel_agreement: size mismatch");
  std::size_t same = 0;
  for (std::size_t i = 0; i < s.size(); i++)
    if (s[i] == target[i]) same++;
  const double f = static_cast<double>(same) / static_cast<double>(s.size());
  return std::max(f, 1.0 - f);
}

// Plain (ASCII) PGM, maxval 1.
inline std::string bitmap_to_pgm(const Bitmap& b) {
  b.validate();
  std::ostringstream out;
  out << "P2\n" << b.width << " " << b.height << "\n1\n";
  for (int y = 0; y < b.height; y++) {
    for (int x = 0; x < b.width; x++) out << (x ? " " : "") << b.at(x, y);
    out << "\n";
  }
  return out.str();
}

inline Bitmap parse_pgm(const std::string& text) {
  std::istringstream in(text);
  auto next_token = [&in]() {
    std::string t;
    while (in >> t) {
      if (t[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return t;
    }
    throw ParseError("pgm: unexpected end of file");
  };
  if (next_token() != "P2") throw ParseError("pgm: expected plain P2 header");
  Bitmap b;
  b.width = static_cast<int>(parse_int(next_token()));
  b.height = static_cast<int>(parse_int(next_token()));
  const long long maxval = parse_int(next_token());
  if (b.width <= 0 || b.height <= 0 || maxval < 1)
    throw ParseError("pgm: bad dimensions");
  b.px.resize(static_cast<std::size_t>(b.width) * b.height);
  for (auto& p : b.px) {
    const long long v = parse_int(next_token());
    if (v < 0 || v > maxval) throw ParseError("pgm: pixel out of range");
    p = 2 * v > maxval ? 1 : 0;
  }
  return b;
}

inline Bitmap spins_to_bitmap(const SpinArray& s, int width, int height) {
  if (static_cast<int>(s.size()) != width * height)
    throw std::invalid_argument("spins_to_bitmap: size mismatch");
  Bitmap b;
  b.width = width;
  b.height = height;
  b.px.resize(s.size());
  for (std::size_t i = 0; i < s.size(); i++) b.px[i] = s[i] == 1 ? 1 : 0;
  return b;
}

// ---- graph coloring -----------------------------------------------------------

struct ColoringSpec {
  int n = 0;  // vertices
  int k = 0;  // colors
  std::vector<std::pair<int, int>> edges;
  long long A = 1;  // penalty weight

  void validate() const {
    if (n < 1 || k < 1) throw std::invalid_argument("coloring: n, k must be >= 1");
    if (A < 1) throw std::invalid_argument("coloring: A must be >= 1");
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw std::invalid_argument("coloring: bad edge");
    }
  }

  int spin_index(int v, int c) const { return v * k + c; }
  int spins() const { return n * k; }
};

struct ColoringEncoding {
  CouplingGraph graph;
  long long offset = 0;  // H_ising(s) + offset = 4 * penalty(x(s))
  long long scale = 4;   // integer scaling applied to clear fractions
};

// One-hot penalty Hamiltonian over x = (1+s)/2, multiplied through by 4 so
// all couplings and fields are integers:
//   penalty = A sum_v (1 - sum_c x_vc)^2 + A sum_(u,v) sum_c x_uc x_vc
inline ColoringEncoding coloring_encode(const ColoringSpec& spec,
                                        int spin_limit = 4096) {
  spec.validate();
  if (spec.spins() > spin_limit)
    throw std::invalid_argument("coloring: n*k exceeds the configured spin limit");
  ColoringEncoding enc{CouplingGraph(spec.spins()), 0, 4};
  const long long A = spec.A;

  // vertex one-hot term
  for (int v = 0; v < spec.n; v++) {
    for (int c = 0; c < spec.k; c++) {
      for (int c2 = c + 1; c2 < spec.k; c2++)
        enc.graph.add_coupling(spec.spin_index(v, c), spec.spin_index(v, c2), -2 * A);
      if (spec.k != 2) enc.graph.add_field(spec.spin_index(v, c), -2 * A * (spec.k - 2));
    }
  }
  // same-color conflict term per edge
  for (auto [u, v] : spec.edges) {
    for (int c = 0; c < spec.k; c++) {
      enc.graph.add_coupling(spec.spin_index(u, c), spec.spin_index(v, c), -A);
      enc.graph.add_field(spec.spin_index(u, c), -A);
      enc.graph.add_field(spec.spin_index(v, c), -A);
    }
  }
  enc.offset = A * spec.n * (static_cast<long long>(spec.k) * spec.k - 3 * spec.k + 4) +
               A * spec.k * static_cast<long long>(spec.edges.size());
  return enc;
}

// Binary-side penalty, computed directly from the definition.
inline long long coloring_penalty(const SpinArray& s, const ColoringSpec& spec) {
  spec.validate();
  if (static_cast<int>(s.size()) != spec.spins())
    throw std::invalid_argument("coloring_penalty: size mismatch");
  long long pen = 0;
  for (int v = 0; v < spec.n; v++) {
    long long q = 0;
    for (int c = 0; c < spec.k; c++) q += (1 + s[spec.spin_index(v, c)]) / 2;
    pen += spec.A * (1 - q) * (1 - q);
  }
  for (auto [u, v] : spec.edges)
    for (int c = 0; c < spec.k; c++)
      pen += spec.A * ((1 + s[spec.spin_index(u, c)]) / 2) *
             ((1 + s[spec.spin_index(v, c)]) / 2);
  return pen;
}

struct ColoringResult {
  std::vector<int> colors;          // per vertex; -1 where not one-hot
  std::vector<int> invalid_vertices;
  std::vector<std::pair<int, int>> conflict_edges;
  bool one_hot = false;  // every vertex has exactly one color spin up
  bool proper = false;   // one_hot and no conflicting edge
};

inline ColoringResult coloring_decode(const SpinArray& s, const ColoringSpec& spec) {
  spec.validate();
  if (static_cast<int>(s.size()) != spec.spins())
    throw std::invalid_argument("coloring_decode: size mismatch");
  ColoringResult r;
  r.colors.assign(spec.n, -1);
  for (int v = 0; v < spec.n; v++) {
    int up = 0, color = -1;
    for (int c = 0; c < spec.k; c++)
      if (s[spec.spin_index(v, c)] == 1) {
        up++;
        color = c;
      }
    if (up == 1)
      r.colors[v] = color;
    else
      r.invalid_vertices.push_back(v);
  }
  r.one_hot = r.invalid_vertices.empty();
  if (r.one_hot)
    for (auto [u, v] : spec.edges)
      if (r.colors[u] == r.colors[v]) r.conflict_edges.emplace_back(u, v);
  r.proper = r.one_hot && r.conflict_edges.empty();
  return r;
}

inline ColoringSpec parse_coloring_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("coloring spec: ") + e.what());
  }
  ColoringSpec spec;
  try {
    spec.n = j.at("n").get<int>();
    spec.k = j.at("k").get<int>();
    spec.A = j.value("A", 1LL);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw ParseError("coloring spec: edges must be [u, v] pairs");
      spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("coloring spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

inline std::string serialize_coloring_spec(const ColoringSpec& spec) {
  nlohmann::ordered_json j;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : spec.edges) j["edges"].push_back({u, v});
  j["A"] = spec.A;
  return j.dump(2) + "\n";
}

inline ColoringSpec load_coloring_spec(const std::string& path) {
  return parse_coloring_spec(read_text_file(path));
}

// Demo instances (small named graphs; the choice of demo set is ours).
inline ColoringSpec demo_coloring(const std::string& name) {
  if (name == "triangle3") return {3, 3, {{0, 1}, {1, 2}, {0, 2}}, 1};
  if (name == "triangle2") return {3, 2, {{0, 1}, {1, 2}, {0, 2}}, 1};
  if (name == "square2") return {4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 1};
  if (name == "wheel5")
    return {5, 3, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}}, 1};
  throw std::invalid_argument(
      "demo_coloring: unknown instance (triangle3, triangle2, square2, wheel5)");
}

// ---- exhaustive oracle -----------------------------------------------------------

struct GroundResult {
  long long energy = 0;
  std::uint64_t degeneracy = 0;          // number of ground states
  std::vector<SpinArray> states;         // stored up to a cap
  static constexpr std::size_t kMaxStored = 65536;
};

// Exact minimum by Gray-code walk over all 2^n states with O(deg) updates.
inline GroundResult brute_force(const CouplingGraph& g, int limit = 24) {
  const int n = g.size();
  if (n > limit)
    throw std::invalid_argument("brute_force: instance exceeds the enumeration limit (" +
                                std::to_string(limit) + " spins)");
  SpinArray s(n, -1);
  long long H = hamiltonian(s, g);

  GroundResult best;
  best.energy = H;
  best.degeneracy = 1;
  best.states.push_back(s);

  const std::uint64_t states = 1ull << n;
  for (std::uint64_t t = 1; t < states; t++) {
    const int i = __builtin_ctzll(t);  // Gray code: flip the lowest set bit index
    long long local = g.field(i);
    for (const auto& [j, J] : g.neighbors(i)) local += J * s[j];
    H += 2 * s[i] * local;
    s[i] = -s[i];
    if (H < best.energy) {
      best.energy = H;
      best.degeneracy = 1;
      best.states.clear();
      best.states.push_back(s);
    } else if (H == best.energy) {
      best.degeneracy++;
      if (best.states.size() < GroundResult::kMaxStored) best.states.push_back(s);
    }
  }
  return best;
}

}  // namespace shemtj
