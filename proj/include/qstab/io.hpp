#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "contraction.hpp"
#include "cubecomplex.hpp"
#include "curvetype.hpp"
#include "errors.hpp"
#include "monoid.hpp"
#include "partitions.hpp"
#include "qcond.hpp"
#include "tropical.hpp"

namespace qstab::io {

using nlohmann::json;

namespace detail {

/// Character cursor with 1-based line/column tracking.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  /// Blanks and '#' comments, stopping at a newline.
  void skip_spaces() {
    while (!done()) {
      if (peek() == '#') {
        while (!done() && peek() != '\n') get();
      } else if (peek() == ' ' || peek() == '\t' || peek() == '\r') {
        get();
      } else {
        break;
      }
    }
  }
  void skip_whitespace() {
    while (true) {
      skip_spaces();
      if (done() || peek() != '\n') break;
      get();
    }
  }
  bool accept(char c) {
    skip_spaces();
    if (peek() != c) return false;
    get();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }
  int integer() {
    skip_spaces();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number" + found());
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (get() - '0');
      if (value > 1'000'000'000) fail("number too large");
    }
    return static_cast<int>(value);
  }
  std::string identifier() {
    skip_spaces();
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_') fail("expected a name" + found());
    std::string out;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') out += get();
    return out;
  }
  std::string found() const {
    if (done()) return ", found end of input";
    return std::string(", found '") + peek() + "'";
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

template <class F>
auto semantic(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("semantic error: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ParseError(std::string("semantic error: ") + e.what());
  }
}

inline int infer_n(const std::vector<std::vector<std::vector<int>>>& partitions) {
  int n = 0;
  for (const auto& p : partitions)
    for (const auto& b : p)
      for (int x : b) n = std::max(n, x);
  return n;
}

/// One partition in brace form "{1,2}{3}" or block form "12|3" / "1,2|3".
inline std::vector<std::vector<int>> partition_blocks(Cursor& in) {
  in.skip_spaces();
  std::vector<std::vector<int>> blocks;
  if (in.peek() == '{') {
    while (in.accept('{')) {
      blocks.emplace_back();
      if (!in.accept('}')) {
        do blocks.back().push_back(in.integer());
        while (in.accept(','));
        in.expect('}');
      }
      in.skip_spaces();
    }
    return blocks;
  }
  do {
    in.skip_spaces();
    std::vector<int> block;
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(in.peek())) || in.peek() == ',') digits += in.get();
    if (digits.empty()) in.fail("expected a block of elements" + in.found());
    if (digits.find(',') != std::string::npos) {
      std::size_t start = 0;
      while (start <= digits.size()) {
        const auto end = digits.find(',', start);
        const auto piece = digits.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (piece.empty()) in.fail("empty element in block");
        block.push_back(std::stoi(piece));
        if (end == std::string::npos) break;
        start = end + 1;
      }
    } else {
      for (char c : digits) block.push_back(c - '0');
    }
    blocks.push_back(std::move(block));
  } while (in.accept('|'));
  return blocks;
}

}  // namespace detail

inline SetPartition parse_partition(std::string_view text, std::optional<int> n = std::nullopt) {
  detail::Cursor in(text);
  auto blocks = detail::partition_blocks(in);
  in.skip_whitespace();
  if (!in.done()) in.fail("unexpected trailing input" + in.found());
  const int size = n.value_or(detail::infer_n({blocks}));
  return detail::semantic([&] { return SetPartition(size, blocks); });
}

/// Block form used in chains: "12|34", commas inside blocks once n >= 10.
inline std::string partition_block_text(const SetPartition& p) {
  std::string out;
  for (std::size_t b = 0; b < p.blocks().size(); ++b) {
    if (b) out += '|';
    for (std::size_t k = 0; k < p.blocks()[b].size(); ++k) {
      if (k && p.n() >= 10) out += ',';
      out += std::to_string(p.blocks()[b][k]);
    }
  }
  return out;
}

/// "1234 < 12|34 < 12|3|4". An empty chain needs an explicit n.
inline PartitionChain parse_chain(std::string_view text, std::optional<int> n = std::nullopt) {
  detail::Cursor in(text);
  in.skip_whitespace();
  std::vector<std::vector<std::vector<int>>> raw;
  if (!in.done()) {
    do raw.push_back(detail::partition_blocks(in));
    while (in.accept('<'));
  }
  in.skip_whitespace();
  if (!in.done()) in.fail("unexpected trailing input" + in.found());
  if (raw.empty() && !n) throw ParseError("an empty chain needs the number of markings", in.line(), in.column());
  const int size = n.value_or(detail::infer_n(raw));
  return detail::semantic([&] {
    std::vector<SetPartition> chain;
    for (auto& blocks : raw) chain.emplace_back(size, blocks);
    return PartitionChain(size, std::move(chain));
  });
}

inline std::string print_chain(const PartitionChain& c) { return c.to_string(); }

namespace detail {

inline MonoidElement monoid_element(Cursor& in) {
  MonoidElement m;
  do {
    in.skip_spaces();
    long coefficient = 1;
    if (std::isdigit(static_cast<unsigned char>(in.peek()))) {
      coefficient = in.integer();
      in.expect('*');
    }
    m.add(in.identifier(), coefficient);
  } while (in.accept('+'));
  return m;
}

}  // namespace detail

inline MonoidElement parse_monoid_element(std::string_view text) {
  detail::Cursor in(text);
  in.skip_spaces();
  if (in.peek() == '0') {
    in.get();
    in.skip_whitespace();
    if (!in.done()) in.fail("unexpected trailing input" + in.found());
    return {};
  }
  auto m = detail::monoid_element(in);
  in.skip_whitespace();
  if (!in.done()) in.fail("unexpected trailing input" + in.found());
  return m;
}

/// Statements separated by ';' or newlines:
///   gens e1,e2   v<id>:<genus>   e <a>-<b>:<length>   l<marking>@<root>
inline TropicalCurve parse_curve(std::string_view text) {
  detail::Cursor in(text);
  std::vector<std::string> generators;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Leg> legs;
  bool have_gens = false;
  while (true) {
    in.skip_whitespace();
    if (in.done()) break;
    if (in.accept(';')) continue;
    const int line = in.line(), column = in.column();
    const auto word = in.identifier();
    if (word == "gens") {
      if (have_gens) throw ParseError("generators declared twice", line, column);
      have_gens = true;
      in.skip_spaces();
      if (in.peek() != ';' && in.peek() != '\n' && !in.done()) {
        do generators.push_back(in.identifier());
        while (in.accept(','));
      }
    } else if (word.size() > 1 && word[0] == 'v' && std::all_of(word.begin() + 1, word.end(), ::isdigit)) {
      in.expect(':');
      vertices.push_back({std::stoi(word.substr(1)), in.integer(), false});
    } else if (word == "e") {
      const int a = in.integer();
      in.expect('-');
      const int b = in.integer();
      in.expect(':');
      edges.push_back({a, b, detail::monoid_element(in)});
    } else if (word.size() > 1 && word[0] == 'l' && std::all_of(word.begin() + 1, word.end(), ::isdigit)) {
      in.expect('@');
      legs.push_back({std::stoi(word.substr(1)), in.integer()});
    } else {
      throw ParseError("unknown statement '" + word + "'", line, column);
    }
    in.skip_spaces();
    if (!in.done() && in.peek() != ';' && in.peek() != '\n') in.fail("expected ';' or end of statement" + in.found());
  }
  return detail::semantic([&] { return TropicalCurve(generators, vertices, edges, legs); });
}

inline std::string print_curve(const TropicalCurve& g) {
  std::string out = "gens ";
  for (std::size_t i = 0; i < g.generators().size(); ++i) out += (i ? "," : "") + g.generators()[i];
  for (const auto& v : g.vertices()) out += "; v" + std::to_string(v.id) + ":" + std::to_string(v.genus);
  for (const auto& e : g.edges()) out += "; e " + std::to_string(e.a) + "-" + std::to_string(e.b) + ":" + e.length.to_string();
  for (const auto& l : g.legs()) out += "; l" + std::to_string(l.marking) + "@" + std::to_string(l.root);
  return out;
}

/// Statements separated by ';' or newlines:
///   C<id> g<genus> {markings}   N(C<a>,C<b>)   E<m>(C<a>,...)  (a component listed once per branch)
inline CombinatorialType parse_type(std::string_view text) {
  detail::Cursor in(text);
  std::vector<Component> components;
  std::vector<Singularity> singularities;
  int marks = 0;
  auto component_ref = [&]() {
    const int line = in.line(), column = in.column();
    const auto word = in.identifier();
    if (word.size() < 2 || word[0] != 'C' || !std::all_of(word.begin() + 1, word.end(), ::isdigit))
      throw ParseError("expected a component reference C<id>", line, column);
    return std::stoi(word.substr(1));
  };
  while (true) {
    in.skip_whitespace();
    if (in.done()) break;
    if (in.accept(';')) continue;
    const int line = in.line(), column = in.column();
    const auto word = in.identifier();
    if (word.size() > 1 && word[0] == 'C' && std::all_of(word.begin() + 1, word.end(), ::isdigit)) {
      Component c;
      c.id = std::stoi(word.substr(1));
      const int gl = in.line(), gc = in.column();
      const auto g = in.identifier();
      if (g.size() < 2 || g[0] != 'g' || !std::all_of(g.begin() + 1, g.end(), ::isdigit)) throw ParseError("expected a genus g<k>", gl, gc);
      c.genus = std::stoi(g.substr(1));
      in.expect('{');
      if (!in.accept('}')) {
        do c.markings.push_back(in.integer());
        while (in.accept(','));
        in.expect('}');
      }
      marks += static_cast<int>(c.markings.size());
      components.push_back(std::move(c));
    } else if (word == "N" || (word.size() > 1 && word[0] == 'E' && std::all_of(word.begin() + 1, word.end(), ::isdigit))) {
      Singularity s;
      s.id = static_cast<int>(singularities.size());
      s.genus = word == "N" ? 0 : 1;
      in.expect('(');
      int count = 0;
      do {
        s.branches[component_ref()] += 1;
        ++count;
      } while (in.accept(','));
      in.expect(')');
      const int expected = word == "N" ? 2 : std::stoi(word.substr(1));
      if (count != expected)
        throw ParseError(word + " lists " + std::to_string(count) + " branches, expected " + std::to_string(expected), line, column);
      singularities.push_back(std::move(s));
    } else {
      throw ParseError("unknown statement '" + word + "'", line, column);
    }
    in.skip_spaces();
    if (!in.done() && in.peek() != ';' && in.peek() != '\n') in.fail("expected ';' or end of statement" + in.found());
  }
  return detail::semantic([&] { return CombinatorialType(marks, components, singularities); });
}

inline std::string print_type(const CombinatorialType& t) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += "; ";
  };
  for (const auto& c : t.components()) {
    sep();
    out += "C" + std::to_string(c.id) + " g" + std::to_string(c.genus) + " {";
    for (std::size_t i = 0; i < c.markings.size(); ++i) out += (i ? "," : "") + std::to_string(c.markings[i]);
    out += "}";
  }
  for (const auto& s : t.singularities()) {
    sep();
    out += s.is_elliptic() ? "E" + std::to_string(s.branch_count()) : std::string("N");
    out += "(";
    bool first = true;
    for (const auto& [c, m] : s.branches)
      for (int k = 0; k < m; ++k) {
        out += (first ? "C" : ",C") + std::to_string(c);
        first = false;
      }
    out += ")";
  }
  return out;
}

// ---- JSON ----

namespace detail {

[[noreturn]] inline void json_fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) json_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) json_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

inline int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) json_fail(where, "expected an integer");
  return j.get<int>();
}

inline const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) json_fail(where, "expected an array");
  return j;
}

inline std::vector<std::vector<int>> blocks_from_json(const json& j, const std::string& where) {
  std::vector<std::vector<int>> blocks;
  std::size_t i = 0;
  for (const auto& b : as_array(j, where)) {
    const auto w = where + "[" + std::to_string(i++) + "]";
    blocks.emplace_back();
    std::size_t k = 0;
    for (const auto& x : as_array(b, w)) blocks.back().push_back(as_int(x, w + "[" + std::to_string(k++) + "]"));
  }
  return blocks;
}

}  // namespace detail

/// Parses JSON text; syntax errors carry line and column.
inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    const auto colon = what.rfind(": ");
    throw ParseError("invalid JSON: " + (colon == std::string::npos ? what : what.substr(colon + 2)), line, column);
  }
}

inline json partition_to_json(const SetPartition& p) { return p.blocks(); }

inline SetPartition partition_from_json(const json& j, int n, const std::string& where = "partition") {
  auto blocks = detail::blocks_from_json(j, where);
  return detail::semantic([&] { return SetPartition(n, blocks); });
}

inline json chain_to_json(const PartitionChain& c) {
  json chain = json::array();
  for (const auto& p : c.partitions()) chain.push_back(partition_to_json(p));
  return {{"n", c.n()}, {"chain", chain}};
}

inline json condition_to_json(const QCondition& q) {
  json parts = json::array();
  for (const auto& p : q.members()) parts.push_back(partition_to_json(p));
  return {{"n", q.n()}, {"partitions", parts}};
}

inline QCondition condition_from_json(const json& j) {
  const int n = detail::as_int(detail::field(j, "n", "condition"), "condition.n");
  if (n < 1) detail::json_fail("condition.n", "must be positive");
  std::set<SetPartition> members;
  std::size_t i = 0;
  for (const auto& p : detail::as_array(detail::field(j, "partitions", "condition"), "condition.partitions")) {
    members.insert(partition_from_json(p, n, "condition.partitions[" + std::to_string(i++) + "]"));
  }
  return detail::semantic([&] { return QCondition(n, members); });
}

/// Antichain text: minimal excluded partitions separated by ';'.
inline std::string antichain_text(const Antichain& a) {
  std::string out;
  for (const auto& p : a.elements()) out += (out.empty() ? "" : "; ") + p.to_string();
  return out;
}

inline json curve_to_json(const TropicalCurve& g) {
  json vertices = json::array(), edges = json::array(), legs = json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"id", v.id}, {"genus", v.genus}});
  for (const auto& e : g.edges()) {
    json length = json::object();
    for (const auto& [name, c] : e.length.coefficients()) length[name] = c;
    edges.push_back({{"ends", {e.a, e.b}}, {"length", length}});
  }
  for (const auto& l : g.legs()) legs.push_back({{"marking", l.marking}, {"root", l.root}});
  return {{"generators", g.generators()}, {"vertices", vertices}, {"edges", edges}, {"legs", legs}};
}

inline TropicalCurve curve_from_json(const json& j) {
  using namespace detail;
  std::vector<std::string> generators;
  std::size_t i = 0;
  for (const auto& g : as_array(field(j, "generators", "curve"), "curve.generators")) {
    if (!g.is_string()) json_fail("curve.generators[" + std::to_string(i) + "]", "expected a string");
    generators.push_back(g.get<std::string>());
    ++i;
  }
  std::vector<Vertex> vertices;
  i = 0;
  for (const auto& v : as_array(field(j, "vertices", "curve"), "curve.vertices")) {
    const auto w = "curve.vertices[" + std::to_string(i++) + "]";
    vertices.push_back({as_int(field(v, "id", w), w + ".id"), as_int(field(v, "genus", w), w + ".genus"), false});
  }
  std::vector<Edge> edges;
  i = 0;
  for (const auto& e : as_array(field(j, "edges", "curve"), "curve.edges")) {
    const auto w = "curve.edges[" + std::to_string(i++) + "]";
    const auto& ends = as_array(field(e, "ends", w), w + ".ends");
    if (ends.size() != 2) json_fail(w + ".ends", "expected two vertex ids");
    const auto& length = field(e, "length", w);
    if (!length.is_object()) json_fail(w + ".length", "expected an object of generator coefficients");
    MonoidElement m;
    for (const auto& [name, c] : length.items()) {
      if (!c.is_number_integer() || c.get<long>() < 0) json_fail(w + ".length." + name, "expected a nonnegative integer");
      m.add(name, c.get<long>());
    }
    edges.push_back({as_int(ends[0], w + ".ends[0]"), as_int(ends[1], w + ".ends[1]"), m});
  }
  std::vector<Leg> legs;
  i = 0;
  for (const auto& l : as_array(field(j, "legs", "curve"), "curve.legs")) {
    const auto w = "curve.legs[" + std::to_string(i++) + "]";
    legs.push_back({as_int(field(l, "marking", w), w + ".marking"), as_int(field(l, "root", w), w + ".root")});
  }
  return semantic([&] { return TropicalCurve(generators, vertices, edges, legs); });
}

inline json type_to_json(const CombinatorialType& t) {
  json components = json::array(), singularities = json::array();
  for (const auto& c : t.components()) components.push_back({{"id", c.id}, {"genus", c.genus}, {"markings", c.markings}});
  for (const auto& s : t.singularities()) {
    json branches = json::array();
    for (const auto& [c, m] : s.branches) branches.push_back({{"component", c}, {"multiplicity", m}});
    singularities.push_back({{"id", s.id}, {"genus", s.genus}, {"branches", branches}});
  }
  return {{"n", t.n()}, {"components", components}, {"singularities", singularities}};
}

inline CombinatorialType type_from_json(const json& j) {
  using namespace detail;
  const int n = as_int(field(j, "n", "type"), "type.n");
  std::vector<Component> components;
  std::size_t i = 0;
  for (const auto& c : as_array(field(j, "components", "type"), "type.components")) {
    const auto w = "type.components[" + std::to_string(i++) + "]";
    Component comp{as_int(field(c, "id", w), w + ".id"), as_int(field(c, "genus", w), w + ".genus"), {}};
    std::size_t k = 0;
    for (const auto& m : as_array(field(c, "markings", w), w + ".markings")) comp.markings.push_back(as_int(m, w + ".markings[" + std::to_string(k++) + "]"));
    components.push_back(std::move(comp));
  }
  std::vector<Singularity> singularities;
  i = 0;
  for (const auto& s : as_array(field(j, "singularities", "type"), "type.singularities")) {
    const auto w = "type.singularities[" + std::to_string(i++) + "]";
    Singularity sing{as_int(field(s, "id", w), w + ".id"), as_int(field(s, "genus", w), w + ".genus"), {}};
    std::size_t k = 0;
    for (const auto& b : as_array(field(s, "branches", w), w + ".branches")) {
      const auto wb = w + ".branches[" + std::to_string(k++) + "]";
      sing.branches[as_int(field(b, "component", wb), wb + ".component")] += as_int(field(b, "multiplicity", wb), wb + ".multiplicity");
    }
    singularities.push_back(std::move(sing));
  }
  return semantic([&] { return CombinatorialType(n, components, singularities); });
}

inline Rational parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) detail::json_fail(where, "expected a rational \"p/q\" or an integer");
  const auto s = j.get<std::string>();
  try {
    std::size_t used = 0;
    const long long num = std::stoll(s, &used);
    if (used == s.size()) return Rational(num);
    if (s[used] != '/') detail::json_fail(where, "malformed rational \"" + s + "\"");
    std::size_t used2 = 0;
    const auto rest = s.substr(used + 1);
    const long long den = std::stoll(rest, &used2);
    if (used2 != rest.size() || den <= 0) detail::json_fail(where, "malformed rational \"" + s + "\"");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    detail::json_fail(where, "malformed rational \"" + s + "\"");
  }
}

inline json cube_point_to_json(const CubePoint& c) {
  json coords = json::array();
  for (const auto& [p, v] : c.coords()) coords.push_back({{"partition", partition_to_json(p)}, {"value", rational_to_string(v)}});
  return {{"n", c.n()}, {"coords", coords}};
}

inline CubePoint cube_point_from_json(const json& j) {
  using namespace detail;
  const int n = as_int(field(j, "n", "cube"), "cube.n");
  if (n < 1 || n > kMaxEnumerationSize) json_fail("cube.n", "must lie in 1.." + std::to_string(kMaxEnumerationSize));
  std::map<SetPartition, Rational> coords;
  std::size_t i = 0;
  for (const auto& c : as_array(field(j, "coords", "cube"), "cube.coords")) {
    const auto w = "cube.coords[" + std::to_string(i++) + "]";
    auto p = partition_from_json(field(c, "partition", w), n, w + ".partition");
    if (coords.contains(p)) json_fail(w, "partition " + p.to_string() + " listed twice");
    coords[p] = parse_rational(field(c, "value", w), w + ".value");
  }
  return semantic([&] { return CubePoint(n, coords); });
}

inline json verdict_to_json(const StabilityVerdict& v) {
  json out = {{"stable", v.stable}};
  if (!v.stable) {
    out["clause"] = v.clause;
    out["reason"] = v.reason;
  }
  return out;
}

inline json cell_to_json(const Cell& c) {
  json ones = json::array(), free = json::array();
  for (const auto& p : c.ones) ones.push_back(partition_to_json(p));
  for (const auto& p : c.free) free.push_back(partition_to_json(p));
  return {{"n", c.n}, {"dimension", c.dimension()}, {"ones", ones}, {"free", free}};
}

}  // namespace qstab::io
