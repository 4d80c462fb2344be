#include "veemap/flow.hpp"

#include <algorithm>
#include <sstream>

#include "veemap/error.hpp"

namespace veemap {

FlowOrbit::FlowOrbit(std::vector<Tile> t, Position b) : tiles(std::move(t)), base(std::move(b)) {
  if (tiles.empty()) throw Error("an orbit needs at least one tile");
  for (const auto& tile : tiles)
    if (tile.length <= 0) throw Error("tile '" + tile.symbol + "' has non-positive length " + to_string(tile.length));
  if (base.tile >= tiles.size()) throw Error("basepoint tile index out of range");
  if (base.offset < 0 || base.offset >= tiles[base.tile].length) throw Error("basepoint offset outside its tile");
}

FlowOrbit FlowOrbit::unit(const std::vector<std::string>& symbols) {
  std::vector<Tile> t;
  for (const auto& s : symbols) t.push_back(Tile{s, Rational(1)});
  return FlowOrbit(std::move(t));
}

std::vector<std::string> FlowOrbit::symbols() const {
  std::vector<std::string> out;
  out.reserve(tiles.size());
  for (const auto& t : tiles) out.push_back(t.symbol);
  return out;
}

Rational FlowOrbit::circumference() const {
  Rational total(0);
  for (const auto& t : tiles) total += t.length;
  return total;
}

namespace {

std::size_t least_rotation(const std::vector<std::string>& s) {
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = s[(r + k) % n];
      const auto& y = s[(best + k) % n];
      if (x == y) continue;
      if (x < y) best = r;
      break;
    }
  return best;
}

}  // namespace

std::vector<std::string> symbol_sequence(const FlowOrbit& o) {
  const auto s = o.symbols();
  const std::size_t r = least_rotation(s);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < s.size(); ++k) out.push_back(s[(r + k) % s.size()]);
  return out;
}

// ---------------------------------------------------------------------------

InducedMap InducedMap::single(VeelikeRule rule, Dfa language, std::string separator) {
  if (rule.alphabet != language.alphabet()) throw Error("rule and language use different alphabets");
  InducedMap m;
  m.mode_ = Mode::single;
  m.separator_ = separator;
  m.left_names_ = rule.alphabet;
  m.hull_ = hull_vertex_shift(HullSpec{std::move(language), std::move(separator), std::nullopt, "@", true});
  m.rule_ = std::move(rule);
  return m;
}

InducedMap InducedMap::pair(PairVeelikeRule rule, Dfa left, Dfa right, Alphabet left_names, Alphabet right_names,
                            std::string separator, std::string inner_separator) {
  if (rule.left_alphabet != left.alphabet() || rule.right_alphabet != right.alphabet())
    throw Error("pair rule and languages use different alphabets");
  InducedMap m;
  m.mode_ = Mode::pair;
  m.separator_ = separator;
  m.inner_separator_ = inner_separator;
  HullSpec spec{relabel(left, left_names), std::move(separator), relabel(right, right_names),
                std::move(inner_separator), true};
  m.hull_ = pair_hull_vertex_shift(spec);
  m.left_names_ = std::move(left_names);
  m.right_names_ = std::move(right_names);
  m.pair_rule_ = std::move(rule);
  return m;
}

const VeelikeRule& InducedMap::rule() const {
  if (!rule_) throw Error("pair-mode map has no single rule");
  return *rule_;
}

const PairVeelikeRule& InducedMap::pair_rule() const {
  if (!pair_rule_) throw Error("single-mode map has no pair rule");
  return *pair_rule_;
}

InducedMap induced_map(const VElement& g) { return InducedMap::single(action_on_L(g), thompson_language()); }

InducedMap induced_pair_map(const TwoVElement& g) {
  return InducedMap::pair(pair_action(g), thompson_language(), thompson_language(), Alphabet({"0_A", "1_A"}),
                          Alphabet({"0_B", "1_B"}));
}

void check_admissible(const InducedMap& m, const FlowOrbit& o) {
  const VertexShift& h = m.hull();
  const auto n = o.tiles.size();
  for (const auto& t : o.tiles)
    if (!h.alphabet.contains(t.symbol)) throw Error("orbit symbol '" + t.symbol + "' is not in the hull alphabet");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = o.tiles[i].symbol;
    const auto& b = o.tiles[(i + 1) % n].symbol;
    if (!h.allowed(a, b)) throw Error("inadmissible orbit: forbidden bigram '" + a + b + "' at tile " + std::to_string(i));
  }
}

std::vector<Position> anchors(const FlowOrbit& o, const InducedMap& m) {
  std::vector<Position> out;
  const bool pair = m.mode() == InducedMap::Mode::pair;
  const std::string& mark = pair ? m.inner_separator() : m.separator();
  for (std::size_t i = 0; i < o.tiles.size(); ++i)
    if (o.tiles[i].symbol == mark) out.push_back(Position{i, pair ? Rational(o.tiles[i].length / 2) : Rational(0)});
  return out;
}

namespace {

/// Replace `count` circularly consecutive tiles from `start` by `tiles` of the
/// same total length.
struct Edit {
  std::size_t start;
  std::size_t count;
  std::vector<Tile> tiles;
};

Position locate(const std::vector<Tile>& tiles, std::size_t first, const Rational& x) {
  Rational acc(0);
  for (std::size_t j = 0; j < tiles.size(); ++j) {
    if (x < acc + tiles[j].length) return Position{first + j, x - acc};
    acc += tiles[j].length;
  }
  throw Error("basepoint fell outside its rewritten piece");
}

FlowOrbit splice(const FlowOrbit& o, std::vector<Edit> edits) {
  if (edits.empty()) return o;
  const std::size_t n = o.tiles.size();
  const std::size_t origin = edits.front().start;
  std::sort(edits.begin(), edits.end(),
            [&](const Edit& a, const Edit& b) { return (a.start + n - origin) % n < (b.start + n - origin) % n; });

  std::vector<Tile> out;
  Position base;
  std::size_t next = 0;
  for (std::size_t r = 0; r < n;) {
    const std::size_t pos = (origin + r) % n;
    if (next < edits.size() && edits[next].start == pos) {
      const Edit& e = edits[next++];
      Rational x(0);
      bool has_base = false;
      for (std::size_t k = 0; k < e.count; ++k) {
        const std::size_t p = (pos + k) % n;
        if (p == o.base.tile) {
          x += o.base.offset;
          has_base = true;
          break;
        }
        x += o.tiles[p].length;
      }
      if (has_base) base = locate(e.tiles, out.size(), x);
      out.insert(out.end(), e.tiles.begin(), e.tiles.end());
      r += e.count;
      continue;
    }
    if (pos == o.base.tile) base = Position{out.size(), o.base.offset};
    out.push_back(o.tiles[pos]);
    ++r;
  }
  return FlowOrbit(std::move(out), std::move(base));
}

Rational total_length(const FlowOrbit& o, std::size_t start, std::size_t count) {
  Rational total(0);
  for (std::size_t k = 0; k < count; ++k) total += o.tiles[(start + k) % o.tiles.size()].length;
  return total;
}

/// Rewrite of one piece in symbol positions: `count` symbols from `start`
/// become `image`.
struct SymbolEdit {
  std::size_t start;
  std::size_t count;
  std::vector<std::string> image;
};

/// Plans the single-mode rewriting of a symbol sequence. A circular sequence
/// wraps; a linear one (a decoded marker run) ends as if a separator followed.
/// Lenient plans skip blocks without a table entry instead of throwing.
std::vector<SymbolEdit> plan_blocks(const VeelikeRule& rule, const std::string& sep,
                                    const std::vector<std::string>& syms, bool circular, bool lenient) {
  std::vector<SymbolEdit> edits;
  const std::size_t n = syms.size();
  std::vector<std::size_t> seps;
  for (std::size_t i = 0; i < n; ++i)
    if (syms[i] == sep) seps.push_back(i);
  for (std::size_t k = 0; k < seps.size(); ++k) {
    const std::size_t i = seps[k];
    std::size_t len;
    if (circular) {
      std::size_t d = (seps[(k + 1) % seps.size()] + n - i) % n;
      if (d == 0) d = n;
      len = d - 1;
    } else {
      len = (k + 1 < seps.size() ? seps[k + 1] : n) - i - 1;
    }
    const std::size_t read = std::min(len, rule.n);
    Word u;
    bool foreign = false;
    for (std::size_t j = 1; j <= read; ++j) {
      auto s = rule.alphabet.find(syms[(i + j) % n]);
      if (!s) {
        foreign = true;
        break;
      }
      u.push_back(*s);
    }
    if (foreign) {
      if (lenient) continue;
      throw Error("block after separator contains a symbol outside the rule alphabet");
    }
    const auto& table = len < rule.n ? rule.short_table : rule.long_table;
    auto it = table.find(u);
    if (it == table.end()) {
      if (lenient) continue;
      throw Error("no table entry for block '" + rule.alphabet.render(u) + "'");
    }
    if (it->second == u) continue;
    SymbolEdit e{i, 1 + read, {sep}};
    for (const auto& s : rule.alphabet.names(it->second)) e.image.push_back(s);
    edits.push_back(std::move(e));
  }
  return edits;
}

std::vector<Tile> uniform_tiles(const std::vector<std::string>& symbols, const Rational& total) {
  const Rational each = total / static_cast<long long>(symbols.size());
  std::vector<Tile> out;
  for (const auto& s : symbols) out.push_back(Tile{s, each});
  return out;
}

}  // namespace

FlowOrbit apply(const InducedMap& m, const FlowOrbit& o) {
  if (m.mode() == InducedMap::Mode::pair) return pair_apply(m, o);
  check_admissible(m, o);
  std::vector<Edit> edits;
  for (auto& e : plan_blocks(m.rule(), m.separator(), o.symbols(), true, false))
    edits.push_back(Edit{e.start, e.count, uniform_tiles(e.image, total_length(o, e.start, e.count))});
  return splice(o, std::move(edits));
}

FlowOrbit pair_apply(const InducedMap& m, const FlowOrbit& o) {
  if (m.mode() != InducedMap::Mode::pair) throw Error("pair_apply needs a pair-mode map");
  check_admissible(m, o);
  const PairVeelikeRule& rule = m.pair_rule();
  const std::size_t n = o.tiles.size();
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < n; ++i) {
    if (o.tiles[i].symbol != m.inner_separator()) continue;
    // leftwards from @ we read u^R directly
    WordPair read;
    for (std::size_t k = 1; k < n && read.left.size() < rule.n; ++k) {
      auto s = m.left_names().find(o.tiles[(i + n - k) % n].symbol);
      if (!s) break;
      read.left.push_back(*s);
    }
    for (std::size_t k = 1; k < n && read.right.size() < rule.n; ++k) {
      auto s = m.right_names().find(o.tiles[(i + k) % n].symbol);
      if (!s) break;
      read.right.push_back(*s);
    }
    auto it = rule.table.find(read);
    if (it == rule.table.end())
      throw Error("no pair-table entry for (" + rule.left_alphabet.render(read.left) + ", " +
                  rule.right_alphabet.render(read.right) + ")");
    const WordPair& image = it->second;
    if (image == read) continue;

    const std::size_t nl = read.left.size(), nr = read.right.size();
    const std::size_t start = (i + n - nl) % n;
    const Rational half = o.tiles[i].length / 2;
    std::vector<Tile> left_tiles, right_tiles;
    Rational left_half = half, right_half = half;
    if (image.left == read.left) {
      for (std::size_t k = 0; k < nl; ++k) left_tiles.push_back(o.tiles[(start + k) % n]);
    } else {
      // |a'| content units plus half an @, filling the original left piece
      const Rational unit = (total_length(o, start, nl) + half) / (Rational(static_cast<long long>(image.left.size())) + Rational(1, 2));
      for (const auto& s : m.left_names().names(reversed(image.left))) left_tiles.push_back(Tile{s, unit});
      left_half = unit / 2;
    }
    if (image.right == read.right) {
      for (std::size_t k = 0; k < nr; ++k) right_tiles.push_back(o.tiles[(i + 1 + k) % n]);
    } else {
      const Rational unit = (total_length(o, i + 1, nr) + half) / (Rational(static_cast<long long>(image.right.size())) + Rational(1, 2));
      for (const auto& s : m.right_names().names(image.right)) right_tiles.push_back(Tile{s, unit});
      right_half = unit / 2;
    }
    Edit e{start, nl + 1 + nr, std::move(left_tiles)};
    e.tiles.push_back(Tile{m.inner_separator(), left_half + right_half});
    e.tiles.insert(e.tiles.end(), right_tiles.begin(), right_tiles.end());
    edits.push_back(std::move(e));
  }
  return splice(o, std::move(edits));
}

Word simulate_embedding(const VElement& g, const Word& u) {
  const InducedMap m = induced_map(g);
  std::vector<std::string> symbols{m.separator()};
  for (const auto& s : m.left_names().names(u)) symbols.push_back(s);
  const FlowOrbit out = apply(m, FlowOrbit::unit(symbols));
  const auto syms = out.symbols();
  const auto at = std::find(syms.begin(), syms.end(), m.separator());
  Word w;
  for (std::size_t k = 1; k < syms.size(); ++k)
    w.push_back(m.left_names().index(syms[(static_cast<std::size_t>(at - syms.begin()) + k) % syms.size()]));
  return w;
}

std::optional<Word> faithfulness_witness(const VElement& g, std::size_t max_len) {
  const InducedMap m = induced_map(g);
  for (const Word& u : enumerate(thompson_language(), max_len)) {
    std::vector<std::string> symbols{m.separator()};
    for (const auto& s : m.left_names().names(u)) symbols.push_back(s);
    const FlowOrbit o = FlowOrbit::unit(symbols);
    if (symbol_sequence(apply(m, o)) != symbol_sequence(o)) return u;
  }
  return std::nullopt;
}

OrbitCheckResult orbit_fixed_check(const std::vector<InducedMap>& maps, const std::vector<FlowOrbit>& orbits) {
  OrbitCheckResult result;
  if (maps.empty()) return result;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const FlowOrbit& o = orbits[i];
    FlowOrbit cur = o;
    auto fail = [&](std::string reason) {
      result.pass = false;
      result.failing_orbit = i;
      result.reason = std::move(reason);
      result.before = o;
      result.after = cur;
    };
    try {
      for (auto it = maps.rbegin(); it != maps.rend(); ++it) cur = apply(*it, cur);
    } catch (const Error& e) {
      fail(e.what());
      return result;
    }
    if (symbol_sequence(cur) != symbol_sequence(o)) {
      fail("symbol sequence changed");
      return result;
    }
    if (cur.circumference() != o.circumference()) {
      fail("circumference changed");
      return result;
    }
    if (anchors(cur, maps.front()).size() != anchors(o, maps.back()).size()) {
      fail("anchor count changed");
      return result;
    }
    const auto s0 = o.symbols(), s1 = cur.symbols();
    const std::size_t r0 = least_rotation(s0), r1 = least_rotation(s1);
    Rational change(0);
    for (std::size_t k = 0; k < s0.size(); ++k) {
      Rational d = o.tiles[(r0 + k) % s0.size()].length - cur.tiles[(r1 + k) % s1.size()].length;
      if (d < 0) d = -d;
      change = std::max(change, d);
    }
    if (change != 0) ++result.distorted_orbits;
    result.max_length_change = std::max(result.max_length_change, change);
  }
  return result;
}

FlowOrbit random_orbit(std::mt19937_64& rng, const VertexShift& hull, std::size_t max_tiles, bool unit_lengths) {
  const auto core = essential_symbols(hull);
  if (core.empty() || max_tiles == 0) throw Error("hull admits no periodic orbit");
  auto pick = [&](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t len = 1 + pick(max_tiles);
    Word w{core[pick(core.size())]};
    while (w.size() < len) {
      std::vector<Symbol> next;
      for (Symbol b : core)
        if (hull.allowed(w.back(), b)) next.push_back(b);
      w.push_back(next[pick(next.size())]);
    }
    if (!hull.allowed(w.back(), w.front())) continue;
    std::vector<Tile> tiles;
    for (Symbol s : w)
      tiles.push_back(Tile{hull.alphabet.name(s), unit_lengths ? Rational(1) : Rational(static_cast<long long>(1 + pick(4)), 2)});
    const std::size_t b = pick(tiles.size());
    const Rational off = tiles[b].length * Rational(static_cast<long long>(pick(4)), 4);
    return FlowOrbit(std::move(tiles), Position{b, off});
  }
  throw Error("could not close a random walk on the hull");
}

// ---------------------------------------------------------------------------
// Marker coding

CodedAlphabet::CodedAlphabet(Alphabet a, Alphabet h, std::vector<Word> w)
    : abstract(std::move(a)), host(std::move(h)), words(std::move(w)) {
  if (words.size() != abstract.size()) throw Error("need one marker word per abstract symbol");
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].empty() || words[i].size() != words.front().size()) throw Error("marker words must be non-empty and of equal length");
    for (Symbol s : words[i])
      if (s < 0 || static_cast<std::size_t>(s) >= host.size()) throw Error("marker word uses a symbol outside the host alphabet");
    if (!is_unbordered(words[i])) throw Error("marker word '" + host.render(words[i]) + "' is bordered");
    for (std::size_t j = 0; j < i; ++j)
      if (!mutually_unbordered(words[i], words[j]))
        throw Error("marker words '" + host.render(words[j]) + "' and '" + host.render(words[i]) + "' overlap");
  }
}

std::vector<std::string> CodedAlphabet::encode(const std::vector<std::string>& abstract_symbols) const {
  std::vector<std::string> out;
  for (const auto& s : abstract_symbols)
    for (const auto& h : host.names(words[static_cast<std::size_t>(abstract.index(s))])) out.push_back(h);
  return out;
}

namespace {

/// occ[p] = index of the marker word read at tile p (circularly), or -1.
std::vector<int> marker_occurrences(const CodedAlphabet& c, const FlowOrbit& o) {
  const std::size_t n = o.tiles.size();
  const std::size_t len = c.block_length();
  std::vector<int> occ(n, -1);
  if (n < len) return occ;
  Word host;
  for (const auto& t : o.tiles) {
    auto s = c.host.find(t.symbol);
    if (!s) throw Error("orbit symbol '" + t.symbol + "' is not in the host alphabet");
    host.push_back(*s);
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t w = 0; w < c.words.size(); ++w) {
      bool match = true;
      for (std::size_t k = 0; k < len && match; ++k) match = host[(p + k) % n] == c.words[w][k];
      if (match) {
        occ[p] = static_cast<int>(w);
        break;
      }
    }
  return occ;
}

std::optional<std::size_t> periodic_offset(const std::vector<int>& occ, std::size_t len) {
  const std::size_t n = occ.size();
  if (n % len != 0) return std::nullopt;
  for (std::size_t s = 0; s < len; ++s) {
    bool covered = true;
    for (std::size_t p = s; p < n && covered; p += len) covered = occ[p] >= 0;
    if (covered) return s;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<std::string>> decode_periodic(const CodedAlphabet& c, const FlowOrbit& o) {
  const auto occ = marker_occurrences(c, o);
  const std::size_t len = c.block_length();
  auto s = periodic_offset(occ, len);
  if (!s) return std::nullopt;
  std::vector<std::string> out;
  for (std::size_t p = *s; p < occ.size(); p += len) out.push_back(c.abstract.name(occ[p]));
  return out;
}

FlowOrbit coded_apply(const InducedMap& m, const CodedAlphabet& c, const FlowOrbit& o) {
  if (m.mode() != InducedMap::Mode::single) throw Error("coded_apply needs a single-mode map");
  if (c.abstract != m.hull().alphabet) throw Error("coded alphabet does not code the map's hull alphabet");
  const std::size_t n = o.tiles.size();
  const std::size_t len = c.block_length();
  const auto occ = marker_occurrences(c, o);

  // runs of adjacent marker occurrences: (first host tile, decoded symbols)
  std::vector<std::pair<std::size_t, std::vector<std::string>>> runs;
  bool circular = false;
  if (auto s = periodic_offset(occ, len)) {
    std::vector<std::string> decoded;
    for (std::size_t p = *s; p < n; p += len) decoded.push_back(c.abstract.name(occ[p]));
    runs.emplace_back(*s, std::move(decoded));
    circular = true;
  } else if (n >= len) {
    for (std::size_t p = 0; p < n; ++p) {
      if (occ[p] < 0 || occ[(p + n - len) % n] >= 0) continue;
      std::vector<std::string> decoded;
      for (std::size_t q = p; occ[q % n] >= 0 && decoded.size() * len < n; q += len) decoded.push_back(c.abstract.name(occ[q % n]));
      runs.emplace_back(p, std::move(decoded));
    }
  }

  std::vector<Edit> edits;
  for (const auto& [first, decoded] : runs)
    for (auto& e : plan_blocks(m.rule(), m.separator(), decoded, circular, true)) {
      const std::size_t start = (first + e.start * len) % n;
      const std::size_t count = e.count * len;
      edits.push_back(Edit{start, count, uniform_tiles(c.encode(e.image), total_length(o, start, count))});
    }
  return splice(o, std::move(edits));
}

std::string to_svg(const FlowOrbit& o) {
  const Rational total = o.circumference();
  const double width = 800.0;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"40\">\n";
  Rational x(0);
  for (const auto& t : o.tiles) {
    const double x0 = static_cast<double>(x / total) * width;
    const double w = static_cast<double>(t.length / total) * width;
    out << "  <rect x=\"" << x0 << "\" y=\"5\" width=\"" << w << "\" height=\"30\" fill=\"none\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << x0 + w / 2 << "\" y=\"25\" text-anchor=\"middle\">" << t.symbol << "</text>\n";
    x += t.length;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace veemap
