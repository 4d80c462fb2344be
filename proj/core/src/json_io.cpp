#include "veemap/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "veemap/error.hpp"

namespace veemap {

namespace {

Alphabet alphabet_from(const Json& j) { return Alphabet(j.get<std::vector<std::string>>()); }

Json pair_json(const PairVeelikeRule& r, const WordPair& p) {
  return Json::array({r.left_alphabet.render(p.left), r.right_alphabet.render(p.right)});
}

template <typename F>
auto wrap(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

Json to_json(const Dfa& d) {
  return Json{{"alphabet", d.alphabet().symbols()},
              {"states", d.num_states()},
              {"start", d.start()},
              {"accepting", [&] {
                 std::vector<int> acc;
                 for (int q = 0; q < d.num_states(); ++q)
                   if (d.accepting(q)) acc.push_back(q);
                 return acc;
               }()},
              {"delta", d.delta()}};
}

Dfa dfa_from_json(const Json& j) {
  return wrap("automaton", [&] {
    const int states = j.at("states").get<int>();
    std::vector<bool> acc(static_cast<std::size_t>(std::max(states, 0)), false);
    for (int q : j.at("accepting").get<std::vector<int>>()) {
      if (q < 0 || q >= states) throw Error("accepting state out of range");
      acc[static_cast<std::size_t>(q)] = true;
    }
    return Dfa(alphabet_from(j.at("alphabet")), states, j.at("start").get<int>(), acc,
               j.at("delta").get<std::vector<std::vector<int>>>());
  });
}

Json to_json(const VElement& g) { return Json{{"domain", g.domain()}, {"range", g.range()}}; }

VElement v_element_from_json(const Json& j) {
  return wrap("V element", [&] {
    return VElement(j.at("domain").get<std::vector<Bits>>(), j.at("range").get<std::vector<Bits>>());
  });
}

Json to_json(const TwoVElement& g) {
  auto rects = [](const std::vector<Rect>& rs) {
    Json out = Json::array();
    for (const auto& r : rs) out.push_back(Json::array({r.first, r.second}));
    return out;
  };
  return Json{{"domain", rects(g.domain())}, {"range", rects(g.range())}};
}

TwoVElement two_v_element_from_json(const Json& j) {
  return wrap("2V element", [&] {
    auto rects = [](const Json& a) {
      std::vector<Rect> out;
      for (const auto& r : a) out.push_back(Rect{r.at(0).get<Bits>(), r.at(1).get<Bits>()});
      return out;
    };
    return TwoVElement(rects(j.at("domain")), rects(j.at("range")));
  });
}

Json to_json(const VeelikeRule& r) {
  Json shorts = Json::object(), longs = Json::object();
  for (const auto& [u, v] : r.short_table) shorts[r.alphabet.render(u)] = r.alphabet.render(v);
  for (const auto& [u, v] : r.long_table) longs[r.alphabet.render(u)] = r.alphabet.render(v);
  return Json{{"alphabet", r.alphabet.symbols()}, {"n", r.n}, {"short", shorts}, {"long", longs}};
}

VeelikeRule veelike_rule_from_json(const Json& j) {
  return wrap("rule", [&] {
    VeelikeRule r;
    r.alphabet = j.contains("alphabet") ? alphabet_from(j.at("alphabet")) : Alphabet::binary();
    r.n = j.at("n").get<std::size_t>();
    auto table = [&](const char* key, std::map<Word, Word>& out) {
      for (const auto& [u, v] : j.at(key).items()) {
        const Word w = r.alphabet.parse(u);
        if (!out.emplace(w, r.alphabet.parse(v.get<std::string>())).second)
          throw Error(std::string("duplicate ") + key + " entry '" + u + "'");
      }
    };
    table("short", r.short_table);
    table("long", r.long_table);
    return r;
  });
}

Json to_json(const PairVeelikeRule& r) {
  Json table = Json::array();
  for (const auto& [k, v] : r.table) table.push_back(Json::array({pair_json(r, k), pair_json(r, v)}));
  return Json{{"left_alphabet", r.left_alphabet.symbols()},
              {"right_alphabet", r.right_alphabet.symbols()},
              {"n", r.n},
              {"table", table}};
}

PairVeelikeRule pair_rule_from_json(const Json& j) {
  return wrap("pair rule", [&] {
    PairVeelikeRule r;
    r.left_alphabet = j.contains("left_alphabet") ? alphabet_from(j.at("left_alphabet")) : Alphabet::binary();
    r.right_alphabet = j.contains("right_alphabet") ? alphabet_from(j.at("right_alphabet")) : Alphabet::binary();
    r.n = j.at("n").get<std::size_t>();
    auto pair = [&](const Json& p) {
      return WordPair{r.left_alphabet.parse(p.at(0).get<std::string>()), r.right_alphabet.parse(p.at(1).get<std::string>())};
    };
    for (const auto& e : j.at("table"))
      if (!r.table.emplace(pair(e.at(0)), pair(e.at(1))).second) throw Error("duplicate pair-table entry");
    return r;
  });
}

Json to_json(const VertexShift& v) { return Json{{"symbols", v.alphabet.symbols()}, {"matrix", v.matrix}}; }

VertexShift vertex_shift_from_json(const Json& j) {
  return wrap("matrix", [&] {
    return VertexShift(alphabet_from(j.at("symbols")), j.at("matrix").get<std::vector<std::vector<int>>>());
  });
}

Json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(x.convert_to<long long>());
  return Json(x.str());
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_rows()) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix int_matrix_from_json(const Json& j) {
  return wrap("matrix", [&] {
    const Json& rows = j.is_object() ? j.at("matrix") : j;
    std::vector<std::vector<BigInt>> out;
    for (const auto& r : rows) {
      std::vector<BigInt> row;
      for (const auto& x : r) row.push_back(x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long long>()));
      out.push_back(std::move(row));
    }
    return IntMatrix(out);
  });
}

Json to_json(const AbelianGroup& g) {
  Json out = Json::array();
  for (const auto& f : g.invariant_factors) out.push_back(to_json(f));
  return out;
}

Json to_json(const BfReport& r) {
  Json out = Json::array();
  for (const auto& e : r.entries)
    out.push_back(Json{{"matrix", to_json(e.matrix)},
                       {"bf_invariant_factors", to_json(e.group)},
                       {"det_i_minus_a", to_json(e.det_i_minus_a)},
                       {"group", e.group.to_string()},
                       {"trivial", e.group.trivial()}});
  return out;
}

Json to_json(const FlowOrbit& o) {
  Json tiles = Json::array();
  for (const auto& t : o.tiles) tiles.push_back(Json{{"s", t.symbol}, {"len", to_string(t.length)}});
  return Json{{"tiles", tiles}, {"base", Json{{"tile", o.base.tile}, {"off", to_string(o.base.offset)}}}};
}

FlowOrbit orbit_from_json(const Json& j) {
  return wrap("orbit", [&] {
    std::vector<Tile> tiles;
    for (const auto& t : j.at("tiles"))
      tiles.push_back(Tile{t.at("s").get<std::string>(), parse_rational(t.value("len", std::string("1")))});
    Position base;
    if (j.contains("base")) {
      base.tile = j.at("base").at("tile").get<std::size_t>();
      base.offset = parse_rational(j.at("base").value("off", std::string("0")));
    }
    return FlowOrbit(std::move(tiles), std::move(base));
  });
}

Json to_json(const VerifyResult& r, const Alphabet& alphabet) {
  Json out{{"pass", static_cast<bool>(r)}, {"words_checked", r.words_checked}};
  if (r.violation) {
    const auto& v = *r.violation;
    Json c{{"kind", to_string(v.kind)}, {"word", alphabet.render(v.word)}};
    if (v.kind == VeelikeViolation::Kind::not_injective) c["other"] = alphabet.render(v.other);
    if (v.kind == VeelikeViolation::Kind::image_outside_language) c["image"] = alphabet.render(v.other);
    if (v.kind != VeelikeViolation::Kind::not_surjective) {
      const std::size_t s = std::min(v.split, v.word.size());
      c["u"] = alphabet.render(Word(v.word.begin(), v.word.begin() + static_cast<std::ptrdiff_t>(s)));
      c["v"] = alphabet.render(Word(v.word.begin() + static_cast<std::ptrdiff_t>(s), v.word.end()));
    }
    out["counterexample"] = c;
  }
  return out;
}

Json to_json(const PairVerifyResult& r, const Alphabet& left, const Alphabet& right) {
  Json out{{"pass", static_cast<bool>(r)}, {"pairs_checked", r.pairs_checked}};
  if (r.violation) {
    const auto& v = *r.violation;
    Json c{{"kind", to_string(v.kind)}, {"pair", Json::array({left.render(v.pair.left), right.render(v.pair.right)})}};
    if (v.kind == VeelikeViolation::Kind::not_injective || v.kind == VeelikeViolation::Kind::image_outside_language)
      c["other"] = Json::array({left.render(v.other.left), right.render(v.other.right)});
    out["counterexample"] = c;
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace veemap
