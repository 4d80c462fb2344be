#include "commands.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

#include "veemap/bowenfranks.hpp"
#include "veemap/error.hpp"
#include "veemap/flow.hpp"
#include "veemap/subshift.hpp"

namespace veemap::cli {

namespace {

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

Dfa load_language(const std::string& regex, const std::string& file, const std::string& alphabet) {
  if (!file.empty()) return dfa_from_json(read_json_file(file));
  if (regex.empty()) throw Error("a language is needed: give a regex or a DFA file");
  if (alphabet.empty()) return from_regex(regex);
  return from_regex(regex, Alphabet(split_csv(alphabet)));
}

Alphabet suffixed(const Alphabet& a, const std::string& suffix) {
  std::vector<std::string> names;
  for (const auto& s : a.symbols()) names.push_back(s + suffix);
  return Alphabet(names);
}

Dfa renamed(const Dfa& d, const std::string& names, const std::string& suffix) {
  const Alphabet a = names.empty() ? suffixed(d.alphabet(), suffix) : Alphabet(split_csv(names));
  if (a.size() != d.alphabet().size()) throw Error("symbol name list does not match the alphabet size");
  return relabel(d, a);
}

Json names_of(const Alphabet& a, const std::vector<Symbol>& symbols) {
  Json out = Json::array();
  for (Symbol s : symbols) out.push_back(a.name(s));
  return out;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("VEEMAP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1;
}

Outcome cmd_hull(const HullOptions& o) {
  HullSpec spec;
  spec.separator = o.separator;
  const Dfa left = load_language(o.regex, o.dfa_file, o.alphabet);
  if (o.pair) {
    const Dfa right = (o.right_regex.empty() && o.right_dfa_file.empty())
                          ? left
                          : load_language(o.right_regex, o.right_dfa_file, o.alphabet);
    spec.language = renamed(left, o.left_names, "_A");
    spec.right_language = renamed(right, o.right_names, "_B");
    spec.inner_separator = o.inner_separator;
    spec.reverse_left = o.reverse_left;
  } else {
    spec.language = left;
  }

  Outcome out;
  VertexShift v;
  try {
    v = hull(spec);
  } catch (const HullRefusal& e) {
    out.code = 2;
    out.report = Json{{"refused", true},
                      {"reason", e.what()},
                      {"component", e.component()},
                      {"witness", Json::array({e.witness().first, e.witness().second})}};
    return out;
  }

  out.report = to_json(v);
  Json forbidden = Json::array();
  for (const Word& f : sft_from_bigrams(v).forbidden) forbidden.push_back(v.alphabet.names(f));
  out.report["forbidden"] = forbidden;
  out.report["unused"] = names_of(v.alphabet, unused_symbols(v));
  const MixingResult mix = check_mixing(v);
  out.report["mixing"] = mix.mixing;
  if (o.cross_validate > 0) {
    const HullValidation val = cross_validate_hull(spec, v, o.cross_validate);
    Json cv{{"m", o.cross_validate}, {"pass", val.pass}};
    if (val.counterexample) {
      cv["counterexample"] = *val.counterexample;
      cv["missing_from_matrix"] = val.missing_from_matrix;
    }
    out.report["cross_validation"] = cv;
    if (!val.pass) out.code = 1;
  }
  out.artifact = to_dot(v);
  return out;
}

Outcome cmd_verify(const Json& input, VerifyInput kind, const VerifyOptions& o) {
  const Dfa lang = thompson_language();
  const Alphabet& bin = lang.alphabet();
  Outcome out;
  switch (kind) {
    case VerifyInput::rule: {
      const VerifyResult r = verify_veelike(veelike_rule_from_json(input), lang, o.max_len);
      out.report = Json{{"verify", to_json(r, bin)}};
      out.code = r ? 0 : 1;
      break;
    }
    case VerifyInput::pair_rule: {
      const PairVerifyResult r = verify_pair_veelike(pair_rule_from_json(input), lang, lang, o.max_len);
      out.report = Json{{"verify", to_json(r, bin, bin)}};
      out.code = r ? 0 : 1;
      break;
    }
    case VerifyInput::pair_element: {
      const TwoVElement g = two_v_element_from_json(input);
      const PairVerifyResult r = verify_pair_veelike(pair_action(g), lang, lang, o.max_len);
      out.report = Json{{"verify", to_json(r, bin, bin)}};
      out.code = r ? 0 : 1;
      break;
    }
    case VerifyInput::element: {
      const VElement g = v_element_from_json(input);
      const VeelikeRule rule = action_on_L(g);
      const VerifyResult r = verify_veelike(rule, lang, o.max_len);
      bool pass = static_cast<bool>(r);

      Json embedding{{"checked", 0}, {"pass", true}};
      std::size_t checked = 0;
      for (const Word& u : enumerate(lang, o.embed_len)) {
        ++checked;
        const Word sim = simulate_embedding(g, u);
        const Word direct = apply_rule(rule, u);
        if (sim != direct) {
          embedding["pass"] = false;
          embedding["mismatch"] = Json{{"u", bin.render(u)}, {"orbit", bin.render(sim)}, {"rule", bin.render(direct)}};
          pass = false;
          break;
        }
      }
      embedding["checked"] = checked;

      Json faithful{{"identity", v_is_identity(g)}};
      if (!v_is_identity(g)) {
        const auto witness = faithfulness_witness(g, o.embed_len);
        faithful["pass"] = witness.has_value();
        if (witness) faithful["witness"] = bin.render(*witness);
        pass = pass && witness.has_value();
      } else {
        faithful["pass"] = true;
      }
      out.report = Json{{"verify", to_json(r, bin)}, {"embedding", embedding}, {"faithfulness", faithful}, {"n", rule.n}};
      out.code = pass ? 0 : 1;
      break;
    }
  }
  out.report["pass"] = out.code == 0;
  return out;
}

Outcome cmd_relator(const RelatorOptions& o) {
  const GeneratorSet gens = standard_generators();
  const VElement product = evaluate_word(gens, o.word);
  Outcome out;
  if (!v_is_identity(product)) {
    out.code = 2;
    out.report = Json{{"word", o.word}, {"accepted", false}, {"reduced", to_json(product)}};
    return out;
  }

  std::vector<InducedMap> maps;
  for (const auto& [letter, inverse] : parse_generator_word(gens, o.word))
    maps.push_back(induced_map(inverse ? v_inverse(gens.at(letter)) : gens.at(letter)));
  const VertexShift shift = induced_map(VElement::identity()).hull();
  std::mt19937_64 rng(o.seed);
  std::vector<FlowOrbit> orbits;
  for (std::size_t i = 0; i < o.orbits; ++i) orbits.push_back(random_orbit(rng, shift, o.max_tiles));

  const OrbitCheckResult r = orbit_fixed_check(maps, orbits);
  out.report = Json{{"word", o.word},
                    {"accepted", true},
                    {"seed", o.seed},
                    {"orbits", o.orbits},
                    {"pass", r.pass},
                    {"distorted_orbits", r.distorted_orbits},
                    {"max_length_change", to_string(r.max_length_change)}};
  if (!r.pass) {
    Json f{{"orbit", *r.failing_orbit}, {"reason", r.reason}};
    if (r.before) f["before"] = to_json(*r.before);
    if (r.after) f["after"] = to_json(*r.after);
    out.report["failure"] = f;
    out.code = 1;
  }
  return out;
}

Outcome cmd_bf(const std::vector<Json>& matrices) {
  std::vector<IntMatrix> ms;
  for (const Json& j : matrices) ms.push_back(int_matrix_from_json(j));
  return Outcome{0, to_json(bf_trivial_report(ms)), {}};
}

Outcome cmd_mixing(const Json& matrix) {
  IntMatrix m = int_matrix_from_json(matrix);
  if (!m.square()) throw Error("matrix must be square");
  std::vector<std::vector<int>> rows(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).convert_to<int>();
  const Alphabet a = matrix.is_object() && matrix.contains("symbols") ? vertex_shift_from_json(matrix).alphabet : [&] {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rows.size(); ++i) names.push_back(std::to_string(i));
    return Alphabet(names);
  }();
  const MixingResult r = check_mixing(VertexShift(a, rows));
  Json report{{"mixing", r.mixing}, {"core", names_of(a, r.core)}};
  if (r.mixing) report["exponent"] = r.exponent;
  return Outcome{r.mixing ? 0 : 1, report, {}};
}

Outcome cmd_orbit(const Json& element, bool pair, const Json& orbit) {
  const InducedMap m = pair ? induced_pair_map(two_v_element_from_json(element)) : induced_map(v_element_from_json(element));
  const FlowOrbit before = orbit_from_json(orbit);
  const FlowOrbit after = apply(m, before);
  Json report{{"before", to_json(before)},
              {"after", to_json(after)},
              {"symbols_before", symbol_sequence(before)},
              {"symbols_after", symbol_sequence(after)}};
  return Outcome{0, report, to_svg(after)};
}

}  // namespace veemap::cli
