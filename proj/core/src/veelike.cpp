#include "veemap/veelike.hpp"

#include <algorithm>

#include "veemap/error.hpp"

namespace veemap {

Dfa thompson_language() {
  static const Dfa language = from_regex("eps+(0+1)*1", Alphabet::binary());
  return language;
}

Word to_word(const Bits& bits) {
  Word w;
  w.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("'" + bits + "' is not a binary word");
    w.push_back(c == '1' ? 1 : 0);
  }
  return w;
}

Bits to_bits(const Word& w) {
  Bits b;
  b.reserve(w.size());
  for (Symbol s : w) {
    if (s != 0 && s != 1) throw Error("word is not over the binary alphabet");
    b.push_back(s == 1 ? '1' : '0');
  }
  return b;
}

EventuallyZero phi(const Word& w) {
  const Bits b = to_bits(w);
  if (!b.empty() && b.back() != '1') throw Error("'" + b + "' is not in the language eps+(0+1)*1");
  return EventuallyZero(b);
}

Word phi_inv(const EventuallyZero& x) { return to_word(x.head()); }

namespace {

std::vector<Word> all_words(std::size_t alphabet_size, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (std::size_t a = 0; a < alphabet_size; ++a) {
        Word t = w;
        t.push_back(static_cast<Symbol>(a));
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

Word prefix_of(const Word& w, std::size_t n) { return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(n, w.size()))); }
Word suffix_from(const Word& w, std::size_t n) { return n >= w.size() ? Word{} : Word(w.begin() + static_cast<std::ptrdiff_t>(n), w.end()); }

}  // namespace

VeelikeRule action_on_L(const VElement& g) {
  VeelikeRule rule;
  rule.alphabet = Alphabet::binary();
  rule.n = g.depth() + 1;
  for (const auto& [u, image] : v_local_rule(g, rule.n)) rule.long_table.emplace(to_word(u), to_word(image));
  for (const Word& w : enumerate(thompson_language(), rule.n - 1))
    rule.short_table.emplace(w, phi_inv(v_apply(g, phi(w))));
  return rule;
}

VeelikeRule identity_rule(const Dfa& language, std::size_t n) {
  VeelikeRule rule;
  rule.alphabet = language.alphabet();
  rule.n = n;
  for (const Word& u : all_words(language.alphabet().size(), n)) rule.long_table.emplace(u, u);
  if (n > 0)
    for (const Word& w : enumerate(language, n - 1)) rule.short_table.emplace(w, w);
  return rule;
}

Word apply_rule(const VeelikeRule& rule, const Word& w) {
  if (w.size() < rule.n) {
    auto it = rule.short_table.find(w);
    if (it == rule.short_table.end())
      throw Error("no short-table entry for '" + rule.alphabet.render(w) + "'");
    return it->second;
  }
  auto it = rule.long_table.find(prefix_of(w, rule.n));
  if (it == rule.long_table.end())
    throw Error("no long-table entry for prefix of '" + rule.alphabet.render(w) + "'");
  return concat(it->second, suffix_from(w, rule.n));
}

Word apply_rule(const VeelikeRule& rule, const Dfa& language, const Word& w) {
  if (!language.accepts(w)) throw Error("'" + rule.alphabet.render(w) + "' is not in the language");
  return apply_rule(rule, w);
}

std::string to_string(VeelikeViolation::Kind kind) {
  switch (kind) {
    case VeelikeViolation::Kind::missing_entry: return "missing_entry";
    case VeelikeViolation::Kind::image_outside_language: return "image_outside_language";
    case VeelikeViolation::Kind::not_injective: return "not_injective";
    case VeelikeViolation::Kind::not_surjective: return "not_surjective";
  }
  return "unknown";
}

VerifyResult verify_veelike(const VeelikeRule& rule, const Dfa& language, std::size_t max_len) {
  using Kind = VeelikeViolation::Kind;
  VerifyResult result;
  const auto words = enumerate(language, max_len);

  // |preimage| <= |image| + shrink for every table entry
  std::size_t shrink = 0;
  for (const auto& [u, v] : rule.long_table) shrink = std::max(shrink, u.size() > v.size() ? u.size() - v.size() : 0);
  for (const auto& [u, v] : rule.short_table) shrink = std::max(shrink, u.size() > v.size() ? u.size() - v.size() : 0);

  std::map<Word, Word> preimage;
  for (const Word& w : words) {
    ++result.words_checked;
    const std::size_t split = w.size() >= rule.n ? rule.n : w.size();
    Word image;
    try {
      image = apply_rule(rule, w);
    } catch (const Error&) {
      result.violation = VeelikeViolation{Kind::missing_entry, w, {}, split};
      return result;
    }
    if (!language.accepts(image)) {
      result.violation = VeelikeViolation{Kind::image_outside_language, w, image, split};
      return result;
    }
    auto [it, fresh] = preimage.try_emplace(image, w);
    if (!fresh) {
      result.violation = VeelikeViolation{Kind::not_injective, w, it->second, split};
      return result;
    }
  }
  if (max_len >= shrink) {
    for (const Word& t : words) {
      if (t.size() > max_len - shrink) break;
      if (!preimage.contains(t)) {
        result.violation = VeelikeViolation{Kind::not_surjective, t, {}, 0};
        return result;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Pair languages

WordPair concat(const WordPair& a, const WordPair& b) { return {concat(a.left, b.left), concat(a.right, b.right)}; }

WordPair alpha_n(const WordPair& p, std::size_t n) { return {prefix_of(p.left, n), prefix_of(p.right, n)}; }

WordPair omega_n(const WordPair& p, std::size_t n) { return {suffix_from(p.left, n), suffix_from(p.right, n)}; }

namespace {

/// Image component for one coordinate: a long component keeps its unknown
/// tail, a short one is the whole point comp 0^N.
Word pair_component(const Bits& comp, std::size_t m, const Bits& dom, const Bits& ran) {
  if (comp.size() >= m) return to_word(ran + comp.substr(dom.size()));
  const Bits tail = comp.size() > dom.size() ? comp.substr(dom.size()) : Bits{};
  return to_word(EventuallyZero::canonical(ran + tail).head());
}

}  // namespace

PairVeelikeRule pair_action(const TwoVElement& g) {
  PairVeelikeRule rule;
  rule.left_alphabet = Alphabet::binary();
  rule.right_alphabet = Alphabet::binary();
  const std::size_t depth = g.depth();
  rule.n = depth + 1;

  std::vector<Bits> comps;
  for (const Word& w : enumerate(thompson_language(), rule.n - 1)) comps.push_back(to_bits(w));
  for (const Word& w : all_words(2, rule.n)) comps.push_back(to_bits(w));

  for (const Bits& a : comps)
    for (const Bits& b : comps) {
      // depth < n, so the first `depth` coordinates of the point are known
      const Bits qa = EventuallyZero::canonical(a).prefix(depth);
      const Bits qb = EventuallyZero::canonical(b).prefix(depth);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Rect& d = g.domain()[i];
        if (!bits_prefix(d.first, qa) || !bits_prefix(d.second, qb)) continue;
        const Rect& r = g.range()[i];
        rule.table.emplace(WordPair{to_word(a), to_word(b)},
                           WordPair{pair_component(a, rule.n, d.first, r.first),
                                    pair_component(b, rule.n, d.second, r.second)});
        break;
      }
    }
  return rule;
}

WordPair apply_pair_rule(const PairVeelikeRule& rule, const WordPair& p) {
  auto it = rule.table.find(alpha_n(p, rule.n));
  if (it == rule.table.end())
    throw Error("no pair-table entry for (" + rule.left_alphabet.render(p.left) + ", " +
                rule.right_alphabet.render(p.right) + ")");
  return concat(it->second, omega_n(p, rule.n));
}

PairVerifyResult verify_pair_veelike(const PairVeelikeRule& rule, const Dfa& left, const Dfa& right,
                                     std::size_t max_len) {
  using Kind = VeelikeViolation::Kind;
  PairVerifyResult result;
  const auto lefts = enumerate(left, max_len);
  const auto rights = enumerate(right, max_len);

  std::size_t shrink_left = 0, shrink_right = 0;
  for (const auto& [k, v] : rule.table) {
    if (k.left.size() > v.left.size()) shrink_left = std::max(shrink_left, k.left.size() - v.left.size());
    if (k.right.size() > v.right.size()) shrink_right = std::max(shrink_right, k.right.size() - v.right.size());
  }

  std::map<WordPair, WordPair> preimage;
  for (const Word& u : lefts)
    for (const Word& v : rights) {
      ++result.pairs_checked;
      const WordPair p{u, v};
      WordPair image;
      try {
        image = apply_pair_rule(rule, p);
      } catch (const Error&) {
        result.violation = PairViolation{Kind::missing_entry, p, {}};
        return result;
      }
      if (!left.accepts(image.left) || !right.accepts(image.right)) {
        result.violation = PairViolation{Kind::image_outside_language, p, image};
        return result;
      }
      auto [it, fresh] = preimage.try_emplace(image, p);
      if (!fresh) {
        result.violation = PairViolation{Kind::not_injective, p, it->second};
        return result;
      }
    }
  if (max_len >= shrink_left && max_len >= shrink_right) {
    for (const Word& u : lefts) {
      if (u.size() > max_len - shrink_left) break;
      for (const Word& v : rights) {
        if (v.size() > max_len - shrink_right) break;
        if (!preimage.contains(WordPair{u, v})) {
          result.violation = PairViolation{Kind::not_surjective, WordPair{u, v}, {}};
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace veemap
