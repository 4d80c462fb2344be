#include "veemap/subshift.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace veemap {

VertexShift::VertexShift(Alphabet a, std::vector<std::vector<int>> m) : alphabet(std::move(a)), matrix(std::move(m)) {
  if (matrix.size() != alphabet.size()) throw Error("vertex shift matrix dimension differs from alphabet size");
  for (const auto& row : matrix) {
    if (row.size() != alphabet.size()) throw Error("vertex shift matrix is not square");
    for (int x : row)
      if (x != 0 && x != 1) throw Error("vertex shift matrix entries must be 0 or 1");
  }
}

Alphabet HullSpec::hull_alphabet() const {
  std::vector<std::string> symbols = language.alphabet().symbols();
  if (pair_mode()) {
    symbols.push_back(inner_separator);
    for (const auto& s : right_language->alphabet().symbols()) symbols.push_back(s);
  }
  symbols.push_back(separator);
  return Alphabet(std::move(symbols));  // throws on overlaps
}

HullRefusal::HullRefusal(std::string component, std::pair<std::string, std::string> witness)
    : Error("hull refused: " + component + " language is not locally 2-testable (witness '" + witness.first +
            "' vs '" + witness.second + "')"),
      component_(std::move(component)),
      witness_(std::move(witness)) {}

namespace {

/// Length-2 data of a language, read off its automaton.
struct BigramData {
  bool nonempty = false;
  bool has_empty = false;
  std::set<std::pair<Symbol, Symbol>> internal;
  std::set<Symbol> first;
  std::set<Symbol> last;
};

BigramData bigram_data(const Dfa& input) {
  const Dfa d = minimize(input);
  const auto reach = d.reachable();
  const auto co = d.coreachable();
  const auto k = static_cast<Symbol>(d.alphabet().size());
  BigramData out;
  out.nonempty = co[static_cast<std::size_t>(d.start())];
  if (!out.nonempty) return out;
  out.has_empty = d.accepting(d.start());
  for (Symbol a = 0; a < k; ++a)
    if (co[static_cast<std::size_t>(d.next(d.start(), a))]) out.first.insert(a);
  for (Dfa::State q = 0; q < d.num_states(); ++q) {
    if (!reach[static_cast<std::size_t>(q)]) continue;
    for (Symbol a = 0; a < k; ++a) {
      const auto qa = d.next(q, a);
      if (d.accepting(qa)) out.last.insert(a);
      for (Symbol b = 0; b < k; ++b)
        if (co[static_cast<std::size_t>(d.next(qa, b))]) out.internal.emplace(a, b);
    }
  }
  return out;
}

void require_testable(const Dfa& d, const std::string& component) {
  auto check = check_local_testability(d, 2);
  if (!check.testable)
    throw HullRefusal(component, {d.alphabet().render(check.witness->first), d.alphabet().render(check.witness->second)});
}

}  // namespace

VertexShift hull_vertex_shift(const HullSpec& h) {
  if (h.pair_mode()) throw Error("hull_vertex_shift expects a single-language hull spec");
  const Alphabet sigma = h.hull_alphabet();
  require_testable(h.language, "single");

  const auto n = sigma.size();
  const auto sep = static_cast<std::size_t>(n - 1);
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  const BigramData data = bigram_data(h.language);
  if (data.nonempty) {
    if (data.has_empty) m[sep][sep] = 1;
    for (Symbol a : data.first) m[sep][static_cast<std::size_t>(a)] = 1;
    for (Symbol a : data.last) m[static_cast<std::size_t>(a)][sep] = 1;
    for (auto [a, b] : data.internal) m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
  }
  return VertexShift(sigma, std::move(m));
}

VertexShift pair_hull_vertex_shift(const HullSpec& h) {
  if (!h.pair_mode()) throw Error("pair_hull_vertex_shift expects a pair hull spec");
  const Alphabet sigma = h.hull_alphabet();
  require_testable(h.language, "left");
  require_testable(*h.right_language, "right");

  const Dfa left = h.reverse_left ? reverse(h.language) : h.language;
  const BigramData l = bigram_data(left);
  const BigramData r = bigram_data(*h.right_language);

  const auto n = sigma.size();
  const std::size_t na = h.language.alphabet().size();
  const std::size_t at = na;
  const std::size_t off = na + 1;  // right symbols start here
  const std::size_t sep = n - 1;
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  if (l.nonempty && r.nonempty) {
    for (auto [a, b] : l.internal) m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    for (Symbol a : l.first) m[sep][static_cast<std::size_t>(a)] = 1;
    if (l.has_empty) m[sep][at] = 1;
    for (Symbol a : l.last) m[static_cast<std::size_t>(a)][at] = 1;
    for (Symbol b : r.first) m[at][off + static_cast<std::size_t>(b)] = 1;
    if (r.has_empty) m[at][sep] = 1;
    for (auto [a, b] : r.internal) m[off + static_cast<std::size_t>(a)][off + static_cast<std::size_t>(b)] = 1;
    for (Symbol b : r.last) m[off + static_cast<std::size_t>(b)][sep] = 1;
  }
  return VertexShift(sigma, std::move(m));
}

VertexShift hull(const HullSpec& h) { return h.pair_mode() ? pair_hull_vertex_shift(h) : hull_vertex_shift(h); }

Sft sft_from_bigrams(const VertexShift& v) {
  Sft s{v.alphabet, {}};
  const auto n = static_cast<Symbol>(v.alphabet.size());
  for (Symbol a = 0; a < n; ++a)
    for (Symbol b = 0; b < n; ++b)
      if (!v.allowed(a, b)) s.forbidden.push_back({a, b});
  return s;
}

VertexShift vertex_from_sft(const Sft& s) {
  const auto n = s.alphabet.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 1));
  for (const Word& w : s.forbidden) {
    if (w.size() != 2) throw Error("only forbidden words of length 2 define a vertex shift");
    m.at(static_cast<std::size_t>(w[0])).at(static_cast<std::size_t>(w[1])) = 0;
  }
  return VertexShift(s.alphabet, std::move(m));
}

std::vector<Symbol> essential_symbols(const VertexShift& v) {
  const auto n = v.alphabet.size();
  std::vector<bool> alive(n, true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      bool in = false, out = false;
      for (std::size_t b = 0; b < n; ++b) {
        if (!alive[b]) continue;
        in = in || v.matrix[b][a] != 0;
        out = out || v.matrix[a][b] != 0;
      }
      if (!in || !out) {
        alive[a] = false;
        changed = true;
      }
    }
  }
  std::vector<Symbol> core;
  for (std::size_t a = 0; a < n; ++a)
    if (alive[a]) core.push_back(static_cast<Symbol>(a));
  return core;
}

std::vector<Symbol> unused_symbols(const VertexShift& v) {
  const auto core = essential_symbols(v);
  std::vector<Symbol> out;
  for (Symbol a = 0; a < static_cast<Symbol>(v.alphabet.size()); ++a)
    if (!std::binary_search(core.begin(), core.end(), a)) out.push_back(a);
  return out;
}

MixingResult check_mixing(const VertexShift& v) {
  MixingResult result;
  result.core = essential_symbols(v);
  const auto d = result.core.size();
  if (d == 0) return result;
  std::vector<std::vector<bool>> base(d, std::vector<bool>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) base[i][j] = v.allowed(result.core[i], result.core[j]);
  auto power = base;
  const std::size_t bound = (d - 1) * (d - 1) + 1;
  for (std::size_t k = 1; k <= bound; ++k) {
    bool positive = true;
    for (const auto& row : power)
      positive = positive && std::all_of(row.begin(), row.end(), [](bool x) { return x; });
    if (positive) {
      result.mixing = true;
      result.exponent = k;
      return result;
    }
    std::vector<std::vector<bool>> next(d, std::vector<bool>(d, false));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l)
        if (power[i][l])
          for (std::size_t j = 0; j < d; ++j) next[i][j] = next[i][j] || base[l][j];
    power = std::move(next);
  }
  return result;
}

bool is_mixing(const VertexShift& v) { return check_mixing(v).mixing; }

std::vector<Word> shift_language(const VertexShift& v, std::size_t m) {
  const auto core = essential_symbols(v);
  std::vector<Word> out{Word{}};
  std::vector<Word> layer;
  for (Symbol a : core) layer.push_back({a});
  for (std::size_t len = 1; len <= m && !layer.empty(); ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (len == m) break;
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Symbol b : core)
        if (v.allowed(w.back(), b)) {
          Word t = w;
          t.push_back(b);
          next.push_back(std::move(t));
        }
    layer = std::move(next);
  }
  return out;
}

namespace {

using Names = std::vector<std::string>;

bool length_lex_less(const Names& a, const Names& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Blocks "# w" or "# u @ v" of length <= bound, as symbol-name sequences.
std::vector<Names> hull_blocks(const HullSpec& h, std::size_t bound) {
  std::vector<Names> blocks;
  if (!h.pair_mode()) {
    for (const Word& w : enumerate(h.language, bound)) {
      Names b{h.separator};
      for (const auto& s : h.language.alphabet().names(w)) b.push_back(s);
      blocks.push_back(std::move(b));
    }
    return blocks;
  }
  const auto lefts = enumerate(h.language, bound);
  const auto rights = enumerate(*h.right_language, bound);
  for (const Word& u : lefts)
    for (const Word& v : rights) {
      if (u.size() + v.size() > bound) continue;
      Names b{h.separator};
      for (const auto& s : h.language.alphabet().names(h.reverse_left ? reversed(u) : u)) b.push_back(s);
      b.push_back(h.inner_separator);
      for (const auto& s : h.right_language->alphabet().names(v)) b.push_back(s);
      blocks.push_back(std::move(b));
    }
  return blocks;
}

}  // namespace

HullValidation cross_validate_hull(const HullSpec& h, const VertexShift& v, std::size_t m) {
  // Long blocks only matter through their short prefixes, suffixes and
  // factors, each realized by a block padded by at most one automaton
  // traversal on either side.
  std::size_t states = static_cast<std::size_t>(minimize(h.language).num_states());
  if (h.pair_mode()) {
    states = std::max(states, static_cast<std::size_t>(reverse(h.language).num_states()));
    states = std::max(states, static_cast<std::size_t>(minimize(*h.right_language).num_states()));
  }
  const std::size_t bound = m + 2 * states + 2;
  const auto blocks = hull_blocks(h, bound);

  std::set<Names> factors;
  std::set<Names> suffixes{Names{}}, prefixes{Names{}};
  std::vector<Names> short_blocks;
  for (const Names& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t len = 1; len <= m && i + len <= b.size(); ++len)
        factors.emplace(b.begin() + static_cast<std::ptrdiff_t>(i), b.begin() + static_cast<std::ptrdiff_t>(i + len));
    for (std::size_t len = 1; len <= std::min(m, b.size()); ++len) {
      prefixes.emplace(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(len));
      suffixes.emplace(b.end() - static_cast<std::ptrdiff_t>(len), b.end());
    }
    if (b.size() <= m) short_blocks.push_back(b);
  }

  // windows: (suffix of a block) (whole blocks)* (prefix of a block)
  std::function<void(const Names&)> grow = [&](const Names& w) {
    for (const Names& p : prefixes) {
      if (w.size() + p.size() > m) continue;
      Names x = w;
      x.insert(x.end(), p.begin(), p.end());
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t len = 1; i + len <= x.size(); ++len)
          factors.emplace(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + len));
    }
    for (const Names& b : short_blocks) {
      if (w.size() + b.size() > m) continue;
      Names x = w;
      x.insert(x.end(), b.begin(), b.end());
      grow(x);
    }
  };
  if (!blocks.empty())
    for (const Names& s : suffixes) grow(s);

  std::vector<Names> brute(factors.begin(), factors.end());
  if (!blocks.empty()) brute.push_back(Names{});
  std::vector<Names> matrix_side;
  for (const Word& w : shift_language(v, m)) matrix_side.push_back(v.alphabet.names(w));
  std::sort(brute.begin(), brute.end(), length_lex_less);
  std::sort(matrix_side.begin(), matrix_side.end(), length_lex_less);

  HullValidation result;
  std::vector<Names> only_brute, only_matrix;
  std::set_difference(brute.begin(), brute.end(), matrix_side.begin(), matrix_side.end(),
                      std::back_inserter(only_brute), length_lex_less);
  std::set_difference(matrix_side.begin(), matrix_side.end(), brute.begin(), brute.end(),
                      std::back_inserter(only_matrix), length_lex_less);
  if (only_brute.empty() && only_matrix.empty()) return result;
  result.pass = false;
  if (only_matrix.empty() || (!only_brute.empty() && length_lex_less(only_brute.front(), only_matrix.front()))) {
    result.counterexample = only_brute.front();
    result.missing_from_matrix = true;
  } else {
    result.counterexample = only_matrix.front();
  }
  return result;
}

std::string to_dot(const VertexShift& v) {
  std::ostringstream out;
  out << "digraph vertex_shift {\n";
  for (const auto& s : v.alphabet.symbols()) out << "  \"" << s << "\";\n";
  const auto n = static_cast<Symbol>(v.alphabet.size());
  for (Symbol a = 0; a < n; ++a)
    for (Symbol b = 0; b < n; ++b)
      if (v.allowed(a, b)) out << "  \"" << v.alphabet.name(a) << "\" -> \"" << v.alphabet.name(b) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace veemap
