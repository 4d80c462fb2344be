#include "veemap/lang.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "veemap/error.hpp"

namespace veemap {

// ---------------------------------------------------------------------------
// Alphabet and words

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error("alphabet must be non-empty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw Error("alphabet symbols must be non-empty strings");
    if (!seen.insert(s).second) throw Error("duplicate alphabet symbol '" + s + "'");
  }
}

Alphabet Alphabet::binary() { return Alphabet({"0", "1"}); }

const std::string& Alphabet::name(Symbol s) const {
  if (s < 0 || static_cast<std::size_t>(s) >= symbols_.size())
    throw Error("symbol index " + std::to_string(s) + " out of range");
  return symbols_[static_cast<std::size_t>(s)];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

Symbol Alphabet::index(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw Error("symbol '" + std::string(name) + "' not in alphabet");
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n') {
      ++pos;
      continue;
    }
    std::size_t best_len = 0;
    Symbol best = -1;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto& s = symbols_[i];
      if (s.size() > best_len && text.substr(pos, s.size()) == s) {
        best_len = s.size();
        best = static_cast<Symbol>(i);
      }
    }
    if (best < 0) throw Error("cannot tokenize '" + std::string(text) + "' at offset " + std::to_string(pos));
    w.push_back(best);
    pos += best_len;
  }
  return w;
}

std::string Alphabet::render(const Word& w) const {
  const bool spaced = std::any_of(symbols_.begin(), symbols_.end(), [](const auto& s) { return s.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i > 0) out += ' ';
    out += name(w[i]);
  }
  return out;
}

std::vector<std::string> Alphabet::names(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(name(s));
  return out;
}

Word Alphabet::from_names(std::span<const std::string> names) const {
  Word w;
  w.reserve(names.size());
  for (const auto& n : names) w.push_back(index(n));
  return w;
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_prefix(const Word& prefix, const Word& w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool is_suffix(const Word& suffix, const Word& w) {
  return suffix.size() <= w.size() && std::equal(suffix.begin(), suffix.end(), w.end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(Alphabet alphabet, int num_states, State start, std::vector<bool> accepting,
         std::vector<std::vector<State>> delta)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      start_(start),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  if (alphabet_.empty()) throw Error("DFA alphabet must be non-empty");
  if (num_states_ < 1) throw Error("DFA needs at least one state");
  if (start_ < 0 || start_ >= num_states_) throw Error("DFA start state out of range");
  if (accepting_.size() != static_cast<std::size_t>(num_states_)) throw Error("DFA accepting vector has wrong size");
  if (delta_.size() != static_cast<std::size_t>(num_states_)) throw Error("DFA transition table has wrong row count");
  for (const auto& row : delta_) {
    if (row.size() != alphabet_.size()) throw Error("DFA transition row has wrong width");
    for (State t : row)
      if (t < 0 || t >= num_states_) throw Error("DFA transition target out of range");
  }
}

Dfa Dfa::empty_language(Alphabet alphabet) {
  const auto k = alphabet.size();
  return Dfa(std::move(alphabet), 1, 0, {false}, {std::vector<State>(k, 0)});
}

Dfa Dfa::universal(Alphabet alphabet) {
  const auto k = alphabet.size();
  return Dfa(std::move(alphabet), 1, 0, {true}, {std::vector<State>(k, 0)});
}

Dfa::State Dfa::run(State q, const Word& w) const {
  for (Symbol a : w) q = next(q, a);
  return q;
}

std::vector<bool> Dfa::reachable() const {
  std::vector<bool> seen(static_cast<std::size_t>(num_states_), false);
  std::deque<State> queue{start_};
  seen[static_cast<std::size_t>(start_)] = true;
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (State t : delta_[static_cast<std::size_t>(q)])
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        queue.push_back(t);
      }
  }
  return seen;
}

std::vector<bool> Dfa::coreachable() const {
  std::vector<bool> good = accepting_;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < good.size(); ++q) {
      if (good[q]) continue;
      for (State t : delta_[q])
        if (good[static_cast<std::size_t>(t)]) {
          good[q] = true;
          changed = true;
          break;
        }
    }
  }
  return good;
}

namespace {

/// Renumbers the states reachable from `start` in BFS order by symbol.
Dfa canonical_bfs(const Alphabet& alphabet, const std::vector<bool>& accepting,
                  const std::vector<std::vector<Dfa::State>>& delta, Dfa::State start) {
  std::vector<int> order(delta.size(), -1);
  std::vector<Dfa::State> visit{start};
  order[static_cast<std::size_t>(start)] = 0;
  for (std::size_t i = 0; i < visit.size(); ++i) {
    for (Dfa::State t : delta[static_cast<std::size_t>(visit[i])]) {
      if (order[static_cast<std::size_t>(t)] < 0) {
        order[static_cast<std::size_t>(t)] = static_cast<int>(visit.size());
        visit.push_back(t);
      }
    }
  }
  std::vector<bool> acc(visit.size());
  std::vector<std::vector<Dfa::State>> del(visit.size());
  for (std::size_t i = 0; i < visit.size(); ++i) {
    const auto q = static_cast<std::size_t>(visit[i]);
    acc[i] = accepting[q];
    for (Dfa::State t : delta[q]) del[i].push_back(order[static_cast<std::size_t>(t)]);
  }
  return Dfa(alphabet, static_cast<int>(visit.size()), 0, std::move(acc), std::move(del));
}

}  // namespace

Dfa minimize(const Dfa& d) {
  const auto n = static_cast<std::size_t>(d.num_states());
  const auto k = d.alphabet().size();
  const auto live = d.reachable();

  // Moore refinement over reachable states; unreachable states keep class -1.
  std::vector<int> cls(n, -1);
  for (std::size_t q = 0; q < n; ++q)
    if (live[q]) cls[q] = d.accepting(static_cast<Dfa::State>(q)) ? 1 : 0;
  std::size_t num_classes = 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(n, -1);
    for (std::size_t q = 0; q < n; ++q) {
      if (!live[q]) continue;
      std::vector<int> sig{cls[q]};
      for (std::size_t a = 0; a < k; ++a) sig.push_back(cls[static_cast<std::size_t>(d.delta()[q][a])]);
      auto [it, inserted] = ids.try_emplace(std::move(sig), static_cast<int>(ids.size()));
      next[q] = it->second;
    }
    cls = std::move(next);
    if (ids.size() == num_classes) break;
    num_classes = ids.size();
  }

  std::vector<bool> acc(num_classes, false);
  std::vector<std::vector<Dfa::State>> del(num_classes, std::vector<Dfa::State>(k, 0));
  for (std::size_t q = 0; q < n; ++q) {
    if (!live[q]) continue;
    const auto c = static_cast<std::size_t>(cls[q]);
    acc[c] = d.accepting(static_cast<Dfa::State>(q));
    for (std::size_t a = 0; a < k; ++a) del[c][a] = cls[static_cast<std::size_t>(d.delta()[q][a])];
  }
  return canonical_bfs(d.alphabet(), acc, del, cls[static_cast<std::size_t>(d.start())]);
}

std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b) {
  if (a.alphabet() != b.alphabet()) throw Error("cannot compare automata over different alphabets");
  const auto k = a.alphabet().size();
  using Pair = std::pair<Dfa::State, Dfa::State>;
  std::map<Pair, Word> seen;
  std::deque<Pair> queue;
  const Pair init{a.start(), b.start()};
  seen.emplace(init, Word{});
  queue.push_back(init);
  while (!queue.empty()) {
    const Pair p = queue.front();
    queue.pop_front();
    const Word& w = seen.at(p);
    if (a.accepting(p.first) != b.accepting(p.second)) return w;
    for (std::size_t s = 0; s < k; ++s) {
      const Pair t{a.next(p.first, static_cast<Symbol>(s)), b.next(p.second, static_cast<Symbol>(s))};
      if (seen.contains(t)) continue;
      Word tw = w;
      tw.push_back(static_cast<Symbol>(s));
      seen.emplace(t, std::move(tw));
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

bool equivalent(const Dfa& a, const Dfa& b) { return !distinguishing_word(a, b).has_value(); }

std::vector<Word> enumerate(const Dfa& d, std::size_t max_len) {
  const auto alive = d.coreachable();
  std::vector<Word> out;
  std::vector<std::pair<Word, Dfa::State>> layer;
  if (alive[static_cast<std::size_t>(d.start())]) layer.emplace_back(Word{}, d.start());
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    for (const auto& [w, q] : layer)
      if (d.accepting(q)) out.push_back(w);
    if (len == max_len) break;
    std::vector<std::pair<Word, Dfa::State>> next;
    for (const auto& [w, q] : layer) {
      for (std::size_t s = 0; s < d.alphabet().size(); ++s) {
        const auto t = d.next(q, static_cast<Symbol>(s));
        if (!alive[static_cast<std::size_t>(t)]) continue;
        Word tw = w;
        tw.push_back(static_cast<Symbol>(s));
        next.emplace_back(std::move(tw), t);
      }
    }
    layer = std::move(next);
  }
  return out;
}

Dfa reverse(const Dfa& d) {
  const auto n = static_cast<std::size_t>(d.num_states());
  const auto k = d.alphabet().size();
  // pred[a][q] = states p with delta(p, a) = q
  std::vector<std::vector<std::vector<Dfa::State>>> pred(k, std::vector<std::vector<Dfa::State>>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t a = 0; a < k; ++a)
      pred[a][static_cast<std::size_t>(d.delta()[p][a])].push_back(static_cast<Dfa::State>(p));

  using Subset = std::vector<bool>;
  std::map<Subset, int> ids;
  std::vector<Subset> subsets;
  Subset init = d.accepting_states();
  ids.emplace(init, 0);
  subsets.push_back(init);
  std::vector<std::vector<Dfa::State>> delta;
  std::vector<bool> acc;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const Subset cur = subsets[i];
    acc.push_back(cur[static_cast<std::size_t>(d.start())]);
    std::vector<Dfa::State> row;
    for (std::size_t a = 0; a < k; ++a) {
      Subset nx(n, false);
      for (std::size_t q = 0; q < n; ++q)
        if (cur[q])
          for (Dfa::State p : pred[a][q]) nx[static_cast<std::size_t>(p)] = true;
      auto [it, inserted] = ids.try_emplace(nx, static_cast<int>(subsets.size()));
      if (inserted) subsets.push_back(nx);
      row.push_back(it->second);
    }
    delta.push_back(std::move(row));
  }
  return minimize(Dfa(d.alphabet(), static_cast<int>(subsets.size()), 0, std::move(acc), std::move(delta)));
}

Dfa relabel(const Dfa& d, Alphabet alphabet) {
  if (alphabet.size() != d.alphabet().size()) throw Error("relabel needs an alphabet of the same size");
  return Dfa(std::move(alphabet), d.num_states(), d.start(), d.accepting_states(), d.delta());
}

Dfa intersect(const Dfa& a, const Dfa& b) {
  if (a.alphabet() != b.alphabet()) throw Error("cannot intersect automata over different alphabets");
  const int nb = b.num_states();
  const auto k = a.alphabet().size();
  std::vector<bool> acc;
  std::vector<std::vector<Dfa::State>> delta;
  for (int p = 0; p < a.num_states(); ++p)
    for (int q = 0; q < nb; ++q) {
      acc.push_back(a.accepting(p) && b.accepting(q));
      std::vector<Dfa::State> row;
      for (std::size_t s = 0; s < k; ++s)
        row.push_back(a.next(p, static_cast<Symbol>(s)) * nb + b.next(q, static_cast<Symbol>(s)));
      delta.push_back(std::move(row));
    }
  return minimize(Dfa(a.alphabet(), a.num_states() * nb, a.start() * nb + b.start(), std::move(acc), std::move(delta)));
}

Dfa complement(const Dfa& d) {
  auto acc = d.accepting_states();
  acc.flip();
  return Dfa(d.alphabet(), d.num_states(), d.start(), std::move(acc), d.delta());
}

// ---------------------------------------------------------------------------
// Local testability

namespace {

// prefix and suffix as base-|A| codes with lengths; factors of length k as a bitset
struct Signature {
  std::uint64_t prefix = 0, suffix = 0;
  std::size_t prefix_len = 0, suffix_len = 0;
  std::vector<std::uint64_t> factors;
  auto operator<=>(const Signature&) const = default;
};

struct SignatureCoder {
  std::uint64_t base;
  std::size_t k;
  std::uint64_t top;  // base^(k-1)

  Signature extend(const Signature& s, Symbol a) const {
    Signature t = s;
    const auto x = static_cast<std::uint64_t>(a);
    if (t.prefix_len < k) {
      t.prefix = t.prefix * base + x;
      ++t.prefix_len;
    }
    if (t.suffix_len == k) {
      t.suffix = (t.suffix % top) * base + x;
    } else {
      t.suffix = t.suffix * base + x;
      ++t.suffix_len;
    }
    if (t.suffix_len == k) t.factors[t.suffix / 64] |= std::uint64_t{1} << (t.suffix % 64);
    return t;
  }
};

}  // namespace

TestabilityResult check_local_testability(const Dfa& input, std::size_t k) {
  if (k < 1) throw Error("local testability order must be at least 1");
  const Dfa d = minimize(input);
  const auto nsym = d.alphabet().size();
  if (nsym == 0) return {true, std::nullopt};

  std::uint64_t top = 1;
  for (std::size_t i = 1; i < k; ++i) {
    if (top > (std::uint64_t{1} << 26) / nsym) throw Error("local testability order too large for this alphabet");
    top *= nsym;
  }
  const SignatureCoder coder{nsym, k, top};
  Signature empty;
  empty.factors.assign(static_cast<std::size_t>(top * nsym / 64 + 1), 0);

  // BFS over (signature, state); two words reaching one signature with
  // different acceptance refute k-testability. Words are kept as parent links.
  struct Node {
    int parent;
    Symbol last;
  };
  std::vector<Node> nodes;
  auto word_of = [&](int n) {
    Word w;
    for (; n > 0; n = nodes[static_cast<std::size_t>(n)].parent) w.push_back(nodes[static_cast<std::size_t>(n)].last);
    std::reverse(w.begin(), w.end());
    return w;
  };

  std::map<Signature, std::pair<int, bool>> sig_ids;  // first node, its acceptance
  std::set<std::pair<const Signature*, Dfa::State>> seen;
  std::deque<std::tuple<const Signature*, Dfa::State, int>> queue;

  auto visit = [&](Signature sig, Dfa::State q, int parent, Symbol a) -> std::optional<std::pair<Word, Word>> {
    const int node = static_cast<int>(nodes.size());
    nodes.push_back(Node{parent, a});
    auto [it, fresh] = sig_ids.try_emplace(std::move(sig), node, d.accepting(q));
    if (!fresh && it->second.second != d.accepting(q)) return std::pair{word_of(it->second.first), word_of(node)};
    if (seen.emplace(&it->first, q).second) {
      queue.emplace_back(&it->first, q, node);
    } else {
      nodes.pop_back();
    }
    return std::nullopt;
  };

  if (auto bad = visit(empty, d.start(), -1, 0)) return {false, bad};
  while (!queue.empty()) {
    const auto [sig, q, node] = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < nsym; ++a) {
      const auto s = static_cast<Symbol>(a);
      if (auto bad = visit(coder.extend(*sig, s), d.next(q, s), node, s)) return {false, bad};
    }
  }
  return {true, std::nullopt};
}

bool is_locally_testable(const Dfa& d, std::size_t k) { return check_local_testability(d, k).testable; }

// ---------------------------------------------------------------------------
// Syntactic monoid

SyntacticMonoid::SyntacticMonoid(const Dfa& d) : minimal_(minimize(d)) {
  const auto n = static_cast<std::size_t>(minimal_.num_states());
  const auto k = minimal_.alphabet().size();
  std::map<Transformation, Element> index;
  Transformation id(n);
  for (std::size_t q = 0; q < n; ++q) id[q] = static_cast<Dfa::State>(q);
  index.emplace(id, 0);
  elements_.push_back(id);

  auto add = [&](Transformation t) {
    auto [it, fresh] = index.try_emplace(t, static_cast<Element>(elements_.size()));
    if (fresh) elements_.push_back(std::move(t));
    return it->second;
  };

  for (std::size_t a = 0; a < k; ++a) {
    Transformation t(n);
    for (std::size_t q = 0; q < n; ++q) t[q] = minimal_.next(static_cast<Dfa::State>(q), static_cast<Symbol>(a));
    generators_.push_back(add(std::move(t)));
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      Transformation t(n);
      for (std::size_t q = 0; q < n; ++q)
        t[q] = minimal_.next(elements_[i][q], static_cast<Symbol>(a));
      add(std::move(t));
    }
  }

  const auto m = elements_.size();
  table_.assign(m, std::vector<Element>(m, 0));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      Transformation t(n);
      for (std::size_t q = 0; q < n; ++q) t[q] = elements_[y][static_cast<std::size_t>(elements_[x][q])];
      table_[x][y] = index.at(t);
    }
}

SyntacticMonoid::Element SyntacticMonoid::image(const Word& w) const {
  Element e = identity();
  for (Symbol a : w) e = multiply(e, generator(a));
  return e;
}

SyntacticMonoid syntactic_monoid(const Dfa& d) { return SyntacticMonoid(d); }

// ---------------------------------------------------------------------------
// Unbordered words and marker search

namespace {

bool border_between(const Word& a, const Word& b) {
  // some non-empty prefix of a, shorter than a, equals a suffix of b
  const std::size_t limit = std::min(a.size() - 1, b.size());
  for (std::size_t len = 1; len <= limit && a.size() > 0; ++len)
    if (std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(len), b.end() - static_cast<std::ptrdiff_t>(len)))
      return true;
  return false;
}

bool choose(const std::vector<Word>& pool, std::size_t from, std::size_t count, std::vector<Word>& picked) {
  if (picked.size() == count) return true;
  for (std::size_t i = from; i < pool.size(); ++i) {
    const bool ok = std::all_of(picked.begin(), picked.end(),
                                [&](const Word& p) { return mutually_unbordered(p, pool[i]); });
    if (!ok) continue;
    picked.push_back(pool[i]);
    if (choose(pool, i + 1, count, picked)) return true;
    picked.pop_back();
  }
  return false;
}

bool concatenations_accepted(const Dfa& d, const std::vector<Word>& words, std::size_t blocks) {
  std::vector<Dfa::State> frontier{d.start()};
  for (std::size_t b = 0; b < blocks; ++b) {
    std::vector<Dfa::State> next;
    for (Dfa::State q : frontier)
      for (const Word& w : words) {
        const auto t = d.run(q, w);
        if (!d.accepting(t)) return false;
        next.push_back(t);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  return true;
}

}  // namespace

bool is_unbordered(const Word& w) {
  if (w.empty()) throw Error("unborderedness is undefined for the empty word");
  return !border_between(w, w);
}

bool mutually_unbordered(const Word& a, const Word& b) {
  if (a.empty() || b.empty()) throw Error("unborderedness is undefined for the empty word");
  return !border_between(a, b) && !border_between(b, a);
}

MarkerSearch find_marker_words(const Dfa& d, std::size_t count, std::size_t max_len) {
  if (count < 1) throw Error("marker search needs count >= 1");
  const SyntacticMonoid monoid(d);
  const auto all = enumerate(d, max_len);
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::map<SyntacticMonoid::Element, std::vector<Word>> groups;
    std::vector<SyntacticMonoid::Element> group_order;
    for (const Word& w : all) {
      if (w.size() != len || !is_unbordered(w)) continue;
      const auto e = monoid.image(w);
      if (!monoid.idempotent(e)) continue;
      if (!groups.contains(e)) group_order.push_back(e);
      groups[e].push_back(w);
    }
    for (auto e : group_order) {
      std::vector<Word> picked;
      if (!choose(groups[e], 0, count, picked)) continue;
      if (!concatenations_accepted(d, picked, 4)) continue;
      return {std::move(picked), len};
    }
  }
  return {{}, max_len};
}

}  // namespace veemap
