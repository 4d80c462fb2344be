// Regular expressions: recursive descent into a Thompson NFA, then subset
// construction and minimization.
//
//   union   := concat ('+' concat)*
//   concat  := star star*
//   star    := atom '*'*
//   atom    := symbol | "eps" | '(' union ')'

#include <algorithm>
#include <map>
#include <set>

#include "veemap/error.hpp"
#include "veemap/lang.hpp"

namespace veemap {
namespace {

struct Nfa {
  struct State {
    std::vector<int> eps;
    std::vector<std::pair<Symbol, int>> edges;
  };
  std::vector<State> states;

  int add() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

struct Fragment {
  int in;
  int out;
};

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet, Nfa& nfa) : text_(text), alphabet_(alphabet), nfa_(nfa) {}

  Fragment parse() {
    Fragment f = parse_union();
    skip_blanks();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("regex '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_blanks() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_atom_start() {
    skip_blanks();
    return pos_ < text_.size() && text_[pos_] != '+' && text_[pos_] != ')' && text_[pos_] != '*';
  }

  Fragment parse_union() {
    Fragment f = parse_concat();
    for (;;) {
      skip_blanks();
      if (pos_ >= text_.size() || text_[pos_] != '+') return f;
      ++pos_;
      Fragment g = parse_concat();
      const int in = nfa_.add();
      const int out = nfa_.add();
      nfa_.states[static_cast<std::size_t>(in)].eps = {f.in, g.in};
      nfa_.states[static_cast<std::size_t>(f.out)].eps.push_back(out);
      nfa_.states[static_cast<std::size_t>(g.out)].eps.push_back(out);
      f = {in, out};
    }
  }

  Fragment parse_concat() {
    if (!at_atom_start()) fail("expected an expression");
    Fragment f = parse_star();
    while (at_atom_start()) {
      Fragment g = parse_star();
      nfa_.states[static_cast<std::size_t>(f.out)].eps.push_back(g.in);
      f.out = g.out;
    }
    return f;
  }

  Fragment parse_star() {
    Fragment f = parse_atom();
    for (;;) {
      skip_blanks();
      if (pos_ >= text_.size() || text_[pos_] != '*') return f;
      ++pos_;
      const int in = nfa_.add();
      const int out = nfa_.add();
      nfa_.states[static_cast<std::size_t>(in)].eps = {f.in, out};
      nfa_.states[static_cast<std::size_t>(f.out)].eps.push_back(f.in);
      nfa_.states[static_cast<std::size_t>(f.out)].eps.push_back(out);
      f = {in, out};
    }
  }

  Fragment parse_atom() {
    skip_blanks();
    if (text_[pos_] == '(') {
      ++pos_;
      Fragment f = parse_union();
      skip_blanks();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return f;
    }
    if (text_.substr(pos_, 3) == "eps") {
      pos_ += 3;
      const int in = nfa_.add();
      const int out = nfa_.add();
      nfa_.states[static_cast<std::size_t>(in)].eps.push_back(out);
      return {in, out};
    }
    std::size_t best_len = 0;
    Symbol best = -1;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      const auto& s = alphabet_.symbols()[i];
      if (s.size() > best_len && text_.substr(pos_, s.size()) == s) {
        best_len = s.size();
        best = static_cast<Symbol>(i);
      }
    }
    if (best < 0) fail("unknown symbol");
    pos_ += best_len;
    const int in = nfa_.add();
    const int out = nfa_.add();
    nfa_.states[static_cast<std::size_t>(in)].edges.emplace_back(best, out);
    return {in, out};
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

Alphabet infer_alphabet(std::string_view regex) {
  std::set<std::string> symbols;
  for (std::size_t i = 0; i < regex.size(); ++i) {
    const char c = regex[i];
    if (regex.substr(i, 3) == "eps") {
      i += 2;
      continue;
    }
    if (c == '+' || c == '*' || c == '(' || c == ')' || c == ' ' || c == '\t') continue;
    symbols.insert(std::string(1, c));
  }
  if (symbols.empty()) throw Error("regex '" + std::string(regex) + "' names no symbols; pass an alphabet");
  return Alphabet(std::vector<std::string>(symbols.begin(), symbols.end()));
}

std::set<int> closure(const Nfa& nfa, std::set<int> s) {
  std::vector<int> stack(s.begin(), s.end());
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int t : nfa.states[static_cast<std::size_t>(q)].eps)
      if (s.insert(t).second) stack.push_back(t);
  }
  return s;
}

}  // namespace

Dfa from_regex(std::string_view regex, std::optional<Alphabet> alphabet) {
  const Alphabet sigma = alphabet ? *alphabet : infer_alphabet(regex);
  Nfa nfa;
  const Fragment f = Parser(regex, sigma, nfa).parse();

  std::map<std::set<int>, int> ids;
  std::vector<std::set<int>> subsets;
  auto intern = [&](std::set<int> s) {
    auto [it, fresh] = ids.try_emplace(s, static_cast<int>(subsets.size()));
    if (fresh) subsets.push_back(std::move(s));
    return it->second;
  };
  intern(closure(nfa, {f.in}));
  std::vector<bool> acc;
  std::vector<std::vector<Dfa::State>> delta;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const std::set<int> cur = subsets[i];
    acc.push_back(cur.contains(f.out));
    std::vector<Dfa::State> row;
    for (std::size_t a = 0; a < sigma.size(); ++a) {
      std::set<int> next;
      for (int q : cur)
        for (const auto& [sym, t] : nfa.states[static_cast<std::size_t>(q)].edges)
          if (sym == static_cast<Symbol>(a)) next.insert(t);
      row.push_back(intern(closure(nfa, std::move(next))));
    }
    delta.push_back(std::move(row));
  }
  return minimize(Dfa(sigma, static_cast<int>(subsets.size()), 0, std::move(acc), std::move(delta)));
}

}  // namespace veemap
