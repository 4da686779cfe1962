#include "mrt/words.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace mrt {

namespace {

Int generic_value(const IntVec& v, const Int& n) {
  Int acc = 0, p = 1;
  for (const auto& x : v) {
    acc += x * p;
    p *= n;
  }
  return acc;
}

SimpleSystem build_from_roots(GroupPtr g, const std::vector<IntVec>& root_of_sigma) {
  int ns = static_cast<int>(root_of_sigma.size());
  // positive side of each root line w.r.t. a generic functional
  Int n = 1000000;
  std::vector<IntVec> positive(ns);
  for (int attempt = 0;; ++attempt) {
    check(attempt < 64, "could not find a nondegenerate generic functional");
    bool ok = true;
    for (int s = 0; s < ns && ok; ++s) {
      Int v = generic_value(root_of_sigma[s], n);
      if (v == 0)
        ok = false;
      else
        positive[s] = v > 0 ? root_of_sigma[s] : negated(root_of_sigma[s]);
    }
    if (ok) break;
    n += 9973;
  }
  // indecomposable positive roots
  auto find_root = [&](const IntVec& v) -> int {
    for (int s = 0; s < ns; ++s)
      if (positive[s] == v) return s;
    return -1;
  };
  std::vector<int> simple_sigmas;
  for (int s = 0; s < ns; ++s) {
    bool decomposable = false;
    for (int t = 0; t < ns && !decomposable; ++t)
      if (t != s && find_root(positive[s] - positive[t]) >= 0) decomposable = true;
    if (!decomposable) simple_sigmas.push_back(s);
  }
  std::sort(simple_sigmas.begin(), simple_sigmas.end(), [&](int a, int b) {
    for (size_t i = 0; i < positive[a].size(); ++i) {
      int c = cmp(positive[a][i], positive[b][i]);
      if (c != 0) return c < 0;
    }
    return false;
  });

  SimpleSystem ss;
  ss.group = g;
  for (int s : simple_sigmas) {
    ss.simples.push_back(g->reflections()[s]);
    ss.simple_roots.push_back(positive[s]);
  }
  int l = static_cast<int>(ss.simples.size());
  check(static_cast<int>(g->subgroup_closure(ss.simples).size()) == g->size(),
        "the simple reflections generate the group");
  ss.coxeter.assign(l, std::vector<int>(l, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) ss.coxeter[i][j] = g->order_of(g->mul(ss.simples[i], ss.simples[j]));

  // lengths and lex-first minimal words by BFS over left multiplication
  ss.length.assign(g->size(), -1);
  ss.length[g->id()] = 0;
  std::deque<int> queue{g->id()};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < l; ++i) {
      int nxt = g->mul(ss.simples[i], cur);
      if (ss.length[nxt] < 0) {
        ss.length[nxt] = ss.length[cur] + 1;
        queue.push_back(nxt);
      }
    }
  }
  ss.lex_min_word.assign(g->size(), Word{});
  std::vector<int> by_length(g->size());
  for (int e = 0; e < g->size(); ++e) by_length[e] = e;
  std::sort(by_length.begin(), by_length.end(),
            [&](int a, int b) { return ss.length[a] != ss.length[b] ? ss.length[a] < ss.length[b] : a < b; });
  for (int e : by_length) {
    if (e == g->id()) continue;
    for (int i = 0; i < l; ++i) {
      int prev = g->mul(ss.simples[i], e);
      if (ss.length[prev] == ss.length[e] - 1) {
        ss.lex_min_word[e] = ss.lex_min_word[prev];
        ss.lex_min_word[e].insert(ss.lex_min_word[e].begin(), i);
        break;
      }
    }
  }
  return ss;
}

}  // namespace

SimpleSystem find_simple_system(GroupPtr g) {
  std::vector<IntVec> roots;
  for (int e : g->reflections()) roots.push_back(negative_eigenvector(g->mat(e)));
  check(static_cast<int>(g->subgroup_closure(g->reflections()).size()) == g->size(),
        "find_simple_system expects a reflection group");
  return build_from_roots(g, roots);
}

SimpleSystem find_simple_system(const MarkedReflectionLattice& m) {
  std::vector<IntVec> roots;
  for (const auto& mk : m.marking) roots.push_back(mk.b);
  return build_from_roots(m.group, roots);
}

Word prod_word(int n, int i, int j) {
  if (n < 0) throw value_error("prod_word: negative length");
  Word w(n);
  for (int k = 0; k < n; ++k) w[k] = (k % 2 == 0) ? i : j;
  return w;
}

int word_image(const SimpleSystem& ss, const Word& w) {
  int e = ss.group->id();
  for (int letter : w) {
    if (letter < 0 || letter >= ss.rank()) throw value_error("word letter out of range");
    e = ss.group->mul(e, ss.simples[letter]);
  }
  return e;
}

std::vector<int> reflection_sequence(const SimpleSystem& ss, const Word& w) {
  std::vector<int> seq;
  int prefix = ss.group->id();
  for (int letter : w) {
    if (letter < 0 || letter >= ss.rank()) throw value_error("word letter out of range");
    int refl = ss.group->conj(prefix, ss.simples[letter]);
    int sigma = ss.group->sigma_index(refl);
    check(sigma >= 0, "conjugates of simple reflections are reflections");
    seq.push_back(sigma);
    prefix = ss.group->mul(prefix, ss.simples[letter]);
  }
  return seq;
}

int length(const SimpleSystem& ss, int element) {
  if (element < 0 || element >= ss.group->size()) throw value_error("length: element out of range");
  return ss.length[element];
}

bool is_minimal_word(const SimpleSystem& ss, const Word& w) {
  return static_cast<int>(w.size()) == ss.length[word_image(ss, w)];
}

std::vector<Word> all_minimal_words(const SimpleSystem& ss, int element, int group_order_limit) {
  if (ss.group->size() > group_order_limit)
    throw value_error("all_minimal_words: group order exceeds the enumeration limit");
  // words(g) = { [i] + words(s_i g) : l(s_i g) = l(g) - 1 }
  std::map<int, std::vector<Word>> memo;
  std::vector<int> stack{element};
  std::function<const std::vector<Word>&(int)> go = [&](int e) -> const std::vector<Word>& {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    std::vector<Word> words;
    if (e == ss.group->id()) {
      words.push_back({});
    } else {
      for (int i = 0; i < ss.rank(); ++i) {
        int prev = ss.group->mul(ss.simples[i], e);
        if (ss.length[prev] == ss.length[e] - 1)
          for (const Word& tail : go(prev)) {
            Word w{i};
            w.insert(w.end(), tail.begin(), tail.end());
            words.push_back(std::move(w));
          }
      }
    }
    return memo.emplace(e, std::move(words)).first->second;
  };
  std::vector<Word> out = go(element);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mrt
