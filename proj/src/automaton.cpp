/*
 * Copyright 2026 The Lifeguard Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lifeguard/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace lifeguard {

Dfa::Dfa(int letters, int states)
    : letters_(letters), delta_(static_cast<std::size_t>(letters) * states, 0),
      accept_(states, 0) {}

bool Dfa::accepts(std::span<const int> word) const {
  int s = start_;
  for (int x : word) s = next(s, x);
  return accepting(s);
}

bool Dfa::empty_language() const {
  std::vector<char> seen(size(), 0);
  std::vector<int> todo{start_};
  seen[start_] = 1;
  while (!todo.empty()) {
    int s = todo.back();
    todo.pop_back();
    if (accepting(s)) return false;
    for (int x = 0; x < letters_; ++x) {
      int t = next(s, x);
      if (!seen[t]) {
        seen[t] = 1;
        todo.push_back(t);
      }
    }
  }
  return true;
}

Dfa Dfa::letter(int letters, int a) {
  Dfa d(letters, 3);  // 0 start, 1 accept, 2 sink
  for (int x = 0; x < letters; ++x) {
    d.set(0, x, x == a ? 1 : 2);
    d.set(1, x, 2);
    d.set(2, x, 2);
  }
  d.set_accepting(1, true);
  return d;
}

Dfa Dfa::any(int letters) {
  Dfa d(letters, 3);
  for (int x = 0; x < letters; ++x) {
    d.set(0, x, 1);
    d.set(1, x, 2);
    d.set(2, x, 2);
  }
  d.set_accepting(1, true);
  return d;
}

Dfa Dfa::epsilon(int letters) {
  Dfa d(letters, 2);
  for (int x = 0; x < letters; ++x) {
    d.set(0, x, 1);
    d.set(1, x, 1);
  }
  d.set_accepting(0, true);
  return d;
}

Dfa Dfa::nothing(int letters) {
  Dfa d(letters, 1);
  return d;
}

namespace {

// Explores a construction whose states are keys of type K.
template <class K, class Next, class Accept>
Dfa explore(int letters, K start, Next next, Accept accept) {
  std::map<K, int> ids;
  std::vector<K> keys;
  std::vector<std::vector<int>> rows;
  auto id_of = [&](const K& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) keys.push_back(k);
    return it->second;
  };
  id_of(start);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::vector<int> row(letters);
    for (int x = 0; x < letters; ++x) {
      K k = next(keys[i], x);
      row[x] = id_of(k);
    }
    rows.push_back(std::move(row));
  }
  Dfa d(letters, static_cast<int>(keys.size()));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (int x = 0; x < letters; ++x) d.set(static_cast<int>(i), x, rows[i][x]);
    d.set_accepting(static_cast<int>(i), accept(keys[i]));
  }
  d.set_start(0);
  return d;
}

Dfa product(const Dfa& a, const Dfa& b, bool conj) {
  using K = std::pair<int, int>;
  return explore(
      a.letters(), K{a.start(), b.start()},
      [&](const K& k, int x) { return K{a.next(k.first, x), b.next(k.second, x)}; },
      [&](const K& k) {
        return conj ? a.accepting(k.first) && b.accepting(k.second)
                    : a.accepting(k.first) || b.accepting(k.second);
      });
}

}  // namespace

Dfa Dfa::unite(const Dfa& a, const Dfa& b) { return product(a, b, false).minimize(); }
Dfa Dfa::intersect(const Dfa& a, const Dfa& b) { return product(a, b, true).minimize(); }

Dfa Dfa::complement(const Dfa& a) {
  Dfa d = a;
  for (int s = 0; s < d.size(); ++s) d.set_accepting(s, !a.accepting(s));
  return d.minimize();
}

Dfa Dfa::concat(const Dfa& a, const Dfa& b) {
  // (state of a, set of live states of b)
  using K = std::pair<int, std::vector<int>>;
  auto with_start = [&](int sa, std::vector<int> sb) {
    if (a.accepting(sa)) sb.push_back(b.start());
    std::sort(sb.begin(), sb.end());
    sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
    return K{sa, std::move(sb)};
  };
  return explore(
             a.letters(), with_start(a.start(), {}),
             [&](const K& k, int x) {
               std::vector<int> sb;
               for (int s : k.second) sb.push_back(b.next(s, x));
               return with_start(a.next(k.first, x), std::move(sb));
             },
             [&](const K& k) {
               return std::any_of(k.second.begin(), k.second.end(),
                                  [&](int s) { return b.accepting(s); });
             })
      .minimize();
}

Dfa Dfa::star(const Dfa& a) {
  // (fresh, set of live states of a); the fresh start accepts the empty word.
  using K = std::pair<bool, std::vector<int>>;
  auto any_accepting = [&](const std::vector<int>& v) {
    return std::any_of(v.begin(), v.end(), [&](int s) { return a.accepting(s); });
  };
  return explore(
             a.letters(), K{true, {a.start()}},
             [&](const K& k, int x) {
               std::vector<int> t;
               for (int s : k.second) t.push_back(a.next(s, x));
               if (any_accepting(t)) t.push_back(a.start());
               std::sort(t.begin(), t.end());
               t.erase(std::unique(t.begin(), t.end()), t.end());
               return K{false, std::move(t)};
             },
             [&](const K& k) { return k.first || any_accepting(k.second); })
      .minimize();
}

Dfa Dfa::minimize() const {
  // Reachable states.
  std::vector<int> order;
  std::vector<int> index(size(), -1);
  order.push_back(start_);
  index[start_] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int x = 0; x < letters_; ++x) {
      int t = next(order[i], x);
      if (index[t] < 0) {
        index[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }

  // Moore refinement over reachable states.
  const int n = static_cast<int>(order.size());
  std::vector<int> block(n);
  for (int i = 0; i < n; ++i) block[i] = accepting(order[i]) ? 1 : 0;
  int blocks = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> fresh(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> sig;
      sig.reserve(letters_ + 1);
      sig.push_back(block[i]);
      for (int x = 0; x < letters_; ++x) sig.push_back(block[index[next(order[i], x)]]);
      auto [it, _] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      fresh[i] = it->second;
    }
    int count = static_cast<int>(sig_ids.size());
    block = std::move(fresh);
    if (count == blocks) break;
    blocks = count;
  }

  // Renumber blocks in discovery order from the start state.
  std::vector<int> renum(blocks, -1);
  std::vector<int> rep;
  renum[block[0]] = 0;
  rep.push_back(0);
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (int x = 0; x < letters_; ++x) {
      int t = index[next(order[rep[i]], x)];
      if (renum[block[t]] < 0) {
        renum[block[t]] = static_cast<int>(rep.size());
        rep.push_back(t);
      }
    }
  Dfa d(letters_, static_cast<int>(rep.size()));
  for (std::size_t i = 0; i < rep.size(); ++i) {
    int s = order[rep[i]];
    d.set_accepting(static_cast<int>(i), accepting(s));
    for (int x = 0; x < letters_; ++x) d.set(static_cast<int>(i), x, renum[block[index[next(s, x)]]]);
  }
  d.set_start(0);
  return d;
}

Dfa compile_matcher(const Matcher& m, const std::function<int(const ParamMessage&)>& letter_of,
                    int letters) {
  const auto& k = m.children();
  switch (m.op()) {
    case Matcher::Op::Atom: return Dfa::letter(letters, letter_of(m.message()));
    case Matcher::Op::Any: return Dfa::any(letters);
    case Matcher::Op::Epsilon: return Dfa::epsilon(letters);
    case Matcher::Op::Empty: return Dfa::nothing(letters);
    case Matcher::Op::Concat:
      return Dfa::concat(compile_matcher(*k[0], letter_of, letters),
                         compile_matcher(*k[1], letter_of, letters));
    case Matcher::Op::Star: return Dfa::star(compile_matcher(*k[0], letter_of, letters));
    case Matcher::Op::Union:
      return Dfa::unite(compile_matcher(*k[0], letter_of, letters),
                        compile_matcher(*k[1], letter_of, letters));
    case Matcher::Op::Intersect:
      return Dfa::intersect(compile_matcher(*k[0], letter_of, letters),
                            compile_matcher(*k[1], letter_of, letters));
    case Matcher::Op::Negate: return Dfa::complement(compile_matcher(*k[0], letter_of, letters));
  }
  return Dfa::nothing(letters);
}

}  // namespace lifeguard
