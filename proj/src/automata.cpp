#include "ccsynth/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ccsynth {

BuchiAutomaton::BuchiAutomaton(std::vector<Letter> alphabet) : alphabet_(std::move(alphabet)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
}

StateId BuchiAutomaton::add_state(std::string name) {
  out_.emplace_back();
  accepting_.push_back(0);
  names_.push_back(std::move(name));
  return static_cast<StateId>(out_.size() - 1);
}

void BuchiAutomaton::set_initial(StateId s, bool on) {
  auto it = std::lower_bound(initial_.begin(), initial_.end(), s);
  const bool present = it != initial_.end() && *it == s;
  if (on && !present) initial_.insert(it, s);
  if (!on && present) initial_.erase(it);
}

void BuchiAutomaton::set_accepting(StateId s, bool on) { accepting_[s] = on ? 1 : 0; }

void BuchiAutomaton::add_transition(StateId from, std::uint32_t letter, StateId to) {
  if (from >= num_states() || to >= num_states() || letter >= alphabet_.size())
    throw std::out_of_range("transition refers to unknown state or letter");
  auto& edges = out_[from];
  const Edge e{letter, to};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

void BuchiAutomaton::add_transition(StateId from, const Letter& letter, StateId to) {
  auto idx = letter_index(letter);
  if (!idx) throw std::invalid_argument("letter '" + letter.str() + "' is not in the alphabet");
  add_transition(from, *idx, to);
}

std::size_t BuchiAutomaton::num_transitions() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

std::optional<std::uint32_t> BuchiAutomaton::letter_index(const Letter& l) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), l);
  if (it == alphabet_.end() || *it != l) return std::nullopt;
  return static_cast<std::uint32_t>(it - alphabet_.begin());
}

std::span<const Edge> BuchiAutomaton::out(StateId s, std::uint32_t letter) const {
  const auto& edges = out_[s];
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{letter, 0});
  auto hi = std::lower_bound(lo, edges.end(), Edge{letter + 1, 0});
  return {edges.data() + (lo - edges.begin()), static_cast<std::size_t>(hi - lo)};
}

bool BuchiAutomaton::is_initial(StateId s) const { return std::binary_search(initial_.begin(), initial_.end(), s); }

std::vector<StateId> BuchiAutomaton::accepting_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < num_states(); ++s)
    if (accepting_[s]) out.push_back(s);
  return out;
}

graph::Csr BuchiAutomaton::to_csr() const {
  graph::Csr g;
  g.offsets.reserve(out_.size() + 1);
  for (const auto& edges : out_) {
    for (const auto& e : edges) {
      g.targets.push_back(e.target);
      g.labels.push_back(e.letter);
    }
    g.offsets.push_back(static_cast<std::uint32_t>(g.targets.size()));
  }
  return g;
}

MixedBuchiAutomaton::MixedBuchiAutomaton(BuchiAutomaton base, const std::vector<StateId>& finitary)
    : base_(std::move(base)), finitary_(base_.num_states(), 0) {
  for (StateId s : finitary) {
    if (s >= base_.num_states()) throw std::out_of_range("finitary state out of range");
    if (!base_.out(s).empty())
      throw std::invalid_argument("finitary accepting state '" + (base_.name(s).empty() ? std::to_string(s) : base_.name(s)) +
                                  "' is not terminal");
    finitary_[s] = 1;
  }
}

std::vector<StateId> MixedBuchiAutomaton::finitary_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < num_states(); ++s)
    if (finitary_[s]) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------

BuchiAutomaton intersect(const std::vector<const BuchiAutomaton*>& automata) {
  if (automata.empty()) throw std::invalid_argument("intersect needs at least one automaton");
  const auto& alphabet = automata.front()->alphabet();
  for (const auto* a : automata)
    if (a->alphabet() != alphabet) throw std::invalid_argument("intersect: automata have different alphabets");

  const std::size_t n = automata.size();
  BuchiAutomaton result(alphabet);
  // key = (q1..qn, counter)
  std::map<std::vector<StateId>, StateId> ids;
  std::deque<std::vector<StateId>> queue;

  auto intern = [&](std::vector<StateId> key) {
    auto [it, fresh] = ids.try_emplace(key, 0);
    if (fresh) {
      std::string name = "(";
      for (std::size_t i = 0; i < n; ++i) {
        const auto& nm = automata[i]->name(key[i]);
        name += (i ? "," : "") + (nm.empty() ? std::to_string(key[i]) : nm);
      }
      if (n > 1) name += "|" + std::to_string(key[n]);
      name += ")";
      it->second = result.add_state(std::move(name));
      const StateId c = key[n];
      if (c == 0 && automata[0]->is_accepting(key[0])) result.set_accepting(it->second);
      queue.push_back(std::move(key));
    }
    return it->second;
  };

  // Initial tuples in lexicographic order.
  std::vector<StateId> key(n + 1, 0);
  std::function<void(std::size_t)> init_rec = [&](std::size_t i) {
    if (i == n) {
      result.set_initial(intern(key));
      return;
    }
    for (StateId q : automata[i]->initial()) {
      key[i] = q;
      init_rec(i + 1);
    }
  };
  init_rec(0);

  while (!queue.empty()) {
    const std::vector<StateId> cur = queue.front();
    queue.pop_front();
    const StateId from = ids.at(cur);
    const StateId c = cur[n];
    const StateId next_c = automata[c]->is_accepting(cur[c]) ? static_cast<StateId>((c + 1) % n) : c;
    for (std::uint32_t l = 0; l < alphabet.size(); ++l) {
      std::vector<std::span<const Edge>> succ(n);
      bool blocked = false;
      for (std::size_t i = 0; i < n && !blocked; ++i) {
        succ[i] = automata[i]->out(cur[i], l);
        blocked = succ[i].empty();
      }
      if (blocked) continue;
      std::vector<StateId> next(n + 1);
      next[n] = next_c;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
          result.add_transition(from, l, intern(next));
          return;
        }
        for (const auto& e : succ[i]) {
          next[i] = e.target;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }
  return result;
}

BuchiAutomaton intersect(const std::vector<BuchiAutomaton>& automata) {
  std::vector<const BuchiAutomaton*> ptrs;
  for (const auto& a : automata) ptrs.push_back(&a);
  return intersect(ptrs);
}

std::optional<LassoWord> find_accepted_lasso(const BuchiAutomaton& b) {
  const graph::Csr g = b.to_csr();
  const auto scc = graph::tarjan(g, b.initial());
  StateId target = graph::kNone;
  for (StateId s = 0; s < b.num_states(); ++s) {
    const auto c = scc.component[s];
    if (c != graph::kNone && scc.has_cycle[c] && b.is_accepting(s)) {
      target = s;
      break;
    }
  }
  if (target == graph::kNone) return std::nullopt;

  auto to_letters = [&](const std::vector<std::uint32_t>& edges) {
    std::vector<Letter> out;
    for (auto e : edges) out.push_back(b.letter(g.labels[e]));
    return out;
  };
  const auto comp = scc.component[target];
  auto prefix = graph::bfs_path(
      g, b.initial(), [&](std::uint32_t v) { return v == target; }, [](std::uint32_t) { return true; }, false);
  auto cycle = graph::bfs_path(
      g, {target}, [&](std::uint32_t v) { return v == target; },
      [&](std::uint32_t v) { return scc.component[v] == comp; }, true);
  if (!prefix || !cycle) throw std::logic_error("lasso extraction failed on a cyclic accepting component");
  return LassoWord{to_letters(*prefix), to_letters(*cycle)};
}

bool accepts(const MixedBuchiAutomaton& b, const LassoWord& w) {
  const auto& base = b.base();
  std::vector<std::uint32_t> idx;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto l = base.letter_index(i < w.prefix.size() ? w.prefix[i] : w.period[i - w.prefix.size()]);
    if (!l) return false;
    idx.push_back(*l);
  }
  if (w.is_finite()) {
    std::vector<char> cur(base.num_states(), 0);
    for (StateId s : base.initial()) cur[s] = 1;
    for (std::uint32_t l : idx) {
      std::vector<char> nxt(base.num_states(), 0);
      bool any = false;
      for (StateId s = 0; s < base.num_states(); ++s)
        if (cur[s])
          for (const auto& e : base.out(s, l)) {
            nxt[e.target] = 1;
            any = true;
          }
      if (!any) return false;
      cur.swap(nxt);
    }
    for (StateId s = 0; s < base.num_states(); ++s)
      if (cur[s] && b.is_finitary(s)) return true;
    return false;
  }
  const auto word = word_automaton(w, base.alphabet());
  return !is_empty(intersect(std::vector<const BuchiAutomaton*>{&base, &word.base()}));
}

bool accepts(const BuchiAutomaton& b, const LassoWord& w) {
  if (w.is_finite()) return false;  // plain Buchi automata have no finitary states
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!b.letter_index(w.at(i))) return false;
  const auto word = word_automaton(w, b.alphabet());
  return !is_empty(intersect(std::vector<const BuchiAutomaton*>{&b, &word.base()}));
}

MixedBuchiAutomaton word_automaton(const LassoWord& w, std::optional<std::vector<Letter>> alphabet) {
  std::vector<Letter> letters;
  if (alphabet) {
    letters = std::move(*alphabet);
  } else {
    letters = w.prefix;
    letters.insert(letters.end(), w.period.begin(), w.period.end());
  }
  BuchiAutomaton b(std::move(letters));
  const std::size_t n = w.size();
  if (w.is_finite()) {
    for (std::size_t i = 0; i <= n; ++i) b.add_state(std::to_string(i));
    b.set_initial(0);
    for (std::size_t i = 0; i < n; ++i)
      b.add_transition(static_cast<StateId>(i), w.prefix[i], static_cast<StateId>(i + 1));
    return MixedBuchiAutomaton(std::move(b), {static_cast<StateId>(n)});
  }
  for (std::size_t i = 0; i < n; ++i) b.add_state(std::to_string(i));
  b.set_initial(0);
  for (std::size_t i = 0; i < n; ++i) {
    const StateId to = static_cast<StateId>(i + 1 < n ? i + 1 : w.prefix.size());
    b.add_transition(static_cast<StateId>(i), w.at(i), to);
    if (i >= w.prefix.size()) b.set_accepting(static_cast<StateId>(i));
  }
  return MixedBuchiAutomaton(std::move(b));
}

namespace {

std::vector<char> useful_states(const BuchiAutomaton& b, const std::vector<char>& finitary) {
  const graph::Csr g = b.to_csr();
  const auto reach = graph::reachable(g, b.initial());
  std::vector<std::uint32_t> all(b.num_states());
  std::iota(all.begin(), all.end(), 0);
  const auto scc = graph::tarjan(g, all);
  std::vector<char> goal(b.num_states(), 0);
  for (StateId s = 0; s < b.num_states(); ++s)
    goal[s] = finitary[s] || (b.is_accepting(s) && scc.has_cycle[scc.component[s]]);
  const auto coreach = graph::coreachable(g, goal);
  std::vector<char> keep(b.num_states());
  for (StateId s = 0; s < b.num_states(); ++s) keep[s] = reach[s] && coreach[s];
  return keep;
}

BuchiAutomaton restrict_to(const BuchiAutomaton& b, const std::vector<char>& keep, std::vector<StateId>& new_id,
                           std::vector<StateId>* kept) {
  BuchiAutomaton out(b.alphabet());
  new_id.assign(b.num_states(), graph::kNone);
  if (kept) kept->clear();
  for (StateId s = 0; s < b.num_states(); ++s)
    if (keep[s]) {
      new_id[s] = out.add_state(b.name(s));
      if (kept) kept->push_back(s);
    }
  for (StateId s = 0; s < b.num_states(); ++s) {
    if (!keep[s]) continue;
    if (b.is_initial(s)) out.set_initial(new_id[s]);
    if (b.is_accepting(s)) out.set_accepting(new_id[s]);
    for (const auto& e : b.out(s))
      if (keep[e.target]) out.add_transition(new_id[s], e.letter, new_id[e.target]);
  }
  return out;
}

}  // namespace

MixedBuchiAutomaton prune(const MixedBuchiAutomaton& b, std::vector<StateId>* kept) {
  std::vector<char> fin(b.num_states());
  for (StateId s = 0; s < b.num_states(); ++s) fin[s] = b.is_finitary(s);
  const auto keep = useful_states(b.base(), fin);
  std::vector<StateId> new_id;
  BuchiAutomaton base = restrict_to(b.base(), keep, new_id, kept);
  std::vector<StateId> finitary;
  for (StateId s = 0; s < b.num_states(); ++s)
    if (keep[s] && fin[s]) finitary.push_back(new_id[s]);
  return MixedBuchiAutomaton(std::move(base), finitary);
}

BuchiAutomaton prune(const BuchiAutomaton& b, std::vector<StateId>* kept) {
  const auto keep = useful_states(b, std::vector<char>(b.num_states(), 0));
  std::vector<StateId> new_id;
  return restrict_to(b, keep, new_id, kept);
}

namespace {

// sim[p][q] != 0 iff q directly simulates p: q is accepting (finitary) when p
// is, and every move of p is matched by a move of q on the same letter to a
// state simulating the target.
std::vector<std::vector<char>> direct_simulation(const MixedBuchiAutomaton& b) {
  const auto& base = b.base();
  const StateId n = base.num_states();
  std::vector<std::vector<char>> sim(n, std::vector<char>(n, 0));
  for (StateId p = 0; p < n; ++p)
    for (StateId q = 0; q < n; ++q)
      sim[p][q] = (!base.is_accepting(p) || base.is_accepting(q)) && (!b.is_finitary(p) || b.is_finitary(q));
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId p = 0; p < n; ++p)
      for (StateId q = 0; q < n; ++q) {
        if (!sim[p][q] || p == q) continue;
        for (const auto& e : base.out(p)) {
          bool matched = false;
          for (const auto& f : base.out(q, e.letter))
            if (sim[e.target][f.target]) {
              matched = true;
              break;
            }
          if (!matched) {
            sim[p][q] = 0;
            changed = true;
            break;
          }
        }
      }
  }
  return sim;
}

MixedBuchiAutomaton reduce_once(const MixedBuchiAutomaton& b) {
  const auto& base = b.base();
  const StateId n = base.num_states();
  const auto sim = direct_simulation(b);
  // Classes of mutually simulating states, numbered by smallest member.
  std::vector<StateId> cls(n, graph::kNone), rep;
  for (StateId s = 0; s < n; ++s) {
    if (cls[s] != graph::kNone) continue;
    cls[s] = static_cast<StateId>(rep.size());
    for (StateId t = s + 1; t < n; ++t)
      if (cls[t] == graph::kNone && sim[s][t] && sim[t][s]) cls[t] = cls[s];
    rep.push_back(s);
  }
  const auto below = [&](StateId c, StateId d) { return c != d && sim[rep[c]][rep[d]]; };

  BuchiAutomaton out(base.alphabet());
  std::vector<StateId> finitary;
  for (StateId c = 0; c < rep.size(); ++c) {
    out.add_state(base.name(rep[c]));
    if (base.is_accepting(rep[c])) out.set_accepting(c);
    if (b.is_finitary(rep[c])) finitary.push_back(c);
  }
  // Keep only the maximal targets per letter and the maximal initial classes.
  const auto maximal = [&](const std::vector<StateId>& cs, StateId c) {
    return std::none_of(cs.begin(), cs.end(), [&](StateId d) { return below(c, d); });
  };
  for (StateId c = 0; c < rep.size(); ++c) {
    std::map<std::uint32_t, std::vector<StateId>> targets;
    for (StateId s = 0; s < n; ++s)
      if (cls[s] == c)
        for (const auto& e : base.out(s)) targets[e.letter].push_back(cls[e.target]);
    for (const auto& [letter, cs] : targets)
      for (StateId t : cs)
        if (maximal(cs, t)) out.add_transition(c, letter, t);
  }
  std::vector<StateId> init;
  for (StateId s : base.initial()) init.push_back(cls[s]);
  for (StateId c : init)
    if (maximal(init, c)) out.set_initial(c);
  return prune(MixedBuchiAutomaton(std::move(out), finitary));
}

}  // namespace

MixedBuchiAutomaton reduce(const MixedBuchiAutomaton& b) {
  auto cur = prune(b);
  for (;;) {
    auto next = reduce_once(cur);
    if (next.num_states() == cur.num_states() && next.base().num_transitions() == cur.base().num_transitions())
      return next;
    cur = std::move(next);
  }
}

BuchiAutomaton reduce(const BuchiAutomaton& b) { return reduce(MixedBuchiAutomaton(b)).base(); }

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string render_dot(const BuchiAutomaton& b, const std::vector<char>& finitary, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(graph_name) << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle];\n";
  for (StateId s = 0; s < b.num_states(); ++s) {
    os << "  " << s << " [label=\"" << dot_escape(b.name(s).empty() ? std::to_string(s) : b.name(s)) << "\"";
    if (finitary[s])
      os << ", shape=diamond";
    else if (b.is_accepting(s))
      os << ", shape=doublecircle";
    os << "];\n";
  }
  for (StateId s : b.initial()) {
    os << "  init" << s << " [shape=point];\n";
    os << "  init" << s << " -> " << s << ";\n";
  }
  for (StateId s = 0; s < b.num_states(); ++s) {
    // One arrow per target, listing its letters in alphabet order.
    std::map<StateId, std::vector<std::uint32_t>> by_target;
    for (const auto& e : b.out(s)) by_target[e.target].push_back(e.letter);
    for (const auto& [t, letters] : by_target) {
      std::string label;
      for (std::size_t i = 0; i < letters.size(); ++i) label += (i ? ", " : "") + b.letter(letters[i]).str();
      os << "  " << s << " -> " << t << " [label=\"" << dot_escape(label) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string export_dot(const BuchiAutomaton& b, const std::string& graph_name) {
  return render_dot(b, std::vector<char>(b.num_states(), 0), graph_name);
}

std::string export_dot(const MixedBuchiAutomaton& b, const std::string& graph_name) {
  std::vector<char> fin(b.num_states());
  for (StateId s = 0; s < b.num_states(); ++s) fin[s] = b.is_finitary(s);
  return render_dot(b.base(), fin, graph_name);
}

}  // namespace ccsynth
