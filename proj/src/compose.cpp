#include "ccsynth/compose.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <span>

namespace ccsynth {

SyncProduct::SyncProduct(std::vector<MixedBuchiAutomaton> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("synchronous product of no components");
  for (const auto& c : components_) alphabet_.insert(alphabet_.end(), c.alphabet().begin(), c.alphabet().end());
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  participants_.resize(alphabet_.size());
  local_.assign(components_.size(), std::vector<std::uint32_t>(alphabet_.size(), graph::kNone));
  for (std::uint32_t c = 0; c < components_.size(); ++c)
    for (std::uint32_t l = 0; l < alphabet_.size(); ++l)
      if (auto idx = components_[c].base().letter_index(alphabet_[l])) {
        local_[c][l] = *idx;
        participants_[l].push_back(c);
      }
}

std::uint64_t SyncProduct::state_bound() const {
  std::uint64_t bound = 1;
  for (const auto& c : components_) {
    const std::uint64_t n = c.num_states();
    if (n != 0 && bound > UINT64_MAX / n) return UINT64_MAX;
    bound *= n;
  }
  return bound;
}

SyncProduct intersect_products(const SyncProduct& p1, const SyncProduct& p2) {
  auto all = p1.components();
  all.insert(all.end(), p2.components().begin(), p2.components().end());
  return SyncProduct(std::move(all));
}

namespace {

/// Open-addressing set of fixed-width state tuples stored contiguously.
class TupleTable {
 public:
  explicit TupleTable(std::size_t width) : width_(width), slots_(1024, graph::kNone) {}

  std::uint32_t size() const { return static_cast<std::uint32_t>(data_.size() / width_); }
  std::span<const StateId> at(std::uint32_t id) const { return {data_.data() + id * width_, width_}; }

  /// Returns (id, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const StateId> t) {
    if (2 * (size() + 1) > slots_.size()) grow();
    std::size_t i = hash(t) & (slots_.size() - 1);
    while (slots_[i] != graph::kNone) {
      if (std::equal(t.begin(), t.end(), at(slots_[i]).begin())) return {slots_[i], false};
      i = (i + 1) & (slots_.size() - 1);
    }
    const std::uint32_t id = size();
    slots_[i] = id;
    data_.insert(data_.end(), t.begin(), t.end());
    return {id, true};
  }

 private:
  static std::size_t hash(std::span<const StateId> t) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (StateId x : t) {
      h ^= x;
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }

  void grow() {
    std::vector<std::uint32_t> bigger(slots_.size() * 2, graph::kNone);
    for (std::uint32_t id = 0; id < size(); ++id) {
      std::size_t i = hash(at(id)) & (bigger.size() - 1);
      while (bigger[i] != graph::kNone) i = (i + 1) & (bigger.size() - 1);
      bigger[i] = id;
    }
    slots_.swap(bigger);
  }

  std::size_t width_;
  std::vector<StateId> data_;
  std::vector<std::uint32_t> slots_;
};

struct Materialized {
  TupleTable states;
  graph::Csr csr;  // labels are global letters
  std::vector<std::uint32_t> initial;
};

Materialized materialize(const SyncProduct& p, std::size_t max_states) {
  const std::size_t n = p.size();
  Materialized m{TupleTable(n), {}, {}};
  auto add = [&](std::span<const StateId> t) {
    auto [id, fresh] = m.states.insert(t);
    if (fresh && m.states.size() > max_states) throw SizeGuardExceeded(max_states, n);
    return id;
  };

  // Initial tuples in lexicographic order.
  std::vector<StateId> tuple(n);
  std::vector<std::size_t> pos(n, 0);
  bool any = true;
  for (const auto& c : p.components()) any = any && !c.base().initial().empty();
  while (any) {
    for (std::size_t c = 0; c < n; ++c) tuple[c] = p.components()[c].base().initial()[pos[c]];
    const auto id = add(tuple);
    if (m.initial.empty() || m.initial.back() != id) m.initial.push_back(id);
    std::size_t c = n;
    while (c > 0) {
      --c;
      if (++pos[c] < p.components()[c].base().initial().size()) break;
      pos[c] = 0;
      if (c == 0) any = false;
    }
  }

  std::vector<StateId> source(n);
  std::vector<std::span<const Edge>> moves;
  std::vector<std::size_t> choice;
  for (std::uint32_t v = 0; v < m.states.size(); ++v) {
    const auto cur = m.states.at(v);
    std::copy(cur.begin(), cur.end(), source.begin());
    for (std::uint32_t l = 0; l < p.alphabet().size(); ++l) {
      const auto& who = p.participants(l);
      moves.clear();
      bool enabled = true;
      for (auto c : who) {
        moves.push_back(p.components()[c].base().out(source[c], p.local_letter(c, l)));
        if (moves.back().empty()) {
          enabled = false;
          break;
        }
      }
      if (!enabled) continue;
      choice.assign(who.size(), 0);
      tuple = source;
      while (true) {
        for (std::size_t k = 0; k < who.size(); ++k) tuple[who[k]] = moves[k][choice[k]].target;
        m.csr.targets.push_back(add(tuple));
        m.csr.labels.push_back(l);
        std::size_t k = who.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++choice[k] < moves[k].size()) {
            done = false;
            break;
          }
          choice[k] = 0;
        }
        if (done) break;
      }
    }
    m.csr.offsets.push_back(static_cast<std::uint32_t>(m.csr.targets.size()));
  }
  return m;
}

std::uint32_t edge_source(const graph::Csr& g, std::uint32_t e) {
  return static_cast<std::uint32_t>(std::upper_bound(g.offsets.begin(), g.offsets.end(), e) - g.offsets.begin() - 1);
}

// Shortest path (edge indices) from `from` whose last edge satisfies
// edge_goal, staying inside `allowed`.
std::optional<std::vector<std::uint32_t>> bfs_to_edge(const graph::Csr& g, std::uint32_t from,
                                                      const std::function<bool(std::uint32_t)>& edge_goal,
                                                      const std::function<bool(std::uint32_t)>& allowed) {
  std::vector<std::uint32_t> parent_edge(g.size(), graph::kNone);
  std::vector<char> seen(g.size(), 0);
  std::vector<std::uint32_t> queue{from};
  seen[from] = 1;
  auto unwind = [&](std::uint32_t v, std::uint32_t last) {
    std::vector<std::uint32_t> path{last};
    while (v != from) {
      const auto e = parent_edge[v];
      path.push_back(e);
      v = edge_source(g, e);
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (auto e = g.begin(v); e < g.end(v); ++e) {
      const auto t = g.targets[e];
      if (!allowed(t)) continue;
      if (edge_goal(e)) return unwind(v, e);
      if (!seen[t]) {
        seen[t] = 1;
        parent_edge[t] = e;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ProductWitness> find_accepted_word(const SyncProduct& p, std::size_t max_states, ProductStats* stats) {
  const auto m = materialize(p, max_states);
  const std::size_t n = p.size();
  const auto& g = m.csr;
  const auto bound = p.state_bound();
  if (m.states.size() > bound) throw std::logic_error("product has more states than the product of component sizes");
  if (stats) *stats = {m.states.size(), g.targets.size(), bound};

  auto finitary = [&](std::uint32_t v, std::size_t c) { return p.components()[c].is_finitary(m.states.at(v)[c]); };
  auto accepting = [&](std::uint32_t v, std::size_t c) { return p.components()[c].base().is_accepting(m.states.at(v)[c]); };
  auto moves = [&](std::uint32_t e, std::size_t c) { return p.local_letter(static_cast<std::uint32_t>(c), g.labels[e]) != graph::kNone; };

  ProductWitness w;
  auto follow = [&](std::uint32_t start, const std::vector<std::uint32_t>& path, std::vector<Letter>& letters) {
    std::uint32_t v = start;
    for (auto e : path) {
      letters.push_back(p.alphabet()[g.labels[e]]);
      v = g.targets[e];
      w.run.emplace_back(m.states.at(v).begin(), m.states.at(v).end());
    }
    return v;
  };

  // Lasso: a cyclic component where every component is either parked in a
  // finitary state or moves and visits its accepting states.
  const auto scc = graph::tarjan(g, m.initial);
  std::vector<char> has_acc(static_cast<std::size_t>(scc.count) * n, 0), has_move(has_acc.size(), 0);
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const auto k = scc.component[v];
    if (k == graph::kNone || !scc.has_cycle[k]) continue;
    for (std::size_t c = 0; c < n; ++c)
      if (accepting(v, c)) has_acc[k * n + c] = 1;
    for (auto e = g.begin(v); e < g.end(v); ++e) {
      if (scc.component[g.targets[e]] != k) continue;
      for (auto c : p.participants(g.labels[e])) has_move[k * n + c] = 1;
    }
  }
  // Prefer cycles with the most components parked, then the smallest node.
  std::uint32_t target = graph::kNone;
  std::size_t best_parked = 0;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    const auto k = scc.component[v];
    if (k == graph::kNone || !scc.has_cycle[k] || k == target) continue;
    bool good = true;
    std::size_t parked = 0;
    for (std::size_t c = 0; c < n && good; ++c) {
      if (finitary(v, c))
        ++parked;
      else
        good = has_acc[k * n + c] && has_move[k * n + c];
    }
    if (good && (target == graph::kNone || parked > best_parked)) {
      target = k;
      best_parked = parked;
    }
  }
  if (target != graph::kNone) {
    auto in_scc = [&](std::uint32_t v) { return scc.component[v] == target; };
    auto prefix = graph::bfs_path(g, m.initial, in_scc, [](std::uint32_t) { return true; }, false);
    // the initial state may itself be in the component
    std::uint32_t entry = graph::kNone;
    if (prefix->empty()) {
      for (auto s : m.initial)
        if (in_scc(s)) {
          entry = s;
          break;
        }
    } else {
      entry = g.targets[prefix->back()];
    }
    const std::uint32_t start = prefix->empty() ? entry : edge_source(g, prefix->front());
    w.run.emplace_back(m.states.at(start).begin(), m.states.at(start).end());
    follow(start, *prefix, w.word.prefix);

    std::vector<std::uint32_t> cycle;
    std::uint32_t cur = entry;
    auto walk = [&](const std::vector<std::uint32_t>& path) {
      for (auto e : path) cycle.push_back(e);
      if (!path.empty()) cur = g.targets[path.back()];
    };
    for (std::size_t c = 0; c < n; ++c) {
      if (finitary(entry, c)) continue;
      walk(*bfs_to_edge(g, cur, [&](std::uint32_t e) { return moves(e, c); }, in_scc));
      walk(*graph::bfs_path(g, {cur}, [&](std::uint32_t v) { return accepting(v, c); }, in_scc, false));
    }
    walk(*graph::bfs_path(g, {cur}, [&](std::uint32_t v) { return v == entry; }, in_scc, false));
    follow(entry, cycle, w.word.period);
    return w;
  }

  // Finite word: every component parked in a finitary state.
  auto all_parked = [&](std::uint32_t v) {
    for (std::size_t c = 0; c < n; ++c)
      if (!finitary(v, c)) return false;
    return true;
  };
  auto path = graph::bfs_path(g, m.initial, all_parked, [](std::uint32_t) { return true; }, false);
  if (!path) return std::nullopt;
  std::uint32_t start = graph::kNone;
  if (path->empty()) {
    for (auto s : m.initial)
      if (all_parked(s)) {
        start = s;
        break;
      }
  } else {
    start = edge_source(g, path->front());
  }
  w.run.emplace_back(m.states.at(start).begin(), m.states.at(start).end());
  follow(start, *path, w.word.prefix);
  return w;
}

bool reads_prefix(const SyncProduct& p, const std::vector<Letter>& prefix) {
  std::set<std::vector<StateId>> cur;
  // cartesian product of the initial states
  cur.insert(std::vector<StateId>{});
  for (const auto& c : p.components()) {
    std::set<std::vector<StateId>> next;
    for (const auto& t : cur)
      for (auto q : c.base().initial()) {
        auto u = t;
        u.push_back(q);
        next.insert(std::move(u));
      }
    cur = std::move(next);
  }
  for (const auto& letter : prefix) {
    auto it = std::lower_bound(p.alphabet().begin(), p.alphabet().end(), letter);
    if (it == p.alphabet().end() || *it != letter) return false;
    const auto l = static_cast<std::uint32_t>(it - p.alphabet().begin());
    for (auto c : p.participants(l)) {
      std::set<std::vector<StateId>> next;
      for (const auto& t : cur)
        for (const auto& e : p.components()[c].base().out(t[c], p.local_letter(c, l))) {
          auto u = t;
          u[c] = e.target;
          next.insert(std::move(u));
        }
      cur = std::move(next);
    }
    if (cur.empty()) return false;
  }
  return !cur.empty();
}

bool accepts(const SyncProduct& p, const LassoWord& w, std::size_t max_states) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!std::binary_search(p.alphabet().begin(), p.alphabet().end(), w.at(i))) return false;
  auto parts = p.components();
  parts.push_back(word_automaton(w, p.alphabet()));
  return find_accepted_word(SyncProduct(std::move(parts)), max_states).has_value();
}

std::string export_dot(const SyncProduct& p, std::size_t max_states, const std::string& graph_name) {
  const auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  const auto m = materialize(p, max_states);
  std::ostringstream os;
  os << "digraph \"" << escape(graph_name) << "\" {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=box];\n";
  for (std::uint32_t v = 0; v < m.states.size(); ++v) {
    const auto t = m.states.at(v);
    std::string label = "(";
    bool parked = true;
    for (std::size_t c = 0; c < t.size(); ++c) {
      const auto& base = p.components()[c].base();
      label += (c ? ", " : "") + (base.name(t[c]).empty() ? std::to_string(t[c]) : base.name(t[c]));
      parked = parked && p.components()[c].is_finitary(t[c]);
    }
    os << "  " << v << " [label=\"" << escape(label + ")") << "\"" << (parked ? ", shape=diamond" : "") << "];\n";
  }
  for (auto v : m.initial) {
    os << "  init" << v << " [shape=point];\n";
    os << "  init" << v << " -> " << v << ";\n";
  }
  for (std::uint32_t v = 0; v < m.states.size(); ++v)
    for (auto e = m.csr.begin(v); e < m.csr.end(v); ++e)
      os << "  " << v << " -> " << m.csr.targets[e] << " [label=\"" << escape(p.alphabet()[m.csr.labels[e]].str())
         << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ccsynth
