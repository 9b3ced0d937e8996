#include "ccsynth/translate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace ccsynth {

namespace {

enum class Kind { True, False, Atom, NegAtom, And, Or, Next, Until, Release };

struct Node {
  Kind kind;
  int atom = -1;  // index into the alphabet
  int lhs = -1;
  int rhs = -1;
};

/// Hash-consed NNF subformulas; ids follow discovery (post-)order.
class FormulaTable {
 public:
  explicit FormulaTable(const PropertySet& alphabet) : props_(alphabet.begin(), alphabet.end()) {}

  int add(const Formula& f) {
    switch (f.op()) {
      case Op::True:
        return intern({Kind::True});
      case Op::False:
        return intern({Kind::False});
      case Op::Atom:
        return intern({Kind::Atom, prop_index(f.name())});
      case Op::Not:
        if (f.sub().op() != Op::Atom) throw std::logic_error("formula is not in negation normal form");
        return intern({Kind::NegAtom, prop_index(f.sub().name())});
      case Op::Next: {
        const int a = add(f.sub());
        return intern({Kind::Next, -1, a});
      }
      case Op::And:
      case Op::Or:
      case Op::Until:
      case Op::Release: {
        const int a = add(f.lhs());
        const int b = add(f.rhs());
        const Kind k = f.op() == Op::And ? Kind::And : f.op() == Op::Or ? Kind::Or : f.op() == Op::Until ? Kind::Until : Kind::Release;
        return intern({k, -1, a, b});
      }
      default:
        throw std::logic_error("formula is not in negation normal form");
    }
  }

  const Node& at(int id) const { return nodes_[id]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Property>& props() const { return props_; }

 private:
  int prop_index(const Property& p) const {
    auto it = std::lower_bound(props_.begin(), props_.end(), p);
    if (it == props_.end() || *it != p) throw std::invalid_argument("atom '" + p + "' is not in the alphabet");
    return static_cast<int>(it - props_.begin());
  }

  int intern(Node n) {
    auto key = std::make_tuple(static_cast<int>(n.kind), n.atom, n.lhs, n.rhs);
    auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(nodes_.size()));
    if (fresh) nodes_.push_back(n);
    return it->second;
  }

  std::vector<Property> props_;
  std::vector<Node> nodes_;
  std::map<std::tuple<int, int, int, int>, int> ids_;
};

constexpr int kInit = -1;

struct TableauNode {
  std::set<int> incoming;
  std::set<int> old;
  std::set<int> next;
};

struct Pending {
  std::set<int> incoming;
  std::set<int> fresh;  // "New" in the classic presentation
  std::set<int> old;
  std::set<int> next;
};

class Tableau {
 public:
  explicit Tableau(const FormulaTable& table) : t_(table) {}

  std::vector<TableauNode> expand(int root) {
    std::vector<Pending> stack;
    stack.push_back({{kInit}, {root}, {}, {}});
    while (!stack.empty()) {
      Pending p = std::move(stack.back());
      stack.pop_back();
      if (p.fresh.empty()) {
        auto key = std::make_pair(p.old, p.next);
        auto it = index_.find(key);
        if (it != index_.end()) {
          nodes_[it->second].incoming.insert(p.incoming.begin(), p.incoming.end());
          continue;
        }
        const int id = static_cast<int>(nodes_.size());
        index_.emplace(key, id);
        nodes_.push_back({p.incoming, p.old, p.next});
        stack.push_back({{id}, p.next, {}, {}});
        continue;
      }
      const int eta = *p.fresh.begin();
      p.fresh.erase(p.fresh.begin());
      if (p.old.contains(eta)) {
        stack.push_back(std::move(p));
        continue;
      }
      const Node& n = t_.at(eta);
      switch (n.kind) {
        case Kind::False:
          break;
        case Kind::True:
        case Kind::Atom:
        case Kind::NegAtom:
          if (consistent(p.old, eta)) {
            p.old.insert(eta);
            stack.push_back(std::move(p));
          }
          break;
        case Kind::And:
          add_fresh(p, n.lhs);
          add_fresh(p, n.rhs);
          p.old.insert(eta);
          stack.push_back(std::move(p));
          break;
        case Kind::Next:
          p.next.insert(n.lhs);
          p.old.insert(eta);
          stack.push_back(std::move(p));
          break;
        case Kind::Or:
        case Kind::Until:
        case Kind::Release: {
          Pending first = p;
          Pending second = std::move(p);
          first.old.insert(eta);
          second.old.insert(eta);
          if (n.kind == Kind::Or) {
            add_fresh(first, n.lhs);
            add_fresh(second, n.rhs);
          } else if (n.kind == Kind::Until) {
            // a U b  =  b | (a & X(a U b))
            add_fresh(first, n.lhs);
            first.next.insert(eta);
            add_fresh(second, n.rhs);
          } else {
            // a R b  =  b & (a | X(a R b))
            add_fresh(first, n.rhs);
            first.next.insert(eta);
            add_fresh(second, n.lhs);
            add_fresh(second, n.rhs);
          }
          stack.push_back(std::move(second));
          stack.push_back(std::move(first));
          break;
        }
      }
    }
    return std::move(nodes_);
  }

 private:
  static void add_fresh(Pending& p, int f) {
    if (!p.old.contains(f)) p.fresh.insert(f);
  }

  // One property per position: two distinct positive atoms clash, as do an
  // atom and its negation.
  bool consistent(const std::set<int>& old, int eta) const {
    const Node& n = t_.at(eta);
    if (n.kind == Kind::True) return true;
    for (int o : old) {
      const Node& m = t_.at(o);
      if (n.kind == Kind::Atom && m.kind == Kind::Atom && m.atom != n.atom) return false;
      if (n.kind == Kind::Atom && m.kind == Kind::NegAtom && m.atom == n.atom) return false;
      if (n.kind == Kind::NegAtom && m.kind == Kind::Atom && m.atom == n.atom) return false;
    }
    return true;
  }

  const FormulaTable& t_;
  std::vector<TableauNode> nodes_;
  std::map<std::pair<std::set<int>, std::set<int>>, int> index_;
};

BuchiAutomaton build(const Formula& nnf_formula, const PropertySet& alphabet) {
  FormulaTable table(alphabet);
  const int root = table.add(nnf_formula);
  const auto nodes = Tableau(table).expand(root);

  std::vector<int> untils;
  for (int i = 0; i < table.size(); ++i)
    if (table.at(i).kind == Kind::Until) untils.push_back(i);
  const std::size_t k = untils.size();

  const auto& props = table.props();
  const std::uint32_t nprops = static_cast<std::uint32_t>(props.size());
  std::vector<std::vector<std::uint32_t>> letters(nodes.size());
  std::vector<std::vector<char>> fair(nodes.size(), std::vector<char>(std::max<std::size_t>(k, 1), 1));
  std::vector<std::vector<int>> succ(nodes.size());
  std::vector<int> initial_nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int pos = -1;
    std::vector<char> neg(nprops, 0);
    for (int o : nodes[i].old) {
      if (table.at(o).kind == Kind::Atom) pos = table.at(o).atom;
      if (table.at(o).kind == Kind::NegAtom) neg[table.at(o).atom] = 1;
    }
    for (std::uint32_t l = 0; l < nprops; ++l)
      if (!neg[l] && (pos < 0 || static_cast<std::uint32_t>(pos) == l)) letters[i].push_back(l);
    for (std::size_t j = 0; j < k; ++j) {
      const Node& u = table.at(untils[j]);
      fair[i][j] = !nodes[i].old.contains(untils[j]) || nodes[i].old.contains(u.rhs);
    }
    for (int src : nodes[i].incoming) {
      if (src == kInit)
        initial_nodes.push_back(static_cast<int>(i));
      else
        succ[src].push_back(static_cast<int>(i));
    }
  }
  for (auto& s : succ) std::sort(s.begin(), s.end());

  BuchiAutomaton b(single_letters(alphabet));
  const StateId init = b.add_state("init");
  b.set_initial(init);
  std::map<std::pair<int, std::uint32_t>, StateId> ids;
  std::deque<std::pair<int, std::uint32_t>> queue;
  auto intern = [&](int node, std::uint32_t counter) {
    auto [it, fresh] = ids.try_emplace({node, counter}, 0);
    if (fresh) {
      it->second = b.add_state("n" + std::to_string(node) + (k > 1 ? "." + std::to_string(counter) : ""));
      if (counter == 0 && fair[node][0]) b.set_accepting(it->second);
      queue.emplace_back(node, counter);
    }
    return it->second;
  };
  for (int n : initial_nodes) {
    const StateId to = intern(n, 0);
    for (auto l : letters[n]) b.add_transition(init, l, to);
  }
  while (!queue.empty()) {
    const auto [m, c] = queue.front();
    queue.pop_front();
    const StateId from = ids.at({m, c});
    const std::uint32_t next_c = (k > 0 && fair[m][c]) ? static_cast<std::uint32_t>((c + 1) % k) : c;
    for (int n : succ[m]) {
      if (letters[n].empty()) continue;
      const StateId to = intern(n, next_c);
      for (auto l : letters[n]) b.add_transition(from, l, to);
    }
  }
  return prune(b);
}

}  // namespace

BuchiAutomaton ltl_to_buchi(const Formula& f, const PropertySet& alphabet) {
  return build(to_negation_normal_form(f), alphabet);
}

BuchiAutomaton ltl_to_buchi_negated(const Formula& f, const PropertySet& alphabet) {
  return build(to_negation_normal_form(Formula::negation(f)), alphabet);
}

}  // namespace ccsynth
