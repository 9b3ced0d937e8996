#include "ccsynth/localize.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ccsynth {

std::uint32_t TransitionSystem::add_state(const std::string& name, const Property& label) {
  if (!alphabet_.contains(label))
    throw std::invalid_argument("state '" + name + "' is labelled with '" + label + "', which is not in the alphabet");
  const auto s = num_states();
  if (!index_.emplace(name, s).second) throw std::invalid_argument("duplicate state '" + name + "'");
  names_.push_back(name);
  labels_.push_back(label);
  succ_.emplace_back();
  return s;
}

void TransitionSystem::add_transition(std::uint32_t from, std::uint32_t to) {
  if (from >= num_states() || to >= num_states()) throw std::out_of_range("transition between unknown states");
  auto& v = succ_[from];
  auto it = std::lower_bound(v.begin(), v.end(), to);
  if (it == v.end() || *it != to) v.insert(it, to);
}

bool TransitionSystem::has_transition(std::uint32_t from, std::uint32_t to) const {
  return from < num_states() && std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

std::size_t TransitionSystem::num_transitions() const {
  std::size_t n = 0;
  for (const auto& v : succ_) n += v.size();
  return n;
}

std::uint32_t TransitionSystem::state(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown state '" + name + "'");
  return it->second;
}

ExtendedTransitionSystem::ExtendedTransitionSystem(TransitionSystem ts) : base_(std::move(ts)) {
  succ_.resize(num_states());
  succ_[kStart] = {base_.initial() + 1};
  for (std::uint32_t s = 0; s < base_.num_states(); ++s)
    for (auto t : base_.successors(s)) succ_[s + 1].push_back(t + 1);
}

ExtendedTransitionSystem extend_with_start(const TransitionSystem& ts) { return ExtendedTransitionSystem(ts); }

MixedBuchiAutomaton project_spec(const BuchiAutomaton& b, const PropertySet& sigma_i) {
  const auto letters = single_letters(sigma_i);
  std::vector<char> visible(b.alphabet().size(), 0);
  for (const auto& l : letters) {
    auto idx = b.letter_index(l);
    if (!idx) throw std::invalid_argument("projection alphabet contains '" + l.first + "', unknown to the automaton");
    visible[*idx] = 1;
  }
  const StateId n = b.num_states();

  std::vector<std::vector<StateId>> silent(n);
  for (StateId q = 0; q < n; ++q)
    for (const auto& e : b.out(q))
      if (!visible[e.letter]) silent[q].push_back(e.target);
  for (auto& v : silent) v.erase(std::unique(v.begin(), v.end()), v.end());

  // Silent closure of q as (state, whether an accepting state was passed
  // after leaving q). Index: 2 * state + flag.
  auto closure = [&](StateId q) {
    std::vector<char> seen(2 * n, 0);
    std::vector<StateId> stack{2 * q};
    seen[2 * q] = 1;
    while (!stack.empty()) {
      const StateId x = stack.back();
      stack.pop_back();
      const bool flag = x & 1;
      for (StateId t : silent[x / 2]) {
        const StateId y = 2 * t + ((flag || b.is_accepting(t)) ? 1 : 0);
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    return seen;
  };

  // Visible moves of every original state: (letter in sigma_i, target, needs accepting copy).
  struct Move {
    std::uint32_t letter;
    StateId target;
    bool via_accepting;
    auto operator<=>(const Move&) const = default;
  };
  std::vector<std::vector<Move>> moves(n);
  std::vector<std::vector<char>> closures(n);
  for (StateId q = 0; q < n; ++q) {
    closures[q] = closure(q);
    for (StateId r = 0; r < n; ++r)
      for (int flag = 0; flag < 2; ++flag) {
        if (!closures[q][2 * r + flag]) continue;
        for (const auto& e : b.out(r)) {
          if (!visible[e.letter]) continue;
          const auto l = static_cast<std::uint32_t>(
              std::lower_bound(letters.begin(), letters.end(), b.letter(e.letter)) - letters.begin());
          moves[q].push_back({l, e.target, flag && !b.is_accepting(e.target)});
        }
      }
    std::sort(moves[q].begin(), moves[q].end());
    moves[q].erase(std::unique(moves[q].begin(), moves[q].end()), moves[q].end());
  }

  // A state can stay silent forever while passing accepting states: it
  // silently reaches an accepting state that lies on a silent cycle.
  std::vector<char> silent_accepting(n, 0);
  for (StateId q = 0; q < n; ++q)
    for (StateId r = 0; r < n && !silent_accepting[q]; ++r) {
      if (!b.is_accepting(r) || !(closures[q][2 * r] || closures[q][2 * r + 1])) continue;
      for (StateId t : silent[r])
        if (closures[t][2 * r] || closures[t][2 * r + 1]) {
          silent_accepting[q] = 1;
          break;
        }
    }

  BuchiAutomaton out(letters);
  for (StateId q = 0; q < n; ++q) {
    out.add_state(b.name(q));
    out.set_accepting(q, b.is_accepting(q));
  }
  for (StateId q : b.initial()) out.set_initial(q);

  std::vector<StateId> acc_copy(n, graph::kNone);
  for (StateId q = 0; q < n; ++q)
    for (const auto& m : moves[q])
      if (m.via_accepting) acc_copy[m.target] = 0;
  for (StateId q = 0; q < n; ++q)
    if (acc_copy[q] == 0) {
      acc_copy[q] = out.add_state(b.name(q) + "^acc");
      out.set_accepting(acc_copy[q]);
    }
  std::vector<StateId> twin(n, graph::kNone);
  for (StateId q = 0; q < n; ++q)
    if (silent_accepting[q]) twin[q] = out.add_state(b.name(q) + "^fin");

  std::vector<StateId> finitary;
  for (StateId q = 0; q < n; ++q) {
    if (twin[q] == graph::kNone) continue;
    finitary.push_back(twin[q]);
    if (b.is_initial(q)) out.set_initial(twin[q]);
  }
  for (StateId q = 0; q < n; ++q) {
    for (const auto& m : moves[q]) {
      const StateId to = m.via_accepting ? acc_copy[m.target] : m.target;
      out.add_transition(q, m.letter, to);
      if (acc_copy[q] != graph::kNone) out.add_transition(acc_copy[q], m.letter, to);
      if (twin[m.target] != graph::kNone) {
        out.add_transition(q, m.letter, twin[m.target]);
        if (acc_copy[q] != graph::kNone) out.add_transition(acc_copy[q], m.letter, twin[m.target]);
      }
    }
  }
  return MixedBuchiAutomaton(std::move(out), finitary);
}

LocalProduct implementable_local(const ExtendedTransitionSystem& ts, const MixedBuchiAutomaton& spec) {
  const auto& b = spec.base();
  if (b.alphabet() != single_letters(ts.base().alphabet()))
    throw std::invalid_argument("agent '" + ts.base().id() + "': specification alphabet differs from the transition system's");

  std::vector<std::uint32_t> label_letter(ts.num_states(), graph::kNone);
  for (std::uint32_t s = 1; s < ts.num_states(); ++s) label_letter[s] = *b.letter_index(Letter::single(ts.label(s)));

  BuchiAutomaton out(b.alphabet());
  std::vector<std::pair<std::uint32_t, StateId>> origin;
  std::vector<char> finitary_flag;
  std::map<std::pair<std::uint32_t, StateId>, StateId> ids;
  std::deque<std::pair<std::uint32_t, StateId>> queue;
  auto intern = [&](std::uint32_t s, StateId q) {
    auto [it, fresh] = ids.try_emplace({s, q}, 0);
    if (fresh) {
      it->second = out.add_state(ts.name(s) + "," + b.name(q));
      out.set_accepting(it->second, b.is_accepting(q));
      origin.emplace_back(s, q);
      finitary_flag.push_back(s != ExtendedTransitionSystem::kStart && spec.is_finitary(q));
      queue.emplace_back(s, q);
    }
    return it->second;
  };
  for (StateId q : b.initial()) out.set_initial(intern(ts.initial(), q));
  while (!queue.empty()) {
    const auto [s, q] = queue.front();
    queue.pop_front();
    const StateId from = ids.at({s, q});
    for (auto t : ts.successors(s)) {
      const auto l = label_letter[t];
      for (const auto& e : b.out(q, l)) out.add_transition(from, l, intern(t, e.target));
    }
  }

  std::vector<StateId> finitary;
  for (StateId x = 0; x < out.num_states(); ++x)
    if (finitary_flag[x]) finitary.push_back(x);
  LocalProduct r;
  r.unpruned_states = out.num_states();
  std::vector<StateId> kept;
  r.automaton = prune(MixedBuchiAutomaton(std::move(out), finitary), &kept);
  for (StateId old : kept) r.origin.push_back(origin[old]);
  return r;
}

}  // namespace ccsynth
