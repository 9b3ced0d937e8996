#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccsynth/automata.hpp"

namespace ccsynth {

inline constexpr std::size_t kDefaultMaxProductStates = 5'000'000;

class SizeGuardExceeded : public std::runtime_error {
 public:
  SizeGuardExceeded(std::size_t limit, std::size_t components)
      : std::runtime_error("synchronous product exceeds " + std::to_string(limit) + " states (" +
                           std::to_string(components) + " components)"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

/// Synchronous product of mixed Buchi automata. On a letter, the components
/// whose alphabet contains it move together and all others stay put. A word
/// is accepted iff each component accepts its projection.
class SyncProduct {
 public:
  /// Throws std::invalid_argument on an empty list.
  explicit SyncProduct(std::vector<MixedBuchiAutomaton> components);

  const std::vector<MixedBuchiAutomaton>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  /// Union of the component alphabets, sorted.
  const std::vector<Letter>& alphabet() const { return alphabet_; }
  /// Components reading global letter l, ascending.
  const std::vector<std::uint32_t>& participants(std::uint32_t l) const { return participants_[l]; }
  /// Index of global letter l in component c's alphabet, or graph::kNone.
  std::uint32_t local_letter(std::uint32_t c, std::uint32_t l) const { return local_[c][l]; }
  /// Product of the component sizes, saturating.
  std::uint64_t state_bound() const;

 private:
  std::vector<MixedBuchiAutomaton> components_;
  std::vector<Letter> alphabet_;
  std::vector<std::vector<std::uint32_t>> participants_;
  std::vector<std::vector<std::uint32_t>> local_;
};

/// Language intersection of two products: the concatenated component list.
SyncProduct intersect_products(const SyncProduct& p1, const SyncProduct& p2);

struct ProductStats {
  std::uint64_t states = 0;
  std::uint64_t transitions = 0;
  std::uint64_t bound = 0;
};

struct ProductWitness {
  LassoWord word;
  /// Component states before each letter: word.size() + 1 tuples. For a
  /// lasso the last tuple equals the one at the start of the period.
  std::vector<std::vector<StateId>> run;
};

/// Materializes the reachable product (breadth-first, letters in alphabet
/// order) and searches for an accepted word: first a lasso on which every
/// component either sits in a finitary state or moves infinitely often
/// through its accepting states, otherwise a finite word ending with every
/// component in a finitary state. Among lassos, cycles with more components
/// parked are preferred, then the cycle holding the smallest state id; prefixes
/// are shortest.
/// Throws SizeGuardExceeded when more than max_states states are reachable.
std::optional<ProductWitness> find_accepted_word(const SyncProduct& p, std::size_t max_states = kDefaultMaxProductStates,
                                                 ProductStats* stats = nullptr);

/// True iff some run of the product reads `prefix`: the set of reachable
/// state tuples stays nonempty after every letter.
bool reads_prefix(const SyncProduct& p, const std::vector<Letter>& prefix);

/// Membership of a finite or lasso word in the product language.
bool accepts(const SyncProduct& p, const LassoWord& w, std::size_t max_states = kDefaultMaxProductStates);

/// GraphViz rendering of the reachable product: nodes are state tuples,
/// diamonds have every component in a finitary state.
std::string export_dot(const SyncProduct& p, std::size_t max_states = kDefaultMaxProductStates,
                       const std::string& graph_name = "product");

}  // namespace ccsynth
