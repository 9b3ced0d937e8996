#pragma once

#include <compare>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccsynth {

/// A property is identified by its name; equality is exact string equality.
using Property = std::string;
using PropertySet = std::set<Property>;

/// Input symbol of an automaton. Single letters carry one property; pair
/// letters (used only by the trace-closure construction) carry two tracks.
struct Letter {
  Property first;
  Property second;  // empty for single letters

  static Letter single(Property p) { return Letter{std::move(p), {}}; }
  static Letter pair(Property a, Property b) {
    if (b.empty()) throw std::invalid_argument("pair letter needs two properties");
    return Letter{std::move(a), std::move(b)};
  }

  bool is_pair() const { return !second.empty(); }
  std::string str() const { return is_pair() ? "(" + first + "," + second + ")" : first; }

  auto operator<=>(const Letter&) const = default;
  bool operator==(const Letter&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Letter& l) { return os << l.str(); }

/// Ultimately periodic word prefix . period^omega. An empty period denotes the
/// finite word `prefix`.
template <typename T>
struct Lasso {
  std::vector<T> prefix;
  std::vector<T> period;

  bool is_finite() const { return period.empty(); }
  std::size_t size() const { return prefix.size() + period.size(); }

  /// Letter at position i of the (unrolled) word. For finite words i must be
  /// below prefix.size().
  const T& at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (period.empty()) throw std::out_of_range("position past end of finite word");
    return period[(i - prefix.size()) % period.size()];
  }

  /// The first n letters of the unrolled word (fewer for short finite words).
  std::vector<T> unroll(std::size_t n) const {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n && (!is_finite() || i < prefix.size()); ++i) out.push_back(at(i));
    return out;
  }

  bool operator==(const Lasso&) const = default;
};

using LassoWord = Lasso<Letter>;

/// True iff both lassos denote the same (finite or omega) word.
template <typename T>
bool same_word(const Lasso<T>& a, const Lasso<T>& b) {
  if (a.is_finite() || b.is_finite()) return a.is_finite() && b.is_finite() && a.prefix == b.prefix;
  const std::size_t n = std::max(a.prefix.size(), b.prefix.size()) +
                        std::lcm(a.period.size(), b.period.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!(a.at(i) == b.at(i))) return false;
  return true;
}

/// Projection w|S of a word onto a set of properties. Letters are kept when
/// their property belongs to S; a period whose projection is empty yields a
/// finite word.
template <typename T, typename Pred>
Lasso<T> project_if(const Lasso<T>& w, Pred keep) {
  Lasso<T> out;
  for (const auto& x : w.prefix)
    if (keep(x)) out.prefix.push_back(x);
  for (const auto& x : w.period)
    if (keep(x)) out.period.push_back(x);
  return out;
}

inline LassoWord project(const LassoWord& w, const PropertySet& s) {
  return project_if(w, [&](const Letter& l) { return !l.is_pair() && s.contains(l.first); });
}

inline Lasso<Property> project(const Lasso<Property>& w, const PropertySet& s) {
  return project_if(w, [&](const Property& p) { return s.contains(p); });
}

/// Convenience constructors for single-letter words.
inline LassoWord make_word(const std::vector<Property>& prefix, const std::vector<Property>& period = {}) {
  LassoWord w;
  for (const auto& p : prefix) w.prefix.push_back(Letter::single(p));
  for (const auto& p : period) w.period.push_back(Letter::single(p));
  return w;
}

inline Lasso<Property> properties_of(const LassoWord& w) {
  Lasso<Property> out;
  for (const auto& l : w.prefix) out.prefix.push_back(l.first);
  for (const auto& l : w.period) out.period.push_back(l.first);
  return out;
}

inline LassoWord letters_of(const Lasso<Property>& w) { return make_word(w.prefix, w.period); }

std::string to_string(const LassoWord& w);
std::string to_string(const Lasso<Property>& w);

inline std::vector<Letter> single_letters(const PropertySet& s) {
  std::vector<Letter> out;
  for (const auto& p : s) out.push_back(Letter::single(p));
  return out;
}

}  // namespace ccsynth
