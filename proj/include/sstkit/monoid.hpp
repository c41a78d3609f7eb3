#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sstkit/alphabet.hpp"

namespace sstkit {

/// Finite monoid generated by per-letter elements, explored breadth-first in
/// shortlex order. `representative[i]` is the shortlex-least word whose image
/// is `elements[i]`; element 0 is the image of the empty word.
template <class Element, class Hash>
struct MonoidTable {
  std::vector<Element> elements;
  std::vector<Word> representative;
  /// generator_map[a] is the element index of letter a.
  std::vector<std::size_t> generator_map;
  /// right_product[i][a] is the index of elements[i] * generator(a); absent
  /// entries only occur when the table is truncated.
  std::vector<std::vector<std::optional<std::size_t>>> right_product;
  bool truncated = false;
  std::unordered_map<Element, std::size_t, Hash> index;

  std::size_t size() const noexcept { return elements.size(); }

  std::optional<std::size_t> find(const Element& e) const {
    auto it = index.find(e);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// Closes `identity` under right multiplication by `generators`. Stops and
/// marks the table truncated when a new element would exceed `cap`.
template <class Element, class Hash, class Mul>
MonoidTable<Element, Hash> close_monoid(const Element& identity, const std::vector<Element>& generators,
                                        Mul mul, std::size_t cap) {
  MonoidTable<Element, Hash> table;
  auto add = [&](Element e, Word rep) -> std::optional<std::size_t> {
    if (auto found = table.find(e)) return found;
    if (table.elements.size() >= cap) {
      table.truncated = true;
      return std::nullopt;
    }
    std::size_t id = table.elements.size();
    table.index.emplace(e, id);
    table.elements.push_back(std::move(e));
    table.representative.push_back(std::move(rep));
    table.right_product.emplace_back(generators.size());
    return id;
  };
  add(identity, {});
  for (std::size_t i = 0; i < table.elements.size() && !table.truncated; ++i) {
    for (std::size_t a = 0; a < generators.size(); ++a) {
      Word rep = table.representative[i];
      rep.push_back(static_cast<Letter>(a));
      auto id = add(mul(table.elements[i], generators[a]), std::move(rep));
      table.right_product[i][a] = id;
      if (!id) break;
    }
  }
  table.generator_map.assign(generators.size(), 0);
  for (std::size_t a = 0; a < generators.size(); ++a) {
    auto id = table.find(generators[a]);
    table.generator_map[a] = id ? *id : static_cast<std::size_t>(-1);
  }
  return table;
}

/// x^index = x^(index+period) with both minimal, exponents counted from 1.
struct PowerCycle {
  std::size_t index = 1;
  std::size_t period = 1;
};

template <class Element, class Hash, class Mul>
PowerCycle power_cycle(const Element& x, Mul mul) {
  std::unordered_map<Element, std::size_t, Hash> seen;
  Element p = x;
  for (std::size_t k = 1;; ++k) {
    auto [it, inserted] = seen.emplace(p, k);
    if (!inserted) return PowerCycle{it->second, k - it->second};
    p = mul(p, x);
  }
}

/// Result of an aperiodicity test over an explicitly enumerated monoid.
struct AperiodicVerdict {
  bool aperiodic = true;
  /// False when the monoid table was truncated, so the verdict only covers explored elements.
  bool exact = true;
  /// Set for SSTs whose flows exceed one: the verdict is about the saturated quotient.
  bool saturated_abstraction = false;
  std::size_t monoid_size = 0;
  /// Largest power index over all elements; x^n = x^(n+1) for every x and n >= this bound.
  std::size_t idempotent_bound = 1;
  std::optional<Word> witness;
  std::size_t witness_index = 0;
  std::size_t witness_period = 0;
};

template <class Element, class Hash, class Mul>
AperiodicVerdict check_table_aperiodic(const MonoidTable<Element, Hash>& table, Mul mul) {
  AperiodicVerdict v;
  v.exact = !table.truncated;
  v.monoid_size = table.size();
  for (std::size_t i = 0; i < table.size(); ++i) {
    PowerCycle c = power_cycle<Element, Hash>(table.elements[i], mul);
    if (c.period != 1) {
      v.aperiodic = false;
      v.witness = table.representative[i];
      v.witness_index = c.index;
      v.witness_period = c.period;
      return v;
    }
    if (c.index > v.idempotent_bound) v.idempotent_bound = c.index;
  }
  return v;
}

}  // namespace sstkit
