#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "ddl/literal.hpp"

namespace ddl {

enum class Sign { plus, minus };
enum class Tag { definite, defeasible };

/// `+definite C l`, `-defeasible O l`, ... Definite tags exist for mode C only.
struct TaggedConclusion {
  Sign sign = Sign::plus;
  Tag tag = Tag::defeasible;
  Mode mode = Mode::constitutive;
  Literal literal;

  friend bool operator==(const TaggedConclusion&, const TaggedConclusion&) = default;
  friend auto operator<=>(const TaggedConclusion&, const TaggedConclusion&) = default;
};

bool is_legal(Tag tag, Mode mode);

std::string_view to_string(Sign sign);
std::string_view to_string(Tag tag);

/// `+defeasible O life_imprisonment`; the expectation syntax minus `expect`.
std::string to_string(const TaggedConclusion& conclusion);

/// A (tag, mode, literal) for which neither sign could be established.
struct Undetermined {
  Tag tag = Tag::defeasible;
  Mode mode = Mode::constitutive;
  Literal literal;

  friend bool operator==(const Undetermined&, const Undetermined&) = default;
  friend auto operator<=>(const Undetermined&, const Undetermined&) = default;
};

std::string to_string(const Undetermined& entry);

/// Positive and negative, definite and defeasible conclusions of a theory.
/// Definite sets are constitutive; defeasible sets are indexed by mode.
struct Extension {
  std::set<Literal> plus_definite;
  std::set<Literal> minus_definite;
  std::array<std::set<Literal>, 3> plus_defeasible;
  std::array<std::set<Literal>, 3> minus_defeasible;
  std::set<Undetermined> undetermined;

  std::set<Literal>& plus(Mode mode) { return plus_defeasible[static_cast<std::size_t>(mode)]; }
  std::set<Literal>& minus(Mode mode) { return minus_defeasible[static_cast<std::size_t>(mode)]; }
  const std::set<Literal>& plus(Mode mode) const { return plus_defeasible[static_cast<std::size_t>(mode)]; }
  const std::set<Literal>& minus(Mode mode) const { return minus_defeasible[static_cast<std::size_t>(mode)]; }

  bool contains(const TaggedConclusion& conclusion) const;
  bool is_undetermined(Tag tag, Mode mode, const Literal& literal) const;

  /// True when no (tag, mode, literal) is both proved and refuted, and the
  /// undetermined residue is disjoint from every tagged set.
  bool is_coherent() const;

  std::size_t count(Sign sign, Tag tag, Mode mode) const;

  friend bool operator==(const Extension&, const Extension&) = default;
};

}  // namespace ddl
