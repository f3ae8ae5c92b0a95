#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace ddl {

/// Kind of conclusion a rule or proof tag talks about.
enum class Mode { constitutive, obligation, permission };

inline constexpr Mode kAllModes[] = {Mode::constitutive, Mode::obligation, Mode::permission};

/// 'C', 'O' or 'P'.
char mode_symbol(Mode mode);
std::optional<Mode> mode_from_symbol(char symbol);

/// Numeric value attached to an assignment literal, e.g. `imprisonment := 21years`.
struct Payload {
  double value = 0.0;
  std::string unit;

  friend bool operator==(const Payload&, const Payload&) = default;
  friend auto operator<=>(const Payload&, const Payload&) = default;
};

/// A propositional atom or its negation. Ordering is by atom first, so sorted
/// containers of literals group `p` and `~p` together.
struct Literal {
  std::string atom;
  bool negated = false;
  std::optional<Payload> payload;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

Literal make_literal(std::string_view text_atom, bool negated = false);

/// Flips the polarity; atom and payload are kept.
Literal complement(const Literal& literal);

/// Atoms are non-empty runs of letters, digits and underscores.
bool is_valid_atom(std::string_view atom);

/// Checks atom syntax and that payload literals are positive.
bool is_valid_literal(const Literal& literal);

/// Canonical surface form: `~atom`, `atom := 21years`.
std::string to_string(const Literal& literal);

/// Shortest decimal rendering that parses back to the same double.
std::string format_number(double value);

enum class Modality { none, obligation, permission };

/// Body element of a rule: a plain literal, `O(l)`, `P(l)`, `!O(l)` or `!P(l)`.
struct ModalLiteral {
  Modality modality = Modality::none;
  bool modality_negated = false;
  Literal literal;

  friend bool operator==(const ModalLiteral&, const ModalLiteral&) = default;
  friend auto operator<=>(const ModalLiteral&, const ModalLiteral&) = default;
};

ModalLiteral plain(Literal literal);
ModalLiteral obliged(Literal literal, bool negated = false);
ModalLiteral permitted(Literal literal, bool negated = false);

bool is_valid_modal_literal(const ModalLiteral& modal);

/// Mode whose defeasible conclusions a body element is checked against.
Mode required_mode(const ModalLiteral& modal);

std::string to_string(const ModalLiteral& modal);

}  // namespace ddl

template <>
struct std::hash<ddl::Literal> {
  std::size_t operator()(const ddl::Literal& literal) const noexcept;
};
