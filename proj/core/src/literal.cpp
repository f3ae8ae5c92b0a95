#include "ddl/literal.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace ddl {

char mode_symbol(Mode mode) {
  switch (mode) {
    case Mode::constitutive: return 'C';
    case Mode::obligation: return 'O';
    case Mode::permission: return 'P';
  }
  return '?';
}

std::optional<Mode> mode_from_symbol(char symbol) {
  switch (symbol) {
    case 'C': return Mode::constitutive;
    case 'O': return Mode::obligation;
    case 'P': return Mode::permission;
    default: return std::nullopt;
  }
}

Literal make_literal(std::string_view text_atom, bool negated) {
  return Literal{std::string(text_atom), negated, std::nullopt};
}

Literal complement(const Literal& literal) {
  Literal out = literal;
  out.negated = !literal.negated;
  return out;
}

bool is_valid_atom(std::string_view atom) {
  if (atom.empty()) return false;
  for (char c : atom) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_') return false;
  }
  return true;
}

bool is_valid_literal(const Literal& literal) {
  if (!is_valid_atom(literal.atom)) return false;
  if (literal.payload) {
    if (literal.negated) return false;
    if (!literal.payload->unit.empty() && !is_valid_atom(literal.payload->unit)) return false;
    if (!(literal.payload->value >= 0.0)) return false;
  }
  return true;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  if (ec != std::errc{}) throw std::runtime_error("number out of printable range");
  return std::string(buf.data(), end);
}

std::string to_string(const Literal& literal) {
  std::string out;
  if (literal.negated) out += '~';
  out += literal.atom;
  if (literal.payload) {
    out += " := ";
    out += format_number(literal.payload->value);
    out += literal.payload->unit;
  }
  return out;
}

ModalLiteral plain(Literal literal) { return ModalLiteral{Modality::none, false, std::move(literal)}; }

ModalLiteral obliged(Literal literal, bool negated) {
  return ModalLiteral{Modality::obligation, negated, std::move(literal)};
}

ModalLiteral permitted(Literal literal, bool negated) {
  return ModalLiteral{Modality::permission, negated, std::move(literal)};
}

bool is_valid_modal_literal(const ModalLiteral& modal) {
  if (modal.modality == Modality::none && modal.modality_negated) return false;
  return is_valid_literal(modal.literal);
}

Mode required_mode(const ModalLiteral& modal) {
  switch (modal.modality) {
    case Modality::obligation: return Mode::obligation;
    case Modality::permission: return Mode::permission;
    case Modality::none: break;
  }
  return Mode::constitutive;
}

std::string to_string(const ModalLiteral& modal) {
  if (modal.modality == Modality::none) return to_string(modal.literal);
  std::string out;
  if (modal.modality_negated) out += '!';
  out += modal.modality == Modality::obligation ? "O(" : "P(";
  out += to_string(modal.literal);
  out += ')';
  return out;
}

}  // namespace ddl

std::size_t std::hash<ddl::Literal>::operator()(const ddl::Literal& literal) const noexcept {
  std::size_t h = std::hash<std::string>{}(literal.atom);
  h ^= literal.negated ? 0x9e3779b97f4a7c15ULL : 0;
  if (literal.payload) {
    h = h * 31 + std::hash<double>{}(literal.payload->value);
    h = h * 31 + std::hash<std::string>{}(literal.payload->unit);
  }
  return h;
}
