#include "ddl/extension.hpp"

namespace ddl {

bool is_legal(Tag tag, Mode mode) { return tag == Tag::defeasible || mode == Mode::constitutive; }

std::string_view to_string(Sign sign) { return sign == Sign::plus ? "+" : "-"; }

std::string_view to_string(Tag tag) { return tag == Tag::definite ? "definite" : "defeasible"; }

std::string to_string(const TaggedConclusion& conclusion) {
  std::string out(to_string(conclusion.sign));
  out += to_string(conclusion.tag);
  out += ' ';
  out += mode_symbol(conclusion.mode);
  out += ' ';
  out += to_string(conclusion.literal);
  return out;
}

std::string to_string(const Undetermined& entry) {
  std::string out(to_string(entry.tag));
  out += ' ';
  out += mode_symbol(entry.mode);
  out += ' ';
  out += to_string(entry.literal);
  return out;
}

bool Extension::contains(const TaggedConclusion& conclusion) const {
  if (!is_legal(conclusion.tag, conclusion.mode)) return false;
  const std::set<Literal>* set = nullptr;
  if (conclusion.tag == Tag::definite) {
    set = conclusion.sign == Sign::plus ? &plus_definite : &minus_definite;
  } else {
    set = conclusion.sign == Sign::plus ? &plus(conclusion.mode) : &minus(conclusion.mode);
  }
  return set->contains(conclusion.literal);
}

bool Extension::is_undetermined(Tag tag, Mode mode, const Literal& literal) const {
  return undetermined.contains(Undetermined{tag, mode, literal});
}

bool Extension::is_coherent() const {
  auto disjoint = [](const std::set<Literal>& a, const std::set<Literal>& b) {
    for (const auto& l : a) {
      if (b.contains(l)) return false;
    }
    return true;
  };
  if (!disjoint(plus_definite, minus_definite)) return false;
  for (Mode mode : kAllModes) {
    if (!disjoint(plus(mode), minus(mode))) return false;
  }
  for (const auto& entry : undetermined) {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      if (contains(TaggedConclusion{sign, entry.tag, entry.mode, entry.literal})) return false;
    }
  }
  return true;
}

std::size_t Extension::count(Sign sign, Tag tag, Mode mode) const {
  if (!is_legal(tag, mode)) return 0;
  if (tag == Tag::definite) return sign == Sign::plus ? plus_definite.size() : minus_definite.size();
  return sign == Sign::plus ? plus(mode).size() : minus(mode).size();
}

}  // namespace ddl
