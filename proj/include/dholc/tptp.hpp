#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dholc/hol.hpp"

namespace dholc {

// THF0 problem text: type declarations, axioms, then the conjecture, in theory order.
std::string emitTptp(const HolTheory& thy, const HolConjecture& conj);
// A single formula in THF syntax with the same naming scheme as emitTptp.
std::string emitThfFormula(const HolTermPtr& t);

struct ThfProblem {
  HolTheory theory;
  std::vector<HolConjecture> conjectures;
};

class ThfParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads back the THF subset that emitTptp produces. Equalities get their type from the declarations.
ThfProblem readThf(const std::string& text);

}  // namespace dholc
