#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dholc/hol.hpp"
#include "dholc/kernel.hpp"
#include "dholc/syntax.hpp"

namespace dholc {

struct TranslateOptions {
  // Translate the equality encodings of the connectives literally instead of using native HOL connectives.
  bool rawCore = false;
  bool simplify = true;
};

class Translator {
 public:
  explicit Translator(TranslateOptions opts = {}) : opts_(opts) {}

  HolTypePtr type(const TypePtr& a) const;
  HolTermPtr term(const TermPtr& t) const;
  // The PER that the DHOL type denotes, applied to s and t.
  HolTermPtr per(const TypePtr& a, const HolTermPtr& s, const HolTermPtr& t) const;
  HolTermPtr typing(const TypePtr& a, const HolTermPtr& t) const { return per(a, t, t); }

  // Fixes the relation names for the theory's type symbols; call before translating its terms.
  HolTheory theory(const std::vector<TheoryDecl>& elaborated);
  std::pair<HolContext, std::vector<HolTermPtr>> context(const Context& ctx) const;
  HolConjecture obligation(const Obligation& ob) const;

  std::string relName(const std::string& typeSym) const;
  const TranslateOptions& options() const { return opts_; }

 private:
  HolTermPtr coreTerm(const TermPtr& t) const;
  HolTermPtr finish(const HolTermPtr& t) const;

  TranslateOptions opts_;
  std::map<std::string, std::string> relNames_;
};

// Beta-normalizes and removes duplicate or trivially true conjuncts and hypotheses.
HolTermPtr simplifyHol(const HolTermPtr& t);

HolTypePtr translateType(const TypePtr& a);
HolTermPtr translateTerm(const TermPtr& t, const TranslateOptions& opts = {});
HolTermPtr perRelation(const TypePtr& a, const HolTermPtr& s, const HolTermPtr& t);
HolTermPtr typingPredicate(const TypePtr& a, const HolTermPtr& t);

}  // namespace dholc
