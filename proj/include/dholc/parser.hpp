#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dholc/syntax.hpp"

namespace dholc {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::string message, std::vector<std::string> expected);

  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

struct ParsedTheory {
  std::vector<TheoryDecl> decls;
  std::vector<Conjecture> conjectures;
};

ParsedTheory parseTheory(const std::string& text, const std::string& file = "");
ParsedTheory parseTheoryFile(const std::string& path);

// Parses a standalone term or type; names in `bound` resolve to variables, others to constants.
TermPtr parseTerm(const std::string& text, const std::vector<std::string>& bound = {});
TypePtr parseType(const std::string& text, const std::vector<std::string>& bound = {});

struct PrintOptions {
  bool resugar = true;  // fold definitional expansions back into connectives
};

std::string printTerm(const TermPtr& t, const PrintOptions& opts = {});
std::string printType(const TypePtr& a, const PrintOptions& opts = {});
std::string printDecl(const TheoryDecl& d, const PrintOptions& opts = {});
std::string printTheory(const ParsedTheory& thy, const PrintOptions& opts = {});
std::string printContext(const Context& ctx, const PrintOptions& opts = {});

}  // namespace dholc
