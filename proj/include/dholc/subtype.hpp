#pragma once

#include <string>

#include "dholc/syntax.hpp"

namespace dholc {

// Denotes (core | pred) / rel. A null pred or rel stands for the trivial one.
struct NormalType {
  TypePtr core;
  TermPtr pred;
  TermPtr rel;

  TermPtr predOrDefault() const;  // \x:core. true
  TermPtr relOrDefault() const;   // \x:core. \y:core. x =[core] y
  TypePtr toType() const;         // reassembled without trivial layers
};

std::string printNormalType(const NormalType& n);

}  // namespace dholc
