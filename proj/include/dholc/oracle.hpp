#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dholc/hol.hpp"

namespace dholc {

// Carriers are {0..n-1}; bool is {0,1}. A function value is its table read as a number in base |codomain|,
// the argument selecting the digit.
struct FiniteModel {
  std::map<std::string, int> carriers;
  std::map<std::string, std::uint64_t> interp;
};

std::string printModel(const HolTheory& thy, const FiniteModel& m);

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values of closed terms. Throws OracleError on unknown symbols or types too large to encode.
std::uint64_t evalTerm(const HolTheory& thy, const FiniteModel& m, const HolTermPtr& t);
bool evalFormula(const HolTheory& thy, const FiniteModel& m, const HolTermPtr& t);

enum class OracleStatus { Valid, Counterexample, Inconclusive };

struct OracleOptions {
  int sizeBound = 2;
  std::uint64_t budget = 50'000'000;  // search nodes before giving up
  bool parallel = true;
};

struct OracleResult {
  OracleStatus status = OracleStatus::Inconclusive;
  std::optional<FiniteModel> model;
  std::uint64_t nodes = 0;
  std::string note;
};

// Is the formula true in every model with carriers of size <= bound that satisfies the axioms?
OracleResult checkValidFinite(const HolTheory& thy, const HolTermPtr& formula, const OracleOptions& opts = {});

}  // namespace dholc
