#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace qcrystal {

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// Cartan matrix / root datum rejection
struct NonGCM : Error {
  explicit NonGCM(const std::string& m) : Error("non-GCM input: " + m) {}
};
struct NotSymmetrizable : Error {
  explicit NotSymmetrizable(const std::string& m) : Error("not symmetrizable: " + m) {}
};
struct CorankMismatch : Error {
  explicit CorankMismatch(const std::string& m) : Error("corank mismatch: " + m) {}
};

// Preconditions on operations
struct NotAffine : Error {
  explicit NotAffine(const std::string& m) : Error("requires affine type: " + m) {}
};
struct NotFiniteType : Error {
  explicit NotFiniteType(const std::string& m) : Error("requires finite type: " + m) {}
};
struct NotDominant : Error {
  explicit NotDominant(const std::string& m) : Error("requires dominant weight: " + m) {}
};
struct NotRegular : Error {
  explicit NotRegular(const std::string& m) : Error("not regular at q=0: " + m) {}
};
struct NotInCrystal : Error {
  explicit NotInCrystal(const std::string& m) : Error("element not in crystal: " + m) {}
};
struct IntegralityViolation : Error {
  explicit IntegralityViolation(const std::string& m)
      : Error("path integrality violated: " + m) {}
};
struct ParseFailure : Error {
  explicit ParseFailure(const std::string& m) : Error("parse failure: " + m) {}
};

// Budget-style outcomes carry whatever partial artifact was assembled so a
// front end can still write it out with its certificate.
struct BudgetExceeded : Error {
  nlohmann::json partial;
  explicit BudgetExceeded(const std::string& m, nlohmann::json p = {})
      : Error("budget exceeded: " + m), partial(std::move(p)) {}
};
struct NotStabilized : Error {
  nlohmann::json partial;
  explicit NotStabilized(const std::string& m, nlohmann::json p = {})
      : Error("census not stabilized: " + m), partial(std::move(p)) {}
};

// A nonzero coproduct coefficient outside the certified candidate set. Fatal:
// it signals a convention bug, never a tolerable truncation.
struct MarginViolation : Error {
  explicit MarginViolation(const std::string& m) : Error("margin violation: " + m) {}
};

}  // namespace qcrystal
