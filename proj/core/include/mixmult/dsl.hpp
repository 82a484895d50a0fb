#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixmult/multidegree.hpp"
#include "mixmult/polynomial.hpp"

namespace mixmult {

struct VariableDecl {
  std::string name;
  Multidegree degree;
  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

struct SubspaceDecl {
  int index = 0;  // H<index>
  std::vector<IntPolynomial> generators;
  friend bool operator==(const SubspaceDecl&, const SubspaceDecl&) = default;
};

struct ModuleDecl {
  enum class Kind { Ideal, Quotient };
  std::string name;
  Kind kind = Kind::Ideal;
  std::vector<IntPolynomial> generators;
  friend bool operator==(const ModuleDecl&, const ModuleDecl&) = default;
};

struct Command {
  std::string verb;
  std::map<std::string, std::string> params;
  int line = 0;  // not part of equality
  friend bool operator==(const Command& a, const Command& b) {
    return a.verb == b.verb && a.params == b.params;
  }
};

/// A parsed problem: a ring presentation, subspaces H_i, named modules and
/// commands.
struct ProblemDocument {
  std::optional<std::uint32_t> prime;
  std::size_t gradingRank = 1;
  std::vector<VariableDecl> variables;
  std::vector<IntPolynomial> relations;
  std::vector<SubspaceDecl> subspaces;  // sorted by index
  std::vector<ModuleDecl> modules;
  std::vector<Command> commands;

  std::vector<std::string> variableNames() const;
  const SubspaceDecl* subspace(int index) const;
  const ModuleDecl* module(const std::string& name) const;

  friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

/// Parses the line-oriented problem format:
///
///   prime 32003
///   grading 2
///   vars x1:(1,0) x2:(1,0) y1:(0,1)
///   rel x1*y1 - x2^2*y1
///   H1 = x1, x2
///   module J = ideal(x1, y1)
///   cmd relmult t=(1,1)
///
/// Throws ParseError, UndeclaredName or InhomogeneousRelation.
ProblemDocument parseProblem(const std::string& text);

/// Canonical text; parseProblem(printProblem(d)) == d.
std::string printProblem(const ProblemDocument& doc);

/// Parses "(a,b,...)" or, when arity is 1, a bare integer.
Multidegree parseTuple(const std::string& text, std::size_t arity);

}  // namespace mixmult
