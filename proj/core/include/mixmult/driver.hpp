#pragma once

#include <cstdint>
#include <exception>
#include <optional>

#include <nlohmann/json.hpp>

#include "mixmult/dsl.hpp"

namespace mixmult {

struct RunFlags {
  std::optional<std::uint32_t> prime;        // overrides the document
  std::optional<std::uint32_t> secondPrime;  // rerun and compare; also an oracle prime
  std::optional<int> maxOrigin;
  bool oracle = false;
  int oracleMaxDegree = 12;
  unsigned threads = 0;
};

struct RunOutcome {
  nlohmann::json result;  // one object per command; an array when there are several
  std::size_t mismatches = 0;
  int exitCode = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoStabilization = 2;
inline constexpr int kExitParse = 3;
inline constexpr int kExitMismatch = 4;

/// Executes every command of the document. Library errors propagate.
RunOutcome run(const ProblemDocument& doc, const RunFlags& flags = {});

/// Exit code for an exception escaping parseProblem or run.
int exitCodeFor(const std::exception& e);
/// {"error": kind, "message": ..., ["line", "column"]}.
nlohmann::json errorObject(const std::exception& e);

}  // namespace mixmult
