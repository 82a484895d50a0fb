#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixmult/multidegree.hpp"

namespace mixmult {

class PieceEngine;

namespace oracle {

inline constexpr std::uint32_t kOraclePrime = 65521;

/// Plain data, deliberately separate from the main engine's types.
struct Term {
  std::vector<int> exponents;
  std::int64_t coefficient = 0;
};
using Poly = std::vector<Term>;

struct Ring {
  std::vector<Multidegree> variableDegrees;
  std::vector<Poly> relations;
};

struct Module {
  enum class Kind { WholeRing, Ideal, CyclicQuotient };
  Kind kind = Kind::WholeRing;
  std::vector<Poly> generators;
};

/// One piece whose dimension can be recomputed.
struct Query {
  enum class Kind { Full, Module, Power };
  Kind kind = Kind::Full;
  Module module;                       // Module, Power
  std::vector<std::vector<Poly>> seeds;  // Power: generators of H_1..H_q
  Multidegree exponents;               // Power
  Multidegree degree;                  // Full, Module: the degree; Power: v
};

struct Config {
  std::uint32_t prime = kOraclePrime;
  /// Queries whose ambient degree has |deg| above this are skipped.
  int maxTotalDegree = 12;
};

/// dim [B]_deg, dim [M]_deg, or dim H^n[M]_v as a subspace of [M]. Throws
/// SizeBound when the ambient degree exceeds config.maxTotalDegree.
std::size_t dimension(const Ring& ring, const Query& query, const Config& config = {});

struct Mismatch {
  std::string query;     // human-readable description
  std::uint32_t prime = 0;
  std::size_t expected = 0;  // main engine
  std::size_t actual = 0;    // oracle
};

struct Report {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<Mismatch> mismatches;
};

/// Replays every dimension in the engine's query log with the oracle at each
/// of the given primes and lists the disagreements.
Report crossCheck(const PieceEngine& engine, const std::vector<std::uint32_t>& primes,
                  int maxTotalDegree = 12);

}  // namespace oracle
}  // namespace mixmult
