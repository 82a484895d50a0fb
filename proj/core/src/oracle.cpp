#include "mixmult/oracle.hpp"

#include <functional>
#include <optional>
#include <map>

#include "mixmult/errors.hpp"
#include "mixmult/piece.hpp"

namespace mixmult::oracle {

namespace {

using Exps = std::vector<int>;
using Sparse = std::map<Exps, std::int64_t>;  // coefficients in [0, q)

std::int64_t mod(std::int64_t a, std::uint32_t q) {
  a %= static_cast<std::int64_t>(q);
  return a < 0 ? a + q : a;
}

Multidegree degreeOf(const Ring& ring, const Exps& e) {
  const std::size_t p = ring.variableDegrees.front().size();
  Multidegree d = Multidegree::zero(p);
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * ring.variableDegrees[i];
  return d;
}

/// All exponent vectors of the given degree, lexicographically decreasing.
std::vector<Exps> monomialsLex(const Ring& ring, const Multidegree& deg) {
  std::vector<Exps> out;
  if (!deg.isNonNegative()) return out;
  const std::size_t n = ring.variableDegrees.size();
  Exps cur(n, 0);
  std::function<void(std::size_t, Multidegree)> rec = [&](std::size_t i, Multidegree rest) {
    if (i == n) {
      if (rest.isZero()) out.push_back(cur);
      return;
    }
    const Multidegree& vd = ring.variableDegrees[i];
    int top = 0;
    while (dominates(rest, (top + 1) * vd)) ++top;
    for (int e = top; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, rest - e * vd);
    }
    cur[i] = 0;
  };
  rec(0, deg);
  return out;
}

Sparse reduce(const Poly& f, std::uint32_t q) {
  Sparse s;
  for (const Term& t : f) {
    auto& c = s[t.exponents];
    c = mod(c + mod(t.coefficient, q), q);
  }
  std::erase_if(s, [](const auto& kv) { return kv.second == 0; });
  return s;
}

Sparse multiply(const Sparse& a, const Sparse& b, std::uint32_t q) {
  Sparse out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto& c = out[e];
      c = (c + ca * cb) % q;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::optional<Multidegree> polyDegree(const Ring& ring, const Sparse& f) {
  if (f.empty()) return std::nullopt;
  return degreeOf(ring, f.begin()->first);
}

/// Incremental rank by fraction-free elimination: a new row r is replaced by
/// b[c]·r - r[c]·b for each stored row b with pivot c, never dividing.
class RankCounter {
public:
  RankCounter(std::size_t cols, std::uint32_t q) : cols_(cols), q_(q) {}

  void add(std::vector<std::int64_t> row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivots_[k];
      if (row[c] == 0) continue;
      const std::int64_t a = rows_[k][c];
      const std::int64_t b = row[c];
      for (std::size_t j = 0; j < cols_; ++j)
        row[j] = mod(a * row[j] - b * rows_[k][j], q_);
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (row[j] != 0) {
        pivots_.push_back(j);
        rows_.push_back(std::move(row));
        return;
      }
  }

  std::size_t rank() const { return rows_.size(); }

private:
  std::size_t cols_;
  std::uint32_t q_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

struct Space {
  std::map<Exps, std::size_t> index;
  std::size_t cols = 0;
  std::uint32_t q = 0;

  std::vector<std::int64_t> dense(const Sparse& f) const {
    std::vector<std::int64_t> row(cols, 0);
    for (const auto& [e, c] : f) row[index.at(e)] = c;
    return row;
  }
};

/// Every monomial multiple of every generator landing in degree deg.
std::vector<Sparse> multiplesInDegree(const Ring& ring, const std::vector<Poly>& gens,
                                      const Multidegree& deg, std::uint32_t q) {
  std::vector<Sparse> out;
  for (const Poly& g : gens) {
    Sparse s = reduce(g, q);
    auto gd = polyDegree(ring, s);
    if (!gd) continue;
    for (const Exps& m : monomialsLex(ring, deg - *gd)) out.push_back(multiply(s, {{m, 1}}, q));
  }
  return out;
}

void addAll(RankCounter& rc, const Space& sp, const std::vector<Sparse>& rows) {
  for (const Sparse& f : rows) rc.add(sp.dense(f));
}

/// Products of n factors from gens, with repetition, order ignored.
void choose(const std::vector<Sparse>& gens, int n, std::size_t from, const Sparse& acc,
            std::uint32_t q, std::vector<Sparse>& out) {
  if (n == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = from; i < gens.size(); ++i) choose(gens, n - 1, i, multiply(acc, gens[i], q), q, out);
}

}  // namespace

std::size_t dimension(const Ring& ring, const Query& query, const Config& config) {
  if (ring.variableDegrees.empty()) throw InvalidArgument("oracle ring has no variables");
  const std::uint32_t q = config.prime;
  const std::size_t nvars = ring.variableDegrees.size();

  // Power: the product generators and the ambient degree.
  std::vector<Sparse> powerGens;
  Multidegree deg = query.degree;
  if (query.kind == Query::Kind::Power) {
    if (query.exponents.size() != query.seeds.size())
      throw InvalidArgument("oracle power query: exponent length mismatch");
    std::vector<Sparse> partial{Sparse{{Exps(nvars, 0), 1}}};
    for (std::size_t i = 0; i < query.seeds.size(); ++i) {
      std::vector<Sparse> gens;
      std::optional<Multidegree> sd;
      for (const Poly& g : query.seeds[i]) {
        Sparse s = reduce(g, q);
        // Degrees are read from the integer polynomial so a generator that
        // vanishes mod q still fixes the seed degree.
        Sparse asInt;
        for (const Term& t : g) asInt[t.exponents] = 1;
        if (!asInt.empty()) sd = polyDegree(ring, asInt);
        if (!s.empty()) gens.push_back(std::move(s));
      }
      if (!sd) throw InvalidArgument("oracle power query: empty seed");
      deg += query.exponents[i] * *sd;
      std::vector<Sparse> next;
      for (const Sparse& acc : partial) choose(gens, query.exponents[i], 0, acc, q, next);
      partial = std::move(next);
    }
    std::vector<Sparse> base;
    if (query.module.kind == Module::Kind::Ideal)
      base = multiplesInDegree(ring, query.module.generators, query.degree, q);
    else
      for (const Exps& m : monomialsLex(ring, query.degree)) base.push_back({{m, 1}});
    for (const Sparse& a : partial)
      for (const Sparse& b : base) powerGens.push_back(multiply(a, b, q));
  }

  if (deg.total() > config.maxTotalDegree)
    throw SizeBound("degree " + deg.toString() + " exceeds the oracle bound " +
                    std::to_string(config.maxTotalDegree));

  Space sp;
  sp.q = q;
  for (const Exps& m : monomialsLex(ring, deg)) sp.index.emplace(m, sp.cols++);

  RankCounter base(sp.cols, q);
  addAll(base, sp, multiplesInDegree(ring, ring.relations, deg, q));
  if (query.module.kind == Module::Kind::CyclicQuotient && query.kind != Query::Kind::Full)
    addAll(base, sp, multiplesInDegree(ring, query.module.generators, deg, q));
  const std::size_t floor = base.rank();

  switch (query.kind) {
    case Query::Kind::Full:
      return sp.cols - floor;
    case Query::Kind::Module:
      if (query.module.kind == Module::Kind::Ideal) {
        addAll(base, sp, multiplesInDegree(ring, query.module.generators, deg, q));
        return base.rank() - floor;
      }
      return sp.cols - floor;
    case Query::Kind::Power:
      addAll(base, sp, powerGens);
      return base.rank() - floor;
  }
  return 0;
}

namespace {

Poly toPoly(const IntPolynomial& f) {
  Poly p;
  for (const auto& [m, c] : f.terms()) p.push_back({m.exponents(), c});
  return p;
}

Module toModule(const ModuleSpec& m) {
  Module out;
  switch (m.kind) {
    case ModuleSpec::Kind::WholeRing: out.kind = Module::Kind::WholeRing; break;
    case ModuleSpec::Kind::Ideal: out.kind = Module::Kind::Ideal; break;
    case ModuleSpec::Kind::CyclicQuotient: out.kind = Module::Kind::CyclicQuotient; break;
  }
  for (const auto& g : m.generators) out.generators.push_back(toPoly(g));
  return out;
}

std::string describe(const PieceQuery& q, const ModuleSpec& m) {
  switch (q.kind) {
    case PieceQuery::Kind::Full: return "dim B" + q.degree.toString();
    case PieceQuery::Kind::Module: return "dim M" + q.degree.toString() + " for " + m.key();
    case PieceQuery::Kind::Power:
      return "dim H^" + q.exponents.toString() + " M" + q.base.toString() + " for " + m.key() +
             ", seeds #" + std::to_string(q.seedList);
  }
  return {};
}

}  // namespace

Report crossCheck(const PieceEngine& engine, const std::vector<std::uint32_t>& primes,
                  int maxTotalDegree) {
  Ring ring;
  for (const auto& v : engine.ring().variables()) ring.variableDegrees.push_back(v.degree);
  for (const auto& r : engine.ring().relations()) ring.relations.push_back(toPoly(r));

  Report report;
  for (const PieceQuery& pq : engine.queryLog()) {
    Query q;
    ModuleSpec spec = pq.module >= 0 ? engine.moduleSpec(pq.module) : ModuleSpec::wholeRing();
    switch (pq.kind) {
      case PieceQuery::Kind::Full:
        q.kind = Query::Kind::Full;
        q.degree = pq.degree;
        break;
      case PieceQuery::Kind::Module:
        q.kind = Query::Kind::Module;
        q.degree = pq.degree;
        break;
      case PieceQuery::Kind::Power: {
        q.kind = Query::Kind::Power;
        q.exponents = pq.exponents;
        q.degree = pq.base;
        for (const Seed& s : engine.seedList(pq.seedList).seeds) {
          std::vector<Poly> gens;
          for (const auto& g : s.generators) gens.push_back(toPoly(g));
          q.seeds.push_back(std::move(gens));
        }
        break;
      }
    }
    q.module = toModule(spec);
    if (pq.degree.total() > maxTotalDegree) {
      ++report.skipped;
      continue;
    }
    ++report.checked;
    for (std::uint32_t prime : primes) {
      const std::size_t got = dimension(ring, q, {prime, maxTotalDegree});
      if (got != pq.dim) report.mismatches.push_back({describe(pq, spec), prime, pq.dim, got});
    }
  }
  return report;
}

}  // namespace mixmult::oracle
