#include "mixmult/piece.hpp"

#include <algorithm>

#include "mixmult/errors.hpp"

namespace mixmult {

// ---------------------------------------------------------------------------
// Monomial enumeration

namespace {

void enumerateInto(const MultigradedRing& ring, std::size_t var, Multidegree& remaining,
                   std::vector<int>& exps, std::vector<Monomial>& out) {
  const auto& vars = ring.variables();
  if (var == vars.size()) {
    if (remaining.isZero()) out.emplace_back(exps);
    return;
  }
  const Multidegree& d = vars[var].degree;
  int maxExp = -1;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] == 0) continue;
    const int bound = remaining[j] / d[j];
    maxExp = maxExp < 0 ? bound : std::min(maxExp, bound);
  }
  for (int e = maxExp; e >= 0; --e) {
    exps[var] = e;
    for (std::size_t j = 0; j < d.size(); ++j) remaining[j] -= e * d[j];
    enumerateInto(ring, var + 1, remaining, exps, out);
    for (std::size_t j = 0; j < d.size(); ++j) remaining[j] += e * d[j];
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> enumMonomials(const MultigradedRing& ring, const Multidegree& deg) {
  if (deg.size() != ring.gradingRank()) throw InvalidArgument("degree has wrong rank");
  std::vector<Monomial> out;
  if (!deg.isNonNegative()) return out;
  Multidegree remaining = deg;
  std::vector<int> exps(ring.numVars(), 0);
  enumerateInto(ring, 0, remaining, exps, out);
  std::sort(out.begin(), out.end(), grevlexGreater);
  return out;
}

// ---------------------------------------------------------------------------

std::string ModuleSpec::key() const {
  std::string s;
  switch (kind) {
    case Kind::WholeRing: return "B";
    case Kind::Ideal: s = "I"; break;
    case Kind::CyclicQuotient: s = "Q"; break;
  }
  for (const auto& g : generators) {
    s += '[';
    for (const auto& [m, c] : g.terms()) {
      s += std::to_string(c) + ':';
      for (int e : m.exponents()) s += std::to_string(e) + ',';
      s += ';';
    }
    s += ']';
  }
  return s;
}

Multidegree SeedList::shift(const Multidegree& exponents) const {
  if (exponents.size() != seeds.size()) throw InvalidArgument("exponent vector length mismatch");
  if (seeds.empty()) throw InvalidArgument("empty seed list");
  Multidegree s = Multidegree::zero(seeds.front().degree.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) s += exponents[i] * seeds[i].degree;
  return s;
}

struct PieceEngine::DegreeData {
  Multidegree degree;
  std::vector<Monomial> monomials;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  RrefMatrix ideal;
  std::vector<int> idealPivot;
  std::vector<int> stdIndex;            // monomial column -> quotient coordinate
  std::vector<std::uint32_t> stdCols;   // quotient coordinate -> monomial column
  std::shared_ptr<const std::vector<Monomial>> allBasis;
  std::shared_ptr<const std::vector<Monomial>> quotientBasis;
};

std::size_t PieceEngine::PowerKeyHash::operator()(const PowerKey& k) const noexcept {
  MultidegreeHash h;
  std::size_t x = h(k.exponents) * 31 + h(k.v);
  x ^= static_cast<std::size_t>(k.seeds + 7) * 0x9e3779b97f4a7c15ULL;
  x ^= static_cast<std::size_t>(k.module + 3) * 0xc2b2ae3d27d4eb4fULL;
  return x;
}

std::size_t PieceEngine::PairHash::operator()(
    const std::pair<Multidegree, Multidegree>& k) const noexcept {
  MultidegreeHash h;
  return h(k.first) * 1000003ULL ^ h(k.second);
}

PieceEngine::PieceEngine(std::shared_ptr<const MultigradedRing> ring) : ring_(std::move(ring)) {
  if (!ring_) throw InvalidArgument("null ring");
  registerModule(ModuleSpec::wholeRing());
}

void PieceEngine::record(PieceQuery q) {
  std::lock_guard lock(logMutex_);
  log_.push_back(std::move(q));
}

std::shared_ptr<const PieceEngine::DegreeData> PieceEngine::buildDegreeData(
    const Multidegree& deg) const {
  auto d = std::make_shared<DegreeData>();
  d->degree = deg;
  d->monomials = enumMonomials(*ring_, deg);
  const std::size_t n = d->monomials.size();
  for (std::uint32_t i = 0; i < n; ++i) d->index.emplace(d->monomials[i], i);

  const PrimeField& f = ring_->field();
  EchelonBuilder builder(f, n);
  for (std::size_t r = 0; r < ring_->relations().size(); ++r) {
    const Multidegree& rd = ring_->relationDegree(r);
    if (!dominates(deg, rd)) continue;
    const auto& rel = ring_->relations()[r];
    for (const Monomial& m : enumMonomials(*ring_, deg - rd)) {
      std::vector<SparseEntry> row;
      row.reserve(rel.terms().size());
      for (const auto& [t, c] : rel.terms()) row.push_back({d->index.at(m * t), f.fromInteger(c)});
      SparseRow canon = canonicalRow(f, std::move(row));
      if (!canon.empty()) builder.insert(canon);
      if (builder.rank() == n) break;
    }
  }
  d->ideal = std::move(builder).finish();
  d->idealPivot = d->ideal.pivotIndex();
  d->stdIndex.assign(n, -1);
  std::vector<Monomial> standard;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (d->idealPivot[c] >= 0) continue;
    d->stdIndex[c] = static_cast<int>(d->stdCols.size());
    d->stdCols.push_back(c);
    standard.push_back(d->monomials[c]);
  }
  d->allBasis = std::make_shared<const std::vector<Monomial>>(d->monomials);
  d->quotientBasis = std::make_shared<const std::vector<Monomial>>(std::move(standard));
  return d;
}

std::shared_ptr<const PieceEngine::DegreeData> PieceEngine::degreeData(const Multidegree& deg) {
  if (deg.size() != ring_->gradingRank()) throw InvalidArgument("degree has wrong rank");
  {
    std::shared_lock lock(degreeMutex_);
    auto it = degrees_.find(deg);
    if (it != degrees_.end()) return it->second;
  }
  auto built = buildDegreeData(deg);
  bool inserted = false;
  {
    std::unique_lock lock(degreeMutex_);
    auto [it, ins] = degrees_.try_emplace(deg, built);
    inserted = ins;
    built = it->second;
  }
  if (inserted) {
    PieceQuery q;
    q.kind = PieceQuery::Kind::Full;
    q.degree = deg;
    q.dim = built->stdCols.size();
    record(std::move(q));
  }
  return built;
}

SubspacePiece PieceEngine::makePiece(const DegreeData& d, RrefMatrix m) const {
  SubspacePiece p;
  p.ringId = ring_->id();
  p.prime = ring_->prime();
  p.degree = d.degree;
  p.basis = d.quotientBasis;
  p.matrix = std::move(m);
  return p;
}

SubspacePiece PieceEngine::idealPiece(const Multidegree& deg) {
  auto d = degreeData(deg);
  SubspacePiece p;
  p.ringId = ring_->id();
  p.prime = ring_->prime();
  p.degree = deg;
  p.basis = d->allBasis;
  p.matrix = d->ideal;
  return p;
}

std::vector<Monomial> PieceEngine::quotientBasis(const Multidegree& deg) {
  return *degreeData(deg)->quotientBasis;
}

std::size_t PieceEngine::dimension(const Multidegree& deg) {
  return degreeData(deg)->stdCols.size();
}

SparseRow PieceEngine::liftAndReduce(const DegreeData& target,
                                     std::vector<SparseEntry> monomialRow) const {
  const PrimeField& f = ring_->field();
  SparseRow reduced =
      reduceAgainst(f, target.ideal, target.idealPivot, canonicalRow(f, std::move(monomialRow)));
  for (auto& e : reduced) e.col = static_cast<std::uint32_t>(target.stdIndex[e.col]);
  return reduced;
}

SparseRow PieceEngine::polynomialRow(const DegreeData& target, const IntPolynomial& f) const {
  std::vector<SparseEntry> row;
  row.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) {
    auto it = target.index.find(m);
    if (it == target.index.end()) throw InhomogeneousInput("term outside the target degree");
    row.push_back({it->second, ring_->field().fromInteger(c)});
  }
  return liftAndReduce(target, std::move(row));
}

std::vector<std::uint32_t> PieceEngine::normalForm(const IntPolynomial& f) {
  auto deg = ring_->degreeOf(f);
  if (!deg) return {};
  auto d = degreeData(*deg);
  std::vector<std::uint32_t> out(d->stdCols.size(), 0);
  for (const auto& e : polynomialRow(*d, f)) out[e.col] = e.val;
  return out;
}

SubspacePiece PieceEngine::fullPiece(const Multidegree& deg) {
  auto d = degreeData(deg);
  RrefMatrix m;
  m.cols = d->stdCols.size();
  for (std::uint32_t i = 0; i < m.cols; ++i) m.rows.push_back({{i, 1}});
  return makePiece(*d, std::move(m));
}

SubspacePiece PieceEngine::span(const Multidegree& deg, const std::vector<IntPolynomial>& elements) {
  auto d = degreeData(deg);
  EchelonBuilder builder(ring_->field(), d->stdCols.size());
  for (const auto& g : elements) {
    auto gd = ring_->degreeOf(g);
    if (!gd) continue;
    if (*gd != deg)
      throw InhomogeneousInput("element of degree " + gd->toString() + " in a span of degree " +
                               deg.toString());
    SparseRow row = polynomialRow(*d, g);
    if (!row.empty()) builder.insert(row);
  }
  return makePiece(*d, std::move(builder).finish());
}

std::shared_ptr<const std::vector<std::uint32_t>> PieceEngine::productTable(const DegreeData& a,
                                                                            const DegreeData& b) {
  auto key = std::make_pair(a.degree, b.degree);
  {
    std::shared_lock lock(tableMutex_);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
  }
  auto target = degreeData(a.degree + b.degree);
  const auto& qa = *a.quotientBasis;
  const auto& qb = *b.quotientBasis;
  auto table = std::make_shared<std::vector<std::uint32_t>>(qa.size() * qb.size());
  for (std::size_t i = 0; i < qa.size(); ++i)
    for (std::size_t j = 0; j < qb.size(); ++j)
      (*table)[i * qb.size() + j] = target->index.at(qa[i] * qb[j]);
  std::unique_lock lock(tableMutex_);
  auto [it, ins] = tables_.try_emplace(key, std::move(table));
  return it->second;
}

SubspacePiece PieceEngine::product(const SubspacePiece& u, const SubspacePiece& v) {
  for (const SubspacePiece* p : {&u, &v}) {
    if (p->ringId != ring_->id() || p->prime != ring_->prime())
      throw RingMismatch("subspace belongs to a different ring or field");
  }
  auto da = degreeData(u.degree);
  auto db = degreeData(v.degree);
  if (u.ambientDim() != da->stdCols.size() || v.ambientDim() != db->stdCols.size())
    throw InvalidArgument("product expects pieces in quotient coordinates");
  auto target = degreeData(u.degree + v.degree);
  const std::size_t targetDim = target->stdCols.size();
  EchelonBuilder builder(ring_->field(), targetDim);
  if (u.dim() > 0 && v.dim() > 0 && targetDim > 0) {
    auto table = productTable(*da, *db);
    const std::size_t stride = db->stdCols.size();
    const PrimeField& f = ring_->field();
    std::vector<SparseEntry> scratch;
    for (const auto& ur : u.matrix.rows) {
      for (const auto& vr : v.matrix.rows) {
        scratch.clear();
        for (const auto& a : ur)
          for (const auto& b : vr)
            scratch.push_back({(*table)[a.col * stride + b.col], f.mul(a.val, b.val)});
        SparseRow row = liftAndReduce(*target, scratch);
        if (!row.empty()) builder.insert(row);
        if (builder.rank() == targetDim) break;
      }
      if (builder.rank() == targetDim) break;
    }
  }
  return makePiece(*target, std::move(builder).finish());
}

SubspacePiece PieceEngine::sum(const SubspacePiece& u, const SubspacePiece& v) {
  if (u.ringId != v.ringId || u.prime != v.prime) throw RingMismatch("sum across rings");
  if (u.degree != v.degree) throw InvalidArgument("sum of pieces of different degrees");
  auto d = degreeData(u.degree);
  EchelonBuilder builder(ring_->field(), u.ambientDim());
  for (const auto& r : u.matrix.rows) builder.insert(r);
  for (const auto& r : v.matrix.rows) builder.insert(r);
  return makePiece(*d, std::move(builder).finish());
}

bool PieceEngine::contains(const SubspacePiece& outer, const SubspacePiece& inner) {
  if (outer.ringId != inner.ringId || outer.prime != inner.prime)
    throw RingMismatch("containment across rings");
  if (outer.degree != inner.degree) return inner.dim() == 0;
  if (inner.dim() > outer.dim()) return false;
  auto pivots = outer.matrix.pivotIndex();
  for (const auto& r : inner.matrix.rows)
    if (!reduceAgainst(ring_->field(), outer.matrix, pivots, r).empty()) return false;
  return true;
}

SeedList PieceEngine::makeSeeds(const std::vector<std::vector<IntPolynomial>>& generators) {
  auto list = std::make_unique<SeedList>();
  for (const auto& gens : generators) {
    std::optional<Multidegree> deg;
    for (const auto& g : gens) {
      auto gd = ring_->degreeOf(g);
      if (!gd) continue;
      if (deg && *deg != *gd)
        throw InhomogeneousInput("generators of one H_i must share a degree");
      deg = gd;
    }
    if (!deg) throw InvalidArgument("each H_i needs a nonzero generator");
    Seed s;
    s.degree = *deg;
    s.generators = gens;
    s.piece = span(*deg, gens);
    list->seeds.push_back(std::move(s));
  }
  std::lock_guard lock(registryMutex_);
  list->id = static_cast<int>(seedLists_.size());
  seedLists_.push_back(std::move(list));
  return *seedLists_.back();
}

const SeedList& PieceEngine::seedList(int id) const {
  std::lock_guard lock(registryMutex_);
  return *seedLists_.at(static_cast<std::size_t>(id));
}

ModuleSpec PieceEngine::moduleSpec(int id) const {
  std::lock_guard lock(registryMutex_);
  return modules_.at(static_cast<std::size_t>(id));
}

int PieceEngine::registerModule(const ModuleSpec& module) {
  const std::string key = module.key();
  std::lock_guard lock(registryMutex_);
  auto it = moduleIds_.find(key);
  if (it != moduleIds_.end()) return it->second;
  for (const auto& g : module.generators) ring_->degreeOf(g);  // homogeneity check
  const int id = static_cast<int>(modules_.size());
  modules_.push_back(module);
  moduleIds_.emplace(key, id);
  return id;
}

SubspacePiece PieceEngine::quotientRelations(const ModuleSpec& module, const Multidegree& deg) {
  const int mid = registerModule(module);
  PowerKey key{-2, mid, Multidegree{}, deg};
  {
    std::shared_lock lock(powerMutex_);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
  }
  std::vector<IntPolynomial> multiples;
  for (const auto& g : module.generators) {
    auto gd = ring_->degreeOf(g);
    if (!gd || !dominates(deg, *gd)) continue;
    for (const Monomial& m : enumMonomials(*ring_, deg - *gd))
      multiples.push_back(IntPolynomial::monomial(m) * g);
  }
  SubspacePiece p = span(deg, multiples);
  std::unique_lock lock(powerMutex_);
  return powers_.try_emplace(key, std::move(p)).first->second;
}

SubspacePiece PieceEngine::moduleBase(const ModuleSpec& module, const Multidegree& v) {
  const int mid = registerModule(module);
  PowerKey key{-1, mid, Multidegree{}, v};
  {
    std::shared_lock lock(powerMutex_);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
  }
  SubspacePiece p;
  switch (module.kind) {
    case ModuleSpec::Kind::WholeRing:
    case ModuleSpec::Kind::CyclicQuotient:
      p = fullPiece(v);
      break;
    case ModuleSpec::Kind::Ideal:
      p = quotientRelations(module, v);
      break;
  }
  bool inserted;
  {
    std::unique_lock lock(powerMutex_);
    auto [it, ins] = powers_.try_emplace(key, p);
    inserted = ins;
    p = it->second;
  }
  if (inserted) {
    PieceQuery q;
    q.kind = PieceQuery::Kind::Module;
    q.module = mid;
    q.degree = v;
    q.dim = module.kind == ModuleSpec::Kind::CyclicQuotient
                ? p.dim() - quotientRelations(module, v).dim()
                : p.dim();
    record(std::move(q));
  }
  return p;
}

SubspacePiece PieceEngine::powerPiece(const SeedList& seeds, const Multidegree& exponents,
                                      const ModuleSpec& module, const Multidegree& v) {
  if (exponents.size() != seeds.size()) throw InvalidArgument("exponent vector length mismatch");
  if (!exponents.isNonNegative())
    throw NegativeExponent("negative exponent " + exponents.toString());
  if (v.size() != ring_->gradingRank()) throw InvalidArgument("degree has wrong rank");
  const int mid = registerModule(module);
  PowerKey key{seeds.id, mid, exponents, v};
  {
    std::shared_lock lock(powerMutex_);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
  }

  SubspacePiece p;
  if (exponents.isZero()) {
    p = moduleBase(module, v);
  } else {
    std::size_t i = exponents.size();
    while (exponents[--i] == 0) {
    }
    Multidegree lower = exponents;
    lower[i] -= 1;
    p = product(seeds.seeds[i].piece, powerPiece(seeds, lower, module, v));
    if (module.kind == ModuleSpec::Kind::CyclicQuotient)
      p = sum(p, quotientRelations(module, p.degree));
  }

  bool inserted;
  {
    std::unique_lock lock(powerMutex_);
    auto [it, ins] = powers_.try_emplace(key, p);
    inserted = ins;
    p = it->second;
  }
  if (inserted) {
    PieceQuery q;
    q.kind = PieceQuery::Kind::Power;
    q.seedList = seeds.id;
    q.module = mid;
    q.exponents = exponents;
    q.base = v;
    q.degree = p.degree;
    q.dim = module.kind == ModuleSpec::Kind::CyclicQuotient
                ? p.dim() - quotientRelations(module, p.degree).dim()
                : p.dim();
    record(std::move(q));
  }
  return p;
}

std::size_t PieceEngine::powerPieceDim(const SeedList& seeds, const Multidegree& exponents,
                                       const ModuleSpec& module, const Multidegree& v) {
  SubspacePiece p = powerPiece(seeds, exponents, module, v);
  if (module.kind == ModuleSpec::Kind::CyclicQuotient)
    return p.dim() - quotientRelations(module, p.degree).dim();
  return p.dim();
}

std::size_t PieceEngine::moduleDim(const ModuleSpec& module, const Multidegree& deg) {
  switch (module.kind) {
    case ModuleSpec::Kind::WholeRing:
      return dimension(deg);
    case ModuleSpec::Kind::Ideal:
      return moduleBase(module, deg).dim();
    case ModuleSpec::Kind::CyclicQuotient:
      moduleBase(module, deg);
      return dimension(deg) - quotientRelations(module, deg).dim();
  }
  return 0;
}

std::vector<PieceQuery> PieceEngine::queryLog() const {
  std::lock_guard lock(logMutex_);
  return log_;
}

void PieceEngine::clearCache() {
  {
    std::unique_lock lock(degreeMutex_);
    degrees_.clear();
  }
  {
    std::unique_lock lock(tableMutex_);
    tables_.clear();
  }
  {
    std::unique_lock lock(powerMutex_);
    powers_.clear();
  }
  std::lock_guard lock(logMutex_);
  log_.clear();
}

bool PieceEngine::corruptPowerPieceForTesting(const SeedList& seeds, const Multidegree& exponents,
                                              const ModuleSpec& module,
                                              const Multidegree& v) {
  powerPiece(seeds, exponents, module, v);
  const int mid = registerModule(module);
  PowerKey key{seeds.id, mid, exponents, v};
  std::unique_lock lock(powerMutex_);
  SubspacePiece& p = powers_.at(key);
  if (p.matrix.rows.empty()) return false;
  p.matrix.rows.pop_back();
  std::lock_guard logLock(logMutex_);
  for (auto& q : log_) {
    if (q.kind == PieceQuery::Kind::Power && q.seedList == seeds.id && q.module == mid &&
        q.exponents == exponents && q.base == v)
      q.dim -= 1;
  }
  return true;
}

}  // namespace mixmult
