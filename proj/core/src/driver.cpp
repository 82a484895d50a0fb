#include "mixmult/driver.hpp"

#include <algorithm>

#include "mixmult/errors.hpp"
#include "mixmult/maps.hpp"
#include "mixmult/multiplicity.hpp"
#include "mixmult/oracle.hpp"

namespace mixmult {

using nlohmann::json;

namespace {

json toJson(const Multidegree& d) { return json(d.entries()); }

json toJson(const MultiplicityMap& m) {
  json out = json::object();
  for (const auto& [beta, v] : m) out[beta.toString()] = v;
  return out;
}

json toJson(const FitCertificate& c) {
  return {{"origin", toJson(c.origin)},
          {"extent", c.extent},
          {"validated_points", c.validatedPoints},
          {"attempts", c.attempts}};
}

json optionalBool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

struct Context {
  const ProblemDocument& doc;
  std::uint32_t prime;
  MultiplicityConfig config;
  std::vector<std::shared_ptr<PieceEngine>> engines;  // consulted by the oracle
  std::vector<std::shared_ptr<void>> keepAlive;
};

std::shared_ptr<const MultigradedRing> buildRing(const ProblemDocument& doc, std::uint32_t prime) {
  std::vector<Variable> vars;
  for (const auto& v : doc.variables) vars.push_back({v.name, v.degree});
  return std::make_shared<MultigradedRing>(prime, doc.gradingRank, std::move(vars), doc.relations);
}

PresentedPair& presentedPair(Context& ctx) {
  const std::size_t p = ctx.doc.gradingRank;
  ProblemSpec spec;
  spec.ring = buildRing(ctx.doc, ctx.prime);
  for (std::size_t i = 1; i <= p; ++i) {
    const SubspaceDecl* h = ctx.doc.subspace(static_cast<int>(i));
    if (!h) throw InvalidArgument("H" + std::to_string(i) + " is not declared");
    spec.H.push_back(h->generators);
  }
  if (ctx.doc.subspaces.size() != p)
    throw InvalidArgument("exactly H1..H" + std::to_string(p) + " must be declared");
  auto pair = std::make_shared<PresentedPair>(std::move(spec), ctx.config.window);
  ctx.engines.push_back(std::shared_ptr<PieceEngine>(pair, &pair->engine()));
  ctx.keepAlive.push_back(pair);
  return *pair;
}

LinearSystem linearSystem(const ProblemDocument& doc, const std::string& name) {
  if (doc.gradingRank != 1 || !doc.relations.empty())
    throw InvalidArgument("linear systems need a polynomial ring with grading 1");
  for (const auto& v : doc.variables)
    if (v.degree != Multidegree{1})
      throw InvalidArgument("linear systems need every variable in degree 1");
  const SubspaceDecl* h = doc.subspace(std::stoi(name.substr(1)));
  if (!h) throw UndeclaredName("undeclared subspace '" + name + "'");
  LinearSystem sys;
  sys.ambientVars = doc.variableNames();
  sys.forms = h->generators;
  sys.degree = 0;
  for (const auto& f : h->generators)
    if (!f.isZero()) sys.degree = f.terms().begin()->first.totalExponent();
  return sys;
}

Multidegree tupleParam(const Command& cmd, const std::string& key, std::size_t arity) {
  return parseTuple(cmd.params.at(key), arity);
}

json execute(Context& ctx, const Command& cmd) {
  json out;
  out["schema"] = 1;
  out["command"] = cmd.verb;
  out["prime"] = ctx.prime;
  const std::size_t p = ctx.doc.gradingRank;
  const std::string& verb = cmd.verb;

  if (verb == "projdim") {
    PresentedPair& pair = presentedPair(ctx);
    auto fit = hilbertPolynomial(pair.engine(), ctx.config.window);
    out["r"] = fit.totalDegree;
    out["certificate"] = toJson(fit.certificate);
  } else if (verb == "relmult") {
    PresentedPair& pair = presentedPair(ctx);
    auto res = relMixedMult(pair, tupleParam(cmd, "t", p), ctx.config);
    out["r"] = res.r;
    out["t"] = toJson(res.t);
    out["multiplicities"] = toJson(res.e);
    out["certificate"] = toJson(res.fit.certificate);
  } else if (verb == "brmult") {
    BuchsbaumRimResult res;
    if (cmd.params.count("module")) {
      const ModuleDecl* m = ctx.doc.module(cmd.params.at("module"));
      auto engine = std::make_shared<PieceEngine>(buildRing(ctx.doc, ctx.prime));
      ctx.engines.push_back(engine);
      std::vector<std::vector<IntPolynomial>> gens;
      for (const auto& h : ctx.doc.subspaces) gens.push_back(h.generators);
      if (gens.empty()) throw InvalidArgument("brmult needs at least one H declaration");
      const ModuleSpec spec = m->kind == ModuleDecl::Kind::Ideal
                                  ? ModuleSpec::ideal(m->generators)
                                  : ModuleSpec::cyclicQuotient(m->generators);
      res = buchsbaumRim(*engine, spec, engine->makeSeeds(gens), ctx.config);
      out["module"] = m->name;
    } else {
      res = buchsbaumRim(presentedPair(ctx), ctx.config);
    }
    out["r"] = res.r;
    out["multiplicities"] = toJson(res.br);
    out["mixed"] = toJson(res.mixed);
    out["certificate"] = toJson(res.fit.certificate);
  } else if (verb == "jsharp") {
    auto res = jSharp(presentedPair(ctx), tupleParam(cmd, "t", p), ctx.config);
    out["r"] = res.r;
    out["t"] = toJson(res.t);
    out["multiplicities"] = toJson(res.zeroAlpha);
    out["mixed"] = toJson(res.mixed);
    out["certificate"] = toJson(res.fit.certificate);
  } else if (verb == "einf") {
    auto res = eInfinity(presentedPair(ctx), ctx.config);
    out["r"] = res.br.r;
    out["multiplicities"] = toJson(res.eInfinity);
    json schedule = json::array();
    for (const auto& [t, e] : res.schedule)
      schedule.push_back({{"t", toJson(t)}, {"multiplicities", toJson(e)}});
    out["schedule"] = schedule;
    out["certificate"] = toJson(res.br.fit.certificate);
  } else if (verb == "decomp") {
    PresentedPair& pair = presentedPair(ctx);
    const Multidegree t = tupleParam(cmd, "t", p);
    const Multidegree beta = tupleParam(cmd, "beta", p);
    auto w = decompositionCheck(pair, t, beta, ctx.config);
    out["r"] = pair.projDim();
    out["t"] = toJson(t);
    out["beta"] = toJson(beta);
    out["decomposition"] = {
        {"relmult", w.relMixed}, {"br", w.br}, {"jsharp", w.jSharp}, {"holds", w.holds}};
  } else if (verb == "criteria") {
    auto v = criteria(presentedPair(ctx), ctx.config);
    out["r"] = v.r;
    out["t"] = toJson(Multidegree::constant(p, 1));
    out["verdicts"] = {{"finite", optionalBool(v.finite)},
                       {"finiteBirational", optionalBool(v.finiteBirational)}};
    out["multiplicities"] = toJson(v.e);
    out["e_infinity"] = toJson(v.eInfinity);
    out["segre"] = {{"e", v.segreE ? json(*v.segreE) : json(nullptr)},
                    {"e_infinity", v.segreEInfinity ? json(*v.segreEInfinity) : json(nullptr)}};
    json certs = json::array();
    for (const auto& c : v.certificates) certs.push_back(toJson(c));
    out["certificates"] = certs;
    if (!v.certificates.empty()) out["certificate"] = toJson(v.certificates.front());
    out["notes"] = v.notes;
  } else if (verb == "suv") {
    if (p != 1) throw InvalidArgument("suv needs grading 1");
    const int t = tupleParam(cmd, "t", 1)[0];
    PresentedPair& pair = presentedPair(ctx);
    out["multiplicity"] = suvRelativeMult(pair, t, ctx.config);
    out["r"] = pair.projDim();
    out["t"] = json::array({t});
  } else if (verb == "mapdeg") {
    const std::string name = cmd.params.count("system") ? cmd.params.at("system") : "H1";
    const LinearSystem sys = linearSystem(ctx.doc, name);
    auto engine = std::make_shared<PieceEngine>(ambientRing(sys, ctx.prime));
    ctx.engines.push_back(engine);
    auto g = analyzeSystem(*engine, sys, ctx.config.window);
    out["system"] = name;
    out["r"] = static_cast<int>(sys.ambientVars.size()) - 1;
    out["projective_degrees"] = g.projDegrees;
    out["graph_multidegrees"] = toJson(g.gamma);
    out["exceptional_multidegrees"] = toJson(g.exceptional);
    out["certificate"] = toJson(g.certificate);
  } else if (verb == "compare") {
    const LinearSystem small = linearSystem(ctx.doc, cmd.params.at("small"));
    const LinearSystem big = linearSystem(ctx.doc, cmd.params.at("big"));
    auto pair = std::make_shared<ReesPair>(small, big, ctx.prime);
    ctx.engines.push_back(std::shared_ptr<PieceEngine>(pair, &pair->engine()));
    ctx.keepAlive.push_back(pair);
    auto v = compareLinearSystems(*pair, small, big, ctx.config);
    out["r"] = pair->projDim();
    out["t"] = json::array({1, 1});
    out["verdicts"] = {{"finite_birational", v.finiteBirational},
                       {"same_projective_degrees", v.sameProjDegrees},
                       {"same_exceptional_multidegrees", v.sameExceptional}};
    out["multiplicities"] = toJson(v.e);
    out["projective_degrees"] = {{"small", v.small.projDegrees}, {"big", v.big.projDegrees}};
    out["exceptional_multidegrees"] = {{"small", toJson(v.small.exceptional)},
                                       {"big", toJson(v.big.exceptional)}};
    out["certificate"] = toJson(v.certificate);
  } else {
    throw InvalidArgument("unknown command '" + verb + "'");
  }
  return out;
}

MultiplicityConfig configFor(const Command& cmd, const RunFlags& flags) {
  MultiplicityConfig config;
  config.window.threads = flags.threads;
  if (auto it = cmd.params.find("origin"); it != cmd.params.end())
    config.window.initialOrigin = std::stoi(it->second);
  if (auto it = cmd.params.find("shell"); it != cmd.params.end())
    config.window.validationShell = std::stoi(it->second);
  if (auto it = cmd.params.find("maxorigin"); it != cmd.params.end())
    config.window.maxOrigin = std::stoi(it->second);
  if (flags.maxOrigin) config.window.maxOrigin = *flags.maxOrigin;
  return config;
}

/// The parts of a result that must not depend on the prime.
json invariantPart(json r) {
  for (const char* k : {"prime", "certificate", "certificates", "notes", "oracle"}) r.erase(k);
  return r;
}

}  // namespace

RunOutcome run(const ProblemDocument& doc, const RunFlags& flags) {
  const std::uint32_t prime = flags.prime.value_or(doc.prime.value_or(kDefaultPrime));
  if (doc.commands.empty()) throw InvalidArgument("document has no cmd statement");
  RunOutcome outcome;
  json results = json::array();
  for (const Command& cmd : doc.commands) {
    Context ctx{doc, prime, configFor(cmd, flags), {}, {}};
    json result = execute(ctx, cmd);

    if (flags.oracle) {
      std::vector<std::uint32_t> primes{prime};
      const std::uint32_t second = flags.secondPrime.value_or(oracle::kOraclePrime);
      if (second != prime) primes.push_back(second);
      json mism = json::array();
      std::size_t checked = 0, skipped = 0;
      for (const auto& engine : ctx.engines) {
        auto rep = oracle::crossCheck(*engine, primes, flags.oracleMaxDegree);
        checked += rep.checked;
        skipped += rep.skipped;
        for (const auto& m : rep.mismatches)
          mism.push_back({{"query", m.query},
                          {"prime", m.prime},
                          {"engine", m.expected},
                          {"oracle", m.actual}});
      }
      std::sort(mism.begin(), mism.end());
      outcome.mismatches += mism.size();
      result["oracle"] = {{"primes", primes},
                          {"checked", checked},
                          {"skipped", skipped},
                          {"mismatches", mism}};
    }

    if (flags.secondPrime && *flags.secondPrime != prime) {
      Context again{doc, *flags.secondPrime, ctx.config, {}, {}};
      const json other = execute(again, cmd);
      const bool agrees = invariantPart(result) == invariantPart(other);
      if (!agrees) ++outcome.mismatches;
      result["second_prime"] = {{"prime", *flags.secondPrime}, {"agrees", agrees}};
    }
    results.push_back(std::move(result));
  }
  outcome.result = results.size() == 1 ? results.front() : results;
  outcome.exitCode = outcome.mismatches ? kExitMismatch : kExitOk;
  return outcome;
}

int exitCodeFor(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UndeclaredName*>(&e) ||
      dynamic_cast<const InhomogeneousRelation*>(&e))
    return kExitParse;
  if (dynamic_cast<const NoStabilization*>(&e)) return kExitNoStabilization;
  return kExitError;
}

json errorObject(const std::exception& e) {
  json out;
  if (const auto* err = dynamic_cast<const Error*>(&e)) out["error"] = err->kind();
  else out["error"] = "InternalError";
  out["message"] = e.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    out["line"] = pe->line();
    out["column"] = pe->column();
  }
  return out;
}

}  // namespace mixmult
