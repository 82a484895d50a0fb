#include "mixmult/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "mixmult/errors.hpp"
#include "mixmult/field.hpp"

namespace mixmult {

std::vector<std::string> ProblemDocument::variableNames() const {
  std::vector<std::string> out;
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

const SubspaceDecl* ProblemDocument::subspace(int index) const {
  for (const auto& h : subspaces)
    if (h.index == index) return &h;
  return nullptr;
}

const ModuleDecl* ProblemDocument::module(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return &m;
  return nullptr;
}

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// A view of one line with a cursor; columns are 1-based.
class Cursor {
public:
  Cursor(const std::string& text, int line) : s_(text), line_(line) {}

  void skipSpace() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool atEnd() {
    skipSpace();
    return pos_ >= s_.size();
  }
  char peek() {
    skipSpace();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t pos() const { return pos_; }
  /// Position of the next token.
  std::size_t mark() {
    skipSpace();
    return pos_;
  }
  int line() const { return line_; }
  const std::string& text() const { return s_; }

  std::string ident() {
    skipSpace();
    if (pos_ >= s_.size() || !identStart(s_[pos_])) fail("expected a name");
    const std::size_t b = pos_;
    while (pos_ < s_.size() && identChar(s_[pos_])) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  std::int64_t integer() {
    skipSpace();
    const std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected an integer", b);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s_.data() + b, s_.data() + pos_, v);
    if (ec != std::errc()) fail("integer out of range", b);
    return v;
  }

  /// The rest of the line up to the next top-level occurrence of `stop` (or
  /// the end), returned with its starting offset.
  std::pair<std::string, std::size_t> until(char stop) {
    skipSpace();
    const std::size_t b = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && c == stop) break;
      ++pos_;
    }
    return {s_.substr(b, pos_ - b), b};
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(line_, static_cast<int>(at) + 1, msg);
  }

private:
  const std::string& s_;
  int line_;
  std::size_t pos_ = 0;
};

/// Recursive descent over + - * ^ and parentheses.
class PolyParser {
public:
  PolyParser(Cursor& cur, const std::vector<std::string>& names) : cur_(cur), names_(names) {}

  IntPolynomial expr() {
    IntPolynomial acc = term();
    for (;;) {
      if (cur_.accept('+')) acc += term();
      else if (cur_.accept('-')) acc -= term();
      else return acc;
    }
  }

private:
  IntPolynomial term() {
    IntPolynomial acc = unary();
    while (cur_.accept('*')) acc = acc * unary();
    return acc;
  }
  IntPolynomial unary() {
    if (cur_.accept('-')) return unary().negated();
    if (cur_.accept('+')) return unary();
    return power();
  }
  IntPolynomial power() {
    IntPolynomial base = atom();
    if (cur_.accept('^')) {
      const std::int64_t e = cur_.integer();
      if (e > 1000) cur_.fail("exponent too large");
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }
  IntPolynomial atom() {
    const std::size_t n = names_.size();
    const char c = cur_.peek();
    if (c == '(') {
      cur_.expect('(');
      IntPolynomial e = expr();
      cur_.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return IntPolynomial::constant(n, cur_.integer());
    if (identStart(c)) {
      const std::size_t at = cur_.mark();
      const std::string name = cur_.ident();
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end())
        throw UndeclaredName("line " + std::to_string(cur_.line()) + ", column " +
                             std::to_string(at + 1) + ": undeclared variable '" + name + "'");
      return IntPolynomial::monomial(
          Monomial::variable(n, static_cast<std::size_t>(it - names_.begin())));
    }
    if (c == '\0') cur_.fail("unexpected end of polynomial");
    cur_.fail(std::string("unexpected character '") + c + "'");
  }

  Cursor& cur_;
  const std::vector<std::string>& names_;
};

Multidegree parseTupleAt(Cursor& cur, std::size_t arity) {
  const std::size_t start = cur.mark();
  std::vector<int> v;
  if (cur.accept('(')) {
    do {
      bool neg = cur.accept('-');
      const std::int64_t x = cur.integer();
      v.push_back(static_cast<int>(neg ? -x : x));
    } while (cur.accept(','));
    cur.expect(')');
  } else {
    v.push_back(static_cast<int>(cur.integer()));
  }
  if (v.size() != arity)
    cur.fail("expected a tuple of length " + std::to_string(arity), start);
  return Multidegree(std::move(v));
}

/// Parses the comma-separated polynomials filling `cur` up to `close` (or the
/// end of the line).
std::vector<IntPolynomial> polyList(Cursor& cur, const std::vector<std::string>& names,
                                    bool parenthesized) {
  std::vector<IntPolynomial> out;
  do {
    PolyParser pp(cur, names);
    out.push_back(pp.expr());
  } while (cur.accept(','));
  if (parenthesized) cur.expect(')');
  if (!cur.atEnd()) cur.fail("unexpected trailing text");
  return out;
}

std::optional<Multidegree> degreeIn(const ProblemDocument& doc, const IntPolynomial& f,
                                    int line, const std::string& what) {
  std::optional<Multidegree> deg;
  for (const auto& [m, c] : f.terms()) {
    Multidegree d = Multidegree::zero(doc.gradingRank);
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * doc.variables[i].degree;
    if (deg && *deg != d)
      throw InhomogeneousRelation("line " + std::to_string(line) + ": " + what + " " +
                                  f.toString(doc.variableNames()) +
                                  " mixes degrees " + deg->toString() + " and " + d.toString());
    deg = d;
  }
  return deg;
}

struct VerbSpec {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, VerbSpec>& verbs() {
  static const std::map<std::string, VerbSpec> table{
      {"projdim", {{}, {}}},
      {"relmult", {{"t"}, {}}},
      {"brmult", {{}, {"module"}}},
      {"jsharp", {{"t"}, {}}},
      {"einf", {{}, {}}},
      {"decomp", {{"t", "beta"}, {}}},
      {"criteria", {{}, {}}},
      {"suv", {{"t"}, {}}},
      {"mapdeg", {{}, {"system"}}},
      {"compare", {{"small", "big"}, {}}},
  };
  return table;
}

const std::set<std::string>& windowKeys() {
  static const std::set<std::string> keys{"origin", "shell", "maxorigin"};
  return keys;
}

int subspaceIndex(const std::string& name) {
  if (name.size() < 2 || name[0] != 'H') return -1;
  int v = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
    v = v * 10 + (name[i] - '0');
    if (v > 1000000) return -1;
  }
  return v;
}

void validateCommand(const ProblemDocument& doc, const Command& cmd, Cursor& cur,
                     const std::map<std::string, std::size_t>& valueAt) {
  auto it = verbs().find(cmd.verb);
  const VerbSpec& spec = it->second;
  for (const auto& key : spec.required)
    if (!cmd.params.count(key)) cur.fail("command '" + cmd.verb + "' needs " + key + "=", 0);
  for (const auto& [key, value] : cmd.params) {
    const std::size_t at = valueAt.at(key);
    if (!spec.required.count(key) && !spec.optional.count(key) && !windowKeys().count(key))
      cur.fail("unknown parameter '" + key + "' for command '" + cmd.verb + "'", at);
    std::string padded(at, ' ');
    padded += value;
    Cursor vc(padded, cur.line());
    if (key == "t" || key == "beta") {
      const std::size_t arity = cmd.verb == "suv" ? 1 : doc.gradingRank;
      parseTupleAt(vc, arity);
      if (!vc.atEnd()) vc.fail("unexpected trailing text");
    } else if (windowKeys().count(key)) {
      vc.integer();
      if (!vc.atEnd()) vc.fail("unexpected trailing text");
    } else if (key == "module") {
      if (!doc.module(value))
        throw UndeclaredName("line " + std::to_string(cur.line()) + ", column " +
                             std::to_string(at + 1) + ": undeclared module '" + value + "'");
    } else if (key == "system" || key == "small" || key == "big") {
      const int idx = subspaceIndex(value);
      if (idx < 0) vc.fail("expected a subspace name such as H1");
      if (!doc.subspace(idx))
        throw UndeclaredName("line " + std::to_string(cur.line()) + ", column " +
                             std::to_string(at + 1) + ": undeclared subspace '" + value + "'");
    }
  }
}

std::string tupleText(const Multidegree& d) {
  return d.size() == 1 ? std::to_string(d[0]) : d.toString();
}

}  // namespace

Multidegree parseTuple(const std::string& text, std::size_t arity) {
  Cursor cur(text, 1);
  Multidegree d = parseTupleAt(cur, arity);
  if (!cur.atEnd()) cur.fail("unexpected trailing text");
  return d;
}

ProblemDocument parseProblem(const std::string& text) {
  ProblemDocument doc;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  bool sawGrading = false;
  bool sawPolynomial = false;
  bool sawStatement = false;

  while (std::getline(in, raw)) {
    ++lineNo;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Cursor cur(raw, lineNo);
    if (cur.atEnd()) continue;
    sawStatement = true;
    const std::size_t kwAt = cur.mark();
    const std::string kw = cur.ident();

    if (kw == "prime") {
      if (doc.prime) cur.fail("prime declared twice", kwAt);
      const std::int64_t p = cur.integer();
      if (p < 2 || p >= (std::int64_t{1} << 31) || !isPrime(static_cast<std::uint32_t>(p)))
        cur.fail("prime must be a prime below 2^31");
      doc.prime = static_cast<std::uint32_t>(p);
    } else if (kw == "grading") {
      if (sawGrading) cur.fail("grading declared twice", kwAt);
      if (!doc.variables.empty()) cur.fail("grading must precede vars", kwAt);
      const std::int64_t p = cur.integer();
      if (p < 1 || p > 16) cur.fail("grading rank must be between 1 and 16");
      doc.gradingRank = static_cast<std::size_t>(p);
      sawGrading = true;
    } else if (kw == "vars") {
      if (sawPolynomial) cur.fail("vars must precede relations, subspaces and modules", kwAt);
      while (!cur.atEnd()) {
        const std::size_t at = cur.mark();
        VariableDecl v;
        v.name = cur.ident();
        if (subspaceIndex(v.name) >= 0) cur.fail("variable names of the form H<k> are reserved", at);
        for (const auto& w : doc.variables)
          if (w.name == v.name) cur.fail("variable '" + v.name + "' declared twice", at);
        cur.expect(':');
        const std::size_t degAt = cur.mark();
        v.degree = parseTupleAt(cur, doc.gradingRank);
        if (!v.degree.isNonNegative() || v.degree.total() < 1)
          cur.fail("variable degrees must be nonnegative and nonzero", degAt);
        doc.variables.push_back(std::move(v));
      }
    } else if (kw == "rel") {
      if (doc.variables.empty()) cur.fail("rel before vars", kwAt);
      sawPolynomial = true;
      for (auto& f : polyList(cur, doc.variableNames(), false)) {
        degreeIn(doc, f, lineNo, "relation");
        doc.relations.push_back(std::move(f));
      }
    } else if (subspaceIndex(kw) > 0) {
      if (doc.variables.empty()) cur.fail(kw + " before vars", kwAt);
      sawPolynomial = true;
      SubspaceDecl h;
      h.index = subspaceIndex(kw);
      if (doc.subspace(h.index)) cur.fail(kw + " declared twice", kwAt);
      cur.expect('=');
      h.generators = polyList(cur, doc.variableNames(), false);
      std::optional<Multidegree> deg;
      for (const auto& g : h.generators) {
        auto d = degreeIn(doc, g, lineNo, "generator");
        if (d && deg && *d != *deg)
          throw InhomogeneousRelation("line " + std::to_string(lineNo) + ": generators of " + kw +
                                      " have different degrees");
        if (d) deg = d;
      }
      if (!deg) cur.fail(kw + " has no nonzero generator", kwAt);
      doc.subspaces.push_back(std::move(h));
      std::sort(doc.subspaces.begin(), doc.subspaces.end(),
                [](const auto& a, const auto& b) { return a.index < b.index; });
    } else if (kw == "module") {
      if (doc.variables.empty()) cur.fail("module before vars", kwAt);
      sawPolynomial = true;
      ModuleDecl m;
      const std::size_t nameAt = cur.mark();
      m.name = cur.ident();
      if (doc.module(m.name)) cur.fail("module '" + m.name + "' declared twice", nameAt);
      cur.expect('=');
      const std::size_t kindAt = cur.mark();
      const std::string kind = cur.ident();
      if (kind == "ideal") m.kind = ModuleDecl::Kind::Ideal;
      else if (kind == "quotient") m.kind = ModuleDecl::Kind::Quotient;
      else cur.fail("expected ideal(...) or quotient(...)", kindAt);
      cur.expect('(');
      m.generators = polyList(cur, doc.variableNames(), true);
      for (const auto& g : m.generators) degreeIn(doc, g, lineNo, "generator");
      doc.modules.push_back(std::move(m));
    } else if (kw == "cmd") {
      Command c;
      c.line = lineNo;
      const std::size_t verbAt = cur.mark();
      c.verb = cur.ident();
      if (!verbs().count(c.verb)) cur.fail("unknown command '" + c.verb + "'", verbAt);
      std::map<std::string, std::size_t> valueAt;
      while (!cur.atEnd()) {
        const std::size_t keyAt = cur.mark();
        const std::string key = cur.ident();
        if (c.params.count(key)) cur.fail("parameter '" + key + "' given twice", keyAt);
        cur.expect('=');
        auto [value, at] = cur.until(' ');
        if (value.empty()) cur.fail("missing value for '" + key + "'");
        c.params.emplace(key, value);
        valueAt.emplace(key, at);
      }
      validateCommand(doc, c, cur, valueAt);
      doc.commands.push_back(std::move(c));
    } else {
      cur.fail("unknown statement '" + kw + "'", kwAt);
    }
  }
  if (!sawStatement) throw ParseError(1, 1, "empty document");
  if (doc.variables.empty()) throw ParseError(lineNo, 1, "no variables declared");
  return doc;
}

std::string printProblem(const ProblemDocument& doc) {
  std::ostringstream out;
  const auto names = doc.variableNames();
  if (doc.prime) out << "prime " << *doc.prime << '\n';
  out << "grading " << doc.gradingRank << '\n';
  out << "vars";
  for (const auto& v : doc.variables) out << ' ' << v.name << ':' << tupleText(v.degree);
  out << '\n';
  for (const auto& r : doc.relations) out << "rel " << r.toString(names) << '\n';
  for (const auto& h : doc.subspaces) {
    out << 'H' << h.index << " =";
    for (std::size_t i = 0; i < h.generators.size(); ++i)
      out << (i ? ", " : " ") << h.generators[i].toString(names);
    out << '\n';
  }
  for (const auto& m : doc.modules) {
    out << "module " << m.name << " = "
        << (m.kind == ModuleDecl::Kind::Ideal ? "ideal(" : "quotient(");
    for (std::size_t i = 0; i < m.generators.size(); ++i)
      out << (i ? ", " : "") << m.generators[i].toString(names);
    out << ")\n";
  }
  for (const auto& c : doc.commands) {
    out << "cmd " << c.verb;
    for (const auto& [k, v] : c.params) out << ' ' << k << '=' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace mixmult
