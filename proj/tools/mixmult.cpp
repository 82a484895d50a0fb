#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mixmult/driver.hpp"
#include "mixmult/errors.hpp"

namespace {

std::string readAll(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative mixed multiplicities of multigraded algebras"};
  std::string input = "-";
  std::string jsonPath;
  std::uint32_t prime = 0;
  std::uint32_t secondPrime = 0;
  int maxOrigin = 0;
  mixmult::RunFlags flags;
  app.add_option("input,--input", input, "problem file, or - for stdin");
  app.add_option("--prime", prime, "field characteristic (overrides the document)");
  app.add_option("--second-prime", secondPrime,
                 "rerun at this prime and compare; also the oracle's second prime");
  app.add_option("--max-origin", maxOrigin, "largest stabilization window origin");
  app.add_option("--json", jsonPath, "write the JSON result here instead of stdout");
  app.add_flag("--oracle", flags.oracle, "verify every computed dimension independently");
  app.add_option("--oracle-max-degree", flags.oracleMaxDegree,
                 "skip oracle checks above this total degree");
  app.add_option("--threads", flags.threads, "grid evaluation threads (0: all cores)");
  CLI11_PARSE(app, argc, argv);

  if (prime) flags.prime = prime;
  if (secondPrime) flags.secondPrime = secondPrime;
  if (maxOrigin) flags.maxOrigin = maxOrigin;

  try {
    std::string text;
    if (input == "-") {
      text = readAll(std::cin);
    } else {
      std::ifstream in(input);
      if (!in) throw mixmult::InvalidArgument("cannot open " + input);
      text = readAll(in);
    }
    const auto doc = mixmult::parseProblem(text);
    const auto outcome = mixmult::run(doc, flags);
    const std::string body = outcome.result.dump(2) + "\n";
    if (jsonPath.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(jsonPath);
      if (!out) throw mixmult::InvalidArgument("cannot write " + jsonPath);
      out << body;
    }
    if (outcome.mismatches)
      std::cerr << nlohmann::json{{"error", "Mismatch"},
                                  {"message", std::to_string(outcome.mismatches) +
                                                  " cross-check mismatches"}}
                       .dump()
                << "\n";
    return outcome.exitCode;
  } catch (const std::exception& e) {
    std::cerr << mixmult::errorObject(e).dump() << "\n";
    return mixmult::exitCodeFor(e);
  }
}
