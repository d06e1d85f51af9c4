// Command-line interface: orient rewrite rules with one of the four ordering
// procedures, replay emitted traces, validate signatures, and run the
// enumeration/property harness.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hrs/chorpo.hpp"
#include "hrs/enumerate.hpp"
#include "hrs/parser.hpp"
#include "hrs/trace.hpp"
#include "hrs/typeorder.hpp"

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInputError = 2;

void writeOut(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to " + path);
  out << data;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmdProve(const std::string& file, const std::string& method, int budget,
             const std::string& traceFormat, const std::string& outPath) {
  hrs::SpecFile spec = hrs::parseSpecFile(file);
  hrs::MethodBudgets budgets;
  if (budget > 0) {
    budgets.closure.depth = budget;
    budgets.chorpo.depth = budget;
  }
  hrs::TraceDocument doc = hrs::runMethod(spec, method, budgets);
  for (auto& rt : doc.rules)
    std::cerr << rt.ruleName << ": " << rt.verdict
              << (rt.hitBudget ? " (budget exhausted)" : "") << "\n";
  if (traceFormat == "json")
    writeOut(outPath, hrs::emitTraceJson(doc));
  else if (traceFormat == "text")
    writeOut(outPath, hrs::emitTraceText(doc));
  return hrs::allAccepted(doc) ? kExitAccepted : kExitRejected;
}

int cmdCheckTrace(const std::string& file) {
  hrs::TraceDocument doc = hrs::parseTraceJson(readFile(file));
  hrs::ReplayResult res = hrs::checkTrace(doc);
  if (res.ok) {
    std::cout << "trace replays: all accepted proofs verified\n";
    return kExitAccepted;
  }
  for (auto& m : res.messages) std::cout << "replay failure: " << m << "\n";
  return kExitRejected;
}

int cmdValidate(const std::string& file, int depth) {
  hrs::SpecFile spec = hrs::parseSpecFile(file);
  std::vector<hrs::Violation> vs = hrs::validatePrecedence(spec.cfg);
  auto typeVs = hrs::validateTypeOrder(spec.cfg, depth);
  vs.insert(vs.end(), typeVs.begin(), typeVs.end());
  if (vs.empty()) {
    std::cout << "valid: precedence and type-order axioms hold (type depth " << depth << ")\n";
    return kExitAccepted;
  }
  for (auto& v : vs) std::cout << v.kind << ": " << v.detail << "\n";
  return kExitRejected;
}

int cmdEnumerate(const std::string& file, std::size_t maxSize, bool lambdas, bool withVars) {
  hrs::SpecFile spec = hrs::parseSpecFile(file);
  hrs::EnumSpec es;
  es.cfg = spec.cfg;
  if (withVars) es.seedVars = spec.ruleVars;
  es.maxSize = maxSize;
  es.lambdas = lambdas;
  for (auto& t : hrs::enumerateTerms(es)) std::cout << hrs::printSurfaceTerm(t) << "\n";
  return kExitAccepted;
}

int cmdProperties(const std::string& file, const std::string& relation, std::size_t maxSize,
                  bool lambdas, std::size_t samples) {
  hrs::SpecFile spec = hrs::parseSpecFile(file);
  hrs::EnumSpec es;
  es.cfg = spec.cfg;
  es.maxSize = maxSize;
  es.lambdas = lambdas;
  hrs::Relation rel;
  std::vector<hrs::OrderAxiom> axioms{hrs::OrderAxiom::Irreflexive, hrs::OrderAxiom::Acyclic};
  if (relation == "rpo") {
    rel = [&](const hrs::TermPtr& s, const hrs::TermPtr& t) {
      try {
        return hrs::rpoGT(spec.cfg, s, t).has_value();
      } catch (const hrs::NotFirstOrder&) {
        return false;  // higher-order grid entries are simply incomparable
      }
    };
    axioms.push_back(hrs::OrderAxiom::Transitive);
  } else if (relation == "horpo") {
    rel = [&](const hrs::TermPtr& s, const hrs::TermPtr& t) {
      try {
        return hrs::horpoGT(spec.cfg, es.seedVars, s, t).has_value();
      } catch (const hrs::TypeError&) {
        return false;
      }
    };
  } else if (relation == "chorpo") {
    rel = [&](const hrs::TermPtr& s, const hrs::TermPtr& t) {
      try {
        return hrs::chorpoGT(spec.cfg, es.seedVars, s, t).proof.has_value();
      } catch (const hrs::TypeError&) {
        return false;
      }
    };
  } else {
    throw std::runtime_error("unknown relation: " + relation);
  }
  bool ok = true;
  auto report = [&](const hrs::PropertyReport& rep) {
    std::cout << rep.property << ": " << rep.instanceCount << " instances, "
              << rep.counterexamples.size() << " counterexamples, " << rep.elapsedMs << " ms\n";
    for (auto& c : rep.counterexamples) std::cout << "  " << c << "\n";
    ok = ok && rep.ok();
  };
  report(hrs::checkOrderAxioms(relation, rel, es, axioms));
  if (samples > 0) report(hrs::checkStabilityMonotonicity(relation, rel, es, samples));
  return ok ? kExitAccepted : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Termination prover for simply-typed higher-order rewrite systems"};
  app.require_subcommand(1);

  std::string file, method = "horpo", traceFormat, outPath, relation = "rpo";
  int budget = 0, depth = 3;
  std::size_t maxSize = 4, samples = 0;
  bool lambdas = false, withVars = false;

  auto* prove = app.add_subcommand("prove", "Orient every rule with the chosen method");
  prove->add_option("file", file)->required();
  prove->add_option("--method", method)->check(CLI::IsMember({"rpo", "schema", "horpo", "chorpo"}));
  prove->add_option("--budget", budget, "search depth budget");
  prove->add_option("--trace", traceFormat)->check(CLI::IsMember({"text", "json"}));
  prove->add_option("--out", outPath, "trace output path ('-' for stdout)");

  auto* check = app.add_subcommand("check-trace", "Replay a JSON trace through the checkers");
  check->add_option("file", file)->required();

  auto* validate = app.add_subcommand("validate", "Check precedence and type-order axioms");
  validate->add_option("file", file)->required();
  validate->add_option("--depth", depth, "type enumeration depth");

  auto* enumerate = app.add_subcommand("enumerate", "List well-typed terms up to a size bound");
  enumerate->add_option("file", file)->required();
  enumerate->add_option("--size", maxSize);
  enumerate->add_flag("--lambdas", lambdas);
  enumerate->add_flag("--vars", withVars, "include the declared rule variables");

  auto* properties = app.add_subcommand("properties", "Order-axiom and meta-property checks");
  properties->add_option("file", file)->required();
  properties->add_option("--relation", relation)
      ->check(CLI::IsMember({"rpo", "horpo", "chorpo"}));
  properties->add_option("--size", maxSize);
  properties->add_flag("--lambdas", lambdas);
  properties->add_option("--samples", samples, "stability/monotonicity sample count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove->parsed()) return cmdProve(file, method, budget, traceFormat, outPath);
    if (check->parsed()) return cmdCheckTrace(file);
    if (validate->parsed()) return cmdValidate(file, depth);
    if (enumerate->parsed()) return cmdEnumerate(file, maxSize, lambdas, withVars);
    if (properties->parsed()) return cmdProperties(file, relation, maxSize, lambdas, samples);
  } catch (const hrs::ParseError& e) {
    std::cerr << "input error:\n" << e.what() << "\n";
    return kExitInputError;
  } catch (const hrs::NotFirstOrder& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const hrs::TypeError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
