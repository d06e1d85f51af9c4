#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "hrs/parser.hpp"
#include "hrs/trace.hpp"

using namespace hrs;

namespace {

std::string firstMessage(const std::string& text) {
  try {
    parseSpec(text);
  } catch (const ParseError& e) {
    REQUIRE(!e.diagnostics.empty());
    CHECK(e.diagnostics.front().line > 0);
    CHECK(e.diagnostics.front().column > 0);
    return e.diagnostics.front().message;
  }
  FAIL("expected a parse error");
  return {};
}

const std::string kTiny =
    "sort N;\n"
    "fun 0 : N;\n"
    "fun s : N -> N;\n"
    "fun f : N * N -> N;\n"
    "prec f > s; prec f > 0;\n"
    "var X : N; var Y : N;\n";

}  // namespace

TEST_CASE("shipped recursor system parses with the expected shape") {
  SpecFile spec = parseSpecFile(std::string(HRS_DATA_DIR) + "/system_t.hrs");
  CHECK(spec.rules.size() == 2);
  CHECK(spec.cfg.sorts.count("N") == 1);
  CHECK(spec.cfg.symbols.find("rec") != nullptr);
  CHECK(spec.cfg.statusOf("rec") == StatusKind::Mul);
  CHECK(spec.cfg.prec.greater("rec", "s"));
  CHECK(spec.ruleVars.count("V") == 1);
  // Both rules typecheck at the declared result sort.
  for (const auto& r : spec.rules) {
    REQUIRE(r.type != nullptr);
    CHECK_FALSE(r.type->arrow);
  }
}

TEST_CASE("shipped ordinal system parses with the expected shape") {
  SpecFile spec = parseSpecFile(std::string(HRS_DATA_DIR) + "/brouwer.hrs");
  CHECK(spec.rules.size() == 3);
  CHECK(spec.cfg.sorts.count("Ord") == 1);
  CHECK(spec.cfg.sortPrec.greater("Ord", "N"));
  CHECK(spec.cfg.statusOf("rec") == StatusKind::Lex);
  CHECK(spec.cfg.prec.greater("rec", "lim"));
  // The limit rule binds n inside a lambda on the right-hand side.
  const RewriteRule& r3 = spec.rules.back();
  CHECK(r3.rhs->kind == TermKind::App);
}

TEST_CASE("diagnostics are located and specific") {
  SUBCASE("rhs variable missing from lhs") {
    std::string msg = firstMessage(kTiny + "rule f(X, 0) -> Y;\n");
    CHECK(msg.find("'Y' does not occur in the left-hand side") != std::string::npos);
  }
  SUBCASE("undeclared sort in a fun declaration") {
    std::string msg = firstMessage("sort N;\nfun g : M -> N;\n");
    CHECK(msg.find("undeclared sort 'M'") != std::string::npos);
  }
  SUBCASE("undeclared function in a prec declaration") {
    std::string msg = firstMessage("sort N;\nfun 0 : N;\nprec 0 > h;\n");
    CHECK(msg.find("undeclared function 'h'") != std::string::npos);
  }
  SUBCASE("partial application of a declared symbol") {
    std::string msg = firstMessage(kTiny + "rule f(X, Y) -> f(X);\n");
    CHECK(msg.find("expects") != std::string::npos);
  }
  SUBCASE("binder bound twice on one rule side") {
    std::string tiny2 = kTiny + "fun app : (N -> N) * N -> N;\n";
    std::string msg =
        firstMessage(tiny2 + "rule app(\\x:N. \\x:N. x, Y) -> Y;\n");
    CHECK(msg.find("bound twice") != std::string::npos);
  }
  SUBCASE("binder shadowing a rule variable") {
    std::string tiny2 = kTiny + "fun app : (N -> N) * N -> N;\n";
    std::string msg = firstMessage(tiny2 + "rule app(\\X:N. X, Y) -> Y;\n");
    CHECK(msg.find("shadows a declared rule variable") != std::string::npos);
  }
  SUBCASE("rule sides with different types") {
    std::string msg = firstMessage(kTiny + "rule f(X, Y) -> \\z:N. z;\n");
    CHECK(msg.find("different types") != std::string::npos);
  }
  SUBCASE("lhs must be symbol-headed") {
    std::string msg = firstMessage(kTiny + "rule X -> 0;\n");
    CHECK(msg.find("left-hand side must be of the form") != std::string::npos);
  }
  SUBCASE("precedence cycle is rejected at load time") {
    std::string text = kTiny + "prec s > f;\n";
    CHECK_THROWS_AS(parseSpec(text), ParseError);
  }
}

TEST_CASE("printSpec round-trips to an alpha-equivalent system") {
  for (const char* file : {"/system_t.hrs", "/brouwer.hrs"}) {
    SpecFile spec = parseSpecFile(std::string(HRS_DATA_DIR) + file);
    SpecFile again = parseSpec(printSpec(spec));
    REQUIRE(again.rules.size() == spec.rules.size());
    for (std::size_t i = 0; i < spec.rules.size(); ++i) {
      CHECK(alphaEq(spec.rules[i].lhs, again.rules[i].lhs));
      CHECK(alphaEq(spec.rules[i].rhs, again.rules[i].rhs));
      CHECK(typeStructEq(spec.rules[i].type, again.rules[i].type));
    }
    CHECK(spec.cfg.sorts.size() == again.cfg.sorts.size());
  }
}

TEST_CASE("JSON traces round-trip and replay for every method") {
  SpecFile tSpec = parseSpecFile(std::string(HRS_DATA_DIR) + "/system_t.hrs");
  SpecFile bSpec = parseSpecFile(std::string(HRS_DATA_DIR) + "/brouwer.hrs");
  for (const char* method : {"schema", "horpo", "chorpo"}) {
    CAPTURE(method);
    for (const SpecFile* spec : {&tSpec, &bSpec}) {
      TraceDocument doc = runMethod(*spec, method);
      TraceDocument back = parseTraceJson(emitTraceJson(doc));
      CHECK(back.schemaVersion == kTraceSchemaVersion);
      CHECK(back.method == method);
      REQUIRE(back.rules.size() == doc.rules.size());
      ReplayResult replay = checkTrace(back);
      CHECK(replay.ok);
      for (const auto& m : replay.messages) CHECK_MESSAGE(false, m);
    }
  }
  // The first-order method refuses higher-order input outright.
  CHECK_THROWS_AS(runMethod(tSpec, "rpo"), NotFirstOrder);
  CHECK_THROWS_AS(runMethod(tSpec, "nonsense"), std::invalid_argument);
}

TEST_CASE("first-order trace round-trips and replays") {
  SpecFile spec = parseSpec(kTiny + "status f = lex;\n" +
                            "rule f(s(X), Y) -> f(X, s(Y));\n"
                            "rule f(0, Y) -> Y;\n");
  TraceDocument doc = runMethod(spec, "rpo");
  CHECK(allAccepted(doc));
  TraceDocument back = parseTraceJson(emitTraceJson(doc));
  CHECK(checkTrace(back).ok);
}

TEST_CASE("text traces expose one numbered goal line per proof step") {
  SpecFile spec = parseSpecFile(std::string(HRS_DATA_DIR) + "/system_t.hrs");
  TraceDocument doc = runMethod(spec, "horpo");
  std::string text = emitTraceText(doc);
  CHECK(text.find("rule1") != std::string::npos);
  CHECK(text.find("rule2") != std::string::npos);
  CHECK(text.find("goal 1:") != std::string::npos);
  CHECK(text.find("accepted") != std::string::npos);
}

TEST_CASE("malformed trace documents are rejected with diagnostics") {
  CHECK_THROWS_AS(parseTraceJson("{"), ParseError);
  CHECK_THROWS_AS(parseTraceJson("{\"schema\": 1}"), ParseError);
  SpecFile spec = parseSpecFile(std::string(HRS_DATA_DIR) + "/system_t.hrs");
  std::string json = emitTraceJson(runMethod(spec, "horpo"));
  // Verdict tampering: claim acceptance while dropping the proof payload.
  std::string broken = json;
  auto pos = broken.find("\"horpo\"");
  REQUIRE(pos != std::string::npos);
  TraceDocument doc = parseTraceJson(json);
  doc.rules.front().horpo = nullptr;
  CHECK_FALSE(checkTrace(doc).ok);
}
