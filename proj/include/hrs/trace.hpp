#pragma once
// Proof-trace documents: method dispatch over the four ordering procedures,
// JSON/text serialization with an embedded signature, and independent replay.

#include <optional>
#include <string>
#include <vector>

#include "hrs/chorpo.hpp"
#include "hrs/closure.hpp"
#include "hrs/horpo.hpp"
#include "hrs/parser.hpp"
#include "hrs/rpo.hpp"

namespace hrs {

inline constexpr const char* kTraceSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

struct RuleTrace {
  std::string ruleName;
  std::string verdict;  // "accepted" | "rejected" | "unknown"
  bool hitBudget = false;
  double millis = 0.0;
  // Exactly one of these is set for accepted rules, matching the method.
  RpoProofPtr rpo;
  ClosureProofPtr closure;
  HorpoProofPtr horpo;
  ChorpoProofPtr chorpo;
};

struct TraceDocument {
  std::string schemaVersion = kTraceSchemaVersion;
  std::string toolVersion = kToolVersion;
  std::string method;  // rpo | schema | horpo | chorpo
  std::string note;    // method-level caveats (e.g. conjectural status)
  SpecFile spec;       // embedded signature, variables, and rules
  std::vector<RuleTrace> rules;
};

struct MethodBudgets {
  ClosureBudget closure;
  ChorpoBudget chorpo;
};

// Orients every rule with the named method. Throws NotFirstOrder for rpo on
// higher-order input and std::invalid_argument on an unknown method name.
TraceDocument runMethod(const SpecFile& spec, const std::string& method,
                        const MethodBudgets& budgets = {});

std::string emitTraceJson(const TraceDocument& doc);
std::string emitTraceText(const TraceDocument& doc);

// Throws ParseError on malformed documents.
TraceDocument parseTraceJson(const std::string& json);

struct ReplayResult {
  bool ok = true;
  std::vector<std::string> messages;  // one entry per failed rule
};

// Re-verifies every accepted rule's proof tree through the matching
// engine checker; accepted rules without a proof fail.
ReplayResult checkTrace(const TraceDocument& doc);

bool allAccepted(const TraceDocument& doc);

}  // namespace hrs
