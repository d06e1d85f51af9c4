#include "hrs/trace.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hrs {

using nlohmann::json;

// ----------------------------------------------------------- running

namespace {

double msSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

TraceDocument runMethod(const SpecFile& spec, const std::string& method,
                        const MethodBudgets& budgets) {
  TraceDocument doc;
  doc.method = method;
  doc.spec = spec;
  if (method == "chorpo")
    doc.note =
        "the unified ordering is reported as conjectural: no strong-normalization "
        "proof is known for it";
  for (auto& rule : spec.rules) {
    RuleTrace rt;
    rt.ruleName = rule.name;
    auto t0 = std::chrono::steady_clock::now();
    if (method == "rpo") {
      auto p = rpoGT(spec.cfg, rule.lhs, rule.rhs);  // may throw NotFirstOrder
      rt.verdict = p ? "accepted" : "rejected";
      if (p) rt.rpo = *p;
    } else if (method == "schema") {
      ClosureResult r =
          inClosure(spec.cfg, rule.env, rule.lhs, {}, rule.rhs, budgets.closure);
      rt.verdict = r.status == SearchStatus::Accepted   ? "accepted"
                   : r.status == SearchStatus::Rejected ? "rejected"
                                                        : "unknown";
      rt.hitBudget = r.status == SearchStatus::Unknown;
      rt.closure = r.proof;
    } else if (method == "horpo") {
      HorpoVerdict v = horpoOrientRule(spec.cfg, rule);
      rt.verdict = v.accepted ? "accepted" : "rejected";
      rt.horpo = v.proof;
    } else if (method == "chorpo") {
      ChorpoRuleVerdict v = chorpoOrientRule(spec.cfg, rule, budgets.chorpo);
      rt.verdict = v.accepted ? "accepted" : (v.hitBudget ? "unknown" : "rejected");
      rt.hitBudget = v.hitBudget;
      rt.chorpo = v.proof;
    } else {
      throw std::invalid_argument("unknown method: " + method);
    }
    rt.millis = msSince(t0);
    doc.rules.push_back(std::move(rt));
  }
  return doc;
}

bool allAccepted(const TraceDocument& doc) {
  for (auto& r : doc.rules)
    if (r.verdict != "accepted") return false;
  return true;
}

// ----------------------------------------------------------- JSON out

namespace {

json typeToJson(const TypePtr& t) {
  if (!t) return nullptr;
  if (!t->arrow) {
    json j{{"sort", t->sort}};
    if (!t->sortArgs.empty()) {
      json args = json::array();
      for (auto& a : t->sortArgs) args.push_back(typeToJson(a));
      j["args"] = args;
    }
    return j;
  }
  return json{{"dom", typeToJson(t->dom)}, {"cod", typeToJson(t->cod)}};
}

json termToJson(const TermPtr& t) {
  if (!t) return nullptr;
  switch (t->kind) {
    case TermKind::Var: return json{{"var", t->name}};
    case TermKind::Abs:
      return json{{"abs", t->name},
                  {"type", typeToJson(t->varType)},
                  {"body", termToJson(t->body)}};
    case TermKind::App: return json{{"app", termToJson(t->fun)}, {"arg", termToJson(t->arg)}};
    case TermKind::Fun: {
      json args = json::array();
      for (auto& a : t->args) args.push_back(termToJson(a));
      return json{{"fun", t->name}, {"args", args}};
    }
  }
  return nullptr;
}

json mulToJson(const MulDecomposition& d) {
  json kept = json::array(), dom = json::array();
  for (auto& [i, j] : d.kept) kept.push_back(json::array({i, j}));
  for (auto& [i, j] : d.dominated) dom.push_back(json::array({i, j}));
  return json{{"kept", kept}, {"dominated", dom}};
}

json rpoToJson(const RpoProofPtr& p) {
  if (!p) return nullptr;
  json j{{"lhs", termToJson(p->lhs)}, {"rhs", termToJson(p->rhs)}, {"case", p->ruleCase}};
  if (p->witnessIndex >= 0) j["witness"] = p->witnessIndex;
  if (p->mulWitness) j["mul"] = mulToJson(*p->mulWitness);
  if (!p->subs.empty()) {
    json subs = json::array();
    for (auto& s : p->subs) subs.push_back(rpoToJson(s));
    j["subs"] = subs;
  }
  if (!p->aBranch.empty()) {
    j["aBranch"] = p->aBranch;
    json as = json::array();
    for (auto& s : p->aSubs) as.push_back(rpoToJson(s));
    j["aSubs"] = as;
  }
  return j;
}

json closureToJson(const ClosureProofPtr& p) {
  if (!p) return nullptr;
  json j{{"rule", closureRuleName(p->rule)}, {"candidate", termToJson(p->candidate)}};
  if (p->argIndex >= 0) j["argIndex"] = p->argIndex;
  if (p->via) j["via"] = closureToJson(p->via);
  if (!p->binder.empty()) {
    j["binder"] = p->binder;
    j["binderType"] = typeToJson(p->binderType);
  }
  if (!p->subs.empty()) {
    json subs = json::array();
    for (auto& s : p->subs) subs.push_back(closureToJson(s));
    j["subs"] = subs;
  }
  if (p->mulWitness) j["mul"] = mulToJson(*p->mulWitness);
  if (p->lexIndex >= 0) j["lexIndex"] = p->lexIndex;
  return j;
}

json horpoToJson(const HorpoProofPtr& p) {
  if (!p) return nullptr;
  json j{{"lhs", termToJson(p->lhs)}, {"rhs", termToJson(p->rhs)}, {"case", p->ruleCase}};
  if (p->lhsType) j["lhsType"] = typeToJson(p->lhsType);
  if (p->rhsType) j["rhsType"] = typeToJson(p->rhsType);
  if (p->witnessIndex >= 0) j["witness"] = p->witnessIndex;
  if (!p->flattening.empty()) {
    json fl = json::array();
    for (auto& f : p->flattening) fl.push_back(termToJson(f));
    j["flattening"] = fl;
  }
  if (p->mulWitness) j["mul"] = mulToJson(*p->mulWitness);
  if (!p->subs.empty()) {
    json subs = json::array();
    for (auto& s : p->subs) subs.push_back(horpoToJson(s));
    j["subs"] = subs;
  }
  if (!p->aBranch.empty()) {
    j["aBranch"] = p->aBranch;
    json as = json::array();
    for (auto& s : p->aSubs) as.push_back(horpoToJson(s));
    j["aSubs"] = as;
  }
  if (p->vacuousAbstraction) j["vacuousAbstraction"] = true;
  return j;
}

json accessToJson(const AccessEvidence& e) {
  json j{{"clause", e.clause}, {"argIndex", e.argIndex}};
  if (e.clause == 2) j["polarity"] = polarityName(e.pol);
  return j;
}

json chorpoToJson(const ChorpoProofPtr& p) {
  if (!p) return nullptr;
  json j{{"kind", p->kind == ChorpoKind::Horpo ? "order" : "closure"},
         {"case", p->caseTag},
         {"lhs", termToJson(p->lhs)},
         {"rhs", termToJson(p->rhs)}};
  if (!p->X.empty()) {
    json xs = json::array();
    for (auto& [x, ty] : p->X) xs.push_back(json{{"name", x}, {"type", typeToJson(ty)}});
    j["X"] = xs;
  }
  if (p->lhsType) j["lhsType"] = typeToJson(p->lhsType);
  if (p->rhsType) j["rhsType"] = typeToJson(p->rhsType);
  if (p->access) j["access"] = accessToJson(*p->access);
  if (!p->accessAll.empty()) {
    json as = json::array();
    for (auto& e : p->accessAll) as.push_back(accessToJson(e));
    j["accessAll"] = as;
  }
  if (p->witnessIndex >= 0) j["witness"] = p->witnessIndex;
  if (p->mulWitness) j["mul"] = mulToJson(*p->mulWitness);
  if (!p->subs.empty()) {
    json subs = json::array();
    for (auto& s : p->subs) subs.push_back(chorpoToJson(s));
    j["subs"] = subs;
  }
  if (!p->aBranch.empty()) {
    j["aBranch"] = p->aBranch;
    json as = json::array();
    for (auto& s : p->aSubs) as.push_back(chorpoToJson(s));
    j["aSubs"] = as;
  }
  return j;
}

json specToJson(const SpecFile& spec) {
  json j;
  json sorts = json::array();
  for (auto& [name, s] : spec.cfg.sorts) sorts.push_back(name);
  j["sorts"] = sorts;
  auto edges = [](const Precedence& p) {
    json strict = json::array(), equiv = json::array();
    for (auto& [a, b] : p.strictEdges()) strict.push_back(json::array({a, b}));
    for (auto& [a, b] : p.equivEdges()) equiv.push_back(json::array({a, b}));
    return json{{"strict", strict}, {"equiv", equiv}};
  };
  j["sortPrec"] = edges(spec.cfg.sortPrec);
  j["prec"] = edges(spec.cfg.prec);
  json funs = json::array();
  for (auto& name : spec.cfg.symbols.names()) {
    const FunctionSymbol& f = spec.cfg.symbols.get(name);
    json args = json::array();
    for (auto& a : f.argTypes) args.push_back(typeToJson(a));
    funs.push_back(
        json{{"name", name}, {"argTypes", args}, {"resultType", typeToJson(f.resultType)}});
  }
  j["functions"] = funs;
  json status = json::object();
  for (auto& [f, st] : spec.cfg.status) status[f] = st == StatusKind::Lex ? "lex" : "mul";
  j["status"] = status;
  json vars = json::object();
  for (auto& [x, ty] : spec.ruleVars) vars[x] = typeToJson(ty);
  j["variables"] = vars;
  json rules = json::array();
  for (auto& r : spec.rules) {
    json env = json::object();
    for (auto& [x, ty] : r.env) env[x] = typeToJson(ty);
    rules.push_back(json{{"name", r.name},
                         {"env", env},
                         {"lhs", termToJson(r.lhs)},
                         {"rhs", termToJson(r.rhs)},
                         {"type", typeToJson(r.type)}});
  }
  j["rules"] = rules;
  return j;
}

}  // namespace

std::string emitTraceJson(const TraceDocument& doc) {
  json j;
  j["schemaVersion"] = doc.schemaVersion;
  j["toolVersion"] = doc.toolVersion;
  j["method"] = doc.method;
  if (!doc.note.empty()) j["note"] = doc.note;
  j["signature"] = specToJson(doc.spec);
  json rules = json::array();
  for (auto& rt : doc.rules) {
    json r{{"rule", rt.ruleName}, {"verdict", rt.verdict}, {"millis", rt.millis}};
    if (rt.hitBudget) r["hitBudget"] = true;
    if (rt.rpo) r["proof"] = rpoToJson(rt.rpo);
    if (rt.closure) r["proof"] = closureToJson(rt.closure);
    if (rt.horpo) r["proof"] = horpoToJson(rt.horpo);
    if (rt.chorpo) r["proof"] = chorpoToJson(rt.chorpo);
    rules.push_back(std::move(r));
  }
  j["rules"] = rules;
  return j.dump(2) + "\n";
}

// ----------------------------------------------------------- JSON in

namespace {

[[noreturn]] void badDoc(const std::string& msg) { throw ParseError({{0, 0, msg}}); }

TypePtr typeFromJson(const json& j) {
  if (j.is_null()) return nullptr;
  if (j.contains("sort")) {
    std::vector<TypePtr> args;
    if (j.contains("args"))
      for (auto& a : j.at("args")) args.push_back(typeFromJson(a));
    return mkSort(j.at("sort").get<std::string>(), std::move(args));
  }
  if (j.contains("dom")) return mkArrow(typeFromJson(j.at("dom")), typeFromJson(j.at("cod")));
  badDoc("malformed type object");
}

TermPtr termFromJson(const json& j) {
  if (j.is_null()) return nullptr;
  if (j.contains("var")) return mkVar(j.at("var").get<std::string>());
  if (j.contains("abs"))
    return mkAbs(j.at("abs").get<std::string>(), typeFromJson(j.at("type")),
                 termFromJson(j.at("body")));
  if (j.contains("app")) return mkApp(termFromJson(j.at("app")), termFromJson(j.at("arg")));
  if (j.contains("fun")) {
    std::vector<TermPtr> args;
    for (auto& a : j.at("args")) args.push_back(termFromJson(a));
    return mkFun(j.at("fun").get<std::string>(), std::move(args));
  }
  badDoc("malformed term object");
}

MulDecomposition mulFromJson(const json& j) {
  MulDecomposition d;
  for (auto& e : j.at("kept"))
    d.kept.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  for (auto& e : j.at("dominated"))
    d.dominated.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return d;
}

RpoProofPtr rpoFromJson(const json& j) {
  if (j.is_null()) return nullptr;
  auto p = std::make_shared<RpoProof>();
  p->lhs = termFromJson(j.at("lhs"));
  p->rhs = termFromJson(j.at("rhs"));
  p->ruleCase = j.at("case").get<int>();
  if (j.contains("witness")) p->witnessIndex = j.at("witness").get<int>();
  if (j.contains("mul")) p->mulWitness = mulFromJson(j.at("mul"));
  if (j.contains("subs"))
    for (auto& s : j.at("subs")) p->subs.push_back(rpoFromJson(s));
  if (j.contains("aBranch")) {
    p->aBranch = j.at("aBranch").get<std::vector<int>>();
    for (auto& s : j.at("aSubs")) p->aSubs.push_back(rpoFromJson(s));
  }
  return p;
}

ClosureRuleTag closureTagFromName(const std::string& name) {
  for (ClosureRuleTag t :
       {ClosureRuleTag::BaseVar, ClosureRuleTag::BaseArg, ClosureRuleTag::Subterm,
        ClosureRuleTag::Precedence, ClosureRuleTag::RecCall, ClosureRuleTag::Application,
        ClosureRuleTag::Abstraction, ClosureRuleTag::Reduction})
    if (closureRuleName(t) == name) return t;
  badDoc("unknown closure rule tag: " + name);
}

ClosureProofPtr closureFromJson(const json& j) {
  if (j.is_null()) return nullptr;
  auto p = std::make_shared<ClosureProof>();
  p->rule = closureTagFromName(j.at("rule").get<std::string>());
  p->candidate = termFromJson(j.at("candidate"));
  if (j.contains("argIndex")) p->argIndex = j.at("argIndex").get<int>();
  if (j.contains("via")) p->via = closureFromJson(j.at("via"));
  if (j.contains("binder")) {
    p->binder = j.at("binder").get<std::string>();
    p->binderType = typeFromJson(j.at("binderType"));
  }
  if (j.contains("subs"))
    for (auto& s : j.at("subs")) p->subs.push_back(closureFromJson(s));
  if (j.contains("mul")) p->mulWitness = mulFromJson(j.at("mul"));
  if (j.contains("lexIndex")) p->lexIndex = j.at("lexIndex").get<int>();
  return p;
}

HorpoProofPtr horpoFromJson(const json& j) {
  if (j.is_null()) return nullptr;
  auto p = std::make_shared<HorpoProof>();
  p->lhs = termFromJson(j.at("lhs"));
  p->rhs = termFromJson(j.at("rhs"));
  p->ruleCase = j.at("case").get<int>();
  if (j.contains("lhsType")) p->lhsType = typeFromJson(j.at("lhsType"));
  if (j.contains("rhsType")) p->rhsType = typeFromJson(j.at("rhsType"));
  if (j.contains("witness")) p->witnessIndex = j.at("witness").get<int>();
  if (j.contains("flattening"))
    for (auto& f : j.at("flattening")) p->flattening.push_back(termFromJson(f));
  if (j.contains("mul")) p->mulWitness = mulFromJson(j.at("mul"));
  if (j.contains("subs"))
    for (auto& s : j.at("subs")) p->subs.push_back(horpoFromJson(s));
  if (j.contains("aBranch")) {
    p->aBranch = j.at("aBranch").get<std::vector<int>>();
    for (auto& s : j.at("aSubs")) p->aSubs.push_back(horpoFromJson(s));
  }
  if (j.contains("vacuousAbstraction")) p->vacuousAbstraction = true;
  return p;
}

AccessEvidence accessFromJson(const json& j) {
  AccessEvidence e;
  e.clause = j.at("clause").get<int>();
  e.argIndex = j.at("argIndex").get<int>();
  if (j.contains("polarity")) {
    std::string p = j.at("polarity").get<std::string>();
    e.pol = p == "positive" ? Polarity::Positive
            : p == "negative" ? Polarity::Negative
            : p == "both"     ? Polarity::Both
                              : Polarity::Absent;
  }
  return e;
}

ChorpoProofPtr chorpoFromJson(const json& j) {
  if (j.is_null()) return nullptr;
  auto p = std::make_shared<ChorpoProof>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "order")
    p->kind = ChorpoKind::Horpo;
  else if (kind == "closure")
    p->kind = ChorpoKind::Closure;
  else
    badDoc("unknown proof node kind: " + kind);
  p->caseTag = j.at("case").get<std::string>();
  p->lhs = termFromJson(j.at("lhs"));
  p->rhs = termFromJson(j.at("rhs"));
  if (j.contains("X"))
    for (auto& x : j.at("X"))
      p->X.emplace_back(x.at("name").get<std::string>(), typeFromJson(x.at("type")));
  if (j.contains("lhsType")) p->lhsType = typeFromJson(j.at("lhsType"));
  if (j.contains("rhsType")) p->rhsType = typeFromJson(j.at("rhsType"));
  if (j.contains("access")) p->access = accessFromJson(j.at("access"));
  if (j.contains("accessAll"))
    for (auto& e : j.at("accessAll")) p->accessAll.push_back(accessFromJson(e));
  if (j.contains("witness")) p->witnessIndex = j.at("witness").get<int>();
  if (j.contains("mul")) p->mulWitness = mulFromJson(j.at("mul"));
  if (j.contains("subs"))
    for (auto& s : j.at("subs")) p->subs.push_back(chorpoFromJson(s));
  if (j.contains("aBranch")) {
    p->aBranch = j.at("aBranch").get<std::vector<int>>();
    for (auto& s : j.at("aSubs")) p->aSubs.push_back(chorpoFromJson(s));
  }
  return p;
}

SpecFile specFromJson(const json& j) {
  SpecFile spec;
  for (auto& s : j.at("sorts")) {
    std::string name = s.get<std::string>();
    spec.cfg.sorts[name] = SortSymbol{name, 0};
  }
  auto edges = [](Precedence& p, const json& e) {
    for (auto& pair : e.at("strict"))
      p.addStrict(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    for (auto& pair : e.at("equiv"))
      p.addEquiv(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
  };
  edges(spec.cfg.sortPrec, j.at("sortPrec"));
  edges(spec.cfg.prec, j.at("prec"));
  for (auto& f : j.at("functions")) {
    FunctionSymbol sym;
    sym.name = f.at("name").get<std::string>();
    for (auto& a : f.at("argTypes")) sym.argTypes.push_back(typeFromJson(a));
    sym.resultType = typeFromJson(f.at("resultType"));
    spec.cfg.symbols.declare(sym);
  }
  for (auto& [f, st] : j.at("status").items())
    spec.cfg.status[f] = st.get<std::string>() == "lex" ? StatusKind::Lex : StatusKind::Mul;
  for (auto& [x, ty] : j.at("variables").items()) spec.ruleVars[x] = typeFromJson(ty);
  for (auto& r : j.at("rules")) {
    RewriteRule rule;
    rule.name = r.at("name").get<std::string>();
    for (auto& [x, ty] : r.at("env").items()) rule.env[x] = typeFromJson(ty);
    rule.lhs = termFromJson(r.at("lhs"));
    rule.rhs = termFromJson(r.at("rhs"));
    rule.type = typeFromJson(r.at("type"));
    spec.rules.push_back(std::move(rule));
  }
  return spec;
}

}  // namespace

TraceDocument parseTraceJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    badDoc(std::string("invalid JSON: ") + e.what());
  }
  try {
    TraceDocument doc;
    doc.schemaVersion = j.at("schemaVersion").get<std::string>();
    if (doc.schemaVersion != kTraceSchemaVersion)
      badDoc("unsupported schema version: " + doc.schemaVersion);
    doc.toolVersion = j.value("toolVersion", "");
    doc.method = j.at("method").get<std::string>();
    doc.note = j.value("note", "");
    doc.spec = specFromJson(j.at("signature"));
    for (auto& r : j.at("rules")) {
      RuleTrace rt;
      rt.ruleName = r.at("rule").get<std::string>();
      rt.verdict = r.at("verdict").get<std::string>();
      rt.hitBudget = r.value("hitBudget", false);
      rt.millis = r.value("millis", 0.0);
      if (r.contains("proof")) {
        if (doc.method == "rpo")
          rt.rpo = rpoFromJson(r.at("proof"));
        else if (doc.method == "schema")
          rt.closure = closureFromJson(r.at("proof"));
        else if (doc.method == "horpo")
          rt.horpo = horpoFromJson(r.at("proof"));
        else if (doc.method == "chorpo")
          rt.chorpo = chorpoFromJson(r.at("proof"));
        else
          badDoc("unknown method: " + doc.method);
      }
      doc.rules.push_back(std::move(rt));
    }
    return doc;
  } catch (const json::exception& e) {
    badDoc(std::string("malformed trace document: ") + e.what());
  }
}

// ----------------------------------------------------------- replay

ReplayResult checkTrace(const TraceDocument& doc) {
  ReplayResult res;
  auto fail = [&](const std::string& rule, const std::string& why) {
    res.ok = false;
    res.messages.push_back(rule + ": " + why);
  };
  // Locate each rule trace's declaration in the embedded signature.
  std::map<std::string, const RewriteRule*> byName;
  for (auto& r : doc.spec.rules) byName[r.name] = &r;
  for (auto& rt : doc.rules) {
    if (rt.verdict != "accepted") continue;
    auto it = byName.find(rt.ruleName);
    if (it == byName.end()) {
      fail(rt.ruleName, "rule not present in the embedded signature");
      continue;
    }
    const RewriteRule& rule = *it->second;
    try {
      if (doc.method == "rpo") {
        if (!rt.rpo || !alphaEq(rt.rpo->lhs, rule.lhs) || !alphaEq(rt.rpo->rhs, rule.rhs) ||
            !rpoCheckProof(doc.spec.cfg, rt.rpo))
          fail(rt.ruleName, "proof replay failed");
      } else if (doc.method == "schema") {
        if (!rt.closure || !alphaEq(rt.closure->candidate, rule.rhs) ||
            !closureCheckProof(doc.spec.cfg, rule.env, rule.lhs, {}, rt.closure))
          fail(rt.ruleName, "proof replay failed");
      } else if (doc.method == "horpo") {
        if (!rt.horpo || !alphaEq(rt.horpo->lhs, rule.lhs) ||
            !alphaEq(rt.horpo->rhs, rule.rhs) ||
            !horpoCheckProof(doc.spec.cfg, rule.env, rt.horpo))
          fail(rt.ruleName, "proof replay failed");
      } else if (doc.method == "chorpo") {
        if (!rt.chorpo || !alphaEq(rt.chorpo->lhs, rule.lhs) ||
            !alphaEq(rt.chorpo->rhs, rule.rhs) ||
            !chorpoCheckProof(doc.spec.cfg, rule.env, rt.chorpo))
          fail(rt.ruleName, "proof replay failed");
      } else {
        fail(rt.ruleName, "unknown method: " + doc.method);
      }
    } catch (const std::exception& e) {
      fail(rt.ruleName, std::string("replay raised: ") + e.what());
    }
  }
  return res;
}

// ----------------------------------------------------------- text out

namespace {

struct TextEmitter {
  std::ostringstream& os;
  int counter = 0;

  int nextId() { return ++counter; }

  void line(int id, const std::string& body) {
    os << "  goal " << id << ": " << body << "\n";
  }

  void rpo(const RpoProofPtr& p) {
    if (!p) return;
    int id = nextId();
    if (p->ruleCase == 0) {
      line(id, printSurfaceTerm(p->lhs) + " >= " + printSurfaceTerm(p->rhs) + "   [equal]");
      return;
    }
    line(id, printSurfaceTerm(p->lhs) + " > " + printSurfaceTerm(p->rhs) + "   [case " +
                 std::to_string(p->ruleCase) + "]");
    for (auto& s : p->subs) rpo(s);
    for (auto& s : p->aSubs) rpo(s);
  }

  void closure(const ClosureProofPtr& p) {
    if (!p) return;
    int id = nextId();
    line(id, printSurfaceTerm(p->candidate) + " in closure   [" + closureRuleName(p->rule) + "]");
    if (p->via) closure(p->via);
    for (auto& s : p->subs) closure(s);
  }

  void horpo(const HorpoProofPtr& p) {
    if (!p) return;
    int id = nextId();
    if (p->ruleCase == 0) {
      line(id, printSurfaceTerm(p->lhs) + " >= " + printSurfaceTerm(p->rhs) + "   [equal]");
      return;
    }
    line(id, printSurfaceTerm(p->lhs) + " > " + printSurfaceTerm(p->rhs) + "   [case " +
                 std::to_string(p->ruleCase) + "]");
    for (auto& s : p->subs) horpo(s);
    for (auto& s : p->aSubs) horpo(s);
  }

  void chorpo(const ChorpoProofPtr& p) {
    if (!p) return;
    int id = nextId();
    std::string rel;
    if (p->kind == ChorpoKind::Horpo) {
      rel = p->caseTag == "refl" ? " >= " : " > ";
    } else {
      rel = " |> ";
      if (!p->X.empty()) {
        rel = " |>{";
        for (std::size_t i = 0; i < p->X.size(); ++i)
          rel += (i ? "," : "") + p->X[i].first;
        rel += "} ";
      }
    }
    std::string tag = p->caseTag == "refl"
                          ? "equal"
                          : (p->kind == ChorpoKind::Horpo ? "order case " : "closure case ") +
                                p->caseTag;
    line(id, printSurfaceTerm(p->lhs) + rel + printSurfaceTerm(p->rhs) + "   [" + tag + "]");
    for (auto& s : p->subs) chorpo(s);
    for (auto& s : p->aSubs) chorpo(s);
  }
};

}  // namespace

std::string emitTraceText(const TraceDocument& doc) {
  std::ostringstream os;
  os << "method: " << doc.method << "\n";
  if (!doc.note.empty()) os << "note: " << doc.note << "\n";
  for (auto& rt : doc.rules) {
    const RewriteRule* rule = nullptr;
    for (auto& r : doc.spec.rules)
      if (r.name == rt.ruleName) rule = &r;
    os << rt.ruleName;
    if (rule)
      os << ": " << printSurfaceTerm(rule->lhs) << " -> " << printSurfaceTerm(rule->rhs);
    os << "\n  verdict: " << rt.verdict;
    if (rt.hitBudget) os << " (budget exhausted)";
    os << "\n";
    TextEmitter em{os};
    if (rt.rpo) em.rpo(rt.rpo);
    if (rt.closure) em.closure(rt.closure);
    if (rt.horpo) em.horpo(rt.horpo);
    if (rt.chorpo) em.chorpo(rt.chorpo);
  }
  return os.str();
}

}  // namespace hrs
