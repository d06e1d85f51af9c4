#include "hrs/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hrs {

std::string Diagnostic::render() const {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << message;
  return os.str();
}

namespace {

std::string joinDiagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) os << '\n';
    os << ds[i].render();
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> ds)
    : std::runtime_error(joinDiagnostics(ds)), diagnostics(std::move(ds)) {}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Semi, Colon, Star, Gt, Eq, Arrow, Lambda, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Diagnostic> errs;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      int l = line, co = col;
      auto push = [&](Tok k, std::string t) { out.push_back({k, std::move(t), l, co}); };
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
                src[pos] == '\'')) {
          id += src[pos];
          advance();
        }
        push(Tok::Ident, id);
        continue;
      }
      if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
        advance();
        advance();
        push(Tok::Arrow, "->");
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, "("); break;
        case ')': push(Tok::RParen, ")"); break;
        case ',': push(Tok::Comma, ","); break;
        case ';': push(Tok::Semi, ";"); break;
        case ':': push(Tok::Colon, ":"); break;
        case '*': push(Tok::Star, "*"); break;
        case '>': push(Tok::Gt, ">"); break;
        case '=': push(Tok::Eq, "="); break;
        case '\\': push(Tok::Lambda, "\\"); break;
        case '.': push(Tok::Dot, "."); break;
        default:
          errs.push_back({l, co, std::string("unexpected character '") + c + "'"});
          advance();
          continue;
      }
      advance();
    }
    out.push_back({Tok::End, "", line, col});
    return out;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t i = 0;
  std::vector<Diagnostic> errs;
  SpecFile spec;
  int ruleCount = 0;

  const Token& peek() const { return toks[i]; }
  const Token& next() { return toks[i++]; }
  bool at(Tok k) const { return toks[i].kind == k; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    errs.push_back({t.line, t.column, msg});
    throw ParseError(errs);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(peek(), "expected " + what + ", found '" + peek().text + "'");
    return next();
  }

  std::string expectIdent(const std::string& what) {
    return expect(Tok::Ident, what).text;
  }

  // -------- types: Type ::= Atom ('->' Type)? ; Atom ::= ident | '(' Type ')'
  TypePtr parseType() {
    TypePtr lhs = parseTypeAtom();
    if (at(Tok::Arrow)) {
      next();
      return mkArrow(lhs, parseType());
    }
    return lhs;
  }

  TypePtr parseTypeAtom() {
    if (at(Tok::LParen)) {
      next();
      TypePtr t = parseType();
      expect(Tok::RParen, "')'");
      return t;
    }
    Token t = expect(Tok::Ident, "a sort name");
    if (!spec.cfg.sorts.count(t.text)) fail(t, "undeclared sort '" + t.text + "'");
    return mkSort(t.text);
  }

  // -------- terms
  // Term ::= '\' x ':' Type '.' Term | AppChain
  // AppChain ::= Atom+  (left-associative application)
  // Atom ::= funName '(' Term,* ')' | funName | varName | '(' Term ')'
  TermPtr parseTerm() {
    if (at(Tok::Lambda)) {
      Token lam = next();
      std::string x = expectIdent("a binder name");
      if (spec.cfg.symbols.find(x)) fail(lam, "binder '" + x + "' shadows a function symbol");
      expect(Tok::Colon, "':'");
      TypePtr ty = parseType();
      expect(Tok::Dot, "'.'");
      TermPtr body = parseTerm();
      return mkAbs(x, ty, body);
    }
    TermPtr head = parseAtom();
    while (at(Tok::Ident) || at(Tok::LParen) || at(Tok::Lambda)) {
      TermPtr arg = at(Tok::Lambda) ? parseTerm() : parseAtom();
      head = mkApp(head, arg);
    }
    return head;
  }

  TermPtr parseAtom() {
    if (at(Tok::LParen)) {
      next();
      TermPtr t = parseTerm();
      expect(Tok::RParen, "')'");
      return t;
    }
    Token id = expect(Tok::Ident, "a term");
    if (const FunctionSymbol* f = spec.cfg.symbols.find(id.text)) {
      std::vector<TermPtr> args;
      if (at(Tok::LParen)) {
        next();
        if (!at(Tok::RParen)) {
          args.push_back(parseTerm());
          while (at(Tok::Comma)) {
            next();
            args.push_back(parseTerm());
          }
        }
        expect(Tok::RParen, "')'");
      }
      if (args.size() != f->argTypes.size())
        fail(id, "function symbol '" + id.text + "' expects " +
                     std::to_string(f->argTypes.size()) + " argument(s), got " +
                     std::to_string(args.size()) + " (partial application is not allowed)");
      return mkFun(id.text, std::move(args));
    }
    return mkVar(id.text);
  }

  // -------- declarations
  void parseDecl() {
    Token kw = expect(Tok::Ident, "a declaration keyword");
    const std::string& k = kw.text;
    if (k == "sort") {
      std::string name = expectIdent("a sort name");
      if (spec.cfg.sorts.count(name)) fail(kw, "sort '" + name + "' declared twice");
      spec.cfg.sorts[name] = SortSymbol{name, 0};
    } else if (k == "sortprec") {
      Token a = expect(Tok::Ident, "a sort name");
      bool strict = at(Tok::Gt);
      if (!strict && !at(Tok::Eq)) fail(peek(), "expected '>' or '='");
      next();
      Token b = expect(Tok::Ident, "a sort name");
      for (auto* t : {&a, &b})
        if (!spec.cfg.sorts.count(t->text)) fail(*t, "undeclared sort '" + t->text + "'");
      if (strict)
        spec.cfg.sortPrec.addStrict(a.text, b.text);
      else
        spec.cfg.sortPrec.addEquiv(a.text, b.text);
    } else if (k == "fun") {
      Token name = expect(Tok::Ident, "a function name");
      if (spec.cfg.symbols.find(name.text))
        fail(name, "function '" + name.text + "' declared twice");
      expect(Tok::Colon, "':'");
      // Arguments are '*'-separated; the first top-level '->' separates the
      // argument list from the result type.
      std::vector<TypePtr> args;
      TypePtr first = parseTypeAtom();
      if (at(Tok::Star) || at(Tok::Arrow)) {
        args.push_back(first);
        while (at(Tok::Star)) {
          next();
          args.push_back(parseTypeAtom());
        }
        if (at(Tok::Arrow)) {
          next();
          spec.cfg.symbols.declare({name.text, std::move(args), parseType()});
        } else if (args.size() > 1) {
          fail(peek(), "expected '->' before the result type");
        } else {
          // A bare arrow-free atom: constant of that type.
          spec.cfg.symbols.declare({name.text, {}, args[0]});
        }
      } else {
        spec.cfg.symbols.declare({name.text, {}, first});
      }
    } else if (k == "prec") {
      Token a = expect(Tok::Ident, "a function name");
      bool strict = at(Tok::Gt);
      if (!strict && !at(Tok::Eq)) fail(peek(), "expected '>' or '='");
      next();
      Token b = expect(Tok::Ident, "a function name");
      for (auto* t : {&a, &b})
        if (!spec.cfg.symbols.find(t->text)) fail(*t, "undeclared function '" + t->text + "'");
      if (strict)
        spec.cfg.prec.addStrict(a.text, b.text);
      else
        spec.cfg.prec.addEquiv(a.text, b.text);
    } else if (k == "status") {
      Token name = expect(Tok::Ident, "a function name");
      if (!spec.cfg.symbols.find(name.text))
        fail(name, "undeclared function '" + name.text + "'");
      expect(Tok::Eq, "'='");
      Token st = expect(Tok::Ident, "'lex' or 'mul'");
      if (st.text == "lex")
        spec.cfg.status[name.text] = StatusKind::Lex;
      else if (st.text == "mul")
        spec.cfg.status[name.text] = StatusKind::Mul;
      else
        fail(st, "status must be 'lex' or 'mul'");
    } else if (k == "var") {
      Token name = expect(Tok::Ident, "a variable name");
      if (spec.ruleVars.count(name.text)) fail(name, "variable '" + name.text + "' declared twice");
      if (spec.cfg.symbols.find(name.text))
        fail(name, "'" + name.text + "' is already a function symbol");
      expect(Tok::Colon, "':'");
      spec.ruleVars[name.text] = parseType();
    } else if (k == "rule") {
      TermPtr lhs = parseTerm();
      Token arrow = expect(Tok::Arrow, "'->'");
      TermPtr rhs = parseTerm();
      checkRule(kw, arrow, lhs, rhs);
    } else {
      fail(kw, "unknown declaration '" + k + "'");
    }
    expect(Tok::Semi, "';'");
  }

  void collectFreeRefs(const TermPtr& t, const Token& where) {
    for (auto& x : freeVars(t))
      if (!spec.ruleVars.count(x)) fail(where, "undeclared variable '" + x + "'");
  }

  // "Bound variables are all different" and distinct from the declared
  // rule variables.
  void checkBinders(const TermPtr& t, std::set<std::string>& seen, const Token& where) {
    switch (t->kind) {
      case TermKind::Var: return;
      case TermKind::Abs:
        if (spec.ruleVars.count(t->name))
          fail(where, "binder '" + t->name + "' shadows a declared rule variable");
        if (!seen.insert(t->name).second)
          fail(where, "binder '" + t->name + "' is bound twice in the same rule side");
        checkBinders(t->body, seen, where);
        return;
      case TermKind::App:
        checkBinders(t->fun, seen, where);
        checkBinders(t->arg, seen, where);
        return;
      case TermKind::Fun:
        for (auto& a : t->args) checkBinders(a, seen, where);
        return;
    }
  }

  void checkRule(const Token& kw, const Token& arrow, const TermPtr& lhs, const TermPtr& rhs) {
    if (lhs->kind != TermKind::Fun)
      fail(kw, "rule left-hand side must be of the form f(...) for a declared function symbol");
    collectFreeRefs(lhs, kw);
    collectFreeRefs(rhs, arrow);
    auto fvL = freeVars(lhs);
    for (auto& x : freeVars(rhs))
      if (!fvL.count(x))
        fail(arrow, "right-hand side variable '" + x + "' does not occur in the left-hand side");
    {
      std::set<std::string> seen;
      checkBinders(lhs, seen, kw);
    }
    {
      std::set<std::string> seen;
      checkBinders(rhs, seen, arrow);
    }
    TypePtr lt, rt;
    try {
      lt = typecheck(spec.cfg.symbols, spec.ruleVars, lhs);
    } catch (const TypeError& e) {
      fail(kw, std::string("left-hand side does not typecheck: ") + e.what());
    }
    try {
      rt = typecheck(spec.cfg.symbols, spec.ruleVars, rhs);
    } catch (const TypeError& e) {
      fail(arrow, std::string("right-hand side does not typecheck: ") + e.what());
    }
    if (!typeStructEq(lt, rt))
      fail(arrow, "rule sides have different types: " + showType(lt) + " vs " + showType(rt));
    RewriteRule r;
    r.name = "rule" + std::to_string(++ruleCount);
    // Restrict the environment to the variables the rule actually uses.
    auto fvR = freeVars(rhs);
    for (auto& x : fvL) r.env[x] = spec.ruleVars.at(x);
    r.lhs = lhs;
    r.rhs = rhs;
    r.type = lt;
    spec.rules.push_back(std::move(r));
  }

  SpecFile run() {
    while (!at(Tok::End)) parseDecl();
    auto violations = validatePrecedence(spec.cfg);
    if (!violations.empty()) {
      for (auto& v : violations) errs.push_back({0, 0, v.kind + ": " + v.detail});
      throw ParseError(errs);
    }
    return std::move(spec);
  }
};

}  // namespace

SpecFile parseSpec(const std::string& text) {
  Lexer lex(text);
  std::vector<Token> toks = lex.run();
  if (!lex.errs.empty()) throw ParseError(lex.errs);
  Parser p;
  p.toks = std::move(toks);
  return p.run();
}

SpecFile parseSpecFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError({{0, 0, "cannot open file: " + path}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseSpec(buf.str());
}

// ----------------------------------------------------------- printing

std::string printSurfaceType(const TypePtr& ty) {
  if (!ty->arrow) return ty->sort;
  std::string dom =
      ty->dom->arrow ? "(" + printSurfaceType(ty->dom) + ")" : printSurfaceType(ty->dom);
  return dom + " -> " + printSurfaceType(ty->cod);
}

namespace {

std::string printTermPrec(const TermPtr& t, bool atomContext) {
  switch (t->kind) {
    case TermKind::Var: return t->name;
    case TermKind::Fun: {
      if (t->args.empty()) return t->name;
      std::string out = t->name + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) out += ", ";
        out += printTermPrec(t->args[i], false);
      }
      return out + ")";
    }
    case TermKind::Abs: {
      std::string out =
          "\\" + t->name + ":" + printSurfaceType(t->varType) + ". " + printTermPrec(t->body, false);
      return atomContext ? "(" + out + ")" : out;
    }
    case TermKind::App: {
      std::string out = printTermPrec(t->fun, t->fun->kind == TermKind::Abs) + " " +
                        printTermPrec(t->arg, true);
      return atomContext ? "(" + out + ")" : out;
    }
  }
  return "?";
}

}  // namespace

std::string printSurfaceTerm(const TermPtr& t) { return printTermPrec(t, false); }

std::string printSpec(const SpecFile& spec) {
  std::ostringstream os;
  for (auto& [name, s] : spec.cfg.sorts) os << "sort " << name << ";\n";
  for (auto& [a, b] : spec.cfg.sortPrec.strictEdges()) os << "sortprec " << a << " > " << b << ";\n";
  for (auto& [a, b] : spec.cfg.sortPrec.equivEdges()) os << "sortprec " << a << " = " << b << ";\n";
  for (auto& name : spec.cfg.symbols.names()) {
    const FunctionSymbol& f = spec.cfg.symbols.get(name);
    os << "fun " << name << " : ";
    if (f.argTypes.empty()) {
      os << printSurfaceType(f.resultType);
    } else {
      for (std::size_t i = 0; i < f.argTypes.size(); ++i) {
        if (i) os << " * ";
        bool paren = f.argTypes[i]->arrow;
        os << (paren ? "(" : "") << printSurfaceType(f.argTypes[i]) << (paren ? ")" : "");
      }
      os << " -> " << printSurfaceType(f.resultType);
    }
    os << ";\n";
  }
  for (auto& [a, b] : spec.cfg.prec.strictEdges()) os << "prec " << a << " > " << b << ";\n";
  for (auto& [a, b] : spec.cfg.prec.equivEdges()) os << "prec " << a << " = " << b << ";\n";
  for (auto& [f, st] : spec.cfg.status)
    os << "status " << f << " = " << (st == StatusKind::Lex ? "lex" : "mul") << ";\n";
  for (auto& [x, ty] : spec.ruleVars) os << "var " << x << " : " << printSurfaceType(ty) << ";\n";
  for (auto& r : spec.rules)
    os << "rule " << printSurfaceTerm(r.lhs) << " -> " << printSurfaceTerm(r.rhs) << ";\n";
  return os.str();
}

}  // namespace hrs
