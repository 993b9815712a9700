#include "sde/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace sde {

namespace {

struct Token {
  enum class Type { Ident, Number, Punct, End };
  Type type = Type::End;
  std::string text;
  SourceSpan span;
};

[[noreturn]] void syntax_error(SourceSpan at, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg)
      .with_span(at);
}

[[noreturn]] void symbol_error(ErrorKind kind, SourceSpan at, const std::string& msg) {
  throw Error(kind, std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg).with_span(at);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const std::set<std::string> two_char = {"<=", "!=", "=>", "&&", "||", ">="};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '#')) ++j;
      t.type = Token::Type::Ident;
      t.text = std::string(src.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.type = Token::Type::Number;
      t.text = std::string(src.substr(i, j - i));
    } else {
      t.type = Token::Type::Punct;
      std::string two(src.substr(i, 2));
      if (two.size() == 2 && two_char.count(two)) {
        t.text = two;
      } else if (std::string("()[]{},;='+-*/<>!").find(c) != std::string::npos) {
        t.text = std::string(1, c);
      } else {
        syntax_error(t.span, std::string("unexpected character '") + c + "'");
      }
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

struct RawDeriv {
  std::size_t order = 0;
  DerivKind kind = DerivKind::Tail;
  TermPtr rhs;
  SourceSpan span;
};

struct RawEvenOdd {
  std::optional<std::string> even, odd;
  SourceSpan span;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, AlgebraPtr alg) : toks_(std::move(toks)), alg_(std::move(alg)) {}

  // Statement level --------------------------------------------------------

  SpecFile parse_file() {
    while (!at_end()) statement();
    return resolve();
  }

  TermPtr parse_standalone(const SpecFile& ctx) {
    for (const auto& d : ctx.defs) def_arity_[d.name] = d.params.size();
    TermPtr t = term();
    if (!at_end()) syntax_error(peek().span, "unexpected '" + peek().text + "' after term");
    std::map<std::string, std::size_t> orders;
    for (const auto& e : ctx.system.equations) orders[e.var] = 1;
    return resolve_term(t, orders, {});
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().type == Token::Type::End; }
  bool is(const char* punct, std::size_t k = 0) const {
    return peek(k).type == Token::Type::Punct && peek(k).text == punct;
  }
  bool is_ident(const char* word, std::size_t k = 0) const {
    return peek(k).type == Token::Type::Ident && peek(k).text == word;
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  void expect(const char* punct) {
    if (!is(punct)) syntax_error(peek().span, std::string("expected '") + punct + "' but found '" + describe(peek()) + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().type != Token::Type::Ident) syntax_error(peek().span, "expected identifier but found '" + describe(peek()) + "'");
    return next().text;
  }
  static std::string describe(const Token& t) { return t.type == Token::Type::End ? "end of input" : t.text; }

  void statement() {
    SourceSpan span = peek().span;
    if (is_ident("algebra")) {
      ++pos_;
      ident();
      if (is("(")) {
        ++pos_;
        next();
        expect(")");
      }
      expect(";");
      return;
    }
    if (is_ident("def")) {
      def();
      return;
    }
    if (peek().type != Token::Type::Ident) syntax_error(span, "expected a statement but found '" + describe(peek()) + "'");
    const std::string word = peek().text;
    if ((word == "delta" || word == "ddx" || word == "even" || word == "odd") && is("(", 1) &&
        peek(2).type == Token::Type::Ident && is(")", 3) && is("=", 4)) {
      pos_ += 2;
      std::string var = ident();
      expect(")");
      expect("=");
      note_var(var);
      if (word == "even" || word == "odd") {
        std::string target = ident();
        auto& eo = evenodd_[var];
        auto& slot = word == "even" ? eo.even : eo.odd;
        if (slot) syntax_error(span, word + "(" + var + ") is defined twice");
        slot = target;
        eo.span = span;
        targets_.push_back({target, span});
      } else {
        add_deriv(var, {1, word == "delta" ? DerivKind::Delta : DerivKind::Ddx, term(), span});
      }
      expect(";");
      return;
    }
    std::string var = ident();
    std::size_t primes = 0;
    while (is("'")) {
      ++pos_;
      ++primes;
    }
    note_var(var);
    if (is("(")) {
      ++pos_;
      if (peek().type != Token::Type::Number || peek().text != "0") syntax_error(peek().span, "initial values are written v(0)");
      ++pos_;
      expect(")");
      expect("=");
      Elem value = element();
      expect(";");
      auto& inits = inits_[var];
      if (inits.count(primes)) syntax_error(span, "initial value of " + var + std::string(primes, '\'') + " given twice");
      inits[primes] = value;
      return;
    }
    if (primes == 0) syntax_error(peek().span, "expected v(0) = ... or v' = ... for '" + var + "'");
    expect("=");
    add_deriv(var, {primes, DerivKind::Tail, term(), span});
    expect(";");
  }

  void note_var(const std::string& var) {
    if (builtin_arity(var) || var == "def" || var == "algebra")
      syntax_error(peek().span, "'" + var + "' is reserved");
    if (std::find(order_.begin(), order_.end(), var) == order_.end()) order_.push_back(var);
  }

  void add_deriv(const std::string& var, RawDeriv d) {
    if (derivs_.count(var)) syntax_error(d.span, "a derivative equation for " + var + " is given twice");
    derivs_[var] = std::move(d);
  }

  Elem element() {
    SourceSpan span = peek().span;
    std::string text;
    if (is("-")) {
      ++pos_;
      text = "-";
    }
    if (peek().type == Token::Type::Ident) {
      text += next().text;
    } else if (peek().type == Token::Type::Number) {
      text += next().text;
      if (is("/") && peek(1).type == Token::Type::Number) {
        ++pos_;
        text += "/" + next().text;
      }
    } else {
      syntax_error(span, "expected an element but found '" + describe(peek()) + "'");
    }
    try {
      return alg_->parse(text);
    } catch (const Error& e) {
      syntax_error(span, e.what());
    }
  }

  // Definitions -------------------------------------------------------------

  void def() {
    SourceSpan span = next().span;
    GsosDef d;
    d.span = span;
    d.name = ident();
    if (builtin_arity(d.name)) syntax_error(span, "'" + d.name + "' is a built-in operator");
    if (def_arity_.count(d.name)) syntax_error(span, "operator " + d.name + " is defined twice");
    expect("(");
    if (!is(")")) {
      d.params.push_back(ident());
      while (is(",")) {
        ++pos_;
        d.params.push_back(ident());
      }
    }
    expect(")");
    for (std::size_t i = 0; i < d.params.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (d.params[i] == d.params[j]) syntax_error(span, "parameter " + d.params[i] + " repeated");
    def_arity_[d.name] = d.params.size();
    params_ = &d.params;
    expect("{");
    while (!is("}")) {
      if (at_end()) syntax_error(peek().span, "unterminated definition of " + d.name);
      GuardPtr g = guard_otherwise();
      if (is_ident("when")) {
        ++pos_;
        g = guard();
        expect("=>");
      } else if (is_ident("otherwise")) {
        ++pos_;
        expect("=>");
      }
      if (is_ident("out")) {
        ++pos_;
        expect("=");
        d.out_clauses.push_back({g, head_expr()});
      } else if (is_ident("deriv")) {
        ++pos_;
        expect("=");
        d.deriv_clauses.push_back({g, term()});
      } else {
        syntax_error(peek().span, "expected 'out' or 'deriv' but found '" + describe(peek()) + "'");
      }
      expect(";");
    }
    expect("}");
    params_ = nullptr;
    if (d.out_clauses.empty()) syntax_error(span, d.name + " has no out clause");
    if (d.deriv_clauses.empty()) syntax_error(span, d.name + " has no deriv clause");
    defs_.push_back(std::move(d));
  }

  std::optional<std::size_t> param_index(const std::string& name) const {
    if (!params_) return std::nullopt;
    for (std::size_t i = 0; i < params_->size(); ++i)
      if ((*params_)[i] == name) return i;
    return std::nullopt;
  }

  bool head_ref_ahead() const {
    return is("(", 1) && peek(2).type == Token::Type::Number && peek(2).text == "0" && is(")", 3);
  }

  // Guards ------------------------------------------------------------------

  GuardPtr guard() {
    GuardPtr g = guard_and();
    if (!is("||")) return g;
    auto out = std::make_shared<Guard>();
    out->kind = Guard::Kind::Or;
    out->parts.push_back(g);
    while (is("||")) {
      ++pos_;
      out->parts.push_back(guard_and());
    }
    return out;
  }

  GuardPtr guard_and() {
    GuardPtr g = guard_not();
    if (!is("&&")) return g;
    auto out = std::make_shared<Guard>();
    out->kind = Guard::Kind::And;
    out->parts.push_back(g);
    while (is("&&")) {
      ++pos_;
      out->parts.push_back(guard_not());
    }
    return out;
  }

  GuardPtr guard_not() {
    if (is("!")) {
      ++pos_;
      auto out = std::make_shared<Guard>();
      out->kind = Guard::Kind::Not;
      out->parts.push_back(guard_not());
      return out;
    }
    if (is("(")) {
      std::size_t save = pos_;
      try {
        ++pos_;
        GuardPtr g = guard();
        expect(")");
        return g;
      } catch (const Error&) {
        pos_ = save;
      }
    }
    HeadExprPtr lhs = head_expr();
    std::string cmp = peek().text;
    if (peek().type != Token::Type::Punct || (cmp != "=" && cmp != "!=" && cmp != "<" && cmp != "<=" && cmp != ">" && cmp != ">="))
      syntax_error(peek().span, "expected a comparison but found '" + describe(peek()) + "'");
    ++pos_;
    HeadExprPtr rhs = head_expr();
    if (cmp == "=") return guard_cmp(Guard::Kind::Eq, lhs, rhs);
    if (cmp == "!=") return guard_cmp(Guard::Kind::Ne, lhs, rhs);
    if (cmp == "<") return guard_cmp(Guard::Kind::Lt, lhs, rhs);
    if (cmp == "<=") return guard_cmp(Guard::Kind::Le, lhs, rhs);
    if (cmp == ">") return guard_cmp(Guard::Kind::Lt, rhs, lhs);
    return guard_cmp(Guard::Kind::Le, rhs, lhs);
  }

  // Head expressions --------------------------------------------------------

  HeadExprPtr head_expr() {
    HeadExprPtr e = head_prod();
    while (is("+") || is("-")) {
      bool add = next().text == "+";
      e = hx_op(add ? HeadExpr::Kind::Add : HeadExpr::Kind::Sub, {e, head_prod()});
    }
    return e;
  }

  HeadExprPtr head_prod() {
    HeadExprPtr e = head_unary();
    while (is("*") || is("/")) {
      bool mul = next().text == "*";
      e = hx_op(mul ? HeadExpr::Kind::Mul : HeadExpr::Kind::Div, {e, head_unary()});
    }
    return e;
  }

  HeadExprPtr head_unary() {
    if (is("-")) {
      if (peek(1).type == Token::Type::Number || (peek(1).type == Token::Type::Ident && peek(1).text == "inf")) return hx_literal(element());
      ++pos_;
      return hx_op(HeadExpr::Kind::Neg, {head_unary()});
    }
    return head_atom();
  }

  HeadExprPtr head_atom() {
    SourceSpan span = peek().span;
    if (peek().type == Token::Type::Number) return hx_literal(element());
    if (is("(")) {
      ++pos_;
      HeadExprPtr e = head_expr();
      expect(")");
      return e;
    }
    if (peek().type != Token::Type::Ident) syntax_error(span, "expected a head expression but found '" + describe(peek()) + "'");
    std::string name = peek().text;
    if (auto p = param_index(name)) {
      if (head_ref_ahead()) {
        pos_ += 4;
        return hx_head(*p, name);
      }
      ++pos_;
      auto h = std::make_shared<HeadExpr>();
      h->kind = HeadExpr::Kind::NonHeadRef;
      h->param = *p;
      h->name = name;
      while (is("'")) {
        ++pos_;
        ++h->order;
      }
      return h;
    }
    if ((name == "inv" || name == "sqrt") && is("(", 1)) {
      pos_ += 2;
      HeadExprPtr e = head_expr();
      expect(")");
      return hx_op(name == "inv" ? HeadExpr::Kind::Inv : HeadExpr::Kind::Sqrt, {e});
    }
    if (name == "inf" || name == "true" || name == "false") return hx_literal(element());
    symbol_error(ErrorKind::UnknownSymbol, span, "unknown name '" + name + "' in head expression");
  }

  // Terms -------------------------------------------------------------------

  TermPtr term() {
    TermPtr t = prod();
    while (is("+") || is("-")) {
      bool add = next().text == "+";
      TermPtr rhs = prod();
      t = t_app(op::kAdd, {t, add ? rhs : t_app(op::kNeg, {rhs})});
    }
    return t;
  }

  TermPtr prod() {
    TermPtr t = unary();
    while (is("*") || is("/")) {
      bool mul = next().text == "*";
      TermPtr rhs = unary();
      t = t_app(op::kMul, {t, mul ? rhs : t_app(op::kInv, {rhs})});
    }
    return t;
  }

  TermPtr unary() {
    if (is("-")) {
      ++pos_;
      return t_app(op::kNeg, {unary()});
    }
    TermPtr t = atom();
    while (is("'")) {
      ++pos_;
      if (t->kind == Term::Kind::Ref) {
        t = t_ref(t->name, t->order + 1, t->param);
      } else {
        t = t_deriv_of(t);
      }
    }
    return t;
  }

  TermPtr atom() {
    SourceSpan span = peek().span;
    if (peek().type == Token::Type::Number) return t_literal(element());
    if (is("[")) {
      ++pos_;
      HeadExprPtr e = head_expr();
      expect("]");
      return t_const(e);
    }
    if (is("(")) {
      ++pos_;
      TermPtr t = term();
      expect(")");
      return t;
    }
    if (peek().type != Token::Type::Ident) syntax_error(span, "expected a term but found '" + describe(peek()) + "'");
    std::string name = next().text;
    spans_[name].push_back(span);
    if (name == op::kX) return t_app(op::kX, {});
    if (auto p = param_index(name)) {
      if (is("(") && peek(1).type == Token::Type::Number && peek(1).text == "0" && is(")", 2)) {
        pos_ += 3;
        return t_const(hx_head(*p, name));
      }
      return t_ref(name, 0, *p);
    }
    if (is("(")) {
      ++pos_;
      std::vector<TermPtr> args;
      if (!is(")")) {
        args.push_back(term());
        while (is(",")) {
          ++pos_;
          args.push_back(term());
        }
      }
      expect(")");
      auto t = std::make_shared<Term>();
      t->kind = Term::Kind::App;
      t->name = name;
      t->args = std::move(args);
      app_spans_[t.get()] = span;
      return t;
    }
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Ref;
    t->name = name;
    ref_spans_[t.get()] = span;
    return t;
  }

  // Resolution --------------------------------------------------------------

  SourceSpan span_of(const Term& t) const {
    if (auto it = app_spans_.find(&t); it != app_spans_.end()) return it->second;
    if (auto it = ref_spans_.find(&t); it != ref_spans_.end()) return it->second;
    return {};
  }

  void check_head_expr(const HeadExpr& e, bool allow_params, SourceSpan span) const {
    if (!allow_params && (e.kind == HeadExpr::Kind::Head || e.kind == HeadExpr::Kind::NonHeadRef))
      syntax_error(span, "argument heads are only available inside definitions");
    for (const auto& a : e.args) check_head_expr(*a, allow_params, span);
  }

  // Maps surface references to flattened unknowns and checks operator arities.
  TermPtr resolve_term(const TermPtr& t, const std::map<std::string, std::size_t>& orders, SourceSpan where) {
    switch (t->kind) {
      case Term::Kind::Const:
        check_head_expr(*t->value, false, where);
        return t;
      case Term::Kind::Leaf: return t;
      case Term::Kind::DerivOf:
        syntax_error(where, "derivatives of compound terms are not allowed in equations");
      case Term::Kind::Ref: {
        SourceSpan at = span_of(*t);
        if (at.line == 0) at = where;
        auto it = orders.find(t->name);
        if (it == orders.end()) {
          if (def_arity_.count(t->name) || builtin_arity(t->name))
            symbol_error(ErrorKind::ArityMismatch, at, "operator " + t->name + " used without arguments");
          symbol_error(ErrorKind::UnknownSymbol, at, "unknown stream '" + t->name + "'");
        }
        if (t->order >= it->second)
          syntax_error(at, "derivative " + t->name + std::string(t->order, '\'') +
                               " of an unknown may not appear on a right-hand side");
        return t_ref(flattened_name(t->name, t->order));
      }
      case Term::Kind::App: break;
    }
    SourceSpan at = span_of(*t);
    if (at.line == 0) at = where;
    check_arity(t->name, t->args.size(), at);
    std::vector<TermPtr> args;
    for (const auto& a : t->args) args.push_back(resolve_term(a, orders, at));
    return t_app(t->name, std::move(args));
  }

  void check_arity(const std::string& name, std::size_t n, SourceSpan at) const {
    std::optional<std::size_t> arity = builtin_arity(name);
    if (!arity) {
      auto it = def_arity_.find(name);
      if (it == def_arity_.end()) symbol_error(ErrorKind::UnknownSymbol, at, "unknown operator '" + name + "'");
      arity = it->second;
    }
    if (*arity != n)
      symbol_error(ErrorKind::ArityMismatch, at,
                   name + " expects " + std::to_string(*arity) + " arguments, got " + std::to_string(n));
  }

  void check_def_term(const Term& t, SourceSpan where) const {
    if (t.kind == Term::Kind::Ref && !t.param) {
      SourceSpan at = span_of(t);
      if (def_arity_.count(t.name) || builtin_arity(t.name))
        symbol_error(ErrorKind::ArityMismatch, at, "operator " + t.name + " used without arguments");
      symbol_error(ErrorKind::UnknownSymbol, at.line ? at : where, "unknown name '" + t.name + "' in definition");
    }
    if (t.kind == Term::Kind::App) check_arity(t.name, t.args.size(), span_of(t).line ? span_of(t) : where);
    for (const auto& a : t.args) check_def_term(*a, where);
  }

  SpecFile resolve() {
    SpecFile spec;
    spec.algebra = alg_;
    spec.system.algebra = alg_;
    for (const auto& d : defs_)
      for (const auto& c : d.deriv_clauses) check_def_term(*c.deriv, d.span);
    spec.defs = defs_;

    std::map<std::string, std::size_t> orders;
    for (const auto& var : order_) {
      if (evenodd_.count(var)) {
        orders[var] = 1;
      } else if (auto it = derivs_.find(var); it != derivs_.end()) {
        orders[var] = it->second.order;
      }
    }
    for (const auto& var : order_) {
      auto& inits = inits_[var];
      auto eo = evenodd_.find(var);
      auto dv = derivs_.find(var);
      if (eo != evenodd_.end()) {
        if (dv != derivs_.end()) syntax_error(dv->second.span, var + " has both even/odd and derivative equations");
        if (!eo->second.even || !eo->second.odd)
          syntax_error(eo->second.span, var + " needs both even(" + var + ") and odd(" + var + ")");
        if (!inits.count(0))
          symbol_error(ErrorKind::MissingInitialValue, eo->second.span, "missing initial value " + var + "(0)");
        if (inits.size() > 1) syntax_error(eo->second.span, "higher initial values are meaningless for " + var);
        Equation e;
        e.var = var;
        e.head = inits[0];
        e.even_odd = true;
        e.even_target = *eo->second.even;
        e.odd_target = *eo->second.odd;
        e.span = eo->second.span;
        spec.system.equations.push_back(std::move(e));
        continue;
      }
      if (dv == derivs_.end()) {
        SourceSpan at = spans_.count(var) ? spans_[var].front() : SourceSpan{};
        syntax_error(at, "no equation defines " + var);
      }
      const RawDeriv& raw = dv->second;
      for (std::size_t k = 0; k < raw.order; ++k)
        if (!inits.count(k))
          symbol_error(ErrorKind::MissingInitialValue, raw.span,
                       "missing initial value " + var + std::string(k, '\'') + "(0)");
      for (const auto& [k, _] : inits)
        if (k >= raw.order) syntax_error(raw.span, "initial value of " + var + std::string(k, '\'') + " is not used");
      TermPtr rhs = resolve_term(raw.rhs, orders, raw.span);
      for (std::size_t k = 0; k < raw.order; ++k) {
        Equation e;
        e.var = flattened_name(var, k);
        e.head = inits[k];
        e.span = raw.span;
        if (k + 1 < raw.order) {
          e.rhs = t_ref(flattened_name(var, k + 1));
        } else {
          e.rhs = rhs;
          e.deriv = raw.kind;
        }
        spec.system.equations.push_back(std::move(e));
      }
    }
    for (const auto& [target, span] : targets_)
      if (!orders.count(target)) symbol_error(ErrorKind::UnknownSymbol, span, "unknown stream '" + target + "'");
    return spec;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  AlgebraPtr alg_;
  const std::vector<std::string>* params_ = nullptr;
  std::vector<GsosDef> defs_;
  std::map<std::string, std::size_t> def_arity_;
  std::vector<std::string> order_;
  std::map<std::string, std::map<std::size_t, Elem>> inits_;
  std::map<std::string, RawDeriv> derivs_;
  std::map<std::string, RawEvenOdd> evenodd_;
  std::vector<std::pair<std::string, SourceSpan>> targets_;
  std::map<std::string, std::vector<SourceSpan>> spans_;
  std::map<const Term*, SourceSpan> app_spans_;
  std::map<const Term*, SourceSpan> ref_spans_;
};

AlgebraPtr scan_algebra(const std::vector<Token>& toks) {
  AlgebraPtr found;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].type != Token::Type::Ident || toks[i].text != "algebra") continue;
    if (i > 0 && !(toks[i - 1].type == Token::Type::Punct && (toks[i - 1].text == ";" || toks[i - 1].text == "}")))
      continue;
    std::string name = toks[i + 1].text;
    if (i + 4 < toks.size() && toks[i + 2].text == "(" && toks[i + 4].text == ")")
      name += "(" + toks[i + 3].text + ")";
    if (found) syntax_error(toks[i].span, "algebra declared twice");
    try {
      found = algebra_by_name(name);
    } catch (const Error& e) {
      syntax_error(toks[i + 1].span, e.what());
    }
  }
  return found ? found : rationals();
}

}  // namespace

SpecFile parse_spec(std::string_view text, const AlgebraPtr& algebra_override) {
  std::vector<Token> toks = lex(text);
  AlgebraPtr alg = scan_algebra(toks);
  if (algebra_override) alg = algebra_override;
  Parser p(std::move(toks), alg);
  return p.parse_file();
}

TermPtr parse_term(std::string_view text, const SpecFile& context) {
  Parser p(lex(text), context.algebra ? context.algebra : rationals());
  return p.parse_standalone(context);
}

}  // namespace sde
