#include "sde/engine.hpp"

#include <sstream>

#include "sde/error.hpp"

namespace sde {

namespace {

TermPtr xv(std::size_t i, const char* name) { return t_ref(name, 0, i); }
TermPtr yv(std::size_t i, const char* name) { return t_ref(name, 1, i); }
HeadExprPtr hd(std::size_t i, const char* name) { return hx_head(i, name); }

GsosDef simple_def(std::string name, std::vector<std::string> params, HeadExprPtr out, TermPtr deriv) {
  GsosDef d;
  d.name = std::move(name);
  d.params = std::move(params);
  d.out_clauses.push_back({guard_otherwise(), std::move(out)});
  d.deriv_clauses.push_back({guard_otherwise(), std::move(deriv)});
  return d;
}

using HK = HeadExpr::Kind;

std::vector<GsosDef> builtin_defs_for(const Algebra& alg) {
  std::vector<GsosDef> defs;
  defs.push_back(simple_def(op::kAdd, {"x", "y"}, hx_op(HK::Add, {hd(0, "x"), hd(1, "y")}),
                            t_app(op::kAdd, {yv(0, "x"), yv(1, "y")})));
  defs.push_back(simple_def(op::kNeg, {"x"}, hx_op(HK::Neg, {hd(0, "x")}), t_app(op::kNeg, {yv(0, "x")})));
  defs.push_back(simple_def(
      op::kMul, {"x", "y"}, hx_op(HK::Mul, {hd(0, "x"), hd(1, "y")}),
      t_app(op::kAdd, {t_app(op::kMul, {yv(0, "x"), xv(1, "y")}), t_app(op::kMul, {t_const(hd(0, "x")), yv(1, "y")})})));
  defs.push_back(simple_def(
      op::kInv, {"x"}, hx_op(HK::Inv, {hd(0, "x")}),
      t_app(op::kMul, {t_const(hx_op(HK::Neg, {hx_op(HK::Inv, {hd(0, "x")})})),
                       t_app(op::kMul, {yv(0, "x"), t_app(op::kInv, {xv(0, "x")})})})));
  defs.push_back(simple_def(op::kX, {}, hx_literal(alg.zero()), t_literal(alg.one())));
  defs.push_back(simple_def(
      op::kShuffle, {"x", "y"}, hx_op(HK::Mul, {hd(0, "x"), hd(1, "y")}),
      t_app(op::kAdd, {t_app(op::kShuffle, {yv(0, "x"), xv(1, "y")}), t_app(op::kShuffle, {xv(0, "x"), yv(1, "y")})})));
  defs.push_back(simple_def(op::kHadamard, {"x", "y"}, hx_op(HK::Mul, {hd(0, "x"), hd(1, "y")}),
                            t_app(op::kHadamard, {yv(0, "x"), yv(1, "y")})));
  defs.push_back(simple_def(
      op::kSqrt, {"x"}, hx_op(HK::Sqrt, {hd(0, "x")}),
      t_app(op::kMul, {yv(0, "x"), t_app(op::kInv, {t_app(op::kAdd, {t_const(hx_op(HK::Sqrt, {hd(0, "x")})),
                                                                      t_app(op::kSqrt, {xv(0, "x")})})})})));
  defs.push_back(simple_def(op::kZip, {"x", "y"}, hd(0, "x"), t_app(op::kZip, {xv(1, "y"), yv(0, "x")})));

  GsosDef merge;
  merge.name = op::kMerge;
  merge.params = {"x", "y"};
  GuardPtr lt = guard_cmp(Guard::Kind::Lt, hd(0, "x"), hd(1, "y"));
  GuardPtr eq = guard_cmp(Guard::Kind::Eq, hd(0, "x"), hd(1, "y"));
  GuardPtr gt = guard_cmp(Guard::Kind::Lt, hd(1, "y"), hd(0, "x"));
  merge.out_clauses.push_back({lt, hd(0, "x")});
  merge.out_clauses.push_back({guard_otherwise(), hd(1, "y")});
  merge.deriv_clauses.push_back({lt, t_app(op::kMerge, {yv(0, "x"), xv(1, "y")})});
  merge.deriv_clauses.push_back({eq, t_app(op::kMerge, {yv(0, "x"), yv(1, "y")})});
  merge.deriv_clauses.push_back({gt, t_app(op::kMerge, {xv(0, "x"), yv(1, "y")})});
  defs.push_back(std::move(merge));
  return defs;
}

class SyntacticSource final : public StreamSource {
 public:
  SyntacticSource(std::shared_ptr<Engine> e, NodeId start)
      : StreamSource(e->algebra()), engine_(std::move(e)), state_(start) {}
  std::optional<std::string> state_key(std::size_t i) override {
    at(i);
    return "n" + std::to_string(states_[i]);
  }

 protected:
  Elem compute(std::size_t i) override {
    if (i > 0) state_ = engine_->next(state_);
    states_.push_back(state_);
    return engine_->output(state_);
  }

 private:
  std::shared_ptr<Engine> engine_;
  NodeId state_;
  std::vector<NodeId> states_;
};

struct FlagGuard {
  explicit FlagGuard(bool& f) : f_(f) { f_ = true; }
  ~FlagGuard() { f_ = false; }
  bool& f_;
};

}  // namespace

std::vector<GsosDef> builtin_definitions() { return builtin_defs_for(*rationals()); }

Engine::Engine(AlgebraPtr alg) : alg_(std::move(alg)) {
  for (auto& d : builtin_defs_for(*alg_)) {
    OpInfo info;
    info.arity = d.params.size();
    info.builtin = true;
    std::string name = d.name;
    info.def = std::move(d);
    ops_[name] = std::move(info);
  }
  for (const char* native : {op::kEven, op::kOdd, op::kDelta, op::kDdx}) {
    OpInfo info;
    info.arity = 1;
    info.builtin = true;
    ops_[native] = info;
  }
}

std::shared_ptr<Engine> Engine::create(AlgebraPtr alg) { return std::shared_ptr<Engine>(new Engine(std::move(alg))); }

void Engine::add_def(const GsosDef& def) {
  if (ops_.count(def.name)) fail(ErrorKind::InvalidArgument, "operator " + def.name + " is already defined");
  OpInfo info;
  info.arity = def.params.size();
  info.def = def;
  ops_[def.name] = std::move(info);
}

void Engine::add_system(const EquationSystem& sys, const std::string& prefix) {
  require_same(*alg_, *sys.algebra, "engine system");
  for (const auto& e : sys.equations) {
    if (e.even_odd) fail(ErrorKind::UnsupportedOp, "even/odd equations are handled by 2-automata");
    if (e.deriv == DerivKind::DeltaO) fail(ErrorKind::UnsupportedOp, "delta_o equations need solve_nonstd");
    std::string name = prefix + e.var;
    if (unknowns_.count(name)) fail(ErrorKind::InvalidArgument, "unknown " + name + " is already defined");
    unknowns_[name] = UnknownInfo{e.head, e.deriv, e.rhs, prefix};
  }
}

bool Engine::has_op(const std::string& name) const { return ops_.count(name) != 0; }

bool Engine::is_builtin(const std::string& name) const {
  auto it = ops_.find(name);
  return it != ops_.end() && it->second.builtin;
}

std::vector<std::string> Engine::user_ops() const {
  std::vector<std::string> out;
  for (const auto& [name, info] : ops_)
    if (!info.builtin) out.push_back(name);
  return out;
}

const GsosDef* Engine::definition(const std::string& name) const {
  auto it = ops_.find(name);
  if (it == ops_.end() || !it->second.def) return nullptr;
  return &*it->second.def;
}

const Engine::OpInfo& Engine::op_info(const std::string& name) const {
  auto it = ops_.find(name);
  if (it == ops_.end()) fail(ErrorKind::UnknownSymbol, "unknown operator '" + name + "'");
  return it->second;
}

NodeId Engine::add(Node node, const std::string& key) {
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  table_.emplace(key, id);
  stats_.nodes = nodes_.size();
  return id;
}

NodeId Engine::constant(const Elem& a) {
  Node n{Kind::Const, "", {}, a, std::nullopt, std::nullopt, std::nullopt, false, false, std::nullopt};
  return add(std::move(n), "c" + alg_->print(a));
}

NodeId Engine::leaf(const Stream& s) {
  require_same(*alg_, *s.algebra(), "stream leaf");
  if (auto c = s.constant_value()) return constant(*c);
  std::ostringstream key;
  key << "l" << static_cast<const void*>(s.source().get()) << "@" << s.offset();
  Node n{Kind::Leaf, "", {}, Elem(), s, std::nullopt, std::nullopt, false, false, std::nullopt};
  return add(std::move(n), key.str());
}

NodeId Engine::unknown(const std::string& name) {
  if (!unknowns_.count(name)) fail(ErrorKind::UnknownSymbol, "unknown stream '" + name + "'");
  Node n{Kind::Unknown, name, {}, Elem(), std::nullopt, std::nullopt, std::nullopt, false, false, std::nullopt};
  return add(std::move(n), "u" + name);
}

NodeId Engine::app(const std::string& op, std::vector<NodeId> kids) {
  const OpInfo& info = op_info(op);
  if (info.arity != kids.size())
    fail(ErrorKind::ArityMismatch,
         op + " expects " + std::to_string(info.arity) + " arguments, got " + std::to_string(kids.size()));
  std::string key = "a" + op + "(";
  for (NodeId k : kids) key += std::to_string(k) + ",";
  key += ")";
  Node n{Kind::App, op, std::move(kids), Elem(), std::nullopt, std::nullopt, std::nullopt, false, false, std::nullopt};
  return add(std::move(n), key);
}

NodeId Engine::intern(const Term& t, const std::map<std::string, Stream>& env, const std::string& prefix) {
  switch (t.kind) {
    case Term::Kind::Const: return constant(eval_head(*alg_, *t.value, {}));
    case Term::Kind::Leaf: return leaf(*t.leaf);
    case Term::Kind::DerivOf: return next(intern(*t.args[0], env, prefix));
    case Term::Kind::Ref: {
      if (t.param) fail(ErrorKind::InvalidArgument, "parameter " + t.name + " outside its definition");
      auto it = env.find(t.name);
      NodeId base = it != env.end() ? leaf(it->second) : unknown(prefix + t.name);
      return derive_n(base, t.order);
    }
    case Term::Kind::App: break;
  }
  std::vector<NodeId> kids;
  for (const auto& a : t.args) kids.push_back(intern(*a, env, prefix));
  return app(t.name, std::move(kids));
}

std::vector<Elem> Engine::kid_heads(const Node& n) {
  std::vector<NodeId> kids = n.kids;
  std::vector<Elem> heads;
  for (NodeId k : kids) heads.push_back(output(k));
  return heads;
}

const Elem& Engine::output(NodeId id) {
  Node& n = nodes_[id];
  if (n.out) return *n.out;
  if (n.busy_out) throw Error(ErrorKind::NonProductive, "output of " + show(id) + " depends on itself");
  FlagGuard guard(n.busy_out);
  ++stats_.outputs;
  Elem value;
  switch (n.kind) {
    case Kind::Const: value = n.value; break;
    case Kind::Leaf: value = n.stream->head(); break;
    case Kind::Unknown: value = unknowns_.at(n.op).head; break;
    case Kind::App: {
      const OpInfo& info = op_info(n.op);
      if (!info.def) {
        value = behaviour(id).head();
        break;
      }
      std::vector<Elem> heads = kid_heads(n);
      bool found = false;
      for (const auto& c : info.def->out_clauses) {
        if (eval_guard(*alg_, *c.guard, heads)) {
          value = eval_head(*alg_, *c.out, heads);
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorKind::InvalidArgument, "no out clause of " + n.op + " applies");
      break;
    }
  }
  n.out = value;
  return *n.out;
}

NodeId Engine::derive_n(NodeId n, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) n = next(n);
  return n;
}

NodeId Engine::instantiate(const Term& t, const std::vector<NodeId>& args, const std::vector<Elem>& heads) {
  switch (t.kind) {
    case Term::Kind::Const: return constant(eval_head(*alg_, *t.value, heads));
    case Term::Kind::Leaf: return leaf(*t.leaf);
    case Term::Kind::DerivOf: return next(instantiate(*t.args[0], args, heads));
    case Term::Kind::Ref:
      if (!t.param) fail(ErrorKind::UnknownSymbol, "free name " + t.name + " in a definition");
      if (t.order == 0) {
        ++stats_.x_substitutions;
        return args[*t.param];
      }
      ++stats_.y_substitutions;
      return derive_n(args[*t.param], t.order);
    case Term::Kind::App: break;
  }
  std::vector<NodeId> kids;
  for (const auto& a : t.args) kids.push_back(instantiate(*a, args, heads));
  return app(t.name, std::move(kids));
}

NodeId Engine::next(NodeId id) {
  {
    Node& n = nodes_[id];
    if (n.next) return *n.next;
    if (n.busy_next) throw Error(ErrorKind::NonProductive, "derivative of " + show(id) + " depends on itself");
  }
  FlagGuard guard(nodes_[id].busy_next);
  ++stats_.derivatives;
  const Node& n = nodes_[id];
  NodeId result = 0;
  switch (n.kind) {
    case Kind::Const: result = constant(alg_->zero()); break;
    case Kind::Leaf: result = leaf(n.stream->tail()); break;
    case Kind::Unknown: {
      const UnknownInfo& u = unknowns_.at(n.op);
      NodeId rhs = intern(*u.rhs, {}, u.prefix);
      if (u.deriv == DerivKind::Delta) {
        if (!alg_->has_neg()) fail(ErrorKind::UnsupportedOp, "delta needs a ring, got " + alg_->name());
        result = app(op::kAdd, {rhs, id});
      } else if (u.deriv == DerivKind::Ddx) {
        result = app(op::kHadamard, {rhs, leaf(nats_inv(alg_))});
      } else {
        result = rhs;
      }
      break;
    }
    case Kind::App: {
      const OpInfo& info = op_info(n.op);
      if (!info.def) {
        result = leaf(behaviour(id).tail());
        break;
      }
      std::vector<NodeId> args = n.kids;
      std::vector<Elem> heads = kid_heads(n);
      const DerivClause* chosen = nullptr;
      for (const auto& c : info.def->deriv_clauses) {
        if (eval_guard(*alg_, *c.guard, heads)) {
          chosen = &c;
          break;
        }
      }
      if (!chosen) fail(ErrorKind::InvalidArgument, "no deriv clause of " + n.op + " applies");
      result = instantiate(*chosen->deriv, args, heads);
      break;
    }
  }
  nodes_[id].next = result;
  return result;
}

Stream Engine::behaviour(NodeId id) {
  if (nodes_[id].behaviour) return *nodes_[id].behaviour;
  const Node& n = nodes_[id];
  switch (n.kind) {
    case Kind::Const: nodes_[id].behaviour = sde::constant(alg_, n.value); break;
    case Kind::Leaf: nodes_[id].behaviour = *n.stream; break;
    case Kind::Unknown: {
      LateBound slot(alg_);
      nodes_[id].behaviour = slot.placeholder();
      const UnknownInfo& u = unknowns_.at(n.op);
      Stream rhs = behaviour(intern(*u.rhs, {}, u.prefix));
      Stream tail = rhs;
      if (u.deriv == DerivKind::Delta) tail = sum(rhs, slot.placeholder());
      if (u.deriv == DerivKind::Ddx) tail = hadamard(rhs, nats_inv(alg_));
      slot.bind(cons(u.head, tail));
      break;
    }
    case Kind::App: {
      const OpInfo& info = op_info(n.op);
      if (!info.builtin) {
        nodes_[id].behaviour = unfold(id);
        break;
      }
      std::vector<NodeId> kids = n.kids;
      std::vector<Stream> args;
      for (NodeId k : kids) args.push_back(behaviour(k));
      std::vector<TermPtr> leaves;
      for (const auto& s : args) leaves.push_back(t_leaf(s));
      Stream s = native_eval(*t_app(n.op, leaves), alg_, [](const std::string& name) -> Stream {
        fail(ErrorKind::UnknownSymbol, "unexpected reference " + name);
      });
      nodes_[id].behaviour = s;
      break;
    }
  }
  return *nodes_[id].behaviour;
}

Stream Engine::unfold(NodeId n) { return Stream(std::make_shared<SyntacticSource>(shared_from_this(), n)); }

bool Engine::is_app(NodeId n, const std::string& op) const {
  return nodes_[n].kind == Kind::App && nodes_[n].op == op;
}

const std::string& Engine::op_of(NodeId n) const { return nodes_[n].op; }

const std::vector<NodeId>& Engine::kids(NodeId n) const { return nodes_[n].kids; }

std::string Engine::show(NodeId id) const {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case Kind::Const: return "[" + alg_->print(n.value) + "]";
    case Kind::Leaf: return "<stream" + std::to_string(id) + ">";
    case Kind::Unknown: return n.op;
    case Kind::App: break;
  }
  if (n.op == op::kAdd || n.op == op::kMul) return "(" + show(n.kids[0]) + " " + n.op + " " + show(n.kids[1]) + ")";
  if (n.op == op::kNeg) return "-" + show(n.kids[0]);
  if (n.kids.empty()) return n.op;
  std::string s = n.op + "(";
  for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? ", " : "") + show(n.kids[i]);
  return s + ")";
}

Stream eval_term(Engine& engine, const Term& t, const std::map<std::string, Stream>& env) {
  return engine.behaviour(engine.intern(t, env));
}

Solution solve_system_with_defs(const SpecFile& spec) {
  auto engine = Engine::create(spec.algebra);
  for (const auto& d : spec.defs) engine->add_def(d);
  engine->add_system(spec.system);
  Solution s;
  s.vars = spec.system.variables();
  for (const auto& v : s.vars) s.streams.emplace(v, engine->behaviour(engine->unknown(v)));
  return s;
}

}  // namespace sde
