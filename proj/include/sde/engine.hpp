#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sde/classify.hpp"
#include "sde/solvers.hpp"
#include "sde/term.hpp"

namespace sde {

using NodeId = std::uint32_t;

// Hash-consed ground terms over built-in and user operators, unknowns of
// added systems, constants and opaque stream leaves. Each node is a state of
// the syntactic stream automaton: output() and next() follow the defining
// clauses of its operator and are computed at most once.
class Engine : public std::enable_shared_from_this<Engine> {
 public:
  struct Stats {
    std::uint64_t nodes = 0;
    std::uint64_t outputs = 0;
    std::uint64_t derivatives = 0;
    std::uint64_t x_substitutions = 0;  // argument reused underived
    std::uint64_t y_substitutions = 0;  // argument replaced by its derivative
  };

  static std::shared_ptr<Engine> create(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }

  // Registers a definition. Operators may refer to each other in any order;
  // arities are checked when terms are built.
  void add_def(const GsosDef& def);
  // Registers the unknowns of sys as constants named prefix + variable.
  void add_system(const EquationSystem& sys, const std::string& prefix = "");
  bool has_op(const std::string& name) const;
  bool is_builtin(const std::string& name) const;
  std::vector<std::string> user_ops() const;
  const GsosDef* definition(const std::string& name) const;

  NodeId constant(const Elem& a);
  NodeId leaf(const Stream& s);
  NodeId unknown(const std::string& name);
  NodeId app(const std::string& op, std::vector<NodeId> kids);
  // Ground term for t; references resolve first against env, then against
  // unknowns (with prefix).
  NodeId intern(const Term& t, const std::map<std::string, Stream>& env = {}, const std::string& prefix = "");

  const Elem& output(NodeId n);
  NodeId next(NodeId n);

  // The stream denoted by the node. Built-in operators are evaluated
  // natively on the behaviours of their arguments; user operators unfold the
  // syntactic automaton.
  Stream behaviour(NodeId n);
  // The stream produced by repeatedly applying output/next from n.
  Stream unfold(NodeId n);

  std::string show(NodeId n) const;
  bool is_app(NodeId n, const std::string& op) const;
  const std::string& op_of(NodeId n) const;
  const std::vector<NodeId>& kids(NodeId n) const;
  std::size_t size() const { return nodes_.size(); }
  const Stats& stats() const { return stats_; }

 private:
  enum class Kind { Const, Leaf, Unknown, App };
  struct Node {
    Kind kind;
    std::string op;  // App: operator; Unknown: name
    std::vector<NodeId> kids;
    Elem value;  // Const
    std::optional<Stream> stream;  // Leaf
    std::optional<Elem> out;
    std::optional<NodeId> next;
    bool busy_out = false;
    bool busy_next = false;
    std::optional<Stream> behaviour;
  };
  struct OpInfo {
    std::size_t arity = 0;
    std::optional<GsosDef> def;  // absent for operators evaluated only natively
    bool builtin = false;
  };
  struct UnknownInfo {
    Elem head;
    DerivKind deriv = DerivKind::Tail;
    TermPtr rhs;
    std::string prefix;
  };

  explicit Engine(AlgebraPtr alg);
  NodeId add(Node node, const std::string& key);
  NodeId instantiate(const Term& t, const std::vector<NodeId>& args, const std::vector<Elem>& heads);
  NodeId derive_n(NodeId n, std::size_t k);
  const OpInfo& op_info(const std::string& name) const;
  std::vector<Elem> kid_heads(const Node& n);

  AlgebraPtr alg_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, NodeId> table_;
  std::map<std::string, OpInfo> ops_;
  std::map<std::string, UnknownInfo> unknowns_;
  Stats stats_;
};

// Evaluates t with the references in env bound to streams.
Stream eval_term(Engine& engine, const Term& t, const std::map<std::string, Stream>& env = {});

// Solves any tail/delta/ddx system whose right-hand sides may use user
// definitions: every unknown becomes a constant of the engine.
Solution solve_system_with_defs(const SpecFile& spec);

// Built-in operators transcribed as definitions, as the engine uses them.
std::vector<GsosDef> builtin_definitions();

}  // namespace sde
