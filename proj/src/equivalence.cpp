#include "sde/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "sde/calculus.hpp"
#include "sde/error.hpp"

namespace sde {

std::string EquivResult::to_string() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<Proved>(&verdict)) {
    os << "proved";
    if (p->certificate.user_signature) os << " (up to user signature)";
    os << "\n";
    for (const auto& [l, r] : p->certificate.relation) os << "  " << l << " ~ " << r << "\n";
    for (const auto& step : p->certificate.trace) os << "  " << step << "\n";
  } else if (const auto* r = std::get_if<Refuted>(&verdict)) {
    os << "refuted at " << r->index << ": " << algebra->print(r->a) << " vs " << algebra->print(r->b) << "\n";
  } else {
    const auto& u = std::get<Unknown>(verdict);
    os << "unknown after " << u.explored << " pairs: " << u.reason << "\n";
  }
  return os.str();
}

EquivResult equiv_rational(const RatExpr& a, const RatExpr& b) {
  require_same(*a.algebra(), *b.algebra(), "equiv_rational");
  EquivResult res{a.algebra(), Proved{}};
  if (a.num() * b.den() == b.num() * a.den()) {
    Certificate c;
    c.relation.push_back({a.to_string(), b.to_string()});
    res.verdict = Proved{std::move(c)};
    return res;
  }
  // Distinct rational functions differ within this many terms.
  std::size_t bound = std::max(a.num().degree().value_or(0) + b.den().degree().value_or(0),
                               b.num().degree().value_or(0) + a.den().degree().value_or(0)) + 2;
  Stream sa = ratexpr_stream(a);
  Stream sb = ratexpr_stream(b);
  for (std::size_t i = 0; i < bound; ++i) {
    if (!(sa.at(i) == sb.at(i))) {
      res.verdict = Refuted{i, sa.at(i), sb.at(i)};
      return res;
    }
  }
  fail(ErrorKind::InvalidArgument, "distinct rational expressions agree on their first terms");
}

EquivResult bisim_finite(const StreamAutomaton& a1, std::size_t s1, const StreamAutomaton& a2, std::size_t s2) {
  require_same(*a1.algebra, *a2.algebra, "bisim_finite");
  const AlgebraPtr& alg = a1.algebra;
  const std::size_t n1 = a1.out.size();
  const std::size_t n = n1 + a2.out.size();
  auto out = [&](std::size_t q) -> const Elem& { return q < n1 ? a1.out[q] : a2.out[q - n1]; };
  auto step = [&](std::size_t q) { return q < n1 ? a1.next[q] : n1 + a2.next[q - n1]; };

  // Moore refinement on the disjoint union.
  std::vector<std::size_t> block(n);
  {
    std::map<std::string, std::size_t> ids;
    for (std::size_t q = 0; q < n; ++q) block[q] = ids.emplace(alg->print(out(q)), ids.size()).first->second;
  }
  for (std::size_t count = 0;;) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t q = 0; q < n; ++q) next[q] = ids.emplace(std::make_pair(block[q], block[step(q)]), ids.size()).first->second;
    block = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }

  EquivResult res{alg, Proved{}};
  std::size_t p = s1, q = n1 + s2;
  if (block[p] != block[q]) {
    for (std::size_t i = 0;; ++i, p = step(p), q = step(q)) {
      if (!(out(p) == out(q))) {
        res.verdict = Refuted{i, out(p), out(q)};
        return res;
      }
    }
  }
  Certificate c;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  while (seen.insert({p, q}).second) {
    c.relation.push_back({a1.names[p], a2.names[q - n1]});
    p = step(p);
    q = step(q);
  }
  res.verdict = Proved{std::move(c)};
  return res;
}

namespace {

void flatten_sum(const Engine& e, NodeId n, std::vector<NodeId>& out) {
  if (e.is_app(n, op::kAdd)) {
    for (NodeId k : e.kids(n)) flatten_sum(e, k, out);
  } else {
    out.push_back(n);
  }
}

class Closure {
 public:
  Closure(const Engine& e, const std::set<std::string>& ops, const std::map<std::pair<NodeId, NodeId>, std::size_t>& rel)
      : e_(e), ops_(ops), rel_(rel) {}

  std::optional<Justification> member(NodeId l, NodeId r) {
    auto key = std::make_pair(l, r);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    memo_[key] = std::nullopt;  // cuts cycles through shared subterms
    auto j = compute(l, r);
    memo_[key] = j;
    return j;
  }

 private:
  std::optional<Justification> compute(NodeId l, NodeId r) {
    Justification j;
    j.left = l;
    j.right = r;
    if (l == r) return j;
    if (auto it = rel_.find({l, r}); it != rel_.end()) {
      j.kind = Justification::Kind::InRelation;
      j.relation_index = it->second;
      return j;
    }
    const std::string& op = e_.op_of(l);
    if (op.empty() || op != e_.op_of(r) || !ops_.count(op) || e_.kids(l).empty()) return std::nullopt;
    if (op == op::kAdd) {
      std::vector<NodeId> ls, rs;
      flatten_sum(e_, l, ls);
      flatten_sum(e_, r, rs);
      if (ls.size() != rs.size()) return std::nullopt;
      j.kind = Justification::Kind::SumMatch;
      std::vector<bool> used(rs.size(), false);
      j.matching.assign(ls.size(), 0);
      j.kids.assign(ls.size(), Justification{});
      if (match(ls, rs, 0, used, j)) return j;
      return std::nullopt;
    }
    j.kind = Justification::Kind::Congruence;
    const auto& lk = e_.kids(l);
    const auto& rk = e_.kids(r);
    if (lk.size() != rk.size()) return std::nullopt;
    for (std::size_t i = 0; i < lk.size(); ++i) {
      auto k = member(lk[i], rk[i]);
      if (!k) return std::nullopt;
      j.kids.push_back(std::move(*k));
    }
    return j;
  }

  bool match(const std::vector<NodeId>& ls, const std::vector<NodeId>& rs, std::size_t i, std::vector<bool>& used,
             Justification& j) {
    if (i == ls.size()) return true;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      if (used[k]) continue;
      auto m = member(ls[i], rs[k]);
      if (!m) continue;
      used[k] = true;
      j.matching[i] = k;
      j.kids[i] = std::move(*m);
      if (match(ls, rs, i + 1, used, j)) return true;
      used[k] = false;
    }
    return false;
  }

  const Engine& e_;
  const std::set<std::string>& ops_;
  const std::map<std::pair<NodeId, NodeId>, std::size_t>& rel_;
  std::map<std::pair<NodeId, NodeId>, std::optional<Justification>> memo_;
};

std::string describe(const Engine& e, const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::Identical: return "identical " + e.show(j.left);
    case Justification::Kind::InRelation: return "pair #" + std::to_string(j.relation_index);
    case Justification::Kind::Congruence: {
      std::string s = "congruence " + e.op_of(j.left) + "(";
      for (std::size_t i = 0; i < j.kids.size(); ++i) s += (i ? ", " : "") + describe(e, j.kids[i]);
      return s + ")";
    }
    case Justification::Kind::SumMatch: {
      std::string s = "sum matching {";
      for (std::size_t i = 0; i < j.kids.size(); ++i) s += (i ? ", " : "") + describe(e, j.kids[i]);
      return s + "}";
    }
  }
  return "";
}

}  // namespace

EquivResult equiv_up_to(const std::shared_ptr<Engine>& engine, NodeId a, NodeId b, const std::set<std::string>& ops,
                        std::size_t budget) {
  Engine& e = *engine;
  std::set<std::string> sigma = ops;
  if (sigma.empty()) {
    for (const char* o : {op::kAdd, op::kNeg, op::kMul, op::kInv, op::kX, op::kShuffle, op::kHadamard, op::kSqrt,
                          op::kEven, op::kOdd, op::kZip, op::kMerge, op::kDelta, op::kDdx})
      sigma.insert(o);
    for (const auto& u : e.user_ops()) sigma.insert(u);
  }
  for (const auto& o : sigma)
    if (!e.has_op(o)) fail(ErrorKind::UnknownSymbol, "unknown operator '" + o + "' in the up-to signature");

  EquivResult res{e.algebra(), Unknown{}};
  UpToCertificate cert;
  cert.ops = sigma;
  std::vector<std::size_t> depth;
  std::map<std::pair<NodeId, NodeId>, std::size_t> index;
  auto add_pair = [&](NodeId l, NodeId r, std::size_t d) {
    index[{l, r}] = cert.relation.size();
    cert.relation.push_back({l, r});
    cert.steps.emplace_back();
    depth.push_back(d);
  };
  add_pair(a, b, 0);
  try {
    for (std::size_t i = 0; i < cert.relation.size(); ++i) {
      auto [l, r] = cert.relation[i];
      if (!(e.output(l) == e.output(r))) {
        // Pair i relates the depth-th derivatives of a and b.
        auto cmp = bounded_eq(e.unfold(a), e.unfold(b), depth[i] + 1, 100 * kDefaultBudget);
        const auto& d = std::get<Differ>(cmp);
        res.verdict = Refuted{d.index, d.a, d.b};
        return res;
      }
      NodeId dl = e.next(l), dr = e.next(r);
      Closure closure(e, sigma, index);
      if (auto j = closure.member(dl, dr)) {
        cert.steps[i] = std::move(*j);
        continue;
      }
      if (cert.relation.size() >= budget) {
        res.verdict = Unknown{cert.relation.size(), "pair budget of " + std::to_string(budget) + " exhausted"};
        return res;
      }
      Justification j;
      j.kind = Justification::Kind::InRelation;
      j.left = dl;
      j.right = dr;
      j.relation_index = cert.relation.size();
      cert.steps[i] = j;
      add_pair(dl, dr, depth[i] + 1);
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NonProductive && err.kind() != ErrorKind::BudgetExhausted) throw;
    res.verdict = Unknown{cert.relation.size(), err.what()};
    return res;
  }

  Certificate c;
  for (const auto& [l, r] : cert.relation) c.relation.push_back({e.show(l), e.show(r)});
  for (std::size_t i = 0; i < cert.steps.size(); ++i)
    c.trace.push_back("#" + std::to_string(i) + ": " + describe(e, cert.steps[i]));
  auto builtin = builtin_arity;
  for (const auto& o : sigma)
    if (!builtin(o)) c.user_signature = true;
  c.up_to = std::move(cert);
  res.verdict = Proved{std::move(c)};
  return res;
}

namespace {

class Verifier {
 public:
  Verifier(Engine& e, const UpToCertificate& c) : e_(e), c_(c) {}

  bool check(const Justification& j, NodeId l, NodeId r, std::string& why) {
    if (j.left != l || j.right != r) return bad(why, "justification is about a different pair");
    switch (j.kind) {
      case Justification::Kind::Identical:
        return l == r || bad(why, "terms are not identical");
      case Justification::Kind::InRelation:
        return (j.relation_index < c_.relation.size() && c_.relation[j.relation_index] == std::make_pair(l, r)) ||
               bad(why, "pair is not in the relation");
      case Justification::Kind::Congruence: {
        const std::string& o = e_.op_of(l);
        if (o.empty() || o != e_.op_of(r) || !c_.ops.count(o)) return bad(why, "no common operator in the signature");
        const auto& lk = e_.kids(l);
        const auto& rk = e_.kids(r);
        if (lk.size() != rk.size() || j.kids.size() != lk.size()) return bad(why, "argument count differs");
        for (std::size_t i = 0; i < lk.size(); ++i)
          if (!check(j.kids[i], lk[i], rk[i], why)) return false;
        return true;
      }
      case Justification::Kind::SumMatch: {
        if (!c_.ops.count(op::kAdd)) return bad(why, "sum is not in the signature");
        std::vector<NodeId> ls, rs;
        collect(l, ls);
        collect(r, rs);
        if (ls.size() != rs.size() || j.matching.size() != ls.size() || j.kids.size() != ls.size())
          return bad(why, "summand counts differ");
        std::vector<bool> used(rs.size(), false);
        for (std::size_t i = 0; i < ls.size(); ++i) {
          std::size_t k = j.matching[i];
          if (k >= rs.size() || used[k]) return bad(why, "matching is not a bijection");
          used[k] = true;
          if (!check(j.kids[i], ls[i], rs[k], why)) return false;
        }
        return true;
      }
    }
    return false;
  }

 private:
  static bool bad(std::string& why, const char* msg) {
    why = msg;
    return false;
  }
  void collect(NodeId n, std::vector<NodeId>& out) {
    if (e_.op_of(n) == op::kAdd && e_.kids(n).size() == 2) {
      collect(e_.kids(n)[0], out);
      collect(e_.kids(n)[1], out);
    } else {
      out.push_back(n);
    }
  }

  Engine& e_;
  const UpToCertificate& c_;
};

}  // namespace

bool verify_certificate(Engine& engine, const UpToCertificate& cert, std::string* why) {
  std::string reason;
  auto report = [&](std::size_t i, const std::string& msg) {
    if (why) *why = "pair #" + std::to_string(i) + ": " + msg;
    return false;
  };
  if (cert.relation.empty()) return report(0, "empty relation");
  if (cert.steps.size() != cert.relation.size()) return report(0, "one justification per pair is required");
  Verifier v(engine, cert);
  for (std::size_t i = 0; i < cert.relation.size(); ++i) {
    auto [l, r] = cert.relation[i];
    if (!(engine.output(l) == engine.output(r))) return report(i, "outputs differ");
    if (!v.check(cert.steps[i], engine.next(l), engine.next(r), reason)) return report(i, reason);
  }
  return true;
}

}  // namespace sde
