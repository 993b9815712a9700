#include "sde/automatic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "sde/calculus.hpp"
#include "sde/classify.hpp"
#include "sde/error.hpp"

namespace sde {

std::size_t TwoAutomaton::index(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) fail(ErrorKind::UnknownSymbol, "no automaton state '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

bool TwoAutomaton::check_zero_consistent() const {
  for (std::size_t q = 0; q < size(); ++q)
    if (!(out[d0[q]] == out[q])) return false;
  return true;
}

std::string TwoAutomaton::dump() const {
  std::ostringstream os;
  for (std::size_t q = 0; q < size(); ++q)
    os << names[q] << ": out=" << algebra->print(out[q]) << " 0->" << names[d0[q]] << " 1->" << names[d1[q]] << "\n";
  return os.str();
}

TwoAutomaton compile_evenodd(const EquationSystem& sys) {
  ZeroConsistency zc = check_zero_consistency(sys);
  if (!zc.ok) fail(ErrorKind::NotZeroConsistent, "even target of " + zc.state + " changes its head");
  TwoAutomaton a;
  a.algebra = sys.algebra;
  for (const auto& e : sys.equations) {
    if (!e.even_odd) fail(ErrorKind::InvalidArgument, e.var + " is not given by even/odd equations");
    a.names.push_back(e.var);
    a.out.push_back(e.head);
  }
  for (const auto& e : sys.equations) {
    a.d0.push_back(a.index(e.even_target));
    a.d1.push_back(a.index(e.odd_target));
  }
  a.zero_consistent = true;
  return a;
}

std::vector<int> bbin(std::uint64_t n) {
  std::vector<int> bits;
  for (; n > 0; n >>= 1) bits.push_back(static_cast<int>(n & 1));
  return bits;
}

Elem value_at(const TwoAutomaton& aut, std::size_t q, std::uint64_t n) {
  for (int b : bbin(n)) q = b ? aut.d1[q] : aut.d0[q];
  return aut.out[q];
}

namespace {

class AutomatonSource final : public StreamSource {
 public:
  AutomatonSource(TwoAutomaton aut, std::size_t q) : StreamSource(aut.algebra), aut_(std::move(aut)), q_(q) {}
  const TwoAutomaton& automaton() const { return aut_; }
  std::size_t start() const { return q_; }

 protected:
  Elem compute(std::size_t i) override { return value_at(aut_, q_, i); }

 private:
  TwoAutomaton aut_;
  std::size_t q_;
};

// Moore refinement of the part of aut reachable from q.
TwoAutomaton minimize(const TwoAutomaton& aut, std::size_t q) {
  std::vector<std::size_t> order{q};
  std::map<std::size_t, std::size_t> seen{{q, 0}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t s : {aut.d0[order[i]], aut.d1[order[i]]}) {
      if (seen.emplace(s, order.size()).second) order.push_back(s);
    }
  }
  const std::size_t n = order.size();
  std::vector<std::size_t> block(n);
  {
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      block[i] = ids.emplace(aut.algebra->print(aut.out[order[i]]), ids.size()).first->second;
  }
  for (;;) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto key = std::make_tuple(block[i], block[seen[aut.d0[order[i]]]], block[seen[aut.d1[order[i]]]]);
      next[i] = ids.emplace(key, ids.size()).first->second;
    }
    bool stable = ids.size() == std::set<std::size_t>(block.begin(), block.end()).size();
    block = std::move(next);
    if (stable) break;
  }
  std::size_t count = *std::max_element(block.begin(), block.end()) + 1;
  TwoAutomaton m;
  m.algebra = aut.algebra;
  m.names.resize(count);
  m.out.resize(count);
  m.d0.resize(count);
  m.d1.resize(count);
  std::vector<bool> done(count, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t b = block[i];
    if (done[b]) continue;
    done[b] = true;
    m.names[b] = "k" + std::to_string(b);
    m.out[b] = aut.out[order[i]];
    m.d0[b] = block[seen[aut.d0[order[i]]]];
    m.d1[b] = block[seen[aut.d1[order[i]]]];
  }
  m.zero_consistent = m.check_zero_consistent();
  return m;
}

}  // namespace

Stream stream_of(const TwoAutomaton& aut, std::size_t q) {
  if (!aut.check_zero_consistent()) fail(ErrorKind::NotZeroConsistent, "automaton is not zero-consistent");
  if (q >= aut.size()) fail(ErrorKind::InvalidArgument, "no such automaton state");
  return Stream(std::make_shared<AutomatonSource>(aut, q));
}

KernelResult kernel2(const Stream& s, std::size_t max_states, std::size_t prefix, std::size_t budget) {
  if (s.offset() == 0) {
    if (auto* src = dynamic_cast<AutomatonSource*>(s.source().get()))
      return KernelFinite{minimize(src->automaton(), src->start()), true};
  }
  TwoAutomaton a;
  a.algebra = s.algebra();
  std::vector<Stream> states{s};
  std::vector<std::vector<Elem>> prefixes;
  auto find_or_add = [&](const Stream& t, std::vector<Elem> p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < prefixes.size(); ++i)
      if (prefixes[i] == p) return i;
    if (prefixes.size() >= max_states) return std::nullopt;
    if (states.size() <= prefixes.size()) states.push_back(t);
    prefixes.push_back(std::move(p));
    return prefixes.size() - 1;
  };
  try {
    ForcingBudget guard(budget);
    find_or_add(s, take(s, prefix, budget));
    for (std::size_t i = 0; i < states.size(); ++i) {
      Stream e = even(states[i]);
      Stream o = odd(states[i]);
      auto ie = find_or_add(e, take(e, prefix, budget));
      if (!ie) return KernelUnknown{states.size(), "more than " + std::to_string(max_states) + " kernel states"};
      auto io = find_or_add(o, take(o, prefix, budget));
      if (!io) return KernelUnknown{states.size(), "more than " + std::to_string(max_states) + " kernel states"};
      a.d0.push_back(*ie);
      a.d1.push_back(*io);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExhausted) throw;
    return KernelUnknown{states.size(), "forcing budget exhausted"};
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    a.names.push_back("k" + std::to_string(i));
    a.out.push_back(prefixes[i][0]);
  }
  a.zero_consistent = a.check_zero_consistent();
  return KernelFinite{std::move(a), false};
}

namespace {

mpq_class binary_step(const mpq_class& q, int& bit) {
  mpz_class r = q.get_num() % 2;
  bit = r == 0 ? 0 : 1;
  mpq_class next = (q - bit) / 2;
  next.canonicalize();
  return next;
}

void require_odd(const mpq_class& q) {
  if (q.get_den() % 2 == 0) fail(ErrorKind::EvenDenominator, "denominator of " + q.get_str() + " is even");
}

class BinaryRationalSource final : public StreamSource {
 public:
  explicit BinaryRationalSource(mpq_class q) : StreamSource(integers()), states_{std::move(q)} {}
  std::optional<std::string> state_key(std::size_t i) override {
    while (states_.size() <= i) advance();
    return states_[i].get_str();
  }

 protected:
  Elem compute(std::size_t i) override {
    while (states_.size() <= i + 1) advance();
    return Elem(mpq_class(bits_[i]));
  }

 private:
  void advance() {
    int bit = 0;
    states_.push_back(binary_step(states_.back(), bit));
    bits_.push_back(bit);
  }
  std::vector<mpq_class> states_;
  std::vector<int> bits_;
};

}  // namespace

std::vector<int> binary_encode_rational(const mpq_class& q, std::size_t n) {
  require_odd(q);
  std::vector<int> bits;
  mpq_class state = q;
  for (std::size_t i = 0; i < n; ++i) {
    int bit = 0;
    state = binary_step(state, bit);
    bits.push_back(bit);
  }
  return bits;
}

Stream binary_rational_stream(const mpq_class& q) {
  require_odd(q);
  return Stream(std::make_shared<BinaryRationalSource>(q));
}

mpq_class binary_rational_state(const mpq_class& q, std::size_t k) {
  require_odd(q);
  mpq_class state = q;
  int bit = 0;
  for (std::size_t i = 0; i < k; ++i) state = binary_step(state, bit);
  return state;
}

}  // namespace sde
