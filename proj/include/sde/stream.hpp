#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sde/algebra.hpp"

namespace sde {

inline constexpr std::size_t kDefaultBudget = 10000;

// Produces the elements of one stream in index order and memoizes them.
// A request that arrives while the source is busy computing is a re-entrant
// demand and raises NonProductive.
class StreamSource {
 public:
  explicit StreamSource(AlgebraPtr alg) : alg_(std::move(alg)) {}
  virtual ~StreamSource() = default;
  StreamSource(const StreamSource&) = delete;
  StreamSource& operator=(const StreamSource&) = delete;

  const Elem& at(std::size_t i);
  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t forced() const { return memo_.size(); }

  // Identity of the state that produces element i, when the source is driven
  // by an automaton with decidable state equality. Equal keys at i and j imply
  // that the streams from i and from j coincide.
  virtual std::optional<std::string> state_key(std::size_t) { return std::nullopt; }
  // Set for the constant streams [a].
  virtual std::optional<Elem> constant_value() const { return std::nullopt; }
  // Every element at or beyond this index is zero.
  virtual std::optional<std::size_t> support_bound() const { return std::nullopt; }

 protected:
  // Called exactly once per index, with i equal to the number of elements
  // already memoized.
  virtual Elem compute(std::size_t i) = 0;

 private:
  AlgebraPtr alg_;
  std::deque<Elem> memo_;
  bool busy_ = false;
};

// A stream is a view of a source starting at some offset; tail() is O(1) and
// shares the memo.
class Stream {
 public:
  Stream(std::shared_ptr<StreamSource> src, std::size_t offset = 0);

  const Elem& head() const { return at(0); }
  Stream tail() const { return Stream(src_, offset_ + 1); }
  Stream drop(std::size_t k) const { return Stream(src_, offset_ + k); }
  const Elem& at(std::size_t n) const { return src_->at(offset_ + n); }

  const AlgebraPtr& algebra() const { return src_->algebra(); }
  const std::shared_ptr<StreamSource>& source() const { return src_; }
  std::size_t offset() const { return offset_; }

  std::optional<std::string> state_key(std::size_t n) const { return src_->state_key(offset_ + n); }
  std::optional<Elem> constant_value() const;
  std::optional<std::size_t> support_bound() const;

 private:
  std::shared_ptr<StreamSource> src_;
  std::size_t offset_;
};

// Limits the number of element computations performed while it is alive.
// Scopes nest; every active scope is charged.
class ForcingBudget {
 public:
  explicit ForcingBudget(std::size_t limit);
  ~ForcingBudget();
  ForcingBudget(const ForcingBudget&) = delete;
  ForcingBudget& operator=(const ForcingBudget&) = delete;

  std::size_t used() const { return used_; }
  std::size_t limit() const { return limit_; }

 private:
  friend void charge_forcing();
  std::size_t limit_;
  std::size_t used_ = 0;
  ForcingBudget* outer_;
};

// Records one forcing against the active budgets.
void charge_forcing();
// Total forcings on this thread since start-up.
std::uint64_t total_forcings();

// Generic source backed by a callback that is invoked once per index, in order.
class GeneratorSource : public StreamSource {
 public:
  using Fn = std::function<Elem(std::size_t)>;
  GeneratorSource(AlgebraPtr alg, Fn fn) : StreamSource(std::move(alg)), fn_(std::move(fn)) {}

 protected:
  Elem compute(std::size_t i) override { return fn_(i); }

 private:
  Fn fn_;
};

Stream generate(AlgebraPtr alg, GeneratorSource::Fn fn);
// Finite prefix followed by zeros.
Stream from_prefix(AlgebraPtr alg, std::vector<Elem> prefix);
Stream cons(const Elem& head, const Stream& tail);

// A stream whose definition is supplied later, used for self-referential
// definitions: build the right-hand side in terms of placeholder, then bind.
class LateBound {
 public:
  explicit LateBound(AlgebraPtr alg);
  const Stream& placeholder() const { return placeholder_; }
  void bind(const Stream& target);

 private:
  class Slot;
  std::shared_ptr<Slot> slot_;
  Stream placeholder_;
};

// Throws BudgetExhausted or NonProductive carrying the index that stalled.
std::vector<Elem> take(const Stream& s, std::size_t n, std::size_t budget = kDefaultBudget);

struct Equal {
  std::size_t n;
};
struct Differ {
  std::size_t index;
  Elem a;
  Elem b;
};
using PrefixComparison = std::variant<Equal, Differ>;

PrefixComparison bounded_eq(const Stream& a, const Stream& b, std::size_t n,
                            std::size_t budget = kDefaultBudget);

// "e0, e1, e2"
std::string format_prefix(const Algebra& alg, const std::vector<Elem>& elems);

}  // namespace sde
