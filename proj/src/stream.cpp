#include "sde/stream.hpp"

#include "sde/error.hpp"

namespace sde {

namespace {
thread_local ForcingBudget* active_budget = nullptr;
thread_local std::uint64_t forcing_counter = 0;

struct BusyGuard {
  explicit BusyGuard(bool& flag) : flag_(flag) { flag_ = true; }
  ~BusyGuard() { flag_ = false; }
  bool& flag_;
};
}  // namespace

const Elem& StreamSource::at(std::size_t i) {
  if (i < memo_.size()) return memo_[i];
  if (busy_)
    throw Error(ErrorKind::NonProductive, "re-entrant demand for element " + std::to_string(i));
  BusyGuard guard(busy_);
  while (memo_.size() <= i) {
    charge_forcing();
    memo_.push_back(compute(memo_.size()));
  }
  return memo_[i];
}

Stream::Stream(std::shared_ptr<StreamSource> src, std::size_t offset) : src_(std::move(src)), offset_(offset) {}

std::optional<Elem> Stream::constant_value() const {
  auto c = src_->constant_value();
  if (!c) return std::nullopt;
  return offset_ == 0 ? *c : algebra()->zero();
}

std::optional<std::size_t> Stream::support_bound() const {
  auto b = src_->support_bound();
  if (!b) return std::nullopt;
  return *b > offset_ ? *b - offset_ : 0;
}

ForcingBudget::ForcingBudget(std::size_t limit) : limit_(limit), outer_(active_budget) { active_budget = this; }

ForcingBudget::~ForcingBudget() { active_budget = outer_; }

void charge_forcing() {
  ++forcing_counter;
  for (ForcingBudget* b = active_budget; b != nullptr; b = b->outer_) {
    if (++b->used_ > b->limit_)
      throw Error(ErrorKind::BudgetExhausted, "forcing budget of " + std::to_string(b->limit_) + " exhausted");
  }
}

std::uint64_t total_forcings() { return forcing_counter; }

Stream generate(AlgebraPtr alg, GeneratorSource::Fn fn) {
  return Stream(std::make_shared<GeneratorSource>(std::move(alg), std::move(fn)));
}

namespace {

class PrefixSource final : public StreamSource {
 public:
  PrefixSource(AlgebraPtr alg, std::vector<Elem> prefix) : StreamSource(std::move(alg)), prefix_(std::move(prefix)) {
    while (!prefix_.empty() && algebra()->is_zero(prefix_.back())) prefix_.pop_back();
  }
  std::optional<Elem> constant_value() const override {
    if (prefix_.size() > 1) return std::nullopt;
    return prefix_.empty() ? algebra()->zero() : prefix_[0];
  }
  std::optional<std::size_t> support_bound() const override { return prefix_.size(); }

 protected:
  Elem compute(std::size_t i) override { return i < prefix_.size() ? prefix_[i] : algebra()->zero(); }

 private:
  std::vector<Elem> prefix_;
};

class ConsSource final : public StreamSource {
 public:
  ConsSource(Elem head, Stream tail) : StreamSource(tail.algebra()), head_(std::move(head)), tail_(std::move(tail)) {}

 protected:
  Elem compute(std::size_t i) override { return i == 0 ? head_ : tail_.at(i - 1); }

 private:
  Elem head_;
  Stream tail_;
};

}  // namespace

Stream from_prefix(AlgebraPtr alg, std::vector<Elem> prefix) {
  return Stream(std::make_shared<PrefixSource>(std::move(alg), std::move(prefix)));
}

Stream cons(const Elem& head, const Stream& tail) { return Stream(std::make_shared<ConsSource>(head, tail)); }

class LateBound::Slot final : public StreamSource {
 public:
  explicit Slot(AlgebraPtr alg) : StreamSource(std::move(alg)) {}
  void bind(const Stream& target) { target_ = target; }
  std::optional<std::string> state_key(std::size_t i) override {
    return target_ ? target_->state_key(i) : std::nullopt;
  }

 protected:
  Elem compute(std::size_t i) override {
    if (!target_) throw Error(ErrorKind::NonProductive, "stream used before its definition was bound");
    return target_->at(i);
  }

 private:
  std::optional<Stream> target_;
};

LateBound::LateBound(AlgebraPtr alg) : slot_(std::make_shared<Slot>(alg)), placeholder_(slot_) {}

void LateBound::bind(const Stream& target) {
  require_same(*slot_->algebra(), *target.algebra(), "late binding");
  slot_->bind(target);
}

std::vector<Elem> take(const Stream& s, std::size_t n, std::size_t budget) {
  ForcingBudget scope(budget);
  std::vector<Elem> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      out.push_back(s.at(i));
    } catch (Error& e) {
      if ((e.kind() == ErrorKind::BudgetExhausted || e.kind() == ErrorKind::NonProductive) && !e.index())
        e.with_index(i);
      throw;
    }
  }
  return out;
}

PrefixComparison bounded_eq(const Stream& a, const Stream& b, std::size_t n, std::size_t budget) {
  require_same(*a.algebra(), *b.algebra(), "bounded_eq");
  ForcingBudget scope(budget);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const Elem& x = a.at(i);
      const Elem& y = b.at(i);
      if (!(x == y)) return Differ{i, x, y};
    } catch (Error& e) {
      if ((e.kind() == ErrorKind::BudgetExhausted || e.kind() == ErrorKind::NonProductive) && !e.index())
        e.with_index(i);
      throw;
    }
  }
  return Equal{n};
}

std::string format_prefix(const Algebra& alg, const std::vector<Elem>& elems) {
  std::string out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i != 0) out += ", ";
    out += alg.print(elems[i]);
  }
  return out;
}

}  // namespace sde
