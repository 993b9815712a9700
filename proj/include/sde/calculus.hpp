#pragma once

#include <functional>

#include "sde/poly.hpp"
#include "sde/stream.hpp"

namespace sde {

// Native stream operations. All of them are lazy: building a stream never
// forces an element of its arguments.

Stream constant(const AlgebraPtr& alg, const Elem& a);
Stream zeros(const AlgebraPtr& alg);
Stream ones(const AlgebraPtr& alg);
Stream x_stream(const AlgebraPtr& alg);

Stream sum(const Stream& a, const Stream& b);
Stream neg(const Stream& a);
Stream difference(const Stream& a, const Stream& b);
Stream scalar(const Elem& c, const Stream& a);

// Convolution product and its inverse (the head must be a unit).
Stream conv_mul(const Stream& a, const Stream& b);
Stream conv_inv(const Stream& a);

Stream shuffle_mul(const Stream& a, const Stream& b);
Stream hadamard(const Stream& a, const Stream& b);
// Convolution square root; needs an exact root of the head.
Stream sqrt_stream(const Stream& a);

Stream even(const Stream& a);
Stream odd(const Stream& a);
Stream zip(const Stream& a, const Stream& b);
// Ordered merge of two streams; equal heads are emitted once.
Stream merge(const Stream& a, const Stream& b);

// (a(1) - a(0), a(2) - a(1), ...)
Stream delta(const Stream& a);
// (a(1), 2 a(2), 3 a(3), ...) with n-fold addition.
Stream ddx(const Stream& a);
using BinaryOp = std::function<Elem(const Elem&, const Elem&)>;
// (o(a(0), a(1)), o(a(1), a(2)), ...)
Stream delta_o(const BinaryOp& o, const Stream& a);

// (1, 2, 3, ...) and its Hadamard inverse (1, 1/2, 1/3, ...).
Stream nats(const AlgebraPtr& alg);
Stream nats_inv(const AlgebraPtr& alg);

Stream poly_stream(const Poly& p);
// Unfolds r through head and derivative; state keys are canonical forms.
Stream ratexpr_stream(const RatExpr& r);

}  // namespace sde
