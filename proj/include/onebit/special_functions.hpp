#pragma once

// Special functions shared by every capacity expression in the library:
// the standard normal tail Q, the binary entropy function, their
// composition Hb(Q(sqrt(x))) and its numerical inverse.
//
// All functions are pure and safe for unrestricted concurrent use.

namespace onebit {

// Tail probability of the standard normal distribution, Q(x) = P[N(0,1) > x].
// Evaluated as erfc(x/sqrt(2))/2 in extended precision so the far tail stays
// nonzero well past the point where a double result would underflow.
// Throws std::invalid_argument for non-finite input.
long double q_function(double x);

// Entropy in bits of a Bernoulli(p) variable. p is clamped into [0,1] by at
// most one ulp to absorb rounding from upstream tail computations; anything
// further outside throws std::invalid_argument.
double binary_entropy(double p);

// Hb(Q(sqrt(x))) for x >= 0, computed stably across the whole range: the
// direct composition is used while Q(sqrt(x)) carries full relative accuracy,
// and a small-p expansion Hb(p) ~ p*(log2(1/p) + 1/ln2) takes over once the
// tail probability drops below 1e-15. Monotone non-increasing, hbq(0) = 1.
double hbq(double x);

// Inverse of hbq: returns delta with hbq(delta) = eps to within 1e-10, found
// by bisection on a geometrically grown bracket. Requires 0 < eps < 1.
double solve_hbq_threshold(double eps);

}  // namespace onebit
