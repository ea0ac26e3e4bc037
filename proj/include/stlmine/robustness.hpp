#pragma once

#include "stlmine/formula.hpp"
#include "stlmine/trace.hpp"

namespace stlmine {

/* Quantitative semantics over the sample points of a trace:
 *
 *   rob(s >= c)         = s(t) - c          (strict atoms score identically)
 *   rob(s <= c)         = c - s(t)
 *   rob(true)           = +inf
 *   rob(!f)             = -rob(f)
 *   rob(f && g)         = min, rob(f || g) = max
 *   rob(f -> g)         = max(-rob(f), rob(g))
 *   rob(G[I] f, t)      = inf over samples t' with t'-t in I   (empty: +inf)
 *   rob(F[I] f, t)      = sup over the same window             (empty: -inf)
 *   rob(f U[I] g, t)    = sup_{t' in window} min(rob(g,t'),
 *                              inf_{samples t'' in [t,t')} rob(f,t''))
 *
 * Window membership is decided by exact comparison of t'-t against the
 * interval bounds.  The sign of rob at t=0 decides satisfaction; an exact
 * zero counts as satisfied. */

// rob(f, x, t) for a sample point t.  Throws std::invalid_argument if t is
// not a stamp of x or an atom references a missing channel.
double robustness(const Formula& f, const TimedTrace& x, double t);

// rob at every sample index, computed bottom-up with sliding windows.
std::vector<double> robustness_signal(const Formula& f, const TimedTrace& x);

// rob(f, x, 0) >= 0
bool satisfies(const Formula& f, const TimedTrace& x);

}  // namespace stlmine
