#pragma once

#include "partage/errors.hpp"
#include "partage/estate.hpp"
#include "partage/ratio.hpp"

// Single-mistress computations. Everything revolves around the estate
// recurrence
//
//     l*share(l,n) + n*x*share(l+1,n-1) = 1,
//
// which says the whole estate is exactly consumed: l legitimate children at
// share(l,n) each, plus n illegitimate children who each take x times the
// share they would have had in the family (l+1, n-1) where they are
// legitimate. All functions assume a validated SingleLine and are pure;
// the optional OpCount is caller-owned.

namespace partage {

// The pooled model: solves l*a + n*x*a = 1, i.e. a = 1/(l + n*x). This reads
// the rule as "x times the actual legitimate share" instead of the
// counterfactual one. Wrong on purpose; kept for contrast. Coincides with
// the real share only when n = 0 or x is 0 or 1.
inline Ratio naive_share(const SingleLine& s) {
  return Ratio(1) / (Ratio(s.legitimate) + Ratio(s.illegitimate) * s.fraction);
}

// share(l,n) by iterating the recurrence backward from the base
// share(l+n,0) = 1/(l+n):
//
//     share(l+k, n-k) = (1 - (n-k)*x*share(l+k+1, n-k-1)) / (l+k)
//
// for k = n-1 down to 0. Exactly n steps, O(1) storage, and a fixed number
// of rational operations per step.
inline Ratio share_backward(const SingleLine& s, OpCount* count = nullptr) {
  const RatioOps ops(count);
  const Count l = s.legitimate;
  const Count n = s.illegitimate;
  Ratio share = ops.div(1, Ratio(l + n));
  for (Count k = n - 1; k >= 0; --k) {
    const Ratio claimed = ops.mul(ops.mul(Ratio(n - k), s.fraction), share);
    share = ops.div(ops.sub(1, claimed), Ratio(l + k));
  }
  return share;
}

// The alternating series
//
//     share(l,n) = sum_{r=0}^{n} (-x)^r * n(n-1)...(n-r+1) / (l(l+1)...(l+r))
//
// with term r built from term r-1 by one multiply/divide pair, so no
// factorial is ever recomputed. O(n) operations total.
inline Ratio share_series(const SingleLine& s, OpCount* count = nullptr) {
  const RatioOps ops(count);
  const Count l = s.legitimate;
  const Count n = s.illegitimate;
  const Ratio neg_x = -s.fraction;
  Ratio term = ops.div(1, Ratio(l));
  Ratio sum = term;
  for (Count r = 1; r <= n; ++r) {
    term = ops.mul(ops.mul(term, neg_x), Ratio(n - r + 1));
    term = ops.div(term, Ratio(l + r));
    sum = ops.add(sum, term);
  }
  return sum;
}

// The factorial closed form, valid for x != 1:
//
//     share(l,n) = n!(1-x)^n / (n+l)! * sum_{b=0}^{n} ((l+b-1)!/b!) * (1-x)^{-b}
//
// evaluated with incremental terms. At x = 1 the prefactor degenerates; the
// recurrence forces share(l,n) = 1/(l+n) there (the estate splits equally
// among l+n children), so that value is returned directly.
inline Ratio share_closed_form(const SingleLine& s, OpCount* count = nullptr) {
  const RatioOps ops(count);
  const Count l = s.legitimate;
  const Count n = s.illegitimate;
  if (s.fraction == Ratio(1)) return ops.div(1, Ratio(l + n));

  const Ratio one_minus_x = ops.sub(1, s.fraction);
  const Ratio growth = ops.div(1, one_minus_x);

  // n!/(n+l)! = 1/((n+1)(n+2)...(n+l))
  Ratio prefactor = pow(one_minus_x, static_cast<std::uint64_t>(n), ops);
  for (Count j = n + 1; j <= n + l; ++j) prefactor = ops.div(prefactor, Ratio(j));

  // term b = (l+b-1)!/b! * (1-x)^{-b}, starting from term 0 = (l-1)!
  Ratio term = 1;
  for (Count j = 2; j <= l - 1; ++j) term = ops.mul(term, Ratio(j));
  Ratio sum = term;
  for (Count b = 1; b <= n; ++b) {
    term = ops.mul(ops.div(ops.mul(term, Ratio(l + b - 1)), Ratio(b)), growth);
    sum = ops.add(sum, term);
  }
  return ops.mul(prefactor, sum);
}

// O(1) update when one more illegitimate child turns up: given a = share(l,n),
//
//     share(l,n+1) = 1/(l+n+1) + (1-x)(n+1)/(l+n+1) * share(l,n).
//
// The operation count is a constant independent of n.
inline Ratio add_illegitimate(const Ratio& share, const SingleLine& s, OpCount* count = nullptr) {
  const RatioOps ops(count);
  const Count heirs = s.legitimate + s.illegitimate + 1;
  const Ratio coefficient =
      ops.div(ops.mul(ops.sub(1, s.fraction), Ratio(s.illegitimate + 1)), Ratio(heirs));
  return ops.add(ops.div(1, Ratio(heirs)), ops.mul(coefficient, share));
}

// share(l,n) by folding add_illegitimate n times from share(l,0) = 1/l.
inline Ratio share_incremental(const SingleLine& s, OpCount* count = nullptr) {
  const RatioOps ops(count);
  Ratio share = ops.div(1, Ratio(s.legitimate));
  for (Count k = 0; k < s.illegitimate; ++k) {
    share = add_illegitimate(share, SingleLine{s.legitimate, k, s.fraction}, count);
  }
  return share;
}

// Status change, one illegitimate child recognized as legitimate. Solving
// the recurrence forward: share(l+1,n-1) = (1 - l*share(l,n)) / (n*x).
// Undefined at x = 0, where the counterfactual share is multiplied out of
// the recurrence and cannot be recovered.
inline Ratio legitimize(const Ratio& share, const SingleLine& s) {
  if (s.illegitimate == 0) {
    throw PreconditionError(Errc::NoIllegitimateChild,
                            "legitimize: no illegitimate child to promote");
  }
  if (s.fraction.is_zero()) {
    throw PreconditionError(Errc::ZeroFraction,
                            "legitimize: fraction is 0, share(l+1,n-1) is not recoverable");
  }
  return (Ratio(1) - Ratio(s.legitimate) * share) / (Ratio(s.illegitimate) * s.fraction);
}

// Status change the other way, one legitimate child found illegitimate.
// The recurrence at (l-1, n+1) gives share(l-1,n+1) = (1 - (n+1)*x*share(l,n)) / (l-1).
// Requires l >= 2: the resulting family must keep a legitimate child.
inline Ratio delegitimize(const Ratio& share, const SingleLine& s) {
  if (s.legitimate <= 1) {
    throw PreconditionError(Errc::LastLegitimateChild,
                            "delegitimize: the resulting family would have no legitimate child");
  }
  return (Ratio(1) - Ratio(s.illegitimate + 1) * s.fraction * share) / Ratio(s.legitimate - 1);
}

// Single-line evaluation by the requested strategy. Strategies that need the
// multi-mistress machinery are refused here; use legitimate_share() on a
// FamilyComposition for those.
inline Ratio single_line_share(const SingleLine& s, Method method, OpCount* count = nullptr) {
  switch (method) {
    case Method::Naive: return naive_share(s);
    case Method::Series: return share_series(s, count);
    case Method::Backward: return share_backward(s, count);
    case Method::ClosedForm: return share_closed_form(s, count);
    case Method::Incremental: return share_incremental(s, count);
    default:
      throw PreconditionError(Errc::MethodNotApplicable,
                              std::string("method '") + to_string(method) +
                                  "' is not a single-line strategy");
  }
}

// What one illegitimate child receives: x times the legitimate share of the
// counterfactual family (l+1, n-1) in which that child is legitimate.
inline Ratio illegitimate_share(const SingleLine& s, Method method = Method::Backward,
                                OpCount* count = nullptr) {
  if (s.illegitimate == 0) {
    throw PreconditionError(Errc::NoIllegitimateChild,
                            "illegitimate_share: no illegitimate children");
  }
  const SingleLine counterfactual{s.legitimate + 1, s.illegitimate - 1, s.fraction};
  return s.fraction * single_line_share(counterfactual, method, count);
}

}  // namespace partage
