#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partage/errors.hpp"
#include "partage/estate.hpp"
#include "partage/oracle.hpp"
#include "partage/ratio.hpp"
#include "partage/single_line.hpp"

// The multi-mistress generalization. With m groups of n_i children at
// fraction x_i each, the estate recurrence becomes
//
//     l*share(l; v) + sum_i v_i * x_i * share(l+1; v - e_i) = 1,
//     share(l; 0) = 1/l,
//
// solved two independent ways: a closed nested sum and a memoized recursion.

namespace partage {

// Closed multisum over r_j = 0..n_j:
//
//     share(l; n_1..n_m) = sum_{r} prod_j (-x_j)^{r_j} C(n_j, r_j)
//                                  / ((1+R) * C(l+R, l-1)),   R = sum_j r_j.
//
// Binomials are maintained by incremental ratio updates along each nested
// loop; no factorial tables. Exactly prod_j (n_j + 1) summands are
// accumulated, one counted addition per summand.
inline Ratio share_multisum(const FamilyComposition& f, OpCount* count = nullptr) {
  const RatioOps ops(count);
  const Count l = f.legitimate;
  const std::size_t m = f.mistresses.size();
  const Count total = f.total_illegitimate();

  // denom[R] = (1+R)*C(l+R, l-1): denom[0] = l, denom[R] = denom[R-1]*(l+R)/R.
  std::vector<Ratio> denom(static_cast<std::size_t>(total) + 1);
  denom[0] = Ratio(l);
  for (Count r = 1; r <= total; ++r) {
    denom[r] = ops.div(ops.mul(denom[r - 1], Ratio(l + r)), Ratio(r));
  }

  Ratio sum = 0;
  const auto descend = [&](const auto& self, std::size_t j, Count depth,
                           const Ratio& coefficient) -> void {
    if (j == m) {
      sum = ops.add(sum, ops.div(coefficient, denom[static_cast<std::size_t>(depth)]));
      return;
    }
    const Count n_j = f.mistresses[j].children;
    const Ratio neg_x = -f.mistresses[j].fraction;
    Ratio factor = 1;  // (-x_j)^r * C(n_j, r)
    for (Count r = 0; r <= n_j; ++r) {
      if (r > 0) {
        factor = ops.mul(ops.div(ops.mul(factor, Ratio(n_j - r + 1)), Ratio(r)), neg_x);
      }
      self(self, j + 1, depth + r, r == 0 ? coefficient : ops.mul(coefficient, factor));
    }
  };
  descend(descend, 0, 0, Ratio(1));
  return sum;
}

namespace detail {

// Memoized recursion on the generalized recurrence. Keyed by the
// remaining-children vector only: every recursion step promotes exactly one
// child, so the legitimate count at a state is l + (children promoted) and
// need not be stored. Visits at most prod(n_i + 1) states. The memo table is
// owned by one call; nothing is cached across calls.
class RecursiveSolver {
 public:
  explicit RecursiveSolver(const FamilyComposition& f, OpCount* count = nullptr)
      : family_(f), ops_(count) {
    std::vector<Count> remaining;
    remaining.reserve(f.mistresses.size());
    for (const Mistress& m : f.mistresses) remaining.push_back(m.children);
    root_ = solve(remaining, f.legitimate);
  }

  const Ratio& root() const { return root_; }

  // share(l + promoted; key). Present for every state the root recursion
  // visited, in particular every v - e_i with v_i >= 1.
  const Ratio& at(const std::vector<Count>& key) const {
    return memo_.at(key);
  }

 private:
  Ratio solve(std::vector<Count>& remaining, Count legitimate) {
    if (const auto it = memo_.find(remaining); it != memo_.end()) return it->second;
    Ratio claims = 0;
    bool leaf = true;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (remaining[i] == 0) continue;
      leaf = false;
      --remaining[i];
      const Ratio counterfactual = solve(remaining, legitimate + 1);
      ++remaining[i];
      claims = ops_.add(
          claims, ops_.mul(ops_.mul(Ratio(remaining[i]), family_.mistresses[i].fraction),
                           counterfactual));
    }
    Ratio value = leaf ? ops_.div(1, Ratio(legitimate))
                       : ops_.div(ops_.sub(1, claims), Ratio(legitimate));
    return memo_.emplace(remaining, std::move(value)).first->second;
  }

  const FamilyComposition& family_;
  RatioOps ops_;
  std::map<std::vector<Count>, Ratio> memo_;
  Ratio root_;
};

}  // namespace detail

inline Ratio share_recursive(const FamilyComposition& f, OpCount* count = nullptr) {
  return detail::RecursiveSolver(f, count).root();
}

// Legitimate share of a composition by any strategy. Single-line strategies
// require at most one mistress with children (empty groups are no-ops).
inline Ratio legitimate_share(const FamilyComposition& f, Method method,
                              OpCount* count = nullptr) {
  switch (method) {
    case Method::Multisum:
      return share_multisum(f, count);
    case Method::Recursive:
      return share_recursive(f, count);
    case Method::Oracle:
      return oracle_share(f);
    case Method::Naive: {
      // pooled model, multi form: solves l*a + sum_i n_i*x_i*a = 1
      Ratio pooled_weight = Ratio(f.legitimate);
      for (const Mistress& m : f.mistresses) {
        pooled_weight += Ratio(m.children) * m.fraction;
      }
      return Ratio(1) / pooled_weight;
    }
    default: {
      const std::optional<SingleLine> s = as_single_line(f);
      if (!s) {
        throw PreconditionError(Errc::MethodNotApplicable,
                                std::string("method '") + to_string(method) +
                                    "' needs a single-mistress estate; use multisum, "
                                    "recursive or oracle");
      }
      return single_line_share(*s, method, count);
    }
  }
}

namespace detail {

inline ShareBreakdown assemble_breakdown(const FamilyComposition& f, Ratio legitimate,
                                         std::vector<std::optional<Ratio>> shares) {
  Ratio total = Ratio(f.legitimate) * legitimate;
  for (std::size_t i = 0; i < f.mistresses.size(); ++i) {
    if (shares[i]) total += Ratio(f.mistresses[i].children) * *shares[i];
  }
  if (total != Ratio(1)) {
    throw InternalError(Errc::ConservationViolation,
                        "breakdown total " + total.str() + " != 1; this is a bug");
  }
  return ShareBreakdown{std::move(legitimate), std::move(shares), std::move(total)};
}

}  // namespace detail

// Full apportionment: the legitimate share, the per-child share
// x_i * share(l+1; v - e_i) of every mistress with children, and the exact
// distributed total, asserted equal to 1. Under the naive method the pooled
// model's own shares x_i * a are reported instead (that model references the
// actual share, not a counterfactual one, and conserves on its own terms).
inline ShareBreakdown breakdown(const FamilyComposition& f, Method method = Method::Recursive) {
  const std::size_t m = f.mistresses.size();
  std::vector<std::optional<Ratio>> shares(m);

  if (method == Method::Naive) {
    const Ratio pooled = legitimate_share(f, Method::Naive);
    for (std::size_t i = 0; i < m; ++i) {
      if (f.mistresses[i].children > 0) shares[i] = f.mistresses[i].fraction * pooled;
    }
    return detail::assemble_breakdown(f, pooled, std::move(shares));
  }

  if (method == Method::Recursive) {
    // One memo table serves the root and every counterfactual state.
    const detail::RecursiveSolver solver(f);
    std::vector<Count> key;
    key.reserve(m);
    for (const Mistress& ms : f.mistresses) key.push_back(ms.children);
    for (std::size_t i = 0; i < m; ++i) {
      if (f.mistresses[i].children == 0) continue;
      --key[i];
      shares[i] = f.mistresses[i].fraction * solver.at(key);
      ++key[i];
    }
    return detail::assemble_breakdown(f, solver.root(), std::move(shares));
  }

  const Ratio legitimate = legitimate_share(f, method);
  for (std::size_t i = 0; i < m; ++i) {
    if (f.mistresses[i].children == 0) continue;
    FamilyComposition counterfactual = f;
    ++counterfactual.legitimate;
    --counterfactual.mistresses[i].children;
    shares[i] = f.mistresses[i].fraction * legitimate_share(counterfactual, method);
  }
  return detail::assemble_breakdown(f, legitimate, std::move(shares));
}

}  // namespace partage
