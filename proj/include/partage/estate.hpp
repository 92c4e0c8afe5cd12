#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partage/errors.hpp"
#include "partage/ratio.hpp"

namespace partage {

// Child counts are human-scale machine integers; every derived magnitude
// (factorials, products, shares) lives in Ratio.
using Count = std::int64_t;

// Cap on any single count and on the total number of children, so that count
// arithmetic inside the solvers can never overflow.
inline constexpr Count kMaxCount = 1'000'000'000;

// One group of illegitimate children: how many there are, and the fraction
// of the counterfactual legitimate share each of them receives.
struct Mistress {
  Count children = 0;
  Ratio fraction;
};

// l legitimate children plus an ordered list of mistresses' groups.
struct FamilyComposition {
  Count legitimate = 1;
  std::vector<Mistress> mistresses;

  Count total_illegitimate() const {
    Count total = 0;
    for (const Mistress& m : mistresses) total += m.children;
    return total;
  }
  Count total_children() const { return legitimate + total_illegitimate(); }
};

// Single-mistress family: l legitimate, n illegitimate, one fraction x.
struct SingleLine {
  Count legitimate = 1;
  Count illegitimate = 0;
  Ratio fraction;
};

enum class Method {
  Naive,        // pooled model 1/(l + n*x); wrong on purpose, kept for contrast
  Series,       // alternating hypergeometric sum
  Backward,     // backward iteration of the estate recurrence
  ClosedForm,   // factorial closed form
  Incremental,  // fold of the O(1) one-more-child update
  Multisum,     // nested alternating sum over all mistresses
  Recursive,    // memoized recursion on the generalized recurrence
  Oracle,       // plain unmemoized recursion; ground truth
};

constexpr const char* to_string(Method method) {
  switch (method) {
    case Method::Naive: return "naive";
    case Method::Series: return "series";
    case Method::Backward: return "backward";
    case Method::ClosedForm: return "closed-form";
    case Method::Incremental: return "incremental";
    case Method::Multisum: return "multisum";
    case Method::Recursive: return "recursive";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

inline std::optional<Method> method_from_string(std::string_view name) {
  for (Method m : {Method::Naive, Method::Series, Method::Backward, Method::ClosedForm,
                   Method::Incremental, Method::Multisum, Method::Recursive, Method::Oracle}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

// Per-child shares for a whole composition. illegitimate_shares[i] is empty
// when mistress i has no children: no per-child share is defined there.
// total_distributed is the exact sum l*legitimate + sum_i n_i*share_i and
// equals 1 for every valid composition.
struct ShareBreakdown {
  Ratio legitimate_share;
  std::vector<std::optional<Ratio>> illegitimate_shares;
  Ratio total_distributed;
};

namespace detail {

inline void check_fraction(const Ratio& fraction, const std::string& field) {
  if (fraction < Ratio(0) || fraction > Ratio(1)) {
    throw ValidationError(Errc::FractionOutOfRange,
                          field + ": fraction " + fraction.str() + " outside [0, 1]");
  }
}

inline void check_count(Count value, const std::string& field) {
  if (value < 0) {
    throw ValidationError(Errc::NegativeCount,
                          field + ": negative count " + std::to_string(value));
  }
  if (value > kMaxCount) {
    throw ValidationError(Errc::CountTooLarge,
                          field + ": count " + std::to_string(value) + " exceeds " +
                              std::to_string(kMaxCount));
  }
}

}  // namespace detail

// Validates a candidate composition. Total: every input yields either a
// composition satisfying all invariants or a structured error, never a
// partially valid value.
inline FamilyComposition validate(Count legitimate, std::vector<Mistress> mistresses) {
  if (legitimate == 0) {
    throw ValidationError(Errc::ZeroLegitimate,
                          "legitimate: at least one legitimate child is required");
  }
  detail::check_count(legitimate, "legitimate");
  Count total = legitimate;
  for (std::size_t i = 0; i < mistresses.size(); ++i) {
    const std::string field = "mistresses[" + std::to_string(i) + "]";
    detail::check_count(mistresses[i].children, field + ".children");
    detail::check_fraction(mistresses[i].fraction, field + ".fraction");
    total += mistresses[i].children;
    if (total > kMaxCount) {
      throw ValidationError(Errc::CountTooLarge,
                            "total children exceed " + std::to_string(kMaxCount));
    }
  }
  return FamilyComposition{legitimate, std::move(mistresses)};
}

// Validated single-mistress family; same bounds as validate() with m = 1.
inline SingleLine single_line(Count legitimate, Count illegitimate, Ratio fraction) {
  FamilyComposition f =
      validate(legitimate, {Mistress{illegitimate, std::move(fraction)}});
  return SingleLine{f.legitimate, f.mistresses[0].children, std::move(f.mistresses[0].fraction)};
}

inline FamilyComposition to_composition(const SingleLine& s) {
  return FamilyComposition{s.legitimate, {Mistress{s.illegitimate, s.fraction}}};
}

// Collapses a composition to a single line when at most one mistress has
// children (empty groups are no-ops). Empty result means genuinely
// multi-mistress.
inline std::optional<SingleLine> as_single_line(const FamilyComposition& f) {
  const Mistress* active = nullptr;
  for (const Mistress& m : f.mistresses) {
    if (m.children == 0) continue;
    if (active) return std::nullopt;
    active = &m;
  }
  if (!active) return SingleLine{f.legitimate, 0, Ratio(0)};
  return SingleLine{f.legitimate, active->children, active->fraction};
}

}  // namespace partage
