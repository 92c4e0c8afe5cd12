#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partage/errors.hpp"
#include "partage/estate.hpp"
#include "partage/ratio.hpp"

// Ground truth: the legal rule transcribed directly as a plain recursion,
// with no memoization and no algebraic shortcuts. Its whole value is being a
// structurally different derivation from the same rule, so this header must
// not include single_line.hpp or multi_mistress.hpp (a test enforces that).

namespace partage {

// Hard limits on the exponential recursion. The call count is bounded by the
// number of ordered removal sequences, a multinomial in the child counts;
// together these keep the worst case at a few million calls.
inline constexpr Count kOracleMaxChildren = 16;
inline constexpr std::uint64_t kOracleMaxPaths = 4'000'000;

namespace detail {

inline Ratio oracle_recurse(Count legitimate, std::vector<Count>& remaining,
                            const std::vector<Ratio>& fractions) {
  Ratio claims = 0;
  bool leaf = true;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (remaining[i] == 0) continue;
    leaf = false;
    --remaining[i];
    const Ratio counterfactual = oracle_recurse(legitimate + 1, remaining, fractions);
    ++remaining[i];
    claims += Ratio(remaining[i]) * fractions[i] * counterfactual;
  }
  if (leaf) return Ratio(1, legitimate);
  return (Ratio(1) - claims) / Ratio(legitimate);
}

// Ordered ways to remove all children one at a time: total! / prod(n_i!).
// Exact in 64 bits for total <= 16.
inline std::uint64_t oracle_paths(const std::vector<Count>& counts) {
  std::uint64_t paths = 1;
  std::uint64_t placed = 0;
  for (Count n : counts) {
    for (Count k = 1; k <= n; ++k) {
      ++placed;
      paths = paths * placed / static_cast<std::uint64_t>(k);
    }
  }
  return paths;
}

}  // namespace detail

// Legitimate share of a validated composition, by direct recursion on the
// rule: share(l; v) = (1 - sum_i v_i * x_i * share(l+1; v - e_i)) / l with
// share(l; 0) = 1/l. Exponential on purpose; guarded to desk scale.
inline Ratio oracle_share(const FamilyComposition& f) {
  std::vector<Count> remaining;
  std::vector<Ratio> fractions;
  remaining.reserve(f.mistresses.size());
  fractions.reserve(f.mistresses.size());
  for (const Mistress& m : f.mistresses) {
    remaining.push_back(m.children);
    fractions.push_back(m.fraction);
  }

  const Count total = f.total_illegitimate();
  if (total > kOracleMaxChildren) {
    throw PreconditionError(Errc::TooLargeForOracle,
                            "oracle: " + std::to_string(total) + " illegitimate children exceed " +
                                std::to_string(kOracleMaxChildren));
  }
  const std::uint64_t paths = detail::oracle_paths(remaining);
  if (paths > kOracleMaxPaths) {
    throw PreconditionError(Errc::TooLargeForOracle,
                            "oracle: " + std::to_string(paths) +
                                " recursion paths exceed " + std::to_string(kOracleMaxPaths));
  }
  return detail::oracle_recurse(f.legitimate, remaining, fractions);
}

}  // namespace partage
