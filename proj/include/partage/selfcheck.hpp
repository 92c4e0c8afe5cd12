#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "partage/estate.hpp"
#include "partage/multi_mistress.hpp"
#include "partage/oracle.hpp"
#include "partage/ratio.hpp"
#include "partage/single_line.hpp"

// Cross-method agreement and conservation sweeps, shared by the CLI
// selfcheck command and the test suites. All comparisons are exact.

namespace partage {

struct SelfCheckOptions {
  Count max_l = 6;
  Count max_n = 6;
  std::vector<Ratio> fractions = {Ratio(0), Ratio(1, 4), Ratio(1, 3), Ratio(1, 2), Ratio(1)};
};

// The single-line strategies under test, swappable so the failure report
// path can be exercised against a deliberately broken evaluator.
struct SingleLineEvaluators {
  std::function<Ratio(const SingleLine&)> series = [](const SingleLine& s) {
    return share_series(s);
  };
  std::function<Ratio(const SingleLine&)> backward = [](const SingleLine& s) {
    return share_backward(s);
  };
  std::function<Ratio(const SingleLine&)> closed_form = [](const SingleLine& s) {
    return share_closed_form(s);
  };
  std::function<Ratio(const SingleLine&)> oracle = [](const SingleLine& s) {
    return oracle_share(to_composition(s));
  };
};

struct SelfCheckReport {
  bool ok = true;
  std::string failure;  // first divergence, empty when ok
  std::size_t single_line_points = 0;
  std::size_t multi_points = 0;
  std::size_t conservation_checks = 0;
};

namespace detail {

inline std::string grid_point(const SingleLine& s) {
  return "(l=" + std::to_string(s.legitimate) + ", n=" + std::to_string(s.illegitimate) +
         ", x=" + s.fraction.str() + ")";
}

inline std::string composition_str(const FamilyComposition& f) {
  std::string out = "(l=" + std::to_string(f.legitimate);
  for (const Mistress& m : f.mistresses) {
    out += ", (" + std::to_string(m.children) + ", " + m.fraction.str() + ")";
  }
  return out + ")";
}

}  // namespace detail

inline SelfCheckReport run_selfcheck(const SelfCheckOptions& options,
                                     const SingleLineEvaluators& eval = {}) {
  SelfCheckReport report;
  const auto fail = [&report](std::string message) {
    report.ok = false;
    report.failure = std::move(message);
  };

  // Single-line sweep: four strategies agree, the estate is conserved, and
  // the O(1) fold reproduces the backward value at every n.
  for (Count l = 1; l <= options.max_l && report.ok; ++l) {
    for (const Ratio& x : options.fractions) {
      Ratio fold = Ratio(1) / Ratio(l);
      for (Count n = 0; n <= options.max_n; ++n) {
        const SingleLine s{l, n, x};
        const Ratio reference = eval.backward(s);
        const std::pair<const char*, Ratio> rivals[] = {
            {"series", eval.series(s)},
            {"closed-form", eval.closed_form(s)},
            {"oracle", eval.oracle(s)},
            {"incremental", fold},
        };
        for (const auto& [name, value] : rivals) {
          if (value != reference) {
            fail(std::string(name) + detail::grid_point(s) + " = " + value.str() +
                 " but backward = " + reference.str());
            break;
          }
        }
        if (!report.ok) break;
        ++report.single_line_points;

        // conservation: l*share(l,n) + n*x*share(l+1,n-1) = 1
        Ratio distributed = Ratio(l) * reference;
        if (n >= 1) {
          distributed += Ratio(n) * x * eval.backward(SingleLine{l + 1, n - 1, x});
        }
        if (distributed != Ratio(1)) {
          fail("conservation broken at " + detail::grid_point(s) + ": total " +
               distributed.str());
          break;
        }
        ++report.conservation_checks;

        fold = add_illegitimate(fold, s);
      }
      if (!report.ok) break;
    }
    if (!report.ok) break;
  }

  // Two-mistress sweep: multisum, recursion and oracle agree, and the full
  // breakdown distributes exactly the whole estate.
  const Count multi_l = std::min<Count>(options.max_l, 4);
  const Count multi_n = std::min<Count>(options.max_n, 3);
  const std::vector<Ratio> multi_fractions = {Ratio(0), Ratio(1, 3), Ratio(1, 2)};
  for (Count l = 1; l <= multi_l && report.ok; ++l) {
    for (Count n1 = 0; n1 <= multi_n; ++n1) {
      for (Count n2 = 0; n2 <= multi_n && report.ok; ++n2) {
        for (const Ratio& x1 : multi_fractions) {
          for (const Ratio& x2 : multi_fractions) {
            const FamilyComposition f{l, {Mistress{n1, x1}, Mistress{n2, x2}}};
            const Ratio recursive = share_recursive(f);
            const Ratio multisum = share_multisum(f);
            if (multisum != recursive) {
              fail("multisum" + detail::composition_str(f) + " = " + multisum.str() +
                   " but recursive = " + recursive.str());
              break;
            }
            const Ratio oracle = oracle_share(f);
            if (oracle != recursive) {
              fail("oracle" + detail::composition_str(f) + " = " + oracle.str() +
                   " but recursive = " + recursive.str());
              break;
            }
            ++report.multi_points;
            breakdown(f, Method::Recursive);  // throws on conservation violation
            ++report.conservation_checks;
          }
          if (!report.ok) break;
        }
      }
      if (!report.ok) break;
    }
  }

  return report;
}

}  // namespace partage
