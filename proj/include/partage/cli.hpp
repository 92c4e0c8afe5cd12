#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "partage/errors.hpp"
#include "partage/estate.hpp"
#include "partage/json_io.hpp"
#include "partage/multi_mistress.hpp"
#include "partage/oracle.hpp"
#include "partage/ratio.hpp"
#include "partage/selfcheck.hpp"
#include "partage/single_line.hpp"

namespace partage::cli {

// Exit codes: 0 success, 1 selfcheck found a divergence, 2 bad input
// (flags, spec document, domain bounds), 3 an operation precondition failed,
// 70 a library invariant broke.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSelfCheckFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitInternal = 70;

struct OutputOptions {
  enum class Mode { Exact, Decimal, Json };
  Mode mode = Mode::Exact;
  unsigned digits = 6;
};

namespace detail {

inline std::string format(const Ratio& value, const OutputOptions& options) {
  return options.mode == OutputOptions::Mode::Decimal ? value.decimal(options.digits)
                                                      : value.str();
}

// "N:P/Q" flag form of one mistress.
inline Mistress parse_mistress_flag(const std::string& text) {
  const auto fail = [&text] {
    return ValidationError(Errc::MalformedDocument,
                           "--mistress expects CHILDREN:P/Q, got '" + text + "'");
  };
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size()) throw fail();
  Count children = 0;
  const char* first = text.data();
  const char* last = text.data() + colon;
  const auto [ptr, ec] = std::from_chars(first, last, children);
  if (ec != std::errc() || ptr != last) throw fail();
  return Mistress{children, Ratio::parse(text.substr(colon + 1))};
}

inline nlohmann::json load_spec_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError(Errc::MalformedDocument, "cannot open spec file '" + path + "'");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(Errc::MalformedDocument, "spec file '" + path + "': " + e.what());
  }
}

}  // namespace detail

struct EstateArgs {
  std::string spec_path;
  std::optional<Count> legitimate;
  std::vector<std::string> mistress_flags;
};

// Estate from a JSON document and/or flags; flags win on conflict.
inline FamilyComposition assemble_estate(const EstateArgs& args) {
  std::optional<Count> legitimate = args.legitimate;
  std::optional<std::vector<Mistress>> mistresses;
  if (!args.mistress_flags.empty()) {
    std::vector<Mistress> parsed;
    parsed.reserve(args.mistress_flags.size());
    for (const std::string& flag : args.mistress_flags) {
      parsed.push_back(detail::parse_mistress_flag(flag));
    }
    mistresses = std::move(parsed);
  }
  if (!args.spec_path.empty()) {
    EstateSpecFields fields = estate_fields_from_json(detail::load_spec_document(args.spec_path));
    if (!legitimate) legitimate = fields.legitimate;
    if (!mistresses) mistresses = std::move(fields.mistresses);
  }
  if (!legitimate) {
    throw ValidationError(Errc::MalformedDocument,
                          "no estate given; use --legit/--mistress or --spec FILE");
  }
  return validate(*legitimate, mistresses ? std::move(*mistresses) : std::vector<Mistress>{});
}

// Fastest correct strategy for the shape: backward iteration when the estate
// collapses to a single line, the memoized recursion otherwise.
inline Method default_method(const FamilyComposition& f) {
  return as_single_line(f) ? Method::Backward : Method::Recursive;
}

inline Method resolve_method(const std::string& name, const FamilyComposition& f) {
  if (name.empty()) return default_method(f);
  const std::optional<Method> method = method_from_string(name);
  if (!method) {
    throw ValidationError(Errc::MalformedDocument, "unknown method '" + name + "'");
  }
  return *method;
}

inline void render_breakdown(std::ostream& out, const FamilyComposition& f,
                             const ShareBreakdown& b, Method method,
                             const OutputOptions& options) {
  if (options.mode == OutputOptions::Mode::Json) {
    out << breakdown_to_json(f, b, method).dump(2) << "\n";
    return;
  }
  out << "method: " << to_string(method) << "\n";
  out << "legitimate: " << detail::format(b.legitimate_share, options);
  if (method == Method::Naive) out << " (WARNING: naive model)";
  out << "\n";
  for (std::size_t i = 0; i < f.mistresses.size(); ++i) {
    out << "mistress " << i + 1 << ": ";
    if (b.illegitimate_shares[i]) {
      out << detail::format(*b.illegitimate_shares[i], options) << " (each of "
          << f.mistresses[i].children << " children, fraction " << f.mistresses[i].fraction
          << ")";
    } else {
      out << "no children (fraction " << f.mistresses[i].fraction << ")";
    }
    out << "\n";
  }
  out << "class totals: legitimate "
      << detail::format(Ratio(f.legitimate) * b.legitimate_share, options);
  for (std::size_t i = 0; i < f.mistresses.size(); ++i) {
    const Ratio class_total = b.illegitimate_shares[i]
                                  ? Ratio(f.mistresses[i].children) * *b.illegitimate_shares[i]
                                  : Ratio(0);
    out << ", mistress " << i + 1 << " " << detail::format(class_total, options);
  }
  out << "\n";
  out << "total: " << detail::format(b.total_distributed, options) << "\n";
}

inline int cmd_share(const EstateArgs& estate, const std::string& method_name,
                     const OutputOptions& options, std::ostream& out) {
  const FamilyComposition f = assemble_estate(estate);
  const Method method = resolve_method(method_name, f);
  const ShareBreakdown b = breakdown(f, method);
  render_breakdown(out, f, b, method, options);
  return kExitOk;
}

enum class Edit { AddIllegitimate, Legitimize, Delegitimize };

inline Edit parse_edit(const std::string& name) {
  if (name == "add-illegitimate") return Edit::AddIllegitimate;
  if (name == "legitimize") return Edit::Legitimize;
  if (name == "delegitimize") return Edit::Delegitimize;
  throw ValidationError(Errc::MalformedDocument,
                        "unknown edit '" + name +
                            "' (expected add-illegitimate, legitimize or delegitimize)");
}

inline const char* to_string(Edit edit) {
  switch (edit) {
    case Edit::AddIllegitimate: return "add-illegitimate";
    case Edit::Legitimize: return "legitimize";
    case Edit::Delegitimize: return "delegitimize";
  }
  return "?";
}

namespace detail {

inline FamilyComposition apply_edit(const FamilyComposition& f, Edit edit, std::size_t index) {
  FamilyComposition edited = f;
  Mistress& target = edited.mistresses[index];
  switch (edit) {
    case Edit::AddIllegitimate:
      ++target.children;
      break;
    case Edit::Legitimize:
      if (target.children == 0) {
        throw PreconditionError(Errc::NoIllegitimateChild,
                                "legitimize: mistress " + std::to_string(index + 1) +
                                    " has no children");
      }
      ++edited.legitimate;
      --target.children;
      break;
    case Edit::Delegitimize:
      if (edited.legitimate <= 1) {
        throw PreconditionError(Errc::LastLegitimateChild,
                                "delegitimize: the family would be left without a "
                                "legitimate child");
      }
      --edited.legitimate;
      ++target.children;
      break;
  }
  return validate(edited.legitimate, std::move(edited.mistresses));
}

}  // namespace detail

inline int cmd_whatif(const EstateArgs& estate, const std::string& edit_name, Count mistress_index,
                      const OutputOptions& options, std::ostream& out) {
  const FamilyComposition before_family = assemble_estate(estate);
  const Edit edit = parse_edit(edit_name);
  if (mistress_index < 1 ||
      static_cast<std::size_t>(mistress_index) > before_family.mistresses.size()) {
    throw PreconditionError(Errc::NoSuchMistress,
                            "mistress index " + std::to_string(mistress_index) +
                                " does not exist (estate has " +
                                std::to_string(before_family.mistresses.size()) + ")");
  }
  const std::size_t index = static_cast<std::size_t>(mistress_index - 1);

  const Method method = default_method(before_family);
  const ShareBreakdown before = breakdown(before_family, method);
  const FamilyComposition after_family = detail::apply_edit(before_family, edit, index);

  ShareBreakdown after;
  Method after_method = method;
  std::string path;
  if (edit == Edit::AddIllegitimate && before_family.mistresses.size() == 1) {
    // O(1) path: fold the new child into the known legitimate share, then
    // recover the new counterfactual share by one status change.
    const Count l = before_family.legitimate;
    const Count n = before_family.mistresses[0].children;
    const Ratio& x = before_family.mistresses[0].fraction;
    const Ratio updated = add_illegitimate(before.legitimate_share, SingleLine{l, n, x});
    const Ratio child_share =
        x.is_zero() ? Ratio(0) : x * legitimize(updated, SingleLine{l, n + 1, x});
    after = partage::detail::assemble_breakdown(after_family, updated, {child_share});
    after_method = Method::Incremental;
    path = "incremental O(1)";
  } else {
    after_method = default_method(after_family);
    after = breakdown(after_family, after_method);
    path = std::string("full recomputation (") + partage::to_string(after_method) + ")";
  }

  // per-child deltas, defined where both sides have a share
  const Ratio legit_delta = after.legitimate_share - before.legitimate_share;
  std::vector<std::optional<Ratio>> share_deltas(before_family.mistresses.size());
  for (std::size_t i = 0; i < share_deltas.size(); ++i) {
    if (before.illegitimate_shares[i] && after.illegitimate_shares[i]) {
      share_deltas[i] = *after.illegitimate_shares[i] - *before.illegitimate_shares[i];
    }
  }

  if (options.mode == OutputOptions::Mode::Json) {
    nlohmann::json deltas = nlohmann::json::array();
    for (const auto& d : share_deltas) {
      if (d) {
        deltas.push_back(d->str());
      } else {
        deltas.push_back(nullptr);
      }
    }
    const nlohmann::json doc = {
        {"edit", to_string(edit)},
        {"mistress", mistress_index},
        {"path", path},
        {"before", breakdown_to_json(before_family, before, method)},
        {"after", breakdown_to_json(after_family, after, after_method)},
        {"delta",
         {{"legitimate_share", legit_delta.str()}, {"illegitimate_shares", std::move(deltas)}}},
    };
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  out << "edit: " << to_string(edit) << " (mistress " << mistress_index << ")\n";
  out << "path: " << path << "\n";
  out << "--- before ---\n";
  render_breakdown(out, before_family, before, method, options);
  out << "--- after ---\n";
  render_breakdown(out, after_family, after, after_method, options);
  out << "--- delta (per child) ---\n";
  out << "legitimate: " << detail::format(legit_delta, options) << "\n";
  for (std::size_t i = 0; i < share_deltas.size(); ++i) {
    out << "mistress " << i + 1 << ": ";
    if (share_deltas[i]) {
      out << detail::format(*share_deltas[i], options);
    } else {
      out << "n/a";
    }
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_selfcheck(const SelfCheckOptions& options, std::ostream& out, std::ostream& err,
                         const SingleLineEvaluators& eval = {}) {
  if (options.max_l < 1 || options.max_n < 0) {
    err << "error: selfcheck bounds must satisfy max-l >= 1, max-n >= 0\n";
    return kExitBadInput;
  }
  if (options.max_n > kOracleMaxChildren) {
    err << "error: selfcheck --max-n " << options.max_n
        << " exceeds the oracle guard (max " << kOracleMaxChildren << ")\n";
    return kExitBadInput;
  }
  const SelfCheckReport report = run_selfcheck(options, eval);
  if (!report.ok) {
    out << "FAIL: " << report.failure << "\n";
    return kExitSelfCheckFailed;
  }
  out << "PASS: 4 methods agree on " << report.single_line_points
      << " single-line points; multisum = recursive = oracle on " << report.multi_points
      << " two-mistress points; " << report.conservation_checks
      << " conservation checks exact\n";
  return kExitOk;
}

inline int cmd_bench(Count n_max, Count legit, const Ratio& fraction, std::ostream& out) {
  if (n_max < 1 || n_max > 10000) {
    throw ValidationError(Errc::CountTooLarge, "bench: --n-max must be in [1, 10000]");
  }
  const SingleLine base = single_line(legit, 0, fraction);
  const auto row = [&out](Count n, const char* method, const OpCount& c) {
    out << n << "," << method << "," << c.additions << "," << c.multiplications << ","
        << c.divisions << "\n";
  };
  out << "n,method,adds,muls,divs\n";
  for (Count n = 1; n <= n_max; n *= 2) {
    const SingleLine s{base.legitimate, n, base.fraction};
    OpCount count;
    share_series(s, &count);
    row(n, "series", count);
    count.reset();
    share_backward(s, &count);
    row(n, "backward", count);
    count.reset();
    const Ratio share = share_backward(s);
    add_illegitimate(share, s, &count);
    row(n, "add_illegitimate", count);
  }
  return kExitOk;
}

// Full command-line front end, in-process. Args are in natural order and do
// not include the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact estate apportionment under the counterfactual-fraction rule"};
  app.name("partage");
  app.require_subcommand(1);

  EstateArgs estate;
  std::string method_name;
  bool exact_flag = false;
  bool json_flag = false;
  std::optional<unsigned> decimal_digits;

  const auto add_estate_options = [&estate](CLI::App* cmd) {
    cmd->add_option("--legit", estate.legitimate, "number of legitimate children");
    cmd->add_option("--mistress", estate.mistress_flags,
                    "one mistress as CHILDREN:P/Q (repeatable)");
    cmd->add_option("--spec", estate.spec_path, "estate as a JSON document");
  };
  const auto add_output_options = [&](CLI::App* cmd) {
    CLI::Option* exact = cmd->add_flag("--exact", exact_flag, "print exact fractions (default)");
    CLI::Option* dec =
        cmd->add_option("--decimal", decimal_digits, "print decimals with this many digits");
    CLI::Option* json = cmd->add_flag("--json", json_flag, "print a JSON document");
    exact->excludes(dec)->excludes(json);
    dec->excludes(json);
  };

  CLI::App* share = app.add_subcommand("share", "apportion the estate and print every share");
  add_estate_options(share);
  share->add_option("--method", method_name,
                    "naive|series|backward|closed-form|incremental|multisum|recursive|oracle");
  add_output_options(share);

  CLI::App* whatif =
      app.add_subcommand("whatif", "compare the apportionment before and after one edit");
  std::string edit_name;
  Count mistress_index = 1;
  whatif->add_option("edit", edit_name, "add-illegitimate|legitimize|delegitimize")->required();
  whatif->add_option("index", mistress_index, "1-based mistress index (default 1)");
  add_estate_options(whatif);
  add_output_options(whatif);

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "cross-validate every method on an exhaustive grid");
  SelfCheckOptions selfcheck_options;
  selfcheck->add_option("--max-l", selfcheck_options.max_l, "largest legitimate count (default 6)");
  selfcheck->add_option("--max-n", selfcheck_options.max_n,
                        "largest illegitimate count (default 6)");

  CLI::App* bench = app.add_subcommand("bench", "CSV of rational-operation counts per method");
  Count bench_n_max = 512;
  Count bench_legit = 1;
  std::string bench_fraction = "1/3";
  bench->add_option("--n-max", bench_n_max, "largest n in the geometric ladder (default 512)");
  bench->add_option("--legit", bench_legit, "legitimate count (default 1)");
  bench->add_option("--fraction", bench_fraction, "fraction P/Q (default 1/3)");

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    // help requests exit clean; everything else is bad input
    return app.exit(e, out, err) == 0 ? kExitOk : kExitBadInput;
  }

  OutputOptions options;
  if (json_flag) {
    options.mode = OutputOptions::Mode::Json;
  } else if (decimal_digits) {
    options.mode = OutputOptions::Mode::Decimal;
    options.digits = *decimal_digits;
  }

  try {
    if (app.got_subcommand(share)) return cmd_share(estate, method_name, options, out);
    if (app.got_subcommand(whatif)) {
      return cmd_whatif(estate, edit_name, mistress_index, options, out);
    }
    if (app.got_subcommand(selfcheck)) return cmd_selfcheck(selfcheck_options, out, err);
    if (app.got_subcommand(bench)) {
      return cmd_bench(bench_n_max, bench_legit, Ratio::parse(bench_fraction), out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace partage::cli
