#pragma once

// Command-line front end. parse_args and run are kept separate from main()
// so that tests can drive them with in-memory streams.
//
// Exit codes: 0 success, 1 domain error (the error name is printed first on
// stderr), 2 usage error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "unimod/classification.hpp"
#include "unimod/error.hpp"
#include "unimod/io.hpp"
#include "unimod/lattice.hpp"
#include "unimod/surfaces.hpp"
#include "unimod/zeta.hpp"

namespace unimod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

struct ClassifyCmd {
  std::string gram_path;
  ClassificationMode mode = ClassificationMode::AbstractLattice;
};

/// Either a catalog name/alias or explicit Chern numbers.
struct SurfaceCmd {
  std::optional<std::string> name;
  std::int64_t c1_sq = 0;
  std::int64_t c2 = 0;
  bool spin = false;
};

struct CompareCmd {
  std::string a;
  std::string b;
};

struct CounterexampleCmd {
  std::vector<std::uint32_t> primes;
  std::uint32_t degrees = 1;
};

struct CountCmd {
  std::string variety;
  std::uint32_t p = 0;
  std::uint32_t k = 1;
};

struct Command {
  std::variant<ClassifyCmd, SurfaceCmd, CompareCmd, CounterexampleCmd, CountCmd> action;
  bool machine_output = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Options {
  CLI::App app{"Intersection forms, surface invariants and point counts", "unimod"};
  CLI::App* classify = nullptr;
  CLI::App* surface = nullptr;
  CLI::App* compare = nullptr;
  CLI::App* counterexample = nullptr;
  CLI::App* count = nullptr;

  bool json = false;
  ClassifyCmd classify_cmd;
  bool smooth = false;
  std::string surface_name;
  std::optional<std::int64_t> c1_sq, c2;
  bool spin = false;
  CompareCmd compare_cmd;
  CounterexampleCmd counterexample_cmd;
  CountCmd count_cmd;

  Options() {
    app.require_subcommand(1);
    auto json_flag = [&](CLI::App* sub) {
      sub->add_flag("--json", json, "Emit a single JSON object on stdout");
    };

    classify = app.add_subcommand("classify", "Classify a unimodular Gram matrix");
    classify->add_option("--gram", classify_cmd.gram_path, "Gram matrix file {\"n\":..,\"entries\":[[..]]}")
        ->required();
    classify->add_flag("--smooth", smooth,
                       "Assume the form is the intersection form of a smooth closed simply-connected 4-manifold");
    json_flag(classify);

    surface = app.add_subcommand("surface", "Invariants of a simply-connected projective surface");
    auto* name = surface->add_option("--name", surface_name, "Catalog name or alias (P2, P1xP1, BlP2, K3, X5, ...)");
    auto* c1 = surface->add_option("--c1sq", c1_sq, "Self-intersection of the canonical class");
    auto* c2opt = surface->add_option("--c2", c2, "Topological Euler number");
    auto* spin_flag = surface->add_flag("--spin", spin, "Canonical class divisible by 2");
    name->excludes(c1)->excludes(c2opt)->excludes(spin_flag);
    c1->needs(c2opt);
    c2opt->needs(c1);
    json_flag(surface);

    compare = app.add_subcommand("compare", "Decide oriented homeomorphism of two surfaces");
    compare->add_option("--a", compare_cmd.a, "Catalog name, or c1sq,c2[,spin]")->required();
    compare->add_option("--b", compare_cmd.b, "Catalog name, or c1sq,c2[,spin]")->required();
    json_flag(compare);

    counterexample = app.add_subcommand(
        "counterexample", "Equal point counts of P1xP1 and Bl1P2 versus their homeomorphism types");
    counterexample->add_option("--primes", counterexample_cmd.primes, "Comma-separated primes")
        ->required()
        ->delimiter(',');
    counterexample->add_option("--degrees", counterexample_cmd.degrees, "Largest extension degree (1..3)");
    json_flag(counterexample);

    count = app.add_subcommand("count", "Count F_q-points of a catalog surface model");
    count->add_option("--variety", count_cmd.variety, "Catalog name or alias")->required();
    count->add_option("--p", count_cmd.p, "Characteristic")->required();
    count->add_option("--k", count_cmd.k, "Extension degree (1..3)");
    json_flag(count);
  }
};

/// "c1sq,c2" or "c1sq,c2,spin".
inline std::optional<SurfaceData> parse_inline_surface(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3) return std::nullopt;
  if (parts.size() == 3 && parts[2] != "spin") return std::nullopt;
  try {
    std::size_t used = 0;
    const long long c1 = std::stoll(parts[0], &used);
    if (used != parts[0].size()) return std::nullopt;
    const long long c2 = std::stoll(parts[1], &used);
    if (used != parts[1].size()) return std::nullopt;
    return SurfaceData{text, c1, c2, parts.size() == 3};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline SurfaceData resolve_surface(const std::string& text) {
  if (auto s = find_surface(text)) return *s;
  if (auto s = parse_inline_surface(text)) return *s;
  throw UsageError("unknown surface '" + text + "' (use a catalog name or c1sq,c2[,spin])");
}

inline std::string parity_word(Parity p) { return p == Parity::Even ? "even" : "odd"; }

inline std::string describe_surface(const SurfaceData& s) {
  return s.name + " (c1^2 " + std::to_string(s.c1_sq) + ", c2 " + std::to_string(s.c2) +
         (s.spin ? ", spin)" : ", non-spin)");
}

inline std::string describe_invariants(const SurfaceInvariants& i) {
  return "b2 " + std::to_string(i.b2) + ", signature " + std::to_string(i.sigma) + ", " +
         parity_word(i.parity) + ", b+ " + std::to_string(i.b_plus) + ", b- " + std::to_string(i.b_minus) +
         ", chi(O) " + std::to_string(i.chi_holo);
}

inline std::string describe_class(const FormClass& c) { return to_string(c) + "  [" + describe(c) + "]"; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Json surface_json(const SurfaceData& s) {
  return {{"surface", to_json(s)},
          {"invariants", to_json(compute_invariants(s))},
          {"class", to_json(intersection_form_class(s))}};
}

inline int run_classify(const ClassifyCmd& c, bool json, std::ostream& out) {
  const GramMatrix m = gram_from_json(read_file(c.gram_path));
  const FormInvariants inv = invariants(m);
  const FormClass cls = classify_form(inv, c.mode);
  if (json) {
    out << Json{{"invariants", to_json(inv)}, {"mode", to_string(c.mode)}, {"class", to_json(cls)}}.dump()
        << '\n';
  } else {
    out << "invariants: rank " << inv.rank << ", b+ " << inv.b_plus << ", b- " << inv.b_minus
        << ", signature " << inv.signature << ", " << parity_word(inv.parity) << ", det " << inv.determinant
        << '\n'
        << "mode: " << to_string(c.mode) << '\n'
        << "class: " << describe_class(cls) << '\n';
  }
  return kExitOk;
}

inline int run_surface(const SurfaceCmd& c, bool json, std::ostream& out) {
  SurfaceData s;
  if (c.name) {
    auto found = find_surface(*c.name);
    if (!found) throw UsageError("unknown surface '" + *c.name + "'");
    s = *found;
  } else {
    s = {"custom", c.c1_sq, c.c2, c.spin};
  }
  if (json) {
    out << surface_json(s).dump() << '\n';
    return kExitOk;
  }
  const SurfaceInvariants inv = compute_invariants(s);
  out << "surface: " << describe_surface(s) << '\n'
      << "invariants: " << describe_invariants(inv) << '\n'
      << "intersection form: " << describe_class(intersection_form_class(s)) << '\n';
  return kExitOk;
}

inline int run_compare(const CompareCmd& c, bool json, std::ostream& out) {
  const SurfaceData a = resolve_surface(c.a);
  const SurfaceData b = resolve_surface(c.b);
  const bool same = homeomorphic(a, b);
  if (json) {
    out << Json{{"a", surface_json(a)}, {"b", surface_json(b)}, {"homeomorphic", same}}.dump() << '\n';
    return kExitOk;
  }
  for (const auto& [label, s] : {std::pair{"a", &a}, std::pair{"b", &b}}) {
    out << label << ": " << describe_surface(*s) << '\n'
        << "   " << describe_invariants(compute_invariants(*s)) << '\n'
        << "   " << describe_class(intersection_form_class(*s)) << '\n';
  }
  out << "verdict: " << (same ? "homeomorphic" : "not homeomorphic") << '\n';
  return kExitOk;
}

inline int run_counterexample(const CounterexampleCmd& c, bool json, std::ostream& out) {
  const CounterexampleReport r = counterexample_report(c.primes, c.degrees);
  if (json) {
    out << to_json(r).dump() << '\n';
    return kExitOk;
  }
  out << "   p  k      q  #" << r.first.name << "  #" << r.second.name << '\n';
  for (const auto& row : r.rows)
    out << std::setw(4) << row.p << "  " << row.k << "  "
        << std::setw(5) << row.q << "  " << std::setw(6) << row.count_p1xp1 << "  " << std::setw(6)
        << row.count_blowup << '\n';
  out << r.first.name << ": " << describe_class(r.first_class) << '\n'
      << r.second.name << ": " << describe_class(r.second_class) << '\n'
      << "homeomorphic: " << (r.homeomorphic ? "yes" : "no") << '\n'
      << "conclusion: " << r.conclusion << '\n';
  return kExitOk;
}

inline int run_count(const CountCmd& c, bool json, std::ostream& out) {
  const FiniteField f = field_build(c.p, c.k);
  const PointCount pc = count_variety(c.variety, f);
  const SurfaceData s = *find_surface(c.variety);
  const SurfaceModel model = model_for(s);
  const bool good = has_good_reduction(model, c.p);
  const std::int64_t b2 = compute_invariants(s).b2;
  const bool weil = weil_bound_check(pc, b2);
  if (json) {
    out << Json{{"variety", pc.variety}, {"p", c.p},         {"k", c.k},
                {"q", pc.q},             {"count", pc.count}, {"b2", b2},
                {"good_reduction", good}, {"weil_bound", weil}}
               .dump()
        << '\n';
    return kExitOk;
  }
  out << pc.variety << " over F_" << pc.q << ": " << pc.count << " points\n"
      << "reduction at " << c.p << ": " << (good ? "good" : "bad (Weil bound not applicable)") << '\n'
      << "Weil bound |N - 1 - q^2| <= b2*q with b2 = " << b2 << ": " << (weil ? "holds" : "violated") << '\n';
  return kExitOk;
}

}  // namespace detail

/// `args` excludes the program name.
inline Command parse_args(const std::vector<std::string>& args) {
  detail::Options o;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    o.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(o.app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(o.app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (CLI::App* sub : o.app.get_subcommands()) help = sub->help();
    throw UsageError(std::string(e.what()) + "\n" + (help.empty() ? o.app.help() : help));
  }

  Command cmd;
  cmd.machine_output = o.json;
  if (o.classify->parsed()) {
    o.classify_cmd.mode = o.smooth ? ClassificationMode::SmoothFourManifold : ClassificationMode::AbstractLattice;
    cmd.action = o.classify_cmd;
  } else if (o.surface->parsed()) {
    SurfaceCmd s;
    if (!o.surface_name.empty()) {
      s.name = o.surface_name;
    } else if (o.c1_sq && o.c2) {
      s.c1_sq = *o.c1_sq;
      s.c2 = *o.c2;
      s.spin = o.spin;
    } else {
      throw UsageError("surface: give --name NAME or --c1sq N --c2 N [--spin]\n" + o.surface->help());
    }
    cmd.action = s;
  } else if (o.compare->parsed()) {
    cmd.action = o.compare_cmd;
  } else if (o.counterexample->parsed()) {
    if (o.counterexample_cmd.primes.empty()) throw UsageError("counterexample: --primes is empty");
    cmd.action = o.counterexample_cmd;
  } else {
    cmd.action = o.count_cmd;
  }
  return cmd;
}

/// Executes a parsed command. Domain errors become exit code 1 with the
/// error name on `err` (as a JSON object under --json).
inline int run(const Command& cmd, std::ostream& out, std::ostream& err, bool color = false) {
  auto report = [&](std::string_view name, const std::string& message, int code) {
    if (cmd.machine_output) {
      err << Json{{"error", name}, {"message", message}}.dump() << '\n';
    } else if (color) {
      err << "\033[31m" << name << "\033[0m: " << message << '\n';
    } else {
      err << name << ": " << message << '\n';
    }
    return code;
  };
  try {
    return std::visit(
        [&](const auto& c) -> int {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, ClassifyCmd>) return detail::run_classify(c, cmd.machine_output, out);
          else if constexpr (std::is_same_v<T, SurfaceCmd>) return detail::run_surface(c, cmd.machine_output, out);
          else if constexpr (std::is_same_v<T, CompareCmd>) return detail::run_compare(c, cmd.machine_output, out);
          else if constexpr (std::is_same_v<T, CounterexampleCmd>)
            return detail::run_counterexample(c, cmd.machine_output, out);
          else return detail::run_count(c, cmd.machine_output, out);
        },
        cmd.action);
  } catch (const DomainError& e) {
    return report(e.name(), e.what(), kExitDomainError);
  } catch (const UsageError& e) {
    return report("UsageError", e.what(), kExitUsage);
  } catch (const std::invalid_argument& e) {
    return report("UsageError", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return report("InternalError", e.what(), kExitDomainError);
  }
}

/// parse_args + run with exit-code mapping for usage errors and --help.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                      bool color = false) {
  Command cmd;
  try {
    cmd = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what();
    return kExitUsage;
  }
  return run(cmd, out, err, color);
}

}  // namespace unimod::cli
