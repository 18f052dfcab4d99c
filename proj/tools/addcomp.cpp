#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addcomp/acceptance.hpp"
#include "addcomp/addcomp.hpp"
#include "addcomp/serialize.hpp"

using namespace addcomp;

namespace {

constexpr int kUsage = 64;
constexpr int kFailure = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Window parse_window(const std::string& s) {
  auto colon = s.find(':', 1);
  if (colon == std::string::npos) throw UsageError("window must be lo:hi, got " + s);
  try {
    std::size_t p1 = 0, p2 = 0;
    Int lo = std::stoll(s.substr(0, colon), &p1), hi = std::stoll(s.substr(colon + 1), &p2);
    if (p1 != colon || p2 != s.size() - colon - 1) throw UsageError("");
    if (lo > hi) throw UsageError("");
    return Window(lo, hi);
  } catch (const std::exception&) {
    throw UsageError("window must be lo:hi with lo <= hi, got " + s);
  }
}

std::vector<Int> parse_ints(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t p = 0;
      out.push_back(std::stoll(item, &p));
      if (p != item.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of integers, got " + s);
    }
  }
  return out;
}

std::string join(const std::vector<Int>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string window_text(const std::optional<Window>& w) {
  return w ? std::to_string(w->lo) + ":" + std::to_string(w->hi) : "-";
}

void print_verdict_tsv(std::ostream& os, const Verdict& v) {
  os << "status\t" << to_string(v.status) << '\n';
  os << "grade\t" << to_string(v.grade) << '\n';
  os << "witnesses\t" << join(v.witnesses) << '\n';
  os << "evidence\t" << (v.evidence ? "{" + join(*v.evidence) + "}" : "-") << '\n';
  os << "window\t" << window_text(v.checked_window) << '\n';
  for (const auto& r : v.removals)
    os << "removal\t" << r.c << '\t' << to_string(r.status) << '\t' << to_string(r.grade) << '\t' << join(r.witnesses) << '\n';
  if (!v.note.empty()) os << "note\t" << v.note << '\n';
}

void print_shrink_tsv(std::ostream& os, const ShrinkResult& r) {
  const auto& c = r.cert;
  os << "rest\t" << print_set(r.rest) << '\n';
  os << "removed\t" << c.removed << '\n';
  os << "method\t" << c.method << '\n';
  os << "frame\t" << c.a << (c.c ? "," + std::to_string(*c.c) : "") << '\n';
  os << "bound\t" << window_text(c.loss_bound) << '\n';
  if (c.thresholds) os << "thresholds\t" << c.thresholds->first << ',' << c.thresholds->second << '\n';
  os << "verified\t" << (c.verified ? "yes" : "no") << '\t' << window_text(c.verified_window) << '\n';
  os << "loss\t" << join(c.loss) << '\n';
  if (!c.note.empty()) os << "note\t" << c.note << '\n';
  os << "before\t" << to_string(r.before.status) << '\t' << to_string(r.before.grade) << '\n';
  os << "after\t" << to_string(r.after.status) << '\t' << to_string(r.after.grade) << '\n';
}

int exit_for(Status s) {
  switch (s) {
    case Status::True: return 0;
    case Status::False: return 1;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive complements of integer sets"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output instead of TSV");

  std::string w_text, c_text, s_text, a_text, b_text, window_text_opt, pred = "complement", remove_text, method = "auto";
  std::optional<Int> radius, n_opt;
  std::string pair_text, triple_text;
  Int horizon = 100'000, reach = 1'000'000, verify_span = 10'000;
  std::uint64_t seed = 0;
  std::string kind;

  auto add_w = [&](CLI::App* s) { s->add_option("--W,--w", w_text, "set W in the set language")->required(); };
  auto add_c = [&](CLI::App* s) { s->add_option("--C,--c", c_text, "set C in the set language")->required(); };
  auto add_window = [&](CLI::App* s) { s->add_option("--window", window_text_opt, "lo:hi, default -200:200"); };

  auto* eval = app.add_subcommand("eval", "canonical form and members of a set in a window");
  eval->add_option("--set,--S,--s", s_text, "set in the set language")->required();
  add_window(eval);

  auto* sum = app.add_subcommand("sumset", "coverage of A + B over a window");
  sum->add_option("--A,--a", a_text)->required();
  sum->add_option("--B,--b", b_text)->required();
  add_window(sum);
  sum->add_option("--radius", radius, "enumeration radius when neither operand is finite");

  auto* check = app.add_subcommand("check", "decide a complement predicate; exit 0 True, 1 False, 2 Unknown");
  check->add_option("--pred,--predicate", pred, "complement | ac | mc | mac")
      ->check(CLI::IsMember({"complement", "ac", "mc", "mac"}));
  add_w(check);
  add_c(check);
  add_window(check);
  check->add_option("--radius", radius);

  auto* shrink = app.add_subcommand("shrink", "remove an element of C and certify what is lost");
  add_w(shrink);
  add_c(shrink);
  shrink->add_option("--method", method, "auto | finite | periodic | interval | gaps")
      ->check(CLI::IsMember({"auto", "finite", "periodic", "interval", "gaps"}));
  shrink->add_option("--remove", remove_text, "elements to drop, for finite W");
  shrink->add_option("--pair", pair_text, "a,b: drop b, keep the congruent a (periodic)");
  shrink->add_option("--triple", triple_text, "a,b,c with a < b < c: drop the middle one (interval, gaps)");
  shrink->add_option("--horizon", horizon);
  shrink->add_option("--span", verify_span, "verification span past the loss bound");

  auto* construct = app.add_subcommand("construct", "build a minimal (asymptotic) complement");
  construct->add_option("kind", kind, "cofinite-pair | subgroup | finite-index | greedy")
      ->required()
      ->check(CLI::IsMember({"cofinite-pair", "subgroup", "finite-index", "greedy"}));
  construct->add_option("--W,--w", w_text);
  construct->add_option("--C,--c", c_text);
  construct->add_option("--n", n_opt);
  add_window(construct);
  construct->add_option("--reach", reach);

  auto* search = app.add_subcommand("search", "all minimal subsets of a finite C");
  add_w(search);
  add_c(search);

  auto* gaps = app.add_subcommand("gaps", "gap statistics of W and of its complement");
  add_w(gaps);
  gaps->add_option("--horizon", horizon);

  auto* verify = app.add_subcommand("verify", "run the acceptance checks, one row per criterion");
  verify->add_option("--seed", seed, "seed for the randomized checks, default 0");
  for (auto* s : {eval, sum, check, shrink, construct, search, gaps}) s->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::ostream& out = std::cout;
  try {
    const Window win = window_text_opt.empty() ? Window(-200, 200) : parse_window(window_text_opt);
    auto need = [](const std::string& text, const char* what) {
      if (text.empty()) throw UsageError(std::string(what) + " is required");
      return parse_set(text);
    };

    if (*eval) {
      IntSet s = parse_set(s_text);
      auto members = enumerate_window(s, win);
      if (as_json) {
        out << json{{"set", print_set(s)}, {"tree", set_to_json(s)}, {"window", window_json(win)}, {"members", members}}.dump(2)
            << '\n';
      } else {
        out << "set\t" << print_set(s) << "\nwindow\t" << win.lo << ':' << win.hi << "\nmembers\t" << join(members) << '\n';
      }
      return 0;
    }

    if (*sum) {
      CoverageMask m = windowed_sumset(parse_set(a_text), parse_set(b_text), win, radius);
      if (as_json) {
        out << to_json(m).dump(2) << '\n';
      } else {
        out << "from\tto\tcovered\n";
        Int t = win.lo;
        const json j = to_json(m);
        for (const auto& run : j["runs"]) {
          Int len = run["length"].get<Int>();
          out << t << '\t' << t + len - 1 << '\t' << (run["covered"].get<bool>() ? 1 : 0) << '\n';
          t += len;
        }
        out << "trusted\t" << window_text(m.trusted()) << '\n';
      }
      return 0;
    }

    if (*check) {
      IntSet w = parse_set(w_text), c = parse_set(c_text);
      CheckOptions opt{win, radius};
      Verdict v = pred == "complement" ? is_complement(w, c, opt)
                  : pred == "ac"       ? asymptotic_exceptional_set(w, c, opt)
                  : pred == "mc"       ? is_minimal_complement(w, c, opt)
                                       : is_minimal_asymptotic_complement(w, c, opt);
      if (as_json)
        out << to_json(v).dump(2) << '\n';
      else
        print_verdict_tsv(out, v);
      return exit_for(v.status);
    }

    if (*shrink) {
      IntSet w = parse_set(w_text), c = parse_set(c_text);
      std::string m = method;
      if (m == "auto") {
        if (!remove_text.empty()) m = "finite";
        else if (!triple_text.empty()) m = lower_bound(w) ? "gaps" : "interval";
        else m = "periodic";
      }
      if (m == "finite") {
        if (remove_text.empty()) throw UsageError("--remove is required");
        ShrinkOutcome s = finite_set_shrink(w, c, parse_ints(remove_text));
        if (as_json) {
          out << json{{"rest", print_set(s.rest)}, {"before", to_json(s.before)}, {"after", to_json(s.after)}}.dump(2) << '\n';
        } else {
          out << "rest\t" << print_set(s.rest) << '\n';
          out << "before\t" << to_string(s.before.status) << '\t' << to_string(s.before.grade) << '\n';
          out << "after\t" << to_string(s.after.status) << '\t' << to_string(s.after.grade) << '\n';
        }
        return 0;
      }
      auto run = [&]() -> ShrinkResult {
        if (m == "periodic") {
          std::optional<std::pair<Int, Int>> pair;
          if (!pair_text.empty()) {
            auto p = parse_ints(pair_text);
            if (p.size() != 2) throw UsageError("--pair takes two integers");
            pair = std::make_pair(p[0], p[1]);
          }
          return ep_shrink(w, c, pair);
        }
        auto t = parse_ints(triple_text);
        if (t.size() != 3) throw UsageError("--triple takes three integers");
        return m == "interval" ? interval_shrink(w, c, t[0], t[1], t[2], verify_span)
                               : gaps_shrink(w, c, t[0], t[1], t[2], horizon);
      };
      const ShrinkResult r = run();
      if (as_json)
        out << to_json(r).dump(2) << '\n';
      else
        print_shrink_tsv(out, r);
      return r.cert.verified ? 0 : 2;
    }

    if (*construct) {
      if (kind == "cofinite-pair" || kind == "subgroup") {
        Construction k = kind == "cofinite-pair" ? cofinite_minimal_pair(need(w_text, "--W"))
                                                 : subgroup_minimal(n_opt ? *n_opt : throw UsageError("--n is required"),
                                                                    need(c_text, "--C"));
        if (as_json)
          out << json{{"set", print_set(k.set)}, {"verdict", to_json(k.verdict)}}.dump(2) << '\n';
        else {
          out << "set\t" << print_set(k.set) << '\n';
          print_verdict_tsv(out, k.verdict);
        }
        return 0;
      }
      if (kind == "finite-index") {
        FiniteIndexMinimals f = finite_index_minimals(need(w_text, "--W"), n_opt);
        if (as_json)
          out << json{{"n", f.n}, {"minimal_complement", f.minimal_complement}, {"minimal_asymptotic", f.minimal_asymptotic}}
                     .dump(2)
              << '\n';
        else
          out << "n\t" << f.n << "\nminimal_complement\t{" << join(f.minimal_complement) << "}\nminimal_asymptotic\t{"
              << join(f.minimal_asymptotic) << "}\n";
        return 0;
      }
      GreedyResult g = greedy_asymptotic_complement(need(w_text, "--W"), win, reach);
      if (as_json)
        out << json{{"c", g.c}, {"skipped", g.skipped}, {"window", window_json(win)}}.dump(2) << '\n';
      else
        out << "c\t{" << join(g.c) << "}\nskipped\t" << join(g.skipped) << '\n';
      return 0;
    }

    if (*search) {
      IntSet c = parse_set(c_text);
      auto fc = normalize(c).as<FiniteSet>();
      if (!fc) throw UsageError("C must be finite");
      SubsetSearch s = minimal_subset_search(parse_set(w_text), enumerate_window(c, Window(*lower_bound(c), *upper_bound(c))));
      if (as_json) {
        out << json{{"complements", s.complements}, {"asymptotic", s.asymptotic}}.dump(2) << '\n';
      } else {
        out << "kind\tsubset\n";
        for (const auto& v : s.complements) out << "complement\t{" << join(v) << "}\n";
        for (const auto& v : s.asymptotic) out << "asymptotic\t{" << join(v) << "}\n";
      }
      return 0;
    }

    if (*gaps) {
      GapReport g = gap_classifier(parse_set(w_text), horizon);
      if (as_json) {
        out << to_json(g).dump(2) << '\n';
      } else {
        json j = to_json(g);
        for (const char* k : {"from", "horizon", "unbounded_w_gaps", "growing_complement_gaps", "no_minimal_complement"})
          out << k << '\t' << j[k].dump() << '\n';
        if (g.w_gaps) out << "w_max_gap\t" << g.w_gaps->max_gap << '\n';
        if (g.complement_gaps) out << "complement_max_gap\t" << g.complement_gaps->max_gap << '\n';
      }
      return 0;
    }

    if (*verify) {
      auto results = acceptance::run_all(seed);
      bool ok = true;
      json rows = json::array();
      if (!as_json) out << "id\tstatus\truntime-ms\tcriterion\tdetail\n";
      for (const auto& r : results) {
        ok = ok && r.outcome == acceptance::Outcome::Pass;
        if (as_json) {
          rows.push_back({{"id", r.id}, {"status", acceptance::to_string(r.outcome)}, {"runtime_ms", r.ms},
                          {"criterion", r.title}, {"detail", r.detail}});
        } else {
          std::ostringstream ms;
          ms.setf(std::ios::fixed);
          ms.precision(1);
          ms << r.ms;
          out << r.id << '\t' << acceptance::to_string(r.outcome) << '\t' << ms.str() << '\t' << r.title << '\t' << r.detail
              << '\n';
        }
      }
      if (as_json) out << json{{"seed", seed}, {"results", rows}}.dump(2) << '\n';
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const addcomp::ParseError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const addcomp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool usage = e.kind() == ErrorKind::SyntaxError || e.kind() == ErrorKind::SemanticError ||
                       e.kind() == ErrorKind::InvalidWindow || e.kind() == ErrorKind::BadParams;
    return usage ? kUsage : kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
