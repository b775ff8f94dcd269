#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cnslab/closedforms.hpp"
#include "cnslab/coeffengine.hpp"
#include "cnslab/conjlab.hpp"
#include "cnslab/constructions.hpp"
#include "cnslab/errors.hpp"
#include "cnslab/subsums.hpp"
#include "cnslab/theoremlab.hpp"

namespace {

using json = nlohmann::json;
using u64 = std::uint64_t;
using namespace cnslab;

constexpr std::size_t kMaxEmittedViolations = 100;

struct Ctx {
  bool as_json = false;
  bool as_csv = false;
  bool timing = false;
  unsigned workers = 1;
  u64 grid_limit = kDefaultGridLimit;
  std::chrono::steady_clock::time_point start;
};

u64 env_grid_limit() {
  const char* s = std::getenv("CNSLAB_MAX_GRID");
  if (!s || !*s) return kDefaultGridLimit;
  u64 v = 0;
  const char* end = s + std::string_view(s).size();
  auto [ptr, ec] = std::from_chars(s, end, v);
  if (ec != std::errc{} || ptr != end || v == 0) {
    throw bad_bounds("CNSLAB_MAX_GRID must be a positive integer");
  }
  return v;
}

std::vector<std::int64_t> parse_set_literal(const std::string& lit) {
  std::vector<std::int64_t> out;
  if (lit.empty()) return out;
  std::size_t pos = 0;
  while (pos <= lit.size()) {
    const std::size_t comma = lit.find(',', pos);
    const std::string tok = lit.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::int64_t v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (tok.empty() || ec != std::errc{} || ptr != e) {
      throw bad_bounds("bad set literal element '" + tok + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

FpSet make_set(Prime p, const std::string& lit) {
  const auto ints = parse_set_literal(lit);
  FpSet s(p);
  for (std::int64_t v : ints) {
    const u64 r = fp_normalize(v, p);
    if (s.contains(r)) {
      throw bad_bounds("duplicate residue " + std::to_string(r) + " in set literal");
    }
    s.insert(r);
  }
  return s;
}

std::string join(const std::vector<u64>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

json opt_num(const std::optional<u64>& v) { return v ? json(*v) : json(nullptr); }

TheoremKind kind_of(const std::string& s) {
  if (s == "cd") return TheoremKind::CD;
  if (s == "dsh") return TheoremKind::DSH;
  return TheoremKind::MAIN;
}

int emit(const Ctx& ctx, const std::string& command, json params, json results, json violations,
         int code, const std::vector<std::string>& text, const std::string& csv) {
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ctx.start).count();
  if (ctx.as_json) {
    json doc;
    doc["command"] = command;
    doc["params"] = std::move(params);
    doc["results"] = std::move(results);
    doc["violations"] = std::move(violations);
    doc["timing"] = ctx.timing ? json{{"elapsed_ms", elapsed_ms}} : json(nullptr);
    std::cout << doc.dump(2) << "\n";
  } else if (ctx.as_csv) {
    std::cout << csv;
  } else {
    for (const auto& line : text) std::cout << line << "\n";
    if (ctx.timing) std::cout << "elapsed_ms: " << elapsed_ms << "\n";
  }
  return code;
}

// ---- command configurations ----

struct SetCmd {  // sumset / hfold / sigma
  u64 p = 0;
  std::string a_lit, b_lit, set_lit;
  bool restricted = false;
  u64 h = 0;
  u64 alpha = 0, beta = 0;
};

struct CoeffCmd {
  std::string kind;
  u64 p = 0;
  std::optional<u64> n, m, d, h, alpha;
  std::string method = "all";
};

struct VerifyCmd {
  std::string kind;
  u64 p = 0;
  bool exhaustive = false;
  std::optional<u64> samples;
  u64 seed = 0;
  u64 limit = kDefaultEnumLimit;
};

struct AuditCmd {
  u64 p = 0;
  std::string a_lit, b_lit, set_lit;
  std::optional<u64> h, alpha;
};

struct ConjCmd {
  std::string action;
  std::optional<u64> p;
  std::optional<u64> limit;  // pairs: prime bound; search: instance cap
  std::optional<u64> k;
  std::optional<u64> alpha, beta;
  bool exhaustive = false;
  std::optional<u64> samples;
  u64 seed = 0;
};

json violation_json(const Violation& v) {
  return json{{"set_a", v.set_a}, {"set_b", v.set_b}, {"param", v.param},
              {"observed", v.observed}, {"bound", v.bound}};
}

json hit_json(const ConjectureHit& h) {
  return json{{"set", h.set},       {"alpha", h.alpha},
              {"beta", h.beta},     {"observed", h.observed},
              {"bound", h.bound},   {"matches_known_family", h.matches_known_family}};
}

int run_sumset(Ctx& ctx, const SetCmd& cmd) {
  Prime p(cmd.p);
  const FpSet a = make_set(p, cmd.a_lit);
  const FpSet b = make_set(p, cmd.b_lit);
  const FpSet s = cmd.restricted ? restricted_sumset(a, b) : sumset(a, b);
  const auto members = s.members();

  json params{{"p", p.value()}, {"a", a.members()}, {"b", b.members()}, {"restricted", cmd.restricted}};
  json results{{"members", members}, {"cardinality", s.cardinality()}};
  json violations = json::array();
  int code = 0;
  std::vector<std::string> text{"cardinality: " + std::to_string(s.cardinality()),
                                "members: " + join(members, ' ')};
  if (!cmd.restricted) {
    if (a.empty() || b.empty()) throw bad_bounds("summand sets must be nonempty");
    const auto chk = check_cd(a, b);
    results["bound"] = chk.bound;
    results["holds"] = chk.holds;
    text.push_back("bound: " + std::to_string(chk.bound));
    text.push_back(std::string("holds: ") + (chk.holds ? "yes" : "no"));
    if (!chk.holds) {
      violations.push_back(violation_json({a.members(), b.members(), 0, chk.observed, chk.bound}));
      code = 1;
    }
  } else {
    results["bound"] = nullptr;
    results["holds"] = nullptr;
  }
  std::string csv = "member\n";
  for (u64 x : members) csv += std::to_string(x) + "\n";
  return emit(ctx, "sumset", params, results, violations, code, text, csv);
}

int run_hfold(Ctx& ctx, const SetCmd& cmd) {
  Prime p(cmd.p);
  const FpSet a = make_set(p, cmd.set_lit);
  const auto chk = check_dsh(a, cmd.h);
  const FpSet s = hfold(a, cmd.h);
  const auto members = s.members();

  json params{{"p", p.value()}, {"set", a.members()}, {"h", cmd.h}};
  json results{{"members", members},
               {"cardinality", s.cardinality()},
               {"bound", chk.bound},
               {"holds", chk.holds}};
  json violations = json::array();
  int code = 0;
  if (!chk.holds) {
    violations.push_back(violation_json({a.members(), {}, cmd.h, chk.observed, chk.bound}));
    code = 1;
  }
  std::vector<std::string> text{"cardinality: " + std::to_string(s.cardinality()),
                                "members: " + join(members, ' '),
                                "bound: " + std::to_string(chk.bound),
                                std::string("holds: ") + (chk.holds ? "yes" : "no")};
  std::string csv = "member\n";
  for (u64 x : members) csv += std::to_string(x) + "\n";
  return emit(ctx, "hfold", params, results, violations, code, text, csv);
}

int run_sigma(Ctx& ctx, const SetCmd& cmd) {
  Prime p(cmd.p);
  const FpSet a = make_set(p, cmd.set_lit);
  const FpSet s = sigma_double(a, cmd.alpha, cmd.beta);
  const auto members = s.members();
  const bool asym = is_asymmetric(a);

  json params{{"p", p.value()}, {"set", a.members()}, {"alpha", cmd.alpha}, {"beta", cmd.beta}};
  json results{{"members", members}, {"cardinality", s.cardinality()}, {"asymmetric", asym}};
  json violations = json::array();
  int code = 0;
  std::vector<std::string> text{"cardinality: " + std::to_string(s.cardinality()),
                                "members: " + join(members, ' '),
                                std::string("asymmetric: ") + (asym ? "yes" : "no")};
  if (asym) {
    const u64 bound = conj_bound(a.cardinality(), cmd.alpha, cmd.beta, p);
    const bool holds = s.cardinality() >= bound;
    results["bound"] = bound;
    results["holds"] = holds;
    text.push_back("bound: " + std::to_string(bound));
    text.push_back(std::string("holds: ") + (holds ? "yes" : "no"));
    if (!holds) {
      json v = violation_json({a.members(), {}, 0, s.cardinality(), bound});
      v.erase("param");
      v["alpha"] = cmd.alpha;
      v["beta"] = cmd.beta;
      violations.push_back(std::move(v));
      code = 1;
    }
  } else {
    results["bound"] = nullptr;
    results["holds"] = nullptr;
  }
  std::string csv = "member\n";
  for (u64 x : members) csv += std::to_string(x) + "\n";
  return emit(ctx, "sigma", params, results, violations, code, text, csv);
}

int run_coeff(Ctx& ctx, const CoeffCmd& cmd) {
  Prime p(cmd.p);
  const TheoremKind kind = kind_of(cmd.kind);

  u64 p1 = 0, p2 = 0;
  json params{{"kind", cmd.kind}, {"p", p.value()}, {"method", cmd.method}};
  switch (kind) {
    case TheoremKind::CD:
      if (!cmd.n || !cmd.m) throw bad_bounds("coeff cd needs --n and --m");
      p1 = *cmd.n;
      p2 = *cmd.m;
      params["n"] = p1;
      params["m"] = p2;
      break;
    case TheoremKind::DSH:
      if (!cmd.d || !cmd.h) throw bad_bounds("coeff dsh needs --d and --h");
      p1 = *cmd.d;
      p2 = *cmd.h;
      params["d"] = p1;
      params["h"] = p2;
      break;
    default:
      if (!cmd.d || !cmd.alpha) throw bad_bounds("coeff main needs --d and --alpha");
      p1 = *cmd.d;
      p2 = *cmd.alpha;
      params["d"] = p1;
      params["alpha"] = p2;
      break;
  }

  MethodSelect sel{false, false, false, false};
  if (cmd.method == "all") {
    sel = MethodSelect{};
  } else if (cmd.method == "sum") {
    sel.full_sum = true;
  } else if (cmd.method == "point") {
    sel.single_point = true;
  } else if (cmd.method == "closed") {
    sel.closed_form = true;
  } else {
    sel.expansion = true;  // "expand", enforced by the flag validator
  }

  const auto rep = construction_audit(kind, static_cast<std::uint32_t>(p1),
                                      static_cast<std::uint32_t>(p2), p, sel, ctx.grid_limit, ctx.workers);
  json results{{"delta", rep.delta},
               {"full_sum", opt_num(rep.full_sum)},
               {"single_point", opt_num(rep.single_point)},
               {"closed_form", opt_num(rep.closed_form)},
               {"expansion", opt_num(rep.expansion)},
               {"closed_form_exact", rep.closed_form_exact},
               {"grid_size", rep.grid_size},
               {"nonzero_points", rep.nonzero_point_count},
               {"nonzero_point_sample", rep.nonzero_point_sample},
               {"agreement", rep.agreement},
               {"warnings", rep.warnings}};
  const int code = rep.agreement ? 0 : 1;

  auto show = [](const std::optional<u64>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::vector<std::string> text{"delta: " + std::to_string(rep.delta),
                                "full_sum: " + show(rep.full_sum),
                                "single_point: " + show(rep.single_point),
                                "closed_form: " + show(rep.closed_form),
                                "expansion: " + show(rep.expansion),
                                "closed_form_exact: " + rep.closed_form_exact,
                                "nonzero_points: " + std::to_string(rep.nonzero_point_count),
                                std::string("agreement: ") + (rep.agreement ? "yes" : "no")};
  for (const auto& w : rep.warnings) text.push_back("warning: " + w);

  std::string csv = "field,value\n";
  csv += "delta," + std::to_string(rep.delta) + "\n";
  csv += "full_sum," + show(rep.full_sum) + "\n";
  csv += "single_point," + show(rep.single_point) + "\n";
  csv += "closed_form," + show(rep.closed_form) + "\n";
  csv += "expansion," + show(rep.expansion) + "\n";
  csv += "closed_form_exact," + rep.closed_form_exact + "\n";
  csv += "nonzero_points," + std::to_string(rep.nonzero_point_count) + "\n";
  csv += std::string("agreement,") + (rep.agreement ? "yes" : "no") + "\n";
  return emit(ctx, "coeff", params, results, json::array(), code, text, csv);
}

int run_verify(Ctx& ctx, const VerifyCmd& cmd) {
  Prime p(cmd.p);
  const TheoremKind kind = kind_of(cmd.kind);
  if (cmd.exhaustive && cmd.samples) throw bad_bounds("choose either --exhaustive or --samples");

  TheoremReport rep;
  json params{{"kind", cmd.kind}, {"p", p.value()}};
  if (cmd.samples) {
    rep = random_verify(p, kind, *cmd.samples, cmd.seed, ctx.workers);
    params["mode"] = "random";
    params["samples"] = *cmd.samples;
    params["seed"] = cmd.seed;
  } else {
    rep = exhaustive_verify(p, kind, cmd.limit, ctx.workers);
    params["mode"] = "exhaustive";
    params["limit"] = cmd.limit;
  }

  json violations = json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < kMaxEmittedViolations; ++i) {
    violations.push_back(violation_json(rep.violations[i]));
  }
  json results{{"mode", rep.mode},
               {"instances_checked", rep.instances_checked},
               {"violation_count", rep.violations.size()}};
  const int code = rep.violations.empty() ? 0 : 1;

  std::vector<std::string> text{"mode: " + rep.mode,
                                "instances_checked: " + std::to_string(rep.instances_checked),
                                "violations: " + std::to_string(rep.violations.size())};
  std::string csv = "set_a,set_b,param,observed,bound\n";
  for (std::size_t i = 0; i < rep.violations.size() && i < kMaxEmittedViolations; ++i) {
    const auto& v = rep.violations[i];
    csv += join(v.set_a, ';') + "," + join(v.set_b, ';') + "," + std::to_string(v.param) + "," +
           std::to_string(v.observed) + "," + std::to_string(v.bound) + "\n";
  }
  return emit(ctx, "verify", params, results, violations, code, text, csv);
}

int run_audit(Ctx& ctx, const AuditCmd& cmd) {
  Prime p(cmd.p);
  const bool has_ab = !cmd.a_lit.empty() || !cmd.b_lit.empty();
  const bool has_set = !cmd.set_lit.empty();
  if (cmd.h && cmd.alpha) throw bad_bounds("audit takes --h or --alpha, not both");

  json params{{"p", p.value()}};
  ProofModel model = [&]() -> ProofModel {
    if (has_ab) {
      if (cmd.a_lit.empty() || cmd.b_lit.empty() || has_set || cmd.h || cmd.alpha) {
        throw bad_bounds("audit of a pairwise sum needs exactly --a and --b");
      }
      const FpSet a = make_set(p, cmd.a_lit);
      const FpSet b = make_set(p, cmd.b_lit);
      if (a.empty() || b.empty()) throw bad_bounds("summand sets must be nonempty");
      params["kind"] = "cd";
      params["a"] = a.members();
      params["b"] = b.members();
      const u64 delta = cd_delta(a.cardinality(), b.cardinality(), p);
      const u64 required = a.cardinality() + (b.cardinality() - delta) - 2;
      auto cover = sumset(a, b);
      auto mem = cover.members();
      while (mem.size() > required) {
        cover.erase(mem.back());
        mem.pop_back();
      }
      return cd_p_side(a, b, cover);
    }
    if (!has_set || (!cmd.h && !cmd.alpha)) {
      throw bad_bounds("audit needs --a/--b, or --set with --h or --alpha");
    }
    const FpSet a = make_set(p, cmd.set_lit);
    params["set"] = a.members();
    if (cmd.h) {
      params["kind"] = "dsh";
      params["h"] = *cmd.h;
      if (*cmd.h < 1 || *cmd.h > a.cardinality()) throw bad_h();
      const u64 delta = dsh_delta(a.cardinality(), *cmd.h, p);
      const u64 required = *cmd.h * (a.cardinality() - *cmd.h) - delta;
      auto cover = hfold(a, *cmd.h);
      auto mem = cover.members();
      while (mem.size() > required) {
        cover.erase(mem.back());
        mem.pop_back();
      }
      return dsh_p_side(a, static_cast<std::uint32_t>(*cmd.h), cover);
    }
    params["kind"] = "main";
    params["alpha"] = *cmd.alpha;
    if (!is_asymmetric(a)) throw not_asymmetric();
    if (*cmd.alpha > a.cardinality()) throw bad_bounds("alpha exceeds |A|");
    const u64 delta = main_delta(a.cardinality(), *cmd.alpha, p);
    const u64 required = sum_count(a.cardinality(), *cmd.alpha) - delta;
    auto cover = sigma_upper(a, *cmd.alpha);
    auto mem = cover.members();
    while (mem.size() > required) {
      cover.erase(mem.back());
      mem.pop_back();
    }
    return main_p_side(a, static_cast<std::uint32_t>(*cmd.alpha), cover);
  }();

  const u64 coefficient = coeff_full_sum(model, ctx.grid_limit, ctx.workers);
  const auto rep = cns_audit(model, coefficient, ctx.grid_limit, ctx.workers);
  const bool contra = rep.verdict == ContradictionReport::Verdict::contradiction;

  json results{{"verdict", contra ? "contradiction" : "consistent"},
               {"degree_ok", rep.degree_ok},
               {"coefficient", rep.coefficient},
               {"grid_size", rep.grid_size},
               {"nonvanishing_count", rep.nonvanishing_count},
               {"uncovered_values", rep.uncovered_values},
               {"witnesses_outside_cover", rep.witnesses_outside_cover},
               {"cover", model.roots},
               {"cover_size", model.roots.size()}};
  std::vector<std::string> text{std::string("verdict: ") + (contra ? "contradiction" : "consistent"),
                                "coefficient: " + std::to_string(rep.coefficient),
                                std::string("degree_ok: ") + (rep.degree_ok ? "yes" : "no"),
                                "nonvanishing_count: " + std::to_string(rep.nonvanishing_count),
                                "uncovered_values: " + join(rep.uncovered_values, ' ')};
  std::string csv = "field,value\n";
  csv += std::string("verdict,") + (contra ? "contradiction" : "consistent") + "\n";
  csv += "coefficient," + std::to_string(rep.coefficient) + "\n";
  csv += "nonvanishing_count," + std::to_string(rep.nonvanishing_count) + "\n";
  csv += "uncovered_values," + join(rep.uncovered_values, ';') + "\n";
  return emit(ctx, "audit", params, results, json::array(), 0, text, csv);
}

int run_conjecture(Ctx& ctx, const ConjCmd& cmd) {
  if (cmd.action == "pairs") {
    const u64 limit = cmd.limit.value_or(1000);
    const auto pairs = special_pairs(limit);
    json params{{"limit", limit}};
    json jp = json::array();
    std::vector<std::string> text;
    std::string csv = "k,p\n";
    for (const auto& [k, pv] : pairs) {
      jp.push_back(json::array({k, pv}));
      text.push_back("k=" + std::to_string(k) + " p=" + std::to_string(pv));
      csv += std::to_string(k) + "," + std::to_string(pv) + "\n";
    }
    json results{{"pairs", jp}, {"count", pairs.size()}};
    return emit(ctx, "conjecture", params, results, json::array(), 0, text, csv);
  }

  if (cmd.action == "family") {
    if (!cmd.k || !cmd.p) throw bad_bounds("conjecture family needs --k and --p");
    Prime p(*cmd.p);
    const FpSet fam = family_set(*cmd.k, p);
    json params{{"action", "family"}, {"k", *cmd.k}, {"p", p.value()}};

    std::vector<std::pair<u64, u64>> pairs;
    if (cmd.alpha || cmd.beta) {
      pairs.emplace_back(cmd.alpha.value_or(0), cmd.beta.value_or(0));
    } else {
      pairs = {{1, 1}, {1, 2}, {2, 1}};
    }
    json checks = json::array();
    json violations = json::array();
    int code = 0;
    std::vector<std::string> text{"members: " + join(fam.members(), ' ')};
    std::string csv = "alpha,beta,observed,bound,holds\n";
    for (const auto& [alpha, beta] : pairs) {
      const auto c = check_double(fam, alpha, beta);
      checks.push_back(json{{"alpha", alpha}, {"beta", beta}, {"observed", c.observed},
                            {"bound", c.bound}, {"holds", c.holds}});
      text.push_back("alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta) +
                     " observed=" + std::to_string(c.observed) + " bound=" + std::to_string(c.bound) +
                     (c.holds ? " holds" : " VIOLATION"));
      csv += std::to_string(alpha) + "," + std::to_string(beta) + "," + std::to_string(c.observed) +
             "," + std::to_string(c.bound) + "," + (c.holds ? "yes" : "no") + "\n";
      if (!c.holds) {
        violations.push_back(json{{"set", fam.members()}, {"alpha", alpha}, {"beta", beta},
                                  {"observed", c.observed}, {"bound", c.bound},
                                  {"matches_known_family", true}});
        code = 1;
      }
    }
    json results{{"members", fam.members()}, {"checks", checks}};
    return emit(ctx, "conjecture", params, results, violations, code, text, csv);
  }

  // search
  if (!cmd.p) throw bad_bounds("conjecture search needs --p");
  Prime p(*cmd.p);
  if (cmd.exhaustive && cmd.samples) throw bad_bounds("choose either --exhaustive or --samples");
  SearchReport rep;
  json params{{"action", "search"}, {"p", p.value()}};
  if (cmd.samples) {
    rep = search_sampled(p, *cmd.samples, cmd.seed, ctx.workers);
    params["mode"] = "random";
    params["samples"] = *cmd.samples;
    params["seed"] = cmd.seed;
  } else {
    const u64 cap = cmd.limit.value_or(kDefaultEnumLimit);
    rep = search_exhaustive(p, cap, ctx.workers);
    params["mode"] = "exhaustive";
    params["limit"] = cap;
  }

  json violations = json::array();
  for (std::size_t i = 0; i < rep.hits.size() && i < kMaxEmittedViolations; ++i) {
    violations.push_back(hit_json(rep.hits[i]));
  }
  json results{{"mode", rep.mode},
               {"sets_checked", rep.sets_checked},
               {"instances_checked", rep.instances_checked},
               {"hit_count", rep.hits.size()}};
  const int code = rep.hits.empty() ? 0 : 1;
  std::vector<std::string> text{"mode: " + rep.mode,
                                "sets_checked: " + std::to_string(rep.sets_checked),
                                "instances_checked: " + std::to_string(rep.instances_checked),
                                "hits: " + std::to_string(rep.hits.size())};
  for (std::size_t i = 0; i < rep.hits.size() && i < kMaxEmittedViolations; ++i) {
    const auto& h = rep.hits[i];
    text.push_back("hit set={" + join(h.set, ',') + "} alpha=" + std::to_string(h.alpha) +
                   " beta=" + std::to_string(h.beta) + " observed=" + std::to_string(h.observed) +
                   " bound=" + std::to_string(h.bound) +
                   (h.matches_known_family ? " (known family)" : ""));
  }
  std::string csv = "set,alpha,beta,observed,bound,matches_known_family\n";
  for (std::size_t i = 0; i < rep.hits.size() && i < kMaxEmittedViolations; ++i) {
    const auto& h = rep.hits[i];
    csv += join(h.set, ';') + "," + std::to_string(h.alpha) + "," + std::to_string(h.beta) + "," +
           std::to_string(h.observed) + "," + std::to_string(h.bound) + "," +
           (h.matches_known_family ? "yes" : "no") + "\n";
  }
  return emit(ctx, "conjecture", params, results, violations, code, text, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations on restricted subset sums over prime fields"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();

  Ctx ctx;
  auto* json_flag = app.add_flag("--json", ctx.as_json, "emit a JSON report");
  app.add_flag("--csv", ctx.as_csv, "emit CSV")->excludes(json_flag);
  app.add_flag("--timing", ctx.timing, "include elapsed time in the report");
  app.add_option("--workers", ctx.workers, "parallel worker cap")->check(CLI::Range(1u, 256u));

  SetCmd sum_cmd;
  auto* sum = app.add_subcommand("sumset", "pairwise sums of two sets");
  sum->add_option("--p", sum_cmd.p, "field prime")->required();
  sum->add_option("--a", sum_cmd.a_lit, "first set literal")->required();
  sum->add_option("--b", sum_cmd.b_lit, "second set literal")->required();
  sum->add_flag("--restricted", sum_cmd.restricted, "exclude equal summands");

  SetCmd hfold_cmd;
  auto* hf = app.add_subcommand("hfold", "sums of h pairwise distinct elements");
  hf->add_option("--p", hfold_cmd.p, "field prime")->required();
  hf->add_option("--set", hfold_cmd.set_lit, "set literal")->required();
  hf->add_option("--h", hfold_cmd.h, "number of terms")->required();

  SetCmd sigma_cmd;
  auto* sg = app.add_subcommand("sigma", "bounded subset sums");
  sg->add_option("--p", sigma_cmd.p, "field prime")->required();
  sg->add_option("--set", sigma_cmd.set_lit, "set literal")->required();
  sg->add_option("--alpha", sigma_cmd.alpha, "minimum number of terms");
  sg->add_option("--beta", sigma_cmd.beta, "minimum number of omitted terms");

  CoeffCmd coeff_cmd;
  auto* cf = app.add_subcommand("coeff", "certificate coefficient of a reference model");
  cf->add_option("kind", coeff_cmd.kind, "cd, dsh or main")->required()->check(CLI::IsMember({"cd", "dsh", "main"}));
  cf->add_option("--p", coeff_cmd.p, "field prime")->required();
  cf->add_option("--n", coeff_cmd.n, "size of the first set (cd)");
  cf->add_option("--m", coeff_cmd.m, "size of the second set (cd)");
  cf->add_option("--d", coeff_cmd.d, "set size (dsh, main)");
  cf->add_option("--h", coeff_cmd.h, "number of terms (dsh)");
  cf->add_option("--alpha", coeff_cmd.alpha, "minimum number of terms (main)");
  cf->add_option("--method", coeff_cmd.method, "sum, point, closed, expand or all")
      ->check(CLI::IsMember({"sum", "point", "closed", "expand", "all"}));

  VerifyCmd verify_cmd;
  auto* vf = app.add_subcommand("verify", "check a bound over many instances");
  vf->add_option("kind", verify_cmd.kind, "cd, dsh or main")->required()->check(CLI::IsMember({"cd", "dsh", "main"}));
  vf->add_option("--p", verify_cmd.p, "field prime")->required();
  vf->add_flag("--exhaustive", verify_cmd.exhaustive, "enumerate every instance");
  vf->add_option("--samples", verify_cmd.samples, "number of random instances");
  vf->add_option("--seed", verify_cmd.seed, "sampling seed");
  vf->add_option("--limit", verify_cmd.limit, "instance cap for exhaustive runs");

  AuditCmd audit_cmd;
  auto* au = app.add_subcommand("audit", "contradiction audit with a deliberately short cover");
  au->add_option("--p", audit_cmd.p, "field prime")->required();
  au->add_option("--a", audit_cmd.a_lit, "first set literal (pairwise sums)");
  au->add_option("--b", audit_cmd.b_lit, "second set literal (pairwise sums)");
  au->add_option("--set", audit_cmd.set_lit, "set literal");
  au->add_option("--h", audit_cmd.h, "number of terms");
  au->add_option("--alpha", audit_cmd.alpha, "minimum number of terms");

  ConjCmd conj_cmd;
  auto* cj = app.add_subcommand("conjecture", "two-sided bound exploration");
  cj->add_option("action", conj_cmd.action, "pairs, family or search")->required()->check(CLI::IsMember({"pairs", "family", "search"}));
  cj->add_option("--p", conj_cmd.p, "field prime");
  cj->add_option("--limit", conj_cmd.limit, "prime bound (pairs) or instance cap (search)");
  cj->add_option("--k", conj_cmd.k, "family size");
  cj->add_option("--alpha", conj_cmd.alpha, "minimum number of terms");
  cj->add_option("--beta", conj_cmd.beta, "minimum number of omitted terms");
  cj->add_flag("--exhaustive", conj_cmd.exhaustive, "enumerate every asymmetric set");
  cj->add_option("--samples", conj_cmd.samples, "number of random sets");
  cj->add_option("--seed", conj_cmd.seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ctx.grid_limit = env_grid_limit();
    ctx.start = std::chrono::steady_clock::now();
    int code = 3;
    if (sum->parsed()) code = run_sumset(ctx, sum_cmd);
    else if (hf->parsed()) code = run_hfold(ctx, hfold_cmd);
    else if (sg->parsed()) code = run_sigma(ctx, sigma_cmd);
    else if (cf->parsed()) code = run_coeff(ctx, coeff_cmd);
    else if (vf->parsed()) code = run_verify(ctx, verify_cmd);
    else if (au->parsed()) code = run_audit(ctx, audit_cmd);
    else if (cj->parsed()) code = run_conjecture(ctx, conj_cmd);
    return code;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
