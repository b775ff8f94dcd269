// Acceptance harness: one criterion per line, [PASS]/[FAIL] verdicts, exit
// code equal to the number of failed criteria.  Budgets are pinned here so a
// regression in either correctness or speed flips the verdict.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cnslab/closedforms.hpp"
#include "cnslab/coeffengine.hpp"
#include "cnslab/conjlab.hpp"
#include "cnslab/constructions.hpp"
#include "cnslab/rng.hpp"
#include "cnslab/subsums.hpp"
#include "cnslab/theoremlab.hpp"
#include "oracles.hpp"

namespace {

using json = nlohmann::json;
using namespace cnslab;
using u64 = std::uint64_t;

constexpr unsigned kWorkers = 4;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CNSLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {};
  CliResult r;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

FpSet random_set(SplitMix64& g, Prime p, u64 min_size, u64 max_size) {
  const u64 size = min_size + g.below(max_size - min_size + 1);
  FpSet s(p);
  u64 added = 0;
  while (added < size) {
    const u64 x = g.below(p.value());
    if (!s.contains(x)) {
      s.insert(x);
      ++added;
    }
  }
  return s;
}

// ---- C1: every instance at small primes satisfies the three bounds ----
bool c1_exhaustive_verification(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  u64 instances = 0;
  u64 violations = 0;
  u64 bad_runs = 0;
  for (u64 pv : {3u, 5u, 7u, 11u, 13u}) {
    for (const char* kind : {"cd", "dsh", "main"}) {
      const auto r = run_cli(std::string("verify ") + kind + " --p " + std::to_string(pv) +
                             " --exhaustive --json --workers " + std::to_string(kWorkers));
      if (r.code != 0) {
        ++bad_runs;
        continue;
      }
      const json doc = json::parse(r.out, nullptr, false);
      if (doc.is_discarded()) {
        ++bad_runs;
        continue;
      }
      instances += doc["results"]["instances_checked"].get<u64>();
      violations += doc["results"]["violation_count"].get<u64>();
    }
  }
  const double el = seconds_since(t0);
  std::ostringstream os;
  os << instances << " instances, " << violations << " violations, " << bad_runs
     << " failed runs, " << el << "s (budget 60s)";
  detail = os.str();
  return violations == 0 && bad_runs == 0 && el < 60.0;
}

// ---- C2: initial intervals meet each bound with equality at p = 1009 ----
bool c2_interval_sharpness(std::string& detail) {
  Prime p(1009);
  u64 checked = 0;
  u64 wrong = 0;
  for (u64 n = 1; n <= 20; ++n) {
    const FpSet a = FpSet::interval(p, 1, static_cast<std::int64_t>(n));
    for (u64 m = 1; m <= 20; ++m) {
      const FpSet b = FpSet::interval(p, 1, static_cast<std::int64_t>(m));
      ++checked;
      if (sumset(a, b).cardinality() != n + m - 1) ++wrong;
    }
  }
  for (u64 d = 1; d <= 20; ++d) {
    const FpSet a = FpSet::interval(p, 1, static_cast<std::int64_t>(d));
    for (u64 h = 0; h <= d; ++h) {
      ++checked;
      if (hfold(a, h).cardinality() != h * (d - h) + 1) ++wrong;
    }
    for (u64 alpha = 0; alpha <= d; ++alpha) {
      ++checked;
      const u64 expect = d * (d + 1) / 2 - alpha * (alpha + 1) / 2 + 1;
      if (sigma_upper(a, alpha).cardinality() != expect) ++wrong;
    }
  }
  std::ostringstream os;
  os << checked << " equalities, " << wrong << " off";
  detail = os.str();
  return wrong == 0;
}

// ---- C3: all coefficient methods agree and the census finds one point ----
bool c3_certificate_sweep(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  u64 audited = 0;
  u64 bad = 0;
  auto check = [&](TheoremKind kind, u64 a, u64 b, u64 pv) {
    const auto rep = construction_audit(kind, static_cast<std::uint32_t>(a),
                                        static_cast<std::uint32_t>(b), Prime(pv), {}, kDefaultGridLimit,
                                        kWorkers);
    ++audited;
    bool ok = rep.full_sum && rep.single_point && rep.closed_form;
    ok = ok && *rep.full_sum != 0 && rep.full_sum == rep.single_point && rep.full_sum == rep.closed_form;
    if (rep.expansion) {
      ok = ok && rep.expansion == rep.full_sum;
    } else {
      ok = ok && !rep.warnings.empty();  // skipped expansions must say why
    }
    ok = ok && rep.agreement && rep.nonzero_point_count == 1;
    if (!ok) ++bad;
  };
  for (u64 pv : {5u, 7u, 11u, 31u}) {
    for (u64 n = 1; n <= 6 && n <= pv; ++n) {
      for (u64 m = 1; m <= 6 && m <= pv; ++m) check(TheoremKind::CD, n, m, pv);
    }
  }
  for (u64 d = 1; d <= 6; ++d) {
    for (u64 h = 1; h <= d; ++h) {
      if (dsh_delta(d, h, Prime(11)) < h) check(TheoremKind::DSH, d, h, 11);
    }
  }
  check(TheoremKind::DSH, 7, 3, 11);  // wrapped case: delta = 2
  for (u64 d = 1; d <= 5; ++d) {
    for (u64 alpha = 0; alpha <= d; ++alpha) {
      if (main_delta(d, alpha, Prime(11)) <= alpha) check(TheoremKind::MAIN, d, alpha, 11);
    }
  }
  const double el = seconds_since(t0);
  std::ostringstream os;
  os << audited << " audits, " << bad << " inconsistent, " << el << "s (budget 300s)";
  detail = os.str();
  return bad == 0 && el < 300.0;
}

// ---- C4: hand-checked reference coefficients ----
bool c4_reference_coefficients(std::string& detail) {
  u64 bad = 0;
  auto expect_int = [&](const ClosedFormResult& r, std::int64_t want, u64 residue) {
    if (r.exact.to_int64() != want || !r.residue || *r.residue != residue) ++bad;
  };
  expect_int(cd_closed(2, 2, 0, Prime(7)), 2, 2);
  expect_int(dsh_closed(3, 2, 0, Prime(11)), 1, 1);
  for (u64 d = 1; d <= 8; ++d) expect_int(dsh_closed(d, 1, 0, Prime(31)), 1, 1);
  expect_int(main_closed(2, 1, 0, Prime(7)), 2, 2);
  detail = bad ? std::to_string(bad) + " constants off" : "11 constants exact";
  return bad == 0;
}

// ---- C5: the exceptional family and both search landscapes ----
bool c5_two_sided_bound(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> problems;

  const std::vector<std::pair<u64, u64>> want_pairs = {
      {5, 11},  {6, 17},  {9, 41},  {14, 101}, {17, 149}, {18, 167},
      {21, 227}, {26, 347}, {29, 431}, {30, 461}, {33, 557}, {41, 857}};
  {
    const auto r = run_cli("conjecture pairs --limit 1000 --json");
    json want = json::array();
    for (const auto& [k, pv] : want_pairs) want.push_back(json::array({k, pv}));
    const json doc = json::parse(r.out, nullptr, false);
    if (r.code != 0 || doc.is_discarded() || doc["results"]["pairs"] != want) {
      problems.push_back("pair listing deviates from the recorded 12 pairs");
    }
  }

  for (const auto& [k, pv] : want_pairs) {
    Prime p(pv);
    const FpSet fam = family_set(k, p);
    const auto one_one = check_double(fam, 1, 1);
    const auto two_one = check_double(fam, 2, 1);
    if (one_one.observed != pv - 1 || one_one.bound != pv || one_one.holds ||
        two_one.observed != pv - 1 || two_one.bound != pv || two_one.holds) {
      problems.push_back("family misses the expected deficit at p=" + std::to_string(pv));
    }
  }

  {
    const auto r = run_cli("conjecture search --p 11 --exhaustive --json");
    const json doc = json::parse(r.out, nullptr, false);
    bool ok11 = r.code == 1 && !doc.is_discarded() && doc["results"]["hit_count"] == 6;
    if (ok11) {
      for (const auto& h : doc["violations"]) {
        ok11 = ok11 && h["matches_known_family"] == true && h["observed"] == 10 && h["bound"] == 11;
      }
    }
    if (!ok11) problems.push_back("p=11 landscape is not exactly the family dilations");
  }

  // p=13 admits no family dilation (13 is not a special prime), and the
  // exhaustive search must reproduce the documented off-catalog orbit: the
  // twelve dilations of {2, 3, 4, 5, 12}, each short by one at alpha=beta=1.
  {
    const auto r = run_cli("conjecture search --p 13 --exhaustive --json");
    const json doc = json::parse(r.out, nullptr, false);
    std::set<std::vector<u64>> expected_orbit;
    {
      Prime p13(13);
      FpSet base(p13);
      for (u64 x : {2u, 3u, 4u, 5u, 12u}) base.insert(x);
      for (u64 lam = 1; lam <= 12; ++lam) expected_orbit.insert(base.dilated(lam).members());
    }
    std::set<std::vector<u64>> found_orbit;
    bool ok13 = r.code == 1 && !doc.is_discarded() && doc["results"]["hit_count"] == 12;
    if (ok13) {
      for (const auto& h : doc["violations"]) {
        ok13 = ok13 && h["matches_known_family"] == false && h["alpha"] == 1 && h["beta"] == 1 &&
               h["observed"] == 12 && h["bound"] == 13;
        found_orbit.insert(h["set"].get<std::vector<u64>>());
      }
    }
    ok13 = ok13 && found_orbit == expected_orbit;
    if (!ok13) problems.push_back("p=13 landscape deviates from the recorded orbit");
  }

  const double el = seconds_since(t0);
  std::ostringstream os;
  if (problems.empty()) {
    os << "12 pairs reproduced; p=11 family-only; p=13 has 0 family hits and the known "
       << "12-instance off-catalog orbit; " << el << "s (budget 120s)";
  } else {
    for (const auto& pr : problems) os << pr << "; ";
  }
  detail = os.str();
  return problems.empty() && el < 120.0;
}

// ---- C6: randomized structural properties ----
bool c6_property_suites(std::string& detail) {
  Prime p(10007);
  u64 bad = 0;

  for (u64 i = 0; i < 1000; ++i) {  // symmetry: Sigma_alpha = total - Sigma^alpha
    auto g = SplitMix64::stream(601, i);
    const FpSet a = random_set(g, p, 1, 30);
    const u64 alpha = g.below(a.cardinality() + 1);
    const FpSet lhs = sigma_lower(a, alpha);
    const FpSet rhs = sigma_upper(a, alpha).negated().shifted(a.element_sum());
    if (!(lhs == rhs)) ++bad;
  }

  for (u64 i = 0; i < 1000; ++i) {  // nesting: tighter windows give subsets
    auto g = SplitMix64::stream(602, i);
    const FpSet a = random_set(g, p, 1, 30);
    const u64 d = a.cardinality();
    const u64 alpha = g.below(d + 1);
    const u64 beta = g.below(d - alpha + 1);
    const u64 alpha2 = g.below(alpha + 1);
    const u64 beta2 = g.below(beta + 1);
    if (!sigma_double(a, alpha, beta).is_subset_of(sigma_double(a, alpha2, beta2))) ++bad;
  }

  for (u64 i = 0; i < 1000; ++i) {  // recurrence table vs full 2^n enumeration
    auto g = SplitMix64::stream(603, i);
    const FpSet a = random_set(g, p, 1, 12);
    const auto table = SubsumTable::build(a);
    const auto rows = oracle::subset_sums(a.members(), p.value());
    for (std::size_t k = 0; k <= table.max_terms(); ++k) {
      const auto got = table.row(k).members();
      if (std::set<u64>(got.begin(), got.end()) != rows[k]) ++bad;
    }
  }

  for (u64 i = 0; i < 1000; ++i) {  // dilation equivariance of the windows
    auto g = SplitMix64::stream(604, i);
    const FpSet a = random_set(g, p, 1, 25);
    const u64 d = a.cardinality();
    const u64 alpha = g.below(d + 1);
    const u64 beta = g.below(d - alpha + 1);
    const u64 lam = 1 + g.below(p.value() - 1);
    const FpSet left = sigma_double(a.dilated(lam), alpha, beta);
    const FpSet right = sigma_double(a, alpha, beta).dilated(lam);
    if (!(left == right)) ++bad;
  }

  detail = bad ? std::to_string(bad) + " property failures" : "4000 cases clean";
  return bad == 0;
}

// ---- C7: speed floors on the two hot paths ----
bool c7_performance(std::string& detail) {
  Prime big(999983);
  auto g = SplitMix64::stream(7, 0);
  const FpSet a = random_set(g, big, 100, 100);
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = SubsumTable::build(a);
  const double table_s = seconds_since(t0);
  const bool table_ok = table.max_terms() == 100 && table_s < 5.0;

  const auto rep = exhaustive_verify(Prime(13), TheoremKind::MAIN, kDefaultEnumLimit, kWorkers);
  const double main_s = rep.elapsed_ms / 1000.0;
  const bool main_ok = rep.violations.empty() && main_s < 1.0;

  std::ostringstream os;
  os << "table |A|=100 in " << table_s << "s (budget 5s); exhaustive search at p=13 in " << main_s
     << "s (budget 1s)";
  detail = os.str();
  return table_ok && main_ok;
}

// ---- C8: identical JSON bytes for any worker count, and across reruns ----
bool c8_cli_determinism(std::string& detail) {
  const std::vector<std::string> probes = {
      "verify cd --p 7 --exhaustive --json",
      "conjecture search --p 11 --exhaustive --json",
      "verify main --p 997 --samples 60 --seed 5 --json",
      "coeff main --p 11 --d 5 --alpha 2 --method all --json",
  };
  u64 bad = 0;
  for (const auto& probe : probes) {
    const std::string one = run_cli(probe + " --workers 1").out;
    const std::string rerun = run_cli(probe + " --workers 1").out;
    const std::string four = run_cli(probe + " --workers 4").out;
    const std::string sixteen = run_cli(probe + " --workers 16").out;
    if (one.empty() || one != rerun || one != four || one != sixteen) ++bad;
  }
  detail = bad ? std::to_string(bad) + " probes diverged"
               : "4 probes, reruns and worker counts 1/4/16 byte-identical";
  return bad == 0;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Entry entries[] = {
      {"exhaustive-verification-small-primes", c1_exhaustive_verification},
      {"interval-sharpness-p1009", c2_interval_sharpness},
      {"certificate-method-sweep", c3_certificate_sweep},
      {"reference-coefficients", c4_reference_coefficients},
      {"two-sided-bound-reproduction", c5_two_sided_bound},
      {"property-suites", c6_property_suites},
      {"performance-budgets", c7_performance},
      {"cli-byte-determinism", c8_cli_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const auto& e : entries) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = e.fn(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const double el = seconds_since(t0);
    std::printf("[%s] C%d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", index, e.name, el,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures;
}
