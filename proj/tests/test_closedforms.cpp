#include "doctest.h"

#include "cnslab/closedforms.hpp"

#include "cnslab/coeffengine.hpp"
#include "cnslab/constructions.hpp"

using namespace cnslab;
using u64 = std::uint64_t;

TEST_SUITE("closedforms") {

TEST_CASE("two-set coefficients are binomials") {
  const auto r = cd_closed(2, 2, 0, Prime(7));
  CHECK(r.exact.to_int64() == 2);
  CHECK(r.residue == 2);
  CHECK(r.p_integral());

  // literal evaluation with a wrap correction
  CHECK(cd_closed(3, 3, 1, Prime(5)).exact.to_int64() == 3);
  CHECK(cd_closed(5, 5, 2, Prime(7)).exact.to_int64() == 15);  // C(6,4)
  CHECK(cd_closed(5, 5, 2, Prime(7)).residue == 1);
  CHECK(cd_closed(1, 1, 0, Prime(5)).exact.to_int64() == 1);

  CHECK_THROWS_AS(cd_closed(0, 1, 0, Prime(5)), bad_bounds);
  CHECK_THROWS_AS(cd_closed(3, 3, 3, Prime(5)), delta_too_large);
}

TEST_CASE("distinct-terms coefficients") {
  CHECK(dsh_closed(3, 2, 0, Prime(11)).exact.to_int64() == 1);
  CHECK(dsh_closed(5, 2, 0, Prime(11)).exact.to_int64() == 5);
  CHECK(dsh_closed(5, 2, 0, Prime(11)).residue == 5);

  const auto wrapped = dsh_closed(7, 3, 2, Prime(11));
  CHECK(wrapped.exact.to_int64() == 210);
  CHECK(wrapped.exact.to_string() == "2*3*5*7");
  CHECK(wrapped.residue == 1);

  // a single term always has coefficient 1
  for (u64 d = 1; d <= 8; ++d) {
    CHECK(dsh_closed(d, 1, 0, Prime(101)).exact.to_int64() == 1);
  }
  // taking all terms likewise
  for (u64 d = 1; d <= 8; ++d) {
    CHECK(dsh_closed(d, d, 0, Prime(101)).exact.to_int64() == 1);
  }

  CHECK_THROWS_AS(dsh_closed(3, 0, 0, Prime(5)), bad_bounds);
  CHECK_THROWS_AS(dsh_closed(3, 4, 0, Prime(5)), bad_bounds);
  CHECK_THROWS_AS(dsh_closed(3, 2, 2, Prime(5)), delta_too_large);
  CHECK_THROWS_AS(dsh_closed(3, 3, 1, Prime(5)), delta_too_large);
}

TEST_CASE("asymmetric coefficients") {
  CHECK(main_closed(2, 1, 0, Prime(7)).exact.to_int64() == 2);
  CHECK(main_closed(2, 1, 0, Prime(7)).residue == 2);

  const auto r = main_closed(3, 1, 0, Prime(13));
  CHECK(r.exact.to_int64() == 16);
  CHECK(r.residue == 3);

  // alpha = d leaves only the designated point; coefficient 1
  for (u64 d = 1; d <= 6; ++d) {
    CHECK(main_closed(d, d, 0, Prime(101)).exact.to_int64() == 1);
  }

  CHECK_THROWS_AS(main_closed(2, 1, 0, Prime(2)), bad_field);
  CHECK_THROWS_AS(main_closed(0, 0, 0, Prime(7)), bad_bounds);
  CHECK_THROWS_AS(main_closed(2, 3, 0, Prime(7)), bad_bounds);
  CHECK_THROWS_AS(main_closed(2, 2, 1, Prime(7)), delta_too_large);  // delta exceeds the sum count 0
}

TEST_CASE("closed forms are integers on valid parameters") {
  for (u64 pv : {5ull, 7ull, 11ull, 13ull, 31ull, 101ull}) {
    Prime p(pv);
    for (u64 n = 1; n <= 6; ++n) {
      for (u64 m = 1; m <= 6; ++m) {
        const u64 delta = cd_delta(n, m, p);
        if (delta >= std::min(n, m)) continue;
        CHECK(cd_closed(n, m, delta, p).exact.is_integer());
      }
    }
    for (u64 d = 1; d <= 8 && d < pv; ++d) {
      for (u64 h = 1; h <= d; ++h) {
        const u64 delta = dsh_delta(d, h, p);
        if (delta >= h) continue;
        CHECK(dsh_closed(d, h, delta, p).exact.is_integer());
      }
      if (pv > 2 && d <= (pv - 1) / 2) {
        for (u64 alpha = 0; alpha <= d; ++alpha) {
          const u64 delta = main_delta(d, alpha, p);
          if (delta > alpha) continue;
          CHECK(main_closed(d, alpha, delta, p).exact.is_integer());
        }
      }
    }
  }
}

TEST_CASE("closed forms match the grid computations") {
  struct Probe {
    ProofModel model;
    ClosedFormResult closed;
  };
  const std::vector<Probe> probes = [] {
    std::vector<Probe> out;
    auto add_cd = [&](std::uint32_t n, std::uint32_t m, u64 pv) {
      Prime p(pv);
      out.push_back({cd_model(n, m, p), cd_closed(n, m, cd_delta(n, m, p), p)});
    };
    auto add_dsh = [&](std::uint32_t d, std::uint32_t h, u64 pv) {
      Prime p(pv);
      out.push_back({dsh_model(d, h, p), dsh_closed(d, h, dsh_delta(d, h, p), p)});
    };
    auto add_main = [&](std::uint32_t d, std::uint32_t alpha, u64 pv) {
      Prime p(pv);
      out.push_back({main_model(d, alpha, p), main_closed(d, alpha, main_delta(d, alpha, p), p)});
    };
    add_cd(2, 2, 7);
    add_cd(5, 5, 7);
    add_cd(4, 6, 11);
    add_cd(6, 6, 31);
    add_dsh(3, 2, 11);
    add_dsh(5, 2, 11);
    add_dsh(7, 3, 11);
    add_dsh(6, 4, 31);
    add_main(2, 1, 7);
    add_main(3, 1, 13);
    add_main(5, 2, 11);
    add_main(4, 2, 13);
    add_main(3, 3, 11);
    return out;
  }();
  for (const auto& probe : probes) {
    REQUIRE(probe.closed.p_integral());
    CHECK(*probe.closed.residue == coeff_full_sum(probe.model));
  }
}

TEST_CASE("coefficients are nonzero exactly when the bound bites") {
  // Whenever the model construction succeeds (delta within range) the closed
  // form reduces to a nonzero residue: these are certificates, after all.
  for (u64 pv : {5ull, 7ull, 11ull, 13ull}) {
    Prime p(pv);
    for (u64 d = 1; d < pv && d <= 6; ++d) {
      for (u64 h = 1; h <= d; ++h) {
        const u64 delta = dsh_delta(d, h, p);
        if (delta >= h) continue;
        CHECK(dsh_closed(d, h, delta, p).residue != 0);
      }
    }
    for (u64 d = 1; d <= (pv - 1) / 2; ++d) {
      for (u64 alpha = 0; alpha <= d; ++alpha) {
        const u64 delta = main_delta(d, alpha, p);
        if (delta > alpha) continue;
        CHECK(main_closed(d, alpha, delta, p).residue != 0);
      }
    }
  }
}

}  // TEST_SUITE
