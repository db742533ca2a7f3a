#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include <Eigen/Dense>

#include "fpl2/loop_oracle.hpp"
#include "fpl2/transfer.hpp"

using namespace fpl2;

namespace {
cd trace_power(const TransferOperator& T, int M) {
  Eigen::MatrixXcd p = T.matrix.dense();
  Eigen::MatrixXcd acc = p;
  for (int i = 1; i < M; ++i) acc = acc * p;
  return acc.trace();
}
}  // namespace

TEST_CASE("arrow enumeration equals the transfer-matrix trace") {
  for (double n : {1.0, 2.0}) {
    const auto cpl = couplings_from_n(n);
    for (auto [L, M] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}}) {
      const cd za = arrow_partition_function(L, M, cpl);
      const auto T = build_transfer(L, TransferVariant::TwoRowLoop, cpl);
      const cd tr = trace_power(T, M);
      CHECK(std::abs(za - tr) / std::abs(tr) < 1e-10);
    }
  }
}

TEST_CASE("loop-weight resummation equals the arrow sum") {
  for (double n : {1.0, 2.0}) {
    const auto cpl = couplings_from_n(n);
    for (auto [L, M] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
      const cd za = arrow_partition_function(L, M, cpl);
      const cd zl = loop_partition_function(L, M, cpl);
      CHECK(std::abs(zl - za) / std::abs(za) < 1e-10);
    }
  }
}

TEST_CASE("at n=2 every loop weighs 2 and the sum is an integer") {
  const auto cpl = couplings_from_n(2.0);
  const auto configs = enumerate_bicolorings(2, 1);
  double total = 0;
  for (const auto& loops : configs) total += std::pow(2.0, loops.size());
  const cd zl = loop_partition_function(2, 1, cpl);
  CHECK(std::abs(zl - cd(total, 0)) < 1e-9);
  CHECK(std::abs(total - std::round(total)) == 0.0);
}

TEST_CASE("loop decomposition invariants") {
  const auto configs = enumerate_bicolorings(2, 1);
  CHECK(!configs.empty());
  for (const auto& loops : configs) {
    int edge_total = 0;
    for (const auto& lp : loops) {
      edge_total += lp.length;
      const bool contractible = lp.turning != 0;
      if (contractible) {
        CHECK(std::abs(lp.turning) == 4);
        CHECK(lp.h_winding == 0);
        CHECK(lp.v_winding == 0);
      }
    }
    CHECK(edge_total == 2 * (2 * 2) * (2 * 1));  // every edge lies on exactly one loop
  }
}

TEST_CASE("winding loops get the seam weight, vertical ones weigh 2") {
  // at a generic coupling, recompute the partition sum with the loop rules
  // and cross-check the weight classes appear as expected
  const auto cpl = couplings_from_n(1.0);
  const auto configs = enumerate_bicolorings(1, 1);
  bool saw_vertical = false, saw_horizontal = false;
  for (const auto& loops : configs)
    for (const auto& lp : loops) {
      if (lp.turning == 0 && lp.h_winding == 0) saw_vertical = true;
      if (lp.turning == 0 && std::abs(lp.h_winding) == 1) saw_horizontal = true;
    }
  CHECK(saw_vertical);
  CHECK(saw_horizontal);
}

TEST_CASE("reference slab weight matches the diagonal transfer entry") {
  for (double n : {1.0, 2.0, 0.6}) {
    const auto cpl = couplings_from_n(n);
    for (int L : {1, 2}) {
      const auto T = build_transfer(L, TransferVariant::TwoRowLoop, cpl);
      const cd diag = T.matrix.entry(reference_state_index(L), reference_state_index(L));
      const cd enumd = reference_slab_weight(L, cpl);
      CHECK(std::abs(diag - enumd) < 1e-10);
    }
  }
}

TEST_CASE("partition sums are omega-branch invariant") {
  const cd z0 = arrow_partition_function(2, 1, couplings_from_n(1.0, 0));
  for (int b : {1, 2, 5, 7}) {
    const cd zb = arrow_partition_function(2, 1, couplings_from_n(1.0, b));
    CHECK(std::abs(zb - z0) < 1e-10 * std::abs(z0));
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(arrow_partition_function(3, 3, couplings_from_n(1.0)), std::length_error);
}
