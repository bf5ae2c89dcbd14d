#include "doctest.h"
#include "test_support.hpp"

#include "sll/eep.hpp"
#include "sll/kron.hpp"
#include "sll/pinv_closure.hpp"
#include "sll/spectral.hpp"

#include <optional>

using namespace sll;
using namespace sll::testing;

TEST_CASE("reducing a path onto its endpoints") {
  const Matrix l = laplacian(parse_graph("0 1 1\n1 0 1\n1 2 1\n2 1 1\n"));
  const KronResult r = kron_reduce(l, NodePartition(3, {0, 2}));
  CHECK(r.l_reduced(0, 0) == doctest::Approx(0.5));
  CHECK(r.l_reduced(0, 1) == doctest::Approx(-0.5));
  CHECK(r.interior_pd);
  CHECK(r.row_sum_residual <= 1e-15);
  CHECK(r.preserved_eep == std::pair{true, true});
  const SignedDigraph g = reduced_graph(r, 1e-12);
  CHECK(g.size() == 2);
  REQUIRE(g.edges().size() == 2);
  CHECK(g.sorted_edges()[0].weight == doctest::Approx(0.5));
}

TEST_CASE("Kron reduction matches sequential elimination on signed graphs") {
  Rng rng(kSeed);
  int tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 3, 12);
    const Matrix l = random_symmetric_laplacian(n, rng, 0.3);
    NodePartition p = [&] {
      try {
        return negative_incident_boundary(l);
      } catch (const Error&) {
        std::vector<int> nodes(n);
        std::iota(nodes.begin(), nodes.end(), 0);
        std::shuffle(nodes.begin(), nodes.end(), rng);
        return NodePartition(n, std::vector<int>(nodes.begin(), nodes.begin() + uniform_int(rng, 2, n - 1)));
      }
    }();
    if (interior_condition(l, p) > 1e8) continue;
    const Matrix want = sequential_elimination(l, p.alpha(), p.beta());
    ++tested;
    const KronResult r = kron_reduce(l, p);
    CHECK((r.l_reduced - want).norm() <= 1e-9 * std::max(1.0, l.norm()));
    CHECK(r.row_sum_residual <= 1e-9 * std::max(1.0, l.norm()));
    CHECK(is_symmetric(r.l_reduced, 0.0));
  }
  CHECK(tested >= 80);
}

TEST_CASE("nonnegative graphs stay eventually exponentially positive under reduction") {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 3, 12);
    const Matrix l = random_symmetric_laplacian(n, rng, 0.0);
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const NodePartition p(n, std::vector<int>(nodes.begin(), nodes.begin() + uniform_int(rng, 2, n - 1)));
    const KronResult r = kron_reduce(l, p);
    CHECK(r.interior_pd);
    CHECK(r.preserved_eep == std::pair{true, true});
    CHECK(is_nonnegative_graph(r.l_reduced));
    const KronTheoremReport t = verify_kron_theorem(l, p);
    CHECK(t.implication_holds);
    CHECK(t.reduced_psd_corank1);
  }
}

TEST_CASE("negative-incident boundary: the three conditions coincide") {
  Rng rng(kSeed + 2);
  int tested = 0, eep = 0, not_eep = 0;
  for (int trial = 0; trial < 200 && tested < 100; ++trial) {
    const int n = uniform_int(rng, 3, 12);
    const Matrix l = random_symmetric_laplacian(n, rng, 0.35);
    std::optional<NodePartition> p;
    try {
      p = negative_incident_boundary(l);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegeneratePartition);
      continue;
    }
    ++tested;
    const KronTheoremReport t = verify_kron_theorem(l, *p);
    CHECK(t.negative_incident);
    REQUIRE(t.equivalence_holds.has_value());
    CHECK(*t.equivalence_holds);
    CHECK(t.implication_holds);
    CHECK_FALSE(t.equivalence_source.empty());
    if (t.l_eep) {
      REQUIRE(t.interior_pd_when_eep.has_value());
      CHECK(*t.interior_pd_when_eep);
    }
    (t.l_eep ? eep : not_eep) += 1;
  }
  CHECK(tested >= 50);
  CHECK(eep > 0);
  CHECK(not_eep > 0);
}

TEST_CASE("boundary selection and errors") {
  // 0-1 negative, 1-2 and 2-3 positive
  const SignedDigraph g = parse_graph("0 1 -0.2\n1 0 -0.2\n1 2 1\n2 1 1\n2 3 1\n3 2 1\n");
  const NodePartition p = negative_incident_boundary(g);
  CHECK(p.alpha() == std::vector<int>{0, 1});
  CHECK(p.beta() == std::vector<int>{2, 3});
  CHECK(negative_incident_boundary(Matrix(laplacian(g))) == p);

  const SignedDigraph positive = parse_graph("0 1 1\n1 0 1\n1 2 1\n2 1 1\n");
  CHECK_THROWS_AS(negative_incident_boundary(positive), Error);

  const Matrix directed = laplacian(parse_graph("0 1 1\n1 2 1\n2 0 1\n"));
  try {
    kron_reduce(directed, NodePartition(3, {0, 1}));
    FAIL("expected NotUndirected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUndirected);
  }
  CHECK_THROWS_AS(negative_incident_boundary(directed), Error);
}
