#include "doctest.h"
#include "test_support.hpp"

#include "sll/fixtures.hpp"

#include <set>

using namespace sll;
using namespace sll::testing;

namespace {

double brute_force_distance(std::vector<Complex> a, const std::vector<Complex>& b) {
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("fixtures are exact Laplacians") {
  const FixtureSet f = reference_fixtures();
  for (const Matrix* m : {&f.undirected3, &f.complete_signed4, &f.balanced_indefinite_a,
                          &f.balanced_indefinite_b, &f.normal4, &f.nonnormal_psd4}) {
    CHECK(m->rowwise().sum().cwiseAbs().maxCoeff() <= 1e-15);
  }
  CHECK(graph_of(f.balanced_indefinite_a).edges().size() == 10);
  CHECK(graph_of(f.complete_signed4).edges().size() == 12);
}

TEST_CASE("check list covers every fixture with unique names") {
  const auto checks = reference_checks();
  CHECK(checks.size() >= 20);
  std::set<std::string> names;
  for (const auto& c : checks) names.insert(c.name);
  CHECK(names.size() == checks.size());
  for (const char* prefix : {"undirected3.", "balanced_indefinite_a.", "balanced_indefinite_b.", "normal4.",
                             "complete_signed4.", "nonnormal_psd4.", "directed_cycles."}) {
    CHECK(std::any_of(names.begin(), names.end(), [&](const std::string& n) { return n.rfind(prefix, 0) == 0; }));
  }
  const auto results = run_reference_checks(reference_fixtures());
  REQUIRE(results.size() == checks.size());
  for (std::size_t i = 0; i < checks.size(); ++i) CHECK(results[i].name == checks[i].name);
}

TEST_CASE("a perturbed entry breaks the weight-balance check") {
  FixtureSet f = reference_fixtures();
  auto find = [](const std::vector<CheckResult>& rs, const std::string& name) {
    return std::find_if(rs.begin(), rs.end(), [&](const CheckResult& r) { return r.name == name; })->passed;
  };
  CHECK(find(run_reference_checks(f), "balanced_indefinite_a.weight_balanced"));
  // edge 3 -> 0 from 0.15 to 0.16
  Matrix printed = f.balanced_indefinite_a;
  printed(0, 3) = -0.16;
  f.balanced_indefinite_a = laplacian_from_offdiagonal(printed);
  CHECK_FALSE(find(run_reference_checks(f), "balanced_indefinite_a.weight_balanced"));
}

TEST_CASE("spectrum distance is the bottleneck matching distance") {
  Rng rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 1, 6);
    std::vector<Complex> a, b;
    for (int i = 0; i < n; ++i) {
      a.emplace_back(uniform(rng, -1, 1), uniform(rng, -1, 1));
      b.emplace_back(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    CHECK(spectrum_distance(a, b) == brute_force_distance(a, b));
  }
  CHECK(spectrum_distance(std::vector<Complex>{1.0}, std::vector<Complex>{}) ==
        std::numeric_limits<double>::infinity());
  CHECK(spectrum_distance(std::vector<Complex>{}, std::vector<Complex>{}) == 0.0);
  Vector v(2);
  v << 1.0, 2.0;
  CHECK(spectrum_distance(v, {2.0, 1.0}) == 0.0);
}
