#include "doctest.h"
#include "test_support.hpp"

#include "sll/fixtures.hpp"
#include "sll/pinv_closure.hpp"
#include "sll/spectral.hpp"

#include <cmath>

using namespace sll;
using namespace sll::testing;

namespace {

std::vector<Complex> reciprocals(const std::vector<Complex>& values) {
  std::vector<Complex> out;
  for (const auto& v : values) out.push_back(1.0 / v);
  return out;
}

}  // namespace

TEST_CASE("pseudoinverse of the undirected 3-node fixture") {
  const FixtureSet f = reference_fixtures();
  const Matrix ld = laplacian_pinv(f.undirected3);
  CHECK((ld - f.undirected3_pinv).cwiseAbs().maxCoeff() <= 1e-3);
  CHECK(ld(0, 1) > 0.0);
}

TEST_CASE("pseudoinverse of the balanced indefinite fixture") {
  const FixtureSet f = reference_fixtures();
  const Matrix ld = laplacian_pinv(f.balanced_indefinite_a);
  CHECK((ld - f.balanced_indefinite_a_pinv).cwiseAbs().maxCoeff() <= 1e-2);
  const ClosureReport r = verify_closure(f.balanced_indefinite_a);
  CHECK(r.identities.all());
  CHECK(r.involution_ok);
  CHECK(r.eep_preserved == std::pair{true, true});
  CHECK(r.corank_pair == std::pair{1, 1});
  CHECK_FALSE(r.normal_preserved.has_value());
  CHECK_FALSE(r.sym_psd_corank1);
  CHECK_FALSE(r.dagger_sym_psd_corank1);
  CHECK(r.noncommutation_gap > 1e-3);
}

TEST_CASE("pseudoinverse identities on random weight-balanced Laplacians") {
  Rng rng(kSeed);
  int tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 12);
    const Matrix l = random_balanced_laplacian(n, rng);
    if (corank(l) != 1) continue;
    ++tested;
    const Matrix ld = laplacian_pinv(l);
    const Matrix pi = range_projector(n).matrix;
    const Vector ones = Vector::Ones(n);
    const double s = std::max(1.0, l.norm() * ld.norm());

    // Penrose
    CHECK((l * ld * l - l).norm() <= 1e-8 * s * l.norm());
    CHECK((ld * l * ld - ld).norm() <= 1e-8 * s * ld.norm());
    CHECK(((l * ld).transpose() - l * ld).norm() <= 1e-8 * s);
    CHECK(((ld * l).transpose() - ld * l).norm() <= 1e-8 * s);
    // Laplacian-specific
    CHECK((l * ld - pi).norm() <= 1e-9 * s);
    CHECK((ld * l - pi).norm() <= 1e-9 * s);
    CHECK((ld * ones).norm() <= 1e-9 * std::max(1.0, ld.norm()));
    CHECK((ld.transpose() * ones).norm() <= 1e-9 * std::max(1.0, ld.norm()));
    CHECK((pi * ld - ld).norm() <= 1e-9 * std::max(1.0, ld.norm()));
    // involution
    CHECK(rel_err(pinv_svd(ld), l) <= 1e-8);

    const ClosureReport r = verify_closure(l);
    CHECK(r.identities.all());
    CHECK(r.involution_ok);
    CHECK(r.eep_preserved.first == r.eep_preserved.second);
    CHECK(r.corank_pair == std::pair{1, 1});
    CHECK(is_weight_balanced(ld));

    // nonzero eigenvalues invert
    const Spectrum sl = spectrum(l);
    const Spectrum sd = spectrum(ld);
    const double rho = sd.spectral_radius();
    CHECK(spectrum_distance(reciprocals(sl.nonzero()), sd.nonzero()) <= 1e-6 * std::max(1.0, rho));
  }
  CHECK(tested >= 90);
}

TEST_CASE("normal Laplacians: real parts, normality and the symmetrized pseudoinverse") {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix l = random_normal_laplacian(uniform_int(rng, 2, 12), rng);
    std::vector<double> re;
    for (const auto& v : spectrum(l).values) re.push_back(v.real());
    CHECK(spectrum_distance(symmetric_eigenvalues(symmetric_part(l)), re) <= 1e-9);
    const ClosureReport r = verify_closure(l);
    REQUIRE(r.normal_preserved.has_value());
    CHECK(r.normal_preserved->second);
    // (L+)_s has eigenvalues Re(1/lambda), not 1/Re(lambda), so the gap is generally nonzero
    std::vector<double> inv_re;
    for (const auto& v : spectrum(l).values) inv_re.push_back(std::abs(v) <= 1e-9 ? 0.0 : (1.0 / v).real());
    CHECK(spectrum_distance(symmetric_eigenvalues(symmetric_part(r.l_dagger)), inv_re) <= 1e-8 * std::max(1.0, r.l_dagger.norm()));
    CHECK(std::isfinite(r.noncommutation_gap));
    CHECK(r.eep_preserved == std::pair{true, true});
    CHECK(r.sym_psd_corank1);
    CHECK(r.dagger_sym_psd_corank1);
  }
}

TEST_CASE("non-normal Laplacian with a psd symmetric part") {
  const Matrix l = reference_fixtures().nonnormal_psd4;
  CHECK_FALSE(is_normal(l));
  CHECK(is_ep(l));
  const ClosureReport r = verify_closure(l);
  CHECK(r.psd_without_normality);
  CHECK(r.sym_psd_corank1);
}

TEST_CASE("nonnegative weight-balanced digraphs give a psd symmetrized pseudoinverse") {
  Rng rng(kSeed + 2);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix l = random_balanced_laplacian(uniform_int(rng, 2, 12), rng, false);
    REQUIRE(is_nonnegative_graph(l));
    CHECK(nonneg_symmetrized_psd(l));
  }
  CHECK_THROWS_AS(nonneg_symmetrized_psd(reference_fixtures().balanced_indefinite_a), Error);
  CHECK_THROWS_AS(nonneg_symmetrized_psd(laplacian(parse_graph("0 1 1\n1 2 1\n"))), Error);
  CHECK_THROWS_AS(nonneg_symmetrized_psd(laplacian(parse_graph("0 1 1\n1 2 1\n2 0 2\n"))), Error);
}

TEST_CASE("psd corank-1 predicate") {
  Matrix p(2, 2);
  p << 1, -1, -1, 1;
  CHECK(is_psd_corank1(p));
  CHECK_FALSE(is_psd_corank1(Matrix::Identity(2, 2)));
  CHECK_FALSE(is_psd_corank1(-p));
  CHECK_FALSE(is_psd_corank1(Matrix::Zero(2, 2)));
}

TEST_CASE("pseudoinverse preconditions") {
  const Matrix path = laplacian(parse_graph("0 1 1\n1 2 1\n"));
  try {
    laplacian_pinv(path);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
    CHECK(category(e.kind()) == ErrorCategory::Precondition);
  }
  CHECK_THROWS_AS(verify_closure(reference_fixtures().complete_signed4), Error);
}
