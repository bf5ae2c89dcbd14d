#include "doctest.h"
#include "test_support.hpp"

#include "sll/fixtures.hpp"
#include "sll/spectral.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace sll;
using namespace sll::testing;

TEST_CASE("spectrum of a directed 3-cycle") {
  const Matrix l = laplacian(parse_graph("0 1 1\n1 2 1\n2 0 1\n"));
  const Spectrum s = spectrum(l);
  REQUIRE(s.values.size() == 3);
  CHECK(s.zero_count() == 1);
  CHECK(s.zero_indices.front() == 0);
  CHECK(std::abs(s.values[1] - Complex(1.5, -std::sqrt(3.0) / 2)) < 1e-12);
  CHECK(s.values[1] == std::conj(s.values[2]));
  CHECK(std::abs(s.spectral_radius() - std::sqrt(3.0)) < 1e-12);
  CHECK(s.nonzero().size() == 2);
}

TEST_CASE("spectrum is sorted with exact conjugate pairs on random matrices") {
  Rng rng(kSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix l = random_balanced_laplacian(uniform_int(rng, 2, 12), rng);
    const Spectrum s = spectrum(l);
    for (std::size_t i = 1; i < s.values.size(); ++i) {
      const auto& a = s.values[i - 1];
      const auto& b = s.values[i];
      CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
    }
    int positive = 0, negative = 0;
    for (const auto& v : s.values) {
      positive += v.imag() > 0;
      negative += v.imag() < 0;
    }
    CHECK(positive == negative);
    // trace is preserved
    Complex sum = 0;
    for (const auto& v : s.values) sum += v;
    CHECK(std::abs(sum.real() - l.trace()) < 1e-9 * std::max(1.0, l.norm()));
  }
}

TEST_CASE("spectrum guards") {
  CHECK_THROWS_AS(spectrum(Matrix::Zero(2, 3)), Error);
  CHECK_THROWS_AS(spectrum(Matrix::Zero(kSpectrumSizeCap + 1, kSpectrumSizeCap + 1)), Error);
  CHECK(spectrum(Matrix(0, 0)).values.empty());
}

TEST_CASE("corank") {
  const FixtureSet f = reference_fixtures();
  CHECK(corank(f.complete_signed4) == 2);
  CHECK(corank(f.balanced_indefinite_a) == 1);
  CHECK(corank(Matrix::Zero(3, 3)) == 3);
  CHECK(corank(Matrix::Identity(3, 3)) == 0);
}

TEST_CASE("projector algebra on random weight-balanced Laplacians") {
  Rng rng(kSeed + 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 12);
    const Matrix l = random_balanced_laplacian(n, rng);
    const Matrix j = averaging_projector(n).matrix;
    const Matrix pi = range_projector(n).matrix;
    const double scale = std::max(1.0, l.norm());
    CHECK((j * j - j).norm() <= 1e-9);
    CHECK((pi * pi - pi).norm() <= 1e-9);
    CHECK((j * pi).norm() <= 1e-9);
    CHECK((j * l).norm() <= 1e-9 * scale);
    CHECK((l * j).norm() <= 1e-9 * scale);
    CHECK((pi * l - l).norm() <= 1e-9 * scale);
    CHECK((l * pi - l).norm() <= 1e-9 * scale);
  }
  CHECK(averaging_projector(3).kind == Projector::Kind::Averaging);
  CHECK(range_projector(3).kind == Projector::Kind::Range);
  CHECK_THROWS_AS(averaging_projector(0), Error);
}

TEST_CASE("SVD pseudoinverse satisfies the Penrose identities") {
  Rng rng(kSeed + 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 12);
    const int rank = uniform_int(rng, 1, n);
    Matrix b(n, rank), c(rank, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < rank; ++k) {
        b(i, k) = uniform(rng, -1, 1);
        c(k, i) = uniform(rng, -1, 1);
      }
    const Matrix a = b * c;
    const Matrix x = pinv_svd(a);
    const double s = std::max(1.0, a.norm() * x.norm());
    CHECK((a * x * a - a).norm() <= 1e-8 * s * a.norm());
    CHECK((x * a * x - x).norm() <= 1e-8 * s * x.norm());
    CHECK(((a * x).transpose() - a * x).norm() <= 1e-8 * s);
    CHECK(((x * a).transpose() - x * a).norm() <= 1e-8 * s);
  }
}

TEST_CASE("shifted pseudoinverse matches SVD for several shifts") {
  Rng rng(kSeed + 3);
  int tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix l = random_balanced_laplacian(uniform_int(rng, 2, 12), rng);
    if (corank(l) != 1) continue;
    ++tested;
    const Matrix ref = pinv_svd(l);
    for (double gamma : {0.5, 1.0, 2.0}) CHECK(rel_err(pinv_shifted(l, gamma), ref) <= 1e-8);
  }
  CHECK(tested >= 90);
}

TEST_CASE("shifted pseudoinverse preconditions") {
  const Matrix path = laplacian(parse_graph("0 1 1\n1 2 1\n"));
  CHECK_THROWS_AS(pinv_shifted(path), Error);
  const Matrix cycle = laplacian(parse_graph("0 1 1\n1 2 1\n2 0 1\n"));
  CHECK_THROWS_AS(pinv_shifted(cycle, 0.0), Error);
  CHECK_THROWS_AS(pinv_shifted(reference_fixtures().complete_signed4), Error);
  try {
    pinv_shifted(path);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("matrix exponential agrees with the Eigen oracle") {
  Rng rng(kSeed + 4);
  for (double scale : {1e-4, 0.1, 0.5, 1.5, 4.0, 30.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = uniform_int(rng, 1, 10);
      Matrix a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -1, 1);
      a *= scale / std::max(1e-300, a.cwiseAbs().colwise().sum().maxCoeff());
      const Matrix want = a.exp();
      CHECK(rel_err(matrix_exp(a), want) <= 1e-11 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("exp(-J t) has a closed form") {
  for (int n : {2, 5, 9}) {
    const Matrix j = averaging_projector(n).matrix;
    for (double t : {0.01, 1.0, 7.5}) {
      const Matrix want = Matrix::Identity(n, n) + (std::exp(-t) - 1.0) * j;
      CHECK((matrix_exp(-t * j) - want).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("exp(-L t) converges to the averaging projector for a normal Laplacian") {
  const Matrix l = reference_fixtures().normal4;
  const Matrix e = matrix_exp(-200.0 * l);
  CHECK((e - averaging_projector(4).matrix).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("matrix exponential overflow") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(matrix_exp(bad), Error);
  CHECK_THROWS_AS(matrix_exp(Matrix::Identity(2, 2) * 1e4), Error);
  CHECK(matrix_exp(Matrix(0, 0)).size() == 0);
}

TEST_CASE("Schur complement of a path onto its endpoints") {
  const Matrix l = laplacian(parse_graph("0 1 1\n1 0 1\n1 2 1\n2 1 1\n"));
  const Matrix r = schur_complement(l, NodePartition(3, {0, 2}));
  Matrix want(2, 2);
  want << 0.5, -0.5, -0.5, 0.5;
  CHECK((r - want).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(interior_condition(l, NodePartition(3, {0, 2})) == doctest::Approx(1.0));
}

TEST_CASE("Schur complement matches sequential elimination") {
  Rng rng(kSeed + 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 3, 12);
    const Matrix l = random_symmetric_laplacian(n, rng, 0.0);
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const int k = uniform_int(rng, 2, n - 1);
    const NodePartition p(n, std::vector<int>(nodes.begin(), nodes.begin() + k));
    const Matrix want = sequential_elimination(l, p.alpha(), p.beta());
    CHECK((schur_complement(l, p) - want).norm() <= 1e-9 * std::max(1.0, l.norm()));
  }
}

TEST_CASE("Schur complement rejects singular interiors") {
  // nodes 1 and 2 form an isolated pair: the interior block is singular
  const Matrix l = laplacian(parse_graph("n 4\n1 2 1\n2 1 1\n0 3 1\n3 0 1\n"));
  try {
    schur_complement(l, NodePartition(4, {0, 3}));
    FAIL("expected SingularInterior");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularInterior);
  }
  CHECK_THROWS_AS(schur_complement(l, NodePartition(3, {0, 1})), Error);
}

TEST_CASE("marginal stability of -L") {
  const FixtureSet f = reference_fixtures();
  CHECK(is_marginally_stable_neg(f.balanced_indefinite_a));
  CHECK(is_marginally_stable_neg(f.complete_signed4));
  // a negative eigenvalue
  Matrix unstable = laplacian(parse_graph("0 1 -1\n1 0 -1\n"));
  CHECK_FALSE(is_marginally_stable_neg(unstable));
  // a Jordan block at zero
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  CHECK_FALSE(is_marginally_stable_neg(jordan));
}

TEST_CASE("symmetric eigenvalues ascend and submatrix picks entries") {
  const Vector ev = symmetric_eigenvalues(symmetric_part(reference_fixtures().nonnormal_psd4));
  for (Eigen::Index i = 1; i < ev.size(); ++i) CHECK(ev(i - 1) <= ev(i));
  Matrix m(3, 3);
  m << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const Matrix s = submatrix(m, {2, 0}, {1});
  CHECK(s(0, 0) == 8);
  CHECK(s(1, 0) == 2);
}
