#include "qma3col/qstate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qma3col/errors.hpp"

using namespace qma3col;

namespace {

Mat random_hermitian(Eigen::Index d, SeedStream& rng) {
  Mat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  return 0.5 * (m + m.adjoint());
}

Mat random_unitary(Eigen::Index d, SeedStream& rng) {
  Mat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Mat> qr(m);
  return qr.householderQ() * Mat::Identity(d, d);
}

}  // namespace

TEST(RegisterShape, row_major_digits) {
  RegisterShape shape({4, 3});
  EXPECT_EQ(shape.total(), 12u);
  const std::size_t digits[] = {2, 1};
  EXPECT_EQ(shape.index(digits), 7u);
  EXPECT_EQ(shape.digits(7), (std::vector<std::size_t>{2, 1}));
}

TEST(RegisterShape, cap) {
  EXPECT_THROW(RegisterShape({1024, 1025}), CapError);
  EXPECT_THROW(RegisterShape({4, 4}, 15), CapError);
  EXPECT_THROW(RegisterShape({3, 0}), InputError);
  RegisterShape a({512});
  EXPECT_THROW(a.concat(RegisterShape({4096})), CapError);
}

TEST(Tensor, basis_bookkeeping) {
  RegisterShape qubit({2});
  StateVector ab = tensor(StateVector::basis(qubit, 0), StateVector::basis(qubit, 1));
  EXPECT_EQ(ab.shape().dims(), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(ab[1], cplx(1.0));
  EXPECT_NEAR(ab.amps().norm(), 1.0, 1e-15);
}

TEST(Tensor, uniform_times_basis) {
  RegisterShape trit({3});
  StateVector uniform = StateVector::normalized(trit, Vec::Ones(3));
  StateVector s = tensor(uniform, StateVector::basis(trit, 0));
  for (std::size_t k = 0; k < 9; ++k) {
    const double expected = (k % 3 == 0) ? 1.0 / std::sqrt(3.0) : 0.0;
    EXPECT_NEAR(std::abs(s[k] - expected), 0.0, 1e-15) << k;
  }
}

TEST(Tensor, operator_kronecker) {
  RegisterShape qubit({2});
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  Operator ix = tensor(Operator::identity(qubit), Operator::unitary(qubit, x));
  EXPECT_EQ(ix.kind(), OperatorKind::General);  // Povm (x) Unitary has no common tag
  StateVector out = StateVector::normalized(RegisterShape({2, 2}), ix.apply(StateVector::basis(RegisterShape({2, 2}), 0).amps()));
  EXPECT_EQ(out[1], cplx(1.0));
}

TEST(Tensor, povm_tag_propagates) {
  Operator p = Operator::projector(StateVector::basis(RegisterShape({3}), 1));
  EXPECT_EQ(tensor(p, p).kind(), OperatorKind::Povm);
}

TEST(Dft, hadamard) {
  Operator f = dft_matrix(2);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(f.entries()(0, 0) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.entries()(0, 1) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.entries()(1, 0) - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(f.entries()(1, 1) + h), 0.0, 1e-15);
}

TEST(Dft, column_zero_uniform) {
  Operator f = dft_matrix(3);
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(f.entries()(j, 0) - 1.0 / std::sqrt(3.0)), 0.0, 1e-15);
}

TEST(Dft, unitary) {
  for (std::size_t d : {1u, 2u, 3u, 5u, 12u}) {
    const Operator fop = dft_matrix(d);
    const Mat& f = fop.entries();
    const auto n = static_cast<Eigen::Index>(d);
    EXPECT_LT((f * f.adjoint() - Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12) << d;
  }
}

TEST(Dft, clock_to_shift_conjugation) {
  for (std::size_t d : {3u, 5u}) {
    const auto n = static_cast<Eigen::Index>(d);
    const Operator fop = dft_matrix(d);
    const Mat& f = fop.entries();
    Mat clock = Mat::Zero(n, n);
    Mat shift = Mat::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
      clock(k, k) = cplx(std::cos(angle), std::sin(angle));
      shift((k + 1) % n, k) = 1.0;  // |k> -> |k+1>
    }
    EXPECT_LT((f.adjoint() * clock * f - shift).cwiseAbs().maxCoeff(), 1e-12) << d;
  }
}

TEST(Swap, exchanges_basis_states) {
  Operator s = swap_operator(2);
  Vec in = StateVector::basis(RegisterShape({2, 2}), 1).amps();  // |01>
  Vec out = s.apply(in);
  EXPECT_EQ(out[2], cplx(1.0));  // |10>
  EXPECT_LT((s.entries() * s.entries() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Swap, symmetric_product_invariant) {
  SeedStream rng(7);
  StateVector psi = StateVector::random(RegisterShape({6}), rng);
  StateVector pp = tensor(psi, psi);
  EXPECT_LT((swap_operator(6).apply(pp.amps()) - pp.amps()).norm(), 1e-14);
}

TEST(Swap, spectrum_multiplicities) {
  // Oracle: dense eigensolver. Symmetric subspace has d(d+1)/2 = 6,
  // antisymmetric d(d-1)/2 = 3.
  Eigen::SelfAdjointEigenSolver<Mat> solver(swap_operator(3).entries());
  int plus = 0;
  int minus = 0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double ev = solver.eigenvalues()[k];
    if (std::abs(ev - 1.0) < 1e-12) ++plus;
    if (std::abs(ev + 1.0) < 1e-12) ++minus;
  }
  EXPECT_EQ(plus, 6);
  EXPECT_EQ(minus, 3);
}

TEST(Expectation, identity_and_projector) {
  SeedStream rng(1);
  StateVector psi = StateVector::random(RegisterShape({5}), rng);
  EXPECT_NEAR(expectation(Operator::identity(psi.shape()), psi), 1.0, 1e-14);

  RegisterShape qubit({2});
  StateVector plus = dft_matrix(2).apply(StateVector::basis(qubit, 0));
  EXPECT_NEAR(expectation(Operator::projector(StateVector::basis(qubit, 0)), plus), 0.5, 1e-15);
}

TEST(Expectation, swap_test_formula) {
  SeedStream rng(2);
  const std::size_t d = 4;
  Operator s = swap_operator(d);
  Mat accept = 0.5 * (Mat::Identity(16, 16) + s.entries());
  Operator m = Operator::povm_element(s.shape(), accept);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector psi = StateVector::random(RegisterShape({d}), rng);
    StateVector phi = StateVector::random(RegisterShape({d}), rng);
    EXPECT_NEAR(expectation(m, tensor(psi, phi)), 0.5 + 0.5 * fidelity(psi, phi), 1e-12);
  }
}

TEST(Expectation, errors) {
  StateVector psi = StateVector::basis(RegisterShape({2}), 0);
  EXPECT_THROW(expectation(Operator::identity(RegisterShape({3})), psi), InputError);
  Mat upper(2, 2);
  upper << 0, 1, 0, 0;
  EXPECT_THROW(expectation(Operator::general(RegisterShape({2}), upper), psi), InputError);
  EXPECT_THROW(Operator::hermitian(RegisterShape({2}), upper), NumericalError);
}

TEST(TopEigenpair, diagonal) {
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = 0.2;
  m(1, 1) = 0.9;
  m(2, 2) = 0.5;
  EigenPair top = top_eigenpair(Operator::hermitian(RegisterShape({3}), m), 1e-12, 10000);
  EXPECT_NEAR(top.value, 0.9, 1e-12);
  EXPECT_NEAR(std::abs(top.vector[1]), 1.0, 1e-10);
}

TEST(TopEigenpair, swap) {
  EigenPair top = top_eigenpair(swap_operator(2), 1e-12, 1000);
  EXPECT_NEAR(top.value, 1.0, 1e-12);
}

TEST(TopEigenpair, negative_dominant_spectrum) {
  // The largest magnitude eigenvalue is negative; the shift must still pick
  // the algebraically largest one.
  Mat m = Mat::Zero(3, 3);
  m(0, 0) = -5.0;
  m(1, 1) = 0.3;
  m(2, 2) = 0.1;
  EigenPair top = top_eigenpair(Operator::hermitian(RegisterShape({3}), m), 1e-12, 10000);
  EXPECT_NEAR(top.value, 0.3, 1e-12);
}

TEST(TopEigenpair, matches_dense_oracle) {
  SeedStream rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.below(64));
    Operator op = Operator::hermitian(RegisterShape({static_cast<std::size_t>(d)}), random_hermitian(d, rng));
    Eigen::SelfAdjointEigenSolver<Mat> oracle(op.entries(), Eigen::EigenvaluesOnly);
    const double tol = 1e-9;
    EigenOptions opts;
    opts.seed = static_cast<std::uint64_t>(trial);
    EigenPair top = top_eigenpair(op, tol, 20000, opts);
    EXPECT_NEAR(top.value, oracle.eigenvalues()[d - 1], tol) << "dim " << d;
    EXPECT_NEAR(top.vector.amps().norm(), 1.0, 1e-12);
    const Vec residual = op.entries() * top.vector.amps() - top.value * top.vector.amps();
    EXPECT_LE(residual.norm(), 10 * tol);
  }
}

TEST(TopEigenpair, degenerate_top_falls_back_or_converges) {
  // Exactly degenerate top eigenvalue with a near-degenerate runner-up.
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 1.0 - 1e-9;
  m(3, 3) = 0.1;
  Operator op = Operator::hermitian(RegisterShape({4}), m);
  EigenPair top = top_eigenpair(op, 1e-13, 50);
  EXPECT_NEAR(top.value, 1.0, 1e-12);

  EigenOptions strict;
  strict.dense_fallback = false;
  strict.restarts = 1;
  EXPECT_THROW(top_eigenpair(op, 1e-15, 3, strict), ConvergenceError);
}

TEST(MeasureDistribution, basis_state_point_mass) {
  OutcomeDistribution d = measure_distribution(StateVector::basis(RegisterShape({4}), 2));
  EXPECT_EQ(d.probs(), (std::vector<double>{0, 0, 1, 0}));
}

TEST(MeasureDistribution, fourier_basis) {
  Operator f = dft_matrix(3);
  StateVector uniform = f.apply(StateVector::basis(RegisterShape({3}), 0));
  OutcomeDistribution d = measure_distribution(uniform, &f);
  EXPECT_NEAR(d[0], 1.0, 1e-15);
  EXPECT_NEAR(d[1], 0.0, 1e-15);
}

TEST(Sample, point_mass) {
  SeedStream rng(3);
  OutcomeDistribution d({0, 0, 0, 1, 0});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(sample(d, rng), 3u);
}

TEST(Sample, uniform_frequencies_within_five_sigma) {
  SeedStream rng(4);
  OutcomeDistribution d({0.25, 0.25, 0.25, 0.25});
  const int trials = 100000;
  std::vector<int> counts(4, 0);
  for (int i = 0; i < trials; ++i) ++counts[sample(d, rng)];
  const double sigma = std::sqrt(0.25 * 0.75 / trials);
  for (int c : counts) EXPECT_LT(std::abs(c / static_cast<double>(trials) - 0.25), 5 * sigma);
}

TEST(Sample, deterministic_per_seed) {
  OutcomeDistribution d({0.1, 0.2, 0.3, 0.4});
  SeedStream a(99);
  SeedStream b(99);
  for (int i = 0; i < 200; ++i) ASSERT_EQ(sample(d, a), sample(d, b));
  SeedStream c = a.substream(1);
  SeedStream e = b.substream(1);
  for (int i = 0; i < 200; ++i) ASSERT_EQ(c.next_u64(), e.next_u64());
}

TEST(L1Distance, examples) {
  OutcomeDistribution p({0.5, 0.5});
  OutcomeDistribution q({1.0, 0.0});
  EXPECT_DOUBLE_EQ(l1_distance(p, p), 0.0);
  EXPECT_DOUBLE_EQ(l1_distance(p, q), 0.5);
  EXPECT_DOUBLE_EQ(l1_distance(OutcomeDistribution({1, 0, 0}), OutcomeDistribution({0, 0, 1})), 1.0);
  EXPECT_THROW(l1_distance(p, OutcomeDistribution({1, 0, 0})), InputError);
}

TEST(Properties, normalization_preserved) {
  SeedStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    StateVector a = StateVector::random(RegisterShape({1 + rng.below(6)}), rng);
    StateVector b = StateVector::random(RegisterShape({1 + rng.below(6), 3}), rng);
    StateVector ab = tensor(a, b);
    EXPECT_NEAR(ab.amps().squaredNorm(), 1.0, 1e-12);
    const auto d = static_cast<Eigen::Index>(ab.size());
    Operator u = Operator::unitary(ab.shape(), random_unitary(d, rng));
    EXPECT_NEAR(u.apply(ab).amps().squaredNorm(), 1.0, 1e-12);
  }
}

TEST(Properties, trace_distance_dominates_statistical_distance) {
  SeedStream rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = 1 + rng.below(12);
    RegisterShape shape({d});
    StateVector psi = StateVector::random(shape, rng);
    StateVector phi = StateVector::random(shape, rng);
    if (trial % 3 == 0) {
      // Near-identical pairs exercise the small-distance regime.
      Vec v = psi.amps();
      for (Eigen::Index k = 0; k < v.size(); ++k) v[k] += 1e-3 * rng.complex_normal();
      phi = StateVector::normalized(shape, v);
    }
    Operator basis = Operator::unitary(shape, random_unitary(static_cast<Eigen::Index>(d), rng));
    const double trace_distance = std::sqrt(std::max(0.0, 1.0 - fidelity(psi, phi)));
    const double stat = l1_distance(measure_distribution(psi, &basis), measure_distribution(phi, &basis));
    EXPECT_GE(trace_distance + 1e-12, stat);
  }
}

TEST(Contraction, matches_product_expectation) {
  SeedStream rng(8);
  RegisterShape a({2, 3});
  RegisterShape b({4});
  RegisterShape ab = a.concat(b);
  Operator m = Operator::hermitian(ab, random_hermitian(static_cast<Eigen::Index>(ab.total()), rng));
  StateVector psi = StateVector::random(a, rng);
  StateVector phi = StateVector::random(b, rng);
  const double full = expectation(m, tensor(psi, phi));
  EXPECT_NEAR(expectation(contract_second(m, a, phi), psi), full, 1e-12);
  EXPECT_NEAR(expectation(contract_first(m, psi, b), phi), full, 1e-12);
}
