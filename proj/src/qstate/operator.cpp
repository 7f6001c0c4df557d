#include <cmath>
#include <numbers>
#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/qstate.hpp"

namespace qma3col {

namespace {

void check_square(const RegisterShape& shape, const Mat& m) {
  const auto d = static_cast<Eigen::Index>(shape.total());
  if (m.rows() != d || m.cols() != d) {
    throw InputError("operator entries are " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     " but the register dimension is " + std::to_string(d));
  }
}

double hermitian_defect(const Mat& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

Operator::Operator(RegisterShape shape, Mat entries, OperatorKind kind)
    : shape_(std::move(shape)), entries_(std::move(entries)), kind_(kind) {
  check_square(shape_, entries_);
}

Operator Operator::general(RegisterShape shape, Mat entries) {
  return Operator(std::move(shape), std::move(entries), OperatorKind::General);
}

Operator Operator::hermitian(RegisterShape shape, Mat entries) {
  check_square(shape, entries);
  if (entries.size() > 0 && hermitian_defect(entries) > kHermitianTol) {
    throw NumericalError("operator tagged Hermitian is not Hermitian");
  }
  return Operator(std::move(shape), std::move(entries), OperatorKind::Hermitian);
}

Operator Operator::povm_element(RegisterShape shape, Mat entries, Verify verify) {
  check_square(shape, entries);
  if (entries.size() > 0 && hermitian_defect(entries) > kHermitianTol) {
    throw NumericalError("operator tagged POVM element is not Hermitian");
  }
  if (verify == Verify::Spectrum && entries.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(entries, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    if (ev.minCoeff() < -kPovmTol || ev.maxCoeff() > 1.0 + kPovmTol) {
      throw NumericalError("POVM element spectrum leaves [0, 1]");
    }
  }
  return Operator(std::move(shape), std::move(entries), OperatorKind::Povm);
}

Operator Operator::unitary(RegisterShape shape, Mat entries) {
  check_square(shape, entries);
  const auto d = entries.rows();
  if (d > 0 && (entries * entries.adjoint() - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw NumericalError("operator tagged unitary is not unitary");
  }
  return Operator(std::move(shape), std::move(entries), OperatorKind::Unitary);
}

Operator Operator::identity(RegisterShape shape) {
  const auto d = static_cast<Eigen::Index>(shape.total());
  return Operator(std::move(shape), Mat::Identity(d, d), OperatorKind::Povm);
}

Operator Operator::projector(const StateVector& v) {
  return Operator(v.shape(), v.amps() * v.amps().adjoint(), OperatorKind::Povm);
}

bool Operator::is_hermitian() const { return kind_ == OperatorKind::Hermitian || kind_ == OperatorKind::Povm; }

Vec Operator::apply(const Vec& v) const {
  if (v.size() != entries_.cols()) throw InputError("vector length does not match operator dimension");
  return entries_ * v;
}

StateVector Operator::apply(const StateVector& psi) const {
  if (psi.shape() != shape_) throw InputError("state shape does not match operator shape");
  if (kind_ != OperatorKind::Unitary) throw InputError("only unitary operators map states to states");
  return StateVector(shape_, entries_ * psi.amps());
}

Operator Operator::adjoint() const { return Operator(shape_, entries_.adjoint(), kind_); }

Operator Operator::complement() const {
  if (kind_ != OperatorKind::Povm) throw InputError("complement requires a POVM element");
  const auto d = entries_.rows();
  return Operator(shape_, Mat::Identity(d, d) - entries_, OperatorKind::Povm);
}

Operator Operator::combination(std::span<const double> weights, std::span<const Operator* const> ops) {
  if (weights.size() != ops.size() || ops.empty()) throw InputError("combination needs one weight per operator");
  const RegisterShape& shape = ops.front()->shape();
  Mat sum = Mat::Zero(ops.front()->entries().rows(), ops.front()->entries().cols());
  bool all_povm = true;
  bool all_hermitian = true;
  double total = 0.0;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k]->shape() != shape) throw InputError("combination of operators with different shapes");
    sum += weights[k] * ops[k]->entries();
    all_povm = all_povm && ops[k]->kind() == OperatorKind::Povm && weights[k] >= 0.0;
    all_hermitian = all_hermitian && ops[k]->is_hermitian();
    total += weights[k];
  }
  OperatorKind kind = OperatorKind::General;
  if (all_povm && total <= 1.0 + 1e-15) {
    kind = OperatorKind::Povm;
  } else if (all_hermitian) {
    kind = OperatorKind::Hermitian;
  }
  return Operator(shape, std::move(sum), kind);
}

Operator tensor(const Operator& a, const Operator& b) {
  RegisterShape shape = a.shape().concat(b.shape());
  const Mat& ma = a.entries();
  const Mat& mb = b.entries();
  const Eigen::Index rb = mb.rows();
  const Eigen::Index cb = mb.cols();
  Mat m(ma.rows() * rb, ma.cols() * cb);
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      m.block(i * rb, j * cb, rb, cb) = ma(i, j) * mb;
    }
  }
  OperatorKind kind = OperatorKind::General;
  if (a.kind() == b.kind()) {
    kind = a.kind();
  } else if (a.is_hermitian() && b.is_hermitian()) {
    kind = OperatorKind::Hermitian;
  }
  switch (kind) {
    case OperatorKind::Povm:
      return Operator::povm_element(std::move(shape), std::move(m), Operator::Verify::HermitianOnly);
    case OperatorKind::Hermitian:
      return Operator::hermitian(std::move(shape), std::move(m));
    case OperatorKind::Unitary:
      return Operator::unitary(std::move(shape), std::move(m));
    case OperatorKind::General:
      break;
  }
  return Operator::general(std::move(shape), std::move(m));
}

Operator dft_matrix(std::size_t d) {
  if (d == 0) throw InputError("DFT dimension must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Mat f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // Reduce the exponent mod d before forming the angle.
      const auto r = static_cast<double>((static_cast<std::size_t>(j) * static_cast<std::size_t>(k)) % d);
      const double angle = 2.0 * std::numbers::pi * r / static_cast<double>(d);
      f(j, k) = scale * cplx(std::cos(angle), std::sin(angle));
    }
  }
  return Operator::unitary(RegisterShape({d}), std::move(f));
}

Operator swap_operator(std::size_t d) {
  if (d == 0) throw InputError("swap dimension must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Mat s = Mat::Zero(n * n, n * n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) s(y * n + x, x * n + y) = 1.0;
  }
  return Operator::hermitian(RegisterShape({d, d}), std::move(s));
}

double expectation(const Operator& op, const StateVector& psi) {
  if (op.shape() != psi.shape()) throw InputError("expectation: operator and state shapes differ");
  if (!op.is_hermitian()) throw InputError("expectation requires a Hermitian-tagged operator");
  const cplx value = psi.amps().dot(op.entries() * psi.amps());
  if (std::abs(value.imag()) > 1e-10) throw NumericalError("expectation has a non-negligible imaginary part");
  return value.real();
}

namespace {

std::size_t checked_split(const Operator& op, std::size_t first, std::size_t second) {
  if (first * second != op.dim()) throw InputError("contraction: factor dimensions do not match operator");
  return first;
}

OperatorKind contracted_kind(const Operator& op) {
  // Compressing by a normalized vector preserves 0 <= M <= I.
  return op.kind() == OperatorKind::Povm ? OperatorKind::Povm
         : op.is_hermitian()             ? OperatorKind::Hermitian
                                         : OperatorKind::General;
}

Operator tagged(RegisterShape shape, Mat m, OperatorKind kind) {
  if (kind == OperatorKind::Povm) {
    // Symmetrize away rounding before the Hermitian check.
    Mat h = 0.5 * (m + m.adjoint());
    return Operator::povm_element(std::move(shape), std::move(h), Operator::Verify::HermitianOnly);
  }
  if (kind == OperatorKind::Hermitian) {
    Mat h = 0.5 * (m + m.adjoint());
    return Operator::hermitian(std::move(shape), std::move(h));
  }
  return Operator::general(std::move(shape), std::move(m));
}

}  // namespace

Operator contract_second(const Operator& op, const RegisterShape& first, const StateVector& phi) {
  const std::size_t da = checked_split(op, first.total(), phi.size());
  const auto a = static_cast<Eigen::Index>(da);
  const auto b = static_cast<Eigen::Index>(phi.size());
  const Mat& m = op.entries();
  const Vec& w = phi.amps();
  // Column pass: (M (I x |phi>)) has shape (a*b) x a.
  Mat right(a * b, a);
  for (Eigen::Index j = 0; j < a; ++j) right.col(j) = m.middleCols(j * b, b) * w;
  Mat out(a, a);
  for (Eigen::Index i = 0; i < a; ++i) out.row(i) = w.adjoint() * right.middleRows(i * b, b);
  return tagged(first, std::move(out), contracted_kind(op));
}

Operator contract_first(const Operator& op, const StateVector& psi, const RegisterShape& second) {
  checked_split(op, psi.size(), second.total());
  const auto a = static_cast<Eigen::Index>(psi.size());
  const auto b = static_cast<Eigen::Index>(second.total());
  const Mat& m = op.entries();
  const Vec& v = psi.amps();
  Mat out = Mat::Zero(b, b);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < a; ++j) {
      const cplx w = std::conj(v[i]) * v[j];
      if (w == cplx(0.0)) continue;
      out += w * m.block(i * b, j * b, b, b);
    }
  }
  return tagged(second, std::move(out), contracted_kind(op));
}

}  // namespace qma3col
