#include "expflow/real_jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "expflow/error.hpp"

namespace expflow {
namespace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct RawCluster {
  Complex mean;
  int multiplicity;
};

std::vector<RawCluster> cluster_eigenvalues(const Eigen::VectorXcd& eig, double tol) {
  const auto n = static_cast<std::size_t>(eig.size());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(eig[static_cast<Eigen::Index>(i)] - eig[static_cast<Eigen::Index>(j)]) <= tol) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<RawCluster> out;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      out.push_back({Complex{}, 0});
      it = roots.end() - 1;
    }
    auto& c = out[static_cast<std::size_t>(it - roots.begin())];
    c.mean += eig[static_cast<Eigen::Index>(i)];
    c.multiplicity += 1;
  }
  for (auto& c : out) c.mean /= static_cast<double>(c.multiplicity);
  return out;
}

[[noreturn]] void ill_conditioned(const std::string& why) {
  throw Error(ErrorCode::kIllConditionedSpectrum, why);
}

// Orthonormal basis of the null space of (A - mu)^m, with a dimension gap
// check on the singular values.
CMatrix generalized_eigenspace(const Matrix& a, Complex mu, int m) {
  const auto n = a.rows();
  const CMatrix shifted = a.cast<Complex>() - mu * CMatrix::Identity(n, n);
  CMatrix power = CMatrix::Identity(n, n);
  for (int i = 0; i < m; ++i) power = power * shifted;
  Eigen::JacobiSVD<CMatrix> svd(power, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Eigen::Index kept = n - m;
  if (kept > 0) {
    const double largest_null = sigma[kept];
    const double smallest_range = sigma[kept - 1];
    if (!(largest_null <= 1e-4 * smallest_range)) {
      ill_conditioned("generalized eigenspace of eigenvalue (" + std::to_string(mu.real()) + ", " +
                      std::to_string(mu.imag()) + ") has no clear dimension gap");
    }
  }
  return svd.matrixV().rightCols(m);
}

}  // namespace

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

RealJordanResult real_jordan_spectral(const Matrix& a, const RealJordanOptions& options) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "real_jordan needs a nonempty square matrix");
  }
  if (!a.allFinite()) throw Error(ErrorCode::kInvalidArgument, "real_jordan needs finite entries");
  const auto n = a.rows();

  Eigen::EigenSolver<Matrix> solver(a, false);
  if (solver.info() != Eigen::Success) ill_conditioned("eigenvalue iteration did not converge");
  const double spectral_scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  // Defective eigenvalues split roughly like sqrt(eps ||A||), so the merge
  // radius grows with the norm; the spectrum itself sets the separation.
  const double radius = options.cluster_tol * std::sqrt(std::max(1.0, a.norm()) * spectral_scale);
  const double separation = std::max(options.separation_tol * spectral_scale, 2.0 * radius);
  std::vector<RawCluster> raw = cluster_eigenvalues(solver.eigenvalues(), radius);

  // Snap near-real clusters onto the axis and pair the rest with conjugates.
  for (auto& c : raw) {
    if (std::abs(c.mean.imag()) <= radius) c.mean.imag(0.0);
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (std::abs(raw[i].mean - raw[j].mean) < separation) {
        ill_conditioned("eigenvalue clusters closer than " + std::to_string(separation));
      }
    }
  }

  struct Block {
    Complex mu;
    int multiplicity;
    bool pair;
    Eigen::Index column;
  };
  std::vector<Block> blocks;
  CMatrix basis(n, n);
  Eigen::Index column = 0;
  for (const auto& c : raw) {
    if (c.mean.imag() < 0.0) {
      const bool partnered = std::any_of(raw.begin(), raw.end(), [&](const RawCluster& o) {
        return std::abs(o.mean - std::conj(c.mean)) <= radius &&
               o.multiplicity == c.multiplicity;
      });
      if (!partnered) ill_conditioned("complex eigenvalue without a conjugate partner");
      continue;
    }
    const bool pair = c.mean.imag() > 0.0;
    const CMatrix space = generalized_eigenspace(a, c.mean, c.multiplicity);
    const Eigen::Index width = space.cols() * (pair ? 2 : 1);
    if (column + width > n) ill_conditioned("generalized eigenspaces overfill the space");
    basis.middleCols(column, space.cols()) = space;
    if (pair) basis.middleCols(column + space.cols(), space.cols()) = space.conjugate();
    blocks.push_back({c.mean, c.multiplicity, pair, column});
    column += width;
  }
  if (column != n) ill_conditioned("generalized eigenspaces do not span the space");

  Eigen::JacobiSVD<CMatrix> basis_svd(basis);
  const auto& bs = basis_svd.singularValues();
  if (!(bs[n - 1] > 1e-12 * bs[0])) ill_conditioned("generalized eigenbasis is numerically singular");
  const CMatrix inverse = basis.fullPivLu().inverse();

  RealJordanResult result;
  Matrix a_s = Matrix::Zero(n, n);
  Matrix a_h = Matrix::Zero(n, n);
  for (const auto& b : blocks) {
    const CMatrix p = basis.middleCols(b.column, b.multiplicity) *
                      inverse.middleRows(b.column, b.multiplicity);
    Matrix projector;
    Matrix semisimple;
    if (b.pair) {
      projector = 2.0 * p.real();
      semisimple = 2.0 * (b.mu * p).real();
    } else {
      projector = p.real();
      semisimple = b.mu.real() * projector;
    }
    a_s += semisimple;
    a_h += b.mu.real() * projector;
    result.clusters.push_back({b.mu, b.multiplicity, b.pair, std::move(projector)});
  }
  result.parts.a_s = a_s;
  result.parts.a_h = a_h;
  result.parts.a_e = a_s - a_h;
  result.parts.a_n = a - a_s;
  return result;
}

JordanDecomposition real_jordan(const Matrix& a, const RealJordanOptions& options) {
  return real_jordan_spectral(a, options).parts;
}

bool JordanCheck::passed() const {
  return sum_residual <= tolerance && nilpotency <= tolerance && commutator <= tolerance &&
         hyperbolic_imag <= tolerance && elliptic_real <= tolerance && semisimplicity <= tolerance;
}

JordanCheck verify_jordan(const Matrix& a, const RealJordanResult& result) {
  const auto& p = result.parts;
  const auto n = a.rows();
  const double norm = a.norm();
  const double scale = std::max(1.0, norm);
  JordanCheck check{};
  check.tolerance = 1e-9 * norm;
  check.sum_residual =
      std::max((p.a_n + p.a_h + p.a_e - a).norm(), (p.a_s - p.a_h - p.a_e).norm());

  Matrix power = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) power = power * p.a_n;
  check.nilpotency = power.norm() / std::pow(scale, static_cast<double>(n - 1));

  const auto bracket = [](const Matrix& x, const Matrix& y) { return (x * y - y * x).norm(); };
  check.commutator =
      std::max({bracket(p.a_n, p.a_h), bracket(p.a_n, p.a_e), bracket(p.a_h, p.a_e)}) / scale;

  const Eigen::VectorXcd hyperbolic = Eigen::EigenSolver<Matrix>(p.a_h, false).eigenvalues();
  const Eigen::VectorXcd elliptic = Eigen::EigenSolver<Matrix>(p.a_e, false).eigenvalues();
  check.hyperbolic_imag = hyperbolic.imag().cwiseAbs().maxCoeff();
  check.elliptic_real = elliptic.real().cwiseAbs().maxCoeff();

  // The minimal polynomial of A_s has simple roots: prod (A_s - mu) = 0.
  CMatrix product = CMatrix::Identity(n, n);
  int factors = 0;
  for (const auto& c : result.clusters) {
    for (const Complex mu : {c.eigenvalue, std::conj(c.eigenvalue)}) {
      product = product * (p.a_s.cast<Complex>() - mu * CMatrix::Identity(n, n));
      ++factors;
      if (!c.conjugate_pair) break;
    }
  }
  check.semisimplicity = product.norm() / std::pow(scale, static_cast<double>(std::max(factors - 1, 0)));
  return check;
}

}  // namespace expflow
