#pragma once

#include <complex>
#include <vector>

#include "expflow/matrix_exp.hpp"

namespace expflow {

// A = A_n + A_s, A_s = A_h + A_e with A_n nilpotent, A_h diagonalizable
// over R, A_e semisimple with imaginary spectrum, all pairwise commuting.
struct JordanDecomposition {
  Matrix a_n;
  Matrix a_s;
  Matrix a_h;
  Matrix a_e;
};

// One eigenvalue (or conjugate pair) with its real generalized eigenspace.
struct SpectralCluster {
  std::complex<double> eigenvalue;  // Im >= 0 for pairs
  int multiplicity;                 // algebraic, per eigenvalue
  bool conjugate_pair;
  // Real projector onto the generalized eigenspace (of the pair).
  Matrix projector;
};

struct RealJordanOptions {
  // Computed eigenvalues closer than cluster_tol * sqrt(max(1, ||A||) *
  // max(1, rho(A))) belong to one cluster; defective eigenvalues split by
  // about (eps ||A||)^{1/m}.
  double cluster_tol = 1e-4;
  // Distinct clusters closer than separation_tol * max(1, rho(A)), or
  // twice the merge radius, are rejected.
  double separation_tol = 1e-3;
};

struct RealJordanResult {
  JordanDecomposition parts;
  std::vector<SpectralCluster> clusters;
};

// Throws ill-conditioned-spectrum when clusters are not separated, a
// generalized eigenspace has no clear dimension gap, or the eigenbasis is
// numerically singular.
RealJordanResult real_jordan_spectral(const Matrix& a, const RealJordanOptions& options = {});
JordanDecomposition real_jordan(const Matrix& a, const RealJordanOptions& options = {});

struct JordanCheck {
  double tolerance;              // tau_J = 1e-9 ||A||
  double sum_residual;           // ||A_n + A_h + A_e - A||, ||A_s - A_h - A_e||
  double nilpotency;             // ||A_n^n|| / max(1, ||A||)^(n-1)
  double commutator;             // max over the three pairs, / max(1, ||A||)
  double hyperbolic_imag;        // max |Im spec(A_h)|
  double elliptic_real;          // max |Re spec(A_e)|
  double semisimplicity;         // ||prod_c (A_s - mu_c)|| / max(1, ||A||)^(r-1)
  bool passed() const;
};

JordanCheck verify_jordan(const Matrix& a, const RealJordanResult& result);

double max_abs(const Matrix& m);

}  // namespace expflow
