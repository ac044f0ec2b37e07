#include "expflow/matrix_exp.hpp"

#include <array>
#include <cmath>

#include "expflow/error.hpp"

namespace expflow {
namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which the unscaled degree-13 approximant is accurate
// to double precision.
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix matrix_exp(const Matrix& a, double t) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::kInvalidArgument, "matrix_exp needs a square matrix");
  if (!a.allFinite() || !std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidArgument, "matrix_exp needs finite entries");
  }
  const auto n = a.rows();
  const Matrix identity = Matrix::Identity(n, n);
  if (t == 0.0 || n == 0) return identity;

  Matrix x = t * a;
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    x /= std::ldexp(1.0, squarings);
  }

  const Matrix x2 = x * x;
  const Matrix x4 = x2 * x2;
  const Matrix x6 = x4 * x2;
  const auto& b = kPade13;
  const Matrix u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
  const Matrix u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * identity);
  const Matrix v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
  const Matrix v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * identity;

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace expflow
