#include "commonbath/linalg.hpp"

namespace commonbath {

ComplexMatrix4 kron(const Mat2& a, const Mat2& b) {
  ComplexMatrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double trace_distance(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  return 0.5 * hermitian_eigenvalues(ComplexMatrix4(a - b)).cwiseAbs().sum();
}

}  // namespace commonbath
