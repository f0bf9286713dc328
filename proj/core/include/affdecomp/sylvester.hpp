#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "affdecomp/rng.hpp"

namespace affdecomp {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<Rational>;  // row-major n x n

Rational rational_det(const RationalMatrix& m, int n);

// Sylvester's determinant identity on the bordered minors of an
// (j+1) x (j+1) matrix A (n = j+1 >= 2):
//   [j,j+1; j,j+1] * det A = [j+1; j+1] * [j; j] - [j+1; j] * [j; j+1],
// where [r; c] deletes the listed rows/columns. Exact in rational
// arithmetic for every input; false only signals an implementation bug.
bool check_sylvester(const RationalMatrix& a, int n);

// entries p/q with p in [-max_num, max_num], q in [1, max_den]
RationalMatrix random_rational_matrix(CounterRng& rng, int n, int max_num = 100,
                                      int max_den = 10);

}  // namespace affdecomp
