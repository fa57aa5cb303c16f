#pragma once

#include <cstddef>
#include <vector>

namespace rcamon {

// Dense symmetric linear system solve, sized for the (p+1)-dimensional
// weighted normal equations (p small). a is row-major n x n and is consumed.
// Throws SingularGram when a pivot falls below rel_tol times the largest
// initial entry magnitude.
std::vector<double> solve_symmetric(std::vector<double> a, std::vector<double> b,
                                    std::size_t n, double rel_tol = 1e-12);

}  // namespace rcamon
