#pragma once

// Serial reference elimination, kept deliberately independent of gf2.cpp:
// plain forward elimination (no back-substitution), row-at-a-time in a
// caller-chosen order, pivot taken from the leading bit of each row rather
// than by column sweep.  Used as the cross-check oracle for ranks and
// kernels and as the baseline in the elimination benchmark.

#include "adams/gf2.hpp"

#include <vector>

namespace adams::gf2::reference {

// Rank via forward elimination, consuming rows in the order given by
// `row_order` (a permutation of 0..rows-1; empty means natural order).
int rank(const Matrix& m, const std::vector<int>& row_order = {});

// Kernel dimension = cols - rank; also returns an (unreduced) kernel
// spanning set for containment cross-checks.
Matrix kernel_spanning_set(const Matrix& m);

}  // namespace adams::gf2::reference
