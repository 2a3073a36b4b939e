#pragma once

#include "nrgit/ideal.hpp"

namespace nrgit {

/// Length-2 Harder-Narasimhan type on P^1: degrees of the line-bundle
/// summands of the two graded pieces. Requires mean(a) > mean(b).
struct HNType {
    std::vector<int> a;
    std::vector<int> b;
};

struct HomDimResult {
    long delta = 0;                       // dim Hom(E2, E1)
    std::vector<std::vector<long>> table; // table[i][j] = dim Hom(O(b_j), O(a_i))
};

/// Number of degree-d monomials in two variables by explicit enumeration
/// (0 for negative d).
long monomial_count_degree(int d);

HomDimResult homdim(const HNType& type);

} // namespace nrgit
