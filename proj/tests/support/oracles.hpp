#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cbd/model.hpp"
#include "cbd/rational.hpp"

namespace cbd::testing {

using Matrix = std::vector<std::vector<Rational>>;

/// Vertices of {x >= 0 : A x = b}, by trying every column subset as a basis.
/// Exponential; meant for at most ~10 columns.
std::vector<std::vector<Rational>> polytope_vertices(const Matrix& a, const std::vector<Rational>& b);

/// Unique solution of a square or overdetermined system restricted to
/// `columns`, if the columns are independent and the system is consistent.
std::optional<std::vector<Rational>> solve_restricted(const Matrix& a, const std::vector<Rational>& b,
                                                      const std::vector<std::size_t>& columns);

/// Closed-form CbD criterion for a cyclic system of rank n >= 2 with +-1
/// variables: noncontextual iff
///   s_odd(<R_i^i R_{i+1}^i>) <= n - 2 + sum_i |<R_i^i> - <R_i^{i-1}>|.
/// `products[i]` and `means_left[i]`, `means_right[i]` are the expectations of
/// the product and of the two variables of bunch i.
bool cyclic_noncontextual(const std::vector<Rational>& products, const std::vector<Rational>& means_left,
                          const std::vector<Rational>& means_right);

/// Expectations for a binary system whose contexts are the bunches
/// {R_i^i, R_{i+1}^i} with labels "0" -> -1 and "1" -> +1.
struct CyclicMoments {
  std::vector<Rational> products, left, right;
};
CyclicMoments cyclic_moments(const System& system);

/// Cyclic system of rank n with random bunches (labels "0", "1").
System random_cyclic_system(std::mt19937_64& rng, std::size_t rank);

}  // namespace cbd::testing
