#pragma once

// Dimensions of spaces of minimal classes on M_{1,n}, through the weight
// graded pieces Gr^W_k H^k(M_{1,n}) built from level-one cusp forms, and the
// genus-0 statement that only the point class is minimal.

#include <cstdint>
#include <string>

namespace cohft {

/// dim S_k for SL(2,Z): 0 for odd k or k < 12, otherwise floor(k/12) - 1
/// when k = 2 mod 12 and floor(k/12) else.
std::uint64_t dim_cusp_forms(int k);

/// Exact binomial coefficient; throws DomainError on overflow.
std::uint64_t binomial(int n, int k);

/// dim Gr^W_k H^k(M_{1,n}): 1 for k = 0, 0 for n < k, otherwise
/// 2 dim S_{k+1} * C(n,k).
std::uint64_t dim_grw_k(int n, int k);

/// dim of minimal classes in H^j(M_{1,n}) = dim_grw_k(n, 2n - j).
std::uint64_t dim_minimal(int n, int j);

/// 1 iff j = 2(n-3), the degree of the point class of M_{0,n}.
int genus0_minimal_check(int n, int j);

/// CSV "n,j,dim_minimal" for 1 <= n <= n_max and 0 <= j <= 2n, or
/// "n,k,dim_grw" for 0 <= k <= n when grw is set.
std::string dims_csv(int n_max, bool grw);

}  // namespace cohft
