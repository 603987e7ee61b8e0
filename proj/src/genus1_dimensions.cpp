#include "cohft/genus1_dimensions.hpp"

#include <numeric>
#include <sstream>

#include "cohft/rational.hpp"

namespace cohft {

std::uint64_t dim_cusp_forms(int k) {
  if (k < 0) throw DomainError("cusp form weight must be >= 0, got k=" + std::to_string(k));
  if (k % 2 != 0 || k < 12) return 0;
  const auto base = static_cast<std::uint64_t>(k / 12);
  return k % 12 == 2 ? base - 1 : base;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("binomial needs n, k >= 0");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t value = 1;
  for (int i = 1; i <= k; ++i) {
    // value * (n-k+i) / i is exact; cancel the common factor first.
    const auto divisor = static_cast<std::uint64_t>(i);
    const std::uint64_t common = std::gcd(value, divisor);
    value /= common;
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i) / (divisor / common);
    if (__builtin_mul_overflow(value, factor, &value)) {
      throw DomainError("binomial(" + std::to_string(n) + "," + std::to_string(k) + ") overflows");
    }
  }
  return value;
}

std::uint64_t dim_grw_k(int n, int k) {
  if (n < 1) throw DomainError("M_{1,n} needs n >= 1, got n=" + std::to_string(n));
  if (k < 0) throw DomainError("degree must be >= 0, got k=" + std::to_string(k));
  if (k == 0) return 1;
  if (n < k) return 0;
  return 2 * dim_cusp_forms(k + 1) * binomial(n, k);
}

std::uint64_t dim_minimal(int n, int j) {
  if (n < 1) throw DomainError("M_{1,n} needs n >= 1, got n=" + std::to_string(n));
  if (j < 0 || j > 2 * n) {
    throw DomainError("degree j=" + std::to_string(j) + " outside 0.." + std::to_string(2 * n) + " for M_{1," +
                      std::to_string(n) + "}");
  }
  return dim_grw_k(n, 2 * n - j);
}

int genus0_minimal_check(int n, int j) {
  if (n < 3) throw DomainError("M_{0,n} needs n >= 3, got n=" + std::to_string(n));
  return j == 2 * (n - 3) ? 1 : 0;
}

std::string dims_csv(int n_max, bool grw) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  std::ostringstream out;
  if (grw) {
    out << "n,k,dim_grw\n";
    for (int n = 1; n <= n_max; ++n) {
      for (int k = 0; k <= n; ++k) out << n << ',' << k << ',' << dim_grw_k(n, k) << '\n';
    }
  } else {
    out << "n,j,dim_minimal\n";
    for (int n = 1; n <= n_max; ++n) {
      for (int j = 0; j <= 2 * n; ++j) out << n << ',' << j << ',' << dim_minimal(n, j) << '\n';
    }
  }
  return out.str();
}

}  // namespace cohft
