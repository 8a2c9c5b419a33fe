#pragma once
// Compensated summation with a certified rounding bound, exact small
// binomials, and the wide-float escalation machinery used by the alternating
// closed-form sums (see closed_form.hpp for why plain double is not enough).

#include <cmath>
#include <cstdint>
#include <stdexcept>

#if defined(COGRELAY_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace cogrelay {

// exp/log/fabs for the float types the closed forms are summed in.
inline double wide_exp(double x) { return std::exp(x); }
inline double wide_log(double x) { return std::log(x); }
inline double wide_fabs(double x) { return std::fabs(x); }
inline long double wide_exp(long double x) { return expl(x); }
inline long double wide_log(long double x) { return logl(x); }
inline long double wide_fabs(long double x) { return fabsl(x); }
#if defined(COGRELAY_HAVE_QUADMATH)
inline __float128 wide_exp(__float128 x) { return expq(x); }
inline __float128 wide_log(__float128 x) { return logq(x); }
inline __float128 wide_fabs(__float128 x) { return fabsq(x); }
#endif

// Effective per-term rounding unit used to certify a summation: 150x the true
// epsilon of the type.  The slack covers the relative error of every factor
// inside a term (exp/pow/binomial chains and the exponential-integral
// evaluation, each worth a few dozen ulp at worst), not just the final
// compensated additions, which contribute O(eps) regardless of term count.
template <typename T>
inline constexpr double wide_eps_effective();
template <>
inline constexpr double wide_eps_effective<long double>() { return 1.7e-17; }
#if defined(COGRELAY_HAVE_QUADMATH)
template <>
inline constexpr double wide_eps_effective<__float128>() { return 3e-32; }
#endif

// Neumaier-compensated sum that also tracks the running sum of |term|, so the
// caller can bound the accumulated rounding error by eps * abs_total.
template <typename T>
struct CompensatedSum {
  T sum{0};
  T compensation{0};
  T abs_total{0};

  void add(T term) { add(term, wide_fabs(term)); }

  // abs_contribution lets a caller adding a pre-summed e.g. cached inner sum
  // propagate that sum's own |term| total into the rounding bound.
  void add(T term, T abs_contribution) {
    abs_total += abs_contribution;
    const T t = sum + term;
    if (wide_fabs(sum) >= wide_fabs(term))
      compensation += (sum - t) + term;
    else
      compensation += (term - t) + sum;
    sum = t;
  }

  T value() const { return sum + compensation; }
};

// Exact binomial coefficient; C(62,31) is the largest that fits, far above
// the N <= 25 the closed forms accept.
inline std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n-k+i) / i is always integral at each step.
    result = result / i * static_cast<std::uint64_t>(n - k + i) +
             result % i * static_cast<std::uint64_t>(n - k + i) / i;
  }
  return result;
}

inline double binomial(int n, int k) {
  return static_cast<double>(binomial_u64(n, k));
}

}  // namespace cogrelay
