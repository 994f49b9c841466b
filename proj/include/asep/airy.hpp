#ifndef ASEP_AIRY_HPP_
#define ASEP_AIRY_HPP_

namespace asep::tw {

struct AiryValues {
  double ai;
  double ai_prime;
};

/// Ai(x) and Ai'(x) for |x| <= 200, to about 1e-12 absolute. Throws std::domain_error outside.
AiryValues airy(double x);

/// Same as airy() but returns zeros for x > 200, where Ai underflows. Used
/// when sampling the kernel on unbounded half-lines.
AiryValues airy_or_zero(double x);

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), with the diagonal
/// limit Ai'(x)^2 - x Ai(x)^2 when |x - y| < 1e-6.
double airy_kernel(double x, double y);

/// Kernel from precomputed Airy values.
double airy_kernel(double x, const AiryValues& ax, double y,
                   const AiryValues& ay);

}  // namespace asep::tw

#endif  // ASEP_AIRY_HPP_
