#pragma once

namespace psq {

/// Ai(x) and Ai'(x) for real x. Maclaurin series in extended precision on
/// [-8, 2], Bessel-K forms for x > 2, optimally truncated oscillatory
/// asymptotics for x < -8. Throws OutOfRange for |x| > kAiryMaxArg.
inline constexpr double kAiryMaxArg = 1000.0;

double airy(double x);
double airy_prime(double x);

}  // namespace psq
