#pragma once

namespace primerace {

/// Bessel function of the first kind of order zero, to about 1e-11 absolute.
/// Power series below |x| = 12, Hankel asymptotic expansion above.
double bessel_j0(double x);

}  // namespace primerace
