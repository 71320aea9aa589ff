#pragma once

// Special functions with complex parameters: log-Gamma, Pochhammer symbols,
// the hypergeometric series 0F1 / 1F1 / 1F2, modified Bessel I (integer order)
// and K (real or purely imaginary order), and the Meijer-G case G^{2,0}_{0,2}.

#include <complex>

namespace gkcs {

using Complex = std::complex<double>;

namespace specfun {

inline constexpr int kMaxSeriesTerms = 20000;
inline constexpr double kSeriesTol = 1e-12;
inline constexpr double kQuadratureTol = 1e-10;
inline constexpr double kPoleTol = 1e-12;

struct SeriesResult {
    Complex value;
    int terms_used = 0;
    /// Largest of the final three term magnitudes; zero when the series terminated exactly.
    double tail_estimate = 0.0;
    bool converged = false;
};

/// True when z is within kPoleTol of 0, -1, -2, ...
bool is_nonpositive_integer(Complex z, double tol = kPoleTol);

/// Principal-branch log-Gamma. Throws PoleError at nonpositive integers.
Complex ln_gamma(Complex z);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1).
Complex pochhammer(Complex a, int k);
double pochhammer(double a, int k);

/// Sum_k (a)_k / ((b)_k k!) x^k.
SeriesResult hyp1f1(Complex a, Complex b, Complex x, double tol = kSeriesTol);

/// Sum_k (a)_k / ((b1)_k (b2)_k k!) x^k. With b2 == conj(b1) and real a, x the
/// imaginary part is checked against tol and dropped.
SeriesResult hyp1f2(Complex a, Complex b1, Complex b2, Complex x, double tol = kSeriesTol);

/// Sum_k x^k / ((b)_k k!).
SeriesResult hyp0f1(Complex b, Complex x, double tol = kSeriesTol);

/// Modified Bessel function of the second kind for real order or purely
/// imaginary order, from K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
/// Throws DomainError for x <= 0 or for an order that is neither real nor imaginary.
double bessel_k(Complex order, double x, double tol = kQuadratureTol);

/// Modified Bessel function of the first kind, integer order, ascending series.
double bessel_i(int order, double x, double tol = kSeriesTol);

/// G^{2,0}_{0,2}(x | -; b1, b2) = 2 x^{(b1+b2)/2} K_{b1-b2}(2 sqrt(x)).
/// Only b1 - b2 a nonnegative integer is supported (UnsupportedOrder otherwise).
double meijer_g2002(double x, double b1, double b2, double tol = kQuadratureTol);

}  // namespace specfun
}  // namespace gkcs
