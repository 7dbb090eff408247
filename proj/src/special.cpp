#include "gschur/special.hpp"

#include <cmath>
#include <limits>

#include "gschur/errors.hpp"

extern "C" double lgamma_r(double, int*);

namespace gschur {

double lgamma_pos(double x) {
  int sign = 0;
  return lgamma_r(x, &sign);
}

namespace {

constexpr int kMaxIter = 20000000;
const double kEps = std::numeric_limits<double>::epsilon();

// Lower series: P(a,x) = x^a e^-x / Gamma(a+1) * sum_k x^k / ((a+1)...(a+k)).
double lower_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) {
      double lg = a * std::log(x) - x - lgamma_pos(a);
      return sum * std::exp(lg);
    }
  }
  raise(Errc::SeriesDivergence, "incomplete gamma series failed to converge");
}

// Modified Lentz continued fraction for Q(a,x), valid for x >= a + 1.
double upper_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      double lg = a * std::log(x) - x - lgamma_pos(a);
      return std::exp(lg) * h;
    }
  }
  raise(Errc::SeriesDivergence, "incomplete gamma continued fraction failed to converge");
}

}  // namespace

double reg_lower_gamma(double a, double x) {
  if (!(a > 0.0)) raise(Errc::InvalidArgument, "reg_lower_gamma: shape must be positive");
  if (std::isnan(x)) raise(Errc::InvalidArgument, "reg_lower_gamma: x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_series(a, x);
  double q = upper_cf(a, x);
  return 1.0 - q;
}

double reg_upper_gamma(double a, double x) {
  if (!(a > 0.0)) raise(Errc::InvalidArgument, "reg_upper_gamma: shape must be positive");
  if (std::isnan(x)) raise(Errc::InvalidArgument, "reg_upper_gamma: x is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x >= a + 1.0) return upper_cf(a, x);
  return 1.0 - lower_series(a, x);
}

double gamma_pdf(double shape, double rate, double x) {
  if (!(shape > 0.0) || !(rate > 0.0))
    raise(Errc::NonpositiveShapeOrRate, "gamma_pdf: shape and rate must be positive");
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return rate;
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
                  lgamma_pos(shape));
}

}  // namespace gschur
