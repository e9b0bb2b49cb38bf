#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace iso {

// Exact element of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {0, 1}; }
  // Parses "p/q" style strings for each component.
  static GaussianRational parse(const std::string& re, const std::string& im);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

 private:
  mpq_class re_;
  mpq_class im_;
};

// One homogeneous piece q * pi^pi_power * 2^(sqrt2_power/2).
struct GradedTerm {
  int pi_power = 0;
  int sqrt2_power = 0;  // 0 or 1 once canonical
  GaussianRational value;

  friend bool operator==(const GradedTerm&, const GradedTerm&) = default;
};

// Exact scalar sum_{m,e} q_{m,e} pi^m 2^{e/2} with q_{m,e} in Q(i).
//
// Canonical form: terms sorted by (pi_power, sqrt2_power), sqrt2_power in
// {0, 1} (even powers of sqrt(2) are folded into q), no zero values. Since pi
// is transcendental and sqrt(2) irrational, a canonical value is zero iff it
// has no terms, so equality tests are exact.
class GradedCoefficient {
 public:
  GradedCoefficient() = default;
  GradedCoefficient(long value);                // NOLINT(google-explicit-constructor)
  GradedCoefficient(GaussianRational value);    // NOLINT(google-explicit-constructor)

  static GradedCoefficient term(GaussianRational value, int pi_power = 0, int sqrt2_power = 0);
  static GradedCoefficient pi(int power = 1) { return term(1, power); }
  static GradedCoefficient sqrt2(int power = 1) { return term(1, 0, power); }
  static GradedCoefficient i() { return GaussianRational::i(); }

  const std::vector<GradedTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  // A single term q * pi^m * 2^{e/2}; only these are invertible.
  bool is_pure() const { return terms_.size() == 1; }

  GradedCoefficient conj() const;
  // Requires is_pure(); throws UsageError otherwise.
  GradedCoefficient inverse() const;
  GradedCoefficient divided_by(const GradedCoefficient& pure) const;

  GradedCoefficient& operator+=(const GradedCoefficient& o);
  GradedCoefficient& operator-=(const GradedCoefficient& o);
  GradedCoefficient& operator*=(const GradedCoefficient& o);
  GradedCoefficient& operator*=(const GaussianRational& q);

  friend GradedCoefficient operator+(GradedCoefficient a, const GradedCoefficient& b) { return a += b; }
  friend GradedCoefficient operator-(GradedCoefficient a, const GradedCoefficient& b) { return a -= b; }
  friend GradedCoefficient operator*(const GradedCoefficient& a, const GradedCoefficient& b);
  friend GradedCoefficient operator*(GradedCoefficient a, const GaussianRational& q) { return a *= q; }
  friend GradedCoefficient operator*(const GaussianRational& q, GradedCoefficient a) { return a *= q; }
  GradedCoefficient operator-() const;

  friend bool operator==(const GradedCoefficient&, const GradedCoefficient&) = default;

  std::complex<double> evaluate(double pi_value = std::numbers::pi) const;
  // Human-readable form, e.g. "(3/2) pi^-1 - 1/4 sqrt2".
  std::string to_string() const;

 private:
  void add_term(int pi_power, int sqrt2_power, const GaussianRational& value);

  std::vector<GradedTerm> terms_;
};

std::ostream& operator<<(std::ostream& os, const GradedCoefficient& c);
std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

}  // namespace iso
