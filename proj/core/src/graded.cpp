#include "iso/graded.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "iso/errors.hpp"

namespace iso {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
  mpq_class r;
  mpq_class i;
  if (r.set_str(re, 10) != 0 || i.set_str(im, 10) != 0) {
    throw ParseError("malformed rational: '" + re + "', '" + im + "'");
  }
  if (sgn(r.get_den()) == 0 || sgn(i.get_den()) == 0) {
    throw ParseError("zero denominator in rational");
  }
  r.canonicalize();
  i.canonicalize();
  return {r, i};
}

GaussianRational GaussianRational::inverse() const {
  mpq_class norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) throw UsageError("division by zero Gaussian rational");
  return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return im_.get_str() + "i";
  std::string im = im_.get_str();
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im + "i";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.to_string(); }

GradedCoefficient::GradedCoefficient(long value) : GradedCoefficient(GaussianRational(value)) {}

GradedCoefficient::GradedCoefficient(GaussianRational value) {
  if (!value.is_zero()) terms_.push_back({0, 0, std::move(value)});
}

GradedCoefficient GradedCoefficient::term(GaussianRational value, int pi_power, int sqrt2_power) {
  GradedCoefficient out;
  out.add_term(pi_power, sqrt2_power, value);
  return out;
}

void GradedCoefficient::add_term(int pi_power, int sqrt2_power, const GaussianRational& value) {
  if (value.is_zero()) return;
  GaussianRational v = value;
  // Fold 2^{e/2} with even e into the rational part.
  if (sqrt2_power < 0 || sqrt2_power > 1) {
    int half = sqrt2_power >= 0 ? sqrt2_power / 2 : -((-sqrt2_power + 1) / 2);
    sqrt2_power -= 2 * half;
    mpq_class scale = 1;
    if (half > 0) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(half));
      scale = mpq_class(p);
    } else if (half < 0) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-half));
      scale = mpq_class(1, 1) / mpq_class(p);
    }
    v *= GaussianRational(scale);
  }
  auto key_less = [](const GradedTerm& t, std::pair<int, int> key) {
    return std::pair{t.pi_power, t.sqrt2_power} < key;
  };
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{pi_power, sqrt2_power}, key_less);
  if (it != terms_.end() && it->pi_power == pi_power && it->sqrt2_power == sqrt2_power) {
    it->value += v;
    if (it->value.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, GradedTerm{pi_power, sqrt2_power, std::move(v)});
  }
}

bool GradedCoefficient::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const GradedTerm& t) { return t.value.is_real(); });
}

GradedCoefficient GradedCoefficient::conj() const {
  GradedCoefficient out = *this;
  for (auto& t : out.terms_) t.value = t.value.conj();
  return out;
}

GradedCoefficient GradedCoefficient::inverse() const {
  if (!is_pure()) {
    throw UsageError("only a single graded term q*pi^m*2^(e/2) can be inverted, got " + to_string());
  }
  const auto& t = terms_.front();
  // (q pi^m 2^{e/2})^{-1} = q^{-1} pi^{-m} 2^{-e/2}
  return term(t.value.inverse(), -t.pi_power, -t.sqrt2_power);
}

GradedCoefficient GradedCoefficient::divided_by(const GradedCoefficient& pure) const {
  return *this * pure.inverse();
}

GradedCoefficient& GradedCoefficient::operator+=(const GradedCoefficient& o) {
  for (const auto& t : o.terms_) add_term(t.pi_power, t.sqrt2_power, t.value);
  return *this;
}

GradedCoefficient& GradedCoefficient::operator-=(const GradedCoefficient& o) {
  for (const auto& t : o.terms_) add_term(t.pi_power, t.sqrt2_power, -t.value);
  return *this;
}

GradedCoefficient& GradedCoefficient::operator*=(const GradedCoefficient& o) {
  *this = *this * o;
  return *this;
}

GradedCoefficient& GradedCoefficient::operator*=(const GaussianRational& q) {
  if (q.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.value *= q;
  return *this;
}

GradedCoefficient operator*(const GradedCoefficient& a, const GradedCoefficient& b) {
  GradedCoefficient out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      out.add_term(x.pi_power + y.pi_power, x.sqrt2_power + y.sqrt2_power, x.value * y.value);
    }
  }
  return out;
}

GradedCoefficient GradedCoefficient::operator-() const {
  GradedCoefficient out = *this;
  for (auto& t : out.terms_) t.value = -t.value;
  return out;
}

std::complex<double> GradedCoefficient::evaluate(double pi_value) const {
  std::complex<double> sum = 0.0;
  for (const auto& t : terms_) {
    double scale = std::pow(pi_value, t.pi_power) * (t.sqrt2_power ? std::numbers::sqrt2 : 1.0);
    sum += t.value.to_complex() * scale;
  }
  return sum;
}

std::string GradedCoefficient::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool complex = !t.value.is_real() && sgn(t.value.re()) != 0;
    os << (complex ? "(" : "") << t.value.to_string() << (complex ? ")" : "");
    if (t.pi_power != 0) os << "*pi^" << t.pi_power;
    if (t.sqrt2_power != 0) os << "*sqrt2";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GradedCoefficient& c) { return os << c.to_string(); }

}  // namespace iso
