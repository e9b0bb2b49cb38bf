#include "oracles.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <functional>
#include <tuple>

#include "iso/phifunc.hpp"

namespace oracle {

using iso::GaussianRational;
using iso::MultiIndex;

namespace {

void accumulate(Poly& p, std::pair<int, int> key, const GradedCoefficient& value) {
  if (value.is_zero()) return;
  auto [it, inserted] = p.emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) p.erase(it);
  }
}

Poly d_dz(const Poly& f) {
  Poly out;
  for (const auto& [k, c] : f) {
    if (k.first > 0) accumulate(out, {k.first - 1, k.second}, c * GaussianRational(k.first));
  }
  return out;
}

Poly d_dzbar(const Poly& f) {
  Poly out;
  for (const auto& [k, c] : f) {
    if (k.second > 0) accumulate(out, {k.first, k.second - 1}, c * GaussianRational(k.second));
  }
  return out;
}

Poly scaled(const Poly& f, const GradedCoefficient& s) {
  Poly out;
  for (const auto& [k, c] : f) accumulate(out, k, c * s);
  return out;
}

Poly sum(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [k, c] : b) accumulate(out, k, c);
  return out;
}

}  // namespace

Poly to_poly(const JetSeries& h) {
  Poly out;
  for (const auto& [beta, c] : h.terms()) out[{beta.b1, beta.b2}] = c;
  return out;
}

JetSeries to_jet(const Poly& p, int truncation) {
  JetSeries out(truncation);
  for (const auto& [k, c] : p) out.set({k.first, k.second}, c);
  return out;
}

Poly product(const Poly& f, const Poly& g, int truncation) {
  Poly out;
  for (const auto& [a, ca] : f) {
    for (const auto& [b, cb] : g) {
      const std::pair<int, int> k{a.first + b.first, a.second + b.second};
      if (k.first + k.second <= truncation) accumulate(out, k, ca * cb);
    }
  }
  return out;
}

Poly bracket(const Poly& f, const Poly& g, int truncation) {
  const Poly left = product(d_dzbar(f), d_dz(g), truncation);
  const Poly right = product(d_dz(f), d_dzbar(g), truncation);
  return scaled(sum(left, scaled(right, -1)), GradedCoefficient::i());
}

GradedCoefficient sigma_bruteforce(const JetSeries& h, int d, int k) {
  std::vector<std::pair<std::pair<int, int>, GradedCoefficient>> support;
  for (const auto& [beta, c] : h.terms()) {
    if (beta.degree() >= 3) support.push_back({{beta.b1, beta.b2}, c});
  }
  GradedCoefficient total;
  std::function<void(int, int, int, const GradedCoefficient&)> walk = [&](int left, int r1, int r2,
                                                                          const GradedCoefficient& acc) {
    if (left == 0) {
      if (r1 == 0 && r2 == 0) total += acc;
      return;
    }
    for (const auto& [b, c] : support) {
      const int s1 = r1 - b.first;
      const int s2 = r2 - b.second;
      if (s1 < 0 || s2 < 0 || s1 + s2 < 3 * (left - 1)) continue;
      walk(left - 1, s1, s2, acc * c);
    }
  };
  walk(k, d + k, d + k, GradedCoefficient{1});
  // (2 pi)^-k
  GradedCoefficient scale{1};
  for (int j = 0; j < k; ++j) scale *= GradedCoefficient::term(GaussianRational(mpq_class(1, 2)), -1);
  return total * scale;
}

long long tuple_count_bruteforce(int d, int k) {
  const int target = d + k;
  std::map<std::tuple<int, int, int>, long long> memo;
  std::function<long long(int, int, int)> count = [&](int left, int r1, int r2) -> long long {
    if (left == 0) return (r1 == 0 && r2 == 0) ? 1 : 0;
    const auto key = std::make_tuple(left, r1, r2);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    long long n = 0;
    for (int a = 0; a <= r1; ++a) {
      for (int b = 0; b <= r2; ++b) {
        if (a + b >= 3) n += count(left - 1, r1 - a, r2 - b);
      }
    }
    memo[key] = n;
    return n;
  };
  return count(k, target, target);
}

std::map<int, GradedCoefficient> naive_normal_form(const JetSeries& h, int order) {
  Poly current;
  for (const auto& [beta, c] : h.terms()) {
    if (beta.degree() >= 1 && beta.degree() <= order) current[{beta.b1, beta.b2}] = c;
  }
  const GradedCoefficient two_pi_i = GradedCoefficient::term(GaussianRational(0, 2), 1);
  for (int n = 3; n <= order; ++n) {
    Poly s;
    for (const auto& [k, c] : current) {
      if (k.first + k.second != n || k.first == k.second) continue;
      const GradedCoefficient lambda = two_pi_i * GaussianRational(k.first - k.second);
      s[k] = c.divided_by(lambda);
    }
    if (s.empty()) continue;
    Poly next = current;
    Poly term = current;
    for (int j = 1; !term.empty(); ++j) {
      term = scaled(bracket(s, term, order), GaussianRational(mpq_class(1, j)));
      next = sum(next, term);
    }
    current = std::move(next);
  }
  std::map<int, GradedCoefficient> c;
  for (int d = 1; 2 * (d + 1) <= order; ++d) {
    auto it = current.find({d + 1, d + 1});
    c[d] = it == current.end() ? GradedCoefficient{} : it->second;
  }
  return c;
}

std::complex<double> phi_series(std::span<const std::complex<double>> xi, int terms) {
  const int k = static_cast<int>(xi.size());
  std::vector<std::complex<double>> nodes(static_cast<std::size_t>(k));
  std::complex<double> tail = 0.0;
  for (int j = k - 1; j >= 0; --j) {
    tail += xi[static_cast<std::size_t>(j)];
    nodes[static_cast<std::size_t>(j)] = tail;
  }
  // h[n] for the nodes processed so far: h^{(j)}_n = h^{(j-1)}_n + x_j h^{(j)}_{n-1}
  std::vector<std::complex<double>> h(static_cast<std::size_t>(terms), 0.0);
  h[0] = 1.0;
  for (const auto& x : nodes) {
    for (int n = 1; n < terms; ++n) h[static_cast<std::size_t>(n)] += x * h[static_cast<std::size_t>(n - 1)];
  }
  std::complex<double> total = 0.0;
  double inv_factorial = 1.0;
  for (int j = 2; j <= k; ++j) inv_factorial /= j;  // 1 / k!
  for (int n = 0; n < terms; ++n) {
    total += h[static_cast<std::size_t>(n)] * inv_factorial;
    inv_factorial /= (n + k + 1);
  }
  return total;
}

std::complex<double> phi_taylor(std::span<const std::complex<double>> xi) {
  const int k = static_cast<int>(xi.size());
  std::complex<double> total = 0.0;
  for (int l = 1; l <= k; ++l) {
    std::complex<double> tail = 0.0;
    for (int j = l; j <= k; ++j) tail += xi[static_cast<std::size_t>(j - 1)];
    // e^tail - 1 = sum_{j >= 1} tail^j / j!
    std::complex<double> numerator = 0.0;
    std::complex<double> power = 1.0;
    for (int j = 1; j < 200; ++j) {
      power *= tail / static_cast<double>(j);
      numerator += power;
      if (std::abs(power) < 1e-30 * std::max(1.0, std::abs(numerator))) break;
    }
    // rho^-_{1,l-1,0} = (-1)^{l-1} prod_{m=1}^{l-1} (xi_m + ... + xi_{l-1})
    std::complex<double> den = 1.0;
    for (int m = 1; m <= l - 1; ++m) {
      std::complex<double> s = 0.0;
      for (int j = m; j <= l - 1; ++j) s += xi[static_cast<std::size_t>(j - 1)];
      den *= -s;
    }
    // rho^+_{l,k,0} = prod_{n=l}^{k} (xi_l + ... + xi_n)
    for (int n = l; n <= k; ++n) {
      std::complex<double> s = 0.0;
      for (int j = l; j <= n; ++j) s += xi[static_cast<std::size_t>(j - 1)];
      den *= s;
    }
    total += numerator / den;
  }
  return total;
}

std::complex<double> phi_numeric_limit(const std::vector<int>& n) {
  using Real = boost::multiprecision::cpp_bin_float_50;
  using Complex = boost::multiprecision::cpp_complex_50;
  static constexpr int primes[] = {1, 3, 5, 7, 11, 13};
  const int k = static_cast<int>(n.size());
  const Real two_pi = 2 * boost::math::constants::pi<Real>();

  constexpr int levels = 10;
  std::vector<Real> t(levels);
  std::vector<Complex> f(levels);
  for (int i = 0; i < levels; ++i) {
    t[static_cast<std::size_t>(i)] = Real(1) / (16 * (1 << i));
    std::vector<Complex> xi;
    for (int j = 0; j < k; ++j) {
      const Real v = boost::multiprecision::sqrt(Real(primes[j]));
      xi.emplace_back(t[static_cast<std::size_t>(i)] * v, two_pi * n[static_cast<std::size_t>(j)]);
    }
    f[static_cast<std::size_t>(i)] = iso::phi_closed<Complex>(std::span<const Complex>(xi));
  }
  // Neville's scheme evaluated at t = 0.
  for (int m = 1; m < levels; ++m) {
    for (int i = levels - 1; i >= m; --i) {
      const auto ui = static_cast<std::size_t>(i);
      const auto um = static_cast<std::size_t>(i - m);
      f[ui] = (Complex(t[um]) * f[ui] - Complex(t[ui]) * f[ui - 1]) / Complex(t[um] - t[ui]);
    }
  }
  const Complex& z = f.back();
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

JetSeries random_jet(std::mt19937_64& rng, int truncation, int lo, int hi, double density, bool real) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 4);
  std::bernoulli_distribution keep(density);
  auto rational = [&] {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
  };
  JetSeries out(truncation);
  for (int deg = lo; deg <= hi; ++deg) {
    for (int b1 = deg; b1 >= 0; --b1) {
      const MultiIndex beta{b1, deg - b1};
      if (real && beta.b1 < beta.b2) continue;
      if (!keep(rng)) continue;
      if (!real) {
        out.set(beta, GaussianRational(rational(), rational()));
      } else if (beta.radial()) {
        out.set(beta, GaussianRational(rational()));
      } else {
        const GaussianRational q(rational(), rational());
        out.set(beta, q);
        out.set(beta.swapped(), q.conj());
      }
    }
  }
  return out;
}

bool close(std::complex<double> a, std::complex<double> b, double rel, double floor) {
  return std::abs(a - b) <= rel * std::max(std::abs(b), floor);
}

}  // namespace oracle
