#include "trisect/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "trisect/errors.hpp"

namespace trisect {

namespace {

using IntPoly = std::vector<long long>;

// Coefficients of the N-th cyclotomic polynomial, low degree first (monic).
const IntPoly& cyclotomic(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<IntPoly>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    const IntPoly& f = cyclotomic(d);
    int df = int(f.size()) - 1;
    int dp = int(p.size()) - 1;
    IntPoly q(dp - df + 1, 0);
    for (int i = dp; i >= df; --i) {
      long long t = p[i];
      if (!t) continue;
      q[i - df] = t;
      for (int j = 0; j <= df; ++j) p[i - df + j] -= t * f[j];
    }
    p = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<IntPoly>(p);
  return *slot;
}

// reduce a polynomial in zeta_n modulo Phi_n
std::vector<mpq_class> reduce(std::vector<mpq_class> poly, int n) {
  const IntPoly& f = cyclotomic(n);
  int phi = int(f.size()) - 1;
  for (int i = int(poly.size()) - 1; i >= phi; --i) {
    if (sgn(poly[i]) == 0) continue;
    mpq_class t = poly[i];
    for (int j = 0; j < phi; ++j)
      if (f[j]) poly[i - phi + j] -= t * long(f[j]);
    poly[i] = 0;
  }
  poly.resize(phi);
  return poly;
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

int euler_phi(int n) { return int(cyclotomic(n).size()) - 1; }

Cyclo::Cyclo(long v) {
  if (v) c_.push_back(mpq_class(v));
}

Cyclo::Cyclo(const mpq_class& q) {
  if (sgn(q)) c_.push_back(q);
}

Cyclo Cyclo::zeta(int n, long k) {
  if (n < 1) throw InvalidInput("cyclotomic level must be positive");
  long e = ((k % n) + n) % n;
  std::vector<mpq_class> poly(e + 1);
  poly[e] = 1;
  return from_coeffs(n, reduce(std::move(poly), n));
}

Cyclo Cyclo::from_coeffs(int level, std::vector<mpq_class> c) {
  Cyclo r;
  r.level_ = level;
  r.c_ = reduce(std::move(c), level);
  r.normalize();
  return r;
}

void Cyclo::normalize() {
  bool any = false, nonconst = false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i])) {
      any = true;
      if (i) nonconst = true;
    }
  if (!any) {
    c_.clear();
    level_ = 1;
  } else if (!nonconst) {
    c_.resize(1);
    level_ = 1;
  }
}

mpq_class Cyclo::rational() const {
  if (!is_rational()) throw InternalConsistency("cyclotomic value is not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

Cyclo Cyclo::lift(int level) const {
  if (level == level_ || c_.empty()) return *this;
  if (level % level_) throw InternalConsistency("bad cyclotomic lift");
  int r = level / level_;
  std::vector<mpq_class> poly((c_.size() - 1) * r + 1);
  for (size_t j = 0; j < c_.size(); ++j) poly[j * r] = c_[j];
  Cyclo out;
  out.level_ = level;
  out.c_ = reduce(std::move(poly), level);
  return out;
}

Cyclo Cyclo::galois(long k) const {
  if (c_.empty() || level_ == 1) return *this;
  int n = level_;
  std::vector<mpq_class> poly(n);
  long kk = ((k % n) + n) % n;
  for (size_t j = 0; j < c_.size(); ++j) poly[(j * kk) % n] += c_[j];
  return from_coeffs(n, std::move(poly));
}

Cyclo Cyclo::inverse() const {
  if (c_.empty()) throw Error("division by zero");
  if (level_ == 1) return Cyclo(mpq_class(1) / c_[0]);
  Cyclo prod(1);
  for (int k = 2; k < level_; ++k)
    if (std::gcd(k, level_) == 1) prod *= galois(k);
  Cyclo norm = *this * prod;
  if (!norm.is_rational()) throw InternalConsistency("norm is not rational");
  return prod * Cyclo(mpq_class(1) / norm.rational());
}

std::complex<double> Cyclo::to_complex() const {
  std::complex<long double> s = 0;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (!sgn(c_[j])) continue;
    long double a = two_pi * (long double)j / (long double)level_;
    s += (long double)c_[j].get_d() * std::complex<long double>(std::cos(a), std::sin(a));
  }
  return {double(s.real()), double(s.imag())};
}

std::string Cyclo::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t j = 0; j < c_.size(); ++j) {
    const mpq_class& q = c_[j];
    if (!sgn(q)) continue;
    std::string mag = mpq_class(abs(q)).get_str();
    std::string term;
    if (j == 0) {
      term = mag;
    } else {
      std::string z = "zeta" + std::to_string(level_);
      if (j > 1) z += "^" + std::to_string(j);
      term = (mag == "1") ? z : mag + "*" + z;
    }
    if (out.empty())
      out = (sgn(q) < 0 ? "-" : "") + term;
    else
      out += (sgn(q) < 0 ? " - " : " + ") + term;
  }
  return out;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  if (level_ == o.level_) {
    for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  } else if (o.level_ == 1) {
    c_[0] += o.c_[0];
  } else if (level_ == 1) {
    mpq_class q = c_[0];
    *this = o;
    c_[0] += q;
  } else {
    int l = lcm_int(level_, o.level_);
    Cyclo a = lift(l), b = o.lift(l);
    for (size_t j = 0; j < a.c_.size(); ++j) a.c_[j] += b.c_[j];
    *this = std::move(a);
  }
  normalize();
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (c_.empty()) return *this;
  if (o.c_.empty()) {
    c_.clear();
    level_ = 1;
    return *this;
  }
  if (o.level_ == 1) {
    for (auto& q : c_) q *= o.c_[0];
    return *this;
  }
  if (level_ == 1) {
    mpq_class q = c_[0];
    *this = o;
    for (auto& x : c_) x *= q;
    return *this;
  }
  int l = lcm_int(level_, o.level_);
  Cyclo a = lift(l), b = o.lift(l);
  std::vector<mpq_class> poly(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (!sgn(a.c_[i])) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (sgn(b.c_[j])) poly[i + j] += a.c_[i] * b.c_[j];
  }
  level_ = l;
  c_ = reduce(std::move(poly), l);
  normalize();
  return *this;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && b.c_.empty();
  if (a.level_ == b.level_) return a.c_ == b.c_;
  if (a.level_ == 1 || b.level_ == 1) return false;  // both normalized
  int l = lcm_int(a.level_, b.level_);
  return a.lift(l).c_ == b.lift(l).c_;
}

// ---------------------------------------------------------------- Scalar

double Scalar::default_tol = 1e-9;

Scalar Scalar::approx(std::complex<double> z) {
  Scalar s;
  s.exact_ = false;
  s.z_ = z;
  return s;
}

std::complex<double> Scalar::to_complex() const { return exact_ ? q_.to_complex() : z_; }

bool Scalar::is_zero() const { return exact_ ? q_.is_zero() : std::abs(z_) <= default_tol; }

Scalar Scalar::conj() const { return exact_ ? Scalar(q_.conj()) : approx(std::conj(z_)); }

Scalar Scalar::inverse() const {
  if (exact_) return Scalar(q_.inverse());
  if (z_ == std::complex<double>(0)) throw Error("division by zero");
  return approx(1.0 / z_);
}

std::string decimal_string(std::complex<double> z) {
  auto clean = [](double v) { return std::abs(v) < 1e-13 ? 0.0 : v; };
  double re = clean(z.real()), im = clean(z.imag());
  char buf[96];
  if (im == 0)
    std::snprintf(buf, sizeof buf, "%.12g", re);
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
  return buf;
}

std::string Scalar::str() const { return exact_ ? q_.str() : decimal_string(z_); }

std::string Scalar::decimal() const { return decimal_string(to_complex()); }

Scalar Scalar::operator-() const { return exact_ ? Scalar(-q_) : approx(-z_); }

Scalar& Scalar::operator+=(const Scalar& o) {
  if (exact_ && o.exact_)
    q_ += o.q_;
  else
    *this = approx(to_complex() + o.to_complex());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (exact_ && o.exact_)
    q_ -= o.q_;
  else
    *this = approx(to_complex() - o.to_complex());
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (exact_ && o.exact_)
    q_ *= o.q_;
  else
    *this = approx(to_complex() * o.to_complex());
  return *this;
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  auto x = a.to_complex(), y = b.to_complex();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

double abs_diff(const Scalar& a, const Scalar& b) {
  if (a.exact() && b.exact() && a.cyclo() == b.cyclo()) return 0.0;
  double d = std::abs(a.to_complex() - b.to_complex());
  // exact values that differ below double resolution still count as a residual
  if (a.exact() && b.exact() && d == 0.0) d = 1e-300;
  return d;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.q_ == b.q_;
  return approx_equal(a, b, Scalar::default_tol);
}

// ------------------------------------------------------------ RootScalar

std::complex<double> principal_cbrt(std::complex<double> z) {
  if (z == std::complex<double>(0)) return 0;
  double r = std::cbrt(std::abs(z));
  double th = std::arg(z);
  if (z.imag() == 0 && z.real() < 0) th = M_PI;
  return std::polar(r, th / 3);
}

namespace {

Scalar ipow(const Scalar& b, long e) {
  Scalar base = e < 0 ? b.inverse() : b;
  Scalar r(1);
  for (long i = 0; i < std::labs(e); ++i) r *= base;
  return r;
}

// exact principal cube root of a rational, if it lies in a cyclotomic field
bool rational_cbrt(const mpq_class& q, Scalar& out) {
  mpz_class n = abs(q.get_num()), d = q.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), 3)) return false;
  if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), 3)) return false;
  out = Scalar(mpq_class(rn, rd));
  if (sgn(q) < 0) out *= Scalar(Cyclo::zeta(6, 1));
  return true;
}

// n = s^3 t, pulling out cubes of primes below a small bound
void split_cube(mpz_class n, mpz_class& s, mpz_class& t) {
  s = 1;
  for (unsigned long p = 2; p < 100000 && mpz_class(p) * p * p <= n; ++p) {
    mpz_class p3 = mpz_class(p) * p * p;
    while (n % p3 == 0) {
      n /= p3;
      s *= p;
    }
  }
  t = n;
}

}  // namespace

RootScalar RootScalar::power(const Scalar& base, long num) {
  if (base.is_zero()) throw Error("zero base in fractional power");
  long q = num >= 0 ? num / 3 : -((-num + 2) / 3);
  int k = int(num - 3 * q);
  RootScalar r;
  r.coeff = ipow(base, q);
  r.base = base;
  r.k = k;
  if (k == 0) {
    r.base = Scalar(1);
    return r;
  }
  Scalar root;
  if (!base.exact()) {
    root = Scalar::approx(principal_cbrt(base.to_complex()));
  } else if (!(base.cyclo().is_rational() && rational_cbrt(base.cyclo().rational(), root))) {
    if (base.cyclo().is_rational() && sgn(base.cyclo().rational()) > 0) {
      // positive rational a/b: keep an integer, cube-free-ish base
      mpq_class q = base.cyclo().rational();
      mpz_class sa, ta, sb, tb;
      split_cube(q.get_num(), sa, ta);
      split_cube(q.get_den(), sb, tb);
      r.base = Scalar(mpq_class(ta * tb * tb));
      mpq_class f(sa, sb * tb);
      f.canonicalize();
      r.coeff *= ipow(Scalar(f), k);
    }
    return r;
  }
  r.coeff *= ipow(root, k);
  r.base = Scalar(1);
  r.k = 0;
  return r;
}

Scalar RootScalar::cube() const {
  Scalar c = coeff * coeff * coeff;
  for (int i = 0; i < k; ++i) c *= base;
  return c;
}

std::complex<double> RootScalar::to_complex() const {
  std::complex<double> r = coeff.to_complex();
  std::complex<double> root = principal_cbrt(base.to_complex());
  for (int i = 0; i < k; ++i) r *= root;
  return r;
}

std::string RootScalar::str() const {
  if (k == 0) return coeff.str();
  std::string b = base.str();
  std::string pw = "(" + b + ")^(" + std::to_string(k) + "/3)";
  std::string c = coeff.str();
  if (c == "1") return pw;
  return "(" + c + ")*" + pw;
}

bool same_value(const RootScalar& a, const RootScalar& b, double tol) {
  auto x = a.to_complex(), y = b.to_complex();
  double scale = std::max({1.0, std::abs(x), std::abs(y)});
  bool close = std::abs(x - y) <= tol * scale;
  if (a.coeff.exact() && b.coeff.exact() && a.base.exact() && b.base.exact()) {
    // cubes decide exactly; the decimal check pins the cube root of unity
    return a.cube().cyclo() == b.cube().cyclo() && std::abs(x - y) <= 1e-6 * scale;
  }
  return close;
}

}  // namespace trisect
