#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace trisect {

// Element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1).
// Zero is stored as an empty coefficient vector; rationals live at level 1.
class Cyclo {
 public:
  Cyclo() = default;
  Cyclo(long v);
  Cyclo(const mpq_class& q);

  static Cyclo zeta(int n, long k = 1);
  static Cyclo from_coeffs(int level, std::vector<mpq_class> c);

  int level() const { return level_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1 && level_ == 1; }
  mpq_class rational() const;

  Cyclo lift(int level) const;
  Cyclo galois(long k) const;  // z -> z^k, gcd(k, level) = 1
  Cyclo conj() const { return galois(-1); }
  Cyclo inverse() const;
  std::complex<double> to_complex() const;
  std::string str() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b);

 private:
  void normalize();
  int level_ = 1;
  std::vector<mpq_class> c_;
};

int euler_phi(int n);

// Exact cyclotomic or approximate complex value.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}
  Scalar(int v) : q_(long(v)) {}
  Scalar(const mpq_class& v) : q_(v) {}
  Scalar(const Cyclo& v) : q_(v) {}
  static Scalar approx(std::complex<double> z);
  static Scalar rational(long num, long den) { return Scalar(mpq_class(num, den)); }

  bool exact() const { return exact_; }
  const Cyclo& cyclo() const { return q_; }
  std::complex<double> to_complex() const;
  bool is_zero() const;
  Scalar conj() const;
  Scalar inverse() const;
  std::string str() const;      // exact rendering when exact, else decimal
  std::string decimal() const;  // always decimal

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  // exact comparison when both exact, otherwise within default_tol
  friend bool operator==(const Scalar& a, const Scalar& b);

  static double default_tol;

 private:
  bool exact_ = true;
  Cyclo q_;
  std::complex<double> z_;
};

bool approx_equal(const Scalar& a, const Scalar& b, double tol);
double abs_diff(const Scalar& a, const Scalar& b);
std::string decimal_string(std::complex<double> z);

// coeff * r^k where r is the principal cube root of base (arg in (-pi/3, pi/3])
// and k is 0, 1 or 2. Used for values of the form x^(j/3).
struct RootScalar {
  Scalar coeff = Scalar(1);
  Scalar base = Scalar(1);
  int k = 0;

  RootScalar() = default;
  RootScalar(const Scalar& c) : coeff(c) {}
  // base^(num/3); folds perfect rational cubes into the coefficient
  static RootScalar power(const Scalar& base, long num);

  bool symbolic() const { return k != 0; }
  Scalar cube() const;
  std::complex<double> to_complex() const;
  std::string str() const;
  RootScalar& operator*=(const Scalar& s) {
    coeff *= s;
    return *this;
  }
};

bool same_value(const RootScalar& a, const RootScalar& b, double tol = 1e-9);
std::complex<double> principal_cbrt(std::complex<double> z);

}  // namespace trisect
