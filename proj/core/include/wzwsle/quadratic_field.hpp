#ifndef WZWSLE_QUADRATIC_FIELD_HPP
#define WZWSLE_QUADRATIC_FIELD_HPP

#include "wzwsle/rational.hpp"

#include <array>
#include <complex>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wzwsle {

/// Element a + b*sqrt(d) of a real quadratic extension of Q. d = 0 marks a
/// pure rational; perfect-square radicands are folded into the rational part
/// on construction, keeping the zero test exact.
class QuadExt {
public:
  QuadExt() = default;
  QuadExt(Rational a) : m_a(std::move(a)) {}
  QuadExt(long a) : m_a(a) {}
  QuadExt(Rational a, Rational b, long d) : m_a(std::move(a)), m_b(std::move(b)), m_d(d)
  {
    if (m_d < 0) throw std::invalid_argument("QuadExt: negative radicand");
    if (m_b == 0) { m_d = 0; return; }
    const long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(m_d))));
    if (s * s == m_d) {
      m_a += m_b * s;
      m_b = 0;
      m_d = 0;
    }
  }

  static QuadExt sqrt_of(long d) { return QuadExt(0, 1, d); }

  const Rational& rational_part() const { return m_a; }
  const Rational& radical_part() const { return m_b; }
  long radicand() const { return m_d; }

  bool is_zero() const { return m_a == 0 && m_b == 0; }

  double value() const { return to_double(m_a) + to_double(m_b) * std::sqrt(static_cast<double>(m_d)); }

  QuadExt operator-() const { return QuadExt(-m_a, -m_b, m_d); }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y)
  {
    const long d = merge_radicand(x, y);
    return QuadExt(x.m_a + y.m_a, x.m_b + y.m_b, d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y)
  {
    const long d = merge_radicand(x, y);
    return QuadExt(x.m_a * y.m_a + x.m_b * y.m_b * d, x.m_a * y.m_b + x.m_b * y.m_a, d);
  }
  QuadExt& operator+=(const QuadExt& y) { *this = *this + y; return *this; }
  QuadExt& operator-=(const QuadExt& y) { *this = *this - y; return *this; }
  QuadExt& operator*=(const QuadExt& y) { *this = *this * y; return *this; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) { return (x - y).is_zero(); }

private:
  static long merge_radicand(const QuadExt& x, const QuadExt& y)
  {
    if (x.m_d == 0) return y.m_d;
    if (y.m_d == 0 || x.m_d == y.m_d) return x.m_d;
    throw std::invalid_argument("QuadExt: incompatible radicands");
  }

  Rational m_a = 0;
  Rational m_b = 0;
  long m_d = 0;
};

/// Dense univariate polynomial over QuadExt, coefficients in ascending order.
class QuadPoly {
public:
  QuadPoly() = default;
  explicit QuadPoly(std::vector<QuadExt> coeffs) : m_c(std::move(coeffs)) { trim(); }
  static QuadPoly constant(QuadExt c) { return QuadPoly({std::move(c)}); }
  /// c0 + c1*x
  static QuadPoly linear(QuadExt c0, QuadExt c1) { return QuadPoly({std::move(c0), std::move(c1)}); }

  int degree() const { return static_cast<int>(m_c.size()) - 1; }
  bool is_zero() const { return m_c.empty(); }
  const std::vector<QuadExt>& coeffs() const { return m_c; }
  QuadExt coeff(std::size_t i) const { return i < m_c.size() ? m_c[i] : QuadExt(); }

  std::complex<double> eval(std::complex<double> x) const
  {
    std::complex<double> acc = 0;
    for (auto it = m_c.rbegin(); it != m_c.rend(); ++it) acc = acc * x + it->value();
    return acc;
  }

  friend QuadPoly operator+(const QuadPoly& p, const QuadPoly& q)
  {
    std::vector<QuadExt> c(std::max(p.m_c.size(), q.m_c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) + q.coeff(i);
    return QuadPoly(std::move(c));
  }
  friend QuadPoly operator-(const QuadPoly& p, const QuadPoly& q)
  {
    std::vector<QuadExt> c(std::max(p.m_c.size(), q.m_c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) - q.coeff(i);
    return QuadPoly(std::move(c));
  }
  friend QuadPoly operator*(const QuadPoly& p, const QuadPoly& q)
  {
    if (p.is_zero() || q.is_zero()) return QuadPoly();
    std::vector<QuadExt> c(p.m_c.size() + q.m_c.size() - 1);
    for (std::size_t i = 0; i < p.m_c.size(); ++i)
      for (std::size_t j = 0; j < q.m_c.size(); ++j) c[i + j] += p.m_c[i] * q.m_c[j];
    return QuadPoly(std::move(c));
  }
  friend QuadPoly operator*(const QuadExt& s, const QuadPoly& p)
  {
    std::vector<QuadExt> c = p.m_c;
    for (auto& ci : c) ci *= s;
    return QuadPoly(std::move(c));
  }

private:
  void trim()
  {
    while (!m_c.empty() && m_c.back().is_zero()) m_c.pop_back();
  }
  std::vector<QuadExt> m_c;
};

/// 2x2 symmetric matrix over QuadExt with the exact operations needed for the
/// one-point kernel identities.
struct QuadMat2 {
  std::array<QuadExt, 4> e{}; // row-major

  QuadExt& operator()(int r, int c) { return e[2 * r + c]; }
  const QuadExt& operator()(int r, int c) const { return e[2 * r + c]; }

  static QuadMat2 identity()
  {
    QuadMat2 m;
    m(0, 0) = QuadExt(1);
    m(1, 1) = QuadExt(1);
    return m;
  }

  friend QuadMat2 operator+(const QuadMat2& x, const QuadMat2& y)
  {
    QuadMat2 m;
    for (int i = 0; i < 4; ++i) m.e[i] = x.e[i] + y.e[i];
    return m;
  }
  friend QuadMat2 operator*(const QuadExt& s, const QuadMat2& x)
  {
    QuadMat2 m;
    for (int i = 0; i < 4; ++i) m.e[i] = s * x.e[i];
    return m;
  }
  friend QuadMat2 operator*(const QuadMat2& x, const QuadMat2& y)
  {
    QuadMat2 m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = x(r, 0) * y(0, c) + x(r, 1) * y(1, c);
    return m;
  }
};

/// 2x2 matrix of polynomials in x (the one-point martingale matrix M(x)).
struct QuadPolyMat2 {
  std::array<QuadPoly, 4> e{};

  QuadPoly& operator()(int r, int c) { return e[2 * r + c]; }
  const QuadPoly& operator()(int r, int c) const { return e[2 * r + c]; }

  std::array<QuadPoly, 2> apply(const std::array<QuadPoly, 2>& v) const
  {
    return {(*this)(0, 0) * v[0] + (*this)(0, 1) * v[1],
            (*this)(1, 0) * v[0] + (*this)(1, 1) * v[1]};
  }
  bool is_zero() const
  {
    for (const auto& p : e)
      if (!p.is_zero()) return false;
    return true;
  }
};

} // namespace wzwsle

#endif
