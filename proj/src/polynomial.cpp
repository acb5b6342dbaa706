#include "tubehyp/polynomial.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tubehyp {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim()
{
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& t) const
{
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::operator()(double t) const
{
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const
{
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const
{
  if (is_zero()) return {};
  const Rational lead = leading();
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& p)
{
  std::vector<Rational> c = p.coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

DivMod divmod(const Polynomial& a, const Polynomial& b)
{
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    const Rational factor = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
  Polynomial x = a.monic();
  Polynomial y = b.monic();
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).remainder.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Polynomial squarefree_part(const Polynomial& p)
{
  if (p.degree() <= 0) return p;
  const Polynomial g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

SturmChain::SturmChain(const Polynomial& squarefree)
{
  chain_.push_back(squarefree);
  if (squarefree.degree() <= 0) return;
  chain_.push_back(squarefree.derivative());
  while (chain_.back().degree() > 0) {
    Polynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern while taming coefficient growth.
    const Rational scale = abs_of(r.leading());
    chain_.push_back(Rational(Rational(-1) / scale) * r);
  }
}

int SturmChain::variations(const Rational& x) const
{
  int count = 0;
  int previous = 0;
  for (const auto& p : chain_) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++count;
    previous = s;
  }
  return count;
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const
{
  if (chain_.front().degree() <= 0) return 0;
  return variations(a) - variations(b);
}

std::optional<Rational> root_in(const Polynomial& p, const Rational& lo, const Rational& hi, const Rational& width)
{
  if (p.is_zero()) return lo;
  if (p(lo) == 0) return lo;
  if (p(hi) == 0) return hi;
  const Polynomial q = squarefree_part(p);
  const SturmChain chain(q);
  if (chain.count_roots(lo, hi) == 0) return std::nullopt;
  Rational a = lo, b = hi;
  while (b - a > width) {
    const Rational m = (a + b) / 2;
    if (q(m) == 0) return m;
    if (chain.count_roots(a, m) > 0)
      b = m;
    else
      a = m;
  }
  return Rational((a + b) / 2);
}

namespace {

struct Isolated {
  Rational a;  // root lies in (a, b]
  Rational b;
};

void isolate(const SturmChain& chain, const Rational& a, const Rational& b, std::vector<Isolated>& out)
{
  const int n = chain.count_roots(a, b);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({a, b});
    return;
  }
  const Rational m = (a + b) / 2;
  isolate(chain, a, m, out);
  isolate(chain, m, b, out);
}

}  // namespace

std::optional<Rational> negative_point(const Polynomial& p, const Rational& lo, const Rational& hi)
{
  if (p.is_zero()) return std::nullopt;
  const Polynomial q = squarefree_part(p);
  const SturmChain chain(q);

  std::vector<Isolated> roots;
  const bool lo_is_root = q(lo) == 0;
  if (lo_is_root) roots.push_back({lo, lo});
  isolate(chain, lo, hi, roots);

  // One non-root sample per connected piece of [lo, hi] minus the roots.
  std::vector<Rational> samples;
  if (!lo_is_root) samples.push_back(lo);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    const Isolated& left = roots[i];
    const Isolated& right = roots[i + 1];
    if (q(left.b) != 0) {
      samples.push_back(left.b);
    } else if (right.a > left.b) {
      samples.push_back(right.a);
    } else {
      Rational a = right.a, b = right.b;
      for (;;) {
        const Rational m = (a + b) / 2;
        if (chain.count_roots(a, m) == 0) {
          samples.push_back(m);
          break;
        }
        b = m;
      }
    }
  }
  if (q(hi) != 0 && !roots.empty()) samples.push_back(hi);

  for (const auto& s : samples)
    if (p(s) < 0) return s;
  return std::nullopt;
}

}  // namespace tubehyp
