#pragma once

// Brute-force reference computations used only by tests. Nothing here calls
// into the library's semigroup, echelon or ring code: value sets come from
// dense Gaussian elimination on explicit products of generators.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Bits = std::vector<bool>;

// ---------------------------------------------------------------- semigroups

// Membership in the monoid generated by gens, for n < bound.
inline Bits monoid(const std::vector<std::size_t>& gens, std::size_t bound) {
  Bits in(bound, false);
  if (bound > 0) in[0] = true;
  for (std::size_t n = 1; n < bound; ++n) {
    for (std::size_t g : gens) {
      if (g <= n && in[n - g]) {
        in[n] = true;
        break;
      }
    }
  }
  return in;
}

// Largest number of nonzero generators summing to n, or -1 when n is not in the monoid.
inline std::vector<long> max_length(const std::vector<std::size_t>& gens, std::size_t bound) {
  std::vector<long> best(bound, -1);
  if (bound > 0) best[0] = 0;
  for (std::size_t n = 1; n < bound; ++n) {
    for (std::size_t g : gens) {
      if (g <= n && best[n - g] >= 0) best[n] = std::max(best[n], best[n - g] + 1);
    }
  }
  return best;
}

inline std::size_t frobenius_plus_one(const Bits& in) {
  std::size_t c = in.size();
  while (c > 0 && in[c - 1]) --c;
  return c;
}

// Least element of each residue class modulo e among members below the bound.
inline std::vector<std::size_t> apery(const Bits& in, std::size_t e) {
  std::vector<std::size_t> w(e, 0);
  std::vector<bool> seen(e, false);
  for (std::size_t n = 0; n < in.size(); ++n) {
    if (in[n] && !seen[n % e]) {
      seen[n % e] = true;
      w[n % e] = n;
    }
  }
  return w;
}

// v(iM) below bound for the monomial ring: sums of at least i generators.
inline Bits sumset_power(const std::vector<std::size_t>& gens, std::size_t i, std::size_t bound) {
  const auto best = max_length(gens, bound);
  Bits out(bound, false);
  for (std::size_t n = 0; n < bound; ++n) out[n] = best[n] >= static_cast<long>(i);
  return out;
}

// Least r with Ap(v((r+1)M)) = Ap(v(rM)) + e, found by brute force on sumsets.
inline std::size_t sumset_reduction_number(const std::vector<std::size_t>& gens) {
  const std::size_t e = *std::min_element(gens.begin(), gens.end());
  for (std::size_t r = 0;; ++r) {
    const std::size_t bound = 2 * (*std::max_element(gens.begin(), gens.end()) + 1) * (r + 3) + 200;
    const auto lo = apery(sumset_power(gens, r, bound), e);
    const auto hi = apery(sumset_power(gens, r + 1, bound), e);
    bool stable = true;
    for (std::size_t j = 0; j < e; ++j) stable = stable && hi[j] == lo[j] + e;
    if (stable) return r;
  }
}

// ---------------------------------------------------------------- dense series

// Coefficient arithmetic in Q (p == 0) or GF(p).
struct Coeffs {
  unsigned long p = 0;

  mpq_class reduce(mpq_class q) const {
    if (p == 0) return q;
    mpz_class num = q.get_num() % p;
    mpz_class den = q.get_den() % p;
    if (num < 0) num += p;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
    mpz_class r = (num * inv) % p;
    return mpq_class(r);
  }
  mpq_class inverse(const mpq_class& a) const {
    if (p == 0) return 1 / a;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), mpz_class(p).get_mpz_t());
    return mpq_class(inv);
  }
};

using Dense = std::vector<mpq_class>;

inline Dense dense_monomial(std::size_t n, std::size_t window) {
  Dense d(window, 0);
  if (n < window) d[n] = 1;
  return d;
}

inline Dense dense_mul(const Dense& a, const Dense& b, const Coeffs& k) {
  const std::size_t window = a.size();
  Dense out(window, 0);
  for (std::size_t i = 0; i < window; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < window; ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  for (auto& c : out) c = k.reduce(c);
  return out;
}

inline std::size_t dense_order(const Dense& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) return i;
  }
  return a.size();
}

// Leading exponents of the span: plain Gaussian elimination on a dense matrix.
inline Bits leading_exponents(std::vector<Dense> rows, const Coeffs& k) {
  const std::size_t window = rows.empty() ? 0 : rows.front().size();
  Bits lead(window, false);
  std::vector<Dense> pivots(window);
  for (auto& row : rows) {
    for (std::size_t col = 0; col < window; ++col) {
      if (row[col] == 0) continue;
      if (!lead[col]) {
        const mpq_class inv = k.inverse(row[col]);
        for (auto& c : row) c = k.reduce(c * inv);
        pivots[col] = row;
        lead[col] = true;
        break;
      }
      const mpq_class f = row[col];
      for (std::size_t m = col; m < window; ++m) row[m] = k.reduce(row[m] - f * pivots[col][m]);
    }
  }
  return lead;
}

struct Product {
  std::size_t degree = 0;
  Dense value;
};

// Products g^alpha of the generators with order below the window, tagged with |alpha|.
inline std::vector<Product> generator_products(const std::vector<Dense>& gens, std::size_t window,
                                               const Coeffs& k) {
  std::vector<Product> out;
  std::vector<std::size_t> orders;
  for (const auto& g : gens) orders.push_back(dense_order(g));
  std::function<void(std::size_t, std::size_t, std::size_t, const Dense&)> walk =
      [&](std::size_t from, std::size_t degree, std::size_t order, const Dense& product) {
        out.push_back({degree, product});
        for (std::size_t g = from; g < gens.size(); ++g) {
          if (order + orders[g] >= window) continue;
          walk(g, degree + 1, order + orders[g], dense_mul(product, gens[g], k));
        }
      };
  walk(0, 0, 0, dense_monomial(0, window));
  return out;
}

// A ring k[[g_1, ..., g_n]] seen through a window t^window.
struct DenseRing {
  Coeffs k;
  std::size_t window = 0;
  std::vector<Product> products;

  DenseRing(const std::vector<Dense>& gens, Coeffs field)
      : k(field), window(gens.front().size()), products(generator_products(gens, window, k)) {}

  std::vector<Dense> degree_at_least(std::size_t i) const {
    std::vector<Dense> rows;
    for (const auto& p : products) {
      if (p.degree >= i) rows.push_back(p.value);
    }
    return rows;
  }

  Dense power_of(const Dense& x, std::size_t n) const {
    Dense out = dense_monomial(0, window);
    for (std::size_t q = 0; q < n; ++q) out = dense_mul(out, x, k);
    return out;
  }

  // v(m^i) below the window.
  Bits power(std::size_t i) const { return leading_exponents(degree_at_least(i), k); }

  // v(m^i + xR) below the window.
  Bits power_plus(std::size_t i, const Dense& x) const {
    auto rows = degree_at_least(i);
    for (const auto& p : products) rows.push_back(dense_mul(p.value, x, k));
    return leading_exponents(std::move(rows), k);
  }

  // v(x^s R + x^n m^i) below the window.
  Bits scaled_sum(const Dense& x, std::size_t s, std::size_t n, std::size_t i) const {
    const Dense xs = power_of(x, s);
    const Dense xn = power_of(x, n);
    std::vector<Dense> rows;
    for (const auto& p : products) {
      if (dense_order(p.value) + s * dense_order(x) < window) rows.push_back(dense_mul(p.value, xs, k));
      if (p.degree >= i && dense_order(p.value) + n * dense_order(x) < window) rows.push_back(dense_mul(p.value, xn, k));
    }
    return leading_exponents(std::move(rows), k);
  }
};

inline std::size_t count_difference(const Bits& big, const Bits& small) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < big.size(); ++i) n += big[i] && !small[i];
  return n;
}

// Everything derived from value sets, computed from scratch for one ring and reduction.
struct Profile {
  std::size_t e = 0;
  std::size_t conductor = 0;
  std::size_t r = 0;
  std::vector<std::size_t> w;
  std::vector<std::size_t> b;
  std::vector<std::size_t> c;
  std::vector<std::size_t> a;
  std::vector<std::size_t> eps;
  std::vector<std::size_t> hilb_r;
  std::vector<std::size_t> hilb_mod;
  std::vector<Bits> powers;
};

// The window (length of each generator) must be at least c + (r + 4) e.
inline Profile profile(const std::vector<Dense>& gens, const Dense& x, const Coeffs& k) {
  Profile p;
  const DenseRing ring(gens, k);
  const std::size_t window = ring.window;
  const Bits values = ring.power(0);
  p.e = dense_order(x);
  p.conductor = frobenius_plus_one(values);
  p.w = apery(values, p.e);

  auto stable_step = [&](std::size_t i) {
    const auto lo = apery(p.powers[i], p.e);
    const auto hi = apery(p.powers[i + 1], p.e);
    for (std::size_t j = 0; j < p.e; ++j) {
      if (hi[j] != lo[j] + p.e) return false;
    }
    return true;
  };
  p.powers.push_back(values);
  p.powers.push_back(ring.power(1));
  while (!stable_step(p.r)) {
    ++p.r;
    p.powers.push_back(ring.power(p.r + 1));
  }
  p.powers.push_back(ring.power(p.r + 2));

  std::vector<Bits> sums;
  for (std::size_t i = 0; i <= p.r + 2; ++i) sums.push_back(ring.power_plus(i, x));
  for (std::size_t j = 0; j < p.e; ++j) {
    std::size_t b = 0;
    while (b + 1 < p.powers.size() && p.powers[b + 1][p.w[j]]) ++b;
    std::size_t c = 0;
    while (c + 1 < sums.size() && sums[c + 1][p.w[j]]) ++c;
    p.b.push_back(b);
    p.c.push_back(c);
  }

  // Blowup values from a high power: v(m^n) - ne for n = r + 2.
  const std::size_t n = p.r + 2;
  Bits blowup(window, false);
  for (std::size_t v = n * p.e; v < window; ++v) blowup[v - n * p.e] = p.powers[n][v];
  const auto w_prime = apery(blowup, p.e);
  for (std::size_t j = 0; j < p.e; ++j) p.a.push_back((p.w[j] - w_prime[j]) / p.e);

  // d_q = l(R' / (R + x^q R')), measured after multiplying through by x^r.
  const std::size_t total = std::accumulate(p.a.begin(), p.a.end(), std::size_t{0});
  std::vector<std::size_t> d{0};
  const Bits top = p.powers[p.r];
  for (std::size_t q = 1; d.back() < total; ++q) d.push_back(count_difference(top, ring.scaled_sum(x, p.r, q, p.r)));
  std::vector<std::size_t> at_least(d.size(), 0);
  for (std::size_t q = 1; q < d.size(); ++q) at_least[q] = d[q] - d[q - 1];
  for (std::size_t j = 0; j < p.e; ++j) {
    std::size_t value = 0;
    for (std::size_t q = 1; q < d.size(); ++q) value += at_least[q] > j ? 1 : 0;
    p.eps.push_back(value);
  }
  std::sort(p.eps.begin(), p.eps.end());

  for (std::size_t i = 0; i <= p.r; ++i) {
    p.hilb_r.push_back(count_difference(p.powers[i], p.powers[i + 1]));
    p.hilb_mod.push_back(count_difference(sums[i], sums[i + 1]));
  }
  return p;
}

// The same profile for k[[t^{n_1}, ..., t^{n_k}]] with x = t^e, from sumsets alone.
inline Profile monomial_profile(const std::vector<std::size_t>& gens) {
  Profile p;
  p.e = *std::min_element(gens.begin(), gens.end());
  p.r = sumset_reduction_number(gens);
  const std::size_t bound = 2 * (*std::max_element(gens.begin(), gens.end()) + 1) * (p.r + 4) + 200;
  const Bits values = monoid(gens, bound);
  p.conductor = frobenius_plus_one(values);
  p.w = apery(values, p.e);
  for (std::size_t i = 0; i <= p.r + 2; ++i) p.powers.push_back(sumset_power(gens, i, bound));
  // Monomial spaces: the value set of a sum is the union of value sets.
  auto plus_x = [&](const Bits& set) {
    Bits out = set;
    for (std::size_t n = p.e; n < bound; ++n) out[n] = out[n] || values[n - p.e];
    return out;
  };
  std::vector<Bits> sums;
  for (std::size_t i = 0; i <= p.r + 2; ++i) sums.push_back(plus_x(p.powers[i]));
  for (std::size_t j = 0; j < p.e; ++j) {
    std::size_t b = 0;
    while (b + 1 < p.powers.size() && p.powers[b + 1][p.w[j]]) ++b;
    std::size_t c = 0;
    while (c + 1 < sums.size() && sums[c + 1][p.w[j]]) ++c;
    p.b.push_back(b);
    p.c.push_back(c);
  }
  // v(R') = v(rM) - re.
  Bits blowup(bound, false);
  for (std::size_t v = p.r * p.e; v < bound; ++v) blowup[v - p.r * p.e] = p.powers[p.r][v];
  const auto w_prime = apery(blowup, p.e);
  for (std::size_t j = 0; j < p.e; ++j) p.a.push_back((p.w[j] - w_prime[j]) / p.e);
  // d_q = |v(R') \ (S u (v(R') + qe))|, then #{eps >= q} = d_q - d_{q-1}.
  const std::size_t top = bound - p.r * p.e;
  std::vector<std::size_t> d{0};
  const std::size_t total = std::accumulate(p.a.begin(), p.a.end(), std::size_t{0});
  for (std::size_t q = 1; d.back() < total; ++q) {
    std::size_t count = 0;
    for (std::size_t v = 0; v < top; ++v) {
      const bool shifted = v >= q * p.e && blowup[v - q * p.e];
      count += blowup[v] && !values[v] && !shifted;
    }
    d.push_back(count);
  }
  for (std::size_t j = 0; j < p.e; ++j) {
    std::size_t value = 0;
    for (std::size_t q = 1; q < d.size(); ++q) value += d[q] - d[q - 1] > j ? 1 : 0;
    p.eps.push_back(value);
  }
  std::sort(p.eps.begin(), p.eps.end());
  for (std::size_t i = 0; i <= p.r; ++i) {
    p.hilb_r.push_back(count_difference(p.powers[i], p.powers[i + 1]));
    p.hilb_mod.push_back(count_difference(sums[i], sums[i + 1]));
  }
  return p;
}

}  // namespace oracle
