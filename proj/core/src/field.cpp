#include "apery/field.hpp"

#include <array>

namespace apery {
namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t a : bases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1ULL << 62)) throw InputError("field characteristic too large");
  return Field{p};
}

std::string Field::to_string() const {
  return is_rational() ? std::string("QQ") : "GF(" + std::to_string(characteristic_) + ")";
}

Scalar::Scalar(const Field& field, long n) {
  if (field.is_rational()) {
    value_ = mpq_class(n);
  } else {
    const std::uint64_t p = field.characteristic();
    const auto m = static_cast<std::int64_t>(p);
    std::int64_t r = static_cast<std::int64_t>(n) % m;
    if (r < 0) r += m;
    value_ = Residue{static_cast<std::uint64_t>(r), p};
  }
}

Scalar::Scalar(const Field& field, const mpq_class& q) {
  if (field.is_rational()) {
    value_ = q;
    std::get<mpq_class>(value_).canonicalize();
    return;
  }
  const std::uint64_t p = field.characteristic();
  const std::uint64_t den = reduce_mpz(q.get_den(), p);
  if (den == 0) throw InputError("coefficient " + q.get_str() + " is not reducible mod " + std::to_string(p));
  const std::uint64_t num = reduce_mpz(q.get_num(), p);
  value_ = Residue{mul_mod(num, pow_mod(den, p - 2, p), p), p};
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return Field{r->modulus};
  return Field::rational();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

void Scalar::require_same_field(const Scalar& o) const {
  const auto* a = std::get_if<Residue>(&value_);
  const auto* b = std::get_if<Residue>(&o.value_);
  if ((a == nullptr) != (b == nullptr) || (a != nullptr && a->modulus != b->modulus)) {
    throw InputError("arithmetic between elements of different fields");
  }
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  if (auto* r = std::get_if<Residue>(&out.value_)) {
    if (r->value != 0) r->value = r->modulus - r->value;
  } else {
    auto& q = std::get<mpq_class>(out.value_);
    q = -q;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    const std::uint64_t s = r->value + std::get<Residue>(o.value_).value;
    r->value = s >= r->modulus ? s - r->modulus : s;
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    const std::uint64_t b = std::get<Residue>(o.value_).value;
    r->value = r->value >= b ? r->value - b : r->value + r->modulus - b;
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = mul_mod(r->value, std::get<Residue>(o.value_).value, r->modulus);
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw InputError("division by zero");
  Scalar out = *this;
  if (auto* r = std::get_if<Residue>(&out.value_)) {
    r->value = pow_mod(r->value, r->modulus - 2, r->modulus);
  } else {
    auto& q = std::get<mpq_class>(out.value_);
    q = 1 / q;
  }
  return out;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
  const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
  if (ra != nullptr && rb != nullptr) return ra->modulus == rb->modulus && ra->value == rb->value;
  if (ra == nullptr && rb == nullptr) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  return false;
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str();
}

}  // namespace apery
