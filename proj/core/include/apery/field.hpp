#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace apery {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid user input (bad expression, gcd != 1, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always a bug, never an input property.
class DefectError : public Error {
 public:
  using Error::Error;
};

/// Coefficient field: the rationals (characteristic 0) or GF(p).
class Field {
 public:
  static Field rational() { return Field{0}; }
  /// Throws InputError unless p is prime.
  static Field prime(std::uint64_t p);

  std::uint64_t characteristic() const { return characteristic_; }
  bool is_rational() const { return characteristic_ == 0; }
  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint64_t p) : characteristic_(p) {}
  std::uint64_t characteristic_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact element of Q or GF(p). GF(p) values are kept in [0, p).
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(const Field& field, long n);
  /// Reduces q into the field; throws InputError when p divides the denominator.
  Scalar(const Field& field, const mpq_class& q);

  static Scalar zero(const Field& f) { return Scalar(f, 0L); }
  static Scalar one(const Field& f) { return Scalar(f, 1L); }

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "3", "-2/5" for Q; the canonical residue for GF(p).
  std::string to_string() const;

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };
  void require_same_field(const Scalar& o) const;

  std::variant<mpq_class, Residue> value_;
};

}  // namespace apery
