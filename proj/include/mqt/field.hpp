#pragma once

/// @file field.hpp
/// Arithmetic in the prime field Z_p.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mqt {

using Residue = std::uint32_t;

/// A prime modulus. Primality is checked by trial division when the modulus is
/// constructed, so every FieldSpec in circulation names a genuine field.
class FieldSpec {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

  explicit FieldSpec(std::uint64_t p) : p_(static_cast<Residue>(p)) {
    if (p < 2 || p > kMaxModulus) {
      throw std::invalid_argument("field modulus out of range: " + std::to_string(p));
    }
    for (std::uint64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        throw std::invalid_argument("field modulus is not prime: " + std::to_string(p));
      }
    }
  }

  [[nodiscard]] Residue modulus() const noexcept { return p_; }

  [[nodiscard]] Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }

  [[nodiscard]] Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
  }
  [[nodiscard]] Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((std::uint64_t{a} * b) % p_);
  }

  /// Multiplicative inverse by the extended Euclidean algorithm.
  [[nodiscard]] Residue inv(Residue a) const {
    if (a % p_ == 0) throw std::domain_error("no inverse of zero");
    std::int64_t r0 = p_, r1 = a % p_;
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    return reduce(s0);
  }

  friend bool operator==(FieldSpec a, FieldSpec b) noexcept { return a.p_ == b.p_; }

 private:
  Residue p_;
};

/// An element of Z_p tagged with its field.
class Scalar {
 public:
  Scalar(FieldSpec f, std::int64_t v) : field_(f), value_(f.reduce(v)) {}

  [[nodiscard]] Residue value() const noexcept { return value_; }
  [[nodiscard]] FieldSpec field() const noexcept { return field_; }
  [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }

  [[nodiscard]] Scalar inv() const { return from_residue(field_, field_.inv(value_)); }

  friend Scalar operator+(Scalar a, Scalar b) {
    check(a, b);
    return from_residue(a.field_, a.field_.add(a.value_, b.value_));
  }
  friend Scalar operator-(Scalar a, Scalar b) {
    check(a, b);
    return from_residue(a.field_, a.field_.sub(a.value_, b.value_));
  }
  friend Scalar operator*(Scalar a, Scalar b) {
    check(a, b);
    return from_residue(a.field_, a.field_.mul(a.value_, b.value_));
  }
  friend Scalar operator-(Scalar a) { return from_residue(a.field_, a.field_.neg(a.value_)); }

  friend bool operator==(Scalar a, Scalar b) noexcept {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, Scalar s) { return os << s.value_; }

 private:
  static Scalar from_residue(FieldSpec f, Residue r) {
    Scalar s(f, 0);
    s.value_ = r;
    return s;
  }
  static void check(Scalar a, Scalar b) {
    if (!(a.field_ == b.field_)) throw std::invalid_argument("modulus mismatch");
  }

  FieldSpec field_;
  Residue value_;
};

enum class ArithOp { add, sub, mul };

inline Scalar arith(Scalar a, Scalar b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw std::invalid_argument("unknown arithmetic op");
}

inline Scalar inv(Scalar a) { return a.inv(); }

}  // namespace mqt
