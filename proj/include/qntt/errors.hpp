#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qntt {

// Mathematical infeasibility (no parameters exist, a value is not invertible,
// a bound is exceeded, ...). Malformed input is reported separately with
// std::invalid_argument so callers can distinguish the two failure classes.
class MathError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NotInvertible : public MathError {
public:
  NotInvertible(std::uint64_t value, std::uint64_t gcd, std::uint64_t modulus)
      : MathError("not invertible: gcd(" + std::to_string(value) + ", " +
                  std::to_string(modulus) + ") = " + std::to_string(gcd)),
        gcd_(gcd) {}
  std::uint64_t gcd() const { return gcd_; }

private:
  std::uint64_t gcd_;
};

class NotAResidue : public MathError {
public:
  NotAResidue(std::uint64_t value, std::uint64_t p)
      : MathError(std::to_string(value) + " is not a quadratic residue mod " +
                  std::to_string(p)) {}
};

class DerivativeVanishes : public MathError {
public:
  DerivativeVanishes(std::uint64_t root, std::uint64_t p)
      : MathError("derivative n*x^(n-1) vanishes mod " + std::to_string(p) +
                  " at x = " + std::to_string(root)) {}
};

class UnsupportedModulus : public MathError {
public:
  UnsupportedModulus(std::uint64_t prime, std::uint64_t required_divisor)
      : MathError(std::to_string(required_divisor) +
                  " does not divide p-1 for p=" + std::to_string(prime)),
        prime_(prime), required_divisor_(required_divisor) {}
  std::uint64_t prime() const { return prime_; }
  std::uint64_t required_divisor() const { return required_divisor_; }

private:
  std::uint64_t prime_;
  std::uint64_t required_divisor_;
};

class NoRoot : public MathError {
public:
  NoRoot(std::uint64_t prime, unsigned level)
      : MathError("no 2^" + std::to_string(level) +
                  "-th root at halving level " + std::to_string(level) +
                  " mod " + std::to_string(prime)),
        prime_(prime), level_(level) {}
  std::uint64_t prime() const { return prime_; }
  unsigned level() const { return level_; }

private:
  std::uint64_t prime_;
  unsigned level_;
};

class CertificationFailed : public MathError {
public:
  explicit CertificationFailed(int condition)
      : MathError("evaluation set fails condition " +
                  std::to_string(condition)),
        condition_(condition) {}
  int condition() const { return condition_; }

private:
  int condition_;
};

class CongruenceFailed : public MathError {
public:
  CongruenceFailed(std::uint64_t prime, std::uint64_t d)
      : MathError("p=" + std::to_string(prime) +
                  " satisfies neither p = 2d+1 (mod 4d) nor p = 1 (mod 4d) "
                  "for d=" + std::to_string(d)),
        prime_(prime) {}
  std::uint64_t prime() const { return prime_; }

private:
  std::uint64_t prime_;
};

class NonCoprimeModuli : public MathError {
public:
  NonCoprimeModuli(std::uint64_t a, std::uint64_t b)
      : MathError("moduli not coprime: " + std::to_string(a) + ", " +
                  std::to_string(b)) {}
};

// A plan lacks the (alpha, omega) structure an operation needs.
class StructureMissing : public MathError {
  using MathError::MathError;
};

class TooLarge : public MathError {
  using MathError::MathError;
};

// Internal self-check failed; indicates a bug, not bad input.
class VerificationFailed : public MathError {
  using MathError::MathError;
};

} // namespace qntt
