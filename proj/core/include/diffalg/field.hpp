#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace diffalg {

/// Raised when an input document or argument is malformed.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a computation exceeds a configured budget or truncation bound.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a certified internal invariant fails; always a bug, carries a witness.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

enum class FieldKind { rationals, prime };

/// The ground field: the rationals, or GF(p) for a prime p.
struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    long p = 0;

    static FieldSpec rationals() { return {FieldKind::rationals, 0}; }
    static FieldSpec prime(long p);

    bool is_prime_field() const { return kind == FieldKind::prime; }
    long characteristic() const { return is_prime_field() ? p : 0; }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const;
};

bool is_prime(long n);

/// An exact scalar in a FieldSpec field. Rationals are GMP rationals; prime-field
/// elements are canonical residues in [0, p).
class Scalar {
public:
    Scalar() : f_(FieldSpec::rationals()), v_(0) {}
    Scalar(FieldSpec f, long n);
    Scalar(FieldSpec f, const mpq_class& v);

    static Scalar zero(FieldSpec f) { return Scalar(f, 0); }
    static Scalar one(FieldSpec f) { return Scalar(f, 1); }
    /// Rational a/b embedded into the field (b inverted mod p for prime fields).
    static Scalar fraction(FieldSpec f, long a, long b);

    const FieldSpec& field() const { return f_; }
    const mpq_class& value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text form: "a" or "a/b"; prime-field residues print as integers.
    std::string str() const;

private:
    void reduce();
    void check_same(const Scalar& o) const;

    FieldSpec f_;
    mpq_class v_;
};

/// n! as an exact scalar; throws input_error in characteristic p when p <= n.
Scalar factorial_scalar(FieldSpec f, long n);
/// Binomial coefficient C(n, k) in the field.
Scalar binomial_scalar(FieldSpec f, long n, long k);

mpz_class binomial_mpz(long n, long k);

}  // namespace diffalg
