#include "diffalg/field.hpp"

namespace diffalg {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(long p) {
    if (!is_prime(p)) throw input_error("field modulus " + std::to_string(p) + " is not prime");
    return {FieldKind::prime, p};
}

std::string FieldSpec::str() const {
    return is_prime_field() ? "F" + std::to_string(p) : "Q";
}

Scalar::Scalar(FieldSpec f, long n) : f_(f), v_(n) { reduce(); }
Scalar::Scalar(FieldSpec f, const mpq_class& v) : f_(f), v_(v) { reduce(); }

void Scalar::reduce() {
    v_.canonicalize();
    if (f_.is_prime_field()) {
        if (v_.get_den() != 1) {
            // embed a/b as a * b^{-1} mod p
            Scalar num(f_, mpq_class(v_.get_num()));
            Scalar den(f_, mpq_class(v_.get_den()));
            *this = num / den;
            return;
        }
        mpz_class r = v_.get_num() % f_.p;
        if (r < 0) r += f_.p;
        v_ = mpq_class(r);
    }
}

void Scalar::check_same(const Scalar& o) const {
    if (f_ != o.f_)
        throw input_error("scalar field mismatch: " + f_.str() + " vs " + o.f_.str());
}

Scalar Scalar::fraction(FieldSpec f, long a, long b) {
    if (b == 0) throw input_error("zero denominator");
    return Scalar(f, mpq_class(a, b));
}

Scalar Scalar::operator-() const { return Scalar(f_, mpq_class(-v_)); }

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    return Scalar(f_, mpq_class(v_ + o.v_));
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    return Scalar(f_, mpq_class(v_ - o.v_));
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    return Scalar(f_, mpq_class(v_ * o.v_));
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same(o);
    return *this * o.inverse();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw input_error("division by zero in " + f_.str());
    if (!f_.is_prime_field()) return Scalar(f_, mpq_class(1) / v_);
    mpz_class inv;
    mpz_class a = v_.get_num(), m(f_.p);
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw invariant_error("non-invertible residue in prime field");
    return Scalar(f_, mpq_class(inv));
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r = Scalar::one(f_), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    return v_ == o.v_;
}

std::string Scalar::str() const {
    return v_.get_str();
}

mpz_class binomial_mpz(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Scalar factorial_scalar(FieldSpec f, long n) {
    if (f.is_prime_field() && n >= f.p)
        throw input_error("factorial " + std::to_string(n) + "! is divisible by the characteristic " +
                          std::to_string(f.p));
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Scalar(f, mpq_class(r));
}

Scalar binomial_scalar(FieldSpec f, long n, long k) {
    return Scalar(f, mpq_class(binomial_mpz(n, k)));
}

}  // namespace diffalg
