#include "diffalg/localize.hpp"

namespace diffalg {

namespace {

Mat sigma_power(const FinAlgebra& A, const FinMultSet& S, const FinModule* P) {
    Vec sigma = A.unit();
    for (const Vec& g : S.gens) sigma = A.mul(sigma, g);
    Mat m = P ? P->act(sigma) : A.mult_op(sigma);
    return m.pow(P ? P->dim() : A.dim());
}

}  // namespace

LocalizedAlgebra::LocalizedAlgebra(AlgebraPtr A, FinMultSet S) : A_(std::move(A)), S_(std::move(S)) {
    validate_mult_set(*A_, S_);
    sigma_pow_ = sigma_power(*A_, S_, nullptr);
}

LocElt LocalizedAlgebra::mul(const LocElt& a, const LocElt& b) const {
    return {A_->mul(a.num, b.num), A_->mul(a.den, b.den)};
}

LocElt LocalizedAlgebra::add(const LocElt& a, const LocElt& b) const {
    Vec n = diffalg::add(A_->mul(a.num, b.den), A_->mul(b.num, a.den));
    return {n, A_->mul(a.den, b.den)};
}

bool LocalizedAlgebra::killed_by_set(const Vec& x) const { return is_zero(sigma_pow_.apply(x)); }

bool LocalizedAlgebra::equal(const LocElt& a, const LocElt& b) const {
    Vec x = sub(A_->mul(a.num, b.den), A_->mul(b.num, a.den));
    return killed_by_set(x);
}

LocalizedModule::LocalizedModule(FinModule P, FinMultSet S) : P_(std::move(P)), S_(std::move(S)) {
    validate_mult_set(*P_.algebra(), S_);
    sigma_pow_ = sigma_power(*P_.algebra(), S_, &P_);
}

LocElt LocalizedModule::act(const LocElt& a, const LocElt& p) const {
    return {P_.act(a.num).apply(p.num), algebra().mul(a.den, p.den)};
}

LocElt LocalizedModule::add(const LocElt& a, const LocElt& b) const {
    Vec n = diffalg::add(P_.act(b.den).apply(a.num), P_.act(a.den).apply(b.num));
    return {n, algebra().mul(a.den, b.den)};
}

bool LocalizedModule::killed_by_set(const Vec& p) const { return is_zero(sigma_pow_.apply(p)); }

bool LocalizedModule::equal(const LocElt& a, const LocElt& b) const {
    Vec x = sub(P_.act(b.den).apply(a.num), P_.act(a.den).apply(b.num));
    return killed_by_set(x);
}

PolyLocalized::PolyLocalized(PolyAlgebra A, PolyMultSet S) : A_(std::move(A)), S_(std::move(S)) {
    validate_mult_set(A_, S_);
}

}  // namespace diffalg
