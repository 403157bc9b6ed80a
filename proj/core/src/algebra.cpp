#include "diffalg/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace diffalg {

AlgebraPtr FinAlgebra::make(FieldSpec f, const std::vector<std::vector<Vec>>& table, const Vec& unit,
                            std::vector<std::string> labels) {
    auto A = std::shared_ptr<FinAlgebra>(new FinAlgebra());
    int n = static_cast<int>(table.size());
    A->f_ = f;
    A->n_ = n;
    if (static_cast<int>(unit.size()) != n) throw input_error("unit coordinate length mismatch");
    A->unit_ = unit;
    if (labels.empty())
        for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    if (static_cast<int>(labels.size()) != n) throw input_error("label count mismatch");
    A->labels_ = std::move(labels);
    A->table_.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[static_cast<size_t>(i)].size()) != n)
            throw input_error("structure-constant table is not n x n x n");
        for (int j = 0; j < n; ++j) {
            const Vec& v = table[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (static_cast<int>(v.size()) != n)
                throw input_error("structure-constant table is not n x n x n");
            A->table_.push_back(v);
        }
    }

    std::ostringstream violations;
    bool bad = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (A->basis_product(i, j) != A->basis_product(j, i)) {
                bad = true;
                violations << "non-commutative: e" << i << "*e" << j << " != e" << j << "*e" << i << "; ";
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Vec lhs = A->mul(A->basis_product(i, j), unit_vec(f, n, k));
                Vec rhs = A->mul(unit_vec(f, n, i), A->basis_product(j, k));
                if (lhs != rhs) {
                    bad = true;
                    violations << "non-associative at (e" << i << ",e" << j << ",e" << k << "); ";
                }
            }
    for (int i = 0; i < n; ++i) {
        Vec e = unit_vec(f, n, i);
        if (A->mul(A->unit_, e) != e || A->mul(e, A->unit_) != e) {
            bad = true;
            violations << "unit law fails on e" << i << "; ";
        }
    }
    if (bad) throw input_error("invalid algebra table: " + violations.str());
    return A;
}

Vec FinAlgebra::basis_product(int i, int j) const {
    return table_[static_cast<size_t>(i) * n_ + j];
}

Vec FinAlgebra::mul(const Vec& a, const Vec& b) const {
    Vec r = zero_vec(f_, n_);
    for (int i = 0; i < n_; ++i) {
        if (a[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[static_cast<size_t>(j)].is_zero()) continue;
            Scalar c = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            r = add(r, scale(c, basis_product(i, j)));
        }
    }
    return r;
}

Vec FinAlgebra::pow(const Vec& a, long e) const {
    Vec r = unit_, b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Mat FinAlgebra::mult_op(const Vec& a) const {
    std::vector<Vec> images;
    images.reserve(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) images.push_back(mul(a, unit_vec(f_, n_, j)));
    return Mat::from_cols(f_, images, n_);
}

std::string FinAlgebra::describe_basis(int i) const { return labels_[static_cast<size_t>(i)]; }

AlgebraPtr FinAlgebra::dual_numbers(FieldSpec f) {
    Scalar z = Scalar::zero(f), o = Scalar::one(f);
    std::vector<std::vector<Vec>> table = {
        {{o, z}, {z, o}},
        {{z, o}, {z, z}},
    };
    auto A = make(f, table, {o, z}, {"1", "e"});
    // mark as monomial quotient of k[e]
    auto B = std::const_pointer_cast<FinAlgebra>(A);
    B->monos_ = {{0}, {1}};
    B->poly_vars_ = {"e"};
    return A;
}

AlgebraPtr FinAlgebra::boolean_power(int n) {
    FieldSpec f = FieldSpec::prime(2);
    std::vector<std::vector<Vec>> table(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        table[static_cast<size_t>(i)].resize(static_cast<size_t>(n), zero_vec(f, n));
        table[static_cast<size_t>(i)][static_cast<size_t>(i)] = unit_vec(f, n, i);
    }
    Vec unit(static_cast<size_t>(n), Scalar::one(f));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return make(f, table, unit, labels);
}

AlgebraPtr FinAlgebra::ground_field(FieldSpec f) {
    std::vector<std::vector<Vec>> table = {{Vec{Scalar::one(f)}}};
    return make(f, table, Vec{Scalar::one(f)}, {"1"});
}

AlgebraPtr FinAlgebra::truncated_polynomial(FieldSpec f, const std::vector<std::string>& vars,
                                            int max_degree) {
    // monomial basis of total degree <= max_degree in graded-lex order
    std::vector<Exp> monos;
    Exp cur(vars.size(), 0);
    std::set<Exp, GrlexLess> pool;
    // enumerate by odometer over bounded exponents, then sort via set
    std::vector<int> idx(vars.size(), 0);
    while (true) {
        Exp e(idx.begin(), idx.end());
        if (total_degree(e) <= max_degree) pool.insert(e);
        int i = 0;
        while (i < static_cast<int>(idx.size())) {
            if (++idx[static_cast<size_t>(i)] <= max_degree) break;
            idx[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == static_cast<int>(idx.size())) break;
    }
    monos.assign(pool.begin(), pool.end());

    int n = static_cast<int>(monos.size());
    auto index_of = [&](const Exp& e) -> int {
        auto it = std::lower_bound(monos.begin(), monos.end(), e, GrlexLess());
        if (it != monos.end() && *it == e) return static_cast<int>(it - monos.begin());
        return -1;
    };
    std::vector<std::vector<Vec>> table(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        table[static_cast<size_t>(i)].resize(static_cast<size_t>(n), zero_vec(f, n));
        for (int j = 0; j < n; ++j) {
            Exp e = monos[static_cast<size_t>(i)];
            for (size_t v = 0; v < e.size(); ++v) e[v] += monos[static_cast<size_t>(j)][v];
            if (total_degree(e) <= max_degree)
                table[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(index_of(e))] =
                    Scalar::one(f);
        }
    }
    std::vector<std::string> labels;
    for (const Exp& e : monos) {
        std::string s;
        for (size_t v = 0; v < e.size(); ++v)
            for (int r = 0; r < e[v]; ++r) s += vars[v];
        labels.push_back(s.empty() ? "1" : s);
    }
    auto A = make(f, table, unit_vec(f, n, 0), labels);
    auto B = std::const_pointer_cast<FinAlgebra>(A);
    B->monos_ = monos;
    B->poly_vars_ = vars;
    return A;
}

AlgebraPtr FinAlgebra::univariate_quotient(FieldSpec f, const std::string& var, const MPoly& relation) {
    std::vector<std::string> vars = {var};
    int d = relation.degree();
    if (d < 1) throw input_error("univariate quotient needs a relation of degree >= 1");
    // monic normalization
    Scalar lead = relation.terms().rbegin()->second;
    MPoly rel = relation * lead.inverse();
    // x^d = x^d - rel  (mod rel)
    MPoly xd = MPoly::monomial(f, vars, Exp{d}, Scalar::one(f));
    MPoly rem_top = xd - rel;  // degree < d
    // reduction of powers x^m for m up to 2(d-1)
    std::vector<Vec> power_coords;  // coordinates of x^m in basis {1..x^{d-1}}
    auto coords_of = [&](const MPoly& p) {
        Vec c = zero_vec(f, d);
        for (const auto& [e, s] : p.terms()) c[static_cast<size_t>(e[0])] = s;
        return c;
    };
    std::vector<MPoly> reduced;
    for (int m = 0; m <= 2 * (d - 1); ++m) {
        if (m < d) {
            reduced.push_back(MPoly::monomial(f, vars, Exp{m}, Scalar::one(f)));
        } else {
            // x^m = x * x^{m-1} reduced
            MPoly prev = reduced.back() * MPoly::variable(f, vars, 0);
            MPoly red(f, vars);
            for (const auto& [e, s] : prev.terms()) {
                if (e[0] < d)
                    red.add_term(e, s);
                else
                    red = red + rem_top * s;  // e[0] == d exactly, since prev has degree <= d
            }
            reduced.push_back(red);
        }
        power_coords.push_back(coords_of(reduced.back()));
    }
    std::vector<std::vector<Vec>> table(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        table[static_cast<size_t>(i)].resize(static_cast<size_t>(d));
        for (int j = 0; j < d; ++j)
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = power_coords[static_cast<size_t>(i + j)];
    }
    std::vector<std::string> labels;
    std::vector<Exp> monos;
    for (int i = 0; i < d; ++i) {
        labels.push_back(i == 0 ? "1" : (i == 1 ? var : var + "^" + std::to_string(i)));
        monos.push_back(Exp{i});
    }
    auto A = make(f, table, unit_vec(f, d, 0), labels);
    auto B = std::const_pointer_cast<FinAlgebra>(A);
    B->monos_ = monos;
    B->poly_vars_ = vars;
    return A;
}

FinModule::FinModule(AlgebraPtr A, std::vector<Mat> action, std::string name)
    : A_(std::move(A)), action_(std::move(action)), name_(std::move(name)) {
    if (static_cast<int>(action_.size()) != A_->dim())
        throw input_error("module action: one matrix per algebra basis element required");
    dim_ = action_.empty() ? 0 : action_[0].rows();
    for (const Mat& m : action_)
        if (m.rows() != dim_ || m.cols() != dim_) throw input_error("module action matrices must be square of equal size");
}

FinModule FinModule::regular(AlgebraPtr A) {
    std::vector<Mat> action;
    for (int i = 0; i < A->dim(); ++i) action.push_back(A->mult_op_basis(i));
    return FinModule(A, std::move(action), "A");
}

FinModule FinModule::zero(AlgebraPtr A) {
    std::vector<Mat> action(static_cast<size_t>(A->dim()), Mat(A->field(), 0, 0));
    return FinModule(A, std::move(action), "0");
}

FinModule FinModule::point_module(AlgebraPtr A, const Vec& h) {
    std::vector<Mat> action;
    for (int i = 0; i < A->dim(); ++i) {
        Mat m(A->field(), 1, 1);
        m.at(0, 0) = h[static_cast<size_t>(i)];
        action.push_back(m);
    }
    return FinModule(A, std::move(action), "k_h");
}

Mat FinModule::act(const Vec& a) const {
    Mat r(A_->field(), dim_, dim_);
    for (int i = 0; i < A_->dim(); ++i)
        if (!a[static_cast<size_t>(i)].is_zero()) r = r + action_[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
    return r;
}

std::optional<std::string> FinModule::violation() const {
    const FinAlgebra& A = *A_;
    if (!act(A.unit()).operator==(Mat::identity(A.field(), dim_)))
        return "unit does not act as identity";
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) {
            Mat lhs = action_[static_cast<size_t>(i)] * action_[static_cast<size_t>(j)];
            Mat rhs = act(A.basis_product(i, j));
            if (!(lhs == rhs))
                return "action violates structure constants at basis pair (" + std::to_string(i) +
                       "," + std::to_string(j) + ")";
        }
    return std::nullopt;
}

void FinModule::validate() const {
    if (auto w = violation()) throw input_error("invalid module action: " + *w);
}

PolyAlgebra::PolyAlgebra(FieldSpec f, std::vector<std::string> v, int D)
    : field(f), vars(std::move(v)), trunc(D) {
    if (D < 1) throw input_error("truncation degree must be >= 1");
}

TPoly tmul(const PolyAlgebra& A, const TPoly& a, const TPoly& b) {
    auto [p, lost] = (a.p * b.p).truncated(A.trunc);
    return {p, lost || a.truncated || b.truncated};
}

QuotPres::QuotPres(PolyAlgebra base, std::vector<MPoly> relations)
    : base_(std::move(base)), relations_(std::move(relations)) {
    if (base_.vars.size() == 1 && relations_.size() == 1 && relations_[0].degree() >= 1) {
        univariate_ = true;
        Scalar lead = relations_[0].terms().rbegin()->second;
        modulus_ = relations_[0] * lead.inverse();
    }
}

MPoly QuotPres::reduce(const MPoly& p) const {
    if (!univariate_) throw input_error("quotient has no reduction rule (univariate principal ideal required)");
    int d = modulus_.degree();
    MPoly xd = MPoly::monomial(base_.field, base_.vars, Exp{d}, Scalar::one(base_.field));
    MPoly rem_top = xd - modulus_;
    MPoly r = p;
    while (r.degree() >= d) {
        auto [e, c] = *r.terms().rbegin();
        Exp shift{e[0] - d};
        r = r - MPoly::monomial(base_.field, base_.vars, e, c) +
            rem_top * MPoly::monomial(base_.field, base_.vars, shift, c);
    }
    return r;
}

AlgebraPtr QuotPres::to_fin_algebra() const {
    if (!univariate_) throw input_error("structure constants need a univariate principal ideal");
    return FinAlgebra::univariate_quotient(base_.field, base_.vars[0], modulus_);
}

void validate_mult_set(const FinAlgebra& A, const FinMultSet& S) {
    if (S.gens.empty()) return;  // S = {1}
    // products of generators up to length dim+1; nilpotents surface here
    std::set<std::vector<std::string>> seen;
    auto key = [&](const Vec& v) {
        std::vector<std::string> k;
        for (const Scalar& s : v) k.push_back(s.str());
        return k;
    };
    std::vector<Vec> frontier = {A.unit()};
    seen.insert(key(A.unit()));
    for (int len = 1; len <= A.dim() + 1; ++len) {
        std::vector<Vec> next;
        for (const Vec& v : frontier)
            for (const Vec& g : S.gens) {
                Vec w = A.mul(v, g);
                if (is_zero(w))
                    throw input_error("multiplicative set contains 0: a product of generators of length " +
                                      std::to_string(len) + " vanishes");
                if (seen.insert(key(w)).second) next.push_back(w);
            }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
}

void validate_mult_set(const PolyAlgebra&, const PolyMultSet& S) {
    for (const MPoly& g : S.gens)
        if (g.is_zero()) throw input_error("multiplicative set contains the zero polynomial");
}

}  // namespace diffalg
