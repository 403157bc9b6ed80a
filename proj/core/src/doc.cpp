#include "diffalg/doc.hpp"

#include <random>
#include <set>
#include <sstream>

#include "diffalg/adjoint.hpp"
#include "diffalg/dfunctors.hpp"
#include "diffalg/localize.hpp"
#include "diffalg/polyop.hpp"
#include "diffalg/spectrum.hpp"
#include "diffalg/symbols.hpp"

namespace diffalg {

namespace {

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw input_error("unknown key '" + it.key() + "' in " + where);
}

FieldSpec parse_field(const Json& j) {
    if (!j.contains("field")) throw input_error("missing 'field' in document");
    const Json& f = j.at("field");
    if (f.is_string() && f.get<std::string>() == "Q") return FieldSpec::rationals();
    if (f.is_object() && f.contains("Fp")) {
        reject_unknown_keys(f, {"Fp"}, "field");
        return FieldSpec::prime(f.at("Fp").get<long>());
    }
    throw input_error("field must be \"Q\" or {\"Fp\": p} (schema path: /field)");
}

}  // namespace

Scalar parse_scalar(const Json& j, FieldSpec f) {
    if (j.is_number_integer()) return Scalar(f, j.get<long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Scalar(f, mpq_class(mpz_class(s)));
        mpz_class a(s.substr(0, slash)), b(s.substr(slash + 1));
        if (b == 0) throw input_error("zero denominator in scalar '" + s + "'");
        return Scalar(f, mpq_class(a, b));
    }
    throw input_error("scalar entries must be integers or \"a/b\" strings");
}

Json scalar_json(const Scalar& s) { return Json(s.str()); }

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (const Scalar& s : v) a.push_back(scalar_json(s));
    return a;
}

Json mat_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i)));
    return rows;
}

AlgebraDoc parse_algebra_doc(const Json& j) {
    if (!j.is_object()) throw input_error("algebra document must be a JSON object");
    AlgebraDoc doc;
    doc.field = parse_field(j);
    if (!j.contains("kind")) throw input_error("missing 'kind' in document");
    doc.kind = j.at("kind").get<std::string>();

    if (doc.kind == "structure_constants" || doc.kind == "graded_structure_constants") {
        std::set<std::string> allowed = {"field", "kind", "dim", "table", "unit", "labels"};
        if (doc.kind == "graded_structure_constants") {
            allowed.insert("degrees");
            allowed.insert("sign_form");
        }
        reject_unknown_keys(j, allowed, "document");
        int n = j.at("dim").get<int>();
        const Json& tj = j.at("table");
        if (static_cast<int>(tj.size()) != n) throw input_error("table must be dim x dim x dim");
        std::vector<std::vector<Vec>> table;
        for (const auto& row : tj) {
            if (static_cast<int>(row.size()) != n) throw input_error("table must be dim x dim x dim");
            std::vector<Vec> r;
            for (const auto& cell : row) {
                if (static_cast<int>(cell.size()) != n) throw input_error("table must be dim x dim x dim");
                Vec v;
                for (const auto& e : cell) v.push_back(parse_scalar(e, doc.field));
                r.push_back(v);
            }
            table.push_back(r);
        }
        Vec unit;
        for (const auto& e : j.at("unit")) unit.push_back(parse_scalar(e, doc.field));
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        if (doc.kind == "structure_constants") {
            doc.fin = FinAlgebra::make(doc.field, table, unit, labels);
        } else {
            std::vector<GDeg> degrees;
            for (const auto& d : j.at("degrees")) {
                if (d.is_number_integer())
                    degrees.push_back(GDeg{d.get<int>(), 0});
                else
                    degrees.push_back(GDeg{d.at(0).get<int>(), d.at(1).get<int>()});
            }
            SignForm sf = SignForm::parity_product;
            if (j.contains("sign_form")) {
                std::string s = j.at("sign_form").get<std::string>();
                if (s == "trivial") sf = SignForm::trivial;
                else if (s == "parity") sf = SignForm::parity_product;
                else throw input_error("sign_form must be 'parity' or 'trivial'");
            }
            doc.graded = GradedAlgebra::make(doc.field, sf, degrees, table, unit, labels);
        }
        return doc;
    }
    if (doc.kind == "polynomial") {
        reject_unknown_keys(j, {"field", "kind", "vars", "truncation"}, "document");
        int trunc = j.contains("truncation") ? j.at("truncation").get<int>() : 8;
        doc.poly = PolyAlgebra(doc.field, j.at("vars").get<std::vector<std::string>>(), trunc);
        return doc;
    }
    if (doc.kind == "quotient") {
        reject_unknown_keys(j, {"field", "kind", "vars", "relations", "truncation", "basis"},
                            "document");
        int trunc = j.contains("truncation") ? j.at("truncation").get<int>() : 8;
        doc.poly = PolyAlgebra(doc.field, j.at("vars").get<std::vector<std::string>>(), trunc);
        for (const auto& r : j.at("relations"))
            doc.relations.push_back(parse_mpoly(r.get<std::string>(), doc.field, doc.poly->vars));
        return doc;
    }
    throw input_error("kind must be structure_constants, polynomial, quotient, or "
                      "graded_structure_constants (schema path: /kind)");
}

CovariantTensor2 parse_tensor_doc(const Json& j) {
    reject_unknown_keys(j, {"n", "coords", "tau"}, "tensor document");
    int n = j.at("n").get<int>();
    auto coords = j.at("coords").get<std::vector<std::string>>();
    if (static_cast<int>(coords.size()) != n) throw input_error("coords must list n names");
    FieldSpec f = FieldSpec::rationals();
    std::vector<RatExpr> entries;
    const Json& rows = j.at("tau");
    if (static_cast<int>(rows.size()) != n) throw input_error("tau must be an n x n array");
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw input_error("tau must be an n x n array");
        for (const auto& e : row) entries.push_back(parse_ratexpr(e.get<std::string>(), f, coords));
    }
    return CovariantTensor2(coords, entries);
}

Json conventions_json(int truncation) {
    Json c = Json::object();
    c["echelon"] = "leftmost-pivot reduced row echelon; kernel vectors lead with 1";
    c["exterior_power"] = "alternating quotient (x tensor x = 0), stated explicitly in char 2";
    c["operator_lift"] = "normal order: x^a xi^b lifts to x^a D^b";
    auto [K1, K2] = cosmo_calibration();
    c["cosmo_normalization"] = "Ric(tau) = Ric(g) + (" + K1.str() + ") Q + (" + K2.str() +
                               ") D, c_ijk the cyclic sum of skew-part derivatives";
    c["truncation_degree"] = truncation;
    return c;
}

Json make_report(const std::string& operation, const Json& inputs, const Json& configuration,
                 const Json& results, const std::string& status, const std::string& summary) {
    Json r = Json::object();
    r["tool"] = "dcalc";
    r["operation"] = operation;
    r["inputs"] = inputs;
    r["configuration"] = configuration;
    r["results"] = results;
    r["status"] = status;
    r["summary"] = summary;
    return r;
}

namespace {

AlgebraPtr doc_fin_algebra(const AlgebraDoc& doc) {
    if (doc.fin) return doc.fin;
    if (doc.kind == "quotient") {
        QuotPres pres(*doc.poly, doc.relations);
        if (pres.reducible()) return pres.to_fin_algebra();
        throw input_error("quotient document needs a univariate principal ideal for this operation");
    }
    if (doc.kind == "polynomial")
        return FinAlgebra::truncated_polynomial(doc.poly->field, doc.poly->vars, doc.poly->trunc);
    throw input_error("operation needs a finite-dimensional algebra document");
}

Vec parse_point(const std::string& raw, FieldSpec f) {
    Vec v;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_scalar(Json(item), f));
    return v;
}

PolyDiffOp parse_operator(const std::string& expr, const PolyAlgebra& A) {
    // operator grammar: sums of terms  coeff-poly * D<i>^k  with D (or D1, D2,
    // ...) the derivative by the i-th variable; divided powers written D^[k]
    // are reached through composition of plain powers over Q.
    // Implemented by parsing with extra variables D1..Dv and normal-ordering.
    std::vector<std::string> ext = A.vars;
    int v = static_cast<int>(A.vars.size());
    if (v == 1) ext.push_back("D");
    else
        for (int i = 1; i <= v; ++i) ext.push_back("D" + std::to_string(i));
    MPoly p = parse_mpoly(expr, A.field, ext);
    PolyDiffOp op(A);
    for (const auto& [e, c] : p.terms()) {
        Exp xpart(static_cast<size_t>(v));
        Exp dpart(static_cast<size_t>(v));
        for (int i = 0; i < v; ++i) {
            xpart[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
            dpart[static_cast<size_t>(i)] = e[static_cast<size_t>(v + i)];
        }
        // plain power D^k = k! D^[k]
        Scalar fact = Scalar::one(A.field);
        for (int i = 0; i < v; ++i) fact *= factorial_scalar(A.field, dpart[static_cast<size_t>(i)]);
        PolyDiffOp term(A);
        term.add_term(dpart, MPoly::monomial(A.field, A.vars, xpart, c * fact));
        op = op + term;
    }
    return op;
}

Json points_json(const std::vector<SpecPoint>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(vec_json(p));
    return a;
}

Json handle_spectrum(const AlgebraDoc& doc, const CliOptions& opt, Json& results,
                     std::string& summary) {
    SpectrumBudget budget{opt.budget};
    if (!opt.point_raw.empty()) {
        Vec cand = parse_point(opt.point_raw, doc.field);
        std::optional<SpecPoint> got;
        if (doc.fin)
            got = check_point(*doc.fin, cand);
        else
            got = check_point(QuotPres(*doc.poly, doc.relations), cand);
        results["is_point"] = got.has_value();
        summary = got ? "candidate is a spectrum point" : "candidate is not a spectrum point";
        return results;
    }
    std::vector<SpecPoint> pts;
    if (doc.fin)
        pts = enumerate_spectrum(*doc.fin, budget);
    else
        pts = enumerate_spectrum(QuotPres(*doc.poly, doc.relations), budget);
    results["points"] = points_json(pts);
    results["count"] = pts.size();
    summary = std::to_string(pts.size()) + " spectrum point(s)";
    return results;
}

}  // namespace

Json run_subcommand(const std::string& name, const std::optional<Json>& doc_json,
                    const CliOptions& opt) {
    Json inputs = Json::object();
    if (doc_json) inputs["document"] = *doc_json;
    int trunc = 8;
    Json results = Json::object();
    std::string summary, status = "ok";

    auto need_doc = [&]() -> AlgebraDoc {
        if (!doc_json) throw input_error("subcommand '" + name + "' needs an input document");
        AlgebraDoc d = parse_algebra_doc(*doc_json);
        if (d.poly) trunc = d.poly->trunc;
        return d;
    };

    if (name == "spectrum") {
        AlgebraDoc doc = need_doc();
        handle_spectrum(doc, opt, results, summary);
    } else if (name == "tangent") {
        AlgebraDoc doc = need_doc();
        if (opt.point_raw.empty()) throw input_error("tangent needs --point");
        Vec h = parse_point(opt.point_raw, doc.field);
        std::vector<Vec> basis;
        if (doc.fin) {
            if (!check_point(*doc.fin, h)) throw input_error("--point is not a spectrum point");
            basis = tangent_space(*doc.fin, h);
        } else {
            QuotPres pres(*doc.poly, doc.relations);
            if (!check_point(pres, h)) throw input_error("--point is not a spectrum point");
            basis = tangent_space(pres, h);
        }
        results["dimension"] = basis.size();
        Json b = Json::array();
        for (const auto& v : basis) b.push_back(vec_json(v));
        results["basis"] = b;
        summary = "tangent space of dimension " + std::to_string(basis.size());
    } else if (name == "ghosts") {
        AlgebraDoc doc = need_doc();
        if (doc.fin) {
            std::vector<SpecPoint> pts;
            if (doc.field.is_prime_field()) pts = enumerate_spectrum(*doc.fin, SpectrumBudget{opt.budget});
            auto rep = ghosts(*doc.fin, pts);
            results["status"] = rep.status;
            results["geometric"] = rep.geometric;
            results["ghost_dimension"] = rep.ghost.dim();
            Json b = Json::array();
            for (const auto& v : rep.ghost.basis()) b.push_back(vec_json(v));
            results["ghost_basis"] = b;
            summary = rep.geometric ? "algebra is geometric" : "ghosts present";
            if (rep.status != "ok") status = rep.status;
        } else {
            auto pts = enumerate_spectrum(QuotPres(*doc.poly, doc.relations), SpectrumBudget{opt.budget});
            auto rep = ghosts(*doc.poly, pts, doc.poly->trunc);
            results["status"] = rep.status;
            results["geometric"] = rep.geometric;
            Json b = Json::array();
            for (const auto& g : rep.ghost_basis) b.push_back(g.str());
            results["ghost_basis"] = b;
            summary = rep.geometric ? "no ghosts up to the truncation degree"
                                    : std::to_string(rep.ghost_basis.size()) + " ghost basis element(s)";
        }
    } else if (name == "flow") {
        AlgebraDoc doc = need_doc();
        if (!doc.poly) throw input_error("flow expects a polynomial document");
        Vec coeffs;
        if (opt.op_expr.empty())
            coeffs = Vec(doc.poly->vars.size(), Scalar::one(doc.field));
        else
            coeffs = parse_point(opt.op_expr, doc.field);
        auto flow = nilpotent_flow(*doc.poly, coeffs, Scalar(doc.field, opt.t_value));
        Json imgs = Json::array();
        for (const auto& im : flow.images) imgs.push_back(im.str());
        results["variable_images"] = imgs;
        if (doc.field.is_prime_field()) {
            auto pts = enumerate_spectrum(*doc.poly, SpectrumBudget{opt.budget});
            Json moved = Json::array();
            for (const auto& h : pts) {
                Vec to;
                for (const auto& im : flow.images) to.push_back(im.eval(h));
                moved.push_back(Json::array({vec_json(h), vec_json(to)}));
            }
            results["point_map"] = moved;
        }
        summary = "flow at t = " + std::to_string(opt.t_value);
    } else if (name == "diff") {
        AlgebraDoc doc = need_doc();
        if (doc.kind == "polynomial") {
            PolyAlgebra A = *doc.poly;
            int v = static_cast<int>(A.vars.size());
            long gens = 1;
            for (int i = 1; i <= opt.order; ++i) gens = gens * (v + i) / i;
            results["backend"] = "normal-form";
            results["free_rank"] = gens;
            summary = "Df_" + std::to_string(opt.order) + " is free of rank " + std::to_string(gens) +
                      " over the coefficient ring (divided-power generators)";
        } else {
            AlgebraPtr A = doc_fin_algebra(doc);
            FinModule reg = FinModule::regular(A);
            Json dims = Json::array();
            bool flat = true;
            int d0 = DiffSpace::compute(reg, reg, 0).dim();
            for (int k = 0; k <= opt.order; ++k) {
                int dk = DiffSpace::compute(reg, reg, k).dim();
                dims.push_back(dk);
                if (dk != d0) flat = false;
            }
            results["backend"] = "matrix";
            results["dims"] = dims;
            summary = "dim Df_k computed for k = 0.." + std::to_string(opt.order);
            if (flat && doc.field == FieldSpec::prime(2)) {
                // Boolean rings: all higher operators collapse to Df_0
                bool boolean = true;
                for (int i = 0; i < A->dim() && boolean; ++i) {
                    Vec e = unit_vec(doc.field, A->dim(), i);
                    if (A->mul(e, e) != e) boolean = false;
                }
                if (boolean) {
                    results["note"] = "boolean-triviality reproduced";
                    summary += "; Boolean ring: higher-order operators are trivial";
                }
            }
        }
    } else if (name == "localize") {
        AlgebraDoc doc = need_doc();
        if (!doc.poly || doc.poly->vars.size() != 1)
            throw input_error("localize expects a univariate polynomial document");
        PolyAlgebra A = *doc.poly;
        PolyDiffOp op = parse_operator(opt.op_expr.empty() ? "D" : opt.op_expr, A);
        int k = std::max(op.order(), 0);
        if (opt.order > k) k = opt.order;
        MPoly p = opt.f_expr.empty() ? A.one() : parse_mpoly(opt.f_expr, doc.field, A.vars);
        MPoly s = opt.g_expr.empty() ? A.var(0) : parse_mpoly(opt.g_expr, doc.field, A.vars);
        RatExpr out = localize_op(op, k, p, s);
        results["operator"] = op.str();
        results["certificate_order"] = k;
        results["fraction"] = "(" + p.str() + ")/(" + s.str() + ")";
        results["value"] = out.str();
        // the binomial formula is insensitive to a non-minimal certificate
        results["certificate_insensitive"] = localize_op(op, k + 1, p, s).equals(out);
        summary = "localized operator value " + out.str();
    } else if (name == "symbol") {
        AlgebraDoc doc = need_doc();
        if (!doc.poly) throw input_error("symbol expects a polynomial document");
        PolyDiffOp op = parse_operator(opt.op_expr, *doc.poly);
        int k = opt.order >= op.order() ? opt.order : std::max(op.order(), 0);
        PolySymbol s = PolySymbol::of(op, k);
        results["order"] = k;
        results["symbol"] = s.str();
        if (!doc.field.is_prime_field()) {
            std::vector<std::string> xi;
            int v = static_cast<int>(doc.poly->vars.size());
            if (v == 1) xi.push_back("xi");
            else
                for (int i = 1; i <= v; ++i) xi.push_back("xi" + std::to_string(i));
            results["plain_form"] = s.plain_form(xi).str();
        }
        summary = "symbol at order " + std::to_string(k);
    } else if (name == "poisson") {
        AlgebraDoc doc = need_doc();
        if (!doc.poly) throw input_error("poisson expects a polynomial document");
        if (doc.field.is_prime_field())
            throw input_error("the poisson subcommand lifts through plain powers; use characteristic 0");
        PolyDiffOp F = parse_operator(opt.f_expr, *doc.poly);
        PolyDiffOp G = parse_operator(opt.g_expr, *doc.poly);
        PolySymbol sf = PolySymbol::of(F, std::max(F.order(), 0));
        PolySymbol sg = PolySymbol::of(G, std::max(G.order(), 0));
        PolySymbol br = poisson(sf, sg);
        std::vector<std::string> xi;
        int v = static_cast<int>(doc.poly->vars.size());
        if (v == 1) xi.push_back("xi");
        else
            for (int i = 1; i <= v; ++i) xi.push_back("xi" + std::to_string(i));
        auto check = canonical_bracket_check(sf, sg, xi);
        results["bracket"] = br.str();
        results["plain_form"] = br.is_zero() ? "0" : br.plain_form(xi).str();
        results["canonical_agrees"] = check.ok;
        summary = "poisson bracket computed; canonical form " +
                  std::string(check.ok ? "agrees" : "disagrees");
        if (!check.ok) status = "mismatch";
    } else if (name == "thm-ham-check") {
        AlgebraDoc doc = need_doc();
        if (!doc.poly || doc.field.is_prime_field())
            throw input_error("thm-ham-check expects a characteristic-0 polynomial document");
        PolyAlgebra A(doc.field, doc.poly->vars, std::max(doc.poly->trunc, 48));
        std::mt19937_64 rng(opt.seed);
        int v = static_cast<int>(A.vars.size());
        std::vector<std::string> xi;
        if (v == 1) xi.push_back("xi");
        else
            for (int i = 1; i <= v; ++i) xi.push_back("xi" + std::to_string(i));
        int trials = 25, ok_bracket = 0, ok_pullback = 0;
        for (int t = 0; t < trials; ++t) {
            PolyDiffOp a(A), b(A);
            for (int j = 0; j <= opt.order; ++j) {
                Exp alpha(static_cast<size_t>(v), 0);
                alpha[static_cast<size_t>(rng() % v)] = j;
                Exp e(static_cast<size_t>(v), 0);
                e[static_cast<size_t>(rng() % v)] = static_cast<int>(rng() % 3);
                a.add_term(alpha, MPoly::monomial(A.field, A.vars, e,
                                                  Scalar(A.field, static_cast<long>(rng() % 7) - 3)));
                b.add_term(alpha, MPoly::monomial(A.field, A.vars, e,
                                                  Scalar(A.field, static_cast<long>(rng() % 5) - 2)));
            }
            PolySymbol sa = PolySymbol::of(a, std::max(a.order(), 0));
            PolySymbol sb = PolySymbol::of(b, std::max(b.order(), 0));
            if (canonical_bracket_check(sa, sb, xi).ok) ++ok_bracket;
            int k = std::max(a.order(), 1);
            PolyDiffOp lift = a;
            if (a.order() < k) lift = lift + PolyDiffOp::divided(A, [&] {
                                    Exp al(static_cast<size_t>(v), 0);
                                    al[0] = k;
                                    return al;
                                }());
            MPoly fpol(A.field, A.vars);
            for (int j = 0; j <= 3; ++j) {
                Exp e(static_cast<size_t>(v), 0);
                e[static_cast<size_t>(rng() % v)] = j;
                fpol.add_term(e, Scalar(A.field, static_cast<long>(rng() % 5) - 2));
            }
            if (cotangent_pullback_check(lift, k, fpol).ok) ++ok_pullback;
        }
        results["bracket_trials_ok"] = ok_bracket;
        results["pullback_trials_ok"] = ok_pullback;
        results["trials"] = trials;
        bool all = ok_bracket == trials && ok_pullback == trials;
        summary = all ? "all sampled identities hold" : "identity failures detected";
        if (!all) status = "mismatch";
    } else if (name == "dfunctor") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        std::vector<int> sig = opt.signature.empty() ? std::vector<int>{1, 1} : opt.signature;
        auto md = multi_derivations(FinModule::regular(A), sig);
        Json sj = Json::array();
        for (int k : sig) sj.push_back(k);
        results["signature"] = sj;
        results["dimension"] = md.dim;
        summary = "constrained derivation space of dimension " + std::to_string(md.dim);
    } else if (name == "spencer") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        FinModule reg = FinModule::regular(A);
        int N = opt.degree;
        auto sp = spencer_complex(reg, N);
        Json dims = Json::array();
        for (int d : sp.complex.dims) dims.push_back(d);
        results["spot_dims"] = dims;
        results["labels"] = sp.complex.labels;
        auto h = spencer_homology(sp);
        Json hd = Json::array();
        for (int d : h.dims) hd.push_back(d);
        results["homology_dims"] = hd;
        auto split = splitting_check(reg, std::max(N, 1));
        results["splitting_additive"] = split.additive;
        summary = "Diff-Spencer complex of degree " + std::to_string(N) + " assembled; d.d = 0";
    } else if (name == "jet") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        FinModule reg = FinModule::regular(A);
        auto rep = jet_duality_check(reg, reg, opt.order);
        results["jet_dim"] = rep.dim_jet;
        results["diff_dim"] = rep.dim_diff;
        results["hom_dim"] = rep.dim_hom;
        results["tensor_dim"] = rep.dim_tensor;
        results["universal_ok"] = rep.universal_ok;
        results["iso_ok"] = rep.iso_ok;
        results["tensor_identity_ok"] = rep.tensor_identity_ok;
        summary = "jet module of order " + std::to_string(opt.order) + ", dim " +
                  std::to_string(rep.dim_jet);
        if (!(rep.universal_ok && rep.iso_ok)) status = "mismatch";
    } else if (name == "forms" || name == "derham") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        FormAlgebra forms = FormAlgebra::compute(A, std::max(opt.degree, 2));
        Json dims = Json::array();
        for (int k = 0; k <= forms.top(); ++k) dims.push_back(forms.dim(k));
        results["lambda_dims"] = dims;
        auto h = forms.de_rham().homology();
        Json hd = Json::array();
        for (int d : h.dims) hd.push_back(d);
        results["de_rham_dims"] = hd;
        summary = name == "derham" ? "de Rham cohomology computed" : "form tower computed";
    } else if (name == "jet-spencer") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        FormAlgebra forms = FormAlgebra::compute(A, opt.degree + 1);
        auto js = jet_spencer_complex(forms, opt.degree);
        Json dims = Json::array();
        for (int d : js.complex.dims) dims.push_back(d);
        results["spot_dims"] = dims;
        auto h = js.complex.homology();
        Json hd = Json::array();
        for (int d : h.dims) hd.push_back(d);
        results["homology_dims"] = hd;
        summary = "jet-Spencer complex of degree " + std::to_string(opt.degree) + "; d.d = 0";
    } else if (name == "berezinian") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        FormAlgebra forms = FormAlgebra::compute(A, A->dim() + 2);
        auto ber = berezinian(forms);
        Json hd = Json::array();
        for (int d : ber.h_dims) hd.push_back(d);
        results["graded_dims"] = hd;
        Json st = Json::array();
        for (int d : ber.stabilization) st.push_back(d);
        results["stabilization_orders"] = st;
        auto integral = integral_forms(forms);
        results["integral_complex_ok"] = integral.complex_ok;
        results["definitions_agree"] = integral.definitions_agree;
        summary = "Berezinian graded dimensions computed from the stabilized complex";
    } else if (name == "graded-diff") {
        AlgebraDoc doc = need_doc();
        if (!doc.graded) throw input_error("graded-diff expects a graded_structure_constants document");
        GradedModule reg = GradedModule::regular(doc.graded);
        auto comps = graded_diff_space(reg, reg, opt.order);
        Json cj = Json::array();
        for (const auto& c : comps) {
            Json e = Json::object();
            e["degree"] = Json::array({c.degree.z, c.degree.t});
            e["dim"] = c.basis.size();
            cj.push_back(e);
        }
        results["components"] = cj;
        results["total_dim"] = total_dim(comps);
        summary = "graded operator space of total dimension " + std::to_string(total_dim(comps));
    } else if (name == "diole") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        auto diole = make_diole(FinModule::regular(A));
        results["dim"] = diole->dim();
        results["degrees"] = [&] {
            Json a = Json::array();
            for (const auto& d : diole->degrees()) a.push_back(d.z);
            return a;
        }();
        summary = "diole algebra of dimension " + std::to_string(diole->dim());
    } else if (name == "algebroid-check") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        auto data = tautological_algebroid(A);
        auto rep = algebroid_check(data);
        results["lie_ok"] = rep.lie_ok;
        results["leibniz_ok"] = rep.leibniz_ok;
        results["anchor_lie_ok"] = rep.anchor_lie_ok;
        results["ok"] = rep.ok();
        results["witness"] = rep.witness;
        // round-trip through the degree -1 diole Poisson structure
        auto table = algebroid_to_diole_bracket(data);
        auto poisson_rep = diole_poisson_check(data.P, table, -1);
        results["diole_poisson_ok"] = poisson_rep.ok();
        summary = rep.ok() ? "tautological algebroid verified" : "algebroid axioms violated";
        if (!rep.ok()) status = "mismatch";
    } else if (name == "connection-check") {
        AlgebraDoc doc = need_doc();
        AlgebraPtr A = doc_fin_algebra(doc);
        FinModule reg = FinModule::regular(A);
        DiffSpace df1 = DiffSpace::compute(reg, reg, 1);
        auto kappa = canonical_free_connection(df1);
        auto rep = connection_check(reg, df1, kappa, opt.right);
        results["balanced"] = rep.balanced;
        results["linear_ok"] = rep.linear_ok;
        results["unit_ok"] = rep.unit_ok;
        results["leibniz_ok"] = rep.leibniz_ok;
        results["flat"] = rep.flat;
        summary = std::string(opt.right ? "right" : "left") + " connection checked";
    } else if (name == "levicivita") {
        if (!doc_json) throw input_error("levicivita needs a tensor document");
        auto tau = parse_tensor_doc(*doc_json);
        auto lc = christoffel_data(tau);
        Json gj = Json::array();
        for (int a = 0; a < lc.n; ++a) {
            Json row = Json::array();
            for (int i = 0; i < lc.n; ++i) {
                Json col = Json::array();
                for (int j = 0; j < lc.n; ++j) col.push_back(lc.G(a, i, j).str());
                row.push_back(col);
            }
            gj.push_back(row);
        }
        results["Gamma"] = gj;
        summary = "Levi-Civita form computed";
    } else if (name == "curvature") {
        if (!doc_json) throw input_error("curvature needs a tensor document");
        auto tau = parse_tensor_doc(*doc_json);
        auto cv = curvature(christoffel_data(tau));
        Json ric = Json::array();
        for (int i = 0; i < cv.n; ++i) {
            Json row = Json::array();
            for (int k = 0; k < cv.n; ++k) row.push_back(cv.ricci[static_cast<size_t>(i) * cv.n + k].str());
            ric.push_back(row);
        }
        results["ricci"] = ric;
        bool flat = true;
        for (const auto& e : cv.R)
            if (!e.is_zero()) flat = false;
        results["flat"] = flat;
        summary = flat ? "curvature vanishes identically" : "curvature computed";
    } else if (name == "ricci-tau") {
        if (!doc_json) throw input_error("ricci-tau needs a tensor document");
        auto tau = parse_tensor_doc(*doc_json);
        auto rep = ricci_tau_residual(tau);
        results["c_quad"] = rep.c_quad.str();
        results["c_div"] = rep.c_div.str();
        results["decomposition_ok"] = rep.decomposition_ok;
        results["eq1_zero"] = rep.eq1_zero;
        results["eq2_zero"] = rep.eq2_zero;
        Json e1 = Json::array(), e2 = Json::array();
        for (const auto& e : rep.eq1) e1.push_back(e.str());
        for (const auto& e : rep.eq2) e2.push_back(e.str());
        results["eq1"] = e1;
        results["eq2"] = e2;
        results["normalization"] = rep.normalization_note;
        summary = rep.decomposition_ok ? "decomposition identity verified"
                                       : "decomposition identity FAILED";
        if (!rep.decomposition_ok) status = "mismatch";
    } else {
        throw input_error("unknown subcommand '" + name + "'");
    }

    Json config = Json::object();
    config["budget"] = opt.budget;
    config["seed"] = opt.seed;
    config["conventions"] = conventions_json(trunc);
    return make_report(name, inputs, config, results, status, summary);
}

std::string render_text(const Json& report) {
    std::ostringstream out;
    out << report.value("operation", "?") << ": " << report.value("summary", "") << "\n";
    out << "status: " << report.value("status", "?") << "\n";
    if (report.contains("results"))
        for (auto it = report["results"].begin(); it != report["results"].end(); ++it)
            out << "  " << it.key() << " = " << it.value().dump() << "\n";
    return out.str();
}

}  // namespace diffalg
