#include "core/suites.hpp"

#include <algorithm>
#include <sstream>

namespace lefvar {

Rational random_rational(SplitMix64& rng)
{
    return rational(rng.range(-4, 4), rng.range(1, 4));
}

Scalar random_scalar(SplitMix64& rng)
{
    return Scalar(random_rational(rng), random_rational(rng));
}

Form<Scalar> random_combination(SplitMix64& rng, const std::vector<Form<Scalar>>& basis)
{
    require(!basis.empty(), Errc::invariant_violation, "empty basis");
    Form<Scalar> out(basis.front().dim());
    for (const auto& b : basis)
        out = out + random_scalar(rng) * b;
    return out;
}

namespace {

long binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - i + 1) / i;
    return r;
}

void emit(const RecordSink& sink, const char* suite, const char* check, std::string detail,
          const std::function<bool()>& body)
{
    CheckRecord r{suite, check, std::move(detail), false};
    try {
        r.pass = body();
    } catch (const Error& e) {
        r.pass = false;
        r.detail += std::string(" [") + e.what() + "]";
    }
    sink(r);
}

bool expect_error(Errc code, const std::function<void()>& body)
{
    try {
        body();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

std::vector<Form<Scalar>> degree2_basis(int N)
{
    std::vector<Form<Scalar>> out;
    for (const Mono& m : monomials_of_degree(N, 2))
        out.push_back(Form<Scalar>::monomial(N, m));
    return out;
}

std::vector<Form<Scalar>> primitive_real_11_basis(const Sl2Model<Scalar>& model)
{
    std::vector<Form<Scalar>> candidates = real_11_basis(model.dim());
    for (int j = 1; j < model.dim(); ++j) {
        candidates.push_back(h_unit(model.dim(), j) - h_unit(model.dim(), j + 1));
        candidates.push_back(h_unit(model.dim(), j) + h_unit(model.dim(), j + 1));
    }
    std::vector<Form<Scalar>> out;
    for (const auto& f : candidates)
        if (model.is_primitive(f))
            out.push_back(f);
    return out;
}

/// All (alpha, j) with alpha in a primitive basis of degree m and
/// L^j(alpha) != 0.
std::vector<std::pair<Form<Scalar>, int>> slot_cases(const Sl2Model<Scalar>& model)
{
    std::vector<std::pair<Form<Scalar>, int>> out;
    int N = model.dim();
    for (int m = 0; m <= N; ++m)
        for (const auto& alpha : model.primitive_basis(m))
            for (int j = 0; j <= N - m; ++j)
                out.emplace_back(alpha, j);
    return out;
}

Matrix<Scalar> scaled(const Matrix<Scalar>& m, const Scalar& c)
{
    Matrix<Scalar> out = m;
    for (auto& x : out.a)
        x = c * x;
    return out;
}

Matrix<Dual> dual_scaled(const Matrix<Dual>& m, const Dual& c)
{
    Matrix<Dual> out = m;
    for (auto& x : out.a)
        x = c * x;
    return out;
}

// ---------------------------------------------------------------- sl2 --

void sl2_relations(const Workspace& ws, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    auto mat = [&](auto&& op) {
        return operator_matrix<Scalar>(N, [&](const Form<Scalar>& x) { return op(x); });
    };
    Matrix<Scalar> l = mat([&](const Form<Scalar>& x) { return model.lef(x); });
    Matrix<Scalar> lam = mat([&](const Form<Scalar>& x) { return model.apply_lambda(x); });
    Matrix<Scalar> b = mat([&](const Form<Scalar>& x) { return model.apply_b(x); });
    emit(sink, "sl2", "sl2_relations", "dim " + std::to_string(l.rows), [&] {
        return lam * l - l * lam == b && b * l - l * b == scaled(l, Scalar(-2))
            && b * lam - lam * b == scaled(lam, Scalar(2));
    });
}

void sl2_algebra_basics(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    int N = ws.dim();
    emit(sink, "sl2", "graded_dimensions", "N=" + std::to_string(N), [&] {
        for (int n = 0; n <= 2 * N; ++n)
            if (long(monomials_of_degree(N, n).size()) != binom(2 * N, n))
                return false;
        for (int p = 0; p <= N; ++p)
            for (int q = 0; q <= N; ++q)
                if (long(monomials_of_bidegree(N, p, q).size()) != binom(N, p) * binom(N, q))
                    return false;
        return true;
    });
    emit(sink, "sl2", "supercommutativity",
         N <= 3 ? "exhaustive monomial pairs" : "256 seeded pairs", [&] {
             std::vector<Mono> all = all_monomials(N);
             auto check_pair = [&](const Mono& a, const Mono& b) {
                 Form<Scalar> fa = Form<Scalar>::monomial(N, a);
                 Form<Scalar> fb = Form<Scalar>::monomial(N, b);
                 Form<Scalar> ab = fa.wedge(fb);
                 Form<Scalar> ba = fb.wedge(fa);
                 bool flip = (a.degree() * b.degree()) % 2 != 0;
                 return ab == (flip ? -ba : ba);
             };
             if (N <= 3) {
                 for (const Mono& a : all)
                     for (const Mono& b : all)
                         if (!check_pair(a, b))
                             return false;
                 return true;
             }
             SplitMix64 rng(seed ^ 0x50ULL);
             for (int t = 0; t < 256; ++t)
                 if (!check_pair(all[std::size_t(rng.next() % all.size())],
                                 all[std::size_t(rng.next() % all.size())]))
                     return false;
             return true;
         });
}

void sl2_reconstruction(const Workspace& ws, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    emit(sink, "sl2", "primitive_reconstruction", "all monomials", [&] {
        for (const Mono& m : all_monomials(N)) {
            Form<Scalar> x = Form<Scalar>::monomial(N, m);
            PrimDecomp<Scalar> dec = model.primitive_decompose(x);
            if (model.reconstruct(dec) != x)
                return false;
            for (const auto& part : dec)
                if (!model.is_primitive(part.primitive))
                    return false;
        }
        return true;
    });
    emit(sink, "sl2", "lowering_on_powers", "k = 0..N", [&] {
        for (int k = 1; k <= N; ++k) {
            Form<Scalar> wk = model.omega().wedge_pow(k);
            if (model.apply_lambda(wk)
                != Scalar(k * (N - k + 1)) * model.omega().wedge_pow(k - 1))
                return false;
        }
        for (const auto& beta : model.primitive_basis(std::min(2, N)))
            if (!model.apply_lambda(beta).is_zero())
                return false;
        return true;
    });
}

void sl2_product_slots(const Workspace& ws, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    std::vector<Form<Scalar>> vs = degree2_basis(N);
    int cases = 0;
    emit(sink, "sl2", "product_slot_vanishing", "primitive basis x degree-2 monomials", [&] {
        for (int m = 0; m <= N; ++m) {
            for (const auto& alpha : model.primitive_basis(m)) {
                for (const auto& v : vs) {
                    PrimTriple<Scalar> t = wedge_primitive_triple(model, v, alpha);
                    Form<Scalar> sum = t.slot0 + model.lef(t.slot1)
                        + model.lef(model.lef(t.slot2));
                    if (sum != v.wedge(alpha))
                        return false;
                    ++cases;
                }
            }
        }
        return cases > 0;
    });
}

void sl2_deformation_checks(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    std::vector<Form<Scalar>> vs = degree2_basis(N);
    SplitMix64 rng(seed ^ 0xD3F0ULL);
    vs.push_back(random_combination(rng, degree2_basis(N)));
    vs.push_back(random_combination(rng, real_11_basis(N)));

    auto cases = slot_cases(model);
    int index = 0;
    for (const auto& v : vs) {
        Sl2Model<Dual> deformed = deform_model(model, v);
        std::string tag = "v#" + std::to_string(index++) + ", " + std::to_string(cases.size())
            + " (alpha,j) cases";
        emit(sink, "sl2", "deformed_decomposition_vs_oracle", tag, [&] {
            for (const auto& [alpha, j] : cases) {
                PrimDecomp<Dual> closed = deformed_decomposition(model, alpha, j, v);
                PrimDecomp<Dual> oracle =
                    deformed.primitive_decompose(embed(model.lef_pow(alpha, j)));
                if (closed.size() != oracle.size())
                    return false;
                for (std::size_t i = 0; i < closed.size(); ++i)
                    if (closed[i].power != oracle[i].power
                        || closed[i].primitive != oracle[i].primitive)
                        return false;
            }
            return true;
        });
        emit(sink, "sl2", "subspace_variation_vs_oracle", tag, [&] {
            for (const auto& [alpha, j] : cases) {
                Form<Dual> off(N);
                for (const auto& part :
                     deformed.primitive_decompose(embed(model.lef_pow(alpha, j))))
                    if (part.power != j)
                        off = off + deformed.lef_pow(part.primitive, part.power);
                if (slope_part(off) != subspace_variation(model, alpha, j, v))
                    return false;
                if (!body_part(off).is_zero())
                    return false;
            }
            return true;
        });
    }
}

void sl2_examples(const Workspace& ws, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    emit(sink, "sl2", "decomposition_examples", "powers and primitives", [&] {
        for (int j = 0; j <= N; ++j) {
            PrimDecomp<Scalar> dec = model.primitive_decompose(model.omega().wedge_pow(j));
            if (dec.size() != 1 || dec[0].power != j
                || dec[0].primitive != Form<Scalar>::unit(N))
                return false;
        }
        for (const auto& alpha : model.primitive_basis(std::min(2, N))) {
            PrimDecomp<Scalar> dec = model.primitive_decompose(alpha);
            if (dec.size() != 1 || dec[0].power != 0 || dec[0].primitive != alpha)
                return false;
        }
        return model.is_primitive(Form<Scalar>::unit(N)) && !model.is_primitive(model.omega());
    });
    emit(sink, "sl2", "deformed_decomposition_examples", "j=0 and alpha=1 forms", [&] {
        // j = 0: alpha = L_eps((N-n+1) eps s2) + (alpha - eps (N-n+1) L s2).
        for (int m = 0; m <= std::min(2, N); ++m) {
            for (const auto& alpha : model.primitive_basis(m)) {
                for (const auto& v : degree2_basis(N)) {
                    PrimTriple<Scalar> t = wedge_primitive_triple(model, v, alpha);
                    PrimDecomp<Dual> dec = deformed_decomposition(model, alpha, 0, v);
                    int n = alpha.degree();
                    Form<Dual> expect_slot0 =
                        dual_form(alpha, -(Scalar(N - n + 1) * model.lef(t.slot2)));
                    for (const auto& part : dec) {
                        if (part.power == 0 && part.primitive != expect_slot0)
                            return false;
                        if (part.power == 1
                            && part.primitive
                                != dual_form(Form<Scalar>(N), Scalar(N - n + 1) * t.slot2))
                            return false;
                    }
                }
            }
        }
        // alpha = 1, v primitive: L^j(1) = L_eps^j(1) + L_eps^{j-1}(-j eps v);
        // at j = N the lower slot is degenerate and drops out.
        for (const auto& v : primitive_real_11_basis(model)) {
            for (int j = 1; j <= N; ++j) {
                PrimDecomp<Dual> dec =
                    deformed_decomposition(model, Form<Scalar>::unit(N), j, v);
                bool lower_slot = (j <= N - 1) && !v.is_zero();
                if (dec.size() != std::size_t(lower_slot ? 2 : 1))
                    return false;
                if (lower_slot
                    && (dec[0].power != j - 1
                        || dec[0].primitive != dual_form(Form<Scalar>(N), Scalar(-j) * v)))
                    return false;
                if (dec.back().power != j
                    || dec.back().primitive != embed(Form<Scalar>::unit(N)))
                    return false;
            }
        }
        return true;
    });
    emit(sink, "sl2", "subspace_variation_examples", "rescaling and alpha=1", [&] {
        // v = c*omega only rescales the slots: variation vanishes.
        for (const auto& [alpha, j] : slot_cases(model))
            if (!subspace_variation(model, alpha, j, Scalar(3) * model.omega()).is_zero())
                return false;
        // alpha = 1, primitive v, j = 1: variation is -v.
        for (const auto& v : primitive_real_11_basis(model))
            if (subspace_variation(model, Form<Scalar>::unit(N), 1, v) != -v)
                return false;
        return true;
    });
}

void sl2_persistence(const Workspace& ws, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    emit(sink, "sl2", "primitivity_persistence", "both criteria agree on all cases", [&] {
        for (int m = 0; m <= N; ++m)
            for (const auto& alpha : model.primitive_basis(m)) {
                if (!stays_primitive(model, alpha, Form<Scalar>(N)))
                    return false;
                for (const auto& v : degree2_basis(N))
                    stays_primitive(model, alpha, v); // consistency asserted inside
            }
        if (N >= 2 && model.omega() == standard_omega(N)) {
            Form<Scalar> witness = h_unit(N, 1) - h_unit(N, 2);
            if (stays_primitive(model, witness, witness))
                return false;
        }
        return true;
    });
}

void sl2_commutator(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    const auto& model = ws.model();
    int N = ws.dim();
    std::vector<Form<Scalar>> vs = real_11_basis(N);
    SplitMix64 rng(seed ^ 0xC0117ULL);
    vs.push_back(random_combination(rng, real_11_basis(N)));
    vs.push_back(Form<Scalar>(N));
    vs.push_back(model.omega());
    int index = 0;
    for (const auto& v : vs) {
        emit(sink, "sl2", "lowering_commutator", "v#" + std::to_string(index++), [&] {
            return dual_lefschetz_commutator(model, v).is_zero();
        });
    }
    emit(sink, "sl2", "deformed_sl2_relation", "[Lambda_eps, L_eps] = B", [&] {
        for (int t = 0; t < 2; ++t) {
            Form<Scalar> v = vs[std::size_t(t)];
            Sl2Model<Dual> deformed = deform_model(model, v);
            Matrix<Dual> le = operator_matrix<Dual>(
                N, [&](const Form<Dual>& x) { return deformed.lef(x); });
            Matrix<Dual> lam = operator_matrix<Dual>(
                N, [&](const Form<Dual>& x) { return deformed.apply_lambda(x); });
            Matrix<Dual> b = operator_matrix<Dual>(
                N, [&](const Form<Dual>& x) { return deformed.apply_b(x); });
            Matrix<Dual> diff = lam * le - le * lam - b;
            if (!diff.is_zero())
                return false;
        }
        return true;
    });
}

// -------------------------------------------------------------- hodge --

void hodge_base_checks(const Workspace& ws, const RecordSink& sink)
{
    const auto& star = ws.star();
    const auto& model = ws.model();
    int N = ws.dim();
    emit(sink, "hodge", "star_involution", "all monomials", [&] {
        for (const Mono& m : all_monomials(N)) {
            Form<Scalar> x = Form<Scalar>::monomial(N, m);
            Form<Scalar> sx = hodge_star(x, star);
            for (const auto& [mm, c] : sx.terms())
                if (mm.p() != N - m.q() || mm.q() != N - m.p())
                    return false;
            if (hodge_star(sx, star) != ((m.degree() % 2 == 0) ? x : -x))
                return false;
        }
        return true;
    });
    emit(sink, "hodge", "star_reality", "conjugation equivariance", [&] {
        for (const Mono& m : all_monomials(N)) {
            Form<Scalar> x = Form<Scalar>::monomial(N, m);
            if (hodge_star(x.conjugated(), star) != hodge_star(x, star).conjugated())
                return false;
        }
        return true;
    });
    emit(sink, "hodge", "star_normalization", "unit and omega values", [&] {
        Form<Scalar> one = Form<Scalar>::unit(N);
        Form<Scalar> w = model.omega();
        if (hodge_star(one, star) != Scalar(Rational(1) / factorial(N)) * w.wedge_pow(N))
            return false;
        if (hodge_star(w, star) != Scalar(Rational(1) / factorial(N - 1)) * w.wedge_pow(N - 1))
            return false;
        if (hodge_star(Scalar(Rational(1) / factorial(N)) * w.wedge_pow(N), star) != one)
            return false;
        if (N >= 2)
            for (const auto& alpha : primitive_basis_bidegree(model, 1, 1))
                if (hodge_star(alpha, star)
                    != Scalar(-(Rational(1) / factorial(N - 2)))
                        * model.lef_pow(alpha, N - 2))
                    return false;
        return true;
    });
}

void hodge_variation_oracle(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    const auto& star = ws.star();
    int N = ws.dim();
    std::vector<Form<Scalar>> vs = real_11_basis(N);
    SplitMix64 rng(seed ^ 0x57A2ULL);
    vs.push_back(random_combination(rng, real_11_basis(N)));
    int index = 0;
    for (const auto& v : vs) {
        emit(sink, "hodge", "star_variation_vs_oracle",
             "v#" + std::to_string(index++) + ", all monomials", [&] {
                 StarContext<Dual> dctx = deform_star(star, v);
                 for (const Mono& m : all_monomials(N)) {
                     Form<Scalar> x = Form<Scalar>::monomial(N, m);
                     Form<Dual> ds = hodge_star(embed(x), dctx);
                     if (body_part(ds) != hodge_star(x, star))
                         return false;
                     if (slope_part(ds) != star_variation(x, v, star))
                         return false;
                 }
                 return true;
             });
    }
}

void hodge_variation_identities(const Workspace& ws, const RecordSink& sink)
{
    const auto& star = ws.star();
    const auto& model = ws.model();
    int N = ws.dim();

    emit(sink, "hodge", "star_variation_on_powers", "primitive v, j = 0..N-1", [&] {
        for (const auto& v : primitive_real_11_basis(model)) {
            for (int j = 0; j <= N - 1; ++j) {
                Form<Scalar> lhs = star_variation(model.omega().wedge_pow(j), v, star);
                Form<Scalar> rhs = Scalar(Rational(2) * factorial(j) / factorial(N - j - 1))
                    * v.wedge(model.omega().wedge_pow(N - j - 1));
                if (lhs != rhs)
                    return false;
            }
        }
        return true;
    });

    emit(sink, "hodge", "star_variation_slot_formula", "j=0 closed form", [&] {
        for (int m = 0; m <= N; ++m) {
            for (int p = 0; p <= m; ++p) {
                for (const auto& alpha : primitive_basis_bidegree(model, p, m - p)) {
                    for (const auto& v : real_11_basis(N)) {
                        int n = m;
                        PrimTriple<Scalar> t = wedge_primitive_triple(model, v, alpha);
                        Scalar front = sign_scalar(long(n) * (n + 1) / 2)
                            * i_pow(p - (m - p)) * Scalar(Rational(1) / factorial(N - n));
                        Form<Scalar> rhs(N);
                        if (N - n - 1 >= 0)
                            rhs = rhs
                                + Scalar(N - n) * alpha.wedge(v).wedge(
                                      model.omega().wedge_pow(N - n - 1));
                        rhs = rhs
                            - Scalar(N - n + 2)
                                * t.slot2.wedge(model.omega().wedge_pow(N - n + 1));
                        if (star_variation_closed(alpha, 0, v, star) != front * rhs)
                            return false;
                    }
                }
            }
        }
        return true;
    });

    if (N >= 2) {
        emit(sink, "hodge", "star_variation_trace_formula", "(1,1) example via top ratio", [&] {
            for (const auto& alpha : primitive_basis_bidegree(model, 1, 1)) {
                for (const auto& v : real_11_basis(N)) {
                    Form<Scalar> av = alpha.wedge(v);
                    Scalar f = form_ratio(av.wedge(model.omega().wedge_pow(N - 2)),
                                          model.omega().wedge_pow(N));
                    Form<Scalar> rhs = Scalar(Rational(N) / factorial(N - 2)) * f
                        * model.omega().wedge_pow(N - 1);
                    if (N >= 3)
                        rhs = rhs
                            - Scalar(Rational(1) / factorial(N - 3))
                                * model.omega().wedge_pow(N - 3).wedge(av);
                    if (star_variation_closed(alpha, 0, v, star) != rhs)
                        return false;
                }
            }
            return true;
        });
    }

    emit(sink, "hodge", "star_variation_scale_direction", "v = c*omega", [&] {
        for (const Scalar& c : {Scalar(1), Scalar(-3), Scalar(rational(2, 5))}) {
            for (const Mono& mono : all_monomials(N)) {
                Form<Scalar> x = Form<Scalar>::monomial(N, mono);
                // Independent route: each slot scales with exponent
                // N - n0 - 2j under omega -> (1+eps c) omega.
                Form<Scalar> expect(N);
                for (const auto& [p, q] : x.bidegrees()) {
                    for (const auto& part :
                         model.primitive_decompose(x.bidegree_component(p, q))) {
                        int n0 = p + q - 2 * part.power;
                        expect = expect
                            + (c * Scalar(N - n0 - 2 * part.power))
                                * star_primitive(part.primitive, part.power, star);
                    }
                }
                if (star_variation(x, c * model.omega(), star) != expect)
                    return false;
            }
        }
        return true;
    });
}

// -------------------------------------------------------------- torus --

bool valid_direction(const FourierForm<Scalar>& v)
{
    return v.has_pure_bidegree(1, 1) && v.is_real() && is_closed(v);
}

std::vector<FourierForm<Scalar>> torus_directions(const Workspace& ws, int mode_cap)
{
    std::vector<FourierForm<Scalar>> out;
    auto bound = ws.bindings.find("v");
    if (bound != ws.bindings.end() && valid_direction(bound->second))
        out.push_back(bound->second);
    int used = 0;
    for (const ModeKey& k : ws.torus->mode_set().keys()) {
        if (is_zero_mode(k) || negated(k) < k)
            continue;
        if (used >= mode_cap)
            break;
        auto forms = closed_11_mode_forms(*ws.torus, k);
        out.insert(out.end(), forms.begin(), forms.end());
        ++used;
    }
    out.push_back(FourierForm<Scalar>::constant(h_unit(ws.dim(), 1)));
    return out;
}

std::vector<FourierForm<Scalar>> seeded_fourier_samples(const Workspace& ws, std::uint64_t seed,
                                                        int count)
{
    int N = ws.dim();
    std::vector<ModeKey> keys(ws.torus->mode_set().keys().begin(),
                              ws.torus->mode_set().keys().end());
    std::vector<Mono> monos = all_monomials(N);
    SplitMix64 rng(seed ^ 0xF0'04ULL);
    std::vector<FourierForm<Scalar>> out;
    for (int t = 0; t < count; ++t) {
        FourierForm<Scalar> x(N);
        for (int parts = 0; parts < 3; ++parts) {
            const ModeKey& k = keys[std::size_t(rng.next() % keys.size())];
            const Mono& m = monos[std::size_t(rng.next() % monos.size())];
            x = x + FourierForm<Scalar>::mode(k, Form<Scalar>::monomial(N, m, random_scalar(rng)));
        }
        out.push_back(std::move(x));
    }
    return out;
}

void torus_operator_checks(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    const TorusContext& ctx = *ws.torus;
    int N = ws.dim();
    auto samples = seeded_fourier_samples(ws, seed, 6);

    emit(sink, "torus", "differential_complexes", "6 seeded samples", [&] {
        for (const auto& x : samples) {
            if (!exterior_d(exterior_d(x)).is_zero())
                return false;
            if (!codifferential(codifferential(x, ctx), ctx).is_zero())
                return false;
            FourierForm<Scalar> dplus = exterior_d(x) + codifferential(x, ctx);
            if (exterior_d(dplus) + codifferential(dplus, ctx) != laplacian(x, ctx))
                return false;
            if (!exterior_d(x.mode_zero_part()).is_zero()
                || !codifferential(x.mode_zero_part(), ctx).is_zero())
                return false;
        }
        return true;
    });

    emit(sink, "torus", "laplace_commutes", "with L and star", [&] {
        FourierForm<Scalar> omega_c = FourierForm<Scalar>::constant(ws.model().omega());
        for (const auto& x : samples) {
            if (laplacian(wedge(omega_c, x, ctx.mode_set()), ctx)
                != wedge(omega_c, laplacian(x, ctx), ctx.mode_set()))
                return false;
            if (laplacian(star_fourier(x, ctx), ctx) != star_fourier(laplacian(x, ctx), ctx))
                return false;
        }
        return true;
    });

    bool standard = ws.model().omega() == standard_omega(N);
    emit(sink, "torus", "laplace_blocks_scalar",
         standard ? "standard omega, first modes" : "skipped: nonstandard omega", [&] {
             if (!standard)
                 return true;
             int seen = 0;
             for (const ModeKey& k : ctx.mode_set().keys()) {
                 if (is_zero_mode(k) || seen >= 4)
                     continue;
                 ++seen;
                 // The block must act as one scalar on every monomial.
                 Scalar eigen;
                 bool first = true;
                 for (const Mono& m : all_monomials(N)) {
                     FourierForm<Scalar> x =
                         FourierForm<Scalar>::mode(k, Form<Scalar>::monomial(N, m));
                     FourierForm<Scalar> lx = laplacian(x, ctx);
                     Scalar c = lx.coeff(k).coeff(m);
                     if (lx != c * x)
                         return false;
                     if (first) {
                         eigen = c;
                         first = false;
                     } else if (c != eigen) {
                         return false;
                     }
                 }
                 if (eigen.is_zero())
                     return false;
             }
             return true;
         });

    emit(sink, "torus", "green_operator", "inverse off harmonics, commutes with d", [&] {
        for (const auto& x : samples) {
            FourierForm<Scalar> expect = x - x.mode_zero_part();
            if (green(laplacian(x, ctx), ctx) != expect)
                return false;
            if (laplacian(green(x, ctx), ctx) != expect)
                return false;
            if (green(exterior_d(x), ctx) != exterior_d(green(x, ctx)))
                return false;
            if (green(codifferential(x, ctx), ctx) != codifferential(green(x, ctx), ctx))
                return false;
        }
        return green(FourierForm<Scalar>::constant(ws.model().omega()), ctx).is_zero();
    });

    emit(sink, "torus", "hodge_split", "constants, exacts, seeded samples", [&] {
        FourierForm<Scalar> c = FourierForm<Scalar>::constant(ws.model().omega());
        HodgeSplit s = hodge_decompose(c, ctx);
        if (s.harmonic != c || !s.d_exact.is_zero() || !s.dstar_exact.is_zero())
            return false;
        for (const auto& y : samples) {
            FourierForm<Scalar> dy = exterior_d(y);
            HodgeSplit sd = hodge_decompose(dy, ctx);
            if (sd.harmonic != FourierForm<Scalar>(N) || sd.d_exact != dy
                || !sd.dstar_exact.is_zero())
                return false;
            hodge_decompose(y, ctx); // recomposition asserted inside
        }
        return true;
    });

    emit(sink, "torus", "mode_set_guard", "overflow raised, closure holds", [&] {
        const auto& keys = ctx.mode_set().keys();
        for (const ModeKey& k : keys)
            if (!ctx.mode_set().contains(negated(k)))
                return false;
        if (!ctx.mode_set().contains(ModeKey(std::size_t(2 * N), 0)))
            return false;
        ModeKey top = *keys.rbegin();
        if (is_zero_mode(top))
            return true; // only the zero mode declared; nothing can overflow
        FourierForm<Scalar> x = FourierForm<Scalar>::mode(top, Form<Scalar>::unit(N));
        return expect_error(Errc::mode_overflow,
                            [&] { (void)wedge(x, x, ctx.mode_set()); });
    });
}

void torus_variation_checks(const Workspace& ws, const RecordSink& sink)
{
    const TorusContext& ctx = *ws.torus;
    int N = ws.dim();
    auto bound = ws.bindings.find("v");
    if (bound != ws.bindings.end()) {
        emit(sink, "torus", "binding_direction", "'v' must be real, closed, (1,1)",
             [&] { return valid_direction(bound->second); });
    }
    auto directions = torus_directions(ws, 4);

    std::vector<Form<Scalar>> harmonic_monos;
    for (const Mono& m : all_monomials(N))
        harmonic_monos.push_back(Form<Scalar>::monomial(N, m));

    int index = 0;
    for (const auto& v : directions) {
        std::string tag = "v#" + std::to_string(index++) + ", "
            + std::to_string(harmonic_monos.size()) + " harmonic alphas";
        emit(sink, "torus", "harmonic_correction", tag, [&] {
            for (const auto& a : harmonic_monos) {
                FourierForm<Scalar> alpha = FourierForm<Scalar>::constant(a);
                FourierForm<Dual> beta = deformed_harmonic_part(alpha, v, ctx);
                if (!laplacian_eps(beta, v, ctx).is_zero())
                    return false;
            }
            return true;
        });
    }

    emit(sink, "torus", "harmonic_variation_membership", "image(d*), vanishing link", [&] {
        for (const auto& v : directions) {
            FourierForm<Scalar> alpha = FourierForm<Scalar>::constant(ws.model().omega());
            HarmonicVariation hv = harmonic_variation(v, alpha, ctx); // membership asserted
            FourierForm<Dual> beta = deformed_harmonic_part(alpha, v, ctx);
            if (slope_part(beta) != -hv.h_tilde)
                return false;
        }
        // Constant directions never move harmonics.
        FourierForm<Scalar> vc = FourierForm<Scalar>::constant(h_unit(N, 1));
        for (const auto& a : harmonic_monos)
            if (!harmonic_variation(vc, FourierForm<Scalar>::constant(a), ctx).h.is_zero())
                return false;
        return true;
    });

    // Admissible (alpha, j) pure-type primitive cases.
    std::vector<std::pair<Form<Scalar>, int>> cases;
    for (int p = 0; p <= N; ++p)
        for (int q = 0; q <= N; ++q)
            for (const auto& alpha : primitive_basis_bidegree(ws.model(), p, q))
                for (int j = 0; j <= N - p - q; ++j)
                    cases.emplace_back(alpha, j);

    index = 0;
    for (const auto& v : directions) {
        emit(sink, "torus", "harmonic_variation_closed_form",
             "v#" + std::to_string(index++) + ", " + std::to_string(cases.size()) + " cases",
             [&] {
                 for (const auto& [a, j] : cases) {
                     FourierForm<Scalar> alpha = FourierForm<Scalar>::constant(a);
                     FourierForm<Scalar> x =
                         FourierForm<Scalar>::constant(ws.model().lef_pow(a, j));
                     if (harmonic_variation_closed(alpha, j, v, ctx)
                         != harmonic_variation(v, x, ctx).h)
                         return false;
                 }
                 return true;
             });
    }

    emit(sink, "torus", "delta_relations", std::to_string(cases.size()) + " cases per v", [&] {
        for (const auto& v : directions) {
            for (const auto& [a, j] : cases) {
                if (j > 0)
                    continue;
                FourierForm<Scalar> alpha = FourierForm<Scalar>::constant(a);
                FourierTriple t = product_triple(alpha, v, ctx);
                DeltaSplit split = differential_split(t.slot0, t.slot1, t.slot2, ctx);
                FourierForm<Scalar> av = wedge(alpha, v, ctx.mode_set());
                bool harmonic = is_harmonic(av, ctx);
                // Uniformly: alpha*v harmonic iff both delta components
                // vanish.
                if (harmonic != (split.delta0.is_zero() && split.delta1.is_zero()))
                    return false;
                // The beta1-closedness criterion needs the middle slot to
                // exist (deg alpha <= N-1)...
                if (a.degree() <= N - 1 && harmonic != split.beta1_closed)
                    return false;
                // ...and the two-sided transfer to beta0/beta2 needs
                // delta0's slot to stay injective (deg alpha <= N-2).
                if (a.degree() <= N - 2
                    && split.beta1_closed != split.beta0_beta2_closed)
                    return false;
            }
        }
        return true;
    });

    emit(sink, "torus", "harmonicity_transfer", "certificates agree; witnesses counted", [&] {
        int negatives = 0, positives = 0;
        bool moving_direction = false;
        for (const auto& v : directions) {
            if (v != v.mode_zero_part())
                moving_direction = true;
            for (const auto& [a, j] : cases) {
                if (ws.model().lef_pow(a, j).is_zero())
                    continue;
                HarmonicityTransfer tr = stays_harmonic(
                    FourierForm<Scalar>::constant(a), j, v, ctx);
                (tr.stays ? positives : negatives) += 1;
            }
        }
        return positives > 0 && (!moving_direction || negatives > 0);
    });

    if (N >= 2) {
        emit(sink, "torus", "intro_instance", "primitive harmonic (1,1) alphas", [&] {
            for (const auto& v : directions) {
                for (const auto& a : primitive_basis_bidegree(ws.model(), 1, 1)) {
                    FourierForm<Scalar> alpha = FourierForm<Scalar>::constant(a);
                    bool stays = harmonic_variation(v, alpha, ctx).h.is_zero();
                    FourierForm<Scalar> product =
                        wedge(wedge(alpha, v, ctx.mode_set()),
                              FourierForm<Scalar>::constant(
                                  ws.model().omega().wedge_pow(N - 2)),
                              ctx.mode_set());
                    if (stays != is_harmonic(product, ctx))
                        return false;
                }
            }
            return true;
        });
    }
}

// -------------------------------------------------------------- cones --

void cones_checks(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    const TorusContext& ctx = *ws.torus;
    int N = ws.dim();

    std::vector<FourierForm<Scalar>> vs;
    vs.push_back(FourierForm<Scalar>::constant(ws.model().omega()));
    vs.push_back(FourierForm<Scalar>::constant(h_unit(N, 1)));
    auto bound = ws.bindings.find("v");
    if (bound != ws.bindings.end() && valid_direction(bound->second))
        vs.push_back(bound->second);
    for (const ModeKey& k : ctx.mode_set().keys()) {
        if (is_zero_mode(k) || negated(k) < k)
            continue;
        auto forms = closed_11_mode_forms(ctx, k);
        if (!forms.empty()) {
            vs.push_back(forms.front());
            break;
        }
    }

    emit(sink, "cones", "tangent_identity", std::to_string(vs.size()) + " directions, all i",
         [&] {
             for (int i = 0; i <= N - 1; ++i) {
                 for (const auto& v : vs) {
                     TangentCheck tc = tangent_identity_check(v, i, ctx);
                     if (!tc.identity_exact)
                         return false;
                     bool constant = (v == v.mode_zero_part());
                     if (tc.v_harmonic != constant)
                         return false;
                 }
             }
             return true;
         });

    emit(sink, "cones", "cone_linearity_reports", "all i on the flat model", [&] {
        ConeSuiteReport report = cone_equivalence_suite(harmonic_11_basis(ctx), ctx);
        if (!report.monotone || !report.last_criterion)
            return false;
        for (const auto& r : report.reports)
            if (!r.criterion_holds)
                return false;
        return report.top_power_criterion && report.square_criterion;
    });

    emit(sink, "cones", "laplace_lefschetz_commute", "i = N-1 precondition", [&] {
        FourierForm<Scalar> omega_c = FourierForm<Scalar>::constant(ws.model().omega());
        for (const auto& x : seeded_fourier_samples(ws, seed, 4))
            if (laplacian(wedge(omega_c, x, ctx.mode_set()), ctx)
                != wedge(omega_c, laplacian(x, ctx), ctx.mode_set()))
                return false;
        return ki_linear_criterion(N - 1, harmonic_11_basis(ctx), ctx).criterion_holds;
    });

    if (N == 2) {
        emit(sink, "cones", "polarization_soundness", "seeded expansion identity", [&] {
            SplitMix64 rng(seed ^ 0x90'1AULL);
            auto basis = harmonic_11_basis(ctx);
            std::vector<Rational> cs;
            for (std::size_t m = 0; m < basis.size(); ++m)
                cs.push_back(random_rational(rng));
            FourierForm<Scalar> alpha(N);
            for (std::size_t m = 0; m < basis.size(); ++m)
                alpha = alpha + Scalar(cs[m]) * basis[m];
            // alpha^2 expands exactly into the symmetrized witness products.
            FourierForm<Scalar> direct = wedge(alpha, alpha, ctx.mode_set());
            FourierForm<Scalar> expanded(N);
            for (std::size_t m1 = 0; m1 < basis.size(); ++m1)
                for (std::size_t m2 = 0; m2 < basis.size(); ++m2)
                    expanded = expanded
                        + Scalar(cs[m1] * cs[m2])
                            * wedge(basis[m1], basis[m2], ctx.mode_set());
            return direct == expanded;
        });
    }

    emit(sink, "cones", "bad_basis_rejection", "non-harmonic injection", [&] {
        auto basis = harmonic_11_basis(ctx);
        for (const ModeKey& k : ctx.mode_set().keys()) {
            if (is_zero_mode(k))
                continue;
            auto forms = closed_11_mode_forms(ctx, k);
            if (forms.empty())
                continue;
            basis.push_back(forms.front());
            return expect_error(Errc::bad_basis,
                                [&] { (void)ki_linear_criterion(0, basis, ctx); });
        }
        // No nonzero modes declared: drop an element instead to break spanning.
        basis.pop_back();
        return expect_error(Errc::bad_basis,
                            [&] { (void)ki_linear_criterion(0, basis, ctx); });
    });
}

} // namespace

void run_sl2_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    sl2_relations(ws, sink);
    sl2_algebra_basics(ws, seed, sink);
    sl2_reconstruction(ws, sink);
    sl2_product_slots(ws, sink);
    sl2_deformation_checks(ws, seed, sink);
    sl2_examples(ws, sink);
    sl2_persistence(ws, sink);
    sl2_commutator(ws, seed, sink);
}

void run_hodge_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    hodge_base_checks(ws, sink);
    hodge_variation_oracle(ws, seed, sink);
    hodge_variation_identities(ws, sink);
}

void run_torus_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    torus_operator_checks(ws, seed, sink);
    torus_variation_checks(ws, sink);
}

void run_cones_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink)
{
    cones_checks(ws, seed, sink);
}

int run_suites(const Workspace& ws, const std::string& suite,
               std::optional<std::uint64_t> seed_override, const RecordSink& sink)
{
    std::uint64_t seed = seed_override.value_or(ws.descriptor.seed);
    int failures = 0;
    RecordSink counting = [&](const CheckRecord& r) {
        if (!r.pass)
            ++failures;
        sink(r);
    };
    bool all = suite == "all";
    bool known = false;
    if (all || suite == "sl2") {
        run_sl2_suite(ws, seed, counting);
        known = true;
    }
    if (all || suite == "hodge") {
        run_hodge_suite(ws, seed, counting);
        known = true;
    }
    if (all || suite == "torus") {
        run_torus_suite(ws, seed, counting);
        known = true;
    }
    if (all || suite == "cones") {
        run_cones_suite(ws, seed, counting);
        known = true;
    }
    require(known, Errc::bad_descriptor, "unknown suite '" + suite + "'");
    return failures;
}

namespace {

std::string json_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string record_json_line(const CheckRecord& r)
{
    return std::string("{\"suite\":\"") + json_escape(r.suite) + "\",\"check\":\""
        + json_escape(r.check) + "\",\"case\":\"" + json_escape(r.detail) + "\",\"status\":\""
        + (r.pass ? "pass" : "fail") + "\"}";
}

std::string record_table_header()
{
    std::ostringstream os;
    os.width(8);
    os << std::left << "suite";
    os.width(36);
    os << std::left << "check";
    os.width(7);
    os << std::left << "status";
    os << "case";
    return os.str();
}

std::string record_table_row(const CheckRecord& r)
{
    std::ostringstream os;
    os.width(8);
    os << std::left << r.suite;
    os.width(36);
    os << std::left << r.check;
    os.width(7);
    os << std::left << (r.pass ? "pass" : "FAIL");
    os << r.detail;
    return os.str();
}

} // namespace lefvar
