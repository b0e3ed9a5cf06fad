#include "core/star.hpp"

namespace lefvar {

template <class R>
StarContext<R>::StarContext(Sl2Model<R> model, bool validate) : model_(std::move(model))
{
    if (!validate)
        return;
    int N = model_.dim();
    for (const Mono& m : all_monomials(N)) {
        Form<R> x = Form<R>::monomial(N, m);
        Form<R> sx = hodge_star(x, *this);
        for (const auto& [mm, c] : sx.terms())
            require(mm.p() == N - m.q() && mm.q() == N - m.p(), Errc::invariant_violation,
                    "star does not map (p,q) to (N-q,N-p)");
        Form<R> ssx = hodge_star(sx, *this);
        Form<R> expect = (m.degree() % 2 == 0) ? x : -x;
        require(ssx == expect, Errc::invariant_violation, "star does not square to (-1)^n");
    }
}

template <class R>
Form<R> star_primitive(const Form<R>& alpha, int r, const StarContext<R>& ctx)
{
    int N = ctx.dim();
    require(r >= 0, Errc::invariant_violation, "negative omega power");
    if (alpha.is_zero())
        return Form<R>(N);
    require(alpha.is_pure_type(), Errc::not_pure_type, "alpha must have pure type");
    require(ctx.model().is_primitive(alpha), Errc::not_primitive, "alpha is not primitive");
    const Mono& lead = alpha.terms().begin()->first;
    int p = lead.p(), q = lead.q();
    int n = p + q;
    if (n + r > N)
        return Form<R>(N);
    Scalar coeff = sign_scalar(long(n) * (n + 1) / 2) * i_pow(p - q)
        * Scalar(factorial(r) / factorial(N - n - r));
    return R(coeff) * ctx.model().lef_pow(alpha, N - n - r);
}

template <class R>
Form<R> hodge_star(const Form<R>& x, const StarContext<R>& ctx)
{
    Form<R> out(ctx.dim());
    for (const auto& [p, q] : x.bidegrees()) {
        Form<R> comp = x.bidegree_component(p, q);
        for (const auto& part : ctx.model().primitive_decompose(comp))
            out = out + star_primitive(part.primitive, part.power, ctx);
    }
    return out;
}

template class StarContext<Scalar>;
template class StarContext<Dual>;
template Form<Scalar> star_primitive(const Form<Scalar>&, int, const StarContext<Scalar>&);
template Form<Dual> star_primitive(const Form<Dual>&, int, const StarContext<Dual>&);
template Form<Scalar> hodge_star(const Form<Scalar>&, const StarContext<Scalar>&);
template Form<Dual> hodge_star(const Form<Dual>&, const StarContext<Dual>&);

namespace {

void require_11(const Form<Scalar>& v)
{
    for (const auto& [m, c] : v.terms())
        require(m.p() == 1 && m.q() == 1, Errc::not_pure_type,
                "deformation direction must have bidegree (1,1)");
}

} // namespace

StarContext<Dual> deform_star(const StarContext<Scalar>& ctx, const Form<Scalar>& v)
{
    require_11(v);
    return StarContext<Dual>(deform_model(ctx.model(), v), /*validate=*/false);
}

Form<Dual> deformed_star(const Form<Scalar>& x, const Form<Scalar>& v,
                         const StarContext<Scalar>& ctx)
{
    require(v.is_real(), Errc::bad_descriptor, "deformation direction must be real");
    StarContext<Dual> dctx = deform_star(ctx, v);
    return hodge_star(embed(x), dctx);
}

StarVariationTerms star_variation_terms(int a, int b, int j, int N)
{
    int n = a + b + 2 * j;
    require(j >= 0 && N - n + j >= 0, Errc::invariant_violation,
            "variation terms need alpha*omega^j != 0");
    long sign_exp = long(a + b - 2) * (a + b - 1) / 2;
    Scalar eta =
        sign_scalar(sign_exp) * i_pow(a - b) * Scalar(factorial(j) / factorial(N - n + j));
    StarVariationTerms t;
    t.eta = eta;
    t.c0 = -(Scalar(N - n + j) * eta);
    t.c0_prime = (j > 0) ? t.c0 : Scalar(0);
    t.c1 = Scalar(j) * eta;
    t.c2 = Scalar(N - n + 3 * j + 2) * eta;
    return t;
}

Form<Scalar> star_variation_closed(const Form<Scalar>& alpha, int j, const Form<Scalar>& v,
                                   const StarContext<Scalar>& ctx)
{
    int N = ctx.dim();
    require(j >= 0, Errc::invariant_violation, "negative slot");
    require_11(v);
    if (alpha.is_zero())
        return Form<Scalar>(N);
    require(alpha.is_pure_type(), Errc::not_pure_type, "alpha must have pure type");
    require(ctx.model().is_primitive(alpha), Errc::not_primitive, "alpha is not primitive");
    const Mono& lead = alpha.terms().begin()->first;
    int a = lead.p(), b = lead.q();
    int n = a + b + 2 * j;
    if (N - n + j < 0)
        return Form<Scalar>(N);

    StarVariationTerms t = star_variation_terms(a, b, j, N);
    PrimTriple<Scalar> s = wedge_primitive_triple(ctx.model(), v, alpha);
    const auto& model = ctx.model();

    Form<Scalar> out(N);
    auto add_term = [&](const Scalar& c, const Form<Scalar>& f, int power) {
        if (c.is_zero() || f.is_zero())
            return;
        require(power >= 0, Errc::invariant_violation, "negative omega power with live term");
        out = out + c * model.lef_pow(f, power);
    };
    add_term(t.c0_prime, s.slot0, N - n + j - 1);
    add_term(t.c1, s.slot1, N - n + j);
    add_term(t.c2, s.slot2, N - n + j + 1);
    add_term(t.c0, alpha.wedge(v), N - n + j - 1);
    return out;
}

Form<Scalar> star_variation(const Form<Scalar>& x, const Form<Scalar>& v,
                            const StarContext<Scalar>& ctx)
{
    Form<Scalar> out(ctx.dim());
    for (const auto& [p, q] : x.bidegrees()) {
        Form<Scalar> comp = x.bidegree_component(p, q);
        for (const auto& part : ctx.model().primitive_decompose(comp))
            out = out + star_variation_closed(part.primitive, part.power, v, ctx);
    }
    return out;
}

Scalar form_ratio(const Form<Scalar>& x, const Form<Scalar>& y)
{
    require(!y.is_zero(), Errc::division_by_zero, "ratio against the zero form");
    const auto& [m, c] = *y.terms().begin();
    Scalar ratio = x.coeff(m) / c;
    require(x == ratio * y, Errc::invariant_violation, "forms are not proportional");
    return ratio;
}

} // namespace lefvar
