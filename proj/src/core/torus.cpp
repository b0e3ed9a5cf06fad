#include "core/torus.hpp"

#include <algorithm>

namespace lefvar {

ModeKey negated(const ModeKey& k)
{
    ModeKey out(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        out[i] = -k[i];
    return out;
}

bool is_zero_mode(const ModeKey& k)
{
    return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
}

ModeSet::ModeSet(int dim, const std::vector<ModeKey>& keys) : dim_(dim)
{
    require(dim >= 1, Errc::dimension_mismatch, "dimension must be positive");
    for (const auto& k : keys) {
        require(int(k.size()) == 2 * dim, Errc::bad_descriptor,
                "mode vector must have length 2N");
        keys_.insert(k);
        keys_.insert(negated(k));
    }
    keys_.insert(ModeKey(std::size_t(2 * dim), 0));
}

ModeSet ModeSet::box(int dim, int radius)
{
    require(radius >= 0, Errc::bad_descriptor, "negative mode radius");
    std::vector<ModeKey> keys;
    ModeKey k(std::size_t(2 * dim), -radius);
    while (true) {
        keys.push_back(k);
        std::size_t i = 0;
        while (i < k.size() && k[i] == radius)
            k[i++] = -radius;
        if (i == k.size())
            break;
        ++k[i];
    }
    return ModeSet(dim, keys);
}

Form<Scalar> mode_covector(int dim, const ModeKey& k)
{
    require(int(k.size()) == 2 * dim, Errc::dimension_mismatch,
            "mode vector must have length 2N");
    Form<Scalar> out(dim);
    Scalar half(rational(1, 2));
    Scalar half_i = half * Scalar::i();
    for (int j = 0; j < dim; ++j) {
        Scalar kj(long(k[std::size_t(j)]));
        Scalar knj(long(k[std::size_t(dim + j)]));
        Scalar z_coeff = half_i * kj + half * knj;
        Scalar zb_coeff = half_i * kj - half * knj;
        out = out + z_coeff * Form<Scalar>::dz(dim, j + 1);
        out = out + zb_coeff * Form<Scalar>::dzb(dim, j + 1);
    }
    return out;
}

template <class R>
FourierForm<R> wedge(const FourierForm<R>& a, const FourierForm<R>& b, const ModeSet& modes)
{
    require(a.dim() == b.dim(), Errc::dimension_mismatch, "dimension mismatch");
    FourierForm<R> out(a.dim());
    for (const auto& [ka, fa] : a.modes()) {
        for (const auto& [kb, fb] : b.modes()) {
            Form<R> prod = fa.wedge(fb);
            if (prod.is_zero())
                continue;
            ModeKey k(ka.size());
            for (std::size_t i = 0; i < k.size(); ++i)
                k[i] = ka[i] + kb[i];
            require(modes.contains(k), Errc::mode_overflow,
                    "wedge leaves the declared mode set");
            out.add(k, prod);
        }
    }
    return out;
}

template FourierForm<Scalar> wedge(const FourierForm<Scalar>&, const FourierForm<Scalar>&,
                                   const ModeSet&);
template FourierForm<Dual> wedge(const FourierForm<Dual>&, const FourierForm<Dual>&,
                                 const ModeSet&);

template <class R>
FourierForm<R> exterior_d(const FourierForm<R>& x)
{
    FourierForm<R> out(x.dim());
    for (const auto& [k, f] : x.modes()) {
        if (is_zero_mode(k))
            continue;
        Form<Scalar> w = mode_covector(x.dim(), k);
        if constexpr (is_dual_v<R>)
            out.add(k, embed(w).wedge(f));
        else
            out.add(k, w.wedge(f));
    }
    return out;
}

template FourierForm<Scalar> exterior_d(const FourierForm<Scalar>&);
template FourierForm<Dual> exterior_d(const FourierForm<Dual>&);

namespace {

Form<Scalar> costar_mode(const Form<Scalar>& f, const ModeKey& k, const StarContext<Scalar>& star)
{
    Form<Scalar> w = mode_covector(f.dim(), k);
    return -hodge_star(w.wedge(hodge_star(f, star)), star);
}

} // namespace

TorusContext::TorusContext(StarContext<Scalar> star, ModeSet modes)
    : star_(std::move(star)), modes_(std::move(modes))
{
    require(modes_.dim() == star_.dim(), Errc::dimension_mismatch,
            "mode set over wrong dimension");
    int N = star_.dim();
    for (const ModeKey& k : modes_.keys()) {
        if (is_zero_mode(k))
            continue;
        std::vector<Matrix<Scalar>> blocks;
        for (int n = 0; n <= 2 * N; ++n) {
            const auto monos = monomials_of_degree(N, n);
            Matrix<Scalar> block(int(monos.size()), int(monos.size()));
            Form<Scalar> w = mode_covector(N, k);
            for (std::size_t j = 0; j < monos.size(); ++j) {
                Form<Scalar> phi = Form<Scalar>::monomial(N, monos[j]);
                Form<Scalar> image =
                    costar_mode(w.wedge(phi), k, star_) + w.wedge(costar_mode(phi, k, star_));
                for (const auto& [m, c] : image.terms()) {
                    auto it = std::lower_bound(monos.begin(), monos.end(), m);
                    block.at(int(it - monos.begin()), int(j)) = c;
                }
            }
            try {
                blocks.push_back(inverse(block));
            } catch (const Error&) {
                fail(Errc::singular_block, "Laplace block not invertible on a nonzero mode");
            }
        }
        green_.emplace(k, std::move(blocks));
    }
}

const Matrix<Scalar>& TorusContext::green_block(const ModeKey& k, int degree) const
{
    auto it = green_.find(k);
    require(it != green_.end(), Errc::mode_overflow, "mode outside the declared set");
    return it->second[std::size_t(degree)];
}

FourierForm<Scalar> codifferential(const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    FourierForm<Scalar> out(x.dim());
    for (const auto& [k, f] : x.modes()) {
        if (is_zero_mode(k))
            continue;
        out.add(k, costar_mode(f, k, ctx.star()));
    }
    return out;
}

FourierForm<Scalar> laplacian(const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    return exterior_d(codifferential(x, ctx)) + codifferential(exterior_d(x), ctx);
}

FourierForm<Scalar> green(const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    int N = ctx.dim();
    FourierForm<Scalar> out(N);
    for (const auto& [k, f] : x.modes()) {
        if (is_zero_mode(k))
            continue;
        for (int n = 0; n <= 2 * N; ++n) {
            Form<Scalar> comp = f.degree_component(n);
            if (comp.is_zero())
                continue;
            const auto monos = monomials_of_degree(N, n);
            std::vector<Scalar> sol = ctx.green_block(k, n).apply(coords(comp, monos));
            Form<Scalar> g(N);
            for (std::size_t i = 0; i < monos.size(); ++i)
                g.add(monos[i], sol[i]);
            out.add(k, g);
        }
    }
    return out;
}

bool is_closed(const FourierForm<Scalar>& x)
{
    return exterior_d(x).is_zero();
}

bool is_harmonic(const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    return exterior_d(x).is_zero() && codifferential(x, ctx).is_zero();
}

HodgeSplit hodge_decompose(const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    HodgeSplit split{x.mode_zero_part(),
                     exterior_d(green(codifferential(x, ctx), ctx)),
                     codifferential(green(exterior_d(x), ctx), ctx)};
    require(split.harmonic + split.d_exact + split.dstar_exact == x, Errc::invariant_violation,
            "Hodge split does not recompose");
    require(is_harmonic(split.harmonic, ctx), Errc::invariant_violation,
            "harmonic part fails closedness");
    return split;
}

FourierForm<Scalar> star_fourier(const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    FourierForm<Scalar> out(x.dim());
    for (const auto& [k, f] : x.modes())
        out.add(k, hodge_star(f, ctx.star()));
    return out;
}

FourierForm<Scalar> star_variation_fourier(const FourierForm<Scalar>& v,
                                           const FourierForm<Scalar>& x, const TorusContext& ctx)
{
    require(v.has_pure_bidegree(1, 1), Errc::not_pure_type,
            "variation direction must have bidegree (1,1)");
    FourierForm<Scalar> out(x.dim());
    for (const auto& [kv, fv] : v.modes()) {
        for (const auto& [kx, fx] : x.modes()) {
            Form<Scalar> term = star_variation(fx, fv, ctx.star());
            if (term.is_zero())
                continue;
            ModeKey k(kv.size());
            for (std::size_t i = 0; i < k.size(); ++i)
                k[i] = kv[i] + kx[i];
            require(ctx.mode_set().contains(k), Errc::mode_overflow,
                    "star variation leaves the declared mode set");
            out.add(k, term);
        }
    }
    return out;
}

FourierForm<Dual> star_eps(const FourierForm<Dual>& x, const FourierForm<Scalar>& v,
                           const TorusContext& ctx)
{
    FourierForm<Scalar> x0 = body_part(x);
    return dual_fourier(star_fourier(x0, ctx),
                        star_fourier(slope_part(x), ctx) + star_variation_fourier(v, x0, ctx));
}

FourierForm<Dual> codifferential_eps(const FourierForm<Dual>& x, const FourierForm<Scalar>& v,
                                     const TorusContext& ctx)
{
    return -star_eps(exterior_d(star_eps(x, v, ctx)), v, ctx);
}

FourierForm<Dual> laplacian_eps(const FourierForm<Dual>& x, const FourierForm<Scalar>& v,
                                const TorusContext& ctx)
{
    return exterior_d(codifferential_eps(x, v, ctx)) + codifferential_eps(exterior_d(x), v, ctx);
}

namespace {

void check_variation_direction(const FourierForm<Scalar>& v)
{
    require(v.has_pure_bidegree(1, 1), Errc::not_pure_type,
            "variation direction must have bidegree (1,1)");
    require(v.is_real(), Errc::inconsistent_input, "variation direction must be real");
    require(is_closed(v), Errc::not_closed, "variation direction must be closed");
}

} // namespace

FourierForm<Dual> deformed_harmonic_part(const FourierForm<Scalar>& alpha,
                                         const FourierForm<Scalar>& v, const TorusContext& ctx)
{
    require(is_harmonic(alpha, ctx), Errc::not_harmonic, "alpha is not harmonic");
    check_variation_direction(v);
    FourierForm<Scalar> correction = exterior_d(green(
        star_fourier(exterior_d(star_variation_fourier(v, alpha, ctx)), ctx), ctx));
    FourierForm<Dual> out = dual_fourier(alpha, correction);
    require(exterior_d(out).is_zero(), Errc::invariant_violation,
            "deformed harmonic part is not closed");
    require(codifferential_eps(out, v, ctx).is_zero(), Errc::invariant_violation,
            "deformed harmonic part is not coclosed for the deformed star");
    return out;
}

HarmonicVariation harmonic_variation(const FourierForm<Scalar>& v, const FourierForm<Scalar>& x,
                                     const TorusContext& ctx)
{
    require(is_harmonic(x, ctx), Errc::not_harmonic, "x is not harmonic");
    check_variation_direction(v);
    FourierForm<Scalar> dtv = exterior_d(star_variation_fourier(v, x, ctx));
    HarmonicVariation out{star_fourier(dtv, ctx), FourierForm<Scalar>(x.dim())};
    out.h_tilde = -exterior_d(green(out.h, ctx));
    HodgeSplit split = hodge_decompose(out.h, ctx);
    require(split.harmonic.is_zero() && split.d_exact.is_zero(), Errc::invariant_violation,
            "harmonic variation does not land in image(d*)");
    require(out.h.is_zero() == out.h_tilde.is_zero(), Errc::invariant_violation,
            "the two harmonic-variation maps disagree about vanishing");
    return out;
}

DeltaSplit differential_split(const FourierForm<Scalar>& beta0, const FourierForm<Scalar>& beta1,
                              const FourierForm<Scalar>& beta2, const TorusContext& ctx)
{
    int N = ctx.dim();
    const Sl2Model<Scalar>& model = ctx.model();

    // Degree of alpha, recovered from whichever component is nonzero.
    int alpha_degree = -1;
    if (!beta0.is_zero())
        alpha_degree = beta0.degree() - 2;
    else if (!beta1.is_zero())
        alpha_degree = beta1.degree();
    else if (!beta2.is_zero())
        alpha_degree = beta2.degree() + 2;

    FourierForm<Scalar> db1 = exterior_d(beta1);
    DeltaSplit out{FourierForm<Scalar>(N), FourierForm<Scalar>(N), false, false, false};
    out.degenerate_slot = (alpha_degree == N);
    for (const auto& [k, f] : db1.modes()) {
        for (const auto& part : model.primitive_decompose(f)) {
            if (part.power == 0)
                out.delta0.add(k, part.primitive);
            else if (part.power == 1)
                out.delta1.add(k, part.primitive);
            else
                fail(Errc::inconsistent_input,
                     "d(beta1) has a primitive component beyond slot 1");
        }
    }
    FourierForm<Scalar> omega_c = FourierForm<Scalar>::constant(model.omega());
    require(exterior_d(beta0) == -wedge(out.delta0, omega_c, ctx.mode_set()),
            Errc::inconsistent_input, "d(beta0) != -delta0*omega");
    if (out.degenerate_slot) {
        require(beta1.is_zero() && db1.is_zero(), Errc::inconsistent_input,
                "degenerate middle slot carries a nonzero beta1");
        out.delta1 = -exterior_d(beta2);
    } else {
        require(exterior_d(beta2) == -out.delta1, Errc::inconsistent_input,
                "d(beta2) != -delta1");
    }
    out.beta1_closed = db1.is_zero();
    out.beta0_beta2_closed = exterior_d(beta0).is_zero() && exterior_d(beta2).is_zero();
    return out;
}

FourierTriple product_triple(const FourierForm<Scalar>& alpha, const FourierForm<Scalar>& v,
                             const TorusContext& ctx)
{
    int N = ctx.dim();
    require(alpha == alpha.mode_zero_part(), Errc::not_harmonic,
            "alpha must be a constant (harmonic) form");
    Form<Scalar> a0 = alpha.constant_part();
    FourierTriple out{FourierForm<Scalar>(N), FourierForm<Scalar>(N), FourierForm<Scalar>(N)};
    for (const auto& [k, f] : v.modes()) {
        PrimTriple<Scalar> t = wedge_primitive_triple(ctx.model(), f, a0);
        out.slot0.add(k, t.slot0);
        out.slot1.add(k, t.slot1);
        out.slot2.add(k, t.slot2);
    }
    return out;
}

FourierForm<Scalar> harmonic_variation_closed(const FourierForm<Scalar>& alpha, int j,
                                              const FourierForm<Scalar>& v,
                                              const TorusContext& ctx)
{
    int N = ctx.dim();
    require(j >= 0, Errc::invariant_violation, "negative slot");
    check_variation_direction(v);
    require(alpha == alpha.mode_zero_part(), Errc::not_harmonic,
            "alpha must be a constant (harmonic) form");
    Form<Scalar> a0 = alpha.constant_part();
    require(!a0.is_zero(), Errc::zero_input, "alpha is zero");
    require(a0.is_pure_type(), Errc::not_pure_type, "alpha must have pure type");
    require(ctx.model().is_primitive(a0), Errc::not_primitive, "alpha is not primitive");
    require(!ctx.model().lef_pow(a0, j).is_zero(), Errc::zero_input, "alpha*omega^j is zero");

    const Mono& lead = a0.terms().begin()->first;
    int a = lead.p(), b = lead.q();
    int n = a + b + 2 * j;
    Scalar eta = star_variation_terms(a, b, j, N).eta;
    Scalar lambda1 = (j > 0) ? Scalar(N - n + 2 * j) * eta : Scalar(0);
    Scalar lambda2 = -(Scalar(N - n + 2 * j + 2) * eta);

    FourierTriple t = product_triple(alpha, v, ctx);
    DeltaSplit split = differential_split(t.slot0, t.slot1, t.slot2, ctx);
    FourierForm<Scalar> omega_pow1 =
        FourierForm<Scalar>::constant(ctx.model().lef_pow(Form<Scalar>::unit(N), N - n + j));
    FourierForm<Scalar> omega_pow2 =
        FourierForm<Scalar>::constant(ctx.model().lef_pow(Form<Scalar>::unit(N), N - n + j + 1));
    FourierForm<Scalar> out =
        lambda1 * star_fourier(wedge(split.delta0, omega_pow1, ctx.mode_set()), ctx);
    out = out + lambda2 * star_fourier(wedge(split.delta1, omega_pow2, ctx.mode_set()), ctx);
    return out;
}

HarmonicityTransfer stays_harmonic(const FourierForm<Scalar>& alpha, int j,
                                   const FourierForm<Scalar>& v, const TorusContext& ctx)
{
    int N = ctx.dim();
    require(j >= 0, Errc::invariant_violation, "negative slot");
    check_variation_direction(v);
    require(alpha == alpha.mode_zero_part(), Errc::not_harmonic,
            "alpha must be a constant (harmonic) form");
    Form<Scalar> a0 = alpha.constant_part();
    require(!a0.is_zero(), Errc::zero_input, "alpha is zero");
    require(ctx.model().is_primitive(a0), Errc::not_primitive, "alpha is not primitive");
    Form<Scalar> x0 = ctx.model().lef_pow(a0, j);
    require(!x0.is_zero(), Errc::zero_input, "alpha*omega^j is zero");

    int n = x0.degree();
    FourierForm<Scalar> av = wedge(alpha, v, ctx.mode_set());
    HarmonicityTransfer out{false, false, FourierForm<Scalar>(N), FourierForm<Scalar>(N)};
    if (j == 0) {
        FourierForm<Scalar> omega_pow = FourierForm<Scalar>::constant(
            ctx.model().lef_pow(Form<Scalar>::unit(N), N - n));
        out.product = wedge(av, omega_pow, ctx.mode_set());
    } else {
        out.product = av;
    }
    out.product_harmonic = is_harmonic(out.product, ctx);
    out.h = harmonic_variation(v, FourierForm<Scalar>::constant(x0), ctx).h;
    out.stays = out.h.is_zero();
    require(out.stays == out.product_harmonic, Errc::invariant_violation,
            "harmonicity-transfer criteria disagree");
    return out;
}

std::vector<FourierForm<Scalar>> closed_11_mode_forms(const TorusContext& ctx, const ModeKey& k)
{
    int N = ctx.dim();
    require(!is_zero_mode(k), Errc::invariant_violation, "mode must be nonzero");
    require(ctx.mode_set().contains(k), Errc::mode_overflow, "mode outside the declared set");
    Form<Scalar> w = mode_covector(N, k);
    const auto dom = monomials_of_bidegree(N, 1, 1);
    const auto cod = monomials_of_degree(N, 3);
    Matrix<Scalar> m(int(cod.size()), int(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Form<Scalar> image = w.wedge(Form<Scalar>::monomial(N, dom[j]));
        for (const auto& [mm, c] : image.terms()) {
            auto it = std::lower_bound(cod.begin(), cod.end(), mm);
            m.at(int(it - cod.begin()), int(j)) = c;
        }
    }
    std::vector<FourierForm<Scalar>> out;
    for (const auto& vec : kernel(std::move(m))) {
        Form<Scalar> phi(N);
        for (std::size_t i = 0; i < vec.size(); ++i)
            phi.add(dom[i], vec[i]);
        for (const Form<Scalar>& variant : {phi, Scalar::i() * phi}) {
            FourierForm<Scalar> half = FourierForm<Scalar>::mode(k, variant);
            FourierForm<Scalar> v = half + half.conjugated();
            if (!v.is_zero())
                out.push_back(std::move(v));
        }
    }
    return out;
}

} // namespace lefvar
