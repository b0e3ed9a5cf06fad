#pragma once

#include <map>
#include <set>
#include <vector>

#include "core/star.hpp"

namespace lefvar {

/// Fourier mode vector k in Z^{2N}.
using ModeKey = std::vector<int>;

ModeKey negated(const ModeKey& k);
bool is_zero_mode(const ModeKey& k);

/// Declared finite set of admissible modes: always contains 0 and is
/// closed under negation (the declared set is completed if needed).
class ModeSet {
public:
    ModeSet(int dim, const std::vector<ModeKey>& keys);

    static ModeSet box(int dim, int radius);

    int dim() const { return dim_; }
    bool contains(const ModeKey& k) const { return keys_.count(k) != 0; }
    const std::set<ModeKey>& keys() const { return keys_; }

private:
    int dim_;
    std::set<ModeKey> keys_;
};

/// Form on the flat torus with finitely many Fourier modes: a map from
/// mode vectors to constant-coefficient forms. Zero coefficients are
/// never stored.
template <class R>
class FourierForm {
public:
    explicit FourierForm(int dim) : dim_(dim) {}

    static FourierForm constant(Form<R> f)
    {
        FourierForm out(f.dim());
        out.add(ModeKey(std::size_t(2 * f.dim()), 0), f);
        return out;
    }

    static FourierForm mode(ModeKey k, Form<R> f)
    {
        FourierForm out(f.dim());
        require(int(k.size()) == 2 * f.dim(), Errc::dimension_mismatch,
                "mode vector must have length 2N");
        out.add(k, f);
        return out;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return modes_.empty(); }
    const std::map<ModeKey, Form<R>>& modes() const { return modes_; }

    Form<R> coeff(const ModeKey& k) const
    {
        auto it = modes_.find(k);
        return it == modes_.end() ? Form<R>(dim_) : it->second;
    }

    Form<R> constant_part() const { return coeff(ModeKey(std::size_t(2 * dim_), 0)); }

    FourierForm mode_zero_part() const
    {
        return constant(constant_part());
    }

    void add(const ModeKey& k, const Form<R>& f)
    {
        require(int(k.size()) == 2 * dim_, Errc::dimension_mismatch,
                "mode vector must have length 2N");
        if (f.is_zero())
            return;
        auto it = modes_.find(k);
        if (it == modes_.end()) {
            modes_.emplace(k, f);
            return;
        }
        it->second = it->second + f;
        if (it->second.is_zero())
            modes_.erase(it);
    }

    friend FourierForm operator+(const FourierForm& a, const FourierForm& b)
    {
        require(a.dim_ == b.dim_, Errc::dimension_mismatch, "dimension mismatch");
        FourierForm out = a;
        for (const auto& [k, f] : b.modes_)
            out.add(k, f);
        return out;
    }

    friend FourierForm operator-(const FourierForm& a, const FourierForm& b)
    {
        return a + (-b);
    }

    FourierForm operator-() const
    {
        FourierForm out(dim_);
        for (const auto& [k, f] : modes_)
            out.modes_.emplace(k, -f);
        return out;
    }

    friend FourierForm operator*(const R& s, const FourierForm& x)
    {
        FourierForm out(x.dim_);
        for (const auto& [k, f] : x.modes_)
            out.add(k, s * f);
        return out;
    }

    FourierForm conjugated() const
    {
        FourierForm out(dim_);
        for (const auto& [k, f] : modes_)
            out.add(negated(k), f.conjugated());
        return out;
    }

    bool is_real() const { return conjugated() == *this; }

    bool is_homogeneous() const
    {
        int n = -1;
        for (const auto& [k, f] : modes_) {
            if (!f.is_homogeneous())
                return false;
            if (f.is_zero())
                continue;
            if (n < 0)
                n = f.degree();
            else if (f.degree() != n)
                return false;
        }
        return true;
    }

    int degree() const
    {
        require(is_homogeneous(), Errc::invariant_violation, "degree of inhomogeneous form");
        return modes_.empty() ? 0 : modes_.begin()->second.degree();
    }

    bool has_pure_bidegree(int p, int q) const
    {
        for (const auto& [k, f] : modes_)
            for (const auto& [m, c] : f.terms())
                if (m.p() != p || m.q() != q)
                    return false;
        return true;
    }

    friend bool operator==(const FourierForm& a, const FourierForm& b)
    {
        return a.dim_ == b.dim_ && a.modes_ == b.modes_;
    }
    friend bool operator!=(const FourierForm& a, const FourierForm& b) { return !(a == b); }

private:
    int dim_;
    std::map<ModeKey, Form<R>> modes_;
};

inline FourierForm<Dual> embed(const FourierForm<Scalar>& x)
{
    FourierForm<Dual> out(x.dim());
    for (const auto& [k, f] : x.modes())
        out.add(k, embed(f));
    return out;
}

inline FourierForm<Dual> dual_fourier(const FourierForm<Scalar>& body,
                                      const FourierForm<Scalar>& slope)
{
    FourierForm<Dual> out = embed(body);
    for (const auto& [k, f] : slope.modes())
        out.add(k, dual_form(Form<Scalar>(f.dim()), f));
    return out;
}

inline FourierForm<Scalar> body_part(const FourierForm<Dual>& x)
{
    FourierForm<Scalar> out(x.dim());
    for (const auto& [k, f] : x.modes())
        out.add(k, body_part(f));
    return out;
}

inline FourierForm<Scalar> slope_part(const FourierForm<Dual>& x)
{
    FourierForm<Scalar> out(x.dim());
    for (const auto& [k, f] : x.modes())
        out.add(k, slope_part(f));
    return out;
}

/// Torus context: base star context plus the declared mode set. Builds
/// and caches the per-mode, per-degree Laplace-block inverses; a
/// non-invertible block for a nonzero mode raises SingularBlock at
/// construction.
class TorusContext {
public:
    TorusContext(StarContext<Scalar> star, ModeSet modes);

    int dim() const { return star_.dim(); }
    const StarContext<Scalar>& star() const { return star_; }
    const Sl2Model<Scalar>& model() const { return star_.model(); }
    const ModeSet& mode_set() const { return modes_; }

    const Matrix<Scalar>& green_block(const ModeKey& k, int degree) const;

private:
    StarContext<Scalar> star_;
    ModeSet modes_;
    std::map<ModeKey, std::vector<Matrix<Scalar>>> green_;
};

/// The translation-invariant covector of mode k in the dz/dzb basis:
/// i * sum_a k_a dx^a with dx_j = (dz_j + dzb_j)/2 and
/// dx_{N+j} = (dz_j - dzb_j)/(2i).
Form<Scalar> mode_covector(int dim, const ModeKey& k);

/// Mode-respecting wedge; the summed mode must lie in the declared set.
template <class R>
FourierForm<R> wedge(const FourierForm<R>& a, const FourierForm<R>& b, const ModeSet& modes);

/// Exterior derivative, mode by mode: e_k phi -> e_k (w(k) ^ phi).
template <class R>
FourierForm<R> exterior_d(const FourierForm<R>& x);

/// Codifferential -*d* with the context star, mode by mode.
FourierForm<Scalar> codifferential(const FourierForm<Scalar>& x, const TorusContext& ctx);

FourierForm<Scalar> laplacian(const FourierForm<Scalar>& x, const TorusContext& ctx);

/// Green operator: zero on mode 0, per-mode Laplace-block solve elsewhere.
FourierForm<Scalar> green(const FourierForm<Scalar>& x, const TorusContext& ctx);

bool is_closed(const FourierForm<Scalar>& x);
bool is_harmonic(const FourierForm<Scalar>& x, const TorusContext& ctx);

struct HodgeSplit {
    FourierForm<Scalar> harmonic;
    FourierForm<Scalar> d_exact;
    FourierForm<Scalar> dstar_exact;
};

/// x = harmonic + d G d* x + d* G d x, exact; recomposition and the
/// closedness of the harmonic part are re-verified on every call.
HodgeSplit hodge_decompose(const FourierForm<Scalar>& x, const TorusContext& ctx);

/// Pointwise star, mode by mode.
FourierForm<Scalar> star_fourier(const FourierForm<Scalar>& x, const TorusContext& ctx);

/// Pointwise first-order star variation along v (real (1,1), arbitrary
/// modes): modes convolve, so the result must stay inside the mode set.
FourierForm<Scalar> star_variation_fourier(const FourierForm<Scalar>& v,
                                           const FourierForm<Scalar>& x,
                                           const TorusContext& ctx);

/// Star for omega + eps*v applied to a dual Fourier form:
/// *x0 + eps(*x1 + T_v x0).
FourierForm<Dual> star_eps(const FourierForm<Dual>& x, const FourierForm<Scalar>& v,
                           const TorusContext& ctx);

FourierForm<Dual> codifferential_eps(const FourierForm<Dual>& x, const FourierForm<Scalar>& v,
                                     const TorusContext& ctx);

FourierForm<Dual> laplacian_eps(const FourierForm<Dual>& x, const FourierForm<Scalar>& v,
                                const TorusContext& ctx);

/// Harmonic part of a harmonic alpha after deforming omega by eps*v:
/// alpha + eps d G * d T_v(alpha); verified d-closed and
/// eps-star-coclosed before returning.
FourierForm<Dual> deformed_harmonic_part(const FourierForm<Scalar>& alpha,
                                         const FourierForm<Scalar>& v, const TorusContext& ctx);

struct HarmonicVariation {
    FourierForm<Scalar> h;       // *dT_v(x), lands in image(d*)
    FourierForm<Scalar> h_tilde; // -dG*dT_v(x), lands in image(d)
};

/// First-order obstruction to x staying harmonic along omega + eps*v;
/// h = 0 iff h_tilde = 0 iff the deformed harmonic part equals x.
HarmonicVariation harmonic_variation(const FourierForm<Scalar>& v, const FourierForm<Scalar>& x,
                                     const TorusContext& ctx);

struct DeltaSplit {
    FourierForm<Scalar> delta0, delta1;
    bool beta1_closed = false;
    bool beta0_beta2_closed = false;
    bool degenerate_slot = false; // deg(alpha) = N: the middle slot carries nothing
};

/// Splits d(beta1) = delta0 + delta1*omega into its pointwise-primitive
/// components and verifies d(beta0) = -delta0*omega and d(beta2) = -delta1;
/// InconsistentInput when the triple was not produced from closed data.
/// When deg(alpha) = N the middle slot is degenerate (beta1 = 0
/// identically), d(beta1) carries no information and delta1 is continued
/// as -d(beta2), which is the value the harmonic-variation formula needs
/// and agrees with the slot reading everywhere else.
DeltaSplit differential_split(const FourierForm<Scalar>& beta0, const FourierForm<Scalar>& beta1,
                              const FourierForm<Scalar>& beta2, const TorusContext& ctx);

/// The pointwise primitive components of alpha ^ v for constant primitive
/// alpha.
struct FourierTriple {
    FourierForm<Scalar> slot0, slot1, slot2;
};

FourierTriple product_triple(const FourierForm<Scalar>& alpha, const FourierForm<Scalar>& v,
                             const TorusContext& ctx);

/// Closed form for the harmonic variation on alpha*omega^j (alpha
/// constant, pointwise primitive of pure type, alpha*omega^j != 0):
///   lambda1 *(delta0 w^{N-n+j}) + lambda2 *(delta1 w^{N-n+j+1}),
/// lambda1 = eta(N-n+2j) for j>0 (0 for j=0), lambda2 = -eta(N-n+2j+2).
FourierForm<Scalar> harmonic_variation_closed(const FourierForm<Scalar>& alpha, int j,
                                              const FourierForm<Scalar>& v,
                                              const TorusContext& ctx);

struct HarmonicityTransfer {
    bool stays = false;
    bool product_harmonic = false;
    FourierForm<Scalar> h;               // the variation certificate
    FourierForm<Scalar> product;         // the product certificate
};

/// alpha*omega^j stays harmonic along omega + eps*v iff the certificate
/// product (alpha v omega^{N-n} for j = 0, alpha v for j > 0) is
/// harmonic; both routes are evaluated and must agree.
HarmonicityTransfer stays_harmonic(const FourierForm<Scalar>& alpha, int j,
                                   const FourierForm<Scalar>& v, const TorusContext& ctx);

/// Real closed single-mode (1,1) forms supported on modes {k, -k}: the
/// realifications of e_k*phi over a kernel basis of w(k) ^ phi = 0.
std::vector<FourierForm<Scalar>> closed_11_mode_forms(const TorusContext& ctx, const ModeKey& k);

} // namespace lefvar
