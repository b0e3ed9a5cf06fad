#pragma once

#include <utility>

#include "core/sl2.hpp"

namespace lefvar {

/// Star-operator context: the convention is locked to
///   *(omega^r alpha) = (-1)^{n(n+1)/2} (r! i^{p-q} / (N-n-r)!) omega^{N-n-r} alpha
/// for primitive alpha of pure type (p,q), n = p+q, extended linearly over
/// the bigraded primitive decomposition. Construction verifies, on every
/// basis monomial, that * maps A^{p,q} to A^{N-q,N-p} and squares to
/// (-1)^n.
template <class R>
class StarContext {
public:
    explicit StarContext(Sl2Model<R> model, bool validate = true);

    const Sl2Model<R>& model() const { return model_; }
    int dim() const { return model_.dim(); }

private:
    Sl2Model<R> model_;
};

/// *(omega^r alpha) for primitive alpha of pure type; zero when
/// (p+q) + r > N, matching the vanishing of omega^r alpha itself.
template <class R>
Form<R> star_primitive(const Form<R>& alpha, int r, const StarContext<R>& ctx);

/// Star of an arbitrary form via bidegree split + primitive decomposition.
template <class R>
Form<R> hodge_star(const Form<R>& x, const StarContext<R>& ctx);

/// Star context for omega + eps*v (no construction-time validation; the
/// dual star is exercised against the base star in the test suites).
StarContext<Dual> deform_star(const StarContext<Scalar>& ctx, const Form<Scalar>& v);

/// The star of x for omega + eps*v, computed from scratch in the deformed
/// model. The eps-part of this is the reference value for
/// star_variation(_closed).
Form<Dual> deformed_star(const Form<Scalar>& x, const Form<Scalar>& v,
                         const StarContext<Scalar>& ctx);

/// Coefficients of the closed-form star variation on alpha*omega^j, alpha
/// primitive of pure type (a,b), n = a + b + 2j:
///   eta = (-1)^{(n-2j-2)(n-2j-1)/2} j! i^{a-b} / (N-n+j)!
struct StarVariationTerms {
    Scalar eta, c0, c0_prime, c1, c2;
};

StarVariationTerms star_variation_terms(int a, int b, int j, int N);

/// First-order change of the star on alpha*omega^j along omega + eps*v:
///   c0' s0 w^{N-n+j-1} + c1 s1 w^{N-n+j} + c2 s2 w^{N-n+j+1} + c0 (alpha v) w^{N-n+j-1}
/// with (s0, s1, s2) the primitive components of alpha*v. Terms with a
/// negative omega power only arise with an exactly-zero coefficient and
/// are dropped. Returns zero when alpha*omega^j = 0.
Form<Scalar> star_variation_closed(const Form<Scalar>& alpha, int j, const Form<Scalar>& v,
                                   const StarContext<Scalar>& ctx);

/// Linear extension of star_variation_closed over the bigraded primitive
/// decomposition; equals the eps-part of deformed_star.
Form<Scalar> star_variation(const Form<Scalar>& x, const Form<Scalar>& v,
                            const StarContext<Scalar>& ctx);

/// The constant c with x = c*y (y nonzero); InvariantViolation when x is
/// not proportional to y.
Scalar form_ratio(const Form<Scalar>& x, const Form<Scalar>& y);

} // namespace lefvar
