#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "core/form.hpp"
#include "core/linalg.hpp"

namespace lefvar {

template <class R>
struct PrimComponent {
    int power = 0;       // L-slot j
    Form<R> primitive;   // element of P^{n-2j}
};

/// Unique expression x = sum_j L^j(beta_j) with every beta_j primitive;
/// zero components are omitted.
template <class R>
using PrimDecomp = std::vector<PrimComponent<R>>;

template <class R>
std::vector<R> coords(const Form<R>& x, const std::vector<Mono>& basis)
{
    std::vector<R> out(basis.size(), R(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
        out[i] = x.coeff(basis[i]);
    return out;
}

/// Compatible sl2-structure on the exterior algebra of a 2N-dimensional
/// hermitian space: raising operator L (wedge with omega), its derived
/// lowering operator, and the grading operator B|A^n = (N-n)id. The
/// primitive-subspace bases and one decomposition system per degree are
/// precomputed at construction; instances are immutable afterwards and
/// safe to share across threads.
template <class R>
class Sl2Model {
public:
    int dim() const { return n_; }
    const Form<R>& omega() const { return omega_; }

    /// Basis of the primitive subspace in degree m (empty for m > N).
    const std::vector<Form<R>>& primitive_basis(int m) const
    {
        static const std::vector<Form<R>> none;
        if (m < 0 || m > n_)
            return none;
        return prim_[m];
    }

    Form<R> lef(const Form<R>& x) const { return omega_.wedge(x); }

    Form<R> lef_pow(const Form<R>& x, int k) const
    {
        Form<R> out = x;
        for (int i = 0; i < k; ++i)
            out = omega_.wedge(out);
        return out;
    }

    Form<R> apply_b(const Form<R>& x) const
    {
        Form<R> out(x.dim());
        for (const auto& [m, c] : x.terms())
            out.add(m, R(n_ - m.degree()) * c);
        return out;
    }

    /// L^{N-n+1}(x) = 0 test; false for degrees above N (P^n = 0 there).
    bool is_primitive(const Form<R>& x) const
    {
        if (x.is_zero())
            return true;
        require(x.is_homogeneous(), Errc::invariant_violation,
                "primitivity test needs a homogeneous form");
        int n = x.degree();
        if (n > n_)
            return false;
        return lef_pow(x, n_ - n + 1).is_zero();
    }

    /// Solves for the unique decomposition over the precomputed slot
    /// bases; works over dual coefficients through the layered solver.
    PrimDecomp<R> primitive_decompose(const Form<R>& x) const
    {
        require(x.is_homogeneous(), Errc::invariant_violation,
                "primitive decomposition needs a homogeneous form");
        PrimDecomp<R> out;
        if (x.is_zero())
            return out;
        int n = x.degree();
        const DegreeSystem& sys = systems_[n];
        std::vector<R> rhs = coords(x, deg_monos_[n]);
        std::vector<R> sol = solve_system(sys, rhs);
        std::size_t col = 0;
        for (const auto& [j, count] : sys.slots) {
            Form<R> beta(x.dim());
            for (int i = 0; i < count; ++i, ++col) {
                if (!sol[col].is_zero())
                    beta = beta + sol[col] * prim_[n - 2 * j][std::size_t(i)];
            }
            if (!beta.is_zero())
                out.push_back({j, std::move(beta)});
        }
        return out;
    }

    Form<R> reconstruct(const PrimDecomp<R>& parts) const
    {
        Form<R> out(n_);
        for (const auto& part : parts)
            out = out + lef_pow(part.primitive, part.power);
        return out;
    }

    /// Lowering operator through the decomposition:
    /// x = sum L^j(beta_j)  ->  sum j(N-m-j+1) L^{j-1}(beta_j), m = deg beta_j.
    /// Annihilates primitive forms; inhomogeneous input is handled
    /// degreewise.
    Form<R> apply_lambda(const Form<R>& x) const
    {
        Form<R> out(x.dim());
        for (int n = 0; n <= 2 * n_; ++n) {
            Form<R> comp = x.degree_component(n);
            if (comp.is_zero())
                continue;
            for (const auto& part : primitive_decompose(comp)) {
                int j = part.power;
                if (j == 0)
                    continue;
                int m = n - 2 * j;
                out = out + R(j * (n_ - m - j + 1)) * lef_pow(part.primitive, j - 1);
            }
        }
        return out;
    }

    const std::vector<Mono>& degree_monomials(int n) const { return deg_monos_[n]; }

private:
    struct DegreeSystem {
        std::vector<std::pair<int, int>> slots; // (j, slot basis size)
        Matrix<Scalar> inv0;                    // inverse of the body system
        Matrix<Scalar> m1;                      // slope part (dual models only)
    };

    std::vector<R> solve_system(const DegreeSystem& sys, const std::vector<R>& rhs) const
    {
        if constexpr (is_dual_v<R>) {
            std::vector<Scalar> b0(rhs.size()), b1(rhs.size());
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                b0[i] = rhs[i].body();
                b1[i] = rhs[i].slope();
            }
            std::vector<Scalar> x0 = sys.inv0.apply(b0);
            std::vector<Scalar> mx = sys.m1.apply(x0);
            for (std::size_t i = 0; i < b1.size(); ++i)
                b1[i] = b1[i] - mx[i];
            std::vector<Scalar> x1 = sys.inv0.apply(b1);
            std::vector<Dual> out(rhs.size());
            for (std::size_t i = 0; i < rhs.size(); ++i)
                out[i] = Dual(x0[i], x1[i]);
            return out;
        } else {
            return sys.inv0.apply(rhs);
        }
    }

    int n_ = 0;
    Form<R> omega_{1};
    std::vector<std::vector<Form<R>>> prim_;  // by degree m = 0..N
    std::vector<DegreeSystem> systems_;       // by degree n = 0..2N
    std::vector<std::vector<Mono>> deg_monos_;

    friend Sl2Model<Scalar> build_model(const Form<Scalar>& omega, int N);
    friend Sl2Model<Dual> deform_model(const Sl2Model<Scalar>& base, const Form<Scalar>& v);
};

/// Validates hard Lefschetz for omega (real, bidegree (1,1)) and derives
/// the primitive subspaces; NotLefschetz when some L^{N-n} fails to be
/// bijective.
Sl2Model<Scalar> build_model(const Form<Scalar>& omega, int N);

/// Model for omega + eps*v over dual numbers, v of degree 2. Primitive
/// bases are the base ones corrected by pure-eps terms; the body layer of
/// every decomposition system is shared with the base model.
Sl2Model<Dual> deform_model(const Sl2Model<Scalar>& base, const Form<Scalar>& v);

template <class R>
struct PrimTriple {
    Form<R> slot0, slot1, slot2;
};

/// Primitive components of v*alpha (alpha primitive, v of degree 2):
/// v*alpha = slot0 + L(slot1) + L^2(slot2). Components in slots >= 3
/// vanish for compatible structures; that is verified and an
/// InvariantViolation is raised otherwise.
PrimTriple<Scalar> wedge_primitive_triple(const Sl2Model<Scalar>& model, const Form<Scalar>& v,
                                          const Form<Scalar>& alpha);

/// Closed-form primitive decomposition of L^j(alpha) with respect to
/// omega + eps*v. Components are verified to be primitive for the
/// deformed structure and to reconstruct L^j(alpha) exactly.
PrimDecomp<Dual> deformed_decomposition(const Sl2Model<Scalar>& model, const Form<Scalar>& alpha,
                                        int j, const Form<Scalar>& v);

/// First-order variation of the subspace L^j P^{n-2j} inside A^n:
/// (N-n+j+1) L^{j+1}(slot2) - j L^{j-1}(slot0) of v*alpha.
Form<Scalar> subspace_variation(const Sl2Model<Scalar>& model, const Form<Scalar>& alpha, int j,
                                const Form<Scalar>& v);

/// True iff alpha stays primitive for omega + eps*v. Evaluated two ways
/// (L^{N-n}(alpha v) = 0 and slot2 = 0), which must agree.
bool stays_primitive(const Sl2Model<Scalar>& model, const Form<Scalar>& alpha,
                     const Form<Scalar>& v);

/// Primitivity with respect to an explicit (possibly dual) Kaehler
/// element, without building a model.
template <class R>
bool is_primitive_wrt(const Form<R>& omega, int N, const Form<R>& x)
{
    if (x.is_zero())
        return true;
    require(x.is_homogeneous(), Errc::invariant_violation,
            "primitivity test needs a homogeneous form");
    int n = x.degree();
    if (n > N)
        return false;
    Form<R> y = x;
    for (int i = 0; i < N - n + 1; ++i)
        y = omega.wedge(y);
    return y.is_zero();
}

/// Base lowering operator extended eps-linearly to dual forms.
Form<Dual> apply_lambda_extended(const Sl2Model<Scalar>& base, const Form<Dual>& x);

/// The operator Lambda_eps o Lambda - Lambda o Lambda_eps on the whole
/// algebra, as a matrix over dual numbers in the monomial basis.
Matrix<Dual> dual_lefschetz_commutator(const Sl2Model<Scalar>& model, const Form<Scalar>& v);

/// Matrix of a linear operator in the canonical monomial basis.
template <class R, class Fn>
Matrix<R> operator_matrix(int dim, Fn&& op)
{
    std::vector<Mono> basis = all_monomials(dim);
    Matrix<R> out(int(basis.size()), int(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Form<R> image = op(Form<R>::monomial(dim, basis[j]));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            R c = image.coeff(basis[i]);
            if (!c.is_zero())
                out.at(int(i), int(j)) = std::move(c);
        }
    }
    return out;
}

/// Basis of the primitive forms of pure type (p,q).
std::vector<Form<Scalar>> primitive_basis_bidegree(const Sl2Model<Scalar>& model, int p, int q);

/// Basis of the real (1,1) forms (dimension N^2).
std::vector<Form<Scalar>> real_11_basis(int dim);

} // namespace lefvar
