#include "core/sl2.hpp"

#include <algorithm>

namespace lefvar {

namespace {

int column_index(const std::vector<Mono>& sorted, const Mono& m)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
    require(it != sorted.end() && *it == m, Errc::invariant_violation,
            "monomial outside expected degree block");
    return int(it - sorted.begin());
}

/// Matrix of x -> w ^ x between two monomial blocks.
Matrix<Scalar> wedge_matrix(const Form<Scalar>& w, const std::vector<Mono>& dom,
                            const std::vector<Mono>& cod)
{
    Matrix<Scalar> out(int(cod.size()), int(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Form<Scalar> image = w.wedge(Form<Scalar>::monomial(w.dim(), dom[j]));
        for (const auto& [m, c] : image.terms())
            out.at(column_index(cod, m), int(j)) = c;
    }
    return out;
}

long binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - i + 1) / i;
    return r;
}

} // namespace

Sl2Model<Scalar> build_model(const Form<Scalar>& omega, int N)
{
    require(N >= 1 && N <= 5, Errc::bad_descriptor, "dimension must satisfy 1 <= N <= 5");
    require(omega.dim() == N, Errc::dimension_mismatch, "omega over wrong dimension");
    for (const auto& [m, c] : omega.terms())
        require(m.p() == 1 && m.q() == 1, Errc::bad_descriptor,
                "omega must have pure bidegree (1,1)");
    require(omega.is_real(), Errc::bad_descriptor, "omega must be real");

    Sl2Model<Scalar> model;
    model.n_ = N;
    model.omega_ = omega;
    model.deg_monos_.resize(2 * N + 1);
    for (int n = 0; n <= 2 * N; ++n)
        model.deg_monos_[n] = monomials_of_degree(N, n);

    std::vector<Form<Scalar>> omega_pow;
    omega_pow.push_back(Form<Scalar>::unit(N));
    for (int k = 1; k <= N + 1; ++k)
        omega_pow.push_back(omega.wedge(omega_pow.back()));

    // Hard Lefschetz: L^{N-n}: A^n -> A^{2N-n} bijective for every n <= N.
    for (int n = 0; n < N; ++n) {
        Matrix<Scalar> m =
            wedge_matrix(omega_pow[N - n], model.deg_monos_[n], model.deg_monos_[2 * N - n]);
        if (rank(m) != m.rows)
            fail(Errc::not_lefschetz,
                 "L^" + std::to_string(N - n) + " not bijective on degree " + std::to_string(n));
    }

    model.prim_.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
        int target = 2 * N - m + 2;
        std::vector<std::vector<Scalar>> null_vectors;
        if (target > 2 * N) {
            // L^{N-m+1} lands above the top degree: everything is primitive.
            for (std::size_t i = 0; i < model.deg_monos_[m].size(); ++i) {
                std::vector<Scalar> v(model.deg_monos_[m].size(), Scalar(0));
                v[i] = Scalar(1);
                null_vectors.push_back(std::move(v));
            }
        } else {
            Matrix<Scalar> mk =
                wedge_matrix(omega_pow[N - m + 1], model.deg_monos_[m], model.deg_monos_[target]);
            null_vectors = kernel(std::move(mk));
        }
        for (auto& vec : null_vectors) {
            Form<Scalar> f(N);
            for (std::size_t i = 0; i < vec.size(); ++i)
                f.add(model.deg_monos_[m][i], vec[i]);
            model.prim_[m].push_back(std::move(f));
        }
        require(long(model.prim_[m].size()) == binom(2 * N, m) - binom(2 * N, m - 2),
                Errc::invariant_violation, "primitive subspace has unexpected dimension");
    }

    model.systems_.resize(2 * N + 1);
    for (int n = 0; n <= 2 * N; ++n) {
        auto& sys = model.systems_[n];
        const auto& cod = model.deg_monos_[n];
        Matrix<Scalar> columns(int(cod.size()), int(cod.size()));
        int col = 0;
        for (int j = std::max(0, n - N); 2 * j <= n; ++j) {
            const auto& basis = model.prim_[n - 2 * j];
            if (basis.empty())
                continue;
            sys.slots.emplace_back(j, int(basis.size()));
            for (const auto& beta : basis) {
                Form<Scalar> image = omega_pow[j].wedge(beta);
                for (const auto& [m, c] : image.terms())
                    columns.at(column_index(cod, m), col) = c;
                ++col;
            }
        }
        require(col == int(cod.size()), Errc::invariant_violation,
                "slot bases do not fill the degree block");
        sys.inv0 = inverse(columns);
    }
    return model;
}

Sl2Model<Dual> deform_model(const Sl2Model<Scalar>& base, const Form<Scalar>& v)
{
    require(v.dim() == base.dim(), Errc::dimension_mismatch, "v over wrong dimension");
    require(v.is_zero() || (v.is_homogeneous() && v.degree() == 2), Errc::dimension_mismatch,
            "deformation direction must have degree 2");

    int N = base.dim();
    Sl2Model<Dual> model;
    model.n_ = N;
    model.omega_ = dual_form(base.omega(), v);
    model.deg_monos_ = base.deg_monos_;

    // Correct each primitive basis vector beta by a pure-eps term c with
    // L^{N-m+1}(c) = -(N-m+1) L^{N-m}(beta) ^ v, which restores
    // primitivity for omega + eps*v.
    model.prim_.resize(N + 1);
    for (int m = 0; m <= N; ++m) {
        const auto& basis = base.prim_[m];
        if (basis.empty())
            continue;
        int target = 2 * N - m + 2;
        if (target > 2 * N) {
            for (const auto& beta : basis)
                model.prim_[m].push_back(embed(beta));
            continue;
        }
        const auto& dom = base.deg_monos_[m];
        const auto& cod = base.deg_monos_[target];
        Matrix<Scalar> lhs(int(cod.size()), int(dom.size()));
        for (std::size_t j = 0; j < dom.size(); ++j) {
            Form<Scalar> image =
                base.lef_pow(Form<Scalar>::monomial(N, dom[j]), N - m + 1);
            for (const auto& [mm, c] : image.terms())
                lhs.at(column_index(cod, mm), int(j)) = c;
        }
        Matrix<Scalar> rhs(int(cod.size()), int(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Form<Scalar> r = Scalar(-(N - m + 1)) * base.lef_pow(basis[i], N - m).wedge(v);
            for (const auto& [mm, c] : r.terms())
                rhs.at(column_index(cod, mm), int(i)) = c;
        }
        auto corrections = solve_multi(std::move(lhs), std::move(rhs));
        require(corrections.has_value(), Errc::invariant_violation,
                "primitive-basis correction system inconsistent");
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Form<Scalar> c(N);
            for (std::size_t r = 0; r < dom.size(); ++r)
                c.add(dom[r], corrections->at(int(r), int(i)));
            model.prim_[m].push_back(dual_form(basis[i], c));
        }
    }

    model.systems_.resize(2 * N + 1);
    for (int n = 0; n <= 2 * N; ++n) {
        auto& sys = model.systems_[n];
        const auto& cod = model.deg_monos_[n];
        sys.slots = base.systems_[n].slots;
        sys.inv0 = base.systems_[n].inv0;
        Matrix<Dual> columns(int(cod.size()), int(cod.size()));
        int col = 0;
        for (const auto& [j, count] : sys.slots) {
            for (int i = 0; i < count; ++i, ++col) {
                Form<Dual> image = model.lef_pow(model.prim_[n - 2 * j][std::size_t(i)], j);
                for (const auto& [m, c] : image.terms())
                    columns.at(column_index(cod, m), col) = c;
            }
        }
        sys.m1 = slope_matrix(columns);
    }
    return model;
}

PrimTriple<Scalar> wedge_primitive_triple(const Sl2Model<Scalar>& model, const Form<Scalar>& v,
                                          const Form<Scalar>& alpha)
{
    require(v.is_zero() || (v.is_homogeneous() && v.degree() == 2), Errc::dimension_mismatch,
            "v must have degree 2");
    require(model.is_primitive(alpha), Errc::not_primitive, "alpha is not primitive");
    int N = model.dim();
    PrimTriple<Scalar> out{Form<Scalar>(N), Form<Scalar>(N), Form<Scalar>(N)};
    for (auto& part : model.primitive_decompose(v.wedge(alpha))) {
        switch (part.power) {
            case 0: out.slot0 = std::move(part.primitive); break;
            case 1: out.slot1 = std::move(part.primitive); break;
            case 2: out.slot2 = std::move(part.primitive); break;
            default:
                fail(Errc::invariant_violation,
                     "product with a degree-2 form has a primitive component in slot "
                         + std::to_string(part.power));
        }
    }
    return out;
}

PrimDecomp<Dual> deformed_decomposition(const Sl2Model<Scalar>& model, const Form<Scalar>& alpha,
                                        int j, const Form<Scalar>& v)
{
    require(j >= 0, Errc::invariant_violation, "negative slot");
    require(model.is_primitive(alpha), Errc::not_primitive, "alpha is not primitive");
    int N = model.dim();
    PrimDecomp<Dual> out;
    if (alpha.is_zero())
        return out;
    int n = alpha.degree() + 2 * j;

    PrimTriple<Scalar> t = wedge_primitive_triple(model, v, alpha);
    Form<Dual> omega_eps = dual_form(model.omega(), v);

    auto image = [&](int power, const Form<Dual>& f) {
        Form<Dual> term = f;
        for (int k = 0; k < power; ++k)
            term = omega_eps.wedge(term);
        return term;
    };
    auto push = [&](int power, Form<Dual> f) {
        if (power < 0 || f.is_zero())
            return;
        // A slot with N-n+power < 0 is degenerate: the deformed raising
        // power annihilates it, so it is not part of the decomposition.
        if (N - n + power < 0) {
            require(image(power, f).is_zero(), Errc::invariant_violation,
                    "degenerate-slot component has a nonzero image");
            return;
        }
        out.push_back({power, std::move(f)});
    };
    push(j + 1, dual_form(Form<Scalar>(N), Scalar(N - n + j + 1) * t.slot2));
    push(j, dual_form(alpha, -(Scalar(N - n + 2 * j + 1) * model.lef(t.slot2)
                               + Scalar(j) * t.slot1)));
    if (j >= 1)
        push(j - 1, dual_form(Form<Scalar>(N), Scalar(-j) * t.slot0));

    Form<Dual> sum(N);
    for (const auto& part : out) {
        require(is_primitive_wrt(omega_eps, N, part.primitive), Errc::invariant_violation,
                "closed-form component is not primitive for the deformed structure");
        sum = sum + image(part.power, part.primitive);
    }
    require(sum == embed(model.lef_pow(alpha, j)), Errc::invariant_violation,
            "closed-form components do not reconstruct L^j(alpha)");
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.power < b.power; });
    return out;
}

Form<Scalar> subspace_variation(const Sl2Model<Scalar>& model, const Form<Scalar>& alpha, int j,
                                const Form<Scalar>& v)
{
    require(j >= 0, Errc::invariant_violation, "negative slot");
    require(model.is_primitive(alpha), Errc::not_primitive, "alpha is not primitive");
    int N = model.dim();
    if (alpha.is_zero())
        return Form<Scalar>(N);
    int n = alpha.degree() + 2 * j;
    PrimTriple<Scalar> t = wedge_primitive_triple(model, v, alpha);
    Form<Scalar> out = Scalar(N - n + j + 1) * model.lef_pow(t.slot2, j + 1);
    if (j >= 1)
        out = out - Scalar(j) * model.lef_pow(t.slot0, j - 1);
    return out;
}

bool stays_primitive(const Sl2Model<Scalar>& model, const Form<Scalar>& alpha,
                     const Form<Scalar>& v)
{
    require(model.is_primitive(alpha), Errc::not_primitive, "alpha is not primitive");
    if (alpha.is_zero())
        return true;
    int n = alpha.degree();
    bool by_power = model.lef_pow(alpha.wedge(v), model.dim() - n).is_zero();
    bool by_slot = wedge_primitive_triple(model, v, alpha).slot2.is_zero();
    require(by_power == by_slot, Errc::invariant_violation,
            "the two primitivity-persistence criteria disagree");
    return by_power;
}

Form<Dual> apply_lambda_extended(const Sl2Model<Scalar>& base, const Form<Dual>& x)
{
    return dual_form(base.apply_lambda(body_part(x)), base.apply_lambda(slope_part(x)));
}

Matrix<Dual> dual_lefschetz_commutator(const Sl2Model<Scalar>& model, const Form<Scalar>& v)
{
    Sl2Model<Dual> deformed = deform_model(model, v);
    return operator_matrix<Dual>(model.dim(), [&](const Form<Dual>& x) {
        Form<Dual> ab = deformed.apply_lambda(apply_lambda_extended(model, x));
        Form<Dual> ba = apply_lambda_extended(model, deformed.apply_lambda(x));
        return ab - ba;
    });
}

std::vector<Form<Scalar>> primitive_basis_bidegree(const Sl2Model<Scalar>& model, int p, int q)
{
    int N = model.dim();
    std::vector<Form<Scalar>> out;
    int m = p + q;
    if (p < 0 || q < 0 || p > N || q > N || m > N)
        return out;
    const std::vector<Mono> dom = monomials_of_bidegree(N, p, q);
    int k = N - m + 1;
    if (m + 2 * k > 2 * N) {
        for (const auto& mono : dom)
            out.push_back(Form<Scalar>::monomial(N, mono));
        return out;
    }
    const std::vector<Mono> cod = monomials_of_bidegree(N, p + k, q + k);
    Matrix<Scalar> mk(int(cod.size()), int(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Form<Scalar> image = model.lef_pow(Form<Scalar>::monomial(N, dom[j]), k);
        for (const auto& [mm, c] : image.terms())
            mk.at(column_index(cod, mm), int(j)) = c;
    }
    for (const auto& vec : kernel(std::move(mk))) {
        Form<Scalar> f(N);
        for (std::size_t i = 0; i < vec.size(); ++i)
            f.add(dom[i], vec[i]);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Form<Scalar>> real_11_basis(int dim)
{
    std::vector<Form<Scalar>> out;
    for (int j = 1; j <= dim; ++j)
        out.push_back(h_unit(dim, j));
    for (int j = 1; j <= dim; ++j) {
        for (int k = j + 1; k <= dim; ++k) {
            Form<Scalar> jk = Form<Scalar>::dz(dim, j).wedge(Form<Scalar>::dzb(dim, k));
            Form<Scalar> kj = Form<Scalar>::dz(dim, k).wedge(Form<Scalar>::dzb(dim, j));
            out.push_back(Scalar::i() * (jk + kj));
            out.push_back(jk - kj);
        }
    }
    return out;
}

} // namespace lefvar
