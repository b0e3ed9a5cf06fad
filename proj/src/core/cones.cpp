#include "core/cones.hpp"

namespace lefvar {

TangentCheck tangent_identity_check(const FourierForm<Scalar>& v, int i, const TorusContext& ctx)
{
    int N = ctx.dim();
    require(i >= 0 && i <= N - 1, Errc::index_out_of_range, "cone index out of range");
    require(v.has_pure_bidegree(1, 1), Errc::not_pure_type, "v must have bidegree (1,1)");
    require(v.is_real(), Errc::inconsistent_input, "v must be real");
    require(is_closed(v), Errc::not_closed, "v must be closed");

    const Sl2Model<Scalar>& model = ctx.model();
    Form<Scalar> omega = model.omega();

    FourierForm<Dual> omega_eps =
        dual_fourier(FourierForm<Scalar>::constant(omega), v);
    FourierForm<Dual> lhs = embed(FourierForm<Scalar>::constant(Form<Scalar>::unit(N)));
    for (int t = 0; t < N - i; ++t)
        lhs = wedge(lhs, omega_eps, ctx.mode_set());
    lhs = wedge(lhs, embed(FourierForm<Scalar>::constant(omega.wedge_pow(i))), ctx.mode_set());

    FourierForm<Scalar> top_v =
        wedge(FourierForm<Scalar>::constant(omega.wedge_pow(N - 1)), v, ctx.mode_set());
    FourierForm<Dual> rhs = dual_fourier(FourierForm<Scalar>::constant(omega.wedge_pow(N)),
                                         Scalar(N - i) * top_v);

    TangentCheck out;
    out.identity_exact = (lhs == rhs);
    require(out.identity_exact, Errc::invariant_violation,
            "first-order cone identity fails exactly");
    out.tangent_condition = (top_v == top_v.mode_zero_part());
    out.v_harmonic = is_harmonic(v, ctx);
    require(out.tangent_condition == out.v_harmonic, Errc::invariant_violation,
            "tangency and harmonicity disagree for a closed (1,1) direction");
    return out;
}

namespace {

void validate_basis(const std::vector<FourierForm<Scalar>>& basis, const TorusContext& ctx)
{
    int N = ctx.dim();
    require(!basis.empty(), Errc::bad_basis, "empty harmonic basis");
    for (const auto& b : basis) {
        require(b.has_pure_bidegree(1, 1), Errc::bad_basis, "basis element not of type (1,1)");
        require(b.is_real(), Errc::bad_basis, "basis element not real");
        require(is_harmonic(b, ctx), Errc::bad_basis, "basis element not harmonic");
    }
    // Spanning test over the constant real (1,1) forms: rank N^2 after
    // splitting coefficients into real and imaginary parts.
    const auto monos = monomials_of_bidegree(N, 1, 1);
    Matrix<Scalar> m(int(2 * monos.size()), int(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Form<Scalar> c = basis[j].constant_part();
        for (std::size_t r = 0; r < monos.size(); ++r) {
            Scalar coeff = c.coeff(monos[r]);
            m.at(int(2 * r), int(j)) = Scalar(coeff.re());
            m.at(int(2 * r + 1), int(j)) = Scalar(coeff.im());
        }
    }
    require(rank(m) == N * N, Errc::bad_basis, "basis does not span the harmonic (1,1) forms");
}

void multisets(int count, int size, std::vector<int>& current,
               std::vector<std::vector<int>>& out)
{
    if (int(current.size()) == size) {
        out.push_back(current);
        return;
    }
    int start = current.empty() ? 0 : current.back();
    for (int m = start; m < count; ++m) {
        current.push_back(m);
        multisets(count, size, current, out);
        current.pop_back();
    }
}

} // namespace

ConeReport ki_linear_criterion(int i, const std::vector<FourierForm<Scalar>>& basis,
                               const TorusContext& ctx)
{
    int N = ctx.dim();
    require(i >= 0 && i <= N - 1, Errc::index_out_of_range, "cone index out of range");
    validate_basis(basis, ctx);

    ConeReport report;
    report.i = i;
    report.criterion_holds = true;

    FourierForm<Scalar> omega_i =
        FourierForm<Scalar>::constant(ctx.model().omega().wedge_pow(i));
    std::vector<std::vector<int>> indices;
    std::vector<int> current;
    multisets(int(basis.size()), N - i, current, indices);
    for (const auto& index : indices) {
        FourierForm<Scalar> product = omega_i;
        for (int m : index)
            product = wedge(product, basis[std::size_t(m)], ctx.mode_set());
        bool harmonic = is_harmonic(product, ctx);
        report.criterion_holds = report.criterion_holds && harmonic;
        report.witnesses.push_back({index, harmonic});
    }
    return report;
}

ConeSuiteReport cone_equivalence_suite(const std::vector<FourierForm<Scalar>>& basis,
                                       const TorusContext& ctx)
{
    int N = ctx.dim();
    ConeSuiteReport out;
    for (int i = 0; i <= N - 1; ++i)
        out.reports.push_back(ki_linear_criterion(i, basis, ctx));
    out.monotone = true;
    for (int i = 0; i + 1 <= N - 1; ++i)
        if (out.reports[std::size_t(i)].criterion_holds
            && !out.reports[std::size_t(i + 1)].criterion_holds)
            out.monotone = false;
    out.top_power_criterion = out.reports.front().criterion_holds;
    out.square_criterion = (N >= 2) ? out.reports[std::size_t(N - 2)].criterion_holds
                                    : out.reports.front().criterion_holds;
    out.last_criterion = out.reports.back().criterion_holds;
    return out;
}

std::vector<FourierForm<Scalar>> harmonic_11_basis(const TorusContext& ctx)
{
    std::vector<FourierForm<Scalar>> out;
    for (const auto& f : real_11_basis(ctx.dim()))
        out.push_back(FourierForm<Scalar>::constant(f));
    return out;
}

} // namespace lefvar
