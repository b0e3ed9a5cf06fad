#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/scalar.hpp"

namespace lefvar {

/// Canonical monomial of the hermitian exterior algebra on dz_1..dz_N,
/// dzb_1..dzb_N: bit j of `z` (resp. `zb`) set means dz_{j+1} (resp.
/// dzb_{j+1}) is present. Index order inside a monomial is always
/// ascending z-block then ascending zb-block, so the bitmask pair is a
/// unique key and exact equality is a map lookup.
struct Mono {
    std::uint32_t z = 0;
    std::uint32_t zb = 0;

    int p() const { return std::popcount(z); }
    int q() const { return std::popcount(zb); }
    int degree() const { return p() + q(); }

    friend auto operator<=>(const Mono&, const Mono&) = default;
};

/// (-1)^{#inversions} when merging two disjoint ascending index sets.
inline int merge_sign(std::uint32_t a, std::uint32_t b)
{
    int inv = 0;
    for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        inv += std::popcount(a >> (j + 1));
    }
    return (inv % 2 == 0) ? 1 : -1;
}

/// Wedge of two canonical monomials: zero on index overlap, else the merged
/// monomial and the parity sign picked up by sorting the concatenation.
inline std::pair<Mono, int> wedge_mono(const Mono& a, const Mono& b)
{
    if ((a.z & b.z) != 0 || (a.zb & b.zb) != 0)
        return {Mono{}, 0};
    // Move b's z-block across a's zb-block (all generators are odd).
    int sign = ((a.q() * b.p()) % 2 == 0) ? 1 : -1;
    sign *= merge_sign(a.z, b.z);
    sign *= merge_sign(a.zb, b.zb);
    return {Mono{a.z | b.z, a.zb | b.zb}, sign};
}

/// Element of the complexified exterior algebra of a 2N-dimensional
/// hermitian space, stored sparsely over R (Scalar or Dual). Zero
/// coefficients are never stored, so operator== is exact structural
/// equality.
template <class R>
class Form {
public:
    explicit Form(int dim) : dim_(dim)
    {
        require(dim >= 1, Errc::dimension_mismatch, "dimension must be positive");
    }

    static Form zero(int dim) { return Form(dim); }
    static Form unit(int dim) { return monomial(dim, Mono{}); }

    static Form monomial(int dim, Mono m, R coeff = R(1))
    {
        Form f(dim);
        f.set(m, std::move(coeff));
        return f;
    }

    /// dz_j, 1-based.
    static Form dz(int dim, int j)
    {
        require(j >= 1 && j <= dim, Errc::index_out_of_range, "dz index out of range");
        return monomial(dim, Mono{std::uint32_t(1) << (j - 1), 0});
    }

    /// dzb_j, 1-based.
    static Form dzb(int dim, int j)
    {
        require(j >= 1 && j <= dim, Errc::index_out_of_range, "dzb index out of range");
        return monomial(dim, Mono{0, std::uint32_t(1) << (j - 1)});
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, R>& terms() const { return terms_; }

    void set(const Mono& m, R coeff)
    {
        if (coeff.is_zero())
            terms_.erase(m);
        else
            terms_[m] = std::move(coeff);
    }

    void add(const Mono& m, const R& coeff)
    {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!coeff.is_zero())
                terms_.emplace(m, coeff);
            return;
        }
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    R coeff(const Mono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? R(0) : it->second;
    }

    friend Form operator+(const Form& a, const Form& b)
    {
        a.check_same_dim(b);
        Form out = a;
        for (const auto& [m, c] : b.terms_)
            out.add(m, c);
        return out;
    }

    friend Form operator-(const Form& a, const Form& b) { return a + (-b); }

    Form operator-() const
    {
        Form out(dim_);
        for (const auto& [m, c] : terms_)
            out.terms_.emplace(m, -c);
        return out;
    }

    friend Form operator*(const R& s, const Form& f)
    {
        Form out(f.dim_);
        if (s.is_zero())
            return out;
        for (const auto& [m, c] : f.terms_)
            out.set(m, s * c);
        return out;
    }

    /// Exterior product; bilinear, associative, sign from adjacent
    /// transpositions.
    Form wedge(const Form& b) const
    {
        check_same_dim(b);
        Form out(dim_);
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                auto [m, sgn] = wedge_mono(ma, mb);
                if (sgn == 0)
                    continue;
                R c = ca * cb;
                if (sgn < 0)
                    c = -c;
                out.add(m, c);
            }
        }
        return out;
    }

    Form wedge_pow(int k) const
    {
        require(k >= 0, Errc::invariant_violation, "negative wedge power");
        Form out = unit(dim_);
        for (int i = 0; i < k; ++i)
            out = out.wedge(*this);
        return out;
    }

    /// The (p,q)-part; summing over all bidegrees reconstructs the form.
    Form bidegree_component(int p, int q) const
    {
        Form out(dim_);
        for (const auto& [m, c] : terms_)
            if (m.p() == p && m.q() == q)
                out.terms_.emplace(m, c);
        return out;
    }

    Form degree_component(int n) const
    {
        Form out(dim_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == n)
                out.terms_.emplace(m, c);
        return out;
    }

    bool is_homogeneous() const
    {
        int n = -1;
        for (const auto& [m, c] : terms_) {
            if (n < 0)
                n = m.degree();
            else if (m.degree() != n)
                return false;
        }
        return true;
    }

    /// Degree of a homogeneous form; 0 for the zero form.
    int degree() const
    {
        require(is_homogeneous(), Errc::invariant_violation, "degree of inhomogeneous form");
        return terms_.empty() ? 0 : terms_.begin()->first.degree();
    }

    bool is_pure_type() const
    {
        int p = -1, q = -1;
        for (const auto& [m, c] : terms_) {
            if (p < 0) {
                p = m.p();
                q = m.q();
            } else if (m.p() != p || m.q() != q) {
                return false;
            }
        }
        return true;
    }

    std::set<std::pair<int, int>> bidegrees() const
    {
        std::set<std::pair<int, int>> out;
        for (const auto& [m, c] : terms_)
            out.emplace(m.p(), m.q());
        return out;
    }

    /// Complex conjugation: swaps dz and dzb indices (sign (-1)^{pq} from
    /// reordering) and conjugates coefficients.
    Form conjugated() const
    {
        Form out(dim_);
        for (const auto& [m, c] : terms_) {
            R cc = c.conj();
            if ((m.p() * m.q()) % 2 != 0)
                cc = -cc;
            out.add(Mono{m.zb, m.z}, cc);
        }
        return out;
    }

    bool is_real() const { return conjugated() == *this; }

    friend bool operator==(const Form& a, const Form& b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    void check_same_dim(const Form& o) const
    {
        require(dim_ == o.dim_, Errc::dimension_mismatch, "forms over different dimensions");
    }

    int dim_;
    std::map<Mono, R> terms_;
};

template <class R>
Form<R> wedge(const Form<R>& a, const Form<R>& b)
{
    return a.wedge(b);
}

inline Form<Dual> embed(const Form<Scalar>& f)
{
    Form<Dual> out(f.dim());
    for (const auto& [m, c] : f.terms())
        out.set(m, Dual(c));
    return out;
}

/// body + eps*slope as a dual-coefficient form.
inline Form<Dual> dual_form(const Form<Scalar>& body, const Form<Scalar>& slope)
{
    Form<Dual> out = embed(body);
    for (const auto& [m, c] : slope.terms())
        out.add(m, Dual(Scalar(0), c));
    return out;
}

inline Form<Scalar> body_part(const Form<Dual>& f)
{
    Form<Scalar> out(f.dim());
    for (const auto& [m, c] : f.terms())
        out.set(m, c.body());
    return out;
}

inline Form<Scalar> slope_part(const Form<Dual>& f)
{
    Form<Scalar> out(f.dim());
    for (const auto& [m, c] : f.terms())
        out.set(m, c.slope());
    return out;
}

inline std::vector<Mono> monomials_of_degree(int dim, int n)
{
    std::vector<Mono> out;
    std::uint32_t full = (std::uint32_t(1) << dim) - 1;
    for (std::uint32_t z = 0; z <= full; ++z)
        for (std::uint32_t zb = 0; zb <= full; ++zb)
            if (std::popcount(z) + std::popcount(zb) == n)
                out.push_back(Mono{z, zb});
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Mono> monomials_of_bidegree(int dim, int p, int q)
{
    std::vector<Mono> out;
    std::uint32_t full = (std::uint32_t(1) << dim) - 1;
    for (std::uint32_t z = 0; z <= full; ++z)
        for (std::uint32_t zb = 0; zb <= full; ++zb)
            if (std::popcount(z) == p && std::popcount(zb) == q)
                out.push_back(Mono{z, zb});
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Mono> all_monomials(int dim)
{
    std::vector<Mono> out;
    for (int n = 0; n <= 2 * dim; ++n) {
        auto v = monomials_of_degree(dim, n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

/// i*dz_j^dzb_j, the real (1,1) building block; the standard Kaehler
/// element is the sum over j.
inline Form<Scalar> h_unit(int dim, int j)
{
    return Scalar::i() * Form<Scalar>::dz(dim, j).wedge(Form<Scalar>::dzb(dim, j));
}

inline Form<Scalar> standard_omega(int dim)
{
    Form<Scalar> out(dim);
    for (int j = 1; j <= dim; ++j)
        out = out + h_unit(dim, j);
    return out;
}

} // namespace lefvar
