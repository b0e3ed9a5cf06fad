#pragma once

#include "core/torus.hpp"

namespace lefvar {

struct ConeWitness {
    std::vector<int> index; // multiset of basis indices, ascending
    bool harmonic = false;
};

/// Linearity criterion for the i-th cone of special Kaehler forms:
/// criterion_holds iff every witness product is harmonic.
struct ConeReport {
    int i = 0;
    bool criterion_holds = false;
    std::vector<ConeWitness> witnesses;
};

struct TangentCheck {
    bool identity_exact = false;     // (w0+eps v)^{N-i} w0^i = w0^N + (N-i) eps w0^{N-1} v
    bool tangent_condition = false;  // w0^{N-1} v is a constant multiple of w0^N
    bool v_harmonic = false;
};

/// Expands (omega0 + eps*v)^{N-i} omega0^i over dual numbers, verifies the
/// first-order identity exactly, and decides whether v is tangent to the
/// i-th cone; tangency must coincide with v being harmonic, and the
/// returned flag reports that common value.
TangentCheck tangent_identity_check(const FourierForm<Scalar>& v, int i, const TorusContext& ctx);

/// Harmonicity of all symmetrized (N-i)-fold products of the harmonic
/// basis times omega0^i; polarization makes this equivalent to the
/// criterion over every real harmonic (1,1) form. BadBasis when the given
/// basis is not harmonic real (1,1) or fails to span.
ConeReport ki_linear_criterion(int i, const std::vector<FourierForm<Scalar>>& basis,
                               const TorusContext& ctx);

struct ConeSuiteReport {
    std::vector<ConeReport> reports;   // i = 0 .. N-1
    bool monotone = false;             // holds(i) implies holds(i+1)
    bool top_power_criterion = false;  // i = 0: alpha^N harmonic
    bool square_criterion = false;     // i = N-2: alpha^2 omega^{N-2} harmonic
    bool last_criterion = false;       // i = N-1
};

/// Runs the criterion for every i, asserts monotonicity of the computed
/// reports, and exposes the two equivalence-chain criteria.
ConeSuiteReport cone_equivalence_suite(const std::vector<FourierForm<Scalar>>& basis,
                                       const TorusContext& ctx);

/// Constant real (1,1) basis as Fourier forms (the harmonic (1,1) basis
/// of the flat model).
std::vector<FourierForm<Scalar>> harmonic_11_basis(const TorusContext& ctx);

} // namespace lefvar
