#pragma once

#include <array>
#include <vector>

#include "qpic/common.hpp"
#include "qpic/grid.hpp"
#include "qpic/states.hpp"
#include "qpic/volterra.hpp"

namespace qpic {

// Everything that depends only on (physics, state, grid) and is shared by
// every evaluation of the projection functional: the origin trace of the
// freely evolved state, the charge-equation source built from it, the
// final-time pairing row against the bound state, and the free overlap
// (U_T gamma, psi_abar).
struct FunctionalContext {
  PhysicsParams phys;
  TimeGrid grid;
  RadialState state;
  AbelWeights weights;

  std::vector<cplx> trace;   // U_t gamma(0) on the nodes
  std::vector<cplx> source;  // f_n = 4 sqrt(pi i) * Abel row of the trace
  std::vector<cplx> pair_w;  // final-time pairing weights, see below
  cplx overlap_T{};          // (U_T gamma, psi_abar)

  FunctionalContext(const PhysicsParams& p, const RadialState& s,
                    const TimeGrid& g);
};

// Weights pairing a piecewise-linear series on the grid against the singular
// final-time bound trace: sum_j w[j] V_j ~= int_0^T U_{T-s} psi_abar(0) V(s) ds.
// Panel moments are integrated in v = sqrt(T-s), where the regularized trace
// is analytic, so the reconstruction of V is the only error source.
std::vector<cplx> bound_pair_weights(const TimeGrid& g,
                                     const PhysicsParams& p);

// Samples of the k-th H^1_0 basis element sin((k+1) pi t / T) on the grid.
std::vector<double> basis_on_grid(const TimeGrid& g, int k);

// alpha(t_j) + abar on the grid; the multiplier entering the Volterra kernel.
std::vector<double> potential_on_grid(const ControlProfile& alpha,
                                      const PhysicsParams& p,
                                      const TimeGrid& g);

// Charge trajectory V(alpha) for the cached state/source.
ComplexSeries evaluate_V(const FunctionalContext& ctx,
                         const ControlProfile& alpha);

// Projection functional
//   F(alpha) = (U_T gamma, psi) + i int_0^T U_{T-s} psi(0) V(alpha)(s) ds,
// the time integral evaluated with the product-integration row at the final
// node (the pairing kernel carries a 1/sqrt(T-s) singularity).
cplx evaluate_F(const FunctionalContext& ctx, const ComplexSeries& v);
cplx evaluate_F(const FunctionalContext& ctx, const ControlProfile& alpha);

// Gateaux derivative of the charge in direction u (samples on the grid):
// the same Volterra operator with source -4 sqrt(pi i) Abel(V * u).
ComplexSeries gateaux_dV(const FunctionalContext& ctx,
                         const ControlProfile& alpha, const ComplexSeries& v,
                         const std::vector<double>& u_nodes);

// Derivative of F in direction u at the control alpha (with its charge v).
cplx gateaux_dF(const FunctionalContext& ctx, const ControlProfile& alpha,
                const ComplexSeries& v, const std::vector<double>& u_nodes);

// At alpha = 0 the derivative collapses to a single explicit integral:
//   d_0 F(u) = 4 pi i sqrt(2|abar|) int_0^T V(0)(t) u(t) e^{-i (T-t) lambda} dt,
// evaluated with Simpson's rule (the integrand is smooth).
cplx d0F_closed(const FunctionalContext& ctx, const ComplexSeries& v0,
                const std::vector<double>& u_nodes);

// Columns dF(u_k) over the first n_basis sine directions. At alpha = 0 the
// closed zero-point form is used; elsewhere each column solves one linear
// Volterra problem.
std::vector<cplx> jacobian_columns(const FunctionalContext& ctx,
                                   const ControlProfile& alpha,
                                   const ComplexSeries& v, int n_basis);

// Singular values (s1 >= s2) of the real 2 x n map behind complex columns.
std::array<double, 2> jacobian_sigma(const std::vector<cplx>& cols);

}  // namespace qpic
