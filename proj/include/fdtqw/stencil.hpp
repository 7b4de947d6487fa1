#pragma once

#include <array>

#include "fdtqw/core_types.hpp"

namespace fdtqw {

/// Real coefficient table of the six-step map at fixed (alpha, beta): weights
/// of the u and d amplitudes at even offsets -6..+6 in the u-row
///   u_out[m] = sum_k A(2k) u[m+2k] + B(2k) d[m+2k].
/// The d-row is not stored; it follows from the angle-negation mirror
///   d_out[m] = sum_k B(-2k; -alpha,-beta) u[m+2k] + A(-2k; -alpha,-beta) d[m+2k].
/// Only even offsets carry weight, and the +6 entry vanishes identically for
/// both models.
struct StencilCoefficients {
  ModelKind model = ModelKind::FibCoin;
  AnglePair angles;

  static constexpr std::array<int, 7> offsets{-6, -4, -2, 0, 2, 4, 6};
  std::array<double, 7> A{};
  std::array<double, 7> B{};

  static int index_of(int offset);
  double a(int offset) const { return A[index_of(offset)]; }
  double b(int offset) const { return B[index_of(offset)]; }
};

/// Evaluate the closed-form coefficient expressions at (alpha, beta).
/// model must be FibCoin or FibStep.
StencilCoefficients closed_form_coefficients(ModelKind model, const AnglePair& angles);

/// Independent reconstruction of the same table: compose the six elementary
/// (shift * coin) steps on a small lattice, apply the product to point
/// sources in u and in d, and read the u-row weights off the result.
StencilCoefficients oracle_coefficients(ModelKind model, const AnglePair& angles,
                                        int lattice_size = 16);

/// Advance a field by six elementary steps at once using the table (u-row as
/// stored, d-row from the mirror rule). Requires at least 14 sites.
SpinorField apply_stencil(const SpinorField& field, const StencilCoefficients& coeffs);

/// 2x2 symbol of the six-step map at wavenumber q, row-major. Unitary for
/// every q when the table is correct.
std::array<cplx, 4> symbol_matrix(const StencilCoefficients& coeffs, double q);

/// Largest entrywise |A-A'| or |B-B'| between two tables.
double max_table_difference(const StencilCoefficients& x, const StencilCoefficients& y);

/// First moments sum_k (2k/6) A(2k) and sum_k (2k/6) B(2k).
std::pair<double, double> stencil_first_moments(const StencilCoefficients& coeffs);

}  // namespace fdtqw
