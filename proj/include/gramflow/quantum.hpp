#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "gramflow/config_space.hpp"
#include "gramflow/grammar.hpp"

namespace gramflow {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenClusterTol = 1e-8;

struct HermitianOperator {
  std::shared_ptr<const BasisEnumeration> basis;
  Matrix entries;
};

struct DensityMatrix {
  std::shared_ptr<const BasisEnumeration> basis;
  Matrix entries;
};

// Throws unless m is elementwise Hermitian within kHermitianTol.
HermitianOperator make_hermitian(std::shared_ptr<const BasisEnumeration> basis,
                                 Matrix m);

// Throws unless Hermitian, unit trace, and eigenvalues >= -1e-10.
DensityMatrix make_density(std::shared_ptr<const BasisEnumeration> basis,
                           Matrix m);

double max_abs(const Matrix& m);
bool same_basis(const BasisEnumeration& a, const BasisEnumeration& b);

// Matrix of the production action at letter position j (1-based): a basis
// word alpha = alpha1 lhs alpha2 with |alpha1| = j-1 maps to
// alpha1 rhs alpha2 when the image still fits the truncation; every other
// column is zero.
Matrix jump_operator(const Production& pi, int j, const BasisEnumeration& b);

enum class Correction { word_length, identity, custom_diagonal };

struct HamiltonianSpec {
  Grammar grammar;
  std::vector<std::complex<double>> lambdas;  // one per production
  double c = 0.0;
  Correction correction = Correction::word_length;
  std::vector<double> custom_diagonal;  // by basis index, zero-padded
  int max_len = 1;
  std::size_t dim_cap = kDefaultDimCap;
};

// Per-production coefficients: the production amplitude where present,
// fallback otherwise.
std::vector<std::complex<double>> lambdas_from(
    const Grammar& g, std::complex<double> fallback);

// H_N = sum_pi sum_j (lambda A + conj(lambda) A*) + c H_c on the basis of
// words of length <= max_len over the grammar's full alphabet.
HermitianOperator build_hamiltonian(const HamiltonianSpec& spec);

// exp(itH) psi and U rho U*, both via the spectral decomposition of H.
Vector evolve_ray(const Vector& psi, const HermitianOperator& h, double t);
DensityMatrix evolve_density(const DensityMatrix& rho,
                             const HermitianOperator& h, double t);

// exp(-tau H) / tr exp(-tau H).
DensityMatrix gibbs_state(const HermitianOperator& h, double tau);

// tr(rho X); throws if the imaginary part exceeds kTraceTol.
double expectation(const DensityMatrix& rho, const HermitianOperator& x);

struct MeasurementOutcome {
  double eigenvalue = 0.0;
  double probability = 0.0;
  Matrix post_state;  // P rho P / p; zero matrix when p < 1e-12
};

// Spectral measurement of x in state rho. Eigenvalues within
// kEigenClusterTol are merged into one projector.
std::vector<MeasurementOutcome> measure_outcomes(const DensityMatrix& rho,
                                                 const HermitianOperator& x);

// Post-state conditioned on outcome index (into measure_outcomes order);
// throws on probability < 1e-12.
DensityMatrix measure_filtered(const DensityMatrix& rho,
                               const HermitianOperator& x,
                               std::size_t outcome);

// sum_j P_j rho P_j, the trace-preserving unfiltered channel.
DensityMatrix measure_unfiltered(const DensityMatrix& rho,
                                 const HermitianOperator& x);

HermitianOperator word_projector(std::shared_ptr<const BasisEnumeration> basis,
                                 const Word& w);
HermitianOperator diagonal_observable(
    std::shared_ptr<const BasisEnumeration> basis, std::vector<double> diag);

// Zero-pads an observable on a smaller truncation into a larger one over
// the same alphabet; the smaller basis is a prefix of the larger.
HermitianOperator embed_observable(const HermitianOperator& x,
                                   std::shared_ptr<const BasisEnumeration> to);

struct ScanRow {
  int max_len = 0;
  std::size_t dim = 0;
  double value = 0.0;
  std::optional<double> delta;  // |value - previous value|
};

// tr(rho_N X) for each truncation in ascending n_list; X is given on the
// smallest truncation and embedded upward.
std::vector<ScanRow> convergence_scan(const HamiltonianSpec& spec_template,
                                      double tau, const HermitianOperator& x,
                                      const std::vector<int>& n_list);

}  // namespace gramflow
