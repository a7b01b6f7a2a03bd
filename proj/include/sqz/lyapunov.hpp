// Linearized quadrature dynamics of the two-tone model and its steady state.
//
// State ordering is R = (X1, X2, U1, U2): mechanical quadratures first, then
// cavity quadratures, in a frame rotating at the mean pump frequency.
// Internally the vacuum state has variance 1/2 per quadrature; conversion to
// the zero-point-unit QuadratureState (vacuum = 1) happens only in
// quadrature_state_from(). Langevin form: dR = A R dt + noise, with the
// symmetrized diffusion D carrying gamma_m (2 n_m_th + 1)/2 per mechanical
// and kappa (2 n_c_th + 1)/2 per cavity quadrature.
#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "sqz/model.hpp"

namespace sqz {

struct SpectrumResult {
    bool stable = true;
    std::vector<double> freq_hz;
    std::vector<double> psd;
};

// Scale and offset applied to a modeled output spectrum: S(f) = s0 + gain *
// (photon-flux density). freq_hz is the absolute detection grid.
struct SpectrumModelParams {
    double s0 = 0.0;
    double gain = 1.0;
    std::vector<double> freq_hz;
};

struct LinearSystem {
    Eigen::Matrix4d drift = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d diffusion = Eigen::Matrix4d::Zero();
    // noise input scaling diag(sqrt(gamma_m), sqrt(gamma_m), sqrt(kappa), sqrt(kappa))
    Eigen::Matrix4d input_map = Eigen::Matrix4d::Zero();
    // carried along for spectra and frequency mapping
    double omega_c = 0.0;
    double kappa = 0.0;
    double kappa_out = 0.0;
    double gamma_m = 0.0;
    double n_m_th = 0.0;
    double n_c_th = 0.0;
    // rotating-frame offset from omega_c: mean of the two pump detunings
    double frame_detuning = 0.0;
};

LinearSystem build_system(const SystemParams& p, const PumpConfig& pumps,
                          const BathState& baths);

std::array<std::complex<double>, 4> drift_eigenvalues(const LinearSystem& sys);
bool is_stable(const LinearSystem& sys);

enum class SolveStatus { ok, unstable, singular };

struct CovarianceResult {
    SolveStatus status = SolveStatus::ok;
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
    double residual_rel = 0.0; // max-norm of A V + V A^T + D over max-norm of D
    double condition = 0.0;    // estimate for the vectorized solve
};

// Steady-state covariance from A V + V A^T + D = 0, solved as a 10-unknown
// linear system over the distinct entries of symmetric V, with one pass of
// iterative refinement. residual_rel <= 1e-12 for a healthy solve.
CovarianceResult steady_covariance(const LinearSystem& sys);

// Mechanical block in zero-point units (vacuum variance 1).
QuadratureState quadrature_state_from(const Eigen::Matrix4d& covariance);

// Symplectic spectrum of the two-mode covariance; physical states satisfy
// nu >= 1/2 in the internal convention.
std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& covariance);

// Unsymmetrized spectral density matrix S(w) = chi(w) M chi(w)^dag with
// chi(w) = (-i w I - A)^(-1); M is the complex input correlation matrix whose
// real part is the diffusion. w is a frame frequency. S is Hermitian; its
// diagonal gives quadrature power spectra, (1/2pi) Int S_ii dw = V_ii.
Eigen::Matrix4cd spectral_density_matrix(const LinearSystem& sys, double omega_frame);

// Detected photon-flux density at absolute frequency grid points:
// kappa_out-weighted, normally ordered emission of the cavity mode, so a
// vacuum-bath cavity contributes nothing above the floor.
SpectrumResult transfer_spectrum(const LinearSystem& sys, const SpectrumModelParams& model);

} // namespace sqz
