#include "sqz/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqz {

namespace {

// index of entry (i,j), i<=j, in the packed upper triangle of a 4x4
constexpr int packed_index(int i, int j) {
    int a = i < j ? i : j;
    int b = i < j ? j : i;
    return a * 4 - a * (a + 1) / 2 + b;
}

using Vec10 = Eigen::Matrix<double, 10, 1>;
using Mat10 = Eigen::Matrix<double, 10, 10>;

Mat10 lyapunov_operator(const Eigen::Matrix4d& A) {
    // row for equation (i,j): sum_k A_ik V_kj + A_jk V_ik = -D_ij
    Mat10 L = Mat10::Zero();
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            int row = packed_index(i, j);
            for (int k = 0; k < 4; ++k) {
                L(row, packed_index(k, j)) += A(i, k);
                L(row, packed_index(i, k)) += A(j, k);
            }
        }
    }
    return L;
}

Eigen::Matrix4d unpack(const Vec10& v) {
    Eigen::Matrix4d V;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) V(i, j) = v(packed_index(i, j));
    return V;
}

double max_norm(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

LinearSystem build_system(const SystemParams& p, const PumpConfig& pumps,
                          const BathState& baths) {
    const CouplingRates rates = enhanced_couplings(p, pumps);
    const double Gd = rates.G_minus - rates.G_plus;
    const double Gs = rates.G_minus + rates.G_plus;
    // mean pump detuning rotates the cavity quadratures, the half-difference
    // rotates the mechanical ones
    const double dc = 0.5 * (pumps.delta_minus + pumps.delta_plus);
    const double db = 0.5 * (pumps.delta_plus - pumps.delta_minus);

    LinearSystem sys;
    sys.drift << -0.5 * p.gamma_m, -db, 0.0, -Gd,
                 db, -0.5 * p.gamma_m, Gs, 0.0,
                 0.0, -Gd, -0.5 * p.kappa, -dc,
                 Gs, 0.0, dc, -0.5 * p.kappa;
    const double dm = p.gamma_m * (2.0 * baths.n_m_th + 1.0) / 2.0;
    const double dcav = p.kappa * (2.0 * baths.n_c_th + 1.0) / 2.0;
    sys.diffusion = Eigen::Vector4d(dm, dm, dcav, dcav).asDiagonal();
    sys.input_map = Eigen::Vector4d(std::sqrt(p.gamma_m), std::sqrt(p.gamma_m),
                                    std::sqrt(p.kappa), std::sqrt(p.kappa))
                        .asDiagonal();
    sys.omega_c = p.omega_c;
    sys.kappa = p.kappa;
    sys.kappa_out = p.kappa_out;
    sys.gamma_m = p.gamma_m;
    sys.n_m_th = baths.n_m_th;
    sys.n_c_th = baths.n_c_th;
    sys.frame_detuning = dc;
    return sys;
}

std::array<std::complex<double>, 4> drift_eigenvalues(const LinearSystem& sys) {
    Eigen::EigenSolver<Eigen::Matrix4d> es(sys.drift, false);
    std::array<std::complex<double>, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

bool is_stable(const LinearSystem& sys) {
    for (const auto& ev : drift_eigenvalues(sys))
        if (ev.real() >= 0.0) return false;
    return true;
}

CovarianceResult steady_covariance(const LinearSystem& sys) {
    CovarianceResult out;
    if (!is_stable(sys)) {
        out.status = SolveStatus::unstable;
        return out;
    }
    const Mat10 L = lyapunov_operator(sys.drift);
    Vec10 rhs;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) rhs(packed_index(i, j)) = -sys.diffusion(i, j);

    Eigen::FullPivLU<Mat10> lu(L);
    const double pivot_max = std::abs(lu.matrixLU()(0, 0));
    const double pivot_min = std::abs(lu.matrixLU()(9, 9));
    out.condition = pivot_min > 0.0 ? pivot_max / pivot_min
                                    : std::numeric_limits<double>::infinity();
    if (!lu.isInvertible()) {
        out.status = SolveStatus::singular;
        return out;
    }
    Vec10 v = lu.solve(rhs);
    // one refinement pass keeps the residual near machine level even when the
    // damping rates are many decades apart
    v += lu.solve(rhs - L * v);
    const Eigen::Matrix4d V = unpack(v);
    const Eigen::Matrix4d residual =
        sys.drift * V + V * sys.drift.transpose() + sys.diffusion;
    out.covariance = V;
    out.residual_rel = max_norm(residual) / max_norm(sys.diffusion);
    return out;
}

QuadratureState quadrature_state_from(const Eigen::Matrix4d& covariance) {
    QuadratureState q;
    q.var_x1 = 2.0 * covariance(0, 0);
    q.var_x2 = 2.0 * covariance(1, 1);
    q.cov_x12 = 2.0 * covariance(0, 1);
    return q;
}

std::array<double, 2> symplectic_eigenvalues(const Eigen::Matrix4d& covariance) {
    Eigen::Matrix4d Omega = Eigen::Matrix4d::Zero();
    Omega(0, 1) = 1.0; Omega(1, 0) = -1.0;
    Omega(2, 3) = 1.0; Omega(3, 2) = -1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(Omega * covariance, false);
    // eigenvalues come in +/- i nu pairs
    std::array<double, 4> mags;
    for (int i = 0; i < 4; ++i) mags[i] = std::abs(es.eigenvalues()(i).imag());
    std::sort(mags.begin(), mags.end());
    return {mags[0], mags[2]};
}

Eigen::Matrix4cd spectral_density_matrix(const LinearSystem& sys, double omega_frame) {
    using namespace std::complex_literals;
    Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
    const double gm = sys.gamma_m, k = sys.kappa;
    M(0, 0) = gm * (sys.n_m_th + 0.5);
    M(1, 1) = M(0, 0);
    M(0, 1) = 0.5i * gm;
    M(1, 0) = -0.5i * gm;
    M(2, 2) = k * (sys.n_c_th + 0.5);
    M(3, 3) = M(2, 2);
    M(2, 3) = 0.5i * k;
    M(3, 2) = -0.5i * k;
    Eigen::Matrix4cd lhs =
        -1.0i * omega_frame * Eigen::Matrix4cd::Identity() - sys.drift.cast<std::complex<double>>();
    Eigen::Matrix4cd chi = lhs.inverse();
    return chi * M * chi.adjoint();
}

SpectrumResult transfer_spectrum(const LinearSystem& sys, const SpectrumModelParams& model) {
    SpectrumResult out;
    out.freq_hz = model.freq_hz;
    if (!is_stable(sys)) {
        out.stable = false;
        return out;
    }
    out.psd.reserve(model.freq_hz.size());
    for (double f : model.freq_hz) {
        // detection frequency relative to the rotating frame; the detected
        // spectrum at +w is the emission correlator evaluated at -w
        const double w = two_pi * f - sys.omega_c - sys.frame_detuning;
        const Eigen::Matrix4cd S = spectral_density_matrix(sys, -w);
        const std::complex<double> flux =
            0.5 * (S(2, 2) + S(3, 3) + std::complex<double>(0.0, 1.0) * (S(2, 3) - S(3, 2)));
        out.psd.push_back(model.s0 + model.gain * sys.kappa_out * flux.real());
    }
    return out;
}

} // namespace sqz
