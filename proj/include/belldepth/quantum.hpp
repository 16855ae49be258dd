#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "belldepth/producible.hpp"

namespace belldepth {

/// Identical single-qubit measurement pair on every site:
/// M0 = cos(theta) sz + sin(theta) sx,  M1 = cos(phi) sz + sin(phi) sx.
struct MeasurementAngles {
    double theta = 0;
    double phi = 0;
};

/// Inequality coefficients in double precision for spectral work.
struct IneqD {
    double alpha, beta, gamma, delta, epsilon;
    static IneqD from(const TwoBodySymInequality& q) {
        return {rat_double(q.alpha), rat_double(q.beta), rat_double(q.gamma), rat_double(q.delta),
                rat_double(q.epsilon)};
    }
};

namespace spin {

/// Angular momentum matrices for total spin j (dimension 2j+1).
inline void jz_jx(double j, Eigen::MatrixXd& Jz, Eigen::MatrixXd& Jx) {
    const int dim = (int)std::lround(2 * j) + 1;
    Jz = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd Jp = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        double m = j - i;
        Jz(i, i) = m;
        if (i > 0) Jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Jx = (Jp + Jp.transpose()) / 2;
}

}  // namespace spin

/// Collective Bell operator restricted to one total-spin sector. Built purely
/// from the collective sums T0, T1 of the site measurements:
///   B = a T0 + b T1 + (g/2)(T0^2 - N) + d (1/2{T0,T1} - N cos(theta-phi)) + (e/2)(T1^2 - N).
inline Eigen::MatrixXd bell_operator_block(int N, const IneqD& q, const MeasurementAngles& ang,
                                           double j) {
    Eigen::MatrixXd Jz, Jx;
    spin::jz_jx(j, Jz, Jx);
    const int dim = (int)Jz.rows();
    Eigen::MatrixXd T0 = 2 * (std::cos(ang.theta) * Jz + std::sin(ang.theta) * Jx);
    Eigen::MatrixXd T1 = 2 * (std::cos(ang.phi) * Jz + std::sin(ang.phi) * Jx);
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
    return q.alpha * T0 + q.beta * T1 + 0.5 * q.gamma * (T0 * T0 - N * I) +
           q.delta * (0.5 * (T0 * T1 + T1 * T0) - N * std::cos(ang.theta - ang.phi) * I) +
           0.5 * q.epsilon * (T1 * T1 - N * I);
}

/// All total-spin sectors of an N-qubit permutation-invariant system:
/// j = N/2, N/2-1, ..., (N mod 2)/2.
inline std::vector<double> spin_sectors(int N) {
    std::vector<double> out;
    for (double j = N / 2.0; j >= (N % 2) / 2.0 - 1e-9; j -= 1.0) out.push_back(j);
    return out;
}

/// Smallest eigenvalue over every spin sector. The ground state of a
/// permutation-invariant operator may sit below the symmetric sector, so all
/// sectors are scanned.
inline double min_eigenvalue(int N, const TwoBodySymInequality& ineq,
                             const MeasurementAngles& ang) {
    if (N < 1 || N > 40) throw std::out_of_range("min_eigenvalue: N out of supported range");
    IneqD q = IneqD::from(ineq);
    double best = std::numeric_limits<double>::infinity();
    for (double j : spin_sectors(N)) {
        Eigen::MatrixXd B = bell_operator_block(N, q, ang, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
        best = std::min(best, es.eigenvalues()(0));
    }
    return best;
}

/// Dense 2^N validation oracle: builds the full Bell operator from site
/// tensor factors and diagonalizes it.
inline double min_eigenvalue_dense(int N, const TwoBodySymInequality& ineq,
                                   const MeasurementAngles& ang) {
    if (N < 1 || N > 12) throw std::out_of_range("dense oracle limited to N <= 12");
    const long dim = 1L << N;
    Eigen::Matrix2d sz, sx;
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    Eigen::Matrix2d M0 = std::cos(ang.theta) * sz + std::sin(ang.theta) * sx;
    Eigen::Matrix2d M1 = std::cos(ang.phi) * sz + std::sin(ang.phi) * sx;
    auto site_sum = [&](const Eigen::Matrix2d& M) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
        for (int site = 0; site < N; ++site) {
            // accumulate I x .. x M x .. x I without forming each kron
            for (long r = 0; r < dim; ++r) {
                long bit = (r >> (N - 1 - site)) & 1;
                for (long cbit = 0; cbit < 2; ++cbit) {
                    long c = (r & ~(1L << (N - 1 - site))) | (cbit << (N - 1 - site));
                    T(r, c) += M((int)bit, (int)cbit);
                }
            }
        }
        return T;
    };
    Eigen::MatrixXd T0 = site_sum(M0), T1 = site_sum(M1);
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
    IneqD q = IneqD::from(ineq);
    Eigen::MatrixXd B = q.alpha * T0 + q.beta * T1 + 0.5 * q.gamma * (T0 * T0 - N * I) +
                        q.delta * (0.5 * (T0 * T1 + T1 * T0) - N * std::cos(ang.theta - ang.phi) * I) +
                        0.5 * q.epsilon * (T1 * T1 - N * I);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

struct QuantumScanConfig {
    int grid = 64;            // grid density per axis over [0, pi)
    double tol = 1e-10;       // simplex-refinement size tolerance
    int max_refine = 4000;
};

struct QuantumScanResult {
    int N = 0;
    double best_value = 0;
    MeasurementAngles best_angles;
    /// violated_k[k] == true iff best_value < -beta_C^k(N) - margin
    std::array<bool, 7> violated_k{};
};

namespace detail {

/// Deterministic Nelder-Mead on a 2-d function.
inline std::pair<Eigen::Vector2d, double> nelder_mead_2d(
    const std::function<double(double, double)>& f, Eigen::Vector2d x0, double step, double tol,
    int max_iter) {
    std::array<Eigen::Vector2d, 3> pts = {x0, x0 + Eigen::Vector2d(step, 0),
                                          x0 + Eigen::Vector2d(0, step)};
    std::array<double, 3> val;
    for (int i = 0; i < 3; ++i) val[i] = f(pts[i](0), pts[i](1));
    for (int it = 0; it < max_iter; ++it) {
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] < val[b]; });
        int lo = idx[0], mid = idx[1], hi = idx[2];
        if ((pts[hi] - pts[lo]).norm() < tol) break;
        Eigen::Vector2d centroid = (pts[lo] + pts[mid]) / 2;
        Eigen::Vector2d refl = centroid + (centroid - pts[hi]);
        double fr = f(refl(0), refl(1));
        if (fr < val[lo]) {
            Eigen::Vector2d exp = centroid + 2 * (centroid - pts[hi]);
            double fe = f(exp(0), exp(1));
            if (fe < fr) {
                pts[hi] = exp;
                val[hi] = fe;
            } else {
                pts[hi] = refl;
                val[hi] = fr;
            }
        } else if (fr < val[mid]) {
            pts[hi] = refl;
            val[hi] = fr;
        } else {
            Eigen::Vector2d con = centroid + 0.5 * (pts[hi] - centroid);
            double fc = f(con(0), con(1));
            if (fc < val[hi]) {
                pts[hi] = con;
                val[hi] = fc;
            } else {
                for (int i = 0; i < 3; ++i) {
                    if (i == lo) continue;
                    pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
                    val[i] = f(pts[i](0), pts[i](1));
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (val[i] < val[best]) best = i;
    return {pts[best], val[best]};
}

}  // namespace detail

/// Coarse grid over (theta, phi) in [0, pi)^2 followed by local refinement
/// (unconstrained, so optima on the torus near the seam are still reached).
/// Deterministic for a fixed configuration.
inline QuantumScanResult optimize_angles(const TwoBodySymInequality& ineq, int N,
                                         const QuantumScanConfig& cfg = {}) {
    QuantumScanResult out;
    out.N = N;
    double best = std::numeric_limits<double>::infinity();
    MeasurementAngles bang;
    const double span = M_PI;
    for (int a = 0; a < cfg.grid; ++a) {
        for (int b = 0; b < cfg.grid; ++b) {
            MeasurementAngles ang{a * span / cfg.grid, b * span / cfg.grid};
            double v = min_eigenvalue(N, ineq, ang);
            if (v < best) {
                best = v;
                bang = ang;
            }
        }
    }
    auto f = [&](double t, double p) { return min_eigenvalue(N, ineq, {t, p}); };
    auto [xy, v] = detail::nelder_mead_2d(f, {bang.theta, bang.phi}, span / cfg.grid, cfg.tol,
                                          cfg.max_refine);
    if (v < best) {
        best = v;
        bang = {xy(0), xy(1)};
    }
    out.best_value = best;
    out.best_angles = bang;
    return out;
}

/// Expectation value of the Bell expression on an N-qubit permutation
/// symmetric state given in the symmetric basis (index = number of spins
/// flipped from |0>, so amps has N+1 real entries).
inline double state_violation(const TwoBodySymInequality& ineq, int N,
                              const std::vector<double>& amps, const MeasurementAngles& ang) {
    if ((int)amps.size() != N + 1) throw std::invalid_argument("state must have N+1 amplitudes");
    double norm2 = 0;
    for (double a : amps) norm2 += a * a;
    if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("state is not normalized");
    Eigen::MatrixXd B = bell_operator_block(N, IneqD::from(ineq), ang, N / 2.0);
    Eigen::VectorXd v(N + 1);
    for (int i = 0; i <= N; ++i) v(i) = amps[i];
    return v.dot(B * v);
}

}  // namespace belldepth
