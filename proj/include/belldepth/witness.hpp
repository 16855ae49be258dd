#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "belldepth/depth_bounds.hpp"

namespace belldepth {

enum class GhzFamily { Svetlichny, Mermin };

/// Exact bound expressed as an integer power of sqrt(2).
struct Sqrt2Power {
    int exponent = 0;
    double value() const { return std::pow(2.0, exponent / 2.0); }
};

/// Bounds of the N-partite parity Bell expressions: local, k-nonlocal,
/// quantum and nosignaling, all powers of sqrt(2).
struct DepthBoundsRow {
    int N = 0;
    int k = 0;
    GhzFamily family = GhzFamily::Svetlichny;
    Sqrt2Power local, k_nonlocal, quantum, nosignaling;
};

inline DepthBoundsRow depth_bounds(int N, int k, GhzFamily family) {
    if (k < 1 || k > N) throw std::out_of_range("depth_bounds: 1 <= k <= N");
    DepthBoundsRow row;
    row.N = N;
    row.k = k;
    row.family = family;
    const int q = (N + k - 1) / k;  // ceil(N/k)
    row.quantum.exponent = N - 1;
    if (family == GhzFamily::Svetlichny) {
        row.local.exponent = N % 2 ? 1 : 0;
        row.k_nonlocal.exponent = N - 2 * (q / 2);
        row.nosignaling.exponent = N;
    } else {
        row.local.exponent = N % 2 ? 0 : 1;
        row.k_nonlocal.exponent = N - 2 * ((q + 1) / 2) + 1;
        row.nosignaling.exponent = N - 1;
    }
    return row;
}

/// Collective-measurement witness input: the N-fold x-parity expectation and
/// the second moment of the collective spin z component.
struct GhzWitnessInput {
    int N = 0;
    double parity_x = 0;  // in [-1, 1]
    double Sz2 = 0;       // in [0, N^2/4]
};

struct GhzWitnessResult {
    double value = 0;
    double threshold = 0;
    bool violated = false;
    int depth_at_least = 1;  // k+1 when violated
};

/// Witness value sqrt(2)^{N-1} (parity_x + 4 Sz2 - N^2) against the combined
/// k-nonlocal threshold 2^{(N - ceil(N/k))/2}. Strictly exceeding the
/// threshold certifies Bell correlation depth >= k+1.
inline GhzWitnessResult ghz_witness(const GhzWitnessInput& in, int k) {
    if (in.N < 2) throw std::out_of_range("ghz_witness: N >= 2");
    if (k < 1 || k > in.N) throw std::out_of_range("ghz_witness: 1 <= k <= N");
    if (std::abs(in.parity_x) > 1 + 1e-12 || in.Sz2 < -1e-12 ||
        in.Sz2 > in.N * in.N / 4.0 + 1e-9)
        throw std::invalid_argument("ghz_witness input out of range");
    GhzWitnessResult r;
    const int q = (in.N + k - 1) / k;
    r.value = std::pow(2.0, (in.N - 1) / 2.0) * (in.parity_x + 4 * in.Sz2 - in.N * in.N);
    r.threshold = std::pow(2.0, (in.N - q) / 2.0);
    r.violated = r.value > r.threshold;
    r.depth_at_least = r.violated ? k + 1 : 1;
    return r;
}

/// Smallest eigenvalue of the parity/pair-correlation shift operator
///   |G+><G+| - |G-><G-| - X^(x)N - sum_{m != n} Z_m Z_n + N(N-1).
/// The operator couples only complementary basis pairs, so the spectrum is
/// assembled from 2x2 blocks; this equals the dense diagonalization exactly.
inline double chi_min_eigenvalue(int N) {
    if (N < 2 || N > 30) throw std::out_of_range("chi_min_eigenvalue: N = 2..30");
    const std::uint64_t dim = 1ULL << N;
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < dim; ++s) {
        std::uint64_t comp = ~s & (dim - 1);
        if (comp < s) continue;  // one block per pair
        int w = __builtin_popcountll(s);
        double zz = double(N - 2 * w) * (N - 2 * w) - N;  // sum_{m!=n} Z_m Z_n eigenvalue
        double diag = -zz + double(N) * (N - 1);
        bool extreme = (s == 0 || comp == 0);
        double off = (extreme ? 1.0 : 0.0) - 1.0;  // GHZ coherence minus parity flip
        // eigenvalues of [[diag, off], [off, diag]]
        best = std::min(best, diag - std::abs(off));
    }
    return best;
}

/// Dense construction of the same operator for cross-checks (N small).
inline double chi_min_eigenvalue_dense(int N) {
    if (N < 2 || N > 12) throw std::out_of_range("dense chi limited to N <= 12");
    const long dim = 1L << N;
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(dim, dim);
    for (long s = 0; s < dim; ++s) {
        int w = __builtin_popcountll((unsigned long long)s);
        double zz = double(N - 2 * w) * (N - 2 * w) - N;
        chi(s, s) += -zz + double(N) * (N - 1);
        long comp = ~s & (dim - 1);
        chi(s, comp) += -1.0;  // -X^(x)N
    }
    // GHZ projector difference: |0..0><1..1| + |1..1><0..0|
    chi(0, dim - 1) += 1.0;
    chi(dim - 1, 0) += 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chi, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

/// <state| B |state> for the optimal-settings parity Bell operator
/// B = 2^{(N-1)/2} (|0..0><1..1| + |1..1><0..0|); state given in the
/// symmetric basis (N+1 real amplitudes, index = excitation count).
inline double parity_bell_value(int N, const std::vector<double>& amps) {
    if ((int)amps.size() != N + 1) throw std::invalid_argument("state must have N+1 amplitudes");
    double norm2 = 0;
    for (double a : amps) norm2 += a * a;
    if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("state is not normalized");
    return std::pow(2.0, (N - 1) / 2.0) * 2.0 * amps[0] * amps[N];
}

/// Experimental record: spin contrast along b and scaled second moment along
/// the orthogonal direction a.
struct WitnessRecord {
    int N = 0;
    double C_b = 0;    // in [-1, 1]
    double zeta2 = 0;  // >= 0
};

/// Threshold on the scaled second moment below which depth >= k+1 is
/// certified:  [2 - b - sqrt(b^2 - C_b^2)] / 2  with  b = beta_C^k / (2N).
inline double two_body_threshold(double C_b, int N, int k) {
    double b = rat_double(closed_form_bound(k, N)) / (2.0 * N);
    if (std::abs(C_b) > b)
        throw std::domain_error("contrast exceeds the bound ratio: miscalibrated input");
    return (2.0 - b - std::sqrt(b * b - C_b * C_b)) / 2.0;
}

/// General 1-d maximization form of the witness bound (used as the dominance
/// cross-check of the closed form): max over theta of
/// [Cbc sin(t) - Ca cos(t) - b + cos^2 t] / cos^2 t.
inline double witness_rhs_max_theta(double Cbc, double Ca, double b, int samples = 20000) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        double t = M_PI * i / samples;
        double c = std::cos(t);
        if (std::abs(c) < 1e-7) continue;
        double v = (Cbc * std::sin(t) - Ca * c - b + c * c) / (c * c);
        best = std::max(best, v);
    }
    return best;
}

struct DepthClassification {
    int depth_lower_bound = 1;  // >= 1; k+1 for the largest violated k
    bool capped = false;        // true when even the deepest tabulated witness fires
};

/// Largest k in 1..6 whose threshold strictly exceeds the measured second
/// moment; depth >= k+1. Violating none certifies nothing (depth >= 1).
inline DepthClassification classify_depth(const WitnessRecord& rec) {
    if (rec.N < 6) throw std::out_of_range("classify_depth: N >= 6 (witness chain needs k <= 6 <= N)");
    DepthClassification out;
    for (int k = 1; k <= 6; ++k) {
        double thr = two_body_threshold(std::clamp(rec.C_b, -1.0, 1.0), rec.N, k);
        if (rec.zeta2 < thr) {
            out.depth_lower_bound = k + 1;
            out.capped = (k == 6);
        }
    }
    return out;
}

/// Witness threshold curves on a contrast grid, plus the spin-squeezing
/// entanglement line zeta^2 = C_b^2. CSV columns:
/// C_b, thr_k1..thr_k6, squeezing_line.
inline std::string emit_depth_curves(int N, const std::vector<double>& contrast_grid) {
    std::string csv = "C_b,thr_k1,thr_k2,thr_k3,thr_k4,thr_k5,thr_k6,squeezing_line\n";
    for (double c : contrast_grid) {
        csv += std::to_string(c);
        for (int k = 1; k <= 6; ++k) csv += "," + std::to_string(two_body_threshold(c, N, k));
        csv += "," + std::to_string(c * c) + "\n";
    }
    return csv;
}

/// Monte-Carlo fraction of Gaussian draws around a measured record that are
/// classified at depth >= k+1. Seeded and reproducible.
inline double gaussian_depth_likelihood(const WitnessRecord& mean,
                                        const std::array<double, 4>& covariance, int k,
                                        std::uint64_t samples, std::uint64_t seed) {
    if (k < 1 || k > 6) throw std::out_of_range("gaussian_depth_likelihood: k = 1..6");
    const double a = covariance[0], b = covariance[1], c = covariance[2], d = covariance[3];
    if (std::abs(b - c) > 1e-12 || a < 0 || d < 0 || a * d - b * c < -1e-12)
        throw std::invalid_argument("covariance must be symmetric positive semi-definite");
    // Cholesky-like factor (2x2, PSD-safe)
    double l11 = std::sqrt(std::max(a, 0.0));
    double l21 = l11 > 0 ? b / l11 : 0.0;
    double l22 = std::sqrt(std::max(d - l21 * l21, 0.0));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double g1 = gauss(rng), g2 = gauss(rng);
        double Cb = mean.C_b + l11 * g1;
        double z2 = std::max(mean.zeta2 + l21 * g1 + l22 * g2, 0.0);
        Cb = std::clamp(Cb, -1.0, 1.0);
        double thr = two_body_threshold(Cb, mean.N, k);
        if (z2 < thr) ++hits;
    }
    return double(hits) / double(samples);
}

}  // namespace belldepth
