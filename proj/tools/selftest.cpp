#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "frtc/chaos.hpp"
#include "frtc/dwt.hpp"
#include "frtc/frft.hpp"
#include "frtc/metrics.hpp"
#include "frtc/pipeline.hpp"

namespace frtc_cli {

namespace {

using namespace frtc;

constexpr double kPi = std::numbers::pi;
const int kSizes[] = {8, 16, 64};

CMatrix centered_dft_matrix(int n) {
    const int c = n / 2;
    CMatrix f(n, n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            const double phase = -2.0 * kPi * (r - c) * (k - c) / n;
            f(r, k) = Complex(std::cos(phase), std::sin(phase)) / std::sqrt(static_cast<double>(n));
        }
    }
    return f;
}

CMatrix centered_parity_matrix(int n) {
    const int c = n / 2;
    CMatrix p = CMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        p(m, ((2 * c - m) % n + n) % n) = 1.0;
    }
    return p;
}

CVector random_signal(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    CVector x(n);
    for (int i = 0; i < n; ++i) x(i) = Complex(dist(rng), dist(rng));
    return x;
}

PlainImage synthetic_image(Index n) {
    PlainImage img;
    for (auto& ch : img.channels) ch = RMatrix(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double y = static_cast<double>(i) / static_cast<double>(n);
            const double x = static_cast<double>(j) / static_cast<double>(n);
            const double r = 0.45 + 0.23 * std::sin(2 * kPi * (1.5 * x + 0.3)) * std::sin(2 * kPi * (2.3 * y + 0.1)) +
                             0.22 * std::exp(-((x - 0.3) * (x - 0.3) + (y - 0.62) * (y - 0.62)) / 0.045) +
                             0.08 * std::sin(2 * kPi * 7 * (x + 0.5 * y));
            const double g = 0.40 + 0.25 * std::sin(2 * kPi * (2.1 * x * y + 0.2)) +
                             0.18 * std::exp(-((x - 0.7) * (x - 0.7) + (y - 0.25) * (y - 0.25)) / 0.03) +
                             0.07 * std::sin(2 * kPi * (9 * y + 3 * x));
            const double b = 0.35 + 0.2 * std::cos(2 * kPi * (1.2 * x + 2.8 * y)) +
                             0.25 * std::exp(-((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)) / 0.09) +
                             0.05 * std::sin(2 * kPi * 11 * x);
            img.channels[0](i, j) = std::floor(std::clamp(r, 0.0, 1.0) * 255.0);
            img.channels[1](i, j) = std::floor(std::clamp(g, 0.0, 1.0) * 255.0);
            img.channels[2](i, j) = std::floor(std::clamp(b, 0.0, 1.0) * 255.0);
        }
    }
    return img;
}

double frft_unitarity() {
    PlanSource plans;
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int n : kSizes) {
        for (double a : {0.1, 0.5, 0.9, 1.3, 1.7}) {
            auto plan = plans.plan(n, a);
            const CMatrix& m = plan->matrix();
            worst = std::max(worst, (m * m.adjoint() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
            const CVector x = random_signal(n, rng);
            worst = std::max(worst, std::abs(plan->apply(x).norm() - x.norm()));
        }
    }
    return worst;
}

double frft_additivity() {
    PlanSource plans;
    std::mt19937_64 rng(8);
    double worst = 0.0;
    for (int n : kSizes) {
        const CVector x = random_signal(n, rng);
        for (double a1 : {0.1, 0.7, 1.9}) {
            for (double a2 : {0.3, 1.1}) {
                const CVector lhs = plans.plan(n, a2)->apply(plans.plan(n, a1)->apply(x));
                const CVector rhs = plans.plan(n, a1 + a2)->apply(x);
                worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

double frft_period4() {
    PlanSource plans;
    double worst = 0.0;
    for (int n : kSizes) {
        for (double a : {0.3, 1.5}) {
            worst = std::max(worst, (plans.plan(n, a)->matrix() - plans.plan(n, a + 4.0)->matrix())
                                        .cwiseAbs()
                                        .maxCoeff());
        }
    }
    return worst;
}

double frft_special_orders() {
    PlanSource plans;
    double worst = 0.0;
    for (int n : kSizes) {
        worst = std::max(worst, (plans.plan(n, 0.0)->matrix() - CMatrix::Identity(n, n))
                                    .cwiseAbs()
                                    .maxCoeff());
        worst = std::max(worst,
                         (plans.plan(n, 1.0)->matrix() - centered_dft_matrix(n)).cwiseAbs().maxCoeff());
        worst = std::max(worst,
                         (plans.plan(n, 2.0)->matrix() - centered_parity_matrix(n)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (plans.plan(n, -0.7)->matrix() - plans.plan(n, 0.7)->matrix().adjoint())
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    return worst;
}

double frft_gaussian() {
    PlanSource plans;
    const int n = 64;
    CVector g(n);
    for (int i = 0; i < n; ++i) {
        const double u = (i - n / 2) / std::sqrt(static_cast<double>(n));
        g(i) = std::exp(-kPi * u * u);
    }
    const CVector out = plans.plan(n, 0.5)->apply(g);
    return (out - g).norm() / g.norm();
}

double dwt_roundtrip() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    double worst = 0.0;
    for (int n : kSizes) {
        CMatrix x(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x(i, j) = Complex(dist(rng), dist(rng));
        worst = std::max(worst, (idwt2_haar(dwt2_haar(x)) - x).cwiseAbs().maxCoeff());
    }
    return worst;
}

double dwt_energy() {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    double worst = 0.0;
    for (int n : kSizes) {
        CMatrix x(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x(i, j) = Complex(dist(rng), dist(rng));
        const SubbandSet sb = dwt2_haar(x);
        const double sum = sb.ll.squaredNorm() + sb.lh.squaredNorm() + sb.hl.squaredNorm() +
                           sb.hh.squaredNorm();
        worst = std::max(worst, std::abs(sum - x.squaredNorm()) / x.squaredNorm());
    }
    return worst;
}

double chaos_bounded() {
    double worst = 0.0;
    for (double v : logistic_iterate(3.99, 0.3, 100000)) {
        worst = std::max(worst, std::max(-v, v - 1.0));
    }
    for (double v : tent_iterate(1.99, 0.3, 100000)) {
        worst = std::max(worst, std::max(-v, v - 1.0));
    }
    return worst;
}

double chaos_determinism() {
    MaskSpec spec;
    spec.kind = MaskKind::Logistic;
    spec.p = 3.99;
    spec.x0 = 0.3;
    const RMatrix s1 = gen_chaotic_map(spec, 16, 16);
    const RMatrix s2 = gen_chaotic_map(spec, 16, 16);
    const PhaseMask m1 = uniform_rpm(42, 16, 16);
    const PhaseMask m2 = uniform_rpm(42, 16, 16);
    double worst = (s1 - s2).cwiseAbs().maxCoeff();
    worst = std::max(worst, (m1.values - m2.values).cwiseAbs().maxCoeff());
    return worst;
}

double chaos_sensitivity() {
    MaskSpec spec;
    spec.kind = MaskKind::Logistic;
    spec.p = 3.99;
    spec.x0 = 0.3;
    spec.burn_in = 100;
    MaskSpec nudged = spec;
    nudged.x0 = 0.3 + 1e-10;
    const RMatrix d = gen_chaotic_map(spec, 16, 16) - gen_chaotic_map(nudged, 16, 16);
    // Inverted: PASS means the divergence exceeded 0.1.
    return d.cwiseAbs().maxCoeff() > 0.1 ? 0.0 : 1.0;
}

double pipeline_roundtrip() {
    double worst = 0.0;
    for (auto alg : {Algorithm::A31, Algorithm::A32, Algorithm::A33, Algorithm::A41,
                     Algorithm::A42, Algorithm::A43}) {
        for (int n : kSizes) {
            EncryptionKey key;
            key.algorithm = alg;
            std::tie(key.mask1, key.mask2) = default_mask_pair(alg);
            const PlainImage img = synthetic_image(n);
            const MseTriple mse = mse_channels(img, decrypt(encrypt(img, key), key));
            worst = std::max(worst, mse.max_channel());
        }
    }
    return worst;
}

double pipeline_wrong_order() {
    double lowest = 1e300;
    for (auto alg : {Algorithm::A31, Algorithm::A41}) {
        EncryptionKey key;
        key.algorithm = alg;
        std::tie(key.mask1, key.mask2) = default_mask_pair(alg);
        const PlainImage img = synthetic_image(64);
        const ComplexChannels dec = decrypt(encrypt(img, key), key.with_orders(0.4, 0.4, 0.4, 0.4));
        const MseTriple mse = mse_channels(img, dec);
        lowest = std::min(lowest, std::min(mse.r, std::min(mse.g, mse.b)));
    }
    // Inverted: PASS means every wrong-order channel MSE stayed above 1e3.
    return lowest >= 1e3 ? 0.0 : 1.0;
}

}  // namespace

bool run_selftest() {
    struct Row {
        const char* name;
        std::function<double()> error;
        double tolerance;
    };
    const std::vector<Row> rows = {
        {"frft-unitarity", frft_unitarity, 1e-10},
        {"frft-additivity", frft_additivity, 1e-10},
        {"frft-period4", frft_period4, 1e-10},
        {"frft-special-orders", frft_special_orders, 1e-10},
        {"frft-gaussian-selftransform", frft_gaussian, 1e-3},
        {"dwt-perfect-reconstruction", dwt_roundtrip, 1e-12},
        {"dwt-energy-conservation", dwt_energy, 1e-9},
        {"chaos-boundedness", chaos_bounded, 0.0},
        {"chaos-determinism", chaos_determinism, 0.0},
        {"chaos-seed-sensitivity", chaos_sensitivity, 0.5},
        {"pipeline-roundtrip", pipeline_roundtrip, 1e-18},
        {"pipeline-wrong-order-rejection", pipeline_wrong_order, 0.5},
    };
    bool all_ok = true;
    std::printf("%-32s %-6s %s\n", "property group", "status", "worst error / tolerance");
    for (const auto& row : rows) {
        const double err = row.error();
        const bool ok = err <= row.tolerance;
        all_ok = all_ok && ok;
        std::printf("%-32s %-6s %.3e / %.1e\n", row.name, ok ? "PASS" : "FAIL", err,
                    row.tolerance);
    }
    return all_ok;
}

}  // namespace frtc_cli
