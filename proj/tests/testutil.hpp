#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "frtc/pipeline.hpp"
#include "frtc/types.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

/// Independent oracle: centered unitary DFT matrix, built directly from its
/// definition (never through the plan machinery).
inline frtc::CMatrix centered_dft_matrix(int n) {
    const int c = n / 2;
    frtc::CMatrix f(n, n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            const double phase = -2.0 * kPi * (r - c) * (k - c) / n;
            f(r, k) = frtc::Complex(std::cos(phase), std::sin(phase)) /
                      std::sqrt(static_cast<double>(n));
        }
    }
    return f;
}

/// Centered index reversal m -> (2*floor(n/2) - m) mod n.
inline frtc::CMatrix centered_parity_matrix(int n) {
    const int c = n / 2;
    frtc::CMatrix p = frtc::CMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
        p(m, ((2 * c - m) % n + n) % n) = 1.0;
    }
    return p;
}

inline frtc::CMatrix random_complex(frtc::Index rows, frtc::Index cols, std::uint64_t seed,
                                    double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    frtc::CMatrix m(rows, cols);
    for (frtc::Index i = 0; i < rows; ++i) {
        for (frtc::Index j = 0; j < cols; ++j) {
            m(i, j) = frtc::Complex(dist(rng), dist(rng));
        }
    }
    return m;
}

inline frtc::RMatrix random_real(frtc::Index rows, frtc::Index cols, std::uint64_t seed,
                                 double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    frtc::RMatrix m(rows, cols);
    for (frtc::Index i = 0; i < rows; ++i) {
        for (frtc::Index j = 0; j < cols; ++j) {
            m(i, j) = dist(rng);
        }
    }
    return m;
}

inline frtc::CVector random_complex_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    frtc::CVector x(n);
    for (int i = 0; i < n; ++i) x(i) = frtc::Complex(dist(rng), dist(rng));
    return x;
}

/// Deterministic photo-like RGB test image: smooth gradients, blobs and a
/// little texture, quantized to integer 0..255 values.
inline frtc::PlainImage synthetic_image(frtc::Index n) {
    frtc::PlainImage img;
    for (auto& ch : img.channels) ch = frtc::RMatrix(n, n);
    for (frtc::Index i = 0; i < n; ++i) {
        for (frtc::Index j = 0; j < n; ++j) {
            const double y = static_cast<double>(i) / static_cast<double>(n);
            const double x = static_cast<double>(j) / static_cast<double>(n);
            const double r =
                0.45 + 0.23 * std::sin(2 * kPi * (1.5 * x + 0.3)) * std::sin(2 * kPi * (2.3 * y + 0.1)) +
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

inline frtc::EncryptionKey test_key(frtc::Algorithm alg) {
    frtc::EncryptionKey key;
    key.algorithm = alg;
    auto [m1, m2] = frtc::default_mask_pair(alg);
    key.mask1 = m1;
    key.mask2 = m2;
    return key;
}

/// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto candidate = base / ("frtc_test_" + std::to_string(std::random_device{}()));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
