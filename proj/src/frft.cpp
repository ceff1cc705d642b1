#include "frtc/frft.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

namespace frtc {

namespace {

constexpr double kPi = std::numbers::pi;

/// Hermite index for each basis column: 0..N-2, then N-1 (odd N) or N (even N).
std::vector<int> hermite_indices(int n) {
    std::vector<int> ks(n);
    for (int j = 0; j < n - 1; ++j) ks[j] = j;
    ks[n - 1] = (n % 2 == 1) ? n - 1 : n;
    return ks;
}

/// Discrete Hermite-Gauss basis: columns are eigenvectors of the centered
/// unitary DFT, column j belonging to eigenvalue (-i)^{k_j}.
struct HermiteBasis {
    RMatrix vectors;          // N x N orthogonal
    std::vector<int> indices; // Hermite index per column
};

/// Orthonormal eigenbasis of the centered DS commuting matrix, split over
/// the even/odd subspaces of the centered reversal n -> (2c - n) mod N and
/// interleaved by Hermite-index parity. Within each parity class the DS
/// eigenvalues are simple, so this is deterministic; sorting is by
/// eigenvalue descending (ground state first).
RMatrix ds_parity_eigenbasis(int n, const std::vector<int>& ks) {
    const int c = n / 2;

    RMatrix s = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        s(i, i) = 2.0 * std::cos(2.0 * kPi * static_cast<double>(i - c) / n);
        s(i, (i + 1) % n) += 1.0;
        s(i, (i + n - 1) % n) += 1.0;
    }

    // Orbit basis of the reversal: pairs (m, m') give one even and one odd
    // vector, fixed points give an even vector.
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> fixed;
    std::vector<bool> seen(n, false);
    for (int m = 0; m < n; ++m) {
        if (seen[m]) continue;
        int mp = ((2 * c - m) % n + n) % n;
        if (mp == m) {
            fixed.push_back(m);
            seen[m] = true;
        } else {
            pairs.emplace_back(m, mp);
            seen[m] = true;
            seen[mp] = true;
        }
    }
    const int ne = static_cast<int>(fixed.size() + pairs.size());
    const int no = static_cast<int>(pairs.size());
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    RMatrix be = RMatrix::Zero(n, ne);
    int col = 0;
    for (int m : fixed) be(m, col++) = 1.0;
    for (auto [m, mp] : pairs) {
        be(m, col) = inv_sqrt2;
        be(mp, col) = inv_sqrt2;
        ++col;
    }
    RMatrix bo = RMatrix::Zero(n, no);
    col = 0;
    for (auto [m, mp] : pairs) {
        bo(m, col) = inv_sqrt2;
        bo(mp, col) = -inv_sqrt2;
        ++col;
    }

    Eigen::SelfAdjointEigenSolver<RMatrix> esol_e(be.transpose() * s * be);
    RMatrix ve = be * esol_e.eigenvectors();  // eigenvalues ascending
    RMatrix vo;
    if (no > 0) {
        Eigen::SelfAdjointEigenSolver<RMatrix> esol_o(bo.transpose() * s * bo);
        vo = bo * esol_o.eigenvectors();
    }

    // Interleave, reading each class from its largest eigenvalue down.
    RMatrix v(n, n);
    int ie = ne - 1;
    int io = no - 1;
    for (int j = 0; j < n; ++j) {
        if (ks[j] % 2 == 0) {
            v.col(j) = ve.col(ie--);
        } else {
            v.col(j) = vo.col(io--);
        }
    }
    return v;
}

/// Sampled continuous Hermite-Gauss functions on the centered grid
/// u = (i - floor(N/2)) / sqrt(N), unit-normalized, one column per needed
/// Hermite index. Stable normalized three-term recurrence in xi = sqrt(2 pi) u.
RMatrix sampled_hermites(int n, int kmax) {
    const int c = n / 2;
    RVector xi(n);
    for (int i = 0; i < n; ++i) {
        xi(i) = std::sqrt(2.0 * kPi) * static_cast<double>(i - c) / std::sqrt(static_cast<double>(n));
    }
    RMatrix h(n, kmax + 1);
    h.col(0) = (-0.5 * xi.array().square()).exp();
    if (kmax >= 1) {
        h.col(1) = std::numbers::sqrt2 * xi.array() * h.col(0).array();
    }
    for (int k = 1; k < kmax; ++k) {
        h.col(k + 1) = std::sqrt(2.0 / (k + 1)) * xi.array() * h.col(k).array()
                     - std::sqrt(static_cast<double>(k) / (k + 1)) * h.col(k - 1).array();
    }
    for (int k = 0; k <= kmax; ++k) {
        h.col(k).normalize();
    }
    return h;
}

void orthogonalize_against(RVector& w, const std::vector<RVector>& built) {
    for (const auto& b : built) {
        w -= b * b.dot(w);
    }
}

/// Inside each DFT eigenspace (spanned by the parity-split DS eigenvectors
/// with equal Hermite index mod 4), replace the basis with Gram-Schmidt
/// projections of the sampled continuous Hermite functions, processed by
/// ascending index. High indices whose samples stop resolving (projection
/// norm < 0.5, or orthogonalization residual < 0.1 of it) fall back to the
/// DS vectors, picking the one with the largest residual. A second
/// Gram-Schmidt pass keeps the basis orthonormal to roundoff.
HermiteBasis build_hermite_basis(int n) {
    HermiteBasis basis;
    basis.indices = hermite_indices(n);
    const auto& ks = basis.indices;
    const RMatrix v_ds = ds_parity_eigenbasis(n, ks);
    const RMatrix h = sampled_hermites(n, ks[n - 1]);

    basis.vectors = RMatrix(n, n);
    for (int residue = 0; residue < 4; ++residue) {
        std::vector<int> slots;
        for (int j = 0; j < n; ++j) {
            if (ks[j] % 4 == residue) slots.push_back(j);
        }
        if (slots.empty()) continue;

        RMatrix space(n, static_cast<Index>(slots.size()));
        for (std::size_t i = 0; i < slots.size(); ++i) {
            space.col(static_cast<Index>(i)) = v_ds.col(slots[i]);
        }

        std::vector<RVector> built;
        std::vector<int> unused(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) unused[i] = static_cast<int>(i);
        bool hermite_mode = true;

        for (int j : slots) {
            RVector w;
            bool have = false;
            if (hermite_mode) {
                RVector proj = space * (space.transpose() * h.col(ks[j]));
                const double r0 = proj.norm();
                if (r0 < 0.5) {
                    hermite_mode = false;
                } else {
                    orthogonalize_against(proj, built);
                    if (proj.norm() < 0.1 * r0) {
                        hermite_mode = false;
                    } else {
                        w = std::move(proj);
                        have = true;
                    }
                }
            }
            if (!have) {
                // Remaining DS vector with the largest residual.
                double best_norm = -1.0;
                std::size_t best_pos = 0;
                RVector best;
                for (std::size_t pos = 0; pos < unused.size(); ++pos) {
                    RVector cand = space.col(unused[pos]);
                    orthogonalize_against(cand, built);
                    const double nrm = cand.norm();
                    if (nrm > best_norm) {
                        best_norm = nrm;
                        best_pos = pos;
                        best = std::move(cand);
                    }
                }
                unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(best_pos));
                w = std::move(best);
            }
            w.normalize();
            orthogonalize_against(w, built);
            w.normalize();
            built.push_back(std::move(w));
        }
        for (std::size_t i = 0; i < slots.size(); ++i) {
            basis.vectors.col(slots[i]) = built[i];
        }
    }

    // Sign convention: largest-|entry| (first occurrence) positive.
    for (int j = 0; j < n; ++j) {
        Index imax = 0;
        basis.vectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (basis.vectors(imax, j) < 0.0) {
            basis.vectors.col(j) = -basis.vectors.col(j);
        }
    }
    return basis;
}

CMatrix assemble_plan_matrix(const HermiteBasis& basis, double order) {
    const int n = static_cast<int>(basis.vectors.rows());
    RVector cos_l(n);
    RVector sin_l(n);
    for (int j = 0; j < n; ++j) {
        const double phase = -0.5 * kPi * std::fmod(order * basis.indices[j], 4.0);
        cos_l(j) = std::cos(phase);
        sin_l(j) = std::sin(phase);
    }
    const RMatrix vt = basis.vectors.transpose();
    CMatrix m(n, n);
    m.real() = (basis.vectors * cos_l.asDiagonal()) * vt;
    m.imag() = (basis.vectors * sin_l.asDiagonal()) * vt;
    return m;
}

// Shared caches. Bases are reusable across orders of the same size; plans
// are keyed on (size, quantized reduced order). A single mutex guards both;
// concurrent lookups of the same key always observe one deterministic build.
std::mutex g_cache_mutex;
std::map<int, std::shared_ptr<const HermiteBasis>> g_basis_cache;
std::map<std::pair<int, std::int64_t>, std::shared_ptr<const FrftPlan>> g_plan_cache;

std::int64_t quantize_order(double reduced) {
    return std::llround(reduced * 1e12);
}

}  // namespace

double reduce_order(double order) {
    double r = std::fmod(order, 4.0);
    if (r < 0.0) r += 4.0;
    return r;
}

FrftPlan::FrftPlan(int n, double order) : n_(n) {
    if (n < 2) {
        throw InvalidArgument("FRFT size must be at least 2");
    }
    if (!std::isfinite(order)) {
        throw InvalidArgument("FRFT order must be finite");
    }
    order_ = reduce_order(order);
    if (order_ == 0.0) {
        matrix_ = CMatrix::Identity(n, n);
        return;
    }
    matrix_ = assemble_plan_matrix(build_hermite_basis(n), order_);
}

CVector FrftPlan::apply(const CVector& signal) const {
    if (signal.size() != n_) {
        throw DimensionError("signal length does not match plan size");
    }
    return matrix_ * signal;
}

std::shared_ptr<const FrftPlan> PlanSource::plan(int n, double order) const {
    if (mode_ == Cache::None) {
        return std::make_shared<const FrftPlan>(n, order);
    }
    if (n < 2) {
        throw InvalidArgument("FRFT size must be at least 2");
    }
    if (!std::isfinite(order)) {
        throw InvalidArgument("FRFT order must be finite");
    }
    const double reduced = reduce_order(order);
    const std::pair<int, std::int64_t> key{n, quantize_order(reduced)};

    std::lock_guard<std::mutex> lock(g_cache_mutex);
    if (auto it = g_plan_cache.find(key); it != g_plan_cache.end()) {
        return it->second;
    }
    std::shared_ptr<const HermiteBasis> basis;
    if (auto bit = g_basis_cache.find(n); bit != g_basis_cache.end()) {
        basis = bit->second;
    } else {
        basis = std::make_shared<const HermiteBasis>(build_hermite_basis(n));
        g_basis_cache.emplace(n, basis);
    }
    CMatrix m = (reduced == 0.0) ? CMatrix::Identity(n, n)
                                 : assemble_plan_matrix(*basis, reduced);
    std::shared_ptr<const FrftPlan> plan(new FrftPlan(n, reduced, std::move(m)));
    g_plan_cache.emplace(key, plan);
    return plan;
}

void PlanSource::clear_shared_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_basis_cache.clear();
    g_plan_cache.clear();
}

CMatrix frft_2d(const CMatrix& image, const OrderPair& orders, const PlanSource& plans) {
    if (image.rows() < 2 || image.cols() < 2) {
        throw InvalidArgument("2-D FRFT needs at least a 2x2 input");
    }
    auto col_plan = plans.plan(static_cast<int>(image.rows()), orders.col_order);
    auto row_plan = plans.plan(static_cast<int>(image.cols()), orders.row_order);
    CMatrix tmp = col_plan->matrix() * image;
    return tmp * row_plan->matrix().transpose();
}

CMatrix ifrft_2d(const CMatrix& image, const OrderPair& orders, const PlanSource& plans) {
    return frft_2d(image, OrderPair{-orders.row_order, -orders.col_order}, plans);
}

}  // namespace frtc
