#pragma once

#include <memory>
#include <utility>

#include "frtc/types.hpp"

namespace frtc {

/// Fractional orders for a separable 2-D transform: `row_order` is applied
/// along each row, `col_order` along each column.
struct OrderPair {
    double row_order = 0.0;
    double col_order = 0.0;
};

/// Precomputed discrete fractional Fourier transform matrix for one
/// (size, order) pair.
///
/// Construction: F^a = V diag(exp(-i pi/2 (a k mod 4))) V^T, where the
/// columns of the real orthogonal V are discrete Hermite-Gauss vectors,
/// i.e. an eigenbasis of the centered unitary DFT, and k runs over the
/// Hermite index set {0..N-2} plus N-1 (N odd) or N (N even). V is obtained
/// by diagonalizing the centered Dickinson-Steiglitz commuting matrix on
/// its even/odd parity blocks (the parity split resolves the degenerate
/// eigenvalues that a plain sort cannot), then, inside each of the four DFT
/// eigenspaces, re-orthonormalizing the projections of sampled continuous
/// Hermite-Gauss functions so that low-index eigenvectors match their
/// continuum counterparts to near machine precision. Every column is an
/// exact eigenvector of the centered DFT, so F^0 = I, F^1 = DFT, F^2 =
/// parity, order additivity, period 4 and unitarity all hold to roundoff.
///
/// The order is reduced mod 4 into [0, 4) before construction; a reduced
/// order of exactly 0 yields the identity matrix exactly.
///
/// Plans are immutable and safe to share across threads. Construction is
/// deterministic: the same (n, order) always yields bit-identical matrices.
class FrftPlan {
public:
    /// Throws InvalidArgument for n < 2 or non-finite order.
    FrftPlan(int n, double order);

    int size() const noexcept { return n_; }
    /// The reduced order in [0, 4) actually used.
    double order() const noexcept { return order_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

    /// Transform a length-N signal. Throws DimensionError on length mismatch.
    CVector apply(const CVector& signal) const;

private:
    friend class PlanSource;
    FrftPlan(int n, double reduced_order, CMatrix matrix)
        : n_(n), order_(reduced_order), matrix_(std::move(matrix)) {}

    int n_;
    double order_;
    CMatrix matrix_;
};

/// Hands out plans, either through a process-wide synchronized memo
/// (keyed on (N, order mod 4 quantized to 12 decimal digits)) or by
/// building from scratch on every call. The uncached mode exists so the
/// benchmark harness can charge plan construction to every measured run.
class PlanSource {
public:
    enum class Cache { Shared, None };

    explicit PlanSource(Cache mode = Cache::Shared) : mode_(mode) {}

    std::shared_ptr<const FrftPlan> plan(int n, double order) const;
    bool caching() const noexcept { return mode_ == Cache::Shared; }

    /// Drops all memoized plans and basis factorizations.
    static void clear_shared_cache();

private:
    Cache mode_;
};

/// Reduce a transform order mod 4 into [0, 4).
double reduce_order(double order);

/// Separable 2-D FRFT: order `col_order` down each column, then
/// `row_order` along each row. Requires at least 2x2.
CMatrix frft_2d(const CMatrix& image, const OrderPair& orders,
                const PlanSource& plans = PlanSource{});

/// frft_2d with both orders negated.
CMatrix ifrft_2d(const CMatrix& image, const OrderPair& orders,
                 const PlanSource& plans = PlanSource{});

}  // namespace frtc
