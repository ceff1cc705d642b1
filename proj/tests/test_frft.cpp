#include <doctest.h>

#include <cstring>
#include <thread>

#include "frtc/frft.hpp"
#include "testutil.hpp"

using namespace frtc;
using testutil::centered_dft_matrix;
using testutil::centered_parity_matrix;
using testutil::random_complex;
using testutil::random_complex_vector;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

bool bitwise_equal(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_SUITE_BEGIN("frft");

TEST_CASE("order 0 plan is the exact identity") {
    const FrftPlan plan(8, 0.0);
    CHECK(plan.matrix() == CMatrix::Identity(8, 8));
    // Integer multiples of 4 reduce to exactly 0.
    CHECK(FrftPlan(8, 4.0).matrix() == CMatrix::Identity(8, 8));
    CHECK(FrftPlan(8, -8.0).matrix() == CMatrix::Identity(8, 8));
}

TEST_CASE("order 2 plan is the centered parity") {
    const FrftPlan plan(8, 2.0);
    CHECK(max_abs(plan.matrix() - centered_parity_matrix(8)) <= 1e-10);
}

TEST_CASE("order 1 plan matches the directly constructed centered DFT") {
    const FrftPlan plan(16, 1.0);
    CHECK(max_abs(plan.matrix() - centered_dft_matrix(16)) <= 1e-10);
}

TEST_CASE("plan construction rejects bad arguments") {
    CHECK_THROWS_AS(FrftPlan(1, 0.5), InvalidArgument);
    CHECK_THROWS_AS(FrftPlan(0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(FrftPlan(8, std::nan("")), InvalidArgument);
    CHECK_THROWS_AS(FrftPlan(8, std::numeric_limits<double>::infinity()), InvalidArgument);
    CHECK_THROWS_AS(PlanSource{}.plan(1, 0.5), InvalidArgument);
}

TEST_CASE("apply rejects length mismatches") {
    const FrftPlan plan(8, 0.5);
    CHECK_THROWS_AS(plan.apply(CVector::Zero(7)), DimensionError);
}

TEST_CASE("apply at order 0 returns the signal exactly") {
    const FrftPlan plan(16, 0.0);
    const CVector x = random_complex_vector(16, 101);
    CHECK(plan.apply(x) == x);
}

TEST_CASE("forward then inverse order restores the signal") {
    const FrftPlan fwd(32, 0.5);
    const FrftPlan inv(32, -0.5);
    const CVector x = random_complex_vector(32, 102);
    CHECK((inv.apply(fwd.apply(x)) - x).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("sampled Gaussian is a near self-transform at N=64") {
    const int n = 64;
    CVector g(n);
    for (int i = 0; i < n; ++i) {
        const double u = (i - n / 2) / std::sqrt(static_cast<double>(n));
        g(i) = std::exp(-testutil::kPi * u * u);
    }
    const CVector out = FrftPlan(n, 0.5).apply(g);
    CHECK((out - g).norm() / g.norm() <= 1e-3);
}

TEST_CASE("unitarity, additivity, period 4, adjoint inverse across sizes") {
    PlanSource plans;
    for (int n : {4, 8, 16, 64, 128}) {
        CAPTURE(n);
        const CVector x = random_complex_vector(n, 200 + static_cast<std::uint64_t>(n));
        for (double a : {0.1, 0.5, 1.1, 1.9}) {
            CAPTURE(a);
            auto plan = plans.plan(n, a);
            CHECK(max_abs(plan->matrix() * plan->matrix().adjoint() - CMatrix::Identity(n, n)) <=
                  1e-10);
            CHECK(std::abs(plan->apply(x).norm() - x.norm()) <= 1e-10);
            // period 4
            CHECK(max_abs(plans.plan(n, a + 4.0)->matrix() - plan->matrix()) <= 1e-10);
            // inverse is the conjugate transpose
            CHECK(max_abs(plans.plan(n, -a)->matrix() - plan->matrix().adjoint()) <= 1e-10);
        }
        for (double a1 : {0.1, 0.7, 1.9}) {
            for (double a2 : {0.3, 1.3}) {
                const CVector lhs = plans.plan(n, a2)->apply(plans.plan(n, a1)->apply(x));
                const CVector rhs = plans.plan(n, a1 + a2)->apply(x);
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
            }
        }
    }
}

TEST_CASE("linearity") {
    const FrftPlan plan(32, 0.7);
    const CVector x = random_complex_vector(32, 300);
    const CVector y = random_complex_vector(32, 301);
    const Complex a(0.3, -1.2);
    const Complex b(-2.0, 0.4);
    const CVector lhs = plan.apply(a * x + b * y);
    const CVector rhs = a * plan.apply(x) + b * plan.apply(y);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("frft_2d identity, inverse composition and additivity") {
    const CMatrix x = random_complex(12, 20, 400);

    CHECK(frft_2d(x, {0.0, 0.0}) == x);

    const CMatrix enc = frft_2d(x, {0.3, 0.7});
    const CMatrix dec = frft_2d(enc, {-0.3, -0.7});
    CHECK(max_abs(dec - x) <= 1e-9);

    const CMatrix two_step = frft_2d(frft_2d(x, {0.3, 0.9}), {0.8, 0.4});
    const CMatrix one_step = frft_2d(x, {1.1, 1.3});
    CHECK(max_abs(two_step - one_step) <= 1e-9);

    // Frobenius norm preserved
    CHECK(std::abs(enc.norm() - x.norm()) <= 1e-9 * x.norm());
}

TEST_CASE("frft_2d applies the column order down columns and the row order along rows") {
    // A matrix whose columns all equal one profile isolates the column
    // transform: the row transform at order 0 leaves it untouched.
    const int n = 8;
    const CVector profile = random_complex_vector(n, 500);
    CMatrix x(n, n);
    for (int j = 0; j < n; ++j) x.col(j) = profile;
    const CMatrix out = frft_2d(x, {0.0, 0.6});
    const CVector expected = FrftPlan(n, 0.6).apply(profile);
    for (int j = 0; j < n; ++j) {
        CHECK((out.col(j) - expected).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("ifrft_2d is frft_2d with negated orders, bit for bit") {
    const CMatrix x = random_complex(10, 10, 600);
    const CMatrix a = ifrft_2d(x, {0.5, 0.5});
    const CMatrix b = frft_2d(x, {-0.5, -0.5});
    CHECK(bitwise_equal(a, b));

    CHECK(ifrft_2d(x, {0.0, 0.0}) == x);
    CHECK(max_abs(ifrft_2d(frft_2d(x, {0.5, 0.5}), {0.5, 0.5}) - x) <= 1e-9);
}

TEST_CASE("frft_2d rejects degenerate inputs") {
    CHECK_THROWS_AS(frft_2d(CMatrix::Zero(1, 8), {0.5, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(frft_2d(CMatrix::Zero(8, 1), {0.5, 0.5}), InvalidArgument);
}

TEST_CASE("cached and uncached construction agree bit for bit") {
    PlanSource cached(PlanSource::Cache::Shared);
    PlanSource uncached(PlanSource::Cache::None);
    for (double a : {0.35, 1.25}) {
        auto p1 = cached.plan(24, a);
        auto p2 = uncached.plan(24, a);
        CHECK(bitwise_equal(p1->matrix(), p2->matrix()));
    }
}

TEST_CASE("shared cache returns one plan object per key") {
    PlanSource plans;
    auto p1 = plans.plan(16, 0.31);
    auto p2 = plans.plan(16, 0.31);
    CHECK(p1.get() == p2.get());
    // 4.31 reduces mod 4 onto the same quantized key.
    auto p3 = plans.plan(16, 4.31);
    CHECK(p1.get() == p3.get());
}

TEST_CASE("concurrent uncached builds of one key are bit-identical") {
    constexpr int kThreads = 4;
    std::array<CMatrix, kThreads> results;
    {
        std::array<std::thread, kThreads> workers;
        for (int t = 0; t < kThreads; ++t) {
            workers[t] = std::thread([&results, t] {
                results[t] = PlanSource(PlanSource::Cache::None).plan(20, 0.77)->matrix();
            });
        }
        for (auto& w : workers) w.join();
    }
    for (int t = 1; t < kThreads; ++t) {
        CHECK(bitwise_equal(results[0], results[t]));
    }
}

TEST_CASE("reduce_order maps into [0,4)") {
    CHECK(reduce_order(0.0) == 0.0);
    CHECK(reduce_order(4.0) == 0.0);
    CHECK(reduce_order(-0.5) == 3.5);
    CHECK(reduce_order(5.25) == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_SUITE_END();
