#include <doctest.h>

#include "frtc/dwt.hpp"
#include "testutil.hpp"

using namespace frtc;
using testutil::random_complex;
using testutil::random_real;

TEST_SUITE_BEGIN("dwt");

TEST_CASE("single 2x2 block") {
    CMatrix x(2, 2);
    x << 1.0, 2.0, 3.0, 4.0;
    const SubbandSet sb = dwt2_haar(x);
    CHECK(sb.ll(0, 0) == Complex(5.0, 0.0));
    CHECK(sb.lh(0, 0) == Complex(-1.0, 0.0));
    CHECK(sb.hl(0, 0) == Complex(-2.0, 0.0));
    CHECK(sb.hh(0, 0) == Complex(0.0, 0.0));

    const CMatrix back = idwt2_haar(sb);
    CHECK((back - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("inverse of the worked subband example") {
    SubbandSet sb;
    sb.ll = CMatrix::Constant(1, 1, 5.0);
    sb.lh = CMatrix::Constant(1, 1, -1.0);
    sb.hl = CMatrix::Constant(1, 1, -2.0);
    sb.hh = CMatrix::Constant(1, 1, 0.0);
    const CMatrix x = idwt2_haar(sb);
    CHECK(x(0, 0) == Complex(1.0, 0.0));
    CHECK(x(0, 1) == Complex(2.0, 0.0));
    CHECK(x(1, 0) == Complex(3.0, 0.0));
    CHECK(x(1, 1) == Complex(4.0, 0.0));
}

TEST_CASE("constant channel has zero detail") {
    const Complex c(7.25, -1.5);
    const SubbandSet sb = dwt2_haar(CMatrix::Constant(6, 8, c));
    CHECK((sb.ll.array() - 2.0 * c).abs().maxCoeff() <= 1e-15);
    CHECK(sb.lh.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sb.hl.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sb.hh.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("all-zero subbands reconstruct the zero matrix") {
    SubbandSet sb{CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), CMatrix::Zero(3, 3),
                  CMatrix::Zero(3, 3)};
    CHECK(idwt2_haar(sb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("perfect reconstruction on random real and complex inputs") {
    for (Index n : {8, 32, 64}) {
        const CMatrix zr = random_real(n, n, 700 + static_cast<std::uint64_t>(n), 100.0)
                               .cast<Complex>();
        CHECK((idwt2_haar(dwt2_haar(zr)) - zr).cwiseAbs().maxCoeff() <= 1e-12);

        const CMatrix zc = random_complex(n, n, 800 + static_cast<std::uint64_t>(n), 100.0);
        CHECK((idwt2_haar(dwt2_haar(zc)) - zc).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // Rectangular input
    const CMatrix zr = random_complex(16, 48, 900, 50.0);
    CHECK((idwt2_haar(dwt2_haar(zr)) - zr).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("energy conservation") {
    for (Index n : {8, 64, 256}) {
        const CMatrix z = random_complex(n, n, 1000 + static_cast<std::uint64_t>(n), 100.0);
        const SubbandSet sb = dwt2_haar(z);
        const double sum =
            sb.ll.squaredNorm() + sb.lh.squaredNorm() + sb.hl.squaredNorm() + sb.hh.squaredNorm();
        CHECK(std::abs(sum - z.squaredNorm()) <= 1e-9 * z.squaredNorm());
    }
}

TEST_CASE("pixel count is conserved") {
    const SubbandSet sb = dwt2_haar(CMatrix::Zero(14, 22));
    const Index subband_pixels = sb.ll.size() + sb.lh.size() + sb.hl.size() + sb.hh.size();
    CHECK(subband_pixels == 14 * 22);
    CHECK(sb.parent_rows() == 14);
    CHECK(sb.parent_cols() == 22);
}

TEST_CASE("both directions are linear") {
    const CMatrix x = random_complex(8, 8, 1100);
    const CMatrix y = random_complex(8, 8, 1101);
    const Complex a(1.5, -0.25);
    const SubbandSet sx = dwt2_haar(x);
    const SubbandSet sy = dwt2_haar(y);
    const SubbandSet sxy = dwt2_haar(a * x + y);
    CHECK((sxy.ll - (a * sx.ll + sy.ll)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((sxy.hh - (a * sx.hh + sy.hh)).cwiseAbs().maxCoeff() <= 1e-12);

    SubbandSet combined;
    combined.ll = a * sx.ll + sy.ll;
    combined.lh = a * sx.lh + sy.lh;
    combined.hl = a * sx.hl + sy.hl;
    combined.hh = a * sx.hh + sy.hh;
    CHECK((idwt2_haar(combined) - (a * x + y)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("odd dimensions are rejected") {
    CHECK_THROWS_AS(dwt2_haar(CMatrix::Zero(7, 8)), DimensionError);
    CHECK_THROWS_AS(dwt2_haar(CMatrix::Zero(8, 7)), DimensionError);
    CHECK_THROWS_AS(dwt2_haar(CMatrix::Zero(1, 1)), DimensionError);
}

TEST_CASE("mismatched subbands are rejected") {
    SubbandSet sb{CMatrix::Zero(4, 4), CMatrix::Zero(4, 4), CMatrix::Zero(4, 4),
                  CMatrix::Zero(4, 3)};
    CHECK_THROWS_AS(idwt2_haar(sb), DimensionError);
}

TEST_SUITE_END();
