#include <doctest.h>

#include "frtc/dwt.hpp"
#include "frtc/metrics.hpp"
#include "frtc/pipeline.hpp"
#include "testutil.hpp"

using namespace frtc;
using testutil::synthetic_image;
using testutil::test_key;

namespace {

const Algorithm kAll[] = {Algorithm::A31, Algorithm::A32, Algorithm::A33,
                          Algorithm::A41, Algorithm::A42, Algorithm::A43};

PhaseMask ones_mask(Index rows, Index cols) {
    PhaseMask m;
    m.values = CMatrix::Constant(rows, cols, Complex(1.0, 0.0));
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("algorithm names and codes round-trip") {
    for (Algorithm alg : kAll) {
        CHECK(algorithm_from_string(to_string(alg)) == alg);
        CHECK(algorithm_from_code(static_cast<std::uint8_t>(alg)) == alg);
    }
    CHECK(!algorithm_from_string("A99").has_value());
    CHECK(!algorithm_from_code(0x30).has_value());
    CHECK(is_dwt_variant(Algorithm::A41));
    CHECK(!is_dwt_variant(Algorithm::A33));
    CHECK(mask_kind_for(Algorithm::A42) == MaskKind::Logistic);
    CHECK(mask_kind_for(Algorithm::A33) == MaskKind::KaplanYorke);
}

TEST_CASE("key validation") {
    EncryptionKey key = test_key(Algorithm::A32);
    CHECK_NOTHROW(key.validate());

    SUBCASE("mask kind inconsistent with algorithm") {
        key.mask1.kind = MaskKind::KaplanYorke;
        CHECK_THROWS_AS(key.validate(), InvalidArgument);
    }
    SUBCASE("identical masks are rejected") {
        key.mask2 = key.mask1;
        CHECK_THROWS_AS(key.validate(), InvalidArgument);
    }
    SUBCASE("non-finite order") {
        key.alpha = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(key.validate(), InvalidArgument);
    }
    SUBCASE("out-of-range chaos parameter") {
        key.mask1.p = 4.5;
        CHECK_THROWS_AS(key.validate(), InvalidArgument);
    }
}

TEST_CASE("baseline with zero orders and all-ones masks is the identity") {
    const PlainImage img = synthetic_image(8);
    const ComplexChannels chans = to_complex(img);
    EncryptionKey key = test_key(Algorithm::A31).with_orders(0.0, 0.0, 0.0, 0.0);
    const PhaseMask ones = ones_mask(8, 8);
    PlanSource plans;
    for (int i = 0; i < 3; ++i) {
        const CMatrix g = encrypt_channel_baseline(chans[i], ones, ones, key, plans);
        CHECK((g - chans[i]).cwiseAbs().maxCoeff() == 0.0);
        CHECK(g.imag().cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("dwt variant with zero orders and all-ones masks is the identity") {
    const PlainImage img = synthetic_image(8);
    const ComplexChannels chans = to_complex(img);
    EncryptionKey key = test_key(Algorithm::A41).with_orders(0.0, 0.0, 0.0, 0.0);
    const PhaseMask ones = ones_mask(4, 4);
    PlanSource plans;
    const CMatrix g = encrypt_channel_dwt(chans[0], ones, ones, key, plans);
    CHECK((g - chans[0]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("round trip reaches machine precision for every algorithm") {
    const PlainImage img = synthetic_image(32);
    for (Algorithm alg : kAll) {
        CAPTURE(to_string(alg));
        const EncryptionKey key = test_key(alg);
        const EncryptedImage enc = encrypt(img, key);
        CHECK(enc.algorithm == alg);
        const ComplexChannels dec = decrypt(enc, key);
        const MseTriple mse = mse_channels(img, dec);
        CHECK(mse.max_channel() <= 1e-18);
    }
}

TEST_CASE("baseline encryption preserves the Frobenius norm per channel") {
    const PlainImage img = synthetic_image(32);
    const EncryptionKey key = test_key(Algorithm::A32);
    const EncryptedImage enc = encrypt(img, key);
    for (int i = 0; i < 3; ++i) {
        const double before = img.channels[i].norm();
        const double after = enc.channels[i].norm();
        CHECK(std::abs(after - before) <= 1e-9 * before);
    }
}

TEST_CASE("encrypted channels decorrelate from the plain image") {
    const PlainImage img = synthetic_image(64);
    const EncryptionKey key = test_key(Algorithm::A41);
    const EncryptedImage enc = encrypt(img, key);
    const CMatrix plain = img.channels[0].cast<Complex>();
    const double rel = (enc.channels[0] - plain).norm() / plain.norm();
    CHECK(rel > 0.5);
}

TEST_CASE("dwt variants pass detail subbands through untouched") {
    const PlainImage img = synthetic_image(32);
    const EncryptionKey key = test_key(Algorithm::A42);
    const EncryptedImage enc = encrypt(img, key);
    for (int i = 0; i < 3; ++i) {
        const SubbandSet plain_sb = dwt2_haar(img.channels[i].cast<Complex>());
        const SubbandSet enc_sb = dwt2_haar(enc.channels[i]);
        CHECK((enc_sb.lh - plain_sb.lh).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((enc_sb.hl - plain_sb.hl).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((enc_sb.hh - plain_sb.hh).cwiseAbs().maxCoeff() <= 1e-12);
        // And the LL subband does not leak through.
        CHECK((enc_sb.ll - plain_sb.ll).cwiseAbs().maxCoeff() > 1.0);
    }
}

TEST_CASE("wrong orders leave a scrambled image") {
    const PlainImage img = synthetic_image(64);
    for (Algorithm alg : {Algorithm::A31, Algorithm::A42}) {
        CAPTURE(to_string(alg));
        const EncryptionKey key = test_key(alg);
        const EncryptedImage enc = encrypt(img, key);
        const MseTriple mse = mse_channels(img, decrypt(enc, key.with_orders(0.4, 0.4, 0.4, 0.4)));
        CHECK(mse.r > 1e3);
        CHECK(mse.g > 1e3);
        CHECK(mse.b > 1e3);
    }
}

TEST_CASE("wrong mask seed leaves a scrambled image") {
    const PlainImage img = synthetic_image(64);
    const EncryptionKey key = test_key(Algorithm::A32);
    const EncryptedImage enc = encrypt(img, key);
    EncryptionKey wrong = key;
    wrong.mask1.x0 = key.mask1.x0 + 1e-9;
    const MseTriple mse = mse_channels(img, decrypt(enc, wrong));
    CHECK(mse.r > 1e3);
    CHECK(mse.g > 1e3);
    CHECK(mse.b > 1e3);
}

TEST_CASE("decryption orders shifted by 4 give the same result") {
    const PlainImage img = synthetic_image(16);
    const EncryptionKey key = test_key(Algorithm::A43);
    const EncryptedImage enc = encrypt(img, key);
    const ComplexChannels d1 = decrypt(enc, key);
    const ComplexChannels d2 =
        decrypt(enc, key.with_orders(key.alpha + 4.0, key.beta, key.gamma, key.delta));
    for (int i = 0; i < 3; ++i) {
        CHECK((d1[i] - d2[i]).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("channels are processed independently") {
    const PlainImage img = synthetic_image(16);
    PlainImage red_only;
    red_only.channels = {img.channels[0], img.channels[0], img.channels[0]};
    const EncryptionKey key = test_key(Algorithm::A31);
    const EncryptedImage a = encrypt(img, key);
    const EncryptedImage b = encrypt(red_only, key);
    CHECK(a.channels[0] == b.channels[0]);
}

TEST_CASE("parallel and serial channel processing agree bit for bit") {
    const PlainImage img = synthetic_image(16);
    const EncryptionKey key = test_key(Algorithm::A42);
    PipelineOptions serial;
    serial.parallel_channels = false;
    PipelineOptions parallel;
    parallel.parallel_channels = true;
    const EncryptedImage a = encrypt(img, key, serial);
    const EncryptedImage b = encrypt(img, key, parallel);
    for (int i = 0; i < 3; ++i) {
        CHECK(a.channels[i] == b.channels[i]);
    }
}

TEST_CASE("dimension rules") {
    const EncryptionKey base = test_key(Algorithm::A31);
    const EncryptionKey dwt = test_key(Algorithm::A41);

    // Odd dimensions work for the baseline but are rejected by DWT variants.
    PlainImage odd;
    for (auto& ch : odd.channels) ch = RMatrix::Constant(7, 8, 5.0);
    CHECK_THROWS_AS(encrypt(odd, dwt), DimensionError);
    CHECK_NOTHROW(encrypt(odd, base));

    PlainImage tiny;
    for (auto& ch : tiny.channels) ch = RMatrix::Constant(2, 2, 1.0);
    CHECK_NOTHROW(encrypt(tiny, base));
    CHECK_THROWS_AS(encrypt(tiny, dwt), DimensionError);

    PlainImage ragged;
    ragged.channels = {RMatrix::Zero(4, 4), RMatrix::Zero(4, 4), RMatrix::Zero(4, 6)};
    CHECK_THROWS_AS(encrypt(ragged, base), DimensionError);

    PlainImage poisoned = synthetic_image(4);
    poisoned.channels[1](1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(encrypt(poisoned, base), InvalidArgument);
}

TEST_CASE("decrypt rejects a key for a different algorithm") {
    const PlainImage img = synthetic_image(16);
    const EncryptionKey key = test_key(Algorithm::A31);
    const EncryptedImage enc = encrypt(img, key);
    EncryptionKey other = test_key(Algorithm::A41);
    CHECK_THROWS_AS(decrypt(enc, other), InvalidArgument);
}

TEST_CASE("masks_for sizes masks by algorithm family") {
    const EncryptionKey base = test_key(Algorithm::A33);
    const auto [b1, b2] = masks_for(base, 32, 48);
    CHECK(b1.values.rows() == 32);
    CHECK(b1.values.cols() == 48);
    CHECK(b2.values.rows() == 32);

    const EncryptionKey dwt = test_key(Algorithm::A43);
    const auto [d1, d2] = masks_for(dwt, 32, 48);
    CHECK(d1.values.rows() == 16);
    CHECK(d1.values.cols() == 24);
    CHECK(d2.values.cols() == 24);
}

TEST_CASE("default mask pairs differ and validate for every algorithm") {
    for (Algorithm alg : kAll) {
        const auto [m1, m2] = default_mask_pair(alg);
        CHECK(m1.kind == mask_kind_for(alg));
        CHECK(m2.kind == mask_kind_for(alg));
        CHECK(!(m1 == m2));
        EncryptionKey key;
        key.algorithm = alg;
        key.mask1 = m1;
        key.mask2 = m2;
        CHECK_NOTHROW(key.validate());
    }
}

TEST_SUITE_END();
