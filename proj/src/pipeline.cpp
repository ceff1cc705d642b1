#include "frtc/pipeline.hpp"

#include <cmath>
#include <future>

#include "frtc/dwt.hpp"

namespace frtc {

std::string to_string(Algorithm alg) {
    switch (alg) {
        case Algorithm::A31: return "A31";
        case Algorithm::A32: return "A32";
        case Algorithm::A33: return "A33";
        case Algorithm::A41: return "A41";
        case Algorithm::A42: return "A42";
        case Algorithm::A43: return "A43";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
    if (name == "A31") return Algorithm::A31;
    if (name == "A32") return Algorithm::A32;
    if (name == "A33") return Algorithm::A33;
    if (name == "A41") return Algorithm::A41;
    if (name == "A42") return Algorithm::A42;
    if (name == "A43") return Algorithm::A43;
    return std::nullopt;
}

std::optional<Algorithm> algorithm_from_code(std::uint8_t code) {
    switch (code) {
        case 0x31: case 0x32: case 0x33: case 0x41: case 0x42: case 0x43:
            return static_cast<Algorithm>(code);
        default:
            return std::nullopt;
    }
}

bool is_dwt_variant(Algorithm alg) {
    return static_cast<std::uint8_t>(alg) >= 0x41;
}

MaskKind mask_kind_for(Algorithm alg) {
    switch (alg) {
        case Algorithm::A31:
        case Algorithm::A41:
            return MaskKind::UniformRandom;
        case Algorithm::A32:
        case Algorithm::A42:
            return MaskKind::Logistic;
        case Algorithm::A33:
        case Algorithm::A43:
            return MaskKind::KaplanYorke;
    }
    return MaskKind::UniformRandom;
}

void EncryptionKey::validate() const {
    const MaskKind expected = mask_kind_for(algorithm);
    if (mask1.kind != expected || mask2.kind != expected) {
        throw InvalidArgument("mask kinds are inconsistent with algorithm " + to_string(algorithm) +
                              " (expected " + frtc::to_string(expected) + ")");
    }
    for (double order : {alpha, beta, gamma, delta}) {
        if (!std::isfinite(order)) {
            throw InvalidArgument("fractional orders must be finite");
        }
    }
    mask1.validate();
    mask2.validate();
    if (mask1 == mask2) {
        throw InvalidArgument("mask1 and mask2 must differ (use different seed values)");
    }
}

EncryptionKey EncryptionKey::with_orders(double a, double b, double g, double d) const {
    EncryptionKey key = *this;
    key.alpha = a;
    key.beta = b;
    key.gamma = g;
    key.delta = d;
    return key;
}

std::pair<MaskSpec, MaskSpec> default_mask_pair(Algorithm alg) {
    MaskSpec m1;
    MaskSpec m2;
    m1.kind = m2.kind = mask_kind_for(alg);
    switch (m1.kind) {
        case MaskKind::UniformRandom:
            m1.seed = 1;
            m2.seed = 2;
            break;
        case MaskKind::Logistic:
            m1.p = m2.p = 3.99;
            m1.x0 = 0.3;
            m2.x0 = 0.7;
            break;
        case MaskKind::Tent:
            m1.a = m2.a = 1.99;
            m1.x0 = 0.3;
            m2.x0 = 0.7;
            break;
        case MaskKind::KaplanYorke:
            m1.a = m2.a = 1.99;
            m1.b = m2.b = 0.5;
            m1.x0 = 0.3;
            m1.y0 = 0.3;
            m2.x0 = 0.7;
            m2.y0 = 0.6;
            break;
    }
    return {m1, m2};
}

ComplexChannels to_complex(const PlainImage& image) {
    ComplexChannels out;
    for (int i = 0; i < 3; ++i) {
        out[i] = image.channels[i].cast<Complex>();
    }
    return out;
}

PlainImage to_plain(const ComplexChannels& channels) {
    PlainImage out;
    for (int i = 0; i < 3; ++i) {
        out.channels[i] = channels[i].real();
    }
    return out;
}

namespace {

void check_channel_dims(const ComplexChannels& chans) {
    for (int i = 1; i < 3; ++i) {
        if (chans[i].rows() != chans[0].rows() || chans[i].cols() != chans[0].cols()) {
            throw DimensionError("channel dimensions disagree");
        }
    }
}

void check_image_for_key(Index rows, Index cols, const EncryptionKey& key) {
    if (is_dwt_variant(key.algorithm)) {
        if (rows % 2 != 0 || cols % 2 != 0) {
            throw DimensionError(to_string(key.algorithm) +
                                 " requires even image dimensions (odd-dimension input)");
        }
        if (rows < 4 || cols < 4) {
            throw DimensionError(to_string(key.algorithm) +
                                 " requires at least 4x4 input (LL subband must be 2x2 or larger)");
        }
    } else if (rows < 2 || cols < 2) {
        throw DimensionError("baseline algorithms require at least 2x2 input");
    }
}

void check_mask_dims(const PhaseMask& mask, Index rows, Index cols) {
    if (mask.values.rows() != rows || mask.values.cols() != cols) {
        throw DimensionError("mask dimensions do not match the data they multiply");
    }
}

template <typename Fn>
ComplexChannels per_channel(const ComplexChannels& in, bool parallel, Fn fn) {
    ComplexChannels out;
    if (parallel) {
        std::array<std::future<CMatrix>, 3> futures;
        for (int i = 0; i < 3; ++i) {
            futures[i] = std::async(std::launch::async, [&, i] { return fn(in[i]); });
        }
        for (int i = 0; i < 3; ++i) {
            out[i] = futures[i].get();
        }
    } else {
        for (int i = 0; i < 3; ++i) {
            out[i] = fn(in[i]);
        }
    }
    return out;
}

}  // namespace

std::pair<PhaseMask, PhaseMask> masks_for(const EncryptionKey& key, Index rows, Index cols) {
    Index mr = rows;
    Index mc = cols;
    if (is_dwt_variant(key.algorithm)) {
        mr /= 2;
        mc /= 2;
    }
    return {make_mask(key.mask1, mr, mc), make_mask(key.mask2, mr, mc)};
}

CMatrix encrypt_channel_baseline(const CMatrix& channel, const PhaseMask& m1,
                                 const PhaseMask& m2, const EncryptionKey& key,
                                 const PlanSource& plans) {
    check_mask_dims(m1, channel.rows(), channel.cols());
    check_mask_dims(m2, channel.rows(), channel.cols());
    CMatrix stage = frft_2d(channel.cwiseProduct(m1.values), OrderPair{key.alpha, key.beta}, plans);
    return frft_2d(stage.cwiseProduct(m2.values), OrderPair{key.gamma, key.delta}, plans);
}

CMatrix decrypt_channel_baseline(const CMatrix& channel, const PhaseMask& m1,
                                 const PhaseMask& m2, const EncryptionKey& key,
                                 const PlanSource& plans) {
    check_mask_dims(m1, channel.rows(), channel.cols());
    check_mask_dims(m2, channel.rows(), channel.cols());
    CMatrix stage = frft_2d(channel, OrderPair{-key.gamma, -key.delta}, plans);
    stage = frft_2d(stage.cwiseProduct(m2.values.conjugate()), OrderPair{-key.alpha, -key.beta}, plans);
    return stage.cwiseProduct(m1.values.conjugate());
}

CMatrix encrypt_channel_dwt(const CMatrix& channel, const PhaseMask& m1,
                            const PhaseMask& m2, const EncryptionKey& key,
                            const PlanSource& plans) {
    SubbandSet sb = dwt2_haar(channel);
    check_mask_dims(m1, sb.ll.rows(), sb.ll.cols());
    check_mask_dims(m2, sb.ll.rows(), sb.ll.cols());
    CMatrix stage = frft_2d(sb.ll.cwiseProduct(m1.values), OrderPair{key.gamma, key.delta}, plans);
    sb.ll = frft_2d(stage.cwiseProduct(m2.values), OrderPair{key.alpha, key.beta}, plans);
    return idwt2_haar(sb);
}

CMatrix decrypt_channel_dwt(const CMatrix& channel, const PhaseMask& m1,
                            const PhaseMask& m2, const EncryptionKey& key,
                            const PlanSource& plans) {
    SubbandSet sb = dwt2_haar(channel);
    check_mask_dims(m1, sb.ll.rows(), sb.ll.cols());
    check_mask_dims(m2, sb.ll.rows(), sb.ll.cols());
    CMatrix stage = frft_2d(sb.ll, OrderPair{-key.alpha, -key.beta}, plans);
    stage = frft_2d(stage.cwiseProduct(m2.values.conjugate()), OrderPair{-key.gamma, -key.delta}, plans);
    sb.ll = stage.cwiseProduct(m1.values.conjugate());
    return idwt2_haar(sb);
}

EncryptedImage encrypt(const PlainImage& image, const EncryptionKey& key,
                       const PipelineOptions& options) {
    key.validate();
    for (const auto& ch : image.channels) {
        if (!ch.allFinite()) {
            throw InvalidArgument("image channels must hold finite values");
        }
    }
    const ComplexChannels in = to_complex(image);
    check_channel_dims(in);
    check_image_for_key(image.rows(), image.cols(), key);
    auto [m1, m2] = masks_for(key, image.rows(), image.cols());

    EncryptedImage out;
    out.algorithm = key.algorithm;
    const PlanSource& plans = options.plans;
    if (is_dwt_variant(key.algorithm)) {
        out.channels = per_channel(in, options.parallel_channels, [&](const CMatrix& ch) {
            return encrypt_channel_dwt(ch, m1, m2, key, plans);
        });
    } else {
        out.channels = per_channel(in, options.parallel_channels, [&](const CMatrix& ch) {
            return encrypt_channel_baseline(ch, m1, m2, key, plans);
        });
    }
    return out;
}

ComplexChannels decrypt(const EncryptedImage& encrypted, const EncryptionKey& key,
                        const PipelineOptions& options) {
    key.validate();
    if (encrypted.algorithm != key.algorithm) {
        throw InvalidArgument("container was produced by " + to_string(encrypted.algorithm) +
                              " but the key is for " + to_string(key.algorithm));
    }
    check_channel_dims(encrypted.channels);
    check_image_for_key(encrypted.rows(), encrypted.cols(), key);
    auto [m1, m2] = masks_for(key, encrypted.rows(), encrypted.cols());

    const PlanSource& plans = options.plans;
    if (is_dwt_variant(key.algorithm)) {
        return per_channel(encrypted.channels, options.parallel_channels, [&](const CMatrix& ch) {
            return decrypt_channel_dwt(ch, m1, m2, key, plans);
        });
    }
    return per_channel(encrypted.channels, options.parallel_channels, [&](const CMatrix& ch) {
        return decrypt_channel_baseline(ch, m1, m2, key, plans);
    });
}

}  // namespace frtc
