#include "frtc/chaos.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace frtc {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw InvalidArgument(std::string(name) + " must be finite");
    }
}

}  // namespace

std::string to_string(MaskKind kind) {
    switch (kind) {
        case MaskKind::UniformRandom: return "uniform-random";
        case MaskKind::Logistic: return "logistic";
        case MaskKind::Tent: return "tent";
        case MaskKind::KaplanYorke: return "kaplan-yorke";
    }
    return "unknown";
}

std::optional<MaskKind> mask_kind_from_string(std::string_view name) {
    if (name == "uniform-random") return MaskKind::UniformRandom;
    if (name == "logistic") return MaskKind::Logistic;
    if (name == "tent") return MaskKind::Tent;
    if (name == "kaplan-yorke") return MaskKind::KaplanYorke;
    return std::nullopt;
}

void MaskSpec::validate() const {
    if (burn_in < 0) {
        throw InvalidArgument("burn_in must be >= 0");
    }
    switch (kind) {
        case MaskKind::UniformRandom:
            break;
        case MaskKind::Logistic:
            require_finite(p, "logistic p");
            require_finite(x0, "logistic x0");
            if (!(p > 0.0 && p <= 4.0)) {
                throw InvalidArgument("logistic parameter p out of range: need 0 < p <= 4");
            }
            if (!(x0 >= 0.0 && x0 <= 1.0)) {
                throw InvalidArgument("logistic seed x0 out of range: need 0 <= x0 <= 1");
            }
            break;
        case MaskKind::Tent:
            require_finite(a, "tent a");
            require_finite(x0, "tent x0");
            if (!(a > 0.0 && a <= 2.0)) {
                throw InvalidArgument("tent parameter a out of range: need 0 < a <= 2");
            }
            if (!(x0 >= 0.0 && x0 <= 1.0)) {
                throw InvalidArgument("tent seed x0 out of range: need 0 <= x0 <= 1");
            }
            break;
        case MaskKind::KaplanYorke:
            require_finite(a, "kaplan-yorke a");
            require_finite(b, "kaplan-yorke b");
            require_finite(x0, "kaplan-yorke x0");
            require_finite(y0, "kaplan-yorke y0");
            if (!(a >= 0.0 && a <= 2.0)) {
                throw InvalidArgument("kaplan-yorke parameter a out of range: need 0 <= a <= 2");
            }
            if (!(b >= 0.0 && b < 1.0)) {
                throw InvalidArgument("kaplan-yorke parameter b out of range: need 0 <= b < 1");
            }
            break;
    }
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
        word = splitmix64_next(sm);
    }
}

std::uint64_t Xoshiro256ss::next() {
    const std::uint64_t result = rotl64(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl64(s_[3], 45);
    return result;
}

double Xoshiro256ss::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<double> logistic_iterate(double p, double x0, std::size_t n) {
    MaskSpec spec;
    spec.kind = MaskKind::Logistic;
    spec.p = p;
    spec.x0 = x0;
    spec.validate();
    std::vector<double> out(n);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        x = p * x * (1.0 - x);
        out[i] = x;
    }
    return out;
}

std::vector<double> tent_iterate(double a, double x0, std::size_t n) {
    MaskSpec spec;
    spec.kind = MaskKind::Tent;
    spec.a = a;
    spec.x0 = x0;
    spec.validate();
    std::vector<double> out(n);
    double x = x0;
    for (std::size_t i = 0; i < n; ++i) {
        x = (x <= 0.5) ? a * x : a * (1.0 - x);
        out[i] = x;
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>>
ky_iterate(double a, double b, double x0, double y0, std::size_t n) {
    MaskSpec spec;
    spec.kind = MaskKind::KaplanYorke;
    spec.a = a;
    spec.b = b;
    spec.x0 = x0;
    spec.y0 = y0;
    spec.validate();
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    double x = x0;
    double y = y0;
    for (std::size_t i = 0; i < n; ++i) {
        double xn = std::fmod(a * x, 1.0);
        if (xn < 0.0) xn += 1.0;
        const double yn = b * y + std::cos(4.0 * kPi * x);
        x = xn;
        y = yn;
        xs[i] = x;
        ys[i] = y;
    }
    return {std::move(xs), std::move(ys)};
}

RMatrix gen_chaotic_map(const MaskSpec& spec, Index rows, Index cols) {
    spec.validate();
    if (rows < 1 || cols < 1) {
        throw InvalidArgument("chaotic map dimensions must be positive");
    }
    const std::size_t count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    const std::size_t burn = static_cast<std::size_t>(spec.burn_in);
    std::vector<double> seq;
    switch (spec.kind) {
        case MaskKind::Logistic:
            seq = logistic_iterate(spec.p, spec.x0, burn + count);
            break;
        case MaskKind::Tent:
            seq = tent_iterate(spec.a, spec.x0, burn + count);
            break;
        case MaskKind::KaplanYorke: {
            auto [xs, ys] = ky_iterate(spec.a, spec.b, spec.x0, spec.y0, burn + count);
            seq = std::move(ys);
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (std::size_t i = burn; i < seq.size(); ++i) {
                lo = std::min(lo, seq[i]);
                hi = std::max(hi, seq[i]);
            }
            if (!(hi > lo)) {
                throw InvalidArgument("kaplan-yorke produced a flat sequence; cannot normalize");
            }
            for (std::size_t i = burn; i < seq.size(); ++i) {
                seq[i] = (seq[i] - lo) / (hi - lo);
            }
            break;
        }
        case MaskKind::UniformRandom:
            throw InvalidArgument("gen_chaotic_map requires a chaotic mask kind");
    }
    RMatrix s(rows, cols);
    std::size_t idx = burn;
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            s(r, c) = seq[idx++];
        }
    }
    return s;
}

PhaseMask crpm(const RMatrix& s) {
    if (!s.allFinite()) {
        throw InvalidArgument("chaotic map contains non-finite values");
    }
    PhaseMask mask;
    mask.values = CMatrix(s.rows(), s.cols());
    for (Index r = 0; r < s.rows(); ++r) {
        for (Index c = 0; c < s.cols(); ++c) {
            const double phase = 0.5 * kPi * s(r, c);
            mask.values(r, c) = Complex(std::cos(phase), std::sin(phase));
        }
    }
    return mask;
}

PhaseMask uniform_rpm(std::uint64_t seed, Index rows, Index cols) {
    if (rows < 1 || cols < 1) {
        throw InvalidArgument("mask dimensions must be positive");
    }
    Xoshiro256ss rng(seed);
    PhaseMask mask;
    mask.values = CMatrix(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            const double phase = 2.0 * kPi * rng.next_double();
            mask.values(r, c) = Complex(std::cos(phase), std::sin(phase));
        }
    }
    return mask;
}

PhaseMask conj_mask(const PhaseMask& mask) {
    PhaseMask out;
    out.values = mask.values.conjugate();
    return out;
}

PhaseMask make_mask(const MaskSpec& spec, Index rows, Index cols) {
    if (spec.kind == MaskKind::UniformRandom) {
        return uniform_rpm(spec.seed, rows, cols);
    }
    return crpm(gen_chaotic_map(spec, rows, cols));
}

RMatrix mask_real_field(const MaskSpec& spec, Index rows, Index cols) {
    if (spec.kind != MaskKind::UniformRandom) {
        return gen_chaotic_map(spec, rows, cols);
    }
    if (rows < 1 || cols < 1) {
        throw InvalidArgument("mask dimensions must be positive");
    }
    Xoshiro256ss rng(spec.seed);
    RMatrix u(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            u(r, c) = rng.next_double();
        }
    }
    return u;
}

}  // namespace frtc
