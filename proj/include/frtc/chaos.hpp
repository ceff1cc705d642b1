#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frtc/types.hpp"

namespace frtc {

enum class MaskKind {
    UniformRandom,
    Logistic,
    Tent,
    KaplanYorke,
};

std::string to_string(MaskKind kind);
std::optional<MaskKind> mask_kind_from_string(std::string_view name);

/// Generator parameters for one phase mask. Which fields are meaningful
/// depends on `kind`:
///   logistic:     p, x0         with 0 < p <= 4, 0 <= x0 <= 1
///   tent:         a, x0         with 0 < a <= 2, 0 <= x0 <= 1
///   kaplan-yorke: a, b, x0, y0  with 0 <= a <= 2, 0 <= b < 1
///   uniform:      seed
struct MaskSpec {
    MaskKind kind = MaskKind::UniformRandom;
    double p = 3.99;
    double a = 1.99;
    double b = 0.5;
    double x0 = 0.3;
    double y0 = 0.3;
    std::uint64_t seed = 0;
    std::int64_t burn_in = 1000;

    /// Throws InvalidArgument naming the violated bound.
    void validate() const;

    friend bool operator==(const MaskSpec&, const MaskSpec&) = default;
};

/// Unit-modulus complex matrix. Every entry has |value| == 1 up to rounding.
struct PhaseMask {
    CMatrix values;
};

/// xoshiro256** (Blackman & Vigna), state seeded with four successive
/// splitmix64 outputs. This exact recurrence is part of the on-disk key
/// contract: a key with a given seed must produce the same mask everywhere.
///
///   splitmix64:  state += 0x9E3779B97F4A7C15
///                z = state
///                z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///                z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///                output = z ^ (z >> 31)
///
///   xoshiro256** next():
///                result = rotl64(s1 * 5, 7) * 9
///                t = s1 << 17
///                s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t
///                s3 = rotl64(s3, 45)
///
/// Reference outputs, seed 0: 0x99EC5F36CB75F2B4, 0xBF6E1F784956452A,
/// 0x1A5F849D4933E6E0, 0x6AA594F1262D2D2C.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double next_double();

private:
    std::uint64_t s_[4];
};

/// Successive logistic-map iterates x_{n+1} = p x_n (1 - x_n), seed excluded.
std::vector<double> logistic_iterate(double p, double x0, std::size_t n);

/// Tent-map iterates; branches on the current iterate, low branch at x == 0.5.
std::vector<double> tent_iterate(double a, double x0, std::size_t n);

/// Kaplan-Yorke iterates x_{n+1} = a x_n mod 1, y_{n+1} = b y_n + cos(4 pi x_n).
std::pair<std::vector<double>, std::vector<double>>
ky_iterate(double a, double b, double x0, double y0, std::size_t n);

/// Chaotic map S in [0,1], filled row-major from the post-burn-in iterates.
/// Logistic/tent use the x sequence directly; Kaplan-Yorke uses the y
/// sequence min-max normalized over the generated block (throws
/// InvalidArgument on a flat block). Requires a chaotic `kind`.
RMatrix gen_chaotic_map(const MaskSpec& spec, Index rows, Index cols);

/// phi = exp(i pi/2 S), entrywise.
PhaseMask crpm(const RMatrix& s);

/// exp(i 2 pi u) with u drawn row-major from Xoshiro256ss(seed).
PhaseMask uniform_rpm(std::uint64_t seed, Index rows, Index cols);

PhaseMask conj_mask(const PhaseMask& mask);

/// Dispatch on spec.kind: uniform_rpm or crpm(gen_chaotic_map(...)).
PhaseMask make_mask(const MaskSpec& spec, Index rows, Index cols);

/// The real field behind a mask: S for chaotic kinds, the uniform draws u
/// for uniform-random. Used by the mask-dump CLI.
RMatrix mask_real_field(const MaskSpec& spec, Index rows, Index cols);

}  // namespace frtc
