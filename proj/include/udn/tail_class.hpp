#pragma once

#include <string>

namespace udn {

// Tail behavior of a CCDF at +infinity. RegularlyVarying(idx) decays like
// x^-idx times a slowly varying factor; RapidlyVarying covers exponential,
// lognormal and Gamma type tails (index -infinity); LighterThanRapid covers
// everything dominated by some rapidly varying envelope, e.g. bounded
// support.
enum class TailKind { RegularlyVarying, RapidlyVarying, LighterThanRapid };

struct TailClass {
    TailKind kind = TailKind::RapidlyVarying;
    double index = 0.0;        // meaningful for RegularlyVarying only; finite, >= 0
    std::string envelope;      // LighterThanRapid: name of a dominating rapid tail

    static TailClass regularly_varying(double idx);
    static TailClass rapidly_varying();
    static TailClass lighter_than_rapid(std::string envelope_name = "exponential");

    bool operator==(const TailClass& other) const {
        return kind == other.kind &&
               (kind != TailKind::RegularlyVarying || index == other.index);
    }
};

std::string to_string(const TailClass& tc);

}  // namespace udn
