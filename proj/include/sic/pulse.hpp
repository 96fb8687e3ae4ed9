#pragma once

#include "sic/types.hpp"

namespace sic::pulse {

// Root-raised-cosine shaping filter. Taps are peak-normalized and
// symmetric; two of these back to back give a raised cosine with (near)
// zero ISI at symbol instants.
struct RrcFilter {
    int sps = 4;
    int span = 8;  // symbols of support
    double beta = 0.35;
    std::vector<double> taps;  // length span*sps + 1

    int group_delay() const { return (int(taps.size()) - 1) / 2; }
    // peak of the combined rrc*rrc response; the per-symbol gain seen
    // after matched filtering
    double symbol_gain() const;
};

RrcFilter design_rrc(int sps, int span, double beta);

// zero-stuffing up-sampler: out[n*sps] = symbols[n], everything else 0
CVec upsample(const CVec& symbols, int sps);

// full convolution (length len(x)+len(taps)-1)
CVec fir_filter(const CVec& x, const CVec& taps);
CVec fir_filter(const CVec& x, const std::vector<double>& taps);

// out[n] = x[offset + n*sps], 0 <= offset < sps
CVec decimate(const CVec& x, int sps, int offset);

// upsample + shape in one go
CVec shape(const CVec& symbols, const RrcFilter& f);

}  // namespace sic::pulse
