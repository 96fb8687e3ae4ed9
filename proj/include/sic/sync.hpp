#pragma once

#include "sic/pulse.hpp"
#include "sic/types.hpp"

namespace sic::sync {

// Barker-13 frame preamble, BPSK-mapped and pulse-shaped at the frame's
// sample rate so correlation runs directly on channel-rate samples.
struct Preamble {
    std::vector<int> code;  // +/-1, autocorrelation peak 13, sidelobes <= 1
    CVec samples;           // shaped at sps
};

Preamble make_preamble(const pulse::RrcFilter& f);

// preamble.samples followed by the frame
CVec attach_preamble(const Preamble& p, const CVec& frame);

// Start index of the preamble in rx: argmax of |xcorr(rx, preamble)|.
// Throws sync_error when the peak is below 5x the median correlation
// magnitude (no frame present).
std::size_t locate(const CVec& rx, const Preamble& p);

// Correlation bias a channel introduces into locate: the located offset
// of the preamble after passing the (noiseless, undelayed) taps and PA
// model. Compensating by this restores tap-0 alignment of a pair.
int channel_lag_bias(const Preamble& p, const CVec& taps, double a1, double a3);

struct AlignedPair {
    CVec x;
    CVec y;
};

// Trim both records so x[n] and y[n] correspond; channel_lag is the known
// correlation bias of the channel between them (0 for identity).
AlignedPair align(const CVec& tx_record, const CVec& rx_record,
                  const Preamble& p, int channel_lag = 0);

}  // namespace sic::sync
