#pragma once

#include <limits>
#include <string>

#include "sic/types.hpp"

namespace sic::channel {

// One named simulation environment. snr_db is measured against the power
// of the signal passing through the path; +infinity means noiseless.
struct ScenarioConfig {
    std::string name;
    CVec si_taps;                  // self-interference channel
    CVec useful_taps{cplx{1.0}};   // far-node wireless channel
    double a1 = 1.0;               // memoryless PA model: v -> a1*v + a3*v*|v|^2
    double a3 = 0.0;
    double snr_db = std::numeric_limits<double>::infinity();
    int delay_samples = 0;
    std::uint64_t seed = 0;

    void validate() const;
    bool noiseless() const { return std::isinf(snr_db) && snr_db > 0; }
};

// FIR + cubic nonlinearity + AWGN + integer delay, in that order.
CVec apply_path(const CVec& x, const CVec& taps, double a1, double a3,
                double snr_db, int delay_samples, Rng& rng);

// the SI path of a scenario
CVec apply_channel(const CVec& x, const ScenarioConfig& cfg, Rng& rng);

// The useful-signal path: linear taps only (the cubic term models the
// node's own PA, which the far signal never crosses). Receiver noise is
// added once, on the mixture.
CVec apply_useful(const CVec& x, const ScenarioConfig& cfg);

// complex circular AWGN calibrated against the measured power of x;
// per-component variance is power / (2 * 10^(snr/10))
CVec add_awgn(const CVec& x, double snr_db, Rng& rng);

// AWGN of a fixed total power (per-component variance noise_power/2)
CVec add_noise(const CVec& x, double noise_power, Rng& rng);

// elementwise sum; lengths must match
CVec mix(const CVec& si, const CVec& useful);

double mean_power(const CVec& x);

// 10*log10(mean |x|^2) relative to unit power; -inf for an all-zero input
double relative_power_db(const CVec& x);

// Named presets. validation reproduces the two-tap linear check; the four
// environment presets are ordered so that outdoor is the most benign and
// hallway the harshest (least SNR, most multipath).
ScenarioConfig scenario(const std::string& name);
std::vector<std::string> scenario_names();

// JSON (de)serialization; snr_db serializes as null when infinite
std::string to_json(const ScenarioConfig& cfg);
ScenarioConfig from_json(const std::string& text);
void save_scenario(const ScenarioConfig& cfg, const std::string& path);
ScenarioConfig load_scenario(const std::string& path);

}  // namespace sic::channel
