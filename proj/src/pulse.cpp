#include "sic/pulse.hpp"

#include <cmath>

#include "sic/kernels.hpp"

namespace sic::pulse {

double RrcFilter::symbol_gain() const {
    double e = 0.0;
    for (double t : taps) e += t * t;
    return e;
}

namespace {

// RRC impulse response at time t (in symbol periods), unnormalized.
// The removable singularities at t=0 and |t|=1/(4*beta) use their limits.
double rrc_at(double t, double beta) {
    const double eps = 1e-9;
    if (std::abs(t) < eps) return 1.0 + beta * (4.0 / M_PI - 1.0);
    if (std::abs(std::abs(4.0 * beta * t) - 1.0) < eps) {
        double a = (1.0 + 2.0 / M_PI) * std::sin(M_PI / (4.0 * beta));
        double b = (1.0 - 2.0 / M_PI) * std::cos(M_PI / (4.0 * beta));
        return beta / std::sqrt(2.0) * (a + b);
    }
    double num = std::sin(M_PI * t * (1.0 - beta)) +
                 4.0 * beta * t * std::cos(M_PI * t * (1.0 + beta));
    double den = M_PI * t * (1.0 - (4.0 * beta * t) * (4.0 * beta * t));
    return num / den;
}

}  // namespace

RrcFilter design_rrc(int sps, int span, double beta) {
    if (sps < 1) throw std::invalid_argument("design_rrc: sps must be >= 1");
    if (span < 2) throw std::invalid_argument("design_rrc: span must be >= 2");
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("design_rrc: beta must be in (0, 1]");
    RrcFilter f;
    f.sps = sps;
    f.span = span;
    f.beta = beta;
    const int len = span * sps + 1;
    const int mid = span * sps / 2;
    f.taps.resize(len);
    const double peak = rrc_at(0.0, beta);
    for (int i = 0; i < len; ++i)
        f.taps[i] = rrc_at(double(i - mid) / sps, beta) / peak;
    return f;
}

CVec upsample(const CVec& symbols, int sps) {
    if (sps < 1) throw std::invalid_argument("upsample: sps must be >= 1");
    CVec out(symbols.size() * sps, cplx{0.0, 0.0});
    for (std::size_t n = 0; n < symbols.size(); ++n) out[n * sps] = symbols[n];
    return out;
}

CVec fir_filter(const CVec& x, const CVec& taps) {
    return kernels::fir(x, taps);
}

CVec fir_filter(const CVec& x, const std::vector<double>& taps) {
    CVec h(taps.size());
    for (std::size_t i = 0; i < taps.size(); ++i) h[i] = taps[i];
    return kernels::fir(x, h);
}

CVec decimate(const CVec& x, int sps, int offset) {
    if (sps < 1) throw std::invalid_argument("decimate: sps must be >= 1");
    if (offset < 0 || offset >= sps)
        throw std::invalid_argument("decimate: offset must be in [0, sps)");
    CVec out;
    out.reserve((x.size() + sps - 1) / sps);
    for (std::size_t n = offset; n < x.size(); n += sps) out.push_back(x[n]);
    return out;
}

CVec shape(const CVec& symbols, const RrcFilter& f) {
    return fir_filter(upsample(symbols, f.sps), f.taps);
}

}  // namespace sic::pulse
