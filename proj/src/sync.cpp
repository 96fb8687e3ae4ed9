#include "sic/sync.hpp"

#include <algorithm>
#include <cmath>

#include "sic/kernels.hpp"

namespace sic::sync {

namespace {

constexpr double kPeakToMedian = 5.0;  // detection threshold

const std::vector<int>& barker13() {
    static const std::vector<int> code = {1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1};
    return code;
}

}  // namespace

Preamble make_preamble(const pulse::RrcFilter& f) {
    Preamble p;
    p.code = barker13();
    CVec symbols(p.code.size());
    for (std::size_t i = 0; i < p.code.size(); ++i)
        symbols[i] = cplx{double(p.code[i]), 0.0};
    p.samples = pulse::shape(symbols, f);
    return p;
}

CVec attach_preamble(const Preamble& p, const CVec& frame) {
    CVec out;
    out.reserve(p.samples.size() + frame.size());
    out.insert(out.end(), p.samples.begin(), p.samples.end());
    out.insert(out.end(), frame.begin(), frame.end());
    return out;
}

std::size_t locate(const CVec& rx, const Preamble& p) {
    if (rx.size() < p.samples.size())
        throw std::invalid_argument("locate: record shorter than preamble");
    CVec c = kernels::xcorr(rx, p.samples);
    std::vector<double> mag(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) mag[i] = std::abs(c[i]);

    std::size_t best = 0;
    for (std::size_t i = 1; i < mag.size(); ++i)
        if (mag[i] > mag[best]) best = i;

    std::vector<double> tmp = mag;
    std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end());
    double median = tmp[tmp.size() / 2];
    if (mag[best] < kPeakToMedian * median)
        throw sync_error("no frame found: correlation peak " + std::to_string(mag[best]) +
                         " below " + std::to_string(kPeakToMedian) + "x median " +
                         std::to_string(median));
    return best;
}

int channel_lag_bias(const Preamble& p, const CVec& taps, double a1, double a3) {
    CVec v = kernels::fir(p.samples, taps);
    if (a1 != 1.0 || a3 != 0.0)
        for (cplx& s : v) s = a1 * s + a3 * s * std::norm(s);
    return int(locate(v, p));
}

AlignedPair align(const CVec& tx_record, const CVec& rx_record,
                  const Preamble& p, int channel_lag) {
    std::size_t otx = locate(tx_record, p);
    std::size_t ory = locate(rx_record, p);
    if (std::int64_t(ory) - channel_lag < 0)
        throw sync_error("align: channel lag compensation runs past record start");
    ory -= std::size_t(channel_lag);

    AlignedPair out;
    std::size_t len = std::min(tx_record.size() - otx, rx_record.size() - ory);
    out.x.assign(tx_record.begin() + otx, tx_record.begin() + otx + len);
    out.y.assign(rx_record.begin() + ory, rx_record.begin() + ory + len);
    return out;
}

}  // namespace sic::sync
