#include "sic/modem.hpp"

#include <cmath>
#include <limits>

namespace sic::modem {

PskScheme PskScheme::make(int order) {
    if (order != 4 && order != 16 && order != 64)
        throw std::invalid_argument("PskScheme: order must be 4, 16 or 64");
    PskScheme s;
    s.order = order;
    s.bits_per_symbol = 0;
    for (int m = order; m > 1; m >>= 1) ++s.bits_per_symbol;
    s.points.resize(order);
    if (order == 4) {
        s.points[0] = {1.0, 0.0};   // 00
        s.points[1] = {-1.0, 0.0};  // 01
        s.points[2] = {0.0, 1.0};   // 10
        s.points[3] = {0.0, -1.0};  // 11
    } else {
        for (int i = 0; i < order; ++i) {
            double ang = 2.0 * M_PI * i / order;
            s.points[i] = {std::cos(ang), std::sin(ang)};
        }
    }
    return s;
}

PskScheme PskScheme::from_name(const std::string& name) {
    if (name == "qpsk" || name == "4psk") return make(4);
    if (name == "16psk") return make(16);
    if (name == "64psk") return make(64);
    throw std::invalid_argument("unknown scheme '" + name + "' (valid: qpsk, 16psk, 64psk)");
}

std::string PskScheme::name() const {
    switch (order) {
        case 4: return "qpsk";
        case 16: return "16psk";
        default: return "64psk";
    }
}

double PskScheme::min_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, std::abs(points[i] - points[j]));
    return best;
}

Bits bytes_to_bits(std::span<const std::uint8_t> data) {
    Bits bits;
    bits.reserve(data.size() * 8);
    for (std::uint8_t byte : data)
        for (int i = 7; i >= 0; --i) bits.push_back((byte >> i) & 1u);
    return bits;
}

Bytes bits_to_bytes(std::span<const std::uint8_t> bits) {
    if (bits.size() % 8 != 0)
        throw std::invalid_argument("bits_to_bytes: length must be a multiple of 8");
    Bytes out(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        out[i / 8] = std::uint8_t((out[i / 8] << 1) | (bits[i] & 1u));
    return out;
}

CVec map_bits(std::span<const std::uint8_t> bits, const PskScheme& scheme) {
    const int k = scheme.bits_per_symbol;
    if (bits.size() % k != 0)
        throw std::invalid_argument("map_bits: bit count must be a multiple of " + std::to_string(k));
    CVec symbols(bits.size() / k);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        unsigned idx = 0;
        for (int b = 0; b < k; ++b) idx = (idx << 1) | (bits[s * k + b] & 1u);
        symbols[s] = scheme.points[idx];
    }
    return symbols;
}

Bits demap_symbols(std::span<const cplx> samples, const PskScheme& scheme) {
    const int k = scheme.bits_per_symbol;
    Bits bits(samples.size() * k);
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < std::int64_t(samples.size()); ++s) {
        unsigned best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (unsigned i = 0; i < unsigned(scheme.order); ++i) {
            double d = std::norm(samples[s] - scheme.points[i]);
            if (d < best_d) {  // strict: ties keep the lowest index
                best_d = d;
                best = i;
            }
        }
        for (int b = 0; b < k; ++b)
            bits[s * k + b] = (best >> (k - 1 - b)) & 1u;
    }
    return bits;
}

MappedFrame map_bytes(std::span<const std::uint8_t> data, const PskScheme& scheme) {
    Bits bits = bytes_to_bits(data);
    const int k = scheme.bits_per_symbol;
    MappedFrame f;
    f.pad_bits = int((k - bits.size() % k) % k);
    bits.insert(bits.end(), f.pad_bits, 0);
    f.symbols = map_bits(bits, scheme);
    return f;
}

Bytes demap_to_bytes(std::span<const cplx> samples, const PskScheme& scheme, int pad_bits) {
    Bits bits = demap_symbols(samples, scheme);
    if (pad_bits < 0 || std::size_t(pad_bits) >= bits.size() + 1)
        throw std::invalid_argument("demap_to_bytes: bad pad length");
    bits.resize(bits.size() - pad_bits);
    return bits_to_bytes(bits);
}

}  // namespace sic::modem
