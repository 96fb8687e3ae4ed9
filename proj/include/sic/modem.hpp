#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "sic/types.hpp"

namespace sic::modem {

// MPSK constellation. index i is the natural-binary value of a k-bit group
// (MSB first). QPSK keeps the GNU Radio style table 00->1+0j, 01->-1+0j,
// 10->0+1j, 11->0-1j; 16PSK and 64PSK place index i at angle 2*pi*i/M.
struct PskScheme {
    int order = 4;            // M, one of 4 / 16 / 64
    int bits_per_symbol = 2;  // k = log2(M)
    CVec points;              // unit-magnitude, indexed by bit-group value

    static PskScheme make(int order);
    static PskScheme from_name(const std::string& name);  // qpsk|16psk|64psk
    std::string name() const;
    double min_distance() const;  // smallest inter-point distance
};

using Bits = std::vector<std::uint8_t>;
using Bytes = std::vector<std::uint8_t>;

// MSB-first expansion, length 8*len(data).
Bits bytes_to_bits(std::span<const std::uint8_t> data);

// inverse of bytes_to_bits; len(bits) must be a multiple of 8
Bytes bits_to_bytes(std::span<const std::uint8_t> bits);

// One constellation point per k-bit group. Length must divide evenly.
CVec map_bits(std::span<const std::uint8_t> bits, const PskScheme& scheme);

// Nearest constellation point per sample (Euclidean), ties to the lowest
// index. Never fails on noisy input.
Bits demap_symbols(std::span<const cplx> samples, const PskScheme& scheme);

// Byte-level helpers: pad the bit stream with zeros up to a multiple of k
// (64PSK needs it) and remember how many were added.
struct MappedFrame {
    CVec symbols;
    int pad_bits = 0;
};
MappedFrame map_bytes(std::span<const std::uint8_t> data, const PskScheme& scheme);
Bytes demap_to_bytes(std::span<const cplx> samples, const PskScheme& scheme, int pad_bits);

}  // namespace sic::modem
