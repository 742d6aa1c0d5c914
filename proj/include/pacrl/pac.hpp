#ifndef PACRL_PAC_HPP
#define PACRL_PAC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pacrl {

// Bits are stored one per byte, value 0 or 1. Roles by length: data d (K),
// carrier v (N), precoded u (N), codeword x (N).
using BitVector = std::vector<std::uint8_t>;

struct CodeParams {
    int block_length;  // N, a power of two
    int info_length;   // K
    int stages;        // log2(N)

    CodeParams(int n_block, int n_info);

    double rate() const {
        return static_cast<double>(info_length) / block_length;
    }
};

// The information set: bit i set <=> index i carries an information bit.
class RateProfile {
public:
    RateProfile() = default;
    explicit RateProfile(BitVector bits);

    static RateProfile from_info_indices(int block_length, const std::vector<int>& indices);
    // Hex string as published: 4 bits per digit, index 0 at the MSB of the
    // first digit. Accepts either case, requires exactly N/4 digits.
    static RateProfile from_hex(std::string_view hex, int block_length);

    std::string to_hex() const;  // uppercase
    std::vector<int> info_indices() const;
    std::vector<int> frozen_indices() const;

    int block_length() const { return static_cast<int>(bits_.size()); }
    int popcount() const;
    bool is_info(int index) const { return bits_.at(index) != 0; }
    const BitVector& bits() const { return bits_; }

    bool operator==(const RateProfile& other) const = default;

private:
    BitVector bits_;
};

// Convolutional precoder taps w, w[0] == 1 so the precoder is invertible.
class PrecoderPolynomial {
public:
    PrecoderPolynomial() : taps_{1} {}
    explicit PrecoderPolynomial(BitVector taps);
    static PrecoderPolynomial from_string(std::string_view s);  // e.g. "1011011"

    int length() const { return static_cast<int>(taps_.size()); }
    const BitVector& taps() const { return taps_; }
    std::string to_string() const;
    bool is_identity() const { return taps_.size() == 1; }

    bool operator==(const PrecoderPolynomial& other) const = default;

private:
    BitVector taps_;
};

// Hamming weight of the binary expansion of an index.
int rm_score(int index);

// Scatter the K data bits into the information positions, zeros elsewhere.
BitVector rate_profile_map(const BitVector& data, const RateProfile& profile);

// u_i = xor_{j<p} w_j * v_{i-j}, bits before the block treated as zero.
BitVector conv_precode(const BitVector& v, const PrecoderPolynomial& w);
BitVector conv_precode_inverse(const BitVector& u, const PrecoderPolynomial& w);

// x = u * P^(kron n) with P = [[1,0],[1,1]], natural bit order. Self-inverse.
void polar_transform_inplace(BitVector& u);
BitVector polar_transform(BitVector u);

BitVector pac_encode(const BitVector& data, const RateProfile& profile,
                     const PrecoderPolynomial& w);

inline std::string profile_to_hex(const RateProfile& profile) { return profile.to_hex(); }
inline RateProfile hex_to_profile(std::string_view hex, int block_length) {
    return RateProfile::from_hex(hex, block_length);
}

}  // namespace pacrl

#endif
