#include "pacrl/pac.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace pacrl {

CodeParams::CodeParams(int n_block, int n_info)
    : block_length(n_block), info_length(n_info), stages(0) {
    if (n_block < 2 || (n_block & (n_block - 1)) != 0)
        throw std::invalid_argument("block length must be a power of two >= 2");
    if (n_info <= 0 || n_info > n_block)
        throw std::invalid_argument("info length must satisfy 0 < K <= N");
    while ((1 << stages) < n_block) ++stages;
}

RateProfile::RateProfile(BitVector bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw std::invalid_argument("profile bits must be 0 or 1");
}

RateProfile RateProfile::from_info_indices(int block_length, const std::vector<int>& indices) {
    BitVector bits(block_length, 0);
    for (int i : indices) {
        if (i < 0 || i >= block_length)
            throw std::invalid_argument("info index out of range");
        bits[i] = 1;
    }
    return RateProfile(std::move(bits));
}

RateProfile RateProfile::from_hex(std::string_view hex, int block_length) {
    if (block_length % 4 != 0)
        throw std::invalid_argument("hex profiles require N divisible by 4");
    if (static_cast<int>(hex.size()) != block_length / 4)
        throw std::invalid_argument("hex profile must have exactly N/4 digits");
    BitVector bits(block_length, 0);
    for (int d = 0; d < block_length / 4; ++d) {
        const char c = hex[d];
        int value;
        if (c >= '0' && c <= '9') value = c - '0';
        else if (c >= 'a' && c <= 'f') value = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') value = c - 'A' + 10;
        else throw std::invalid_argument("non-hex character in profile string");
        for (int b = 0; b < 4; ++b)
            bits[4 * d + b] = static_cast<std::uint8_t>((value >> (3 - b)) & 1);
    }
    return RateProfile(std::move(bits));
}

std::string RateProfile::to_hex() const {
    const int n = block_length();
    if (n % 4 != 0)
        throw std::invalid_argument("hex profiles require N divisible by 4");
    static const char digits[] = "0123456789ABCDEF";
    std::string out(n / 4, '0');
    for (int d = 0; d < n / 4; ++d) {
        int value = 0;
        for (int b = 0; b < 4; ++b) value = (value << 1) | bits_[4 * d + b];
        out[d] = digits[value];
    }
    return out;
}

std::vector<int> RateProfile::info_indices() const {
    std::vector<int> out;
    for (int i = 0; i < block_length(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

std::vector<int> RateProfile::frozen_indices() const {
    std::vector<int> out;
    for (int i = 0; i < block_length(); ++i)
        if (!bits_[i]) out.push_back(i);
    return out;
}

int RateProfile::popcount() const {
    int c = 0;
    for (auto b : bits_) c += b;
    return c;
}

PrecoderPolynomial::PrecoderPolynomial(BitVector taps) : taps_(std::move(taps)) {
    if (taps_.empty()) throw std::invalid_argument("precoder must have length >= 1");
    if (taps_.front() != 1) throw std::invalid_argument("precoder must have leading tap 1");
    for (auto t : taps_)
        if (t > 1) throw std::invalid_argument("precoder taps must be 0 or 1");
}

PrecoderPolynomial PrecoderPolynomial::from_string(std::string_view s) {
    BitVector taps;
    taps.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("precoder string must contain only 0/1");
        taps.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return PrecoderPolynomial(std::move(taps));
}

std::string PrecoderPolynomial::to_string() const {
    std::string s(taps_.size(), '0');
    for (std::size_t i = 0; i < taps_.size(); ++i) s[i] = taps_[i] ? '1' : '0';
    return s;
}

int rm_score(int index) {
    if (index < 0) throw std::invalid_argument("index must be non-negative");
    return std::popcount(static_cast<unsigned>(index));
}

BitVector rate_profile_map(const BitVector& data, const RateProfile& profile) {
    if (static_cast<int>(data.size()) != profile.popcount())
        throw std::invalid_argument("data length must equal profile popcount");
    BitVector v(profile.block_length(), 0);
    std::size_t next = 0;
    for (int i = 0; i < profile.block_length(); ++i)
        if (profile.is_info(i)) v[i] = data[next++];
    return v;
}

BitVector conv_precode(const BitVector& v, const PrecoderPolynomial& w) {
    const int n = static_cast<int>(v.size());
    const int p = w.length();
    const auto& taps = w.taps();
    BitVector u(n, 0);
    for (int i = 0; i < n; ++i) {
        std::uint8_t acc = 0;
        const int jmax = std::min(p - 1, i);
        for (int j = 0; j <= jmax; ++j) acc ^= static_cast<std::uint8_t>(taps[j] & v[i - j]);
        u[i] = acc;
    }
    return u;
}

BitVector conv_precode_inverse(const BitVector& u, const PrecoderPolynomial& w) {
    const int n = static_cast<int>(u.size());
    const int p = w.length();
    const auto& taps = w.taps();
    BitVector v(n, 0);
    for (int i = 0; i < n; ++i) {
        std::uint8_t acc = u[i];
        const int jmax = std::min(p - 1, i);
        for (int j = 1; j <= jmax; ++j) acc ^= static_cast<std::uint8_t>(taps[j] & v[i - j]);
        v[i] = acc;  // w_0 = 1
    }
    return v;
}

void polar_transform_inplace(BitVector& u) {
    const int n = static_cast<int>(u.size());
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("polar transform requires a power-of-two length");
    for (int half = 1; half < n; half <<= 1)
        for (int block = 0; block < n; block += 2 * half)
            for (int t = 0; t < half; ++t)
                u[block + t] ^= u[block + t + half];
}

BitVector polar_transform(BitVector u) {
    polar_transform_inplace(u);
    return u;
}

BitVector pac_encode(const BitVector& data, const RateProfile& profile,
                     const PrecoderPolynomial& w) {
    BitVector x = conv_precode(rate_profile_map(data, profile), w);
    polar_transform_inplace(x);
    return x;
}

}  // namespace pacrl
