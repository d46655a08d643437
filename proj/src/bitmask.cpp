#include "mocsfs/bitmask.hpp"

#include <bit>

#include "mocsfs/error.hpp"

namespace mocsfs {

BitMask::BitMask(std::size_t size, bool value)
    : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  if (value && size % 64 != 0) {
    words_.back() &= (std::uint64_t{1} << (size % 64)) - 1;
  }
}

BitMask BitMask::from_string(std::string_view bits) {
  BitMask mask(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      mask.set(i);
    } else if (bits[i] != '0') {
      throw_invalid("bit string contains a character other than '0' or '1'");
    }
  }
  return mask;
}

void BitMask::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t BitMask::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> BitMask::ones() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::string BitMask::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::string BitMask::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex((size_ + 3) / 4, '0');
  for (std::size_t d = 0; d < hex.size(); ++d) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      nibble <<= 1;
      if (i < size_ && test(i)) nibble |= 1u;
    }
    hex[d] = kDigits[nibble];
  }
  return hex;
}

BitMask BitMask::from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) {
    throw_invalid("hex genotype has " + std::to_string(hex.size()) +
                  " digits, expected " + std::to_string((size + 3) / 4));
  }
  BitMask mask(size);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    unsigned nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw_invalid(std::string("invalid hex digit '") + c + "'");
    }
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      const bool bit = (nibble >> (3 - b)) & 1u;
      if (i < size) {
        mask.set(i, bit);
      } else if (bit) {
        throw_invalid("hex genotype has non-zero padding bits");
      }
    }
  }
  return mask;
}

std::size_t BitMask::hash() const noexcept {
  // FNV-1a over the words, mixed with the length.
  std::uint64_t h = 1469598103934665603ull ^ size_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace mocsfs
