#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mocsfs {

/// Fixed-length binary genotype. Bit i set means feature i is kept.
///
/// Length is fixed at construction. Storage is packed into 64-bit words with
/// the unused high bits of the last word always zero, so word-wise equality
/// and hashing are exact.
class BitMask {
 public:
  BitMask() = default;
  explicit BitMask(std::size_t size, bool value = false);

  /// Parses a string of '0'/'1' characters, bit 0 first.
  static BitMask from_string(std::string_view bits);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) noexcept;
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  BitMask flipped(std::size_t i) const {
    BitMask copy = *this;
    copy.flip(i);
    return copy;
  }

  std::size_t count() const noexcept;
  bool none() const noexcept { return count() == 0; }

  /// Indices of set bits in ascending order.
  std::vector<std::size_t> ones() const;

  /// '0'/'1' string, bit 0 first.
  std::string to_string() const;

  /// Packed big-endian hex: bit 0 is the most significant bit of the first
  /// digit, zero-padded on the right to ceil(size/4) digits, lowercase.
  std::string to_hex() const;
  static BitMask from_hex(std::string_view hex, std::size_t size);

  std::size_t hash() const noexcept;

  friend bool operator==(const BitMask& a, const BitMask& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitMaskHash {
  std::size_t operator()(const BitMask& m) const noexcept { return m.hash(); }
};

}  // namespace mocsfs

template <>
struct std::hash<mocsfs::BitMask> {
  std::size_t operator()(const mocsfs::BitMask& m) const noexcept { return m.hash(); }
};
