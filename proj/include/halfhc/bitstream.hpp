#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "halfhc/numeric.hpp"

namespace halfhc {

/// Growable bit sequence, packed most-significant-bit first.
class BitStream {
public:
  BitStream() = default;

  static BitStream from_string(std::string_view bits) {
    BitStream out;
    for (char c : bits) {
      if (c != '0' && c != '1') throw Error("bit string contains non-binary character");
      out.push_back(c == '1');
    }
    return out;
  }

  static BitStream from_packed(std::vector<std::uint8_t> bytes, std::uint64_t bit_count) {
    if ((bit_count + 7) / 8 != bytes.size()) throw Error("packed payload size does not match bit count");
    BitStream out;
    out.bytes_ = std::move(bytes);
    out.size_ = bit_count;
    if (bit_count % 8 != 0) out.bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - bit_count % 8));
    return out;
  }

  void push_back(bool bit) {
    if (size_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ % 8));
    ++size_;
  }

  void append(std::string_view bits) {
    for (char c : bits) push_back(c == '1');
  }

  bool operator[](std::uint64_t i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1u; }

  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  /// Padding bits are always zero, so a byte-wise popcount is exact.
  std::uint64_t count_ones() const {
    std::uint64_t n = 0;
    for (auto b : bytes_) n += static_cast<std::uint64_t>(std::popcount(b));
    return n;
  }

  /// Drops everything from bit `n` on.
  void truncate(std::uint64_t n) {
    if (n >= size_) return;
    size_ = n;
    bytes_.resize((n + 7) / 8);
    if (n % 8 != 0) bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - n % 8));
  }

  const std::vector<std::uint8_t>& packed() const { return bytes_; }

  std::string to_string() const {
    std::string s;
    s.reserve(size_);
    for (std::uint64_t i = 0; i < size_; ++i) s += (*this)[i] ? '1' : '0';
    return s;
  }

  bool operator==(const BitStream&) const = default;

private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t size_ = 0;
};

// FBIT container: "FBIT", u64 little-endian bit count, packed payload.

inline std::vector<std::uint8_t> serialize_fbit(const BitStream& bits) {
  std::vector<std::uint8_t> out = {'F', 'B', 'I', 'T'};
  std::uint64_t n = bits.size();
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(n >> (8 * k)));
  out.insert(out.end(), bits.packed().begin(), bits.packed().end());
  return out;
}

inline BitStream deserialize_fbit(const std::vector<std::uint8_t>& data) {
  if (data.size() < 12 || data[0] != 'F' || data[1] != 'B' || data[2] != 'I' || data[3] != 'T')
    throw Error("not an FBIT stream");
  std::uint64_t n = 0;
  for (int k = 0; k < 8; ++k) n |= static_cast<std::uint64_t>(data[4 + k]) << (8 * k);
  std::vector<std::uint8_t> payload(data.begin() + 12, data.end());
  if (payload.size() != (n + 7) / 8) throw Error("FBIT payload length does not match header bit count");
  return BitStream::from_packed(std::move(payload), n);
}

inline void write_fbit(const std::string& path, const BitStream& bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  auto data = serialize_fbit(bits);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

inline BitStream read_fbit(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return deserialize_fbit(data);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace halfhc
