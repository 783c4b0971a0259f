#pragma once

#include <compare>
#include <cstdint>
#include <limits>

namespace xidx {

using PaperIdx = uint32_t;
using AuthorIdx = uint32_t;
using NodeIdx = uint32_t;

inline constexpr uint32_t kNoNode = std::numeric_limits<uint32_t>::max();

// Citation distance: a non-negative hop count in the collaboration network,
// or infinite when the two author sets are in disconnected components.
class Distance {
 public:
  constexpr Distance() : raw_(kInfRaw) {}

  static constexpr Distance finite(uint32_t v) { return Distance(v); }
  static constexpr Distance infinite() { return Distance(kInfRaw); }

  constexpr bool is_infinite() const { return raw_ == kInfRaw; }
  constexpr bool is_finite() const { return raw_ != kInfRaw; }

  // Hop count; only meaningful for finite distances.
  constexpr uint32_t value() const { return raw_; }

  // Infinite compares greater than every finite distance.
  friend constexpr auto operator<=>(Distance a, Distance b) { return a.raw_ <=> b.raw_; }
  friend constexpr bool operator==(Distance a, Distance b) = default;

 private:
  static constexpr uint32_t kInfRaw = std::numeric_limits<uint32_t>::max();
  explicit constexpr Distance(uint32_t raw) : raw_(raw) {}
  uint32_t raw_;
};

}  // namespace xidx
