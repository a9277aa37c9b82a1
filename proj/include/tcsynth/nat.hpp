/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcsynth {

// Arbitrary-precision unsigned integer. Only what literal reduction needs:
// parse, print, add, mul, compare.
class Nat {
public:
    Nat() = default;
    explicit Nat(std::uint64_t v);

    static std::optional<Nat> parse(std::string_view decimal);

    Nat operator+(const Nat& other) const;
    Nat operator*(const Nat& other) const;

    bool operator==(const Nat& other) const { return limbs_ == other.limbs_; }
    bool operator!=(const Nat& other) const { return !(*this == other); }

    bool is_zero() const { return limbs_.empty(); }

    // Decimal rendering.
    std::string str() const;

    // Value as uint64 if it fits, for small-number conveniences.
    std::optional<std::uint64_t> to_u64() const;

private:
    // Little-endian limbs, base 1e9. Zero is the empty vector.
    std::vector<std::uint32_t> limbs_;

    void trim();
};

} // namespace tcsynth
