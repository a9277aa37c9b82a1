/*
Copyright (c) 2026 the tcsynth authors. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "tcsynth/nat.hpp"

namespace tcsynth {

namespace {
constexpr std::uint32_t kBase = 1000000000u;
constexpr int kBaseDigits = 9;
} // namespace

Nat::Nat(std::uint64_t v) {
    while (v > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
        v /= kBase;
    }
}

void Nat::trim() {
    while (!limbs_.empty() && limbs_.back() == 0)
        limbs_.pop_back();
}

std::optional<Nat> Nat::parse(std::string_view decimal) {
    if (decimal.empty())
        return std::nullopt;
    for (char c : decimal)
        if (c < '0' || c > '9')
            return std::nullopt;
    Nat out;
    // Consume 9-digit groups from the least significant end.
    std::size_t pos = decimal.size();
    while (pos > 0) {
        std::size_t start = pos >= kBaseDigits ? pos - kBaseDigits : 0;
        std::uint32_t limb = 0;
        for (std::size_t i = start; i < pos; ++i)
            limb = limb * 10 + static_cast<std::uint32_t>(decimal[i] - '0');
        out.limbs_.push_back(limb);
        pos = start;
    }
    out.trim();
    return out;
}

Nat Nat::operator+(const Nat& other) const {
    Nat out;
    const std::size_t n = std::max(limbs_.size(), other.limbs_.size());
    out.limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = carry;
        if (i < limbs_.size())
            sum += limbs_[i];
        if (i < other.limbs_.size())
            sum += other.limbs_[i];
        out.limbs_[i] = static_cast<std::uint32_t>(sum % kBase);
        carry = sum / kBase;
    }
    if (carry > 0)
        out.limbs_.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

Nat Nat::operator*(const Nat& other) const {
    if (is_zero() || other.is_zero())
        return Nat();
    Nat out;
    out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < other.limbs_.size() || carry > 0; ++j) {
            std::uint64_t cur = out.limbs_[i + j] + carry;
            if (j < other.limbs_.size())
                cur += static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j];
            out.limbs_[i + j] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
    }
    out.trim();
    return out;
}

std::string Nat::str() const {
    if (limbs_.empty())
        return "0";
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        out += std::string(kBaseDigits - part.size(), '0');
        out += part;
    }
    return out;
}

std::optional<std::uint64_t> Nat::to_u64() const {
    std::uint64_t acc = 0;
    if (limbs_.size() > 3)
        return std::nullopt;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (acc > (UINT64_MAX - limbs_[i]) / kBase)
            return std::nullopt;
        acc = acc * kBase + limbs_[i];
    }
    return acc;
}

} // namespace tcsynth
