#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace deepwide {

/// Arbitrary-precision signed integer, schoolbook arithmetic. Quantum-graph
/// coefficients and homomorphism counts of large pattern graphs need more
/// than 128 bits.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) {
            negative_ = true;
            // avoid overflow on the most negative value
            unsigned long long u = ~(unsigned long long)v + 1;
            assign_magnitude(u);
        } else {
            assign_magnitude((unsigned long long)v);
        }
    }

    bool is_zero() const { return limbs_.empty(); }
    bool negative() const { return negative_; }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    BigInt operator+(const BigInt& o) const {
        if (negative_ == o.negative_) {
            BigInt r;
            r.limbs_ = add_mag(limbs_, o.limbs_);
            r.negative_ = negative_ && !r.limbs_.empty();
            return r;
        }
        int c = cmp_mag(limbs_, o.limbs_);
        if (c == 0) return BigInt();
        BigInt r;
        if (c > 0) {
            r.limbs_ = sub_mag(limbs_, o.limbs_);
            r.negative_ = negative_;
        } else {
            r.limbs_ = sub_mag(o.limbs_, limbs_);
            r.negative_ = o.negative_;
        }
        if (r.limbs_.empty()) r.negative_ = false;
        return r;
    }
    BigInt operator-(const BigInt& o) const { return *this + (-o); }

    BigInt operator*(const BigInt& o) const {
        if (is_zero() || o.is_zero()) return BigInt();
        BigInt r;
        r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
        for (size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (size_t j = 0; j < o.limbs_.size() || carry; ++j) {
                std::uint64_t cur = r.limbs_[i + j] + carry;
                if (j < o.limbs_.size()) cur += (std::uint64_t)limbs_[i] * o.limbs_[j];
                r.limbs_[i + j] = (std::uint32_t)cur;
                carry = cur >> 32;
            }
        }
        r.trim();
        r.negative_ = negative_ != o.negative_;
        return r;
    }

    /// Truncated division (quotient rounds toward zero).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        quot = BigInt();
        rem = BigInt();
        int bits = (int)a.limbs_.size() * 32;
        quot.limbs_.assign(a.limbs_.size(), 0);
        for (int i = bits - 1; i >= 0; --i) {
            rem.shift_left_one();
            if (a.bit(i)) rem.set_bit(0);
            if (cmp_mag(rem.limbs_, b.limbs_) >= 0) {
                rem.limbs_ = sub_mag(rem.limbs_, b.limbs_);
                quot.set_bit(i);
            }
        }
        quot.trim();
        rem.trim();
        quot.negative_ = !quot.limbs_.empty() && (a.negative_ != b.negative_);
        rem.negative_ = !rem.limbs_.empty() && a.negative_;
    }

    BigInt operator/(const BigInt& o) const {
        BigInt q, r;
        divmod(*this, o, q, r);
        return q;
    }
    BigInt operator%(const BigInt& o) const {
        BigInt q, r;
        divmod(*this, o, q, r);
        return r;
    }

    std::strong_ordering operator<=>(const BigInt& o) const {
        if (negative_ != o.negative_) return negative_ ? std::strong_ordering::less
                                                       : std::strong_ordering::greater;
        int c = cmp_mag(limbs_, o.limbs_);
        if (negative_) c = -c;
        return c < 0    ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal;
    }
    bool operator==(const BigInt& o) const {
        return negative_ == o.negative_ && limbs_ == o.limbs_;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.negative_ = false;
        b.negative_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    std::string str() const {
        if (is_zero()) return "0";
        BigInt cur = *this;
        cur.negative_ = false;
        BigInt ten(10);
        std::string digits;
        while (!cur.is_zero()) {
            BigInt q, r;
            divmod(cur, ten, q, r);
            digits.push_back(char('0' + (r.limbs_.empty() ? 0 : r.limbs_[0])));
            cur = q;
        }
        if (negative_) digits.push_back('-');
        return std::string(digits.rbegin(), digits.rend());
    }

    static BigInt parse(const std::string& s) {
        BigInt out;
        bool neg = false;
        size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (i == s.size()) throw std::invalid_argument("BigInt: empty number");
        BigInt ten(10);
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            out = out * ten + BigInt(s[i] - '0');
        }
        if (!out.is_zero()) out.negative_ = neg;
        return out;
    }

    /// Lossy check: fits a signed 64-bit value?
    bool fits_int64() const {
        if (limbs_.size() > 2) return false;
        unsigned long long mag = 0;
        for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
        return negative_ ? mag <= (1ull << 63) : mag < (1ull << 63);
    }
    long long to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: does not fit 64 bits");
        unsigned long long mag = 0;
        for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
        return negative_ ? -(long long)mag : (long long)mag;
    }

  private:
    bool negative_ = false;
    std::vector<std::uint32_t> limbs_;  // little endian, no trailing zeros

    void assign_magnitude(unsigned long long u) {
        while (u) {
            limbs_.push_back((std::uint32_t)u);
            u >>= 32;
        }
    }
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) negative_ = false;
    }
    bool bit(int i) const {
        size_t limb = i / 32;
        return limb < limbs_.size() && (limbs_[limb] >> (i % 32) & 1);
    }
    void set_bit(int i) {
        size_t limb = i / 32;
        if (limbs_.size() <= limb) limbs_.resize(limb + 1, 0);
        limbs_[limb] |= (std::uint32_t)1 << (i % 32);
    }
    void shift_left_one() {
        std::uint32_t carry = 0;
        for (auto& l : limbs_) {
            std::uint32_t next = l >> 31;
            l = (l << 1) | carry;
            carry = next;
        }
        if (carry) limbs_.push_back(carry);
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> out;
        std::uint64_t carry = 0;
        for (size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
            std::uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            out.push_back((std::uint32_t)cur);
            carry = cur >> 32;
        }
        return out;
    }
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> out = a;
        std::int64_t borrow = 0;
        for (size_t i = 0; i < out.size(); ++i) {
            std::int64_t cur = (std::int64_t)out[i] - borrow - (i < b.size() ? b[i] : 0);
            borrow = cur < 0;
            if (cur < 0) cur += (std::int64_t)1 << 32;
            out[i] = (std::uint32_t)cur;
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }
};

}  // namespace deepwide
