#include "ap3/field.hpp"

#include <limits>
#include <string>

#include "ap3/errors.hpp"

namespace ap3 {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  if (new_r == 0) throw ParameterError("zero has no inverse mod " + std::to_string(p));
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

FieldParams::FieldParams(std::uint32_t p, std::uint32_t n) : p_(p), n_(n), size_(1) {
  if (p < 3 || !is_prime(p)) {
    throw ParameterError("p must be an odd prime, got " + std::to_string(p));
  }
  if (n < 1) throw ParameterError("n must be positive");
  powers_.reserve(n + 1);
  std::uint64_t acc = 1;
  for (std::uint32_t i = 0; i <= n; ++i) {
    if (acc > std::numeric_limits<std::uint32_t>::max()) {
      throw ParameterError("p^n does not fit in 32 bits");
    }
    powers_.push_back(static_cast<std::uint32_t>(acc));
    acc *= p;
  }
  size_ = powers_[n];
}

Digits FieldParams::digits(Element x) const {
  Digits out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Element FieldParams::encode(std::span<const std::uint32_t> digits) const {
  if (digits.size() != n_) throw ParameterError("digit vector has wrong length");
  Element x = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (digits[i] >= p_) throw ParameterError("digit out of range");
    x += digits[i] * powers_[i];
  }
  return x;
}

Element FieldParams::add(Element a, Element b) const {
  Element out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * powers_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

Element FieldParams::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldParams::neg(Element a) const {
  Element out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint32_t d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * powers_[i];
    a /= p_;
  }
  return out;
}

Element FieldParams::scale(Element a, std::int64_t c) const {
  std::int64_t cm = c % static_cast<std::int64_t>(p_);
  if (cm < 0) cm += p_;
  const auto cu = static_cast<std::uint64_t>(cm);
  Element out = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += static_cast<std::uint32_t>((cu * (a % p_)) % p_) * powers_[i];
    a /= p_;
  }
  return out;
}

std::uint32_t FieldParams::dot(Element a, Element b) const {
  std::uint64_t acc = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    acc += static_cast<std::uint64_t>(a % p_) * (b % p_);
    a /= p_;
    b /= p_;
  }
  return static_cast<std::uint32_t>(acc % p_);
}

void require_same_field(const FieldParams& a, const FieldParams& b) {
  if (!(a == b)) {
    throw ParameterError("mismatched field parameters: (" + std::to_string(a.p()) + "," +
                         std::to_string(a.n()) + ") vs (" + std::to_string(b.p()) + "," +
                         std::to_string(b.n()) + ")");
  }
}

std::uint32_t dot(const FieldParams& params, Element a, Element b) {
  if (!params.contains(a) || !params.contains(b)) {
    throw ParameterError("element outside the field");
  }
  return params.dot(a, b);
}

std::vector<Element> translation_map(const FieldParams& params, Element shift) {
  const std::uint32_t p = params.p();
  const std::uint32_t n = params.n();
  std::vector<Element> out(params.size());
  // Odometer over m; s holds the digits of m + shift.
  Digits m(n, 0);
  Digits s = params.digits(shift);
  std::int64_t value = shift;
  for (Element x = 0; x < params.size(); ++x) {
    out[x] = static_cast<Element>(value);
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint32_t old = s[i];
      s[i] = old + 1 == p ? 0 : old + 1;
      value += (static_cast<std::int64_t>(s[i]) - old) * params.power(i);
      if (++m[i] < p) break;
      m[i] = 0;
    }
  }
  return out;
}

std::vector<std::uint32_t> character_phases(const FieldParams& params, Element a) {
  const std::uint32_t p = params.p();
  const std::uint32_t n = params.n();
  const Digits ad = params.digits(a);
  std::vector<std::uint32_t> out(params.size());
  Digits m(n, 0);
  std::uint32_t phase = 0;
  for (Element x = 0; x < params.size(); ++x) {
    out[x] = phase;
    for (std::uint32_t i = 0; i < n; ++i) {
      phase = (phase + ad[i]) % p;
      if (++m[i] < p) break;
      // digit i wrapped from p-1 to 0: p increments of ad[i] cancel mod p
      m[i] = 0;
    }
  }
  return out;
}

}  // namespace ap3
