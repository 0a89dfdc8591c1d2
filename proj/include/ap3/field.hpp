#pragma once

// The additive group F_p^n, with elements encoded as integers in [0, p^n).
//
// Encoding is little-endian base p: digit i of an element is its coordinate
// along the i-th standard basis vector, and index = sum_i digit_i * p^i.
// Only the vector-space structure and the standard dot product are modelled;
// multiplication in the field F_{p^n} is never needed.

#include <cstdint>
#include <span>
#include <vector>

namespace ap3 {

using Element = std::uint32_t;
using Digits = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t v);

// Inverse of a nonzero residue modulo the prime p.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

class FieldParams {
 public:
  // Throws ParameterError unless p is an odd prime, n >= 1 and p^n fits in
  // 32 bits.
  FieldParams(std::uint32_t p, std::uint32_t n);

  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  // F = p^n.
  std::uint32_t size() const { return size_; }
  // p^i for i in [0, n].
  std::uint32_t power(std::uint32_t i) const { return powers_[i]; }

  Digits digits(Element x) const;
  Element encode(std::span<const std::uint32_t> digits) const;
  std::uint32_t digit(Element x, std::uint32_t i) const { return (x / powers_[i]) % p_; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  // c * a for an arbitrary integer c (reduced mod p).
  Element scale(Element a, std::int64_t c) const;
  // sum_i a_i b_i mod p.
  std::uint32_t dot(Element a, Element b) const;

  bool contains(Element x) const { return x < size_; }

  friend bool operator==(const FieldParams& a, const FieldParams& b) {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t size_;
  std::vector<std::uint32_t> powers_;
};

// Throws ParameterError when the two parameter sets differ.
void require_same_field(const FieldParams& a, const FieldParams& b);

// dot() with the field check of the public operation.
std::uint32_t dot(const FieldParams& params, Element a, Element b);

// out[m] = m + shift for every m, in O(F) amortised time.
std::vector<Element> translation_map(const FieldParams& params, Element shift);

// out[m] = a . m for every m, in O(F) amortised time.
std::vector<std::uint32_t> character_phases(const FieldParams& params, Element a);

}  // namespace ap3
