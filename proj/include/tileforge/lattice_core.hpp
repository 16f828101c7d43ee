#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tileforge {

using Int = std::int64_t;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);
Int narrow(__int128 v);

/// Lattice point with inline storage; dimension 1..kMaxDim.
class IntVector {
 public:
  static constexpr std::size_t kMaxDim = 8;

  IntVector() = default;
  explicit IntVector(std::size_t dim);
  IntVector(std::initializer_list<Int> coords);
  explicit IntVector(const std::vector<Int>& coords);

  std::size_t dim() const { return n_; }
  Int operator[](std::size_t i) const { return c_[i]; }
  Int& operator[](std::size_t i) { return c_[i]; }
  bool is_zero() const;

  IntVector operator+(const IntVector& o) const;
  IntVector operator-(const IntVector& o) const;
  IntVector operator-() const;
  IntVector scaled(Int k) const;

  bool operator==(const IntVector& o) const;
  std::strong_ordering operator<=>(const IntVector& o) const;

  std::vector<Int> coords() const { return {c_.begin(), c_.begin() + n_}; }
  std::string str() const;  // "a,b,c"
  static IntVector parse(const std::string& text);

 private:
  std::array<Int, kMaxDim> c_{};
  std::uint8_t n_ = 0;
};

class Rational {
 public:
  Rational() = default;
  Rational(Int n) : num_(n) {}  // NOLINT(implicit)
  Rational(Int n, Int d);

  Int num() const { return num_; }
  Int den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const;

  bool operator==(const Rational& o) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

 private:
  static Rational reduced(__int128 n, __int128 d);
  Int num_ = 0;
  Int den_ = 1;
};

class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t dim) : c_(dim) {}
  explicit RationalVector(const IntVector& v);
  RationalVector(const IntVector& numer, Int denom);

  std::size_t dim() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }

  RationalVector operator+(const RationalVector& o) const;
  RationalVector operator-(const RationalVector& o) const;

  bool operator==(const RationalVector& o) const = default;
  std::strong_ordering operator<=>(const RationalVector& o) const;

  std::string str() const;

 private:
  std::vector<Rational> c_;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t dim, std::vector<Int> row_major);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);
  static IntMatrix identity(std::size_t dim);

  std::size_t dim() const { return n_; }
  Int at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  Int det() const { return det_; }
  const std::vector<Int>& adjugate() const { return adj_; }

  IntVector apply(const IntVector& v) const;
  IntVector apply_adjugate(const IntVector& v) const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix pow(unsigned e) const;

  bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<Int> a_;
  std::vector<Int> adj_;
  Int det_ = 0;
};

/// Determinant by fraction-free (Bareiss) elimination.
Int determinant(std::size_t n, std::vector<Int> a);

/// k with M k = w, or nullopt when adj(M) w is not divisible by det M.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& w);

/// M^{-1} w over the rationals.
RationalVector solve_rational(const IntMatrix& m, const RationalVector& w);

class DigitSet {
 public:
  DigitSet() = default;
  explicit DigitSet(std::vector<IntVector> digits);
  static DigitSet collinear(std::size_t count, const IntVector& v);

  std::size_t size() const { return digits_.size(); }
  const IntVector& operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<IntVector>& digits() const { return digits_; }
  std::optional<std::size_t> index_of(const IntVector& d) const;
  const std::optional<IntVector>& generator() const { return generator_; }

 private:
  std::vector<IntVector> digits_;
  std::optional<IntVector> generator_;
};

struct AbcParams {
  Int A, B, C;
  AbcParams(Int a, Int b, Int c);
  auto operator<=>(const AbcParams&) const = default;
  std::string str() const;
  static AbcParams parse(const std::string& text);
};

/// Analysis context for MT = T + D.
struct TileSystem {
  IntMatrix matrix;
  DigitSet digits;
  std::size_t dim() const { return matrix.dim(); }
};

TileSystem companion_form(const AbcParams& p);

/// Degree-descending monic coefficients of det(xI - M).
std::vector<Int> char_poly(const IntMatrix& m);

bool is_expanding(const IntMatrix& m);

DigitSet collinear_digit_set(const IntMatrix& m, const IntVector& v);

bool is_complete_residue_system(const IntMatrix& m, const DigitSet& d);

struct RadixExpansion {
  std::vector<std::size_t> digits;  // indices into the digit set, least significant first
  bool terminated = false;
  std::vector<IntVector> cycle;     // quotients of the periodic orbit when not terminated
};

RadixExpansion radix_expand(const TileSystem& sys, const IntVector& z,
                            std::size_t max_len = 1'000'000);

}  // namespace tileforge

template <>
struct std::hash<tileforge::IntVector> {
  std::size_t operator()(const tileforge::IntVector& v) const noexcept {
    std::size_t h = v.dim();
    for (std::size_t i = 0; i < v.dim(); ++i)
      h = h * 1000003u ^ static_cast<std::size_t>(v[i] + 0x9e3779b97f4a7c15ull);
    return h;
  }
};
