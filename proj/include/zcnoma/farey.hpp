#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zcnoma {

/// Non-negative rational number kept in lowest terms.
///
/// The pair 1/0 is the unique representation of infinity and orders greater
/// than every finite fraction; 0/1 is the unique zero. 0/0 is not
/// constructible. Comparisons cross-multiply in 128-bit integers, so
/// numerators/denominators up to ~2^63 are safe.
class Fraction {
 public:
  constexpr Fraction() = default;  // 0/1
  Fraction(std::uint64_t num, std::uint64_t den);

  static constexpr Fraction infinity() { return Fraction(unchecked{}, 1, 0); }

  constexpr std::uint64_t num() const { return num_; }
  constexpr std::uint64_t den() const { return den_; }
  constexpr bool is_infinite() const { return den_ == 0; }

  /// a/b -> b/a. Reciprocal of 0/1 is 1/0 and vice versa.
  constexpr Fraction reciprocal() const { return Fraction(unchecked{}, den_, num_); }

  /// Value as a double; 1/0 maps to +inf.
  double value() const;

  std::string str() const;  // "num/den"
  static std::optional<Fraction> parse(std::string_view text);

  friend constexpr bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    // a/b vs c/d  <=>  a*d vs c*b; works for 1/0 too since 1*d > c*0.
    const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
    const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  struct unchecked {};
  constexpr Fraction(unchecked, std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {}

  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Component-wise sum (a+c)/(b+d). For adjacent Farey terms the result is
/// already irreducible and lies strictly between the two.
Fraction mediant(const Fraction& lo, const Fraction& hi);

/// Closed interval endpoints taken from adjacent terms of an extended Farey
/// sequence, lo < hi.
struct FareyInterval {
  Fraction lo;
  Fraction hi;

  std::uint64_t num_sum() const { return lo.num() + hi.num(); }  // b_lo + b_hi
  std::uint64_t den_sum() const { return lo.den() + hi.den(); }  // a_lo + a_hi
  std::string str() const { return lo.str() + ".." + hi.str(); }

  friend bool operator==(const FareyInterval&, const FareyInterval&) = default;
};

/// Split of a Farey interval set by the numerator-sum threshold L:
/// u_set holds intervals with num_sum() >= L, v_set the rest. Both keep the
/// original ascending order.
struct IntervalPartition {
  std::vector<FareyInterval> u_set;
  std::vector<FareyInterval> v_set;
  unsigned threshold = 0;
};

/// Ascending irreducible fractions in [0,1] with denominator <= K.
/// Throws std::invalid_argument for K == 0.
std::vector<Fraction> farey_sequence(unsigned K);

/// farey_sequence(K) followed by the reciprocals of its terms in reverse,
/// i.e. ascending irreducible fractions from 0/1 to 1/0 with numerator and
/// denominator <= K.
std::vector<Fraction> extended_farey_sequence(unsigned K);

/// Consecutive pairs of extended_farey_sequence(K).
std::vector<FareyInterval> farey_intervals(unsigned K);

/// Partition farey_intervals(K) by num_sum() >= L. Requires 1 <= L <= 2K.
IntervalPartition partition_intervals(unsigned K, unsigned L);

}  // namespace zcnoma
