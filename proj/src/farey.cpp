#include "zcnoma/farey.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace zcnoma {

Fraction::Fraction(std::uint64_t num, std::uint64_t den) {
  if (num == 0 && den == 0) {
    throw std::invalid_argument("Fraction: 0/0 is not a value");
  }
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double Fraction::value() const {
  if (den_ == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Fraction::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Fraction> Fraction::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  std::uint64_t num = 0, den = 0;
  const char* nb = text.data();
  const char* ne = text.data() + slash;
  const char* db = text.data() + slash + 1;
  const char* de = text.data() + text.size();
  auto rn = std::from_chars(nb, ne, num);
  auto rd = std::from_chars(db, de, den);
  if (rn.ec != std::errc{} || rn.ptr != ne) return std::nullopt;
  if (rd.ec != std::errc{} || rd.ptr != de) return std::nullopt;
  if (num == 0 && den == 0) return std::nullopt;
  return Fraction(num, den);
}

Fraction mediant(const Fraction& lo, const Fraction& hi) {
  return Fraction(lo.num() + hi.num(), lo.den() + hi.den());
}

std::vector<Fraction> farey_sequence(unsigned K) {
  if (K == 0) throw std::invalid_argument("farey_sequence: order must be >= 1");
  std::vector<Fraction> seq;
  seq.emplace_back(0, 1);
  // Classic next-term recurrence seeded by 0/1 and 1/K; emits the sequence in
  // ascending order without a sort.
  std::uint64_t a = 0, b = 1, c = 1, d = K;
  while (true) {
    seq.emplace_back(c, d);
    if (c == 1 && d == 1) break;
    const std::uint64_t k = (K + b) / d;
    const std::uint64_t c2 = k * c - a;
    const std::uint64_t d2 = k * d - b;
    a = c;
    b = d;
    c = c2;
    d = d2;
  }
  return seq;
}

std::vector<Fraction> extended_farey_sequence(unsigned K) {
  std::vector<Fraction> seq = farey_sequence(K);
  const std::size_t unit_half = seq.size();
  seq.reserve(2 * unit_half - 1);
  // Mirror around 1/1: the upper half is the reciprocal of the lower half
  // reversed, ending at 1/0.
  for (std::size_t i = unit_half - 1; i-- > 0;) {
    seq.push_back(seq[i].reciprocal());
  }
  return seq;
}

std::vector<FareyInterval> farey_intervals(unsigned K) {
  const std::vector<Fraction> seq = extended_farey_sequence(K);
  std::vector<FareyInterval> out;
  out.reserve(seq.size() - 1);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    out.push_back(FareyInterval{seq[i], seq[i + 1]});
  }
  return out;
}

IntervalPartition partition_intervals(unsigned K, unsigned L) {
  if (L < 1 || L > 2 * K) {
    throw std::invalid_argument("partition_intervals: L must lie in [1, 2K]");
  }
  IntervalPartition part;
  part.threshold = L;
  for (const FareyInterval& iv : farey_intervals(K)) {
    if (iv.num_sum() >= L) {
      part.u_set.push_back(iv);
    } else {
      part.v_set.push_back(iv);
    }
  }
  return part;
}

}  // namespace zcnoma
