// The sign-vector family, its tensor-power images and their exact geometry.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "borsuk/exactnum.hpp"
#include "borsuk/params.hpp"

namespace borsuk {

/// A +-1 vector with first entry +1 and zero coordinate sum (length n = 0 mod 4).
class SignVector {
 public:
  /// Validates every invariant; throws std::invalid_argument on violation.
  explicit SignVector(std::vector<std::int8_t> entries);

  /// Builds from the set of positions holding -1 (bit i = coordinate i).
  static SignVector from_minus_mask(std::uint64_t mask, std::size_t n);

  std::size_t size() const { return entries_.size(); }
  std::span<const std::int8_t> entries() const { return entries_; }
  std::int8_t operator[](std::size_t i) const { return entries_[i]; }
  /// Bit i set iff entry i is -1.
  std::uint64_t minus_mask() const { return minus_mask_; }

  friend bool operator==(const SignVector& x, const SignVector& y) { return x.entries_ == y.entries_; }

 private:
  std::vector<std::int8_t> entries_;
  std::uint64_t minus_mask_ = 0;
};

inline constexpr std::size_t kSigmaEnumerationCap = 24;

/// Every element of the family, lexicographic with +1 ordered before -1.
std::vector<SignVector> gen_sigma(std::size_t n, std::size_t cap = kSigmaEnumerationCap);

std::int64_t inner_sign(const SignVector& x, const SignVector& y);

/// Inner product from minus masks of two length-n vectors.
inline std::int64_t inner_from_masks(std::uint64_t x, std::uint64_t y, std::size_t n) {
  return static_cast<std::int64_t>(n) - 2 * __builtin_popcountll(x ^ y);
}

/// Image of a sign vector under the order-2k tensor map with tail weight
/// sqrt(2k a^{2k-1}). The n^{2k} word coordinates are never stored.
struct TensorImage {
  TensorImage(SignVector base, unsigned k, std::uint64_t a);

  SignVector base;
  unsigned k;
  std::uint64_t a;
  BigInt tail_weight_sq;  // 2k a^{2k-1}

  std::size_t n() const { return base.size(); }
  /// n^{2k} + 2k a^{2k-1} n.
  BigInt norm_sq() const;
};

/// t^{2k} + 2k a^{2k-1} t.
BigInt star_polynomial(std::int64_t t, unsigned k, std::uint64_t a);

/// Exact inner product of two images through the scalar-product identity.
BigInt star_inner(const TensorImage& x, const TensorImage& y);

inline constexpr std::uint64_t kMaterializeCap = 1'000'000;

/// Explicit coordinates: all 2k-fold products over words in lexicographic
/// order, then the weighted tail.
std::vector<double> star_materialize(const TensorImage& x);

struct GeometryReport {
  BigInt diam_sq;  // 2 n^{2k} + 4k a^{2k-1} n + (4k-2) a^{2k}
  BigInt rho_sq;   // n^{2k} + 2k a^{2k-1} n
  BigRational r_prime_sq;
  BigRational scale_sq;  // 1 / diam_sq
  Real lift_height_sq;   // r^2 - r'^2
  std::optional<BigRational> lift_height_sq_exact;
  /// True when a >= n: no pair of distinct vectors has inner product -a.
  bool degenerate = false;
  /// Squared diameter over achievable inner products; equals diam_sq unless degenerate.
  BigInt attained_diam_sq;
  std::int64_t attained_inner = 0;
};

/// Throws "compression failed" if r'^2 > r^2.
GeometryReport geometry(const ParamSet& ps);

/// Geometry for explicit (n, k, a) and squared radius.
GeometryReport geometry(std::uint64_t n, unsigned k, std::uint64_t a, const Real& rsq,
                        const std::optional<BigRational>& rsq_exact);

/// Point on the radius-r sphere in dimension d: scaled image, lift height, zeros.
std::vector<double> embed(const BigInt& d, const GeometryReport& g, const TensorImage& x);

struct DiameterScan {
  BigInt diam_sq;  // exact max of |x - y|^2 over pairs, 0 for fewer than two points
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Exhaustive pair scan with exact integers. `threads` workers reduce deterministically.
DiameterScan diameter_scan(std::span<const TensorImage> points, unsigned threads = 1);

/// Writes the point set with its "# borsuk-omega" header.
void write_point_set(std::ostream& out, const ParamSet& ps, const GeometryReport& g,
                     std::span<const TensorImage> points);

}  // namespace borsuk
