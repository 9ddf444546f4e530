#include "borsuk/construction.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "borsuk/parallel.hpp"

namespace borsuk {

namespace {

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt ipow(std::int64_t base, unsigned long e) { return ipow(BigInt(static_cast<long>(base)), e); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SignVector::SignVector(std::vector<std::int8_t> entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("sign vector length must be a positive multiple of 4");
  if (n > 64) throw std::invalid_argument("sign vector length above 64");
  if (entries_[0] != 1) throw std::invalid_argument("sign vector must start with +1");
  long sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i] != 1 && entries_[i] != -1) throw std::invalid_argument("sign vector entries must be +-1");
    sum += entries_[i];
    if (entries_[i] == -1) minus_mask_ |= std::uint64_t{1} << i;
  }
  if (sum != 0) throw std::invalid_argument("sign vector must have zero sum");
}

SignVector SignVector::from_minus_mask(std::uint64_t mask, std::size_t n) {
  std::vector<std::int8_t> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = (mask >> i & 1) ? -1 : 1;
  return SignVector(std::move(e));
}

std::vector<SignVector> gen_sigma(std::size_t n, std::size_t cap) {
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("n must be a positive multiple of 4");
  if (n > cap) throw std::invalid_argument("enumeration too large");
  // Choose the n/2 - 1 further +1 positions among 1..n-1 in lexicographic order.
  const std::size_t choose = n / 2 - 1;
  std::vector<std::size_t> pos(choose);
  for (std::size_t i = 0; i < choose; ++i) pos[i] = i + 1;
  std::vector<SignVector> out;
  out.reserve(to_u64(binomial(n - 1, choose)));
  while (true) {
    std::vector<std::int8_t> e(n, -1);
    e[0] = 1;
    for (std::size_t p : pos) e[p] = 1;
    out.emplace_back(std::move(e));
    // Advance to the next combination.
    std::size_t i = choose;
    while (i > 0 && pos[i - 1] == n - 1 - (choose - i)) --i;
    if (i == 0) break;
    ++pos[i - 1];
    for (std::size_t j = i; j < choose; ++j) pos[j] = pos[j - 1] + 1;
  }
  return out;
}

std::int64_t inner_sign(const SignVector& x, const SignVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("inner_sign: length mismatch");
  return inner_from_masks(x.minus_mask(), y.minus_mask(), x.size());
}

TensorImage::TensorImage(SignVector base_, unsigned k_, std::uint64_t a_)
    : base(std::move(base_)), k(k_), a(a_) {
  if (k == 0) throw std::invalid_argument("tensor image needs k >= 1");
  if (a == 0) throw std::invalid_argument("tensor image needs a >= 1");
  tail_weight_sq = 2 * BigInt(k) * ipow(BigInt(static_cast<unsigned long>(a)), 2 * k - 1);
}

BigInt TensorImage::norm_sq() const {
  return ipow(static_cast<std::int64_t>(n()), 2 * k) + tail_weight_sq * static_cast<unsigned long>(n());
}

BigInt star_polynomial(std::int64_t t, unsigned k, std::uint64_t a) {
  BigInt weight = 2 * BigInt(k) * ipow(BigInt(static_cast<unsigned long>(a)), 2 * k - 1);
  return ipow(t, 2 * k) + weight * static_cast<long>(t);
}

BigInt star_inner(const TensorImage& x, const TensorImage& y) {
  if (x.n() != y.n() || x.k != y.k || x.a != y.a) throw std::invalid_argument("star_inner: parameter mismatch");
  std::int64_t t = inner_sign(x.base, y.base);
  return ipow(t, 2 * x.k) + x.tail_weight_sq * static_cast<long>(t);
}

std::vector<double> star_materialize(const TensorImage& x) {
  const std::size_t n = x.n();
  const unsigned len = 2 * x.k;
  BigInt words = ipow(static_cast<std::int64_t>(n), len);
  if (words + n > kMaterializeCap) throw std::invalid_argument("materialization too large");
  const std::size_t w = to_u64(words);
  std::vector<double> out(w + n);
  // Word index in base n, most significant letter first: lexicographic order.
  std::vector<std::size_t> word(len, 0);
  for (std::size_t idx = 0; idx < w; ++idx) {
    int prod = 1;
    for (std::size_t letter : word) prod *= x.base[letter];
    out[idx] = prod;
    for (std::size_t pos = len; pos-- > 0;) {
      if (++word[pos] < n) break;
      word[pos] = 0;
    }
  }
  const double weight = std::sqrt(x.tail_weight_sq.get_d());
  for (std::size_t i = 0; i < n; ++i) out[w + i] = weight * x.base[i];
  return out;
}

GeometryReport geometry(std::uint64_t n, unsigned k, std::uint64_t a, const Real& rsq,
                        const std::optional<BigRational>& rsq_exact) {
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("geometry: n must be a positive multiple of 4");
  if (k == 0 || a == 0) throw std::invalid_argument("geometry: k and a must be positive");
  GeometryReport g;
  const BigInt nn = static_cast<unsigned long>(n);
  const BigInt aa = static_cast<unsigned long>(a);
  const BigInt n2k = ipow(nn, 2 * k);
  const BigInt a2k1 = ipow(aa, 2 * k - 1);
  const BigInt a2k = a2k1 * aa;
  g.diam_sq = 2 * n2k + 4 * BigInt(k) * a2k1 * nn + (4 * BigInt(k) - 2) * a2k;
  g.rho_sq = n2k + 2 * BigInt(k) * a2k1 * nn;
  g.r_prime_sq = BigRational(g.rho_sq, g.diam_sq);
  g.r_prime_sq.canonicalize();
  g.scale_sq = BigRational(BigInt(1), g.diam_sq);
  g.scale_sq.canonicalize();

  if (rsq_exact) {
    if (g.r_prime_sq > *rsq_exact) throw std::domain_error("compression failed: r'^2 > r^2");
    BigRational lift = *rsq_exact - g.r_prime_sq;
    lift.canonicalize();
    g.lift_height_sq_exact = lift;
    g.lift_height_sq = to_real(lift);
  } else {
    Real lift = rsq - to_real(g.r_prime_sq);
    if (lift < 0) throw std::domain_error("compression failed: r'^2 > r^2");
    g.lift_height_sq = lift;
  }

  // Distinct pairs realize exactly the multiples of 4 in [-(n-4), n-4].
  g.degenerate = a >= n;
  const std::int64_t ni = static_cast<std::int64_t>(n);
  bool first = true;
  BigInt best;
  for (std::int64_t t = -(ni - 4); t <= ni - 4; t += 4) {
    BigInt h = star_polynomial(t, k, a);
    if (first || h < best) {
      best = h;
      g.attained_inner = t;
      first = false;
    }
  }
  g.attained_diam_sq = 2 * g.rho_sq - 2 * best;
  return g;
}

GeometryReport geometry(const ParamSet& ps) { return geometry(ps.n, ps.k, ps.a, ps.rsq, ps.rsq_exact); }

std::vector<double> embed(const BigInt& d, const GeometryReport& g, const TensorImage& x) {
  BigInt needed = ipow(static_cast<std::int64_t>(x.n()), 2 * x.k) + static_cast<unsigned long>(x.n()) + 1;
  if (d < needed) throw std::invalid_argument("ambient dimension insufficient");
  if (d > BigInt(10 * kMaterializeCap)) throw std::invalid_argument("materialization too large");
  std::vector<double> coords = star_materialize(x);
  const double s = std::sqrt(g.scale_sq.get_d());
  for (double& c : coords) c *= s;
  using boost::multiprecision::sqrt;
  coords.push_back(static_cast<double>(sqrt(g.lift_height_sq)));
  coords.resize(to_u64(d), 0.0);
  return coords;
}

DiameterScan diameter_scan(std::span<const TensorImage> points, unsigned threads) {
  DiameterScan result;
  result.diam_sq = 0;
  const std::size_t count = points.size();
  if (count < 2) return result;
  const auto& ref = points[0];
  for (const auto& p : points) {
    if (p.n() != ref.n() || p.k != ref.k || p.a != ref.a) throw std::invalid_argument("diameter_scan: mixed parameters");
  }
  const BigInt norm = ref.norm_sq();
  // All images share a norm, so distance depends on the inner-sign value alone.
  std::map<std::int64_t, BigInt> dist_by_t;
  for (std::int64_t t = -static_cast<std::int64_t>(ref.n()); t <= static_cast<std::int64_t>(ref.n()); t += 4) {
    dist_by_t[t] = 2 * norm - 2 * star_polynomial(t, ref.k, ref.a);
  }

  struct Partial {
    BigInt best = -1;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
  };
  std::vector<Partial> partials(std::max(1u, threads));
  parallel_chunks(count, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Partial& part = partials[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        std::int64_t t = inner_sign(points[i].base, points[j].base);
        const BigInt& dist = dist_by_t.at(t);
        if (dist > part.best) {
          part.best = dist;
          part.pairs.clear();
        }
        if (dist == part.best) part.pairs.emplace_back(i, j);
      }
    }
  });
  for (const auto& part : partials) {
    if (part.best > result.diam_sq) {
      result.diam_sq = part.best;
      result.pairs.clear();
    }
    if (part.best == result.diam_sq && part.best >= 0) {
      result.pairs.insert(result.pairs.end(), part.pairs.begin(), part.pairs.end());
    }
  }
  return result;
}

void write_point_set(std::ostream& out, const ParamSet& ps, const GeometryReport& g,
                     std::span<const TensorImage> points) {
  out << "# borsuk-omega d=" << to_string(ps.d) << " r=" << ps.r.str(17, std::ios_base::fmtflags(0))
      << " n=" << ps.n << " k=" << ps.k << " a=" << ps.a << " p=" << ps.p << '\n';
  for (const auto& x : points) {
    std::vector<double> coords = embed(ps.d, g, x);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) out << ' ';
      out << format_double(coords[i]);
    }
    out << '\n';
  }
}

}  // namespace borsuk
