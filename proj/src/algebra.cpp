#include "borsuk/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "borsuk/parallel.hpp"

namespace borsuk {

namespace {

std::uint32_t mod_p(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inverse_mod(std::uint32_t v, std::uint32_t p) { return pow_mod(v, p - 2, p); }

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
}

void require_mask_width(std::size_t n) {
  if (n == 0 || n > kSigmaEnumerationCap) throw std::invalid_argument("polynomial dimension outside [1, 24]");
}

// Multiplies multilinear polynomials by linear forms in a dense 2^n workspace.
class MultilinearBuilder {
 public:
  MultilinearBuilder(std::size_t n, std::uint32_t p) : n_(n), p_(p), cur_(std::size_t{1} << n), next_(cur_.size()) {}

  ReducedPolynomial build(const SignVector& x, std::span<const std::uint32_t> roots) {
    std::vector<std::uint32_t> neg_x(n_);
    for (std::size_t j = 0; j < n_; ++j) neg_x[j] = mod_p(-static_cast<std::int64_t>(x[j]), p_);
    active_.assign(1, 0);
    cur_[0] = 1;
    for (std::uint32_t root : roots) {
      touched_.clear();
      for (std::uint32_t m : active_) {
        const std::uint64_t c = cur_[m];
        cur_[m] = 0;
        if (c == 0) continue;
        accumulate(m, c * root);
        for (std::size_t j = 0; j < n_; ++j) accumulate(m ^ (1u << j), c * neg_x[j]);
      }
      active_.clear();
      for (std::uint32_t m : touched_) {
        std::uint64_t v = next_[m] % p_;
        next_[m] = 0;
        seen_[m] = false;
        if (v) {
          cur_[m] = v;
          active_.push_back(m);
        }
      }
    }
    std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
    terms.reserve(active_.size());
    for (std::uint32_t m : active_) {
      terms.emplace_back(m, cur_[m]);
      cur_[m] = 0;
    }
    return ReducedPolynomial(n_, p_, std::move(terms));
  }

 private:
  void accumulate(std::uint32_t m, std::uint64_t v) {
    if (!seen_[m]) {
      seen_[m] = true;
      touched_.push_back(m);
    }
    next_[m] = (next_[m] + v) % p_;
  }

  std::size_t n_;
  std::uint32_t p_;
  std::vector<std::uint64_t> cur_;
  std::vector<std::uint64_t> next_;
  std::vector<bool> seen_ = std::vector<bool>(cur_.size(), false);
  std::vector<std::uint32_t> active_;
  std::vector<std::uint32_t> touched_;
};

// Row-echelon rank of a dense row-major matrix over GF(p), entries in [0, p).
template <class T>
std::size_t eliminate(std::vector<T>& m, std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::size_t rank = 0;
  const bool small = p < 256;
  // Barrett constant for 16-bit operands.
  const std::uint32_t barrett = static_cast<std::uint32_t>((std::uint64_t{1} << 24) / p + 1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) std::swap_ranges(m.begin() + pivot * cols, m.begin() + (pivot + 1) * cols, m.begin() + rank * cols);
    T* prow = &m[rank * cols];
    const std::uint32_t inv = inverse_mod(prow[c], p);
    for (std::size_t j = c; j < cols; ++j) prow[j] = static_cast<T>(std::uint64_t{prow[j]} * inv % p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      T* row = &m[r * cols];
      if (row[c] == 0) continue;
      const std::uint32_t f = p - row[c];  // row += f * prow
      if (small) {
        for (std::size_t j = c; j < cols; ++j) {
          std::uint32_t x = row[j] + f * prow[j];
          std::uint32_t q = (x * barrett) >> 24;
          std::uint32_t rem = x - q * p;
          row[j] = static_cast<T>(rem >= p ? rem - p : rem);
        }
      } else {
        for (std::size_t j = c; j < cols; ++j) {
          row[j] = static_cast<T>((std::uint64_t{row[j]} + std::uint64_t{f} * prow[j]) % p);
        }
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::uint32_t Polynomial::evaluate(std::span<const std::int64_t> y) const {
  if (y.size() != n) throw std::invalid_argument("Polynomial::evaluate: dimension mismatch");
  std::uint64_t sum = 0;
  for (const auto& [exps, coeff] : terms) {
    std::uint64_t term = coeff;
    for (std::size_t j = 0; j < n; ++j) {
      if (exps[j]) term = term * pow_mod(mod_p(y[j], p), exps[j], p) % p;
    }
    sum = (sum + term) % p;
  }
  return static_cast<std::uint32_t>(sum);
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t deg = 0;
  for (const auto& [exps, coeff] : terms) deg = std::max(deg, std::accumulate(exps.begin(), exps.end(), 0u));
  return deg;
}

ReducedPolynomial::ReducedPolynomial(std::size_t n, std::uint32_t p,
                                     std::vector<std::pair<std::uint32_t, std::uint64_t>> terms)
    : n_(n), p_(p) {
  std::sort(terms.begin(), terms.end());
  for (std::size_t i = 0; i < terms.size();) {
    std::uint64_t sum = 0;
    std::size_t j = i;
    for (; j < terms.size() && terms[j].first == terms[i].first; ++j) sum = (sum + terms[j].second % p) % p;
    if (sum) terms_.emplace_back(terms[i].first, static_cast<std::uint32_t>(sum));
    i = j;
  }
}

std::uint32_t ReducedPolynomial::degree() const {
  std::uint32_t deg = 0;
  for (const auto& [mask, c] : terms_) deg = std::max<std::uint32_t>(deg, __builtin_popcount(mask));
  return deg;
}

std::uint32_t ReducedPolynomial::evaluate(std::uint32_t minus_mask) const {
  std::uint64_t sum = 0;
  for (const auto& [mask, c] : terms_) sum += (__builtin_popcount(mask & minus_mask) & 1) ? p_ - c : c;
  return static_cast<std::uint32_t>(sum % p_);
}

std::vector<std::uint32_t> ReducedPolynomial::evaluate_on_cube() const {
  require_mask_width(n_);
  const std::size_t size = std::size_t{1} << n_;
  std::vector<std::int64_t> v(size, 0);
  for (const auto& [mask, c] : terms_) v[mask] = c;
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t i = 0; i < size; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        std::int64_t u = v[j], w = v[j + len];
        v[j] = u + w;
        v[j + len] = u - w;
      }
    }
  }
  std::vector<std::uint32_t> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = mod_p(v[i], p_);
  return out;
}

std::vector<std::uint32_t> residue_roots(std::uint32_t p, std::uint64_t a) {
  require_prime(p);
  const std::uint32_t excluded = mod_p(-static_cast<std::int64_t>(a % p), p);
  std::vector<std::uint32_t> roots;
  for (std::uint32_t i = 0; i < p; ++i) {
    if (i != excluded) roots.push_back(i);
  }
  return roots;
}

Polynomial build_P(const SignVector& x, std::uint32_t p, std::uint64_t a) {
  const std::size_t n = x.size();
  Polynomial poly;
  poly.n = n;
  poly.p = p;
  poly.terms[std::vector<std::uint32_t>(n, 0)] = 1;
  for (std::uint32_t root : residue_roots(p, a)) {
    // Multiply by (root - sum_j x_j y_j).
    std::map<std::vector<std::uint32_t>, std::uint32_t> next;
    auto add = [&](std::vector<std::uint32_t> exps, std::uint64_t c) {
      std::uint32_t& slot = next[std::move(exps)];
      slot = static_cast<std::uint32_t>((slot + c) % p);
    };
    for (const auto& [exps, coeff] : poly.terms) {
      add(exps, std::uint64_t{coeff} * root);
      for (std::size_t j = 0; j < n; ++j) {
        auto e = exps;
        ++e[j];
        add(std::move(e), std::uint64_t{coeff} * mod_p(-x[j], p));
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    poly.terms = std::move(next);
  }
  return poly;
}

ReducedPolynomial reduce_multilinear(const Polynomial& poly) {
  require_mask_width(poly.n);
  std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
  terms.reserve(poly.terms.size());
  for (const auto& [exps, coeff] : poly.terms) {
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < poly.n; ++j) {
      if (exps[j] & 1) mask |= 1u << j;
    }
    terms.emplace_back(mask, coeff);
  }
  return ReducedPolynomial(poly.n, poly.p, std::move(terms));
}

ReducedPolynomial build_reduced_P(const SignVector& x, std::uint32_t p, std::uint64_t a) {
  require_mask_width(x.size());
  auto roots = residue_roots(p, a);
  MultilinearBuilder builder(x.size(), p);
  return builder.build(x, roots);
}

std::uint32_t residue_product(std::int64_t t, std::uint32_t p, std::uint64_t a) {
  std::uint64_t prod = 1;
  const std::uint32_t tm = mod_p(t, p);
  for (std::uint32_t root : residue_roots(p, a)) prod = prod * mod_p(static_cast<std::int64_t>(root) - tm, p) % p;
  return static_cast<std::uint32_t>(prod);
}

PropertyResult property_check(const SignVector& x, const SignVector& y, std::uint32_t p, std::uint64_t a) {
  PropertyResult r;
  const std::int64_t t = inner_sign(x, y);
  r.congruent = mod_p(t + static_cast<std::int64_t>(a % p), p) == 0;
  r.nonzero = build_reduced_P(x, p, a).evaluate(static_cast<std::uint32_t>(y.minus_mask())) != 0;
  return r;
}

PropertyScan property_scan(std::size_t n, std::uint32_t p, std::uint64_t a, unsigned threads) {
  const auto sigma = gen_sigma(n);
  const auto roots = residue_roots(p, a);
  std::vector<PropertyScan> partial(std::max(1u, threads));
  parallel_chunks(sigma.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    MultilinearBuilder builder(n, p);
    PropertyScan& acc = partial[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const auto values = builder.build(sigma[i], roots).evaluate_on_cube();
      for (const auto& y : sigma) {
        const std::int64_t t = inner_sign(sigma[i], y);
        const bool congruent = mod_p(t + static_cast<std::int64_t>(a % p), p) == 0;
        const bool nonzero = values[y.minus_mask()] != 0;
        ++acc.pairs;
        acc.congruent_pairs += congruent;
        acc.mismatches += congruent != nonzero;
      }
    }
  });
  PropertyScan total;
  for (const auto& s : partial) {
    total.pairs += s.pairs;
    total.congruent_pairs += s.congruent_pairs;
    total.mismatches += s.mismatches;
  }
  return total;
}

BigInt dimension_bound(std::uint64_t n, std::uint64_t p) { return binomial_tail_sum(n, p); }

bool AvoidingFamily::is_avoiding() const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (inner_sign(members[i], members[j]) == forbidden) return false;
    }
  }
  return true;
}

AvoidingFamily greedy_avoiding_family(std::span<const SignVector> sigma, std::int64_t forbidden,
                                      std::optional<std::uint64_t> seed) {
  std::vector<std::size_t> order(sigma.size());
  std::iota(order.begin(), order.end(), 0);
  if (seed) {
    std::mt19937_64 rng(*seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  AvoidingFamily family;
  family.forbidden = forbidden;
  std::vector<bool> blocked(sigma.size(), false);
  for (std::size_t idx : order) {
    if (blocked[idx]) continue;
    family.members.push_back(sigma[idx]);
    const std::uint64_t mx = sigma[idx].minus_mask();
    const std::size_t n = sigma[idx].size();
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      if (inner_from_masks(mx, sigma[j].minus_mask(), n) == forbidden) blocked[j] = true;
    }
  }
  return family;
}

bool independence_verify(const AvoidingFamily& q, std::uint32_t p, std::uint64_t a) {
  if (q.members.empty()) return true;
  const std::size_t n = q.members.front().size();
  if (n + a != 4 * static_cast<std::uint64_t>(p)) throw std::invalid_argument("construction relation violated");
  // Every entry of M depends only on the inner product of the two vectors.
  std::map<std::int64_t, std::uint32_t> value_at;
  for (std::int64_t t = -static_cast<std::int64_t>(n); t <= static_cast<std::int64_t>(n); t += 2) {
    value_at[t] = residue_product(t, p, a);
  }
  for (std::size_t i = 0; i < q.members.size(); ++i) {
    for (std::size_t j = 0; j < q.members.size(); ++j) {
      const std::uint32_t entry = value_at.at(inner_sign(q.members[i], q.members[j]));
      if (i == j ? entry == 0 : entry != 0) return false;
    }
  }
  return true;
}

std::size_t rank_gfp(std::span<const ReducedPolynomial> rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  require_prime(p);
  const std::size_t n = rows.front().n();
  std::vector<std::uint32_t> masks;
  for (const auto& r : rows) {
    if (r.n() != n || r.p() != p) throw std::invalid_argument("rank_gfp: rows must share (n, p)");
    for (const auto& [mask, c] : r.terms()) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  const std::size_t cols = masks.size();
  if (cols == 0) return 0;
  auto column_of = [&](std::uint32_t mask) {
    return static_cast<std::size_t>(std::lower_bound(masks.begin(), masks.end(), mask) - masks.begin());
  };
  auto fill = [&](auto& matrix) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [mask, c] : rows[r].terms()) matrix[r * cols + column_of(mask)] = static_cast<std::remove_reference_t<decltype(matrix[0])>>(c);
    }
  };
  if (p < 256) {
    std::vector<std::uint16_t> m(rows.size() * cols, 0);
    fill(m);
    return eliminate(m, rows.size(), cols, p);
  }
  std::vector<std::uint32_t> m(rows.size() * cols, 0);
  fill(m);
  return eliminate(m, rows.size(), cols, p);
}

BitGraph::BitGraph(std::size_t v) : vertices(v), words((v + 63) / 64), adjacency(v * ((v + 63) / 64), 0) {}

void BitGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) throw std::invalid_argument("BitGraph: self loop");
  adjacency[u * words + v / 64] |= std::uint64_t{1} << (v % 64);
  adjacency[v * words + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t BitGraph::degree(std::size_t u) const {
  std::size_t d = 0;
  for (std::size_t w = 0; w < words; ++w) d += __builtin_popcountll(adjacency[u * words + w]);
  return d;
}

namespace {

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const BitGraph& g) : g_(g), W_(g.words) {}

  IndependenceResult run() {
    IndependenceResult result;
    const std::size_t n = g_.vertices;
    if (n == 0) return result;

    seed_incumbent();
    result.root_bound = spectral_bound();
    stop_at_ = result.root_bound.value_or(n);

    std::vector<std::uint64_t> all(W_, 0);
    for (std::size_t v = 0; v < n; ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
    if (best_.size() < stop_at_) expand(all);

    result.size = best_.size();
    result.witness = best_;
    std::sort(result.witness.begin(), result.witness.end());
    result.nodes = nodes_;
    return result;
  }

 private:
  const std::uint64_t* row(std::size_t v) const { return &g_.adjacency[v * W_]; }

  // Greedy passes (index order, then minimum residual degree) for a first incumbent.
  void seed_incumbent() {
    const std::size_t n = g_.vertices;
    std::vector<std::size_t> chosen;
    std::vector<bool> blocked(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      if (blocked[v]) continue;
      chosen.push_back(v);
      for (std::size_t u = 0; u < n; ++u) blocked[u] = blocked[u] || g_.adjacent(v, u);
    }
    best_ = chosen;

    chosen.clear();
    std::vector<bool> alive(n, true);
    std::size_t remaining = n;
    while (remaining > 0) {
      std::size_t pick = n, pick_deg = n + 1;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::size_t deg = 0;
        for (std::size_t u = 0; u < n; ++u) deg += alive[u] && g_.adjacent(v, u);
        if (deg < pick_deg) {
          pick = v;
          pick_deg = deg;
        }
      }
      chosen.push_back(pick);
      alive[pick] = false;
      --remaining;
      for (std::size_t u = 0; u < n; ++u) {
        if (alive[u] && g_.adjacent(pick, u)) {
          alive[u] = false;
          --remaining;
        }
      }
    }
    if (chosen.size() > best_.size()) best_ = chosen;
  }

  // Ratio bound n * (-lambda_min) / (deg - lambda_min); valid for regular graphs.
  std::optional<std::uint64_t> spectral_bound() const {
    const std::size_t n = g_.vertices;
    if (n > 3000) return std::nullopt;
    const std::size_t deg = g_.degree(0);
    for (std::size_t v = 1; v < n; ++v) {
      if (g_.degree(v) != deg) return std::nullopt;
    }
    if (deg == 0) return n;
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) adj(u, v) = g_.adjacent(u, v) ? 1.0 : 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj, Eigen::EigenvaluesOnly);
    const double lmin = solver.eigenvalues().minCoeff();
    const double bound = static_cast<double>(n) * (-lmin) / (static_cast<double>(deg) - lmin);
    return static_cast<std::uint64_t>(std::floor(bound + 1e-6));
  }

  void expand(std::vector<std::uint64_t> cand) {
    ++nodes_;
    // Greedy cover of the candidates by cliques; vertex order follows cover index.
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    std::vector<std::uint64_t> uncovered = cand;
    std::vector<std::uint64_t> q(W_);
    std::size_t cliques = 0;
    while (std::any_of(uncovered.begin(), uncovered.end(), [](std::uint64_t w) { return w != 0; })) {
      ++cliques;
      q = uncovered;
      for (std::size_t w = 0; w < W_; ++w) {
        while (q[w]) {
          const std::size_t v = w * 64 + __builtin_ctzll(q[w]);
          q[w] &= q[w] - 1;
          uncovered[v / 64] &= ~(std::uint64_t{1} << (v % 64));
          order.push_back(v);
          bound.push_back(cliques);
          const std::uint64_t* adj = row(v);
          for (std::size_t x = w; x < W_; ++x) q[x] &= adj[x];
        }
      }
    }

    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + bound[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current_.push_back(v);
      std::vector<std::uint64_t> next(W_);
      const std::uint64_t* adj = row(v);
      bool empty = true;
      for (std::size_t w = 0; w < W_; ++w) {
        next[w] = cand[w] & ~adj[w];
        empty = empty && next[w] == 0;
      }
      next[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      empty = std::all_of(next.begin(), next.end(), [](std::uint64_t w) { return w == 0; });
      if (empty) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      if (best_.size() >= stop_at_) return;
      cand[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }
  }

  const BitGraph& g_;
  const std::size_t W_;
  std::vector<std::size_t> best_;
  std::vector<std::size_t> current_;
  std::uint64_t nodes_ = 0;
  std::size_t stop_at_ = 0;
};

}  // namespace

IndependenceResult maximum_independent_set(const BitGraph& g) { return IndependentSetSearch(g).run(); }

std::uint64_t max_avoiding_exact(std::size_t n, std::int64_t forbidden) {
  if (n > kExactSearchCap) throw std::invalid_argument("exact search infeasible");
  const auto sigma = gen_sigma(n);
  BitGraph g(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.size(); ++j) {
      if (inner_sign(sigma[i], sigma[j]) == forbidden) g.add_edge(i, j);
    }
  }
  return maximum_independent_set(g).size;
}

LemmaReport lemma_bound_check(std::uint64_t n, std::uint64_t p, std::uint64_t a, const LemmaOptions& opts) {
  if (n + a != 4 * p) throw std::invalid_argument("construction relation violated");
  if (p > 0xffffffffu) throw std::invalid_argument("p too large");
  const std::uint32_t prime = static_cast<std::uint32_t>(p);
  require_prime(prime);
  if (n > kSigmaEnumerationCap) throw std::invalid_argument("enumeration too large");

  LemmaReport rep;
  rep.n = n;
  rep.p = p;
  rep.a = a;
  rep.bound = dimension_bound(n, p);
  rep.sigma_size = binomial(n - 1, n / 2 - 1);
  rep.vacuous = rep.bound >= rep.sigma_size;
  rep.zero_residue_excluded = a % p == 0;

  // Distinct pairs take every multiple of 4 in [-(n-4), n-4].
  rep.residue_exclusion_holds = true;
  const std::int64_t ni = static_cast<std::int64_t>(n), pi = static_cast<std::int64_t>(p);
  for (std::int64_t t = -(ni - 4); t <= ni - 4; t += 4) {
    for (std::int64_t j : {1, 2, 3, 5, 6, 7}) {
      if (t == ni - j * pi) rep.residue_exclusion_holds = false;
    }
  }

  const auto sigma = gen_sigma(n);
  const std::int64_t forbidden = -static_cast<std::int64_t>(a);
  bool ok = true;
  if (n <= kExactSearchCap) {
    rep.mis_exact = max_avoiding_exact(n, forbidden);
    ok = ok && BigInt(static_cast<unsigned long>(*rep.mis_exact)) <= rep.bound;
  }

  const BigInt cells = rep.sigma_size * rep.bound;
  if (cells <= BigInt(static_cast<unsigned long>(opts.rank_cell_cap))) {
    std::vector<ReducedPolynomial> rows;
    rows.reserve(sigma.size());
    const auto roots = residue_roots(prime, a);
    MultilinearBuilder builder(n, prime);
    for (const auto& x : sigma) rows.push_back(builder.build(x, roots));
    rep.rank = rank_gfp(rows, prime);
    ok = ok && BigInt(static_cast<unsigned long>(*rep.rank)) <= rep.bound;
  }

  rep.families_certified = true;
  for (std::size_t s = 0; s < opts.family_seeds; ++s) {
    auto family = greedy_avoiding_family(sigma, forbidden, s == 0 ? std::nullopt : std::optional<std::uint64_t>(s));
    rep.family_sizes.push_back(family.members.size());
    rep.families_certified = rep.families_certified && independence_verify(family, prime, a);
    ok = ok && BigInt(static_cast<unsigned long>(family.members.size())) <= rep.bound;
  }
  // The evaluation-matrix argument needs the residue exclusion; without it only
  // the counting checks carry the verdict.
  rep.verdict = ok && (rep.families_certified || !rep.residue_exclusion_holds);
  return rep;
}

}  // namespace borsuk
