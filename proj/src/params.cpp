#include "borsuk/params.hpp"

#include <stdexcept>

namespace borsuk {

namespace {

constexpr unsigned kMaxK = 1u << 30;

unsigned checked_k(const BigInt& k) {
  if (k > kMaxK) throw std::domain_error("radius too close to one half: k exceeds " + std::to_string(kMaxK));
  return static_cast<unsigned>(k.get_ui());
}

Real pow_int(const Real& base, unsigned e) {
  using boost::multiprecision::pow;
  return pow(base, e);
}

}  // namespace

std::string to_string(Mode mode) {
  return mode == Mode::FixedRadius ? "fixed_radius" : "shrinking_radius";
}

unsigned solve_k(const BigRational& rsq) {
  BigRational excess = rsq - BigRational(1, 4);
  if (sgn(excess) <= 0) throw std::invalid_argument("radius not above one half");
  // rsq > 1/4 + 1/(8k)  <=>  k > 1/(8 * excess)
  BigRational bound = 1 / (8 * excess);
  BigInt k;
  mpz_fdiv_q(k.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  k += 1;
  return checked_k(k);
}

unsigned solve_k(const Real& rsq) {
  Real excess = rsq - Real(1) / 4;
  if (excess <= 0) throw std::invalid_argument("radius not above one half");
  unsigned k = checked_k(floor_to_int(1 / (8 * excess)) + 1);
  // Guard against rounding at the boundary of the strict inequality.
  while (k > 1 && rsq > Real(2 * (k - 1) + 1) / (8 * Real(k - 1))) --k;
  while (!(rsq > Real(2 * k + 1) / (8 * Real(k)))) ++k;
  return k;
}

Real u_eval(const Real& a0, unsigned k) {
  if (k == 0) throw std::invalid_argument("u_eval needs k >= 1");
  if (a0 < 0 || a0 > 2) throw std::invalid_argument("u_eval: a0 outside [0, 2]");
  Real q = a0 / 2;
  Real odd = pow_int(q, 2 * k - 1);
  Real even = odd * q;
  return (1 + 2 * Real(k) * odd) / (2 + 4 * Real(k) * odd + (4 * Real(k) - 2) * even);
}

BigRational u_eval(const BigRational& a0, unsigned k) {
  if (k == 0) throw std::invalid_argument("u_eval needs k >= 1");
  if (sgn(a0) < 0 || a0 > 2) throw std::invalid_argument("u_eval: a0 outside [0, 2]");
  BigRational q = a0 / 2;
  BigRational odd = 1;
  for (unsigned i = 0; i + 1 < 2 * k; ++i) odd *= q;
  BigRational even = odd * q;
  BigRational r = (1 + 2 * k * odd) / (2 + 4 * k * odd + (4 * k - 2) * even);
  r.canonicalize();
  return r;
}

Real solve_a0(const Real& rsq, unsigned k, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("solve_a0 needs tol > 0");
  const Real at_two = Real(2 * k + 1) / (8 * Real(k));
  if (!(rsq > at_two && rsq < Real(1) / 2)) throw std::domain_error("no root in (0,2)");

  // u is strictly decreasing: u(lo) > rsq >= u(hi) throughout.
  Real lo = 0;
  Real hi = 2;
  const Real tolerance = tol;
  for (int iter = 0; iter < 1000; ++iter) {
    Real mid = (lo + hi) / 2;
    if (u_eval(mid, k) > rsq) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (rsq - u_eval(hi, k) <= tolerance && hi - lo <= tolerance) break;
  }
  return hi;
}

std::uint64_t choose_n(const BigInt& d, unsigned k) {
  if (k == 0) throw std::invalid_argument("choose_n needs k >= 1");
  if (sgn(d) <= 0) throw std::domain_error("no admissible n");
  BigInt root;
  BigInt below = d - 1;
  mpz_root(root.get_mpz_t(), below.get_mpz_t(), 2 * k);  // largest m with m^{2k} <= d-1
  BigInt n = root - (root % 4);
  if (n < 4) throw std::domain_error("no admissible n");

  BigInt check;
  mpz_pow_ui(check.get_mpz_t(), n.get_mpz_t(), 2 * k);
  if (check >= d) throw std::logic_error("choose_n: n^{2k} >= d");
  BigInt next = n + 4;
  mpz_pow_ui(check.get_mpz_t(), next.get_mpz_t(), 2 * k);
  if (check < d) throw std::logic_error("choose_n: n not maximal");
  BigInt plus5 = n + 5;  // d^{1/(2k)} - 5 <= n
  mpz_pow_ui(check.get_mpz_t(), plus5.get_mpz_t(), 2 * k);
  if (check < d) throw std::logic_error("choose_n: lower bound on n violated");
  return to_u64(n);
}

std::pair<std::uint64_t, std::uint64_t> choose_a(const Real& a0, std::uint64_t n) {
  if (n == 0 || n % 4 != 0) throw std::invalid_argument("choose_a: n must be a positive multiple of 4");
  if (a0 < 0 || a0 >= 2) throw std::invalid_argument("choose_a: a0 outside [0, 2)");
  BigInt target = ceil_to_int(a0 * Real(static_cast<double>(n)) / 2);
  std::uint64_t a = std::max<std::uint64_t>(4, to_u64(target));
  a += (4 - a % 4) % 4;
  for (; a <= 8 * n; a += 4) {
    std::uint64_t p = (a + n) / 4;
    if (is_prime(p)) return {a, p};
  }
  throw std::domain_error("prime gap anomaly: no prime (a+n)/4 with a <= 8n");
}

ParamSet plan_fixed(const BigRational& r, const BigInt& d, double tol) {
  if (r <= BigRational(1, 2)) throw std::invalid_argument("radius not above one half");
  ParamSet ps;
  ps.mode = Mode::FixedRadius;
  ps.r = to_real(r);
  BigRational rsq = r * r;
  rsq.canonicalize();
  ps.rsq_exact = rsq;
  ps.rsq = to_real(rsq);
  ps.k = solve_k(rsq);
  // For r^2 >= 1/2 = u(0) any a works; a0 = 0 gives the smallest admissible p.
  ps.a0 = rsq >= BigRational(1, 2) ? Real(0) : solve_a0(ps.rsq, ps.k, tol);
  ps.d = d;
  ps.n = choose_n(d, ps.k);
  std::tie(ps.a, ps.p) = choose_a(ps.a0, ps.n);
  if (ps.n + ps.a != 4 * ps.p) throw std::logic_error("plan_fixed: n - 4p != -a");
  return ps;
}

Real phi_of(const BigInt& d, double c_phi) {
  using boost::multiprecision::log;
  Real ln_d = ln(d);
  return Real(c_phi) * log(ln_d) / ln_d;
}

bool ShrinkingPlan::all_pass() const { return params.has_value() && first_failure() == nullptr; }

const InequalityCheck* ShrinkingPlan::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

ShrinkingPlan shrinking_pipeline(const BigInt& d, double c_phi) {
  ShrinkingPlan plan;
  if (!(c_phi > 0)) throw std::invalid_argument("c_phi must be positive");
  // lnln d > 0 needs d > e^e.
  if (d < 16) {
    plan.checks.push_back({"phi_positive", Real(0), Real(0), false});
    return plan;
  }
  Real phi = phi_of(d, c_phi);
  plan.checks.push_back({"phi_positive", phi, Real(0), phi > 0});

  ParamSet ps;
  ps.mode = Mode::ShrinkingRadius;
  ps.phi = phi;
  ps.c_phi = Real(c_phi);
  ps.r = Real(1) / 2 + phi;
  ps.rsq = ps.r * ps.r;
  ps.k = static_cast<unsigned>(ceil_to_int(1 / phi).get_ui());
  ps.a0 = 2 - phi / 2;
  ps.d = d;

  bool a0_ok = ps.a0 > 0;
  plan.checks.push_back({"a0_in_open_interval", ps.a0, Real(0), a0_ok});
  if (!a0_ok) return plan;

  BigInt smallest;
  mpz_ui_pow_ui(smallest.get_mpz_t(), 4, 2 * ps.k);
  bool n_ok = d > smallest;
  plan.checks.push_back({"admissible_n", to_real(d), to_real(smallest), n_ok});
  if (!n_ok) return plan;
  ps.n = choose_n(d, ps.k);
  std::tie(ps.a, ps.p) = choose_a(ps.a0, ps.n);

  Real k = ps.k;
  Real n = static_cast<double>(ps.n);
  Real u = u_eval(ps.a0, ps.k);
  Real k_side = (2 * k + 1) / (8 * k);
  plan.checks.push_back({"k_condition", k_side, ps.rsq, k_side < ps.rsq});
  plan.checks.push_back({"u_a0_below_rsq", u, ps.rsq, u < ps.rsq});
  plan.checks.push_back({"a_below_n", Real(static_cast<double>(ps.a)), n, ps.a < ps.n});
  Real p_cap = n / 2 - phi * n / 20;
  Real p_val = static_cast<double>(ps.p);
  plan.checks.push_back({"p_upper_bound", p_val, p_cap, p_val <= p_cap});
  plan.params = std::move(ps);
  return plan;
}

ParamSet plan_shrinking(const BigInt& d, double c_phi, double /*tol*/) {
  ShrinkingPlan plan = shrinking_pipeline(d, c_phi);
  if (const InequalityCheck* failed = plan.first_failure()) {
    throw std::domain_error("d below threshold d0: " + failed->name);
  }
  return *plan.params;
}

}  // namespace borsuk
