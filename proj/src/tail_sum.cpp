#include "vwp/tail_sum.hpp"

#include <algorithm>
#include <cmath>

namespace vwp {
namespace detail {

namespace {

// Solves M u = rhs in place by Gaussian elimination with partial pivoting.
// Returns false on a (numerically) singular pivot.
bool solve_dense(std::vector<std::vector<Real>>& M, std::vector<Real>& rhs,
                 std::vector<Real>& u) {
  const size_t n = M.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r)
      if (abs(M[r][col]) > abs(M[piv][col])) piv = r;
    if (M[piv][col].is_zero()) return false;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (M[r][col].is_zero()) continue;
      Real f = M[r][col] / M[col][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  u.assign(n, Real(rhs.empty() ? 64 : rhs[0].prec()));
  for (size_t ri = n; ri-- > 0;) {
    Real acc = rhs[ri];
    for (size_t c = ri + 1; c < n; ++c) acc -= M[ri][c] * u[c];
    u[ri] = acc / M[ri][ri];
  }
  return true;
}

}  // namespace

namespace {

// One windowed fit: solves for S_inf and the tail coefficients from the
// square system at `ks`, then reports the worst residual on the last
// `holdouts` samples (kept out of the solve).
std::optional<std::pair<Real, Real>> fit_window(const std::vector<Real>& psums,
                                                const std::vector<long>& ks, const Real& theta,
                                                int b, int logpow, int holdouts,
                                                mpfr_prec_t prec) {
  const int ncols = 1 + b * (logpow + 1);
  const int nsamples = static_cast<int>(ks.size());
  if (nsamples != ncols + holdouts) return std::nullopt;

  // basis values per sample: K^-(theta+i) * log(K)^j
  std::vector<std::vector<Real>> phi(static_cast<size_t>(nsamples));
  for (int r = 0; r < nsamples; ++r) {
    Real K(ks[static_cast<size_t>(r)], prec);
    Real lnK = log(K);
    Real p = pow(K, -Real(theta));
    Real invK = Real(1L, prec) / K;
    auto& row = phi[static_cast<size_t>(r)];
    row.reserve(static_cast<size_t>(ncols - 1));
    for (int i = 0; i < b; ++i) {
      Real lg(1L, prec);
      for (int j = 0; j <= logpow; ++j) {
        row.push_back(p * lg);
        lg *= lnK;
      }
      p *= invK;
    }
  }

  // column scaling keeps pivots O(1)
  std::vector<Real> colscale(static_cast<size_t>(ncols - 1), Real(prec));
  for (int c = 0; c < ncols - 1; ++c) {
    Real mx(0L, prec);
    for (int r = 0; r < nsamples; ++r)
      if (abs(phi[static_cast<size_t>(r)][static_cast<size_t>(c)]) > mx)
        mx = abs(phi[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    if (mx.is_zero()) mx = Real(1L, prec);
    colscale[static_cast<size_t>(c)] = mx;
  }

  const int neq = ncols;
  std::vector<std::vector<Real>> M(static_cast<size_t>(neq));
  std::vector<Real> rhs(static_cast<size_t>(neq), Real(prec));
  for (int r = 0; r < neq; ++r) {
    auto& row = M[static_cast<size_t>(r)];
    row.assign(static_cast<size_t>(ncols), Real(prec));
    row[0] = Real(1L, prec);
    for (int c = 0; c < ncols - 1; ++c)
      row[static_cast<size_t>(c + 1)] = -(phi[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                                          colscale[static_cast<size_t>(c)]);
    rhs[static_cast<size_t>(r)] = psums[static_cast<size_t>(ks[static_cast<size_t>(r)])];
  }

  std::vector<Real> u;
  if (!solve_dense(M, rhs, u)) return std::nullopt;

  Real worst(0L, prec);
  for (int h = 0; h < holdouts; ++h) {
    int r = neq + h;
    Real pred = u[0];
    for (int c = 0; c < ncols - 1; ++c)
      pred -= (u[static_cast<size_t>(c + 1)] / colscale[static_cast<size_t>(c)]) *
              phi[static_cast<size_t>(r)][static_cast<size_t>(c)];
    Real res = abs(pred - psums[static_cast<size_t>(ks[static_cast<size_t>(r)])]);
    if (res > worst) worst = res;
  }
  return std::make_pair(u[0], worst);
}

std::vector<long> window_samples(long lo, long hi, int nsamples, bool even_only) {
  if (even_only) lo -= lo % 2;
  long stride = (hi - lo) / nsamples;
  if (even_only) stride -= stride % 2;
  if (stride < (even_only ? 2 : 1)) return {};
  std::vector<long> ks(static_cast<size_t>(nsamples));
  for (int r = 0; r < nsamples; ++r) ks[static_cast<size_t>(r)] = lo + stride * r;
  return ks;
}

}  // namespace

TailFitter::TailFitter(Real theta, bool even_samples_only, mpfr_prec_t prec, int basis,
                       int max_log_power)
    : theta_(std::move(theta)),
      even_only_(even_samples_only),
      prec_(prec),
      basis_(basis),
      max_log_power_(std::min(max_log_power, 2)) {}

std::optional<std::pair<Real, Real>> TailFitter::attempt(const std::vector<Real>& psums,
                                                         long terms_summed, double tol) {
  if (terms_summed < 64) return std::nullopt;
  const int holdouts = 2;

  for (int logpow = 0; logpow <= max_log_power_; ++logpow) {
    int b = basis_;
    if (logpow == 1) b = std::max(10, (2 * basis_) / 3);
    if (logpow == 2) b = std::max(8, basis_ / 2);
    const int nsamples = 1 + b * (logpow + 1) + holdouts;

    std::vector<long> ks1 =
        window_samples((2 * terms_summed) / 5, terms_summed, nsamples, even_only_);
    if (ks1.empty() || ks1.back() > terms_summed) continue;
    auto fit1 = fit_window(psums, ks1, theta_, b, logpow, holdouts, prec_);
    if (!fit1) continue;

    auto validated = [&](const Real& against) -> std::optional<Real> {
      Real drift = abs(fit1->first - against);
      Real err = fit1->second * 8L;
      Real drift_bound = drift * 4L;
      if (drift_bound > err) err = drift_bound;
      // rounding floor from the accumulation itself
      Real floor_err = abs(fit1->first);
      mpfr_mul_2si(floor_err.raw(), floor_err.raw(), -(prec_ - 16), MPFR_RNDN);
      if (err < floor_err) err = floor_err;
      if (err < tol) return err;
      return std::nullopt;
    };

    // cheap first: validate against the previous attempt's estimate
    if (prev_[logpow]) {
      if (auto err = validated(*prev_[logpow])) {
        prev_[logpow] = fit1->first;
        return std::make_pair(fit1->first, *err);
      }
    }
    // otherwise buy an explicit control window at this length
    std::vector<long> ks2 =
        window_samples(terms_summed / 5, (2 * terms_summed) / 5, nsamples, even_only_);
    std::optional<std::pair<Real, Real>> fit2;
    if (!ks2.empty() && ks2.back() <= terms_summed)
      fit2 = fit_window(psums, ks2, theta_, b, logpow, holdouts, prec_);
    prev_[logpow] = fit1->first;
    if (!fit2) continue;
    if (auto err = validated(fit2->first))
      return std::make_pair(fit1->first, *err);
  }
  return std::nullopt;
}

}  // namespace detail

SumOutcome sum_power_tail_series(const std::function<Real(long)>& term,
                                 const TailSumOptions& opt) {
  const mpfr_prec_t P = opt.prec;
  const double theta_d = std::max(opt.theta.to_double(), 1e-6);

  Real S(0L, P);
  std::vector<Real> psums;
  long store_cap = opt.first_checkpoint;
  for (int i = 1; i < opt.checkpoints; ++i) store_cap *= 2;
  store_cap = std::min(store_cap, opt.max_terms);
  psums.reserve(static_cast<size_t>(std::min<long>(store_cap + 1, 1 << 15)));
  psums.push_back(S);

  long next_checkpoint = opt.allow_fit ? opt.first_checkpoint : -1;
  int stop_streak = 0;
  detail::TailFitter fitter(opt.theta, opt.alternating, P, opt.fit_basis,
                            opt.fit_max_log_power);

  for (long k = 0; k < opt.max_terms; ++k) {
    Real t = term(k);
    if (!t.is_finite()) throw Error("NonFiniteTerm", "series term is not finite");
    S += t;
    if (k + 1 <= store_cap) psums.push_back(S);

    // direct stopping rule: |t| < tol*theta/(k+1), with a small-k guard and
    // a consecutive-hit requirement so isolated tiny terms do not stop us
    double at = abs(t).to_double();
    bool hit = at < opt.tol * theta_d / static_cast<double>(k + 1) && at < opt.tol / 2;
    stop_streak = hit ? stop_streak + 1 : 0;
    if (k >= 16 && stop_streak >= 3) {
      Real err = abs(t) * (k + 1);
      err /= opt.theta;
      Real alt_floor = abs(t);
      if (err < alt_floor) err = alt_floor;
      return {S, err, k + 1, SumMethod::direct};
    }

    if (next_checkpoint > 0 && k + 1 == next_checkpoint) {
      auto fit = fitter.attempt(psums, k + 1, opt.tol);
      if (fit) return {fit->first, fit->second, k + 1, SumMethod::tail_fit};
      next_checkpoint = (2 * next_checkpoint <= store_cap) ? 2 * next_checkpoint : -1;
    }
  }
  throw MaxTermsExceeded("series did not reach tolerance within max_terms");
}

SumOutcome sum_geometric_series(const std::function<Real(long)>& term, double abs_z,
                                double tol, mpfr_prec_t prec, long max_terms) {
  if (abs_z >= 1.0) throw InvalidParameters("sum_geometric_series requires |z| < 1");
  Real S(0L, prec);
  if (abs_z == 0.0) {
    Real t = term(0);
    S += t;
    return {S, Real(0L, prec), 1, SumMethod::direct};
  }
  const double q = 0.5 * (1.0 + abs_z);
  const double tail_factor = q / (1.0 - q);
  double prev = 0;
  int ratio_ok = 0;
  for (long k = 0; k < max_terms; ++k) {
    Real t = term(k);
    if (!t.is_finite()) throw Error("NonFiniteTerm", "series term is not finite");
    S += t;
    double at = abs(t).to_double();
    if (k > 0) ratio_ok = (at <= q * prev || at == 0.0) ? ratio_ok + 1 : 0;
    prev = at;
    if (k >= 8 && ratio_ok >= 3 && at * tail_factor < tol) {
      Real err(at * tail_factor, prec);
      return {S, err, k + 1, SumMethod::direct};
    }
  }
  throw MaxTermsExceeded("series did not reach tolerance within max_terms");
}

}  // namespace vwp
