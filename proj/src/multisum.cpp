#include "vwp/multisum.hpp"

#include <algorithm>
#include <cmath>

#include "vwp/domain.hpp"
#include "vwp/numeric_core.hpp"

namespace vwp {

namespace {

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

void check_denominators(const std::vector<Rational>& den, const char* where) {
  for (const auto& x : den)
    if (is_nonpositive_integer(x))
      throw InvalidParameters(std::string(where) + ": denominator parameter " + to_string(x) +
                              " is a non-positive integer");
}

// Per-level state for the simplex walk: entry[K] caches the tot-factor
// product prod (x)_K / prod (y)_K so descending into a level at running
// total K costs O(1) amortized.
struct LevelWalk {
  const SumLevel* def = nullptr;
  std::vector<Real> entry;
  mpfr_prec_t P = 64;

  void reset(const SumLevel& d, mpfr_prec_t prec) {
    def = &d;
    P = prec;
    entry.clear();
    entry.push_back(Real(1L, P));
  }
  const Real& at(long K) {
    while (static_cast<long>(entry.size()) <= K) {
      long Kp = static_cast<long>(entry.size()) - 1;
      Real next = entry.back();
      for (const auto& x : def->tot_num) next *= Rational(x + Kp);
      for (const auto& y : def->tot_den) next /= Rational(y + Kp);
      entry.push_back(std::move(next));
    }
    return entry[static_cast<size_t>(K)];
  }
};

// Lexicographic walk over the simplex K_s <= cap accumulating per-shell
// totals; deterministic order makes results bit-reproducible.
class SimplexWalker {
 public:
  SimplexWalker(const MultisumSpec& spec, mpfr_prec_t P) : spec_(spec), P_(P) {
    walks_.resize(spec.s());
    for (size_t j = 0; j < spec.s(); ++j) walks_[j].reset(spec.levels[j], P);
  }

  // shells[t] = sum of all terms with total degree exactly t, t = 0..cap
  std::vector<Real> shells(long cap, long* leaves) {
    std::vector<Real> out(static_cast<size_t>(cap) + 1, Real(0L, P_));
    leaves_ = 0;
    descend(0, 0, walks_[0].at(0), cap, out);
    if (leaves) *leaves = leaves_;
    return out;
  }

 private:
  void descend(size_t j, long K_prev, Real v, long cap, std::vector<Real>& out) {
    const SumLevel& L = spec_.levels[j];
    const bool leaf = (j + 1 == spec_.s());
    for (long kj = 0;; ++kj) {
      long Kj = K_prev + kj;
      if (leaf) {
        out[static_cast<size_t>(Kj)] += v;
        ++leaves_;
      } else {
        descend(j + 1, Kj, v * walks_[j + 1].at(Kj), cap, out);
      }
      if (Kj + 1 > cap) break;
      v *= spec_.z;
      for (const auto& x : L.own_num) v *= Rational(x + kj);
      for (const auto& y : L.own_den) v /= Rational(y + kj);
      v /= (kj + 1);
      for (const auto& x : L.tot_num) v *= Rational(x + Kj);
      for (const auto& y : L.tot_den) v /= Rational(y + Kj);
    }
  }

  const MultisumSpec& spec_;
  mpfr_prec_t P_;
  std::vector<LevelWalk> walks_;
  long leaves_ = 0;
};

}  // namespace

void MultisumSpec::validate() const {
  if (levels.empty()) throw InvalidParameters("multisum needs at least one index");
  if (abs_q(z) > 1) throw InvalidParameters("multisum argument must satisfy |z| <= 1");
  for (const auto& L : levels) {
    check_denominators(L.own_den, "multisum");
    check_denominators(L.tot_den, "multisum");
  }
}

MultisumResult eval_multisum(const MultisumSpec& spec, const PrecisionConfig& cfg) {
  spec.validate();
  cfg.validate();
  const mpfr_prec_t P = static_cast<mpfr_prec_t>(cfg.working_bits + 320);
  const double tol = cfg.target_abs_tol;

  SimplexWalker walker(spec, P);
  detail::TailFitter fitter(Real(1L, 64), spec.z == -1, P, 24, 2);
  long cap = 32;
  long leaves = 0;
  for (;;) {
    std::vector<Real> shells = walker.shells(cap, &leaves);
    std::vector<Real> prefix(shells.size() + 1, Real(0L, P));
    for (size_t t = 0; t < shells.size(); ++t) prefix[t + 1] = prefix[t] + shells[t];

    // doubling policy: stable successive estimates and a negligible last shell
    double step = abs(prefix[static_cast<size_t>(cap) + 1] -
                      prefix[static_cast<size_t>(cap / 2) + 1])
                      .to_double();
    double last = abs(shells.back()).to_double();
    if (step < tol / 2 && last < tol / 2) {
      Real err(step + last, P);
      return {prefix.back(), err, leaves, SumMethod::direct};
    }

    if (cap >= 256) {
      // prefix[K] means "sum over shells < K", matching the fitter's
      // partial-sum convention
      auto fit = fitter.attempt(prefix, cap, tol);
      if (fit) return {fit->first, fit->second, leaves, SumMethod::tail_fit};
    }
    if (2 * cap > cfg.simplex_cap)
      throw MaxTermsExceeded("multisum did not reach tolerance within simplex_cap");
    cap *= 2;
  }
}

namespace {

MultisumSpec make_feven_sum(const Rational& a, const std::vector<Rational>& b,
                            const std::vector<Rational>& c) {
  if (b.size() != c.size() || b.size() < 2)
    throw InvalidParameters("even part needs s+1 >= 2 entries in b and c");
  const size_t s = b.size() - 1;
  MultisumSpec spec;
  spec.z = 1;
  for (size_t j = 1; j <= s; ++j) {
    SumLevel L;
    L.own_num.push_back(1 + a - b[j - 1] - c[j - 1]);
    L.tot_num.push_back(b[j]);
    L.tot_num.push_back(c[j]);
    L.tot_den.push_back(1 + a - b[j - 1]);
    L.tot_den.push_back(1 + a - c[j - 1]);
    spec.levels.push_back(std::move(L));
  }
  return spec;
}

// Exact-rational mirror of the simplex walk, used for the terminating sum.
struct ExactWalker {
  const MultisumSpec& spec;
  long cap;
  std::vector<std::vector<Rational>> entries;  // per level, entry[K]
  Rational total = 0;

  explicit ExactWalker(const MultisumSpec& sp, long c) : spec(sp), cap(c) {
    entries.resize(sp.s());
    for (auto& e : entries) e.push_back(Rational(1));
  }

  const Rational& entry(size_t j, long K) {
    auto& e = entries[j];
    while (static_cast<long>(e.size()) <= K) {
      long Kp = static_cast<long>(e.size()) - 1;
      Rational next = e.back();
      for (const auto& x : spec.levels[j].tot_num) next *= (x + Kp);
      for (const auto& y : spec.levels[j].tot_den) {
        Rational f = y + Kp;
        if (f == 0)
          throw ZeroDenominator("denominator Pochhammer (" + to_string(y) + ")_K vanishes");
        next /= f;
      }
      e.push_back(std::move(next));
    }
    return e[static_cast<size_t>(K)];
  }

  void run(size_t j, long K_prev, Rational v) {
    const SumLevel& L = spec.levels[j];
    const bool leaf = (j + 1 == spec.s());
    for (long kj = 0;; ++kj) {
      long Kj = K_prev + kj;
      if (leaf)
        total += v;
      else
        run(j + 1, Kj, v * entry(j + 1, Kj));
      if (Kj + 1 > cap) break;
      v *= spec.z;
      for (const auto& x : L.own_num) v *= (x + kj);
      for (const auto& y : L.own_den) {
        Rational f = y + kj;
        if (f == 0)
          throw ZeroDenominator("denominator Pochhammer (" + to_string(y) + ")_k vanishes");
        v /= f;
      }
      v /= (kj + 1);
      for (const auto& x : L.tot_num) v *= (x + Kj);
      for (const auto& y : L.tot_den) {
        Rational f = y + Kj;
        if (f == 0)
          throw ZeroDenominator("denominator Pochhammer (" + to_string(y) + ")_K vanishes");
        v /= f;
      }
    }
  }
};

}  // namespace

Rational eval_andrews_rhs_exact(long N, const Rational& a, const std::vector<Rational>& b,
                                const std::vector<Rational>& c) {
  if (N < 0) throw InvalidParameters("N must be >= 0");
  if (b.size() != c.size() || b.size() < 2)
    throw InvalidParameters("b and c must both have s+1 >= 2 entries");
  const Rational bl = b.back(), cl = c.back();

  // prefactor (1+a)_N (1+a-b_{s+1}-c_{s+1})_N / ((1+a-b_{s+1})_N (1+a-c_{s+1})_N)
  Rational den1 = pochhammer(1 + a - bl, N), den2 = pochhammer(1 + a - cl, N);
  if (den1 == 0 || den2 == 0) throw ZeroDenominator("Andrews prefactor denominator vanishes");
  Rational pre = pochhammer(1 + a, N) * pochhammer(1 + a - bl - cl, N) / (den1 * den2);

  // the (-N)_{K_s} / (b_{s+1}+c_{s+1}-a-N)_{K_s} pair rides on the last
  // level's running total; (-N + K) = 0 at K = N keeps the support finite
  MultisumSpec spec = make_feven_sum(a, b, c);
  spec.levels.back().tot_num.push_back(Rational(-N));
  spec.levels.back().tot_den.push_back(bl + cl - a - N);

  ExactWalker w(spec, N);
  w.run(0, 0, w.entry(0, 0));
  return pre * w.total;
}

namespace {

MultisumSpec make_fodd_sum(const Rational& a, const Rational& c0,
                           const std::vector<Rational>& b, const std::vector<Rational>& c) {
  if (b.size() != c.size() || b.empty())
    throw InvalidParameters("odd part needs s >= 1 entries in b and c");
  const size_t s = b.size();
  MultisumSpec spec;
  spec.z = 1;
  {
    SumLevel L;
    L.own_num.push_back(b[0]);
    L.own_num.push_back(c[0]);
    L.own_den.push_back(1 + a - c0);
    spec.levels.push_back(std::move(L));
  }
  for (size_t j = 2; j <= s; ++j) {
    SumLevel L;
    L.own_num.push_back(1 + a - b[j - 2] - c[j - 2]);
    L.tot_num.push_back(b[j - 1]);
    L.tot_num.push_back(c[j - 1]);
    L.tot_den.push_back(1 + a - b[j - 2]);
    L.tot_den.push_back(1 + a - c[j - 2]);
    spec.levels.push_back(std::move(L));
  }
  return spec;
}

MultisumSpec make_zlobin_sum(const JmParams& p) {
  MultisumSpec spec;
  spec.z = p.z;
  if (p.m == 1) {
    SumLevel L;
    L.own_num.push_back(p.a_at(1));
    L.tot_num.push_back(p.a_at(0));
    L.tot_den.push_back(p.b_at(1));
    spec.levels.push_back(std::move(L));
    return spec;
  }
  if (p.m % 2 == 0) {
    const int s = p.m / 2;
    for (int j = 1; j <= s; ++j) {
      SumLevel L;
      L.own_num.push_back(p.b_at(2 * s - 2 * j + 2) - p.a_at(2 * s - 2 * j + 2));
      L.tot_num.push_back(p.a_at(2 * s - 2 * j + 1));
      L.tot_num.push_back(p.a_at(2 * s - 2 * j));
      L.tot_den.push_back(p.b_at(2 * s - 2 * j + 1));
      L.tot_den.push_back(p.b_at(2 * s - 2 * j + 2));
      spec.levels.push_back(std::move(L));
    }
    return spec;
  }
  const int s = (p.m - 1) / 2;
  {
    SumLevel L;
    L.own_num.push_back(p.a_at(2 * s + 1));
    L.tot_num.push_back(p.a_at(2 * s));
    L.tot_den.push_back(p.b_at(2 * s + 1));
    spec.levels.push_back(std::move(L));
  }
  for (int j = 2; j <= s + 1; ++j) {
    SumLevel L;
    L.own_num.push_back(p.b_at(2 * s - 2 * j + 4) - p.a_at(2 * s - 2 * j + 4));
    L.tot_num.push_back(p.a_at(2 * s - 2 * j + 3));
    L.tot_num.push_back(p.a_at(2 * s - 2 * j + 2));
    L.tot_den.push_back(p.b_at(2 * s - 2 * j + 3));
    L.tot_den.push_back(p.b_at(2 * s - 2 * j + 4));
    spec.levels.push_back(std::move(L));
  }
  return spec;
}

}  // namespace

MultisumResult eval_feven_rhs(const Rational& a, const std::vector<Rational>& b,
                              const std::vector<Rational>& c, const PrecisionConfig& cfg) {
  Prop2Params pp{a, std::nullopt, b, c};
  ConvergenceVerdict v = check_prop2_conditions(Prop2Part::even, pp);
  if (!v.pass) {
    std::string which;
    for (const auto& f : v.failing()) which += (which.empty() ? "" : ", ") + f;
    throw ConditionViolated("even-part conditions violated: " + which);
  }
  return eval_multisum(make_feven_sum(a, b, c), cfg);
}

MultisumResult eval_fodd_rhs(const Rational& a, const Rational& c0,
                             const std::vector<Rational>& b, const std::vector<Rational>& c,
                             const PrecisionConfig& cfg) {
  Prop2Params pp{a, c0, b, c};
  ConvergenceVerdict v = check_prop2_conditions(Prop2Part::odd, pp);
  if (!v.pass) {
    std::string which;
    for (const auto& f : v.failing()) which += (which.empty() ? "" : ", ") + f;
    throw ConditionViolated("odd-part conditions violated: " + which);
  }
  return eval_multisum(make_fodd_sum(a, c0, b, c), cfg);
}

ConvergenceVerdict zlobin_z1_conditions(const JmParams& p) {
  DomainInput d;
  if (p.m == 1) {
    d.E.push_back(p.a_at(1) - 1);
    d.F.push_back(p.a_at(0) - p.b_at(1));
  } else if (p.m % 2 == 0) {
    const int s = p.m / 2;
    for (int j = 1; j <= s; ++j) {
      d.E.push_back(p.b_at(2 * s - 2 * j + 2) - p.a_at(2 * s - 2 * j + 2) - 1);
      d.F.push_back(p.a_at(2 * s - 2 * j) + p.a_at(2 * s - 2 * j + 1) -
                    p.b_at(2 * s - 2 * j + 1) - p.b_at(2 * s - 2 * j + 2));
    }
  } else {
    const int s = (p.m - 1) / 2;
    d.E.push_back(p.a_at(2 * s + 1) - 1);
    d.F.push_back(p.a_at(2 * s) - p.b_at(2 * s + 1));
    for (int j = 2; j <= s + 1; ++j) {
      d.E.push_back(p.b_at(2 * s - 2 * j + 4) - p.a_at(2 * s - 2 * j + 4) - 1);
      d.F.push_back(p.a_at(2 * s - 2 * j + 2) + p.a_at(2 * s - 2 * j + 3) -
                    p.b_at(2 * s - 2 * j + 3) - p.b_at(2 * s - 2 * j + 4));
    }
  }
  return check_lemma4(d);
}

MultisumResult eval_zlobin_multisum(const JmParams& p, const PrecisionConfig& cfg) {
  p.validate_shape();
  ConvergenceVerdict base = check_jm_conditions(p);
  if (!base.pass) throw ConditionViolated("integral parameter conditions fail");
  if (abs_q(p.z) == 1) {
    if (p.z == -1)
      throw ConditionViolated("multisum expansion is not available at z = -1");
    ConvergenceVerdict v = zlobin_z1_conditions(p);
    if (!v.pass) {
      std::string which;
      for (const auto& f : v.failing()) which += (which.empty() ? "" : ", ") + f;
      throw ConditionViolated("z=1 sum-set conditions violated (strict form): " + which);
    }
  }

  MultisumResult sum = eval_multisum(make_zlobin_sum(p), cfg);
  PrecisionConfig gcfg = cfg;
  gcfg.working_bits = cfg.working_bits + 288;
  Real pre(1L, static_cast<mpfr_prec_t>(cfg.working_bits + 320));
  for (int j = 1; j <= p.m; ++j) {
    pre *= gamma(p.a_at(j), gcfg);
    pre *= gamma(Rational(p.b_at(j) - p.a_at(j)), gcfg);
    pre /= gamma(p.b_at(j), gcfg);
  }
  sum.value *= pre;
  sum.error_estimate *= abs(pre);
  return sum;
}

int Prop2Params::s() const {
  return c0 ? static_cast<int>(b.size()) : static_cast<int>(b.size()) - 1;
}

void Prop2Params::validate(Prop2Part part) const {
  if (b.size() != c.size()) throw InvalidParameters("b and c must have equal length");
  if (part == Prop2Part::even) {
    if (c0) throw InvalidParameters("even part takes no c_0");
    if (b.size() < 2) throw InvalidParameters("even part needs s+1 >= 2 parameter pairs");
  } else {
    if (!c0) throw InvalidParameters("odd part requires c_0");
    if (b.empty()) throw InvalidParameters("odd part needs s >= 1 parameter pairs");
  }
}

namespace {

std::string pattern_str(const std::vector<int>& A) {
  std::string s = "(";
  for (size_t i = 0; i < A.size(); ++i) s += (i ? "," : "") + std::to_string(A[i]);
  return s + ")";
}

}  // namespace

ConvergenceVerdict check_prop2_conditions(Prop2Part part, const Prop2Params& pp) {
  pp.validate(part);
  ConvergenceVerdict v;
  const Rational& a = pp.a;
  const auto& b = pp.b;
  const auto& c = pp.c;

  if (part == Prop2Part::even) {
    const int s = static_cast<int>(b.size()) - 1;
    Rational lhs = Rational(2 * s + 1) * (a + 1);
    for (size_t j = 0; j < b.size(); ++j) lhs -= 2 * (b[j] + c[j]);
    v.add("cond1", lhs > 0, "(2s+1)(a+1)-2*sum(b+c) = " + to_string(lhs) + " (need > 0)");

    const Rational tail = 1 + a - b.back() - c.back();
    for (int r = 2; r <= s + 1; ++r) {
      const int nfree = s - r + 1;  // A_j for j = r..s
      for (long bits = 0; bits < (1L << nfree); ++bits) {
        Rational expr = tail;
        std::vector<int> A;
        for (int j = r; j <= s; ++j) {
          int Aj = 1 + ((bits >> (j - r)) & 1);
          A.push_back(Aj);
          expr += Aj * Rational(1 + a - b[static_cast<size_t>(j - 1)] -
                                c[static_cast<size_t>(j - 1)]);
        }
        std::string name = "cond2[r=" + std::to_string(r) +
                           (A.empty() ? "]" : ",A=" + pattern_str(A) + "]");
        v.add(name, expr > 0, to_string(expr) + " (need > 0)");
      }
    }
    return v;
  }

  const int s = static_cast<int>(b.size());
  const Rational& c0 = *pp.c0;
  Rational lhs = Rational(2 * s) * (a + 1) - 2 * c0;
  for (size_t j = 0; j < b.size(); ++j) lhs -= 2 * (b[j] + c[j]);
  v.add("cond1a", lhs > 0, "2s(a+1)-2c0-2*sum(b+c) = " + to_string(lhs) + " (need > 0)");

  const Rational tail = 1 + a - b.back() - c.back();
  for (int r = 2; r <= s; ++r) {
    const int nfree = (s - 1) - r + 1;  // A_j for j = r..s-1
    for (long bits = 0; bits < (1L << std::max(nfree, 0)); ++bits) {
      Rational expr = tail;
      std::vector<int> A;
      for (int j = r; j <= s - 1; ++j) {
        int Aj = 1 + ((bits >> (j - r)) & 1);
        A.push_back(Aj);
        expr += Aj * Rational(1 + a - b[static_cast<size_t>(j - 1)] -
                              c[static_cast<size_t>(j - 1)]);
      }
      std::string name = "cond2a[r=" + std::to_string(r) +
                         (A.empty() ? "]" : ",A=" + pattern_str(A) + "]");
      v.add(name, expr > 0, to_string(expr) + " (need > 0)");
    }
  }

  {
    const Rational head = 1 + a - c0 - b.front() - c.front();
    const int nfree = std::max(s - 2, 0);  // A_j for j = 2..s-1
    for (long bits = 0; bits < (1L << nfree); ++bits) {
      Rational expr = head;
      std::vector<int> A;
      for (int j = 2; j <= s - 1; ++j) {
        int Aj = 1 + ((bits >> (j - 2)) & 1);
        A.push_back(Aj);
        expr += Aj * Rational(1 + a - b[static_cast<size_t>(j - 1)] -
                              c[static_cast<size_t>(j - 1)]);
      }
      std::string name = "cond3a" + (A.empty() ? std::string() : "[A=" + pattern_str(A) + "]");
      v.add(name, expr > 0, to_string(expr) + " (need > 0)");
    }
  }
  return v;
}

}  // namespace vwp
