#include "vwp/domain.hpp"

#include <cmath>

#include "vwp/real.hpp"

namespace vwp {

void DomainInput::validate() const {
  if (E.size() != F.size()) throw InvalidParameters("E and F must have equal length");
  if (E.empty()) throw InvalidParameters("domain input needs at least one index");
}

ConvergenceVerdict check_lemma4(const DomainInput& d) {
  d.validate();
  const size_t s = d.s();
  ConvergenceVerdict v;
  for (size_t r = 1; r <= s; ++r) {
    Rational expr = d.E[r - 1] + d.F[r - 1] + 1;
    for (size_t j = r + 1; j <= s; ++j) {
      Rational zmax = d.F[j - 1];
      Rational other = d.E[j - 1] + d.F[j - 1] + 1;
      if (other > zmax) zmax = other;
      expr += zmax;
    }
    v.add("bed[r=" + std::to_string(r) + "]", expr < 0,
          "E_r+F_r+1+max(Z_{r+1}+...+Z_s) = " + to_string(expr) + " (need < 0)");
  }
  return v;
}

ConvergenceVerdict check_multizeta_domain(const std::vector<Rational>& s) {
  if (s.empty()) throw InvalidParameters("multizeta domain needs d >= 1");
  const size_t d = s.size();
  ConvergenceVerdict v;
  for (size_t r = 1; r <= d; ++r) {
    Rational suffix = 0;
    for (size_t i = r; i <= d; ++i) suffix += s[i - 1];
    Rational bound = Rational(static_cast<long>(d - r + 1));
    v.add("domain[r=" + std::to_string(r) + "]", suffix > bound,
          "s_" + std::to_string(r) + "+...+s_" + std::to_string(d) + " = " + to_string(suffix) +
              " (need > " + to_string(bound) + ")");
  }
  return v;
}

namespace {

void probe_rec(const std::vector<double>& E, const std::vector<double>& F, size_t j,
               size_t s, int budget, double prefix_total, double prod, double& acc) {
  // level j uses (k_j+1)^E_j * (prefix_total + k_j + 1)^F_j
  for (int k = 0; k <= budget; ++k) {
    double total = prefix_total + k;
    double f = std::pow(k + 1.0, E[j]) * std::pow(total + 1.0, F[j]);
    double val = prod * f;
    if (j + 1 == s)
      acc += val;
    else
      probe_rec(E, F, j + 1, s, budget - k, total, val, acc);
  }
}

}  // namespace

std::vector<double> divergence_probe_sums(const DomainInput& d, size_t r,
                                          const std::vector<int>& caps) {
  d.validate();
  if (r < 1 || r > d.s()) throw InvalidParameters("probe index r out of range");
  std::vector<double> Ed, Fd;
  for (size_t j = r; j <= d.s(); ++j) {
    Ed.push_back(Real(d.E[j - 1], 64).to_double());
    Fd.push_back(Real(d.F[j - 1], 64).to_double());
  }
  std::vector<double> out;
  for (int cap : caps) {
    double acc = 0;
    probe_rec(Ed, Fd, 0, Ed.size(), cap, 0.0, 1.0, acc);
    out.push_back(acc);
  }
  return out;
}

}  // namespace vwp
