#include "ngonstab/beta_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ngonstab/parallel.hpp"
#include "ngonstab/reduction.hpp"

namespace ngonstab {

namespace {

constexpr double kReducibleTolerance = 1e-9;
constexpr double kOperatorBetaLimit = 1.5;
constexpr double kCommonBetaTolerance = 1e-12;

}  // namespace

MonodromySpectrum beta_monodromy(double beta, double e, double tol, double eps_uc) {
  if (!(beta >= 0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
  return classify(fundamental_solution(beta_system(beta, e), tol).monodromy, eps_uc);
}

double beta_from_mass(double beta_l) {
  if (!(beta_l >= 0.0 && beta_l <= 9.0)) {
    throw std::invalid_argument("beta_L must lie in [0, 9]");
  }
  return std::sqrt(9.0 - beta_l) / 2.0;
}

std::string to_string(CertificateRoute r) {
  switch (r) {
    case CertificateRoute::Scalar:
      return "scalar";
    case CertificateRoute::Beta:
      return "beta";
    case CertificateRoute::NotReducible:
      return "not-reducible";
  }
  return "?";
}

std::string to_string(RegionSide s) { return s == RegionSide::Forward ? "U1" : "U2"; }

EffectiveBeta effective_beta(int n, int l) {
  const BlockParameters p = block_parameters(n, l);
  EffectiveBeta out;
  out.n = n;
  out.l = l;
  out.coupling = p.S;
  if (l == 1) {
    out.mean_shift = *p.z / p.lambda;
    out.beta_eff = 0;
    out.delta = 1.0 + out.mean_shift;
    out.reducible = std::abs(out.mean_shift - 0.5) <= kReducibleTolerance;
    out.route = CertificateRoute::Scalar;
    return out;
  }
  out.mean_shift = (p.a + p.b - 2.0 * p.S) / (2.0 * p.lambda);
  out.beta_eff = (p.b - p.a) / (2.0 * p.lambda);
  out.reducible = std::abs(out.mean_shift - 0.5) <= kReducibleTolerance;
  out.route = out.reducible ? CertificateRoute::Beta : CertificateRoute::NotReducible;
  return out;
}

RegionCertificate default_certificate() {
  RegionCertificate cert;
  for (int k = 0; k <= 9; ++k) cert.checkpoints.push_back({1.36, k / 10.0, std::nullopt});
  cert.clearance = segment_clearance(cert);
  return cert;
}

double forward_bound(double beta0, double e0, double e) {
  return beta0 * (1.0 + e) / (1.0 + 3.0 * e - 2.0 * e0);
}

double backward_bound(double beta0, double e0, double e) {
  return beta0 * (1.0 - e) / (1.0 - 3.0 * e + 2.0 * e0);
}

RegionMembership region_membership(const RegionCertificate& cert, double beta, double e) {
  RegionMembership out;
  if (!(beta >= 0) || !(e >= 0 && e < 1)) return out;
  for (std::size_t i = 0; i < cert.checkpoints.size(); ++i) {
    const Checkpoint& c = cert.checkpoints[i];
    auto consider = [&](RegionSide side, double bound) {
      if (!out.nearest || bound > out.nearest->bound) {
        out.nearest = RegionWitness{i, c.beta0, c.e0, side, bound};
      }
    };
    if (e >= c.e0) consider(RegionSide::Forward, forward_bound(c.beta0, c.e0, e));
    if (e <= c.e0) consider(RegionSide::Backward, backward_bound(c.beta0, c.e0, e));
  }
  out.member = out.nearest && beta < out.nearest->bound;
  return out;
}

double segment_clearance(const RegionCertificate& cert) {
  if (cert.checkpoints.empty()) throw std::invalid_argument("segment_clearance: no checkpoints");
  const double beta0 = cert.checkpoints.front().beta0;
  if (!(beta0 > 0)) throw std::invalid_argument("segment_clearance: beta0 must be positive");
  std::vector<double> ladder;
  for (const Checkpoint& c : cert.checkpoints) {
    if (std::abs(c.beta0 - beta0) > kCommonBetaTolerance) {
      throw std::invalid_argument("segment_clearance: checkpoints do not share one beta0");
    }
    if (!(c.e0 >= 0 && c.e0 < 1)) {
      throw std::invalid_argument("segment_clearance: e0 outside [0, 1)");
    }
    ladder.push_back(c.e0);
  }
  std::sort(ladder.begin(), ladder.end());
  if (ladder.front() != 0.0) throw std::invalid_argument("segment_clearance: ladder must start at e0 = 0");
  if (std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end()) {
    throw std::invalid_argument("segment_clearance: repeated e0");
  }

  // Between neighbours a < b the forward bound from a decreases and the
  // backward bound from b increases; farther checkpoints are dominated, so
  // the infimum is where the two cross: e* = (a + b) / (2 + a - b).
  double clearance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
    const double a = ladder[k];
    const double b = ladder[k + 1];
    const double crossing = (a + b) / (2.0 + a - b);
    clearance = std::min(clearance, forward_bound(beta0, a, crossing));
  }
  // Tail [e_m, 1): the forward bound decreases to beta0 / (2 - e_m).
  clearance = std::min(clearance, beta0 / (2.0 - ladder.back()));
  return clearance;
}

std::vector<double> verify_checkpoints(RegionCertificate& cert, double tol) {
  const auto spectra = parallel_map(cert.checkpoints.size(), [&](std::size_t i) {
    const Checkpoint& c = cert.checkpoints[i];
    return beta_monodromy(c.beta0, c.e0, tol);
  });
  std::vector<double> margins;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    Checkpoint& c = cert.checkpoints[i];
    if (spectra[i].classification != SpectralClass::Hyperbolic) {
      throw CertificationFailure("checkpoint (" + std::to_string(c.beta0) + ", " +
                                     std::to_string(c.e0) + ") is " +
                                     to_string(spectra[i].classification) + ", not Hyperbolic",
                                 c.beta0, c.e0);
    }
    c.margin = spectra[i].unit_margin;
    margins.push_back(spectra[i].unit_margin);
  }
  return margins;
}

std::vector<ChainEntry> certification_chain(const std::vector<int>& ns, double clearance) {
  std::vector<ChainEntry> chain;
  for (int n : ns) {
    for (int l = 1; l <= essential_mode_count(n); ++l) {
      ChainEntry entry;
      entry.block = effective_beta(n, l);
      const EffectiveBeta& b = entry.block;
      switch (b.route) {
        case CertificateRoute::Scalar:
          entry.covered = b.delta > 1.0;
          break;
        case CertificateRoute::Beta:
          entry.covered = b.coupling >= 0 && b.beta_eff <= kOperatorBetaLimit &&
                          b.beta_eff < clearance;
          break;
        case CertificateRoute::NotReducible:
          entry.covered = false;
          break;
      }
      chain.push_back(entry);
    }
  }
  return chain;
}

}  // namespace ngonstab
