#include "ngonstab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ngonstab/eigen_qr.hpp"
#include "ngonstab/parallel.hpp"
#include "ngonstab/reduction.hpp"

namespace ngonstab {

namespace {

constexpr double kSymplecticWarning = 1e-6;
constexpr double kPairingThreshold = 1e-8;  // |mu| must exceed 1 + this to be paired
constexpr double kClusterRadius = 1e-6;
constexpr double kRankTolerance = 1e-6;

void check_square_even(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  if (m.rows() % 2 != 0 || m.rows() == 0) {
    throw std::invalid_argument("matrix must have positive even dimension");
  }
}

// Polishes one representative per conjugate pair and mirrors it, so the
// output stays exactly closed under conjugation.
std::vector<Complex> polished_eigenvalues(const Matrix& m, const std::vector<Complex>& raw) {
  std::vector<Complex> out;
  out.reserve(raw.size());
  for (const Complex& mu : raw) {
    if (mu.imag() < 0) continue;
    Complex v = polish_eigenpair(m, mu).value;
    if (mu.imag() == 0) {
      out.emplace_back(v.real(), 0.0);
    } else {
      if (!(v.imag() > 0)) v = mu;
      out.push_back(v);
      out.push_back(std::conj(v));
    }
  }
  return out;
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

std::vector<EigenCluster> cluster_eigenvalues(const Matrix& m, const std::vector<Complex>& ev) {
  const int count = static_cast<int>(ev.size());
  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const double radius =
          kClusterRadius * std::max({1.0, std::abs(ev[i]), std::abs(ev[j])});
      if (std::abs(ev[i] - ev[j]) <= radius) parent[find_root(parent, i)] = find_root(parent, j);
    }
  }

  std::vector<EigenCluster> clusters;
  std::vector<int> root_to_cluster(count, -1);
  for (int i = 0; i < count; ++i) {
    const int r = find_root(parent, i);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<int>(clusters.size());
      clusters.push_back({Complex(0, 0), 0, true});
    }
    EigenCluster& c = clusters[root_to_cluster[r]];
    c.center += ev[i];
    ++c.size;
  }

  const double tol = kRankTolerance * inf_norm(m);
  const Eigen::Index dim = m.rows();
  for (auto& c : clusters) {
    c.center /= static_cast<double>(c.size);
    if (c.size == 1) continue;
    const Eigen::MatrixXcd shifted =
        m.cast<Complex>() - c.center * Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
    const auto& sv = svd.singularValues();
    const int nullity = static_cast<int>((sv.array() <= tol).count());
    c.semisimple = nullity >= c.size;
  }
  return clusters;
}

}  // namespace

std::string to_string(SpectralClass c) {
  switch (c) {
    case SpectralClass::Hyperbolic:
      return "Hyperbolic";
    case SpectralClass::Elliptic:
      return "Elliptic";
    case SpectralClass::Mixed:
      return "Mixed";
    case SpectralClass::Degenerate:
      return "Degenerate";
    case SpectralClass::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::string to_string(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::SpectrallyUnstable:
      return "SpectrallyUnstable";
    case StabilityVerdict::Hyperbolic:
      return "Hyperbolic";
    case StabilityVerdict::Mixed:
      return "Mixed";
    case StabilityVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

bool MonodromySpectrum::has_off_circle(double eps_uc) const {
  return std::any_of(eigenvalues.begin(), eigenvalues.end(),
                     [&](Complex mu) { return std::abs(std::abs(mu) - 1.0) > 10.0 * eps_uc; });
}

bool MonodromySpectrum::has_on_circle(double eps_uc) const {
  return std::any_of(eigenvalues.begin(), eigenvalues.end(),
                     [&](Complex mu) { return std::abs(std::abs(mu) - 1.0) <= eps_uc; });
}

SymplecticSpectrum symplectic_eigenvalues(const Matrix& m) {
  check_square_even(m);
  SymplecticSpectrum out;
  out.input_symplectic_defect = symplectic_defect(m);
  out.symplectic_warning = out.input_symplectic_defect > kSymplecticWarning;

  std::vector<Complex> ev = polished_eigenvalues(m, qr_eigenvalues(m));
  const std::size_t count = ev.size();

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(ev[a]) > std::abs(ev[b]); });

  std::vector<bool> matched(count, false);
  for (std::size_t i : order) {
    if (matched[i] || std::abs(ev[i]) <= 1.0 + kPairingThreshold) continue;
    const Complex target = 1.0 / ev[i];
    std::size_t best = count;
    double best_distance = 0;
    for (std::size_t j = 0; j < count; ++j) {
      if (j == i || matched[j] || std::abs(ev[j]) > 1.0) continue;
      const double d = std::abs(ev[j] - target);
      if (best == count || d < best_distance) {
        best = j;
        best_distance = d;
      }
    }
    if (best == count) continue;
    out.raw_pairing_defect =
        std::max(out.raw_pairing_defect, best_distance / std::max(1.0, std::abs(target)));
    ev[best] = target;
    matched[i] = matched[best] = true;
  }

  out.eigenvalues = ev;
  out.residuals.reserve(count);
  for (const Complex& mu : ev) out.residuals.push_back(polish_eigenpair(m, mu, false).residual);
  return out;
}

double reciprocal_conjugate_defect(const std::vector<Complex>& eigenvalues) {
  // Greedy matching per map: each element must have a distinct image partner.
  auto defect_under = [&](auto map) {
    std::vector<bool> used(eigenvalues.size(), false);
    double worst = 0;
    for (const Complex& mu : eigenvalues) {
      const Complex image = map(mu);
      std::size_t best = eigenvalues.size();
      double best_d = 0;
      for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
        if (used[j]) continue;
        const double d = std::abs(eigenvalues[j] - image);
        if (best == eigenvalues.size() || d < best_d) {
          best = j;
          best_d = d;
        }
      }
      used[best] = true;
      worst = std::max(worst, best_d / std::abs(image));
    }
    return worst;
  };
  return std::max(defect_under([](Complex mu) { return 1.0 / mu; }),
                  defect_under([](Complex mu) { return std::conj(mu); }));
}

Complex eigenvalue_product(const std::vector<Complex>& eigenvalues) {
  Complex p(1, 0);
  for (const Complex& mu : eigenvalues) p *= mu;
  return p;
}

MonodromySpectrum classify(const Matrix& m, double eps_uc) {
  if (!(eps_uc > 0)) throw std::invalid_argument("eps_uc must be positive");
  const SymplecticSpectrum s = symplectic_eigenvalues(m);

  MonodromySpectrum out;
  out.eigenvalues = s.eigenvalues;
  out.residuals = s.residuals;
  out.raw_pairing_defect = s.raw_pairing_defect;
  out.symplectic_warning = s.symplectic_warning;
  out.clusters = cluster_eigenvalues(m, s.eigenvalues);

  std::vector<double> margins;
  margins.reserve(out.eigenvalues.size());
  for (const Complex& mu : out.eigenvalues) margins.push_back(std::abs(std::abs(mu) - 1.0));
  out.unit_margin = *std::min_element(margins.begin(), margins.end());

  const bool in_band = std::any_of(margins.begin(), margins.end(), [&](double x) {
    return x > eps_uc && x <= 10.0 * eps_uc;
  });
  const bool all_off =
      std::all_of(margins.begin(), margins.end(), [&](double x) { return x > 10.0 * eps_uc; });
  const bool all_on =
      std::all_of(margins.begin(), margins.end(), [&](double x) { return x <= eps_uc; });
  const bool defective_at_unit = std::any_of(out.clusters.begin(), out.clusters.end(), [&](const EigenCluster& c) {
    const bool near_pm1 = std::abs(c.center - 1.0) <= eps_uc || std::abs(c.center + 1.0) <= eps_uc;
    return near_pm1 && !c.semisimple;
  });
  const bool all_semisimple = std::all_of(out.clusters.begin(), out.clusters.end(),
                                          [](const EigenCluster& c) { return c.semisimple; });

  if (in_band) {
    out.classification = SpectralClass::Inconclusive;
  } else if (all_off) {
    out.classification = SpectralClass::Hyperbolic;
  } else if (defective_at_unit) {
    out.classification = SpectralClass::Degenerate;
  } else if (all_on && all_semisimple) {
    out.classification = SpectralClass::Elliptic;
  } else {
    out.classification = SpectralClass::Mixed;
  }
  return out;
}

StabilityVerdict stability_verdict(const std::vector<BlockSpectrum>& blocks, double eps_uc) {
  const bool all_hyperbolic = std::all_of(blocks.begin(), blocks.end(), [](const BlockSpectrum& b) {
    return b.spectrum.classification == SpectralClass::Hyperbolic;
  });
  if (!blocks.empty() && all_hyperbolic) return StabilityVerdict::Hyperbolic;
  const bool off = std::any_of(blocks.begin(), blocks.end(), [&](const BlockSpectrum& b) {
    return b.spectrum.has_off_circle(eps_uc);
  });
  if (!off) return StabilityVerdict::Inconclusive;
  const bool any_inconclusive = std::any_of(blocks.begin(), blocks.end(), [](const BlockSpectrum& b) {
    return b.spectrum.classification == SpectralClass::Inconclusive;
  });
  return any_inconclusive ? StabilityVerdict::SpectrallyUnstable : StabilityVerdict::Mixed;
}

StabilityReport classify_ngon(int n, double e, double tol, double eps_uc) {
  if (n < 3) throw std::invalid_argument("classify_ngon: n must be >= 3");
  if (!(e >= 0.0)) throw std::invalid_argument("classify_ngon: e must be >= 0");
  StabilityReport report;
  report.n = n;
  report.e = e;
  const int modes = essential_mode_count(n);
  report.per_block = parallel_map(static_cast<std::size_t>(modes), [&](std::size_t i) {
    const int l = static_cast<int>(i) + 1;
    const FundamentalSolution f = fundamental_solution(essential_system(n, l, e), tol);
    BlockSpectrum b;
    b.l = l;
    b.spectrum = classify(f.monodromy, eps_uc);
    b.symplectic_defect = f.symplectic_defect;
    return b;
  });
  report.verdict = stability_verdict(report.per_block, eps_uc);
  return report;
}

}  // namespace ngonstab
