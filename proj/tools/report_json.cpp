#include "report_json.hpp"

namespace ngonstab::cli {

namespace {

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json eigenvalue_list(const std::vector<Complex>& ev) {
  json list = json::array();
  for (const Complex& mu : ev) list.push_back({{"re", mu.real()}, {"im", mu.imag()}});
  return list;
}

}  // namespace

json to_json(const ReducedBlocks& blocks, const SymmetryBasis& basis) {
  json out;
  out["n"] = blocks.n;
  out["lambda"] = blocks.lambda;
  out["offblock_residual"] = blocks.offblock_residual;
  out["ortho_residual"] = basis.ortho_residual;
  out["commute_residual"] = basis.commute_residual;
  json list = json::array();
  for (const auto& b : blocks.blocks) {
    list.push_back({{"label", b.label.name()},
                    {"matrix", matrix_rows(b.matrix)},
                    {"closed_form_residual", b.closed_form_residual}});
  }
  out["blocks"] = list;
  return out;
}

json to_json(const MonodromySpectrum& spectrum) {
  json clusters = json::array();
  for (const auto& c : spectrum.clusters) {
    clusters.push_back({{"re", c.center.real()},
                        {"im", c.center.imag()},
                        {"size", c.size},
                        {"semisimple", c.semisimple}});
  }
  return {{"eigenvalues", eigenvalue_list(spectrum.eigenvalues)},
          {"margin", spectrum.unit_margin},
          {"class", to_string(spectrum.classification)},
          {"clusters", clusters},
          {"raw_pairing_defect", spectrum.raw_pairing_defect}};
}

json to_json(const StabilityReport& report) {
  json blocks = json::array();
  for (const auto& b : report.per_block) {
    blocks.push_back({{"l", b.l},
                      {"eigenvalues", eigenvalue_list(b.spectrum.eigenvalues)},
                      {"margin", b.spectrum.unit_margin},
                      {"class", to_string(b.spectrum.classification)},
                      {"symplectic_defect", b.symplectic_defect}});
  }
  return {{"n", report.n}, {"e", report.e}, {"blocks", blocks}, {"verdict", to_string(report.verdict)}};
}

json to_json(const RegionCertificate& cert, const std::vector<ChainEntry>& chain) {
  json checkpoints = json::array();
  for (const auto& c : cert.checkpoints) {
    json item = {{"beta0", c.beta0}, {"e0", c.e0}};
    item["margin"] = c.margin ? json(*c.margin) : json(nullptr);
    checkpoints.push_back(item);
  }
  json links = json::array();
  for (const auto& entry : chain) {
    links.push_back({{"n", entry.block.n},
                     {"l", entry.block.l},
                     {"beta_eff", entry.block.beta_eff},
                     {"mean_shift", entry.block.mean_shift},
                     {"route", to_string(entry.block.route)},
                     {"covered", entry.covered}});
  }
  return {{"checkpoints", checkpoints}, {"clearance", cert.clearance}, {"chain", links}};
}

json to_json(const RegionMembership& membership, double beta, double e) {
  json out = {{"beta", beta},
              {"e", e},
              {"member", membership.member},
              {"verdict", membership.member ? "member" : "not member"}};
  if (membership.nearest) {
    const RegionWitness& w = *membership.nearest;
    json witness = {{"beta0", w.beta0}, {"e0", w.e0}, {"region", to_string(w.side)}, {"bound", w.bound}};
    out[membership.member ? "witness" : "nearest"] = witness;
    out["nearest_bound"] = w.bound;
  } else {
    out["nearest_bound"] = nullptr;
  }
  return out;
}

json to_json(const PositivityReport& report) {
  return {{"kind", operator_name(report.kind)},
          {"e", report.e},
          {"N", report.N},
          {"omega_count", report.omega_count},
          {"min_eig", report.min_eig},
          {"worst_phi", report.worst_phi},
          {"converged", report.converged},
          {"refined_N", report.refined_N},
          {"refined_min_eig", report.refined_min_eig},
          {"evidence", report.evidence}};
}

RegionCertificate certificate_from_json(const json& j) {
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("checkpoints")) throw std::invalid_argument("checkpoint file: missing \"checkpoints\"");
    list = &j.at("checkpoints");
  }
  if (!list->is_array() || list->empty()) {
    throw std::invalid_argument("checkpoint file: expected a non-empty array");
  }
  RegionCertificate cert;
  for (const auto& item : *list) {
    if (!item.is_object() || !item.contains("beta0") || !item.contains("e0") ||
        !item.at("beta0").is_number() || !item.at("e0").is_number()) {
      throw std::invalid_argument("checkpoint file: each entry needs numeric beta0 and e0");
    }
    cert.checkpoints.push_back({item.at("beta0").get<double>(), item.at("e0").get<double>(), std::nullopt});
  }
  return cert;
}

}  // namespace ngonstab::cli
