#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ngonstab/beta_certifier.hpp"
#include "ngonstab/configuration.hpp"
#include "ngonstab/operator_positivity.hpp"
#include "ngonstab/parallel.hpp"
#include "ngonstab/reduction.hpp"
#include "ngonstab/spectrum.hpp"
#include "report_json.hpp"

namespace ngonstab::cli {

namespace {

constexpr double kOffblockLimit = 1e-10;

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

// Writes text to path, or to out when path is empty.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

RegionCertificate load_certificate(const std::string& path) {
  if (path.empty()) return default_certificate();
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot read checkpoint file " + path);
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("checkpoint file " + path + ": " + e.what());
  }
  RegionCertificate cert = certificate_from_json(j);
  cert.clearance = segment_clearance(cert);
  return cert;
}

struct Options {
  int n = 0;
  int l = 0;
  double e = 0;
  double beta = 0;
  double delta = 0;
  double tol = kDefaultTol;
  double segment = 0;
  int omega_count = 64;
  int truncation = 64;
  std::string kind;
  std::string beta_range;
  std::string e_range;
  std::string out_path;
  std::string checkpoints;
};

int do_reduce(const Options& o, std::ostream& out) {
  const NGonConfiguration config = build_ngon(o.n);
  const SymmetryBasis basis = build_basis(config);
  const ReducedBlocks blocks = reduce_hessian(config, basis);
  emit(dump(to_json(blocks, basis)), o.out_path, out);
  return blocks.offblock_residual <= kOffblockLimit ? kExitOk : kExitCertification;
}

int do_classify(const Options& o, std::ostream& out) {
  emit(dump(to_json(classify_ngon(o.n, o.e, o.tol))), o.out_path, out);
  return kExitOk;
}

int do_beta(const Options& o, std::ostream& out) {
  json j = to_json(beta_monodromy(o.beta, o.e, o.tol));
  j["beta"] = o.beta;
  j["e"] = o.e;
  emit(dump(j), o.out_path, out);
  return kExitOk;
}

int do_sweep(const Options& o, std::ostream& out) {
  const std::vector<double> betas = range_values(parse_range(o.beta_range));
  const std::vector<double> es = range_values(parse_range(o.e_range));
  for (double b : betas) {
    if (b < 0) throw std::invalid_argument("sweep: beta must be >= 0");
  }
  for (double e : es) {
    if (!(e >= 0 && e <= kMaxIntegrationEccentricity)) {
      throw NearSingularError("near-singular: sweep eccentricity " + format9(e) + " outside [0, 0.99]");
    }
  }
  const std::size_t cells = betas.size() * es.size();
  const std::vector<std::string> rows = parallel_map(cells, [&](std::size_t k) {
    const double b = betas[k / es.size()];
    const double e = es[k % es.size()];
    const MonodromySpectrum s = beta_monodromy(b, e, o.tol);
    return format9(b) + "," + format9(e) + "," + to_string(s.classification) + "," + format9(s.unit_margin) + "\n";
  });
  std::string text = "beta,e,class,margin\n";
  for (const std::string& row : rows) text += row;
  emit(text, o.out_path, out);
  return kExitOk;
}

int do_certify(const Options& o, bool has_segment, std::ostream& out, std::ostream& err) {
  RegionCertificate cert = load_certificate(o.checkpoints);
  try {
    verify_checkpoints(cert, o.tol);
  } catch (const CertificationFailure& f) {
    err << "certification failed: " << f.what() << "\n";
    return kExitCertification;
  }
  json j = to_json(cert, certification_chain({3, 4, 5}, cert.clearance));
  int code = kExitOk;
  if (has_segment) {
    const bool certified = o.segment >= 0 && o.segment < cert.clearance;
    j["segment"] = {{"beta", o.segment}, {"certified", certified}};
    if (!certified) {
      err << "segment beta = " << format9(o.segment) << " is not below clearance " << format9(cert.clearance) << "\n";
      code = kExitCertification;
    }
  }
  emit(dump(j), o.out_path, out);
  return code;
}

int do_region(const Options& o, std::ostream& out) {
  const RegionCertificate cert = load_certificate(o.checkpoints);
  emit(dump(to_json(region_membership(cert, o.beta, o.e), o.beta, o.e)), o.out_path, out);
  return kExitOk;
}

int do_operator(const Options& o, bool has_delta, bool has_beta, bool has_nl, std::ostream& out) {
  std::optional<OperatorKind> kind;
  if (o.kind == "scalar" && has_delta) kind = galerkin::Scalar{o.delta};
  if (o.kind == "planar" && has_beta) kind = galerkin::Planar{o.beta};
  if (o.kind == "block" && has_nl) kind = galerkin::Block{o.n, o.l};
  if (!kind) throw CLI::ValidationError("--kind", "scalar needs --delta, planar needs --beta, block needs --n and --l");
  emit(dump(to_json(positivity_scan(*kind, o.e, o.omega_count, o.truncation))), o.out_path, out);
  return kExitOk;
}

}  // namespace

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string piece; std::getline(ss, piece, ':');) parts.push_back(piece);
  if (parts.size() != 3) throw std::invalid_argument("range must be A:B:STEP, got '" + text + "'");
  Range r{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
  if (!(r.step > 0)) throw std::invalid_argument("range step must be positive");
  if (r.stop < r.start) throw std::invalid_argument("range end is below its start");
  return r;
}

std::vector<double> range_values(const Range& r) {
  const auto count = static_cast<long>(std::floor((r.stop - r.start) / r.step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) v.push_back(r.start + static_cast<double>(i) * r.step);
  return v;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear stability of the regular n-gon elliptic relative equilibrium", "ngonstab"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out_path, "Write the report to this file"); };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "Integrator tolerance")->check(CLI::Range(1e-14, 1e-6));
  };

  CLI::App* reduce = app.add_subcommand("reduce", "Block-diagonalize the reduced Hessian");
  reduce->add_option("--n", o.n, "Number of bodies")->required();
  add_out(reduce);

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify the monodromy of every essential block");
  classify_cmd->add_option("--n", o.n, "Number of bodies")->required();
  classify_cmd->add_option("--e", o.e, "Eccentricity")->required();
  add_tol(classify_cmd);
  add_out(classify_cmd);

  CLI::App* beta = app.add_subcommand("beta", "Monodromy spectrum of the beta-system");
  beta->add_option("--beta", o.beta, "beta")->required();
  beta->add_option("--e", o.e, "Eccentricity")->required();
  add_tol(beta);
  add_out(beta);

  CLI::App* sweep = app.add_subcommand("sweep", "CSV stability diagram of the beta-system");
  sweep->add_option("--beta", o.beta_range, "A:B:STEP")->required();
  sweep->add_option("--e", o.e_range, "A:B:STEP")->required();
  add_tol(sweep);
  add_out(sweep);

  CLI::App* certify = app.add_subcommand("certify", "Verify checkpoints and report the clearance");
  CLI::Option* segment_opt = certify->add_option("--segment", o.segment, "Check beta against the clearance");
  certify->add_option("--checkpoints", o.checkpoints, "JSON checkpoint file");
  add_tol(certify);
  add_out(certify);

  CLI::App* region = app.add_subcommand("region", "Membership in the certified hyperbolic region");
  region->add_option("--beta", o.beta, "beta")->required();
  region->add_option("--e", o.e, "Eccentricity")->required();
  region->add_option("--checkpoints", o.checkpoints, "JSON checkpoint file");
  add_out(region);

  CLI::App* op = app.add_subcommand("operator", "Galerkin positivity scan over a phase grid");
  op->add_option("--kind", o.kind, "scalar, planar or block")
      ->required()
      ->check(CLI::IsMember({"scalar", "planar", "block"}));
  CLI::Option* delta_opt = op->add_option("--delta", o.delta, "Scalar potential");
  CLI::Option* op_beta = op->add_option("--beta", o.beta, "beta");
  CLI::Option* op_n = op->add_option("--n", o.n, "Number of bodies");
  CLI::Option* op_l = op->add_option("--l", o.l, "Essential mode");
  op->add_option("--e", o.e, "Eccentricity")->required();
  op->add_option("--omega-count", o.omega_count, "Phase grid size")->check(CLI::PositiveNumber);
  op->add_option("--N", o.truncation, "Fourier truncation")->check(CLI::Range(kMinTruncation, kMaxTruncation));
  add_out(op);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (reduce->parsed()) return do_reduce(o, out);
    if (classify_cmd->parsed()) return do_classify(o, out);
    if (beta->parsed()) return do_beta(o, out);
    if (sweep->parsed()) {
      try {
        return do_sweep(o, out);
      } catch (const NearSingularError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        // a malformed range is a usage problem, not a numeric refusal
        if (std::string(e.what()).rfind("range", 0) == 0 || std::string(e.what()).rfind("not a number", 0) == 0) {
          throw CLI::ValidationError("--beta/--e", e.what());
        }
        throw;
      }
    }
    if (certify->parsed()) return do_certify(o, segment_opt->count() > 0, out, err);
    if (region->parsed()) return do_region(o, out);
    if (op->parsed()) {
      return do_operator(o, delta_opt->count() > 0, op_beta->count() > 0, op_n->count() > 0 && op_l->count() > 0,
                         out);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const NearSingularError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "refused: " << e.what() << "\n";
    return kExitDomain;
  } catch (const CertificationFailure& e) {
    err << "certification failed: " << e.what() << "\n";
    return kExitCertification;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace ngonstab::cli
