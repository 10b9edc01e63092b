#include "ngonstab/dop853.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ngonstab {

namespace {

constexpr int kStages = 12;

constexpr std::array<long double, kStages> kC = {
    0.0L, 0.526001519587677318785587544488e-01L, 0.789002279381515978178381316732e-01L,
    0.118350341907227396726757197510L, 0.281649658092772603273242802490L,
    0.333333333333333333333333333333L, 0.25L, 0.307692307692307692307692307692L,
    0.651282051282051282051282051282L, 0.6L, 0.857142857142857142857142857142L, 1.0L,
};

// Lower-triangular Runge-Kutta matrix, row s holds a_{s,0..s-1}.
constexpr std::array<std::array<long double, kStages>, kStages> kA = {{
    {},
    {5.26001519587677318785587544488e-2L},
    {1.97250569845378994544595329183e-2L, 5.91751709536136983633785987549e-2L},
    {2.95875854768068491816892993775e-2L, 0.0L, 8.87627564304205475450678981324e-2L},
    {2.41365134159266685502369798665e-1L, 0.0L, -8.84549479328286085344864962717e-1L,
     9.24834003261792003115737966543e-1L},
    {3.7037037037037037037037037037e-2L, 0.0L, 0.0L, 1.70828608729473871279604482173e-1L,
     1.25467687566822425016691814123e-1L},
    {3.7109375e-2L, 0.0L, 0.0L, 1.70252211019544039314978060272e-1L,
     6.02165389804559606850219397283e-2L, -1.7578125e-2L},
    {3.70920001185047927108779319836e-2L, 0.0L, 0.0L, 1.70383925712239993810214054705e-1L,
     1.07262030446373284651809199168e-1L, -1.53194377486244017527936158236e-2L,
     8.27378916381402288758473766002e-3L},
    {6.24110958716075717114429577812e-1L, 0.0L, 0.0L, -3.36089262944694129406857109825L,
     -8.68219346841726006818189891453e-1L, 2.75920996994467083049415600797e1L,
     2.01540675504778934086186788979e1L, -4.34898841810699588477366255144e1L},
    {4.77662536438264365890433908527e-1L, 0.0L, 0.0L, -2.48811461997166764192642586468L,
     -5.90290826836842996371446475743e-1L, 2.12300514481811942347288949897e1L,
     1.52792336328824235832596922938e1L, -3.32882109689848629194453265587e1L,
     -2.03312017085086261358222928593e-2L},
    {-9.3714243008598732571704021658e-1L, 0.0L, 0.0L, 5.18637242884406370830023853209L,
     1.09143734899672957818500254654L, -8.14978701074692612513997267357L,
     -1.85200656599969598641566180701e1L, 2.27394870993505042818970056734e1L,
     2.49360555267965238987089396762L, -3.0467644718982195003823669022L},
    {2.27331014751653820792359768449L, 0.0L, 0.0L, -1.05344954667372501984066689879e1L,
     -2.00087205822486249909675718444L, -1.79589318631187989172765950534e1L,
     2.79488845294199600508499808837e1L, -2.85899827713502369474065508674L,
     -8.87285693353062954433549289258L, 1.23605671757943030647266201528e1L,
     6.43392746015763530355970484046e-1L},
}};

constexpr std::array<long double, kStages> kB = {
    5.42937341165687622380535766363e-2L, 0.0L, 0.0L, 0.0L, 0.0L,
    4.45031289275240888144113950566L, 1.89151789931450038304281599044L,
    -5.8012039600105847814672114227L, 3.1116436695781989440891606237e-1L,
    -1.52160949662516078556178806805e-1L, 2.01365400804030348374776537501e-1L,
    4.47106157277725905176885569043e-2L,
};

// Differences between the 8th-order weights and the embedded 3rd/5th-order ones.
constexpr std::array<double, kStages> kE3 = {
    -0.18980075407240762, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003,
    -5.801203960010585, -0.4226823213237919, -0.1521609496625161, 0.20136540080403034,
    0.02265179219836082,
};

constexpr std::array<double, kStages> kE5 = {
    0.01312004499419488, 0.0, 0.0, 0.0, 0.0, -1.2251564463762044, -0.4957589496572502,
    1.6643771824549864, -0.35032884874997366, 0.3341791187130175, 0.08192320648511571,
    -0.022355307863886294,
};

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
constexpr double kErrorExponent = -1.0 / 8.0;

}  // namespace

template <typename T>
Dop853Stats integrate_dop853(const MatrixRhsT<T>& rhs, double t0, double t1, MatrixT<T>& y,
                             const Dop853Options& options) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate_dop853: need t1 > t0");
  if (options.rtol <= 0 || options.atol <= 0 || options.max_step <= 0) {
    throw std::invalid_argument("integrate_dop853: tolerances and max_step must be positive");
  }
  using M = MatrixT<T>;

  Dop853Stats stats;
  std::array<M, kStages> k;
  for (auto& ki : k) ki.resizeLike(y);
  M stage(y.rows(), y.cols());
  M y_new(y.rows(), y.cols());
  M err5(y.rows(), y.cols());
  M err3(y.rows(), y.cols());

  rhs(t0, y, k[0]);
  ++stats.evaluations;

  double h = options.initial_step;
  if (h <= 0) {
    // h ~ (tol / |f|)^(1/8), clipped to the ceiling.
    const double f_norm = std::max(static_cast<double>(k[0].cwiseAbs().maxCoeff()), 1e-10);
    h = 0.1 * std::pow(options.rtol / f_norm, 1.0 / 8.0);
  }
  h = std::min({h, options.max_step, t1 - t0});

  double t = t0;
  const double n_entries = static_cast<double>(y.size());
  while (t < t1) {
    if (stats.accepted + stats.rejected >= options.max_steps) {
      throw std::runtime_error("integrate_dop853: exceeded max_steps");
    }
    const double min_step = 10.0 * std::numeric_limits<double>::epsilon() * std::abs(t);
    if (h < min_step) throw std::runtime_error("integrate_dop853: step size underflow");

    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    const T ht = static_cast<T>(h);

    for (int s = 1; s < kStages; ++s) {
      stage = y;
      for (int j = 0; j < s; ++j) {
        if (kA[s][j] != 0.0L) stage.noalias() += (ht * static_cast<T>(kA[s][j])) * k[j];
      }
      rhs(t + static_cast<double>(kC[s]) * h, stage, k[s]);
    }
    stats.evaluations += kStages - 1;

    y_new = y;
    err5.setZero();
    err3.setZero();
    for (int s = 0; s < kStages; ++s) {
      if (kB[s] != 0.0L) y_new.noalias() += (ht * static_cast<T>(kB[s])) * k[s];
      if (kE5[s] != 0.0) err5.noalias() += static_cast<T>(kE5[s]) * k[s];
      if (kE3[s] != 0.0) err3.noalias() += static_cast<T>(kE3[s]) * k[s];
    }

    double e5 = 0;
    double e3 = 0;
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      for (Eigen::Index r = 0; r < y.rows(); ++r) {
        const double sc =
            options.atol + options.rtol * static_cast<double>(std::max(std::abs(y(r, c)),
                                                                       std::abs(y_new(r, c))));
        const double a5 = static_cast<double>(err5(r, c)) / sc;
        const double a3 = static_cast<double>(err3(r, c)) / sc;
        e5 += a5 * a5;
        e3 += a3 * a3;
      }
    }
    double err = 0;
    if (e5 > 0 || e3 > 0) {
      err = std::abs(h) * e5 / std::sqrt((e5 + 0.01 * e3) * n_entries);
    }

    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y.swap(y_new);
      ++stats.accepted;
      rhs(t, y, k[0]);
      ++stats.evaluations;
      const double factor =
          err == 0 ? kMaxFactor : std::min(kMaxFactor, kSafety * std::pow(err, kErrorExponent));
      h = std::min(h * factor, options.max_step);
    } else {
      ++stats.rejected;
      h *= std::max(kMinFactor, kSafety * std::pow(err, kErrorExponent));
    }
  }
  return stats;
}

template Dop853Stats integrate_dop853<double>(const MatrixRhsT<double>&, double, double,
                                              MatrixT<double>&, const Dop853Options&);
template Dop853Stats integrate_dop853<long double>(const MatrixRhsT<long double>&, double, double,
                                                   MatrixT<long double>&, const Dop853Options&);

}  // namespace ngonstab
