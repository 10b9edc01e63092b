#include "ngonstab/eigen_qr.hpp"

#include <cmath>
#include <limits>

namespace ngonstab {

namespace {

constexpr int kMaxIterationsPerEigenvalue = 60;

double sign_of(double a, double b) { return b >= 0 ? std::abs(a) : -std::abs(a); }

// Parlett-Reinsch balancing with powers of two, so no rounding is introduced.
void balance(Matrix& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0;
      double c = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c == 0 || r == 0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Francis double-shift QR on an upper Hessenberg matrix, destroying it.
std::vector<Complex> hessenberg_qr(Matrix& h) {
  const int n = static_cast<int>(h.rows());
  // 1-based accessor keeps the classical index arithmetic readable.
  auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };

  std::vector<double> wr(n + 1, 0.0);
  std::vector<double> wi(n + 1, 0.0);

  double anorm = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));
  }

  int nn = n;
  double t = 0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0;
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn] = z;
            wi[nn - 1] = -z;
          }
          nn -= 2;
        } else {
          if (its == kMaxIterationsPerEigenvalue) {
            throw std::runtime_error("qr_eigenvalues: no convergence");
          }
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0;
          double q = 0;
          double r = 0;
          double z = 0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0;
            if (i != m + 2) a(i, i - 3) = 0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }

  std::vector<Complex> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

void hessenberg_reduce(const Matrix& m, Matrix& h, Matrix& q) {
  const Eigen::Index n = m.rows();
  h = m;
  q = Matrix::Identity(n, n);
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    Vector x = h.col(k).tail(n - k - 1);
    const double alpha = -sign_of(x.norm(), x(0));
    if (alpha == 0) continue;
    x(0) -= alpha;
    const double vnorm = x.norm();
    if (vnorm == 0) continue;
    x /= vnorm;
    // H <- P H P with P = I - 2 v v^T acting on rows/cols k+1..n-1.
    h.bottomRows(n - k - 1) -= 2.0 * x * (x.transpose() * h.bottomRows(n - k - 1));
    h.rightCols(n - k - 1) -= 2.0 * (h.rightCols(n - k - 1) * x) * x.transpose();
    q.rightCols(n - k - 1) -= 2.0 * (q.rightCols(n - k - 1) * x) * x.transpose();
    h.col(k).tail(n - k - 2).setZero();
  }
}

std::vector<Complex> qr_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("qr_eigenvalues: matrix not square");
  if (!m.allFinite()) throw std::invalid_argument("qr_eigenvalues: non-finite entries");
  if (m.rows() == 0) return {};
  Matrix a = m;
  balance(a);
  Matrix h;
  Matrix q;
  hessenberg_reduce(a, h, q);
  return hessenberg_qr(h);
}

PolishedEigenpair polish_eigenpair(const Matrix& m, Complex mu, bool rayleigh_update) {
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXcd mc = m.cast<Complex>();
  const double scale = std::max(1.0, inf_norm(m));
  // Nudge off the exact estimate so the shifted system is not singular.
  const Complex shift = mu + Complex(1e3 * std::numeric_limits<double>::epsilon() * scale, 0);
  Eigen::MatrixXcd shifted = mc - shift * Eigen::MatrixXcd::Identity(n, n);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);

  // Start from U^{-1} 1 rather than 1 itself, which can be orthogonal to
  // the wanted eigenvector (symmetric 2x2 monodromies do exactly that).
  Eigen::VectorXcd v = lu.matrixLU().triangularView<Eigen::Upper>().solve(
      Eigen::VectorXcd::Ones(n).eval());
  v /= v.norm();
  for (int it = 0; it < 2; ++it) {
    v = lu.solve(v);
    const double norm = v.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
      v = Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n));
      break;
    }
    v /= norm;
  }

  PolishedEigenpair out;
  out.vector = v;
  out.value = mu;
  out.residual = (mc * v - mu * v).norm();
  if (!rayleigh_update) return out;
  const Complex rq = v.dot(mc * v);  // v^H M v with |v| = 1
  const double rq_residual = (mc * v - rq * v).norm();
  if (rq_residual < out.residual) {
    out.value = rq;
    out.residual = rq_residual;
  }
  return out;
}

}  // namespace ngonstab
