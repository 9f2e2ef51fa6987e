#include "nlpot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlpot/charfn.hpp"
#include "nlpot/error.hpp"

namespace nlpot::oracle {

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::off_diagonal_norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (i != j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

std::vector<double> jacobi_eigenvalues(SymmetricMatrix a, const JacobiSettings& settings) {
  const int n = a.dim();
  int sweep = 0;
  while (a.off_diagonal_norm() > settings.tolerance) {
    if (sweep++ >= settings.max_sweeps)
      throw Error(ErrorKind::Solver, "Jacobi eigensolver did not converge in " +
                                         std::to_string(settings.max_sweeps) + " sweeps");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation annihilating a(p, q): t = tan(theta), smaller root.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

SymmetricMatrix TruncatedOperator::matrix() const {
  SymmetricMatrix m(dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      m(i, j) = alpha * rank_one[static_cast<std::size_t>(i)] * rank_one[static_cast<std::size_t>(j)];
  for (int i = 0; i < dim(); ++i) m(i, i) += diagonal[static_cast<std::size_t>(i)];
  return m;
}

TruncatedOperator truncate(const OperatorSpec& op, int N) {
  if (N < op.potential.order())
    throw Error(ErrorKind::Rejection, "truncation level below potential order");
  TruncatedOperator t;
  t.N = N;
  t.alpha = op.alpha;
  t.diagonal.reserve(static_cast<std::size_t>(t.dim()));
  t.rank_one.reserve(static_cast<std::size_t>(t.dim()));
  t.diagonal.push_back(0.0);
  t.rank_one.push_back(op.potential.c0());
  for (int k = 1; k <= N; ++k) {
    const auto [c, s] = op.potential.coefficients(k);
    t.diagonal.push_back(l0::level(k));
    t.diagonal.push_back(l0::level(k));
    t.rank_one.push_back(c);
    t.rank_one.push_back(s);
  }
  return t;
}

std::vector<Cluster> cluster(std::span<const double> sorted, double radius) {
  std::vector<Cluster> out;
  double sum = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] - sorted[i - 1] <= radius) {
      sum += sorted[i];
      out.back().multiplicity += 1;
    } else {
      if (!out.empty()) out.back().value = sum / out.back().multiplicity;
      out.push_back({sorted[i], 1});
      sum = sorted[i];
    }
  }
  if (!out.empty()) out.back().value = sum / out.back().multiplicity;
  return out;
}

std::vector<Cluster> oracle_spectrum(const OperatorSpec& op, int N, double cluster_radius) {
  if (N < op.potential.order() + 8)
    throw Error(ErrorKind::Rejection, "oracle truncation N must be >= order + 8");
  const auto eig = jacobi_eigenvalues(truncate(op, N).matrix());
  return cluster(eig, cluster_radius);
}

std::vector<double> scan_delta_zeros(const OperatorSpec& op, double lambda_max, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.01))
    throw Error(ErrorKind::Rejection, "grid_step must lie in (0, 0.01]");
  constexpr double kExclusion = 1e-3;
  const CharfnContext ctx(op);
  auto excluded = [](double l) { return std::abs(l - 2.0 * std::round(l / 2.0)) <= kExclusion; };
  // True when [a, b] (widened by the exclusion radius) contains an even integer.
  auto straddles = [](double a, double b) {
    return std::floor((b + kExclusion) / 2.0) >= std::ceil((a - kExclusion) / 2.0);
  };

  std::vector<double> roots;
  const int steps = static_cast<int>(std::floor(lambda_max / grid_step));
  double prev_l = grid_step;
  double prev_f = excluded(prev_l) ? 0.0 : ctx.delta_real(prev_l);
  for (int i = 2; i <= steps; ++i) {
    const double l = i * grid_step;
    if (excluded(l)) {
      prev_l = l;
      continue;
    }
    const double f = ctx.delta_real(l);
    if (!excluded(prev_l) && !straddles(prev_l, l)) {
      if (f == 0.0) {
        roots.push_back(l);
      } else if (prev_f != 0.0 && (prev_f < 0.0) != (f < 0.0)) {
        double lo = prev_l;
        double hi = l;
        double flo = prev_f;
        while (hi - lo > 1e-13) {
          const double mid = 0.5 * (lo + hi);
          const double fm = ctx.delta_real(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
    }
    prev_l = l;
    prev_f = f;
  }
  return roots;
}

}  // namespace nlpot::oracle
