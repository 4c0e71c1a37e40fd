#include "planemap/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "planemap/error.hpp"

namespace planemap {

CPoint::CPoint(double r, double i) : re(r), im(i) {
  if (!std::isfinite(r) || !std::isfinite(i))
    fail(Errc::NumericUnstable, "non-finite plane point");
}

double cpoint_dist(const CPoint& a, const CPoint& b) {
  return std::abs(a.c() - b.c());
}

RootSet roots_of_doubles(std::vector<std::complex<double>> coeffs) {
  while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.size() < 2)
    fail(Errc::NumericUnstable, "root finding needs degree >= 1");
  std::size_t n = coeffs.size() - 1;

  // Scale by the leading coefficient; reject when that is not representable.
  std::complex<double> lead = coeffs.back();
  if (!std::isfinite(std::abs(lead)) || std::abs(lead) == 0.0)
    fail(Errc::NumericUnstable, "leading coefficient underflow");
  for (auto& c : coeffs) {
    c /= lead;
    if (!std::isfinite(std::abs(c)))
      fail(Errc::NumericUnstable, "coefficient overflow after normalization");
  }

  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i)
    C(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    fail(Errc::NumericUnstable, "eigenvalue iteration failed");

  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
  };
  auto eval_d = [&](std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 1;)
      acc = acc * z + coeffs[i] * static_cast<double>(i);
    return acc;
  };

  RootSet out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    for (int it = 0; it < kNewtonIters; ++it) {
      std::complex<double> f = eval(z), df = eval_d(z);
      if (std::abs(df) < 1e-14 * std::max(1.0, std::abs(f))) break;
      std::complex<double> step = f / df;
      if (!std::isfinite(std::abs(step))) break;
      z -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    if (!std::isfinite(std::abs(z)))
      fail(Errc::NumericUnstable, "root polish diverged");
    out.roots.emplace_back(z);
    out.residual_bound = std::max(out.residual_bound, std::abs(eval(z)));
  }
  return out;
}

RootSet up_roots_numeric(const UPoly& H) {
  if (H.degree() < 1) fail(Errc::NumericUnstable, "root finding needs degree >= 1");
  std::vector<std::complex<double>> cs;
  cs.reserve(static_cast<std::size_t>(H.degree()) + 1);
  for (int i = 0; i <= H.degree(); ++i)
    cs.emplace_back(rat_to_double(H.coeff(i)), 0.0);
  if (std::abs(cs.back()) == 0.0)
    fail(Errc::NumericUnstable, "leading coefficient underflow in conversion");
  return roots_of_doubles(std::move(cs));
}

namespace {

template <typename T, typename Dist>
int cluster_count(const std::vector<T>& pts, Dist dist) {
  // Union-find over the tolerance graph; transitive merging matches how the
  // rest of the toolkit treats nearly-equal numeric points.
  std::vector<int> parent(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (dist(pts[i], pts[j]) < kClusterTol) {
        int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
  int n = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
  return n;
}

}  // namespace

int count_distinct(const std::vector<CPoint>& pts) {
  return cluster_count(pts, cpoint_dist);
}

int count_distinct_pairs(const std::vector<std::pair<CPoint, CPoint>>& pts) {
  return cluster_count(pts, [](const auto& a, const auto& b) {
    return std::max(cpoint_dist(a.first, b.first), cpoint_dist(a.second, b.second));
  });
}

}  // namespace planemap
