#pragma once

#include <complex>
#include <vector>

#include "planemap/upoly.hpp"

namespace planemap {

// A machine-precision point of the complex plane; finite by construction.
struct CPoint {
  double re = 0.0;
  double im = 0.0;

  CPoint() = default;
  CPoint(double r, double i);
  explicit CPoint(const std::complex<double>& z) : CPoint(z.real(), z.imag()) {}
  std::complex<double> c() const { return {re, im}; }
};

double cpoint_dist(const CPoint& a, const CPoint& b);

struct RootSet {
  std::vector<CPoint> roots;   // deg many, with multiplicity
  double residual_bound = 0.0; // max |H(root)| over the scaled polynomial
};

// Roots coincide when closer than this after Newton polishing.
inline constexpr double kClusterTol = 1e-6;
inline constexpr int kNewtonIters = 20;

// All complex roots of H (deg H >= 1) via companion-matrix eigenvalues on
// double-precision coefficients, Newton-polished. Throws NumericUnstable when
// the leading coefficient underflows to zero in double precision.
RootSet up_roots_numeric(const UPoly& H);

// Same entry point for raw double coefficients (ascending by exponent).
RootSet roots_of_doubles(std::vector<std::complex<double>> coeffs);

// Number of clusters at kClusterTol.
int count_distinct(const std::vector<CPoint>& pts);
int count_distinct_pairs(const std::vector<std::pair<CPoint, CPoint>>& pts);

}  // namespace planemap
