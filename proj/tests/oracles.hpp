#pragma once

// Reference implementations used only by the tests. None of them calls into
// the library's FFT, structured products or exponential code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "btt/block_linalg.hpp"

namespace oracle {

using btt::Block;
using btt::BlockVector;
using btt::Complex;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;

inline Complex omega_power(std::size_t k, std::size_t n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * double(k % n) / double(n));
}

// sum_j w^{ij} x_j
inline std::vector<Complex> direct_idft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) y[i] += omega_power(i * j, n) * x[j];
  }
  return y;
}

// (1/n) sum_j conj(w^{ij}) x_j
inline std::vector<Complex> direct_dft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) y[i] += std::conj(omega_power(i * j, n)) * x[j];
    y[i] /= double(n);
  }
  return y;
}

inline MatrixXcd fourier_matrix(std::size_t n) {
  MatrixXcd f(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f(i, j) = omega_power(i * j, n);
  return f;
}

// A (x) B
inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// Stacks the blocks of a block-column into an (n m) x m matrix.
inline MatrixXcd stack(const BlockVector& v) {
  const auto m = Eigen::Index(v.m());
  MatrixXcd s(Eigen::Index(v.n()) * m, m);
  for (std::size_t h = 0; h < v.n(); ++h) s.block(Eigen::Index(h) * m, 0, m, m) = v[h];
  return s;
}

inline BlockVector unstack(const MatrixXcd& s, std::size_t m) {
  const auto mi = Eigen::Index(m);
  std::vector<Block> blocks;
  for (Eigen::Index h = 0; h < s.rows() / mi; ++h) blocks.push_back(s.block(h * mi, 0, mi, mi));
  return BlockVector(std::move(blocks));
}

// Block (i, j) = U_{j-i} above the diagonal, eps U_{n+j-i} below it.
inline MatrixXcd dense_eps_circulant(const BlockVector& u, Complex eps) {
  const std::size_t n = u.n();
  const auto m = Eigen::Index(u.m());
  MatrixXcd c = MatrixXcd::Zero(Eigen::Index(n) * m, Eigen::Index(n) * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Block b = j >= i ? Block(u[j - i]) : Block(eps * u[n + j - i]);
      c.block(Eigen::Index(i) * m, Eigen::Index(j) * m, m, m) = b;
    }
  }
  return c;
}

inline MatrixXcd dense_circulant(const BlockVector& u) { return dense_eps_circulant(u, 1.0); }

inline MatrixXcd dense_btt(const BlockVector& u) { return dense_eps_circulant(u, 0.0); }

inline BlockVector first_block_row(const MatrixXcd& a, std::size_t m) {
  const auto mi = Eigen::Index(m);
  std::vector<Block> blocks;
  for (Eigen::Index h = 0; h < a.cols() / mi; ++h) blocks.push_back(a.block(0, h * mi, mi, mi));
  return BlockVector(std::move(blocks));
}

// Pade-based exponential from Eigen's unsupported module.
inline MatrixXcd expm(const MatrixXcd& a) { return a.exp(); }
inline MatrixXd expm(const MatrixXd& a) { return a.exp(); }

// First block-row of e^{T(U)} for a real U, through the dense matrix.
inline BlockVector btt_exponential(const BlockVector& u) {
  const MatrixXd t = oracle::dense_btt(u).real();
  const MatrixXd e = expm(t);
  return first_block_row(e.cast<Complex>(), u.m());
}

// sum_{r=0}^{terms-1} (a / 2^s)^r / r!, squared s times.
inline MatrixXcd long_taylor_expm(const MatrixXcd& a, int s, int terms) {
  const MatrixXcd b = a / std::ldexp(1.0, s);
  MatrixXcd sum = MatrixXcd::Identity(a.rows(), a.cols());
  MatrixXcd term = sum;
  for (int r = 1; r < terms; ++r) {
    term = term * b / double(r);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

inline BlockVector random_block_vector(std::size_t n, std::size_t m, std::uint64_t seed,
                                       bool complex_entries = true) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  BlockVector v(n, m);
  for (std::size_t h = 0; h < n; ++h) {
    for (Eigen::Index r = 0; r < Eigen::Index(m); ++r) {
      for (Eigen::Index s = 0; s < Eigen::Index(m); ++s) {
        const double re = d(gen);
        const double im = complex_entries ? d(gen) : 0.0;
        v[h](r, s) = Complex(re, im);
      }
    }
  }
  return v;
}

inline double max_abs_diff(const BlockVector& a, const BlockVector& b) {
  double d = 0.0;
  for (std::size_t h = 0; h < a.n(); ++h) d = std::max(d, (a[h] - b[h]).cwiseAbs().maxCoeff());
  return d;
}

// Infinity norm of [V_0 ... V_{n-1}] by brute force on the concatenation.
inline double concat_inf_norm(const BlockVector& v) {
  const auto m = Eigen::Index(v.m());
  MatrixXcd row(m, m * Eigen::Index(v.n()));
  for (std::size_t h = 0; h < v.n(); ++h) row.block(0, Eigen::Index(h) * m, m, m) = v[h];
  return row.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace oracle
