#pragma once

// Brute-force reference computations used only by tests. Everything here is
// written with explicit multi-index loops and dense matrices, independent of
// the library's reshaping and purification code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qbc/types.hpp"

namespace oracle {

using qbc::Complex;
using qbc::ComplexMatrix;
using qbc::ComplexVector;

inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t l = dims.size(); l-- > 0;) {
    out[l] = index % dims[l];
    index /= dims[l];
  }
  return out;
}

inline std::size_t index_of(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  for (std::size_t l = 0; l < dims.size(); ++l) idx = idx * dims[l] + d[l];
  return idx;
}

inline std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (const auto d : dims) p *= d;
  return p;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Keeps `keep` legs in their original relative order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> kept_dims;
  for (const auto l : keep) kept_dims.push_back(dims[l]);
  const auto kd = static_cast<Eigen::Index>(product(kept_dims));
  ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
  const std::size_t total = product(dims);
  for (std::size_t i = 0; i < total; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < total; ++j) {
      const auto dj = digits(j, dims);
      bool traced_equal = true;
      for (std::size_t l = 0; l < dims.size(); ++l) {
        const bool kept = std::find(keep.begin(), keep.end(), l) != keep.end();
        if (!kept && di[l] != dj[l]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::vector<std::size_t> ki, kj;
      for (const auto l : keep) {
        ki.push_back(di[l]);
        kj.push_back(dj[l]);
      }
      out(static_cast<Eigen::Index>(index_of(ki, kept_dims)),
          static_cast<Eigen::Index>(index_of(kj, kept_dims))) += m(static_cast<Eigen::Index>(i),
                                                                   static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

// Reorders legs: new leg j is old leg perm[j].
inline ComplexVector permute(const ComplexVector& v, const std::vector<std::size_t>& dims,
                             const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> new_dims;
  for (const auto p : perm) new_dims.push_back(dims[p]);
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < product(dims); ++i) {
    const auto d = digits(i, dims);
    std::vector<std::size_t> nd;
    for (const auto p : perm) nd.push_back(d[p]);
    out(static_cast<Eigen::Index>(index_of(nd, new_dims))) = v(static_cast<Eigen::Index>(i));
  }
  return out;
}

inline ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd v = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * v.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline double entropy_bits(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  double h = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-15) h -= p * std::log2(p);
  }
  return h;
}

inline double binary_entropy_terms(const std::vector<double>& p) {
  double h = 0.0;
  for (const double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

// Group fidelity for a channel whose leg i IS connection i on both sides,
// computed densely: purify each input as sum_{r,a} sqrt(rho_i)(a, r)|r>|a> on (R_i, A_i),
// apply the channel to all A legs, trace out everything outside `kept`,
// and take the overlap with the kept purifications.
inline double group_fidelity_dense(const std::vector<ComplexMatrix>& kraus,
                                   const std::vector<ComplexMatrix>& inputs,
                                   const std::vector<std::size_t>& kept) {
  const std::size_t n = inputs.size();
  std::vector<std::size_t> dims;  // R_1..R_n, A_1..A_n
  for (const auto& rho : inputs) dims.push_back(static_cast<std::size_t>(rho.rows()));
  for (const auto& rho : inputs) dims.push_back(static_cast<std::size_t>(rho.rows()));

  std::vector<ComplexVector> pur;
  for (const auto& rho : inputs) {
    const ComplexMatrix s = sqrt_psd(rho);
    ComplexVector v(s.size());
    for (Eigen::Index r = 0; r < s.rows(); ++r)
      for (Eigen::Index a = 0; a < s.cols(); ++a) v(r * s.cols() + a) = s(a, r);
    pur.push_back(v);
  }
  // Interleaved (R_1, A_1, R_2, A_2, ...) -> (R..., A...).
  ComplexVector interleaved = ComplexVector::Ones(1);
  std::vector<std::size_t> inter_dims;
  for (std::size_t i = 0; i < n; ++i) {
    ComplexVector next(interleaved.size() * pur[i].size());
    for (Eigen::Index x = 0; x < interleaved.size(); ++x)
      for (Eigen::Index y = 0; y < pur[i].size(); ++y) next(x * pur[i].size() + y) = interleaved(x) * pur[i](y);
    interleaved = next;
    inter_dims.push_back(dims[i]);
    inter_dims.push_back(dims[i]);
  }
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i) perm.push_back(2 * i);
  for (std::size_t i = 0; i < n; ++i) perm.push_back(2 * i + 1);
  const ComplexVector psi = permute(interleaved, inter_dims, perm);

  std::size_t ref_total = 1;
  for (std::size_t i = 0; i < n; ++i) ref_total *= dims[i];
  const auto r = static_cast<Eigen::Index>(ref_total);
  ComplexMatrix out = ComplexMatrix::Zero(psi.size(), psi.size());
  for (const auto& a : kraus) {
    const ComplexVector v = kron(ComplexMatrix::Identity(r, r), a) * psi;
    out += v * v.adjoint();
  }
  std::vector<std::size_t> keep_legs;
  for (const auto i : kept) {
    keep_legs.push_back(i);
    keep_legs.push_back(n + i);
  }
  const ComplexMatrix reduced = partial_trace(out, dims, keep_legs);
  // Kept legs come out as (R_kept..., A_kept...) in ascending order.
  std::vector<std::size_t> sorted = kept;
  std::sort(sorted.begin(), sorted.end());
  ComplexVector target = ComplexVector::Ones(1);
  std::vector<std::size_t> target_dims;
  for (const auto i : sorted) {
    ComplexVector next(target.size() * pur[i].size());
    for (Eigen::Index x = 0; x < target.size(); ++x)
      for (Eigen::Index y = 0; y < pur[i].size(); ++y) next(x * pur[i].size() + y) = target(x) * pur[i](y);
    target = next;
    target_dims.push_back(dims[i]);
    target_dims.push_back(dims[i]);
  }
  std::vector<std::size_t> tperm;
  for (std::size_t k = 0; k < sorted.size(); ++k) tperm.push_back(2 * k);
  for (std::size_t k = 0; k < sorted.size(); ++k) tperm.push_back(2 * k + 1);
  const ComplexVector t = permute(target, target_dims, tperm);
  return std::real(t.dot(reduced * t));
}

// Haar twirl of a single-qubit channel in closed form: the depolarizing
// channel with the same entanglement fidelity.
inline ComplexMatrix haar_twirl_qubit(const std::vector<ComplexMatrix>& kraus, const ComplexMatrix& rho) {
  double fc = 0.0;
  for (const auto& a : kraus) fc += std::norm(a.trace()) / 4.0;
  const double q = (1.0 - fc) / (1.0 - 0.25);
  return (1.0 - q) * rho + q * rho.trace() * ComplexMatrix::Identity(2, 2) / 2.0;
}

}  // namespace oracle
