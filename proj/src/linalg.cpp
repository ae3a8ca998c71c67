#include "qbc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbc/errors.hpp"

namespace qbc {
namespace {

void check_product(std::size_t a, std::size_t b, const char* what) {
  if (a != 0 && b > kMaxDimension / a) {
    throw CapacityExceeded(std::string(what) + ": dimension exceeds " +
                           std::to_string(kMaxDimension));
  }
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

void check_permutation(std::span<const std::size_t> perm, std::size_t legs) {
  if (perm.size() != legs) throw DimensionError("permutation length differs from leg count");
  std::vector<bool> seen(legs, false);
  for (const auto p : perm) {
    if (p >= legs || seen[p]) throw DimensionError("not a permutation of the legs");
    seen[p] = true;
  }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_product(a.rows(), b.rows(), "kron");
  check_product(a.cols(), b.cols(), "kron");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  check_product(a.size(), b.size(), "kron");
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexVector kron_all(std::span<const ComplexVector> factors) {
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemLayout& layout,
                            std::span<const std::size_t> keep) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_trace: matrix does not match layout " + layout.describe());
  }
  std::vector<bool> kept(layout.legs(), false);
  for (const auto leg : keep) {
    if (leg >= layout.legs()) throw DimensionError("partial_trace: keep index out of range");
    kept[leg] = true;
  }
  const auto strides = strides_of(layout.dims());

  // Offsets contributed by kept and traced multi-indices, each enumerated in
  // row-major order of their own legs.
  auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> offs{0};
    for (std::size_t leg = 0; leg < layout.legs(); ++leg) {
      if (kept[leg] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(offs.size() * layout.dim(leg));
      for (const auto base : offs) {
        for (std::size_t x = 0; x < layout.dim(leg); ++x) next.push_back(base + x * strides[leg]);
      }
      offs = std::move(next);
    }
    return offs;
  };
  const auto keep_offs = offsets(true);
  const auto trace_offs = offsets(false);

  const auto dk = static_cast<Eigen::Index>(keep_offs.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (const auto t : trace_offs) {
        acc += m(static_cast<Eigen::Index>(keep_offs[i] + t),
                 static_cast<Eigen::Index>(keep_offs[j] + t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

std::vector<std::size_t> permutation_index_map(const SystemLayout& layout,
                                               std::span<const std::size_t> perm) {
  check_permutation(perm, layout.legs());
  const auto& dims = layout.dims();
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) new_dims[j] = dims[perm[j]];
  const auto new_strides = strides_of(new_dims);
  // Stride, in the new ordering, of each old leg.
  std::vector<std::size_t> old_leg_stride(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) old_leg_stride[perm[j]] = new_strides[j];

  std::vector<std::size_t> map(layout.total_dim());
  std::vector<std::size_t> digit(dims.size(), 0);
  std::size_t target = 0;
  for (std::size_t idx = 0; idx < map.size(); ++idx) {
    map[idx] = target;
    // Odometer increment over old legs, last leg fastest.
    for (std::size_t leg = dims.size(); leg-- > 0;) {
      if (++digit[leg] < dims[leg]) {
        target += old_leg_stride[leg];
        break;
      }
      target -= (dims[leg] - 1) * old_leg_stride[leg];
      digit[leg] = 0;
    }
  }
  return map;
}

ComplexVector permute_legs(const ComplexVector& v, const SystemLayout& layout,
                           std::span<const std::size_t> perm) {
  if (static_cast<std::size_t>(v.size()) != layout.total_dim()) {
    throw DimensionError("permute_legs: vector does not match layout " + layout.describe());
  }
  const auto map = permutation_index_map(layout, perm);
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(map[i]) = v(i);
  return out;
}

ComplexMatrix permute_legs(const ComplexMatrix& m, const SystemLayout& layout,
                           std::span<const std::size_t> perm) {
  return permute_legs(m, layout, perm, layout, perm);
}

ComplexMatrix permute_legs(const ComplexMatrix& m, const SystemLayout& out,
                           std::span<const std::size_t> out_perm, const SystemLayout& in,
                           std::span<const std::size_t> in_perm) {
  if (static_cast<std::size_t>(m.rows()) != out.total_dim() ||
      static_cast<std::size_t>(m.cols()) != in.total_dim()) {
    throw DimensionError("permute_legs: operator does not match layouts " + out.describe() +
                         " <- " + in.describe());
  }
  const auto row_map = permutation_index_map(out, out_perm);
  const auto col_map = permutation_index_map(in, in_perm);
  ComplexMatrix result(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const auto nc = static_cast<Eigen::Index>(col_map[c]);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      result(static_cast<Eigen::Index>(row_map[r]), nc) = m(r, c);
    }
  }
  return result;
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

EigenDecomposition eigh(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw DimensionError("eigh: matrix is not square");
  if (h.size() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
  const double defect = hermitian_defect(h);
  if (!(defect <= tol)) {
    throw InvalidState("eigh: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw InvalidState("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector clip_spectrum(const RealVector& values, double tol) {
  RealVector out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < 0.0) {
      if (out(i) < -tol) {
        throw InvalidState("negative eigenvalue " + std::to_string(out(i)) +
                           " below PSD tolerance");
      }
      out(i) = 0.0;
    }
  }
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  const auto eig = eigh(m);
  const RealVector roots = clip_spectrum(eig.values).cwiseSqrt();
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (const double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double spectral_entropy_bits(const ComplexMatrix& m) {
  const RealVector values = clip_spectrum(eigh(m).values);
  return shannon_entropy_bits(std::span<const double>(values.data(), values.size()));
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

}  // namespace qbc
