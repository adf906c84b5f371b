#include "negmon/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

namespace negmon {

namespace {

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimMismatchError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()) + " differ");
  }
}

void check_dims_consistent(const ComplexMatrix& m, const DimSpec& dims, std::size_t which,
                           const char* op) {
  if (!m.square()) {
    throw DimMismatchError(std::string(op) + ": matrix must be square");
  }
  if (dims.size() == 0 || dims.product() != m.rows()) {
    throw DimMismatchError(std::string(op) + ": subsystem dimensions do not factor the matrix side " +
                           std::to_string(m.rows()));
  }
  if (which >= dims.size()) {
    throw DimMismatchError(std::string(op) + ": subsystem index " + std::to_string(which) +
                           " out of range");
  }
}

}  // namespace

DimSpec::DimSpec(std::initializer_list<std::size_t> dims) : dims_(dims) {
  for (std::size_t d : dims_) {
    if (d == 0) throw DimMismatchError("DimSpec: subsystem dimensions must be positive");
  }
}

DimSpec::DimSpec(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (std::size_t d : dims_) {
    if (d == 0) throw DimMismatchError("DimSpec: subsystem dimensions must be positive");
  }
}

std::size_t DimSpec::product() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::size_t DimSpec::stride(std::size_t k) const {
  std::size_t s = 1;
  for (std::size_t l = k + 1; l < dims_.size(); ++l) s *= dims_[l];
  return s;
}

DimSpec DimSpec::without(std::size_t k) const {
  std::vector<std::size_t> rest;
  rest.reserve(dims_.size() - 1);
  for (std::size_t l = 0; l < dims_.size(); ++l) {
    if (l != k) rest.push_back(dims_[l]);
  }
  return DimSpec(std::move(rest));
}

DimSpec DimSpec::append(std::size_t d) const {
  std::vector<std::size_t> ext = dims_;
  ext.push_back(d);
  return DimSpec(std::move(ext));
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimMismatchError("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                           " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  check_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  check_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

Complex ComplexMatrix::trace() const {
  if (!square()) throw DimMismatchError("trace: matrix must be square");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_norm() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  const double bound = tol * std::max(1.0, max_norm());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > bound) return false;
    }
  }
  return true;
}

bool ComplexMatrix::is_finite() const {
  for (const auto& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  }
  return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimMismatchError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                           std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix d(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) d(j, i) = std::conj(m(i, j));
  }
  return d;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  }
  return t;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) c.entries()[i] = std::conj(m.entries()[i]);
  return c;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex f = a(ia, ja);
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          c(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
      }
    }
  }
  return c;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimSpec& dims, std::size_t which) {
  check_dims_consistent(m, dims, which, "partial_transpose");
  const std::size_t n = m.rows();
  const std::size_t d = dims[which];
  const std::size_t s = dims.stride(which);
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t iw = (i / s) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t jw = (j / s) % d;
      const std::size_t ip = i - iw * s + jw * s;
      const std::size_t jp = j - jw * s + iw * s;
      out(ip, jp) = m(i, j);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims, std::size_t which) {
  check_dims_consistent(m, dims, which, "partial_trace");
  const std::size_t d = dims[which];
  const std::size_t s = dims.stride(which);
  const std::size_t n_out = m.rows() / d;
  ComplexMatrix out(n_out, n_out);
  // Composite index i = pre * (d * s) + t * s + post, with post < s.
  const std::size_t n_pre = n_out / s;
  for (std::size_t ipre = 0; ipre < n_pre; ++ipre) {
    for (std::size_t ipost = 0; ipost < s; ++ipost) {
      const std::size_t io = ipre * s + ipost;
      for (std::size_t jpre = 0; jpre < n_pre; ++jpre) {
        for (std::size_t jpost = 0; jpost < s; ++jpost) {
          const std::size_t jo = jpre * s + jpost;
          Complex sum{0.0, 0.0};
          for (std::size_t t = 0; t < d; ++t) {
            sum += m(ipre * d * s + t * s + ipost, jpre * d * s + t * s + jpost);
          }
          out(io, jo) = sum;
        }
      }
    }
  }
  return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol) {
  if (!m.square()) throw DimMismatchError("hermitian_eigen: matrix must be square");
  if (!m.is_finite()) throw Error("hermitian_eigen: matrix has non-finite entries");
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, m.max_norm());
  if (!m.is_hermitian(tol)) {
    throw NotHermitianError("hermitian_eigen: matrix is not Hermitian within tolerance");
  }

  // Work on the symmetrized copy; tol-level asymmetry must not bias the sweep.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  if (n > 1) {
    const double thresh =
        scale * std::max(tol * 1e-2, static_cast<double>(n) * DBL_EPSILON);
    const double rot_floor = 0.1 * thresh;
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
      double off = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
      }
      if (off <= thresh) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double b = std::abs(a(p, q));
          if (b <= rot_floor) continue;
          const Complex phase = a(p, q) / b;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double theta = (aqq - app) / (2.0 * b);
          // Smaller-magnitude root of t^2 - 2*theta*t - 1 = 0.
          const double t = (theta >= 0.0) ? -1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                          : 1.0 / (-theta + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;

          const double app_new = c * c * app + 2.0 * b * s * c + s * s * aqq;
          const double aqq_new = s * s * app - 2.0 * b * s * c + c * c * aqq;
          a(p, p) = app_new;
          a(q, q) = aqq_new;
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            if (k == p || k == q) continue;
            const Complex akp = a(k, p);
            const Complex akq = a(k, q);
            a(k, p) = c * akp + s * std::conj(phase) * akq;
            a(k, q) = -s * phase * akp + c * akq;
            a(p, k) = std::conj(a(k, p));
            a(q, k) = std::conj(a(k, q));
          }
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = c * vkp + s * std::conj(phase) * vkq;
            v(k, q) = -s * phase * vkp + c * vkq;
          }
        }
      }
    }
    if (!converged) {
      // The loop above breaks on convergence before exhausting sweeps; do one
      // final check so a last-sweep success is not misreported.
      double off = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
      }
      if (off > thresh) {
        throw NoConvergenceError("hermitian_eigen: Jacobi sweep budget exhausted");
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    result.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, c) = v(r, order[c]);
  }
  return result;
}

double trace_norm_hermitian(const ComplexMatrix& m, double tol) {
  const auto eig = hermitian_eigen(m, tol);
  double sum = 0.0;
  for (double lambda : eig.eigenvalues) sum += std::abs(lambda);
  return sum;
}

double min_eigenvalue_hermitian(const ComplexMatrix& m, double tol) {
  return hermitian_eigen(m, tol).eigenvalues.front();
}

}  // namespace negmon
