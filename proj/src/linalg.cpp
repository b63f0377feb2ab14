#include "bellsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellsim {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("matrix/vector dimension must be 2 or 4, got " +
                                std::to_string(dim));
  }
}

void check_same_dim(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

}  // namespace

Matrix::Matrix(int dim) : dim_(dim) { check_dim(dim); }

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  check_same_dim(dim_, rhs.dim_);
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  check_same_dim(dim_, rhs.dim_);
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
  return *this;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(a_[i]));
  return m;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }
Matrix operator*(double s, Matrix m) { return m *= Complex(s); }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  check_same_dim(lhs.dim(), rhs.dim());
  const int n = lhs.dim();
  Matrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += lhs(r, k) * rhs(k, c);
      out(r, c) = s;
    }
  return out;
}

Vector::Vector(int dim) : dim_(dim) { check_dim(dim); }

Vector::Vector(std::initializer_list<Complex> entries)
    : dim_(static_cast<int>(entries.size())) {
  check_dim(dim_);
  std::copy(entries.begin(), entries.end(), a_.begin());
}

double Vector::norm() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += std::norm(a_[i]);
  return std::sqrt(s);
}

Vector operator*(const Matrix& m, const Vector& v) {
  check_same_dim(m.dim(), v.dim());
  Vector out(v.dim());
  for (int r = 0; r < m.dim(); ++r) {
    Complex s = 0.0;
    for (int c = 0; c < m.dim(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

Complex inner(const Vector& bra, const Vector& ket) {
  check_same_dim(bra.dim(), ket.dim());
  Complex s = 0.0;
  for (int i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("kron supports only 2x2 (x) 2x2 factors");
  }
  Matrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

double hermiticity_defect(const Matrix& m) {
  double d = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (std::abs(a(r, c) - b(r, c)) > tol) return false;
  return true;
}

namespace {

// Real symmetric tridiagonal form of a Hermitian matrix: diagonal d plus the
// squared magnitudes of the sub-diagonal. Only |e|^2 enters the Sturm counts
// below, so the sub-diagonal phases are never needed.
struct Tridiagonal {
  int n = 0;
  std::array<double, 4> d{};
  std::array<double, 3> e2{};
};

// Householder reduction: each step is one unitary similarity that zeros a
// column below the first sub-diagonal. For our sizes that is at most two
// reflections, all in fixed straight-line arithmetic.
Tridiagonal tridiagonalize(const Matrix& h) {
  const int n = h.dim();
  std::array<Complex, 16> a{};
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[r * n + c] = h(r, c);

  for (int k = 0; k + 2 < n; ++k) {
    double rest2 = 0.0;
    for (int i = k + 2; i < n; ++i) rest2 += std::norm(a[i * n + k]);
    if (rest2 == 0.0) continue;  // column already in tridiagonal shape

    const Complex x0 = a[(k + 1) * n + k];
    const double x0abs = std::abs(x0);
    const double colnorm = std::sqrt(rest2 + std::norm(x0));
    const Complex phase = (x0abs > 0.0) ? x0 / x0abs : Complex{1.0, 0.0};
    const Complex alpha = -phase * colnorm;

    // Reflector P = I - beta u u^H with u = x - alpha e1; the sign of alpha
    // makes u[k+1] = phase * (|x0| + colnorm), so no cancellation.
    std::array<Complex, 4> u{};
    u[k + 1] = x0 - alpha;
    for (int i = k + 2; i < n; ++i) u[i] = a[i * n + k];
    double unorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) unorm2 += std::norm(u[i]);
    const double beta = 2.0 / unorm2;

    // Two-sided update A <- P A P: w = beta A u, v = w - (beta/2)(u^H w) u,
    // then A -= u v^H + v u^H.
    std::array<Complex, 4> w{};
    for (int r = 0; r < n; ++r) {
      Complex s = 0.0;
      for (int c = k + 1; c < n; ++c) s += a[r * n + c] * u[c];
      w[r] = beta * s;
    }
    Complex uhw = 0.0;
    for (int i = k + 1; i < n; ++i) uhw += std::conj(u[i]) * w[i];
    const Complex kappa = 0.5 * beta * uhw;
    std::array<Complex, 4> v{};
    for (int r = 0; r < n; ++r) v[r] = w[r] - kappa * u[r];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        a[r * n + c] -= u[r] * std::conj(v[c]) + v[r] * std::conj(u[c]);
  }

  Tridiagonal t;
  t.n = n;
  for (int i = 0; i < n; ++i) t.d[i] = a[i * n + i].real();
  for (int i = 0; i + 1 < n; ++i) t.e2[i] = std::norm(a[(i + 1) * n + i]);
  return t;
}

// Number of eigenvalues strictly below x via the Sturm pivot recurrence on
// the tridiagonal form. Unlike full elimination, a floored pivot here can
// only contaminate the single following term, so the count stays correct to
// within ~pivmin of each eigenvalue.
int sturm_count_below(const Tridiagonal& t, double x, double pivmin) {
  int negatives = 0;
  double q = 1.0;
  for (int i = 0; i < t.n; ++i) {
    q = (t.d[i] - x) - (i > 0 ? t.e2[i - 1] / q : 0.0);
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

std::vector<double> eigenvalues_by_bisection(const Matrix& h) {
  const Tridiagonal t = tridiagonalize(h);
  const int n = t.n;

  // Gershgorin bounds from the tridiagonal form
  double lo = 0.0, hi = 0.0, e2max = 0.0;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::sqrt(t.e2[i - 1]);
    if (i + 1 < n) {
      radius += std::sqrt(t.e2[i]);
      e2max = std::max(e2max, t.e2[i]);
    }
    if (i == 0 || t.d[i] - radius < lo) lo = t.d[i] - radius;
    if (i == 0 || t.d[i] + radius > hi) hi = t.d[i] + radius;
  }
  const double span = hi - lo;
  lo -= 1e-6 * span + 1e-12;
  hi += 1e-6 * span + 1e-12;
  // Floor small pivots so e2/q can never overflow: e2max / pivmin <= 1/DBL_MIN.
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, e2max);

  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    // k-th smallest = inf{ x : #below(x) >= k + 1 }
    double a = lo, b = hi;
    for (int it = 0; it < 96; ++it) {
      const double mid = 0.5 * (a + b);
      if (sturm_count_below(t, mid, pivmin) >= k + 1)
        b = mid;
      else
        a = mid;
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > 1e-8 * std::max(1.0, m.max_abs())) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  // Work on the Hermitian part so rounding in the input cannot leak in.
  Matrix h(m.dim());
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));

  if (m.dim() == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(h(0, 1)));
    return {mean - r, mean + r};
  }
  return eigenvalues_by_bisection(h);
}

double min_eigenvalue(const Matrix& m) { return hermitian_eigenvalues(m).front(); }

}  // namespace bellsim
