#pragma once

#include "cartanlim/hreal.hpp"
#include "cartanlim/rational.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cartanlim {

struct SingularMatrixError : std::domain_error {
    SingularMatrixError() : std::domain_error("singular matrix") {}
};

struct NotFiniteError : std::domain_error {
    explicit NotFiniteError(const std::string& what) : std::domain_error(what) {}
};

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const HReal& x) { return x.is_zero(); }

template <class F>
struct Vec3 {
    std::array<F, 3> v{F(0), F(0), F(0)};

    Vec3() = default;
    Vec3(F a, F b, F c) : v{std::move(a), std::move(b), std::move(c)} {}

    const F& operator[](std::size_t i) const { return v[i]; }
    F& operator[](std::size_t i) { return v[i]; }

    bool is_zero() const { return cartanlim::is_zero(v[0]) && cartanlim::is_zero(v[1]) && cartanlim::is_zero(v[2]); }
    bool operator==(const Vec3& o) const { return v == o.v; }

    Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
    Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
    Vec3 operator*(const F& c) const { return {v[0] * c, v[1] * c, v[2] * c}; }
};

template <class F>
F dot(const Vec3<F>& a, const Vec3<F>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class F>
Vec3<F> cross(const Vec3<F>& a, const Vec3<F>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class F>
F norm_sq(const Vec3<F>& a) {
    return dot(a, a);
}

template <class F>
struct Mat3 {
    // Row-major entries.
    std::array<F, 9> m{F(0), F(0), F(0), F(0), F(0), F(0), F(0), F(0), F(0)};

    Mat3() = default;
    explicit Mat3(std::array<F, 9> e) : m(std::move(e)) {}

    static Mat3 identity() {
        Mat3 r;
        r.at(0, 0) = F(1);
        r.at(1, 1) = F(1);
        r.at(2, 2) = F(1);
        return r;
    }

    static Mat3 diagonal(const F& a, const F& b, const F& c) {
        Mat3 r;
        r.at(0, 0) = a;
        r.at(1, 1) = b;
        r.at(2, 2) = c;
        return r;
    }

    /// Elementary matrix with a single 1 in row i, column j (0-based).
    static Mat3 unit(std::size_t i, std::size_t j) {
        Mat3 r;
        r.at(i, j) = F(1);
        return r;
    }

    const F& at(std::size_t i, std::size_t j) const { return m[3 * i + j]; }
    F& at(std::size_t i, std::size_t j) { return m[3 * i + j]; }

    Vec3<F> column(std::size_t j) const { return {at(0, j), at(1, j), at(2, j)}; }
    Vec3<F> row(std::size_t i) const { return {at(i, 0), at(i, 1), at(i, 2)}; }

    bool operator==(const Mat3& o) const { return m == o.m; }

    bool is_zero() const {
        for (const auto& e : m)
            if (!cartanlim::is_zero(e)) return false;
        return true;
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.m[k] = m[k] + o.m[k];
        return r;
    }

    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.m[k] = m[k] - o.m[k];
        return r;
    }

    Mat3 operator-() const {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.m[k] = -m[k];
        return r;
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                F acc = m[3 * i] * o.at(0, j);
                acc += m[3 * i + 1] * o.at(1, j);
                acc += m[3 * i + 2] * o.at(2, j);
                r.at(i, j) = std::move(acc);
            }
        return r;
    }

    Mat3 operator*(const F& c) const {
        Mat3 r;
        for (std::size_t k = 0; k < 9; ++k) r.m[k] = m[k] * c;
        return r;
    }

    Vec3<F> operator*(const Vec3<F>& x) const {
        return {dot(row(0), x), dot(row(1), x), dot(row(2), x)};
    }

    Mat3 transpose() const {
        Mat3 r;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
        return r;
    }

    F trace() const { return at(0, 0) + at(1, 1) + at(2, 2); }
};

template <class F>
F det3(const Mat3<F>& a) {
    return a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1)) -
           a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0)) +
           a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
}

/// Transposed cofactor matrix, so that a * adjugate(a) = det(a) * I.
template <class F>
Mat3<F> adjugate(const Mat3<F>& a) {
    Mat3<F> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            r.at(i, j) = a.at(r0, c0) * a.at(r1, c1) - a.at(r0, c1) * a.at(r1, c0);
        }
    return r;
}

template <class F>
Mat3<F> inverse(const Mat3<F>& a) {
    const F d = det3(a);
    if (is_zero(d)) throw SingularMatrixError();
    Mat3<F> adj = adjugate(a);
    Mat3<F> r;
    for (std::size_t k = 0; k < 9; ++k) r.m[k] = adj.m[k] / d;
    return r;
}

/// Entrywise shadow; every entry must be finite.
inline Mat3<Rational> matrix_shadow(const Mat3<HReal>& a) {
    Mat3<Rational> r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (a.at(i, j).is_infinite())
                throw NotFiniteError("matrix_shadow: entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is not in Fin");
            r.at(i, j) = a.at(i, j).shadow();
        }
    return r;
}

template <class F>
Mat3<F> bracket(const Mat3<F>& x, const Mat3<F>& y) {
    return x * y - y * x;
}

// ---------------------------------------------------------------------------
// Dense exact matrices of arbitrary shape (row reduction, rank, kernel).
// ---------------------------------------------------------------------------

template <class F>
class MatX {
public:
    MatX(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    F& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    /// Reduced row echelon form; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && is_zero(at(p, c))) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
            const F inv = F(1) / at(r, c);
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || is_zero(at(i, c))) continue;
                const F f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j) at(i, j) = at(i, j) - f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        MatX tmp = *this;
        return tmp.rref().size();
    }

    /// Basis of the right kernel {x : Mx = 0}.
    std::vector<std::vector<F>> kernel() const {
        MatX tmp = *this;
        const std::vector<std::size_t> pivots = tmp.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : pivots) is_pivot[c] = true;
        std::vector<std::vector<F>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<F> x(cols_, F(0));
            x[free] = F(1);
            for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -tmp.at(k, free);
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    std::size_t rows_, cols_;
    std::vector<F> data_;
};

/// Kernel of a 3x3 matrix as a list of basis vectors.
template <class F>
std::vector<Vec3<F>> kernel(const Mat3<F>& a) {
    MatX<F> m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = a.at(i, j);
    std::vector<Vec3<F>> out;
    for (auto& x : m.kernel()) out.push_back(Vec3<F>{x[0], x[1], x[2]});
    return out;
}

template <class F>
std::size_t rank(const Mat3<F>& a) {
    MatX<F> m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = a.at(i, j);
    return m.rank();
}

// ---------------------------------------------------------------------------
// Traceless 3x3 coordinates.  The fixed basis, in this order:
//   E12, E13, E21, E23, E31, E32, H1 = diag(1,-1,0), H2 = diag(0,1,-1).
// All 8- and 28-dimensional coordinates below refer to it.
// ---------------------------------------------------------------------------

inline constexpr std::size_t kSl3Dim = 8;

template <class F>
Mat3<F> sl3_basis_matrix(std::size_t k) {
    switch (k) {
        case 0: return Mat3<F>::unit(0, 1);
        case 1: return Mat3<F>::unit(0, 2);
        case 2: return Mat3<F>::unit(1, 0);
        case 3: return Mat3<F>::unit(1, 2);
        case 4: return Mat3<F>::unit(2, 0);
        case 5: return Mat3<F>::unit(2, 1);
        case 6: return Mat3<F>::diagonal(F(1), F(-1), F(0));
        case 7: return Mat3<F>::diagonal(F(0), F(1), F(-1));
        default: throw std::out_of_range("sl3_basis_matrix");
    }
}

template <class F>
std::array<F, kSl3Dim> sl3_coords(const Mat3<F>& a) {
    if (!is_zero(a.trace())) throw std::invalid_argument("sl3_coords: matrix is not traceless");
    // diag(a00, a11, a22) = h1*H1 + h2*H2 with h1 = a00, h2 = a00 + a11.
    return {a.at(0, 1), a.at(0, 2), a.at(1, 0), a.at(1, 2),
            a.at(2, 0), a.at(2, 1), a.at(0, 0), a.at(0, 0) + a.at(1, 1)};
}

template <class F>
Mat3<F> sl3_from_coords(const std::array<F, kSl3Dim>& c) {
    Mat3<F> r;
    r.at(0, 1) = c[0];
    r.at(0, 2) = c[1];
    r.at(1, 0) = c[2];
    r.at(1, 2) = c[3];
    r.at(2, 0) = c[4];
    r.at(2, 1) = c[5];
    r.at(0, 0) = c[6];
    r.at(1, 1) = c[7] - c[6];
    r.at(2, 2) = -c[7];
    return r;
}

// ---------------------------------------------------------------------------
// 2-planes of traceless matrices and their Plucker coordinates.
// ---------------------------------------------------------------------------

struct DegeneratePlaneError : std::invalid_argument {
    explicit DegeneratePlaneError(const std::string& what) : std::invalid_argument(what) {}
};

struct NonDecomposableError : std::invalid_argument {
    NonDecomposableError() : std::invalid_argument("Plucker vector fails the Grassmann relations") {}
};

inline constexpr std::size_t kPluckerDim = 28;  // pairs from an 8-element basis

/// Index of the (i, j) slot, 0 <= i < j < 8, in lexicographic order.
inline constexpr std::size_t plucker_index(std::size_t i, std::size_t j) {
    return i * (2 * kSl3Dim - i - 1) / 2 + (j - i - 1);
}

template <class F>
class Plane2 {
public:
    Plane2(Mat3<F> x, Mat3<F> y) : x_(std::move(x)), y_(std::move(y)) {
        cx_ = sl3_coords(x_);
        cy_ = sl3_coords(y_);
        MatX<F> m(2, kSl3Dim);
        for (std::size_t j = 0; j < kSl3Dim; ++j) {
            m.at(0, j) = cx_[j];
            m.at(1, j) = cy_[j];
        }
        if (m.rank() != 2) throw DegeneratePlaneError("Plane2: basis is not rank 2");
    }

    const Mat3<F>& x() const { return x_; }
    const Mat3<F>& y() const { return y_; }
    const std::array<F, kSl3Dim>& x_coords() const { return cx_; }
    const std::array<F, kSl3Dim>& y_coords() const { return cy_; }

    /// Generic member u*X + v*Y.
    Mat3<F> element(const F& u, const F& v) const { return x_ * u + y_ * v; }

private:
    Mat3<F> x_, y_;
    std::array<F, kSl3Dim> cx_, cy_;
};

template <class F>
std::array<F, kPluckerDim> plucker(const Plane2<F>& p) {
    const auto& a = p.x_coords();
    const auto& b = p.y_coords();
    std::array<F, kPluckerDim> w;
    std::size_t k = 0;
    for (std::size_t i = 0; i < kSl3Dim; ++i)
        for (std::size_t j = i + 1; j < kSl3Dim; ++j) w[k++] = a[i] * b[j] - a[j] * b[i];
    return w;
}

template <class F>
bool grassmann_relations_hold(const std::array<F, kPluckerDim>& w) {
    auto slot = [&](std::size_t i, std::size_t j) -> F {
        if (i == j) return F(0);
        return i < j ? w[plucker_index(i, j)] : -w[plucker_index(j, i)];
    };
    for (std::size_t i = 0; i < kSl3Dim; ++i)
        for (std::size_t j = i + 1; j < kSl3Dim; ++j)
            for (std::size_t k = j + 1; k < kSl3Dim; ++k)
                for (std::size_t l = k + 1; l < kSl3Dim; ++l) {
                    const F rel = slot(i, j) * slot(k, l) - slot(i, k) * slot(j, l) +
                                  slot(i, l) * slot(j, k);
                    if (!is_zero(rel)) return false;
                }
    return true;
}

/// Recovers a plane from a decomposable Plucker vector.  The result's own
/// Plucker vector is a nonzero multiple of the input.
template <class F>
Plane2<F> plane_from_plucker(const std::array<F, kPluckerDim>& w) {
    if (!grassmann_relations_hold(w)) throw NonDecomposableError();
    auto slot = [&](std::size_t i, std::size_t j) -> F {
        if (i == j) return F(0);
        return i < j ? w[plucker_index(i, j)] : -w[plucker_index(j, i)];
    };
    for (std::size_t a = 0; a < kSl3Dim; ++a)
        for (std::size_t b = a + 1; b < kSl3Dim; ++b) {
            if (is_zero(slot(a, b))) continue;
            std::array<F, kSl3Dim> u, v;
            for (std::size_t k = 0; k < kSl3Dim; ++k) {
                u[k] = slot(a, k);
                v[k] = slot(b, k);
            }
            return Plane2<F>(sl3_from_coords(u), sl3_from_coords(v));
        }
    throw NonDecomposableError();  // zero vector
}

/// Dimension of {Z traceless : [Z, P] is contained in P}, via an exact linear
/// system on the 8-dimensional coordinate space.
template <class F>
std::size_t normalizer_dimension(const Plane2<F>& p) {
    // Functionals vanishing on the plane: kernel of the 2x8 coordinate matrix.
    MatX<F> span(2, kSl3Dim);
    for (std::size_t j = 0; j < kSl3Dim; ++j) {
        span.at(0, j) = p.x_coords()[j];
        span.at(1, j) = p.y_coords()[j];
    }
    const auto funcs = span.kernel();  // 6 functionals
    // Rows: functional applied to [e_m, X] and [e_m, Y] for each basis e_m.
    MatX<F> sys(2 * funcs.size(), kSl3Dim);
    for (std::size_t m = 0; m < kSl3Dim; ++m) {
        const Mat3<F> em = sl3_basis_matrix<F>(m);
        const auto bx = sl3_coords(bracket(em, p.x()));
        const auto by = sl3_coords(bracket(em, p.y()));
        for (std::size_t f = 0; f < funcs.size(); ++f) {
            F ax(0), ay(0);
            for (std::size_t k = 0; k < kSl3Dim; ++k) {
                ax += funcs[f][k] * bx[k];
                ay += funcs[f][k] * by[k];
            }
            sys.at(2 * f, m) = std::move(ax);
            sys.at(2 * f + 1, m) = std::move(ay);
        }
    }
    return sys.kernel().size();
}

}  // namespace cartanlim
