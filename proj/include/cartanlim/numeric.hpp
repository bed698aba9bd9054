#pragma once

#include "cartanlim/labels.hpp"
#include "cartanlim/limits.hpp"
#include "cartanlim/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cartanlim {

// Double-precision bridge: substitute t = 1/n to turn exact matrices into
// real sequences, detect the limit plane numerically, and cross-validate the
// exact classifiers.  Tolerances: Plucker Cauchy test 1e-6, coordinate snap
// 1e-8, rank decisions by a singular-value gap ratio of 1e6, Iwasawa
// reconstruction 1e-12.

using Mat3d = std::array<double, 9>;

inline double& md_at(Mat3d& m, std::size_t i, std::size_t j) { return m[3 * i + j]; }
inline double md_at(const Mat3d& m, std::size_t i, std::size_t j) { return m[3 * i + j]; }

inline Mat3d md_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

inline Mat3d md_mul(const Mat3d& a, const Mat3d& b) {
    Mat3d r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double acc = 0;
            for (std::size_t k = 0; k < 3; ++k) acc += md_at(a, i, k) * md_at(b, k, j);
            md_at(r, i, j) = acc;
        }
    return r;
}

inline double md_det(const Mat3d& a) {
    return md_at(a, 0, 0) * (md_at(a, 1, 1) * md_at(a, 2, 2) - md_at(a, 1, 2) * md_at(a, 2, 1)) -
           md_at(a, 0, 1) * (md_at(a, 1, 0) * md_at(a, 2, 2) - md_at(a, 1, 2) * md_at(a, 2, 0)) +
           md_at(a, 0, 2) * (md_at(a, 1, 0) * md_at(a, 2, 1) - md_at(a, 1, 1) * md_at(a, 2, 0));
}

inline Mat3d md_inverse(const Mat3d& a) {
    const double d = md_det(a);
    if (d == 0.0) throw std::domain_error("md_inverse: singular matrix");
    Mat3d r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            md_at(r, i, j) = (md_at(a, r0, c0) * md_at(a, r1, c1) -
                              md_at(a, r0, c1) * md_at(a, r1, c0)) / d;
        }
    return r;
}

inline Mat3d to_double(const Mat3<Rational>& m) {
    Mat3d r{};
    for (std::size_t k = 0; k < 9; ++k) r[k] = to_double(m.m[k]);
    return r;
}

/// Entrywise evaluation at t = 1/n.  Throws on a denominator pole.
inline Mat3d evaluate_matrix(const Mat3<HReal>& m, long long n) {
    if (n <= 0) throw std::invalid_argument("evaluate_matrix: n must be positive");
    const double t = 1.0 / static_cast<double>(n);
    Mat3d r{};
    for (std::size_t k = 0; k < 9; ++k) r[k] = m.m[k].eval(t);
    return r;
}

/// A matrix sequence n -> M(1/n) obtained from an exact matrix.
struct RealMatrixSeq {
    Mat3<HReal> source;
    Mat3d at(long long n) const { return evaluate_matrix(source, n); }
};

// ---------------------------------------------------------------------------
// Iwasawa decomposition P = K N A.
// ---------------------------------------------------------------------------

struct Iwasawa {
    Mat3d k;  // orthogonal
    Mat3d n;  // unipotent upper triangular
    Mat3d a;  // positive diagonal
};

/// Modified Gram-Schmidt on the columns: P = QR, then R = N A with
/// A = diag(R) > 0 and N = R A^-1 unipotent upper triangular.
inline Iwasawa iwasawa(const Mat3d& p) {
    Mat3d q{};
    double r[3][3] = {};
    double col[3][3];
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) col[j][i] = md_at(p, i, j);

    double scale = 0;
    for (double v : p) scale = std::max(scale, std::abs(v));
    if (scale == 0) throw std::domain_error("iwasawa: zero matrix");

    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double d = 0;
            for (std::size_t i = 0; i < 3; ++i) d += md_at(q, i, k) * col[j][i];
            r[k][j] = d;
            for (std::size_t i = 0; i < 3; ++i) col[j][i] -= d * md_at(q, i, k);
        }
        double nrm = 0;
        for (std::size_t i = 0; i < 3; ++i) nrm += col[j][i] * col[j][i];
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-12 * scale) throw std::domain_error("iwasawa: matrix is near singular");
        r[j][j] = nrm;
        for (std::size_t i = 0; i < 3; ++i) md_at(q, i, j) = col[j][i] / nrm;
    }

    Iwasawa out;
    out.k = q;
    out.a = {r[0][0], 0, 0, 0, r[1][1], 0, 0, 0, r[2][2]};
    out.n = md_identity();
    md_at(out.n, 0, 1) = r[0][1] / r[1][1];
    md_at(out.n, 0, 2) = r[0][2] / r[2][2];
    md_at(out.n, 1, 2) = r[1][2] / r[2][2];
    return out;
}

// ---------------------------------------------------------------------------
// Numeric limit-plane detection.
// ---------------------------------------------------------------------------

using Plucker28 = std::array<double, kPluckerDim>;

inline std::array<double, kSl3Dim> sl3_coords_d(const Mat3d& a) {
    return {md_at(a, 0, 1), md_at(a, 0, 2), md_at(a, 1, 0), md_at(a, 1, 2),
            md_at(a, 2, 0), md_at(a, 2, 1), md_at(a, 0, 0), md_at(a, 0, 0) + md_at(a, 1, 1)};
}

inline Plucker28 plucker_d(const Mat3d& x, const Mat3d& y) {
    const auto a = sl3_coords_d(x), b = sl3_coords_d(y);
    Plucker28 w{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < kSl3Dim; ++i)
        for (std::size_t j = i + 1; j < kSl3Dim; ++j) w[k++] = a[i] * b[j] - a[j] * b[i];
    return w;
}

/// Scales to unit length and fixes the sign of the largest coordinate.
inline Plucker28 normalize_plucker(Plucker28 w) {
    double nrm = 0;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        nrm += w[i] * w[i];
        if (std::abs(w[i]) > std::abs(w[imax])) imax = i;
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0) throw std::domain_error("normalize_plucker: zero vector");
    const double s = (w[imax] < 0 ? -1.0 : 1.0) / nrm;
    for (double& v : w) v *= s;
    return w;
}

/// Projective distance between unit Plucker vectors (minimum over signs).
inline double plucker_distance(const Plucker28& a, const Plucker28& b) {
    double dplus = 0, dminus = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dplus += (a[i] - b[i]) * (a[i] - b[i]);
        dminus += (a[i] + b[i]) * (a[i] + b[i]);
    }
    return std::sqrt(std::min(dplus, dminus));
}

inline Plucker28 canonical_plucker(ClassLabel c) {
    const Plane2<Rational> alg = canonical_algebra(c);
    const auto w = plucker(alg);
    Plucker28 d{};
    for (std::size_t i = 0; i < w.size(); ++i) d[i] = to_double(w[i]);
    return normalize_plucker(d);
}

namespace detail {

/// Eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi.
inline std::array<double, 3> symmetric_eigenvalues(double s[3][3]) {
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::abs(s[0][1]) + std::abs(s[0][2]) + std::abs(s[1][2]);
        if (off < 1e-30) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(s[p][q]) < 1e-300) continue;
                const double theta = (s[q][q] - s[p][p]) / (2 * s[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double skp = s[k][p], skq = s[k][q];
                    s[k][p] = c * skp - sn * skq;
                    s[k][q] = sn * skp + c * skq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double spk = s[p][k], sqk = s[q][k];
                    s[p][k] = c * spk - sn * sqk;
                    s[q][k] = sn * spk + c * sqk;
                }
            }
    }
    std::array<double, 3> ev{s[0][0], s[1][1], s[2][2]};
    std::sort(ev.begin(), ev.end(), [](double a, double b) { return a > b; });
    return ev;
}

/// Numeric rank of the stacked 6x3 matrix [X; Y] by the singular-value gap
/// rule: cut where consecutive singular values differ by a factor > 1e6.
inline std::size_t stacked_kernel_dim(const Mat3d& x, const Mat3d& y) {
    double s[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0;
            for (int k = 0; k < 3; ++k)
                acc += md_at(x, k, i) * md_at(x, k, j) + md_at(y, k, i) * md_at(y, k, j);
            s[i][j] = acc;
        }
    const auto ev = symmetric_eigenvalues(s);
    std::array<double, 3> sv{};
    for (int i = 0; i < 3; ++i) sv[i] = std::sqrt(std::max(ev[i], 0.0));
    std::size_t rank = 3;
    for (std::size_t i = 0; i < 3; ++i) {
        if (sv[i] <= 0 || (i > 0 && sv[i - 1] / sv[i] > 1e6) || sv[i] < 1e-12 * sv[0]) {
            rank = i;
            break;
        }
    }
    return 3 - rank;
}

}  // namespace detail

/// Tolerance-aware version of the abelian-subalgebra decision tree, applied
/// to a snapped Plucker vector.
inline ClassLabel classify_plane_numeric(const Plucker28& w) {
    auto slot = [&](std::size_t i, std::size_t j) -> double {
        if (i == j) return 0;
        return i < j ? w[plucker_index(i, j)] : -w[plucker_index(j, i)];
    };
    // Pivot on the largest slot and rebuild a basis.
    std::size_t pa = 0, pb = 1;
    double best = 0;
    for (std::size_t i = 0; i < kSl3Dim; ++i)
        for (std::size_t j = i + 1; j < kSl3Dim; ++j)
            if (std::abs(slot(i, j)) > best) {
                best = std::abs(slot(i, j));
                pa = i;
                pb = j;
            }
    if (best == 0) throw std::domain_error("classify_plane_numeric: zero vector");
    auto build = [](const std::array<double, kSl3Dim>& c) {
        Mat3d r{};
        md_at(r, 0, 1) = c[0];
        md_at(r, 0, 2) = c[1];
        md_at(r, 1, 0) = c[2];
        md_at(r, 1, 2) = c[3];
        md_at(r, 2, 0) = c[4];
        md_at(r, 2, 1) = c[5];
        md_at(r, 0, 0) = c[6];
        md_at(r, 1, 1) = c[7] - c[6];
        md_at(r, 2, 2) = -c[7];
        return r;
    };
    std::array<double, kSl3Dim> u{}, v{};
    double unrm = 0, vnrm = 0;
    for (std::size_t k = 0; k < kSl3Dim; ++k) {
        u[k] = slot(pa, k);
        v[k] = slot(pb, k);
        unrm += u[k] * u[k];
        vnrm += v[k] * v[k];
    }
    unrm = std::sqrt(unrm);
    vnrm = std::sqrt(vnrm);
    for (std::size_t k = 0; k < kSl3Dim; ++k) {
        u[k] /= unrm;
        v[k] /= vnrm;
    }
    const Mat3d x = build(u), y = build(v);

    const double tol = 1e-6;
    auto inv2 = [](const Mat3d& a) {
        return md_at(a, 0, 0) * md_at(a, 1, 1) - md_at(a, 0, 1) * md_at(a, 1, 0) +
               md_at(a, 0, 0) * md_at(a, 2, 2) - md_at(a, 0, 2) * md_at(a, 2, 0) +
               md_at(a, 1, 1) * md_at(a, 2, 2) - md_at(a, 1, 2) * md_at(a, 2, 1);
    };
    auto madd = [](const Mat3d& a, const Mat3d& b, double sb) {
        Mat3d r{};
        for (std::size_t k = 0; k < 9; ++k) r[k] = a[k] + sb * b[k];
        return r;
    };
    // Binary-form coefficients of c2 and c3 on the plane.
    const double a2 = inv2(x), c2v = inv2(y), b2 = inv2(madd(x, y, 1)) - a2 - c2v;
    const double d1 = md_det(x), g3 = md_det(y);
    const double dsum = md_det(madd(x, y, 1)), ddiff = md_det(madd(x, y, -1));
    const double f3 = (dsum + ddiff) / 2 - d1, e3 = (dsum - ddiff) / 2 - g3;

    const bool nilpotent = std::abs(a2) < tol && std::abs(b2) < tol && std::abs(c2v) < tol &&
                           std::abs(d1) < tol && std::abs(e3) < tol && std::abs(f3) < tol &&
                           std::abs(g3) < tol;
    if (nilpotent) {
        double prod = 0;
        for (const Mat3d& m : {md_mul(x, x), md_mul(x, y), md_mul(y, y)})
            for (double e : m) prod = std::max(prod, std::abs(e));
        if (prod > tol) return ClassLabel::N1;
        const std::size_t kdim = detail::stacked_kernel_dim(x, y);
        if (kdim == 1) return ClassLabel::N2;
        if (kdim == 2) return ClassLabel::N3;
        throw std::domain_error("classify_plane_numeric: unexpected kernel dimension");
    }

    // Not nilpotent: C unless c2 and c3 share a real root direction.
    auto c3_at = [&](double uu, double vv) {
        return d1 * uu * uu * uu + e3 * uu * uu * vv + f3 * uu * vv * vv + g3 * vv * vv * vv;
    };
    bool has_nil_dir = false;
    if (std::abs(a2) < tol && std::abs(d1) < tol) has_nil_dir = true;  // direction (1:0)
    if (!has_nil_dir) {
        // roots of a2 r^2 + b2 r + c2v (direction (r : 1))
        if (std::abs(a2) >= tol) {
            const double disc = b2 * b2 - 4 * a2 * c2v;
            if (disc > -tol) {
                const double sq = std::sqrt(std::max(disc, 0.0));
                for (double r : {(-b2 + sq) / (2 * a2), (-b2 - sq) / (2 * a2)}) {
                    const double scale = std::max(1.0, std::abs(r));
                    if (std::abs(c3_at(r, 1)) < tol * scale * scale * scale) has_nil_dir = true;
                }
            }
        } else if (std::abs(b2) >= tol) {
            const double r = -c2v / b2;
            const double scale = std::max(1.0, std::abs(r));
            if (std::abs(c3_at(r, 1)) < tol * scale * scale * scale) has_nil_dir = true;
        }
    }
    return has_nil_dir ? ClassLabel::F : ClassLabel::C;
}

struct LimitDetection {
    Plucker28 plucker;
    ClassLabel label;
    double last_step;  // Cauchy increment between the last two schedule points
};

/// Conjugates the given plane generators by the supplied family along the
/// schedule, watches the normalized Plucker vectors converge (Cauchy at
/// 1e-6), snaps coordinates below 1e-8 of the maximum, and classifies the
/// limit.
inline LimitDetection detect_limit_plane(const std::function<Mat3d(long long)>& conjugator,
                                         const std::vector<long long>& schedule, const Mat3d& h1,
                                         const Mat3d& h2) {
    if (schedule.size() < 3) throw std::invalid_argument("detect_limit_plane: need >= 3 points");
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("detect_limit_plane: schedule must increase");

    std::vector<Plucker28> vs;
    for (long long n : schedule) {
        const Mat3d p = conjugator(n);
        const Mat3d pinv = md_inverse(p);
        vs.push_back(normalize_plucker(
            plucker_d(md_mul(md_mul(p, h1), pinv), md_mul(md_mul(p, h2), pinv))));
    }
    // Cauchy decrease with a geometric tail estimate: with increments d_k
    // shrinking by a factor r, the remaining gap past the last point is about
    // d_last * r / (1 - r), which must be below the tolerance.
    const std::size_t m = vs.size();
    const double d_prev = plucker_distance(vs[m - 3], vs[m - 2]);
    const double d_last = plucker_distance(vs[m - 2], vs[m - 1]);
    bool converged;
    if (d_last <= 1e-9) {
        converged = true;  // effectively constant tail
    } else if (d_last >= d_prev) {
        converged = false;
    } else {
        const double r = d_last / d_prev;
        converged = d_last * r / (1 - r) < 1e-6;
    }
    if (!converged)
        throw std::domain_error("detect_limit_plane: no convergence at tolerance 1e-6");
    const double last = d_last;

    Plucker28 w = vs.back();
    double wmax = 0;
    for (double v : w) wmax = std::max(wmax, std::abs(v));
    for (double& v : w)
        if (std::abs(v) < 1e-8 * wmax) v = 0;
    return LimitDetection{w, classify_plane_numeric(w), last};
}

/// Default entry point: the conjugated plane is the diagonal Cartan plane.
inline LimitDetection detect_limit_plane(const std::function<Mat3d(long long)>& conjugator,
                                         const std::vector<long long>& schedule) {
    const Mat3d h1 = {1, 0, 0, 0, -1, 0, 0, 0, 0};
    const Mat3d h2 = {0, 0, 0, 0, 1, 0, 0, 0, -1};
    return detect_limit_plane(conjugator, schedule, h1, h2);
}

inline LimitDetection detect_limit_plane(const RealMatrixSeq& seq,
                                         const std::vector<long long>& schedule) {
    return detect_limit_plane([&](long long n) { return seq.at(n); }, schedule);
}

}  // namespace cartanlim
