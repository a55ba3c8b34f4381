#pragma once

// Siegel upper half-space H_r, Hermitian upper half-space H_{b,b}, bounded
// domain D_{a,b}; their Moebius actions, the Cayley map D_{b,b} -> H_{b,b},
// Petersson norms, and seeded random generators.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <sstream>
#include <vector>

#include "pelks/errors.hpp"

namespace pelks::domains {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

inline constexpr double kMembershipFloor = 1e-10;
inline constexpr double kGroupTolerance = 1e-9;
inline constexpr double kConditionLimit = 1e12;
inline const cd kI{0.0, 1.0};

inline Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }

// (Z - Z*)/(2i)
inline Mat imh(const Mat& z) { return (z - z.adjoint()) / (2.0 * kI); }
inline Mat reh(const Mat& z) { return (z + z.adjoint()) / 2.0; }

inline double min_eigenvalue(const Mat& h) {
    Mat herm = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline double condition_number(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / s(s.size() - 1);
}

inline double scale_of(const Mat& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

class SiegelPoint {
public:
    explicit SiegelPoint(Mat z) : z_(std::move(z)) {
        if (z_.rows() != z_.cols() || z_.rows() == 0) throw NotInDomain("Siegel point must be square");
        if ((z_ - z_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale_of(z_))
            throw NotInDomain("Siegel point must be symmetric");
        if (min_eigenvalue(y().cast<cd>()) <= kMembershipFloor) throw NotInDomain("Im Z is not positive definite");
    }
    const Mat& z() const { return z_; }
    RMat y() const { return z_.imag(); }
    RMat x() const { return z_.real(); }
    Eigen::Index size() const { return z_.rows(); }

private:
    Mat z_;
};

class HermitianPoint {
public:
    explicit HermitianPoint(Mat z) : z_(std::move(z)) {
        if (z_.rows() != z_.cols() || z_.rows() == 0) throw NotInDomain("Hermitian point must be square");
        if (min_eigenvalue(imh(z_)) <= kMembershipFloor) throw NotInDomain("Imh Z is not positive definite");
    }
    const Mat& z() const { return z_; }
    Mat y() const { return imh(z_); }
    Mat x() const { return reh(z_); }
    Eigen::Index size() const { return z_.rows(); }

private:
    Mat z_;
};

// U in M_{a,b}(C) with 1_b - U*U > 0.
class BoundedPoint {
public:
    explicit BoundedPoint(Mat u) : u_(std::move(u)) {
        if (u_.rows() == 0 || u_.cols() == 0) throw NotInDomain("bounded point must be nonempty");
        if (min_eigenvalue(identity(u_.cols()) - u_.adjoint() * u_) <= kMembershipFloor)
            throw NotInDomain("1 - U*U is not positive definite");
    }
    const Mat& u() const { return u_; }
    Eigen::Index a() const { return u_.rows(); }
    Eigen::Index b() const { return u_.cols(); }

private:
    Mat u_;
};

enum class GroupForm { Symplectic, UnitaryJ, UnitaryIndefinite };

inline Mat block_j(Eigen::Index b) {
    Mat j = Mat::Zero(2 * b, 2 * b);
    j.topRightCorner(b, b) = identity(b);
    j.bottomLeftCorner(b, b) = -identity(b);
    return j;
}
inline Mat signature_form(Eigen::Index a, Eigen::Index b) {
    Mat s = Mat::Zero(a + b, a + b);
    s.topLeftCorner(a, a) = identity(a);
    s.bottomRightCorner(b, b) = -identity(b);
    return s;
}

class DomainGroupElement {
public:
    // a, b: block sizes. Symplectic and UnitaryJ use a = b.
    DomainGroupElement(Mat g, GroupForm form, Eigen::Index a, Eigen::Index b) : g_(std::move(g)), form_(form), a_(a), b_(b) {
        if (g_.rows() != a + b || g_.cols() != a + b) throw NotInGroup("group element has the wrong size");
        const double tol = kGroupTolerance * scale_of(g_) * scale_of(g_);
        double err = 0;
        switch (form_) {
            case GroupForm::Symplectic: {
                if (a != b) throw NotInGroup("symplectic blocks must be square");
                if (g_.imag().cwiseAbs().maxCoeff() > tol) throw NotInGroup("symplectic element must be real");
                Mat j = block_j(a);
                err = (g_.transpose() * j * g_ - j).cwiseAbs().maxCoeff();
                break;
            }
            case GroupForm::UnitaryJ: {
                if (a != b) throw NotInGroup("J-form blocks must be square");
                Mat j = block_j(a);
                err = (g_.adjoint() * j * g_ - j).cwiseAbs().maxCoeff();
                break;
            }
            case GroupForm::UnitaryIndefinite: {
                Mat s = signature_form(a, b);
                err = (g_.adjoint() * s * g_ - s).cwiseAbs().maxCoeff();
                break;
            }
        }
        if (err > tol) {
            std::ostringstream os;
            os << "defining identity violated by " << err;
            throw NotInGroup(os.str());
        }
    }
    const Mat& matrix() const { return g_; }
    GroupForm form() const { return form_; }
    Mat A() const { return g_.topLeftCorner(a_, a_); }
    Mat B() const { return g_.topRightCorner(a_, b_); }
    Mat C() const { return g_.bottomLeftCorner(b_, a_); }
    Mat D() const { return g_.bottomRightCorner(b_, b_); }
    Eigen::Index a() const { return a_; }
    Eigen::Index b() const { return b_; }

    friend DomainGroupElement operator*(const DomainGroupElement& x, const DomainGroupElement& y) {
        if (x.form_ != y.form_ || x.a_ != y.a_ || x.b_ != y.b_) throw NotInGroup("incompatible group elements");
        return {x.g_ * y.g_, x.form_, x.a_, x.b_};
    }

private:
    Mat g_;
    GroupForm form_;
    Eigen::Index a_, b_;
};

namespace detail {
inline Mat fractional(const DomainGroupElement& g, const Mat& z) {
    Mat den = g.C() * z + g.D();
    const double cond = condition_number(den);
    if (!(cond < kConditionLimit)) {
        std::ostringstream os;
        os << "cond(CZ+D) = " << cond;
        throw NearSingularDenominator(os.str());
    }
    return (g.A() * z + g.B()) * den.inverse();
}
}  // namespace detail

inline SiegelPoint moebius_act(const DomainGroupElement& g, const SiegelPoint& z) {
    if (g.form() != GroupForm::Symplectic || g.a() != z.size()) throw NotInGroup("expected Sp_2r(R)");
    Mat w = detail::fractional(g, z.z());
    return SiegelPoint((w + w.transpose()) / 2.0);
}
inline HermitianPoint moebius_act(const DomainGroupElement& g, const HermitianPoint& z) {
    if (g.form() != GroupForm::UnitaryJ || g.a() != z.size()) throw NotInGroup("expected the J-form unitary group");
    return HermitianPoint(detail::fractional(g, z.z()));
}
inline BoundedPoint moebius_act(const DomainGroupElement& g, const BoundedPoint& u) {
    if (g.form() != GroupForm::UnitaryIndefinite || g.a() != u.a() || g.b() != u.b())
        throw NotInGroup("expected U(a,b)");
    return BoundedPoint(detail::fractional(g, u.u()));
}

// Z = i(1+U)(1-U)^{-1}
inline HermitianPoint cayley(const BoundedPoint& u) {
    if (u.a() != u.b()) throw NotInDomain("Cayley map needs a square point");
    const Mat one = identity(u.a());
    Mat den = one - u.u();
    if (!(condition_number(den) < kConditionLimit)) throw NotInDomain("point too close to the boundary");
    return HermitianPoint(kI * (one + u.u()) * den.inverse());
}
// U = (Z-i)(Z+i)^{-1}
inline BoundedPoint inverse_cayley(const HermitianPoint& z) {
    const Mat one = identity(z.size());
    Mat den = z.z() + kI * one;
    if (!(condition_number(den) < kConditionLimit)) throw NotInDomain("point too close to the boundary");
    return BoundedPoint((z.z() - kI * one) * den.inverse());
}

// ---------------------------------------------------------------- Petersson

enum class DomainType { A, C };

// ||d tau||_Pet over g embeddings. Type C: 2^{gr(r+1)/2} prod det(Y_i)^{(r+1)/2};
// type A: 2^{gr^2/4} prod det(Y_i)^{r/2}, with Y_i of size r/2.
inline double petersson_norm(DomainType type, std::span<const Mat> ys, int r) {
    if (ys.empty()) throw std::invalid_argument("need at least one embedding");
    const double g = static_cast<double>(ys.size());
    const int expected = type == DomainType::C ? r : r / 2;
    if (type == DomainType::A && r % 2 != 0) throw SignatureMismatch("type A needs even r");
    double norm = type == DomainType::C ? std::pow(2.0, g * r * (r + 1) / 2.0) : std::pow(2.0, g * r * r / 4.0);
    const double e = type == DomainType::C ? (r + 1) / 2.0 : r / 2.0;
    for (const auto& y : ys) {
        if (y.rows() != expected || y.cols() != expected) throw NotInDomain("Y has the wrong size");
        if (min_eigenvalue(y) <= kMembershipFloor) throw NotInDomain("Y is not positive definite");
        norm *= std::pow(y.determinant().real(), e);
    }
    return norm;
}
inline double petersson_norm(const SiegelPoint& z) {
    Mat y = z.y().cast<cd>();
    return petersson_norm(DomainType::C, std::span<const Mat>(&y, 1), static_cast<int>(z.size()));
}
inline double petersson_norm(const HermitianPoint& z) {
    Mat y = z.y();
    return petersson_norm(DomainType::A, std::span<const Mat>(&y, 1), static_cast<int>(2 * z.size()));
}

// ---------------------------------------------------------------- random

using Rng = std::mt19937_64;

inline RMat random_real(Rng& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    RMat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = n(rng);
    return m;
}
inline Mat random_complex(Rng& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cd(n(rng), n(rng));
    return m;
}

// Y = I + G G^*, X random Hermitian.
inline HermitianPoint random_hermitian_point(Rng& rng, Eigen::Index b) {
    Mat g = random_complex(rng, b, b, 0.5);
    Mat h = random_complex(rng, b, b, 0.5);
    Mat y = identity(b) + g * g.adjoint();
    Mat x = (h + h.adjoint()) / 2.0;
    return HermitianPoint(x + kI * y);
}
inline SiegelPoint random_siegel_point(Rng& rng, Eigen::Index r) {
    RMat g = random_real(rng, r, r, 0.5);
    RMat h = random_real(rng, r, r, 0.5);
    RMat y = RMat::Identity(r, r) + g * g.transpose();
    RMat x = (h + h.transpose()) / 2.0;
    Mat z = x.cast<cd>() + kI * y.cast<cd>();
    return SiegelPoint((z + z.transpose()) / 2.0);
}
inline BoundedPoint random_bounded_point(Rng& rng, Eigen::Index a, Eigen::Index b) {
    Mat g = random_complex(rng, a, b);
    std::uniform_real_distribution<double> radius(0.05, 0.9);
    Eigen::JacobiSVD<Mat> svd(g);
    return BoundedPoint(g * (radius(rng) / svd.singularValues()(0)));
}

inline Mat random_unitary(Rng& rng, Eigen::Index n) {
    Mat g = random_complex(rng, n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        cd d = r(i, i);
        q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : cd(1.0);
    }
    return q;
}

// Embedded U_n: (A, B; -B, A) with A + iB unitary; fixes i*1_n.
inline DomainGroupElement siegel_stabilizer(const Mat& unitary) {
    const Eigen::Index n = unitary.rows();
    RMat a = unitary.real(), b = unitary.imag();
    RMat g(2 * n, 2 * n);
    g << a, b, -b, a;
    return {g.cast<cd>(), GroupForm::Symplectic, n, n};
}
// ((A+B)/2, (-iA+iB)/2; (iA-iB)/2, (A+B)/2) for unitary A, B; fixes i*1_b.
inline DomainGroupElement hermitian_stabilizer(const Mat& a, const Mat& b) {
    const Eigen::Index n = a.rows();
    Mat g(2 * n, 2 * n);
    g << (a + b) / 2.0, (-kI * a + kI * b) / 2.0, (kI * a - kI * b) / 2.0, (a + b) / 2.0;
    return {g, GroupForm::UnitaryJ, n, n};
}

inline DomainGroupElement random_symplectic(Rng& rng, Eigen::Index r) {
    RMat g = RMat::Identity(2 * r, 2 * r);
    RMat j = block_j(r).real();
    for (int step = 0; step < 3; ++step) {
        RMat s = random_real(rng, r, r, 0.5);
        s = ((s + s.transpose()) / 2.0).eval();
        RMat t = RMat::Identity(2 * r, 2 * r);
        t.topRightCorner(r, r) = s;
        RMat a = RMat::Identity(r, r) + random_real(rng, r, r, 0.2);
        RMat d = RMat::Zero(2 * r, 2 * r);
        d.topLeftCorner(r, r) = a;
        d.bottomRightCorner(r, r) = a.transpose().inverse();
        g = g * t * d * j;
    }
    return {g.cast<cd>(), GroupForm::Symplectic, r, r};
}

inline DomainGroupElement random_unitary_j(Rng& rng, Eigen::Index b) {
    Mat g = identity(2 * b);
    Mat j = block_j(b);
    for (int step = 0; step < 3; ++step) {
        Mat s = random_complex(rng, b, b, 0.5);
        s = ((s + s.adjoint()) / 2.0).eval();
        Mat t = identity(2 * b);
        t.topRightCorner(b, b) = s;
        Mat a = identity(b) + random_complex(rng, b, b, 0.2);
        Mat d = Mat::Zero(2 * b, 2 * b);
        d.topLeftCorner(b, b) = a;
        d.bottomRightCorner(b, b) = a.adjoint().inverse();
        g = g * t * d * j;
    }
    return {g, GroupForm::UnitaryJ, b, b};
}

inline Mat hermitian_power(const Mat& h, double e) {
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::pow(ev(i), e);
    return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

// diag(A, D) times the boost sending 0 to a random point.
inline DomainGroupElement random_unitary_indefinite(Rng& rng, Eigen::Index a, Eigen::Index b) {
    Mat u = random_bounded_point(rng, a, b).u();
    Mat p = hermitian_power(identity(a) - u * u.adjoint(), -0.5);
    Mat q = hermitian_power(identity(b) - u.adjoint() * u, -0.5);
    Mat boost(a + b, a + b);
    boost << p, u * q, u.adjoint() * p, q;
    Mat k = Mat::Zero(a + b, a + b);
    k.topLeftCorner(a, a) = random_unitary(rng, a);
    k.bottomRightCorner(b, b) = random_unitary(rng, b);
    return {boost * k, GroupForm::UnitaryIndefinite, a, b};
}

}  // namespace pelks::domains
