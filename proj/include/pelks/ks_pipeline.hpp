#pragma once

// Archimedean Kodaira-Spencer computation: period-map Jacobian, the
// semilinear solve Lie(A) -> H^1(A, O) given by z -> 2 pi i h(E(z, .)),
// the connecting map phi, the determinant constant of psi, and the
// Faltings / Petersson comparison.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "pelks/lattice.hpp"

namespace pelks::ks {

using domains::cd;
using domains::kI;
using domains::Mat;
using domains::RMat;
using lattice::EmbeddingPtr;
using lattice::LatticeType;
using lattice::OrderEmbedding;
using lattice::PeriodLattice;
using lattice::RiemannFormDescriptor;

inline constexpr double kPairingConditionLimit = 1e12;
inline const cd kTwoPiI{0.0, 2.0 * std::numbers::pi};

// Coordinates of the domain: Z_kj for type A, Z_ab with a <= b for type C.
struct DomainCoordinate {
    int row = 0, col = 0;
};

inline std::vector<DomainCoordinate> domain_coordinates(const OrderEmbedding& e) {
    std::vector<DomainCoordinate> out;
    if (e.type == LatticeType::A) {
        const int h = e.r / 2;
        for (int k = 0; k < h; ++k)
            for (int j = 0; j < h; ++j) out.push_back({k, j});
    } else {
        for (int a = 0; a < e.r; ++a)
            for (int b = a; b < e.r; ++b) out.push_back({a, b});
    }
    return out;
}

// Tangent direction of a coordinate in matrix form.
inline Mat coordinate_direction(const OrderEmbedding& e, const DomainCoordinate& c) {
    const int s = e.type == LatticeType::A ? e.r / 2 : e.r;
    Mat d = Mat::Zero(s, s);
    d(c.row, c.col) = 1.0;
    if (e.type == LatticeType::C) d(c.col, c.row) = 1.0;
    return d;
}

struct CocycleJacobian {
    std::vector<DomainCoordinate> coordinates;
    std::vector<Eigen::RowVectorXcd> partials;  // one nr-vector per coordinate
};

// d lambda_beta / d Z_c = (sigma(beta)[dZ; 0], conj sigma(beta)[dZ^t; 0]) (type A)
// or sigma(beta)[dZ; 0] (type C). Exact: lambda is affine in Z.
inline CocycleJacobian cocycle_jacobian(const OrderEmbedding& e, const Eigen::VectorXd& beta) {
    CocycleJacobian j;
    j.coordinates = domain_coordinates(e);
    const Mat s = e.sigma(beta);
    for (const auto& c : j.coordinates) {
        const Mat dz = coordinate_direction(e, c);
        const int h = static_cast<int>(dz.rows());
        Mat top = Mat::Zero(e.width(), h);
        top.topRows(h) = dz;
        if (e.type == LatticeType::C) {
            j.partials.push_back(lattice::detail::flatten(s * top));
            continue;
        }
        Mat bottom = Mat::Zero(e.r, h);
        bottom.topRows(h) = dz.transpose();
        Mat out(e.n, e.r);
        out << s * top, s.conjugate() * bottom;
        j.partials.push_back(lattice::detail::flatten(out));
    }
    return j;
}

// Central differences of lambda_beta along each coordinate.
inline CocycleJacobian cocycle_jacobian_fd(const OrderEmbedding& e, const Eigen::VectorXd& beta, const Mat& z,
                                           double step = 0.25) {
    CocycleJacobian j;
    j.coordinates = domain_coordinates(e);
    for (const auto& c : j.coordinates) {
        const Mat dz = coordinate_direction(e, c);
        auto plus = lattice::lattice_vector(e, z + step * dz, beta);
        auto minus = lattice::lattice_vector(e, z - step * dz, beta);
        j.partials.push_back((plus - minus) / (2.0 * step));
    }
    return j;
}

struct WSolve {
    Eigen::RowVectorXcd w;
    double condition = 0;
    double residual = 0;  // antilinear-part mismatch on the standard basis
};

namespace detail {

// Antilinear coefficients a_m = g_anti(e_m), g_anti(v) = (g(v) + i g(iv))/2,
// of the real-linear functional with lattice values `values`.
inline Eigen::RowVectorXcd antilinear_part(const RMat& rinv, const Eigen::VectorXcd& values) {
    const Eigen::Index N = rinv.rows() / 2;
    Eigen::RowVectorXcd a(N);
    for (Eigen::Index m = 0; m < N; ++m) {
        const cd g_v = rinv.row(m).cast<cd>() * values;
        const cd g_iv = rinv.row(N + m).cast<cd>() * values;
        a(m) = (g_v + kI * g_iv) / 2.0;
    }
    return a;
}

}  // namespace detail

// Unique w with antilinear part of 2 pi i E(w, .) equal to that of f; f is
// given by its values on the lattice basis.
inline WSolve solve_w(const PeriodLattice& l, const RMat& gram, const Eigen::VectorXcd& f_values) {
    const int N = l.dim();
    const RMat rinv = l.real_basis.inverse();
    // E(w, .) on the lattice basis is coords(w) G
    auto response = [&](const Eigen::RowVectorXd& w_real) {
        Eigen::RowVectorXd coords = w_real * rinv;
        Eigen::VectorXcd values = (kTwoPiI * (coords * gram).transpose().cast<cd>()).eval();
        return detail::antilinear_part(rinv, values);
    };
    RMat m(2 * N, 2 * N);
    for (int t = 0; t < 2 * N; ++t) {
        Eigen::RowVectorXd unit = Eigen::RowVectorXd::Zero(2 * N);
        unit(t) = 1.0;
        Eigen::RowVectorXcd a = response(unit);
        m.block(0, t, N, 1) = a.real().transpose();
        m.block(N, t, N, 1) = a.imag().transpose();
    }
    const Eigen::RowVectorXcd target = detail::antilinear_part(rinv, f_values);
    Eigen::VectorXd rhs(2 * N);
    rhs << target.real().transpose(), target.imag().transpose();
    Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    WSolve out;
    out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(out.condition < kPairingConditionLimit)) {
        std::ostringstream os;
        os << "pairing solve has condition number " << out.condition;
        throw SingularPairing(os.str());
    }
    Eigen::VectorXd x = svd.solve(rhs);
    out.w = Eigen::RowVectorXcd(N);
    for (int k = 0; k < N; ++k) out.w(k) = cd(x(k), x(N + k));
    out.residual = (response(x.transpose()) - target).cwiseAbs().maxCoeff();
    return out;
}

struct WVector {
    int i = 0, k = 0;
    bool conjugate = false;  // target is conj(delta_ik)
    Eigen::RowVectorXcd w;
    double residual = 0;
};

// delta_ik(beta) = sigma(beta)_ik and its conjugate, for i < n and k < r/2
// (type A) or k < r (type C).
inline std::vector<WVector> solve_w_vectors(const PeriodLattice& l, const RiemannFormDescriptor& d) {
    const auto& e = *l.embedding;
    const RMat gram = lattice::riemann_gram(e, d);
    const int kmax = e.type == LatticeType::A ? e.r / 2 : e.r;
    std::vector<WVector> out;
    for (int conj = 0; conj < 2; ++conj)
        for (int i = 0; i < e.n; ++i)
            for (int k = 0; k < kmax; ++k) {
                Eigen::VectorXcd f(e.rank());
                for (int a = 0; a < e.rank(); ++a) {
                    cd v = e.module_basis[a](i, k);
                    f(a) = conj ? std::conj(v) : v;
                }
                auto s = solve_w(l, gram, f);
                out.push_back({i, k, conj == 1, s.w, s.residual});
            }
    return out;
}

// (2 pi i)^{-1} mu e_{i, col} flattened into C^{nr}.
inline Eigen::RowVectorXcd closed_form_w(const OrderEmbedding& e, const Mat& mu, int i, int col) {
    Mat unit = Mat::Zero(e.n, e.r);
    unit(i, col) = 1.0;
    return lattice::detail::flatten(mu * unit / kTwoPiI);
}

// phi(dz_a) = sum_c sum_m entries[a][c](m) d/dz_m (x) dZ_c
struct ConnectingMatrix {
    int dim = 0;
    std::vector<DomainCoordinate> coordinates;
    std::vector<std::vector<Eigen::RowVectorXcd>> entries;  // [a][c]
    double max_residual = 0;

    // K_c(a, b): coefficient of dZ_c in phi'(dz_a (x) dz_b).
    cd k(std::size_t c, int a, int b) const { return entries[static_cast<std::size_t>(a)][c](b); }
};

inline ConnectingMatrix assemble_phi(const PeriodLattice& l, const RiemannFormDescriptor& d) {
    const auto& e = *l.embedding;
    const RMat gram = lattice::riemann_gram(e, d);
    std::vector<CocycleJacobian> jac;
    for (int b = 0; b < e.rank(); ++b) jac.push_back(cocycle_jacobian(e, lattice::unit_coords(e.rank(), b)));
    ConnectingMatrix out;
    out.dim = l.dim();
    out.coordinates = domain_coordinates(e);
    out.entries.assign(static_cast<std::size_t>(out.dim), {});
    for (int a = 0; a < out.dim; ++a)
        for (std::size_t c = 0; c < out.coordinates.size(); ++c) {
            Eigen::VectorXcd f(e.rank());
            for (int b = 0; b < e.rank(); ++b) f(b) = jac[b].partials[c](a);
            auto s = solve_w(l, gram, f);
            out.max_residual = std::max(out.max_residual, s.residual);
            out.entries[a].push_back(s.w);
        }
    return out;
}

inline double max_difference(const ConnectingMatrix& a, const ConnectingMatrix& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        for (std::size_t c = 0; c < a.entries[i].size(); ++c)
            m = std::max(m, (a.entries[i][c] - b.entries[i][c]).cwiseAbs().maxCoeff());
    return m;
}

struct PsiConstant {
    cd value;
    int power = 0;             // k in psi((wedge dz)^k) = c d tau
    double off_pattern = 0;    // largest entry outside the contraction pattern
};

// Type A (p = q = r/2): c = prod over dZ_kj of det K_kj on rows (i, j), cols (l, k + r/2).
// Type C (n = 1): c = det of the map Sym^2 -> Omega, dz_a dz_b -> sum_c K_c(a, b) dZ_c.
inline PsiConstant psi_constant(const ConnectingMatrix& m, const OrderEmbedding& e, int p, int q) {
    PsiConstant out;
    if (e.type == LatticeType::A) {
        if (p != q || p + q != e.r) {
            std::ostringstream os;
            os << "signature (" << p << "," << q << ") admits no determinant constant";
            throw SignatureMismatch(os.str());
        }
        const int h = e.r / 2;
        out.power = h;
        out.value = 1.0;
        for (std::size_t c = 0; c < m.coordinates.size(); ++c) {
            const int kk = m.coordinates[c].row, j = m.coordinates[c].col;
            Mat block(e.n, e.n);
            std::vector<char> in_rows(static_cast<std::size_t>(m.dim), 0), in_cols(static_cast<std::size_t>(m.dim), 0);
            for (int i = 0; i < e.n; ++i) {
                in_rows[static_cast<std::size_t>(i * e.r + j)] = 1;
                in_cols[static_cast<std::size_t>(i * e.r + kk + h)] = 1;
                for (int l = 0; l < e.n; ++l) block(i, l) = m.k(c, i * e.r + j, l * e.r + kk + h);
            }
            out.value *= block.determinant();
            for (int a = 0; a < m.dim; ++a)
                for (int b = 0; b < m.dim; ++b)
                    if (!(in_rows[a] && in_cols[b]) && !(in_cols[a] && in_rows[b])) out.off_pattern = std::max(out.off_pattern, std::abs(m.k(c, a, b)));
        }
        return out;
    }
    if (e.n != 1) throw std::invalid_argument("type C constant is implemented for n = 1");
    out.power = e.r + 1;
    const std::size_t dim = m.coordinates.size();
    Mat t(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t s = 0; s < dim; ++s) t(c, s) = m.k(c, m.coordinates[s].row, m.coordinates[s].col);
        const int a0 = m.coordinates[c].row, b0 = m.coordinates[c].col;
        for (int a = 0; a < m.dim; ++a)
            for (int b = 0; b < m.dim; ++b) {
                const bool on = (a == a0 && b == b0) || (a == b0 && b == a0);
                if (!on) out.off_pattern = std::max(out.off_pattern, std::abs(m.k(c, a, b)));
            }
    }
    out.value = t.determinant();
    return out;
}

// (|det mu| / (2 pi)^n)^{r^2/4}
inline double closed_form_psi_modulus(const OrderEmbedding& e, const Mat& mu) {
    return std::pow(std::abs(mu.determinant()) / std::pow(2.0 * std::numbers::pi, e.n), e.r * e.r / 4.0);
}

struct MetricSample {
    double ratio = 0;
    double psi_modulus = 0;
    double petersson = 0;
    double faltings = 0;
};

struct MetricReport {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<MetricSample> points;
    double max_deviation = 0;
};

inline domains::Mat random_domain_point(const OrderEmbedding& e, domains::Rng& rng) {
    if (e.type == LatticeType::A) return domains::random_hermitian_point(rng, e.r / 2).z();
    return domains::random_siegel_point(rng, e.r).z();
}

inline PeriodLattice lattice_at(EmbeddingPtr e, const Mat& z) {
    if (e->type == LatticeType::A) return lattice::build_lattice(domains::HermitianPoint(z), e);
    return lattice::build_lattice(domains::SiegelPoint(z), e);
}

// ratio = |c| ||d tau||_Pet^n / ||wedge dz||_Fal^k at each sample.
inline MetricSample metric_sample(EmbeddingPtr e, const RiemannFormDescriptor& d, const Mat& z) {
    const auto l = lattice_at(e, z);
    const auto phi = assemble_phi(l, d);
    const auto psi = psi_constant(phi, *e, e->type == LatticeType::A ? e->r / 2 : e->r,
                                  e->type == LatticeType::A ? e->r / 2 : 0);
    MetricSample s;
    s.psi_modulus = std::abs(psi.value);
    s.petersson = e->type == LatticeType::A ? domains::petersson_norm(domains::HermitianPoint(z))
                                            : domains::petersson_norm(domains::SiegelPoint(z));
    s.faltings = lattice::faltings_norm(l);
    s.ratio = s.psi_modulus * std::pow(s.petersson, e->n) / std::pow(s.faltings, psi.power);
    return s;
}

inline MetricReport metric_identity_check(EmbeddingPtr e, const RiemannFormDescriptor& d, int samples,
                                          std::uint64_t seed) {
    MetricReport rep;
    rep.seed = seed;
    rep.samples = samples;
    domains::Rng rng(seed);
    for (int t = 0; t < samples; ++t) {
        auto s = metric_sample(e, d, random_domain_point(*e, rng));
        rep.max_deviation = std::max(rep.max_deviation, std::abs(s.ratio - 1.0));
        rep.points.push_back(s);
    }
    return rep;
}

}  // namespace pelks::ks
