#pragma once

// Period lattices Lambda_Z = { sigma(b)[Z;I], conj sigma(b)[Z^t;I] } of the
// archimedean fibre, Riemann forms E_mu, covolumes, Faltings norms and
// polarization degrees.

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pelks/algebra/smith.hpp"
#include "pelks/domains.hpp"

namespace pelks {
struct RankDeficient : Error { using Error::Error; };
}  // namespace pelks

namespace pelks::lattice {

using domains::cd;
using domains::kI;
using domains::Mat;
using domains::RMat;

enum class LatticeType { A, C };
// How tr_{F/Q} is realised at the archimedean place: z + conj z, or z.
enum class TraceMode { TwiceReal, Real };

inline double realise(TraceMode m, cd z) { return m == TraceMode::TwiceReal ? 2.0 * z.real() : z.real(); }

struct OrderEmbedding {
    std::string name;
    LatticeType type = LatticeType::A;
    int n = 1, r = 2;
    std::vector<Mat> algebra_basis;  // sigma of a Z-basis of O_B, n x n each
    std::vector<std::vector<std::vector<long long>>> structure_constants;  // b_a b_b = sum_c k[a][b][c] b_c
    Mat mu0;                         // reference multiplier for the self-dual search
    TraceMode trace_mode = TraceMode::TwiceReal;
    std::vector<Mat> module_basis;   // sigma(beta) for the Z-basis of O_B^slots

    int slots() const { return static_cast<int>(module_basis.size() / algebra_basis.size()); }
    int rank() const { return static_cast<int>(module_basis.size()); }
    int complex_dim() const { return n * r; }
    // Columns of sigma(beta): r for type A, 2r for type C.
    int width() const { return type == LatticeType::A ? r : 2 * r; }
    Mat sigma(const Eigen::VectorXd& coeffs) const {
        Mat s = Mat::Zero(n, width());
        for (int a = 0; a < rank(); ++a) s += coeffs(a) * module_basis[a];
        return s;
    }
};

using EmbeddingPtr = std::shared_ptr<const OrderEmbedding>;

inline RMat realify_rows(const Mat& rows) {
    RMat out(rows.rows(), 2 * rows.cols());
    out << rows.real(), rows.imag();
    return out;
}

inline EmbeddingPtr make_embedding(std::string name, LatticeType type, int n, int r, std::vector<Mat> algebra_basis,
                                   std::vector<std::vector<std::vector<long long>>> structure_constants, Mat mu0,
                                   TraceMode mode) {
    auto e = std::make_shared<OrderEmbedding>();
    e->name = std::move(name);
    e->type = type;
    e->n = n;
    e->r = r;
    e->algebra_basis = std::move(algebra_basis);
    e->structure_constants = std::move(structure_constants);
    e->mu0 = std::move(mu0);
    e->trace_mode = mode;
    if (n < 1 || r < 1) throw InvalidEmbedding("n and r must be positive");
    if (e->algebra_basis.empty()) throw InvalidEmbedding("empty algebra basis");
    for (const auto& b : e->algebra_basis)
        if (b.rows() != n || b.cols() != n) throw InvalidEmbedding("algebra basis matrices must be n x n");
    if (e->mu0.rows() != n || e->mu0.cols() != n) throw InvalidEmbedding("mu0 must be n x n");
    if (type == LatticeType::A && r % 2 != 0) throw InvalidEmbedding("type A needs even r");
    const int width = type == LatticeType::A ? r : 2 * r;
    if (width % n != 0) throw InvalidEmbedding("n must divide the module width");
    const int slots = width / n;
    for (int s = 0; s < slots; ++s)
        for (const auto& b : e->algebra_basis) {
            Mat m = Mat::Zero(n, width);
            m.block(0, s * n, n, n) = b;
            e->module_basis.push_back(m);
        }
    if (e->rank() != 2 * n * r) {
        std::ostringstream os;
        os << "order rank " << e->rank() << " does not match 2nr = " << 2 * n * r;
        throw InvalidEmbedding(os.str());
    }
    // multiplicativity on the supplied table
    const std::size_t k = e->algebra_basis.size();
    if (!e->structure_constants.empty()) {
        if (e->structure_constants.size() != k) throw InvalidEmbedding("structure constant table has the wrong size");
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                if (e->structure_constants[a].size() != k || e->structure_constants[a][b].size() != k)
                    throw InvalidEmbedding("structure constant table has the wrong size");
                Mat rhs = Mat::Zero(n, n);
                for (std::size_t c = 0; c < k; ++c)
                    rhs += static_cast<double>(e->structure_constants[a][b][c]) * e->algebra_basis[c];
                Mat lhs = e->algebra_basis[a] * e->algebra_basis[b];
                if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-9 * domains::scale_of(lhs))
                    throw InvalidEmbedding("sigma is not multiplicative on the structure constants");
            }
    }
    // real independence of the module basis images
    Mat flat(e->rank(), n * width);
    for (int a = 0; a < e->rank(); ++a)
        flat.row(a) = Eigen::Map<const Eigen::Matrix<cd, 1, Eigen::Dynamic, Eigen::RowMajor>>(
            Mat(e->module_basis[a].transpose()).data(), n * width);
    Eigen::JacobiSVD<RMat> svd(realify_rows(flat));
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-10 * sv(0)) throw InvalidEmbedding("sigma images are not independent over R");
    return e;
}

// F = Q, n = 1: the order Z, modules Z^{2r}; Siegel lattices m Z + n.
inline EmbeddingPtr siegel_embedding(int r) {
    return make_embedding("siegel", LatticeType::C, 1, r, {Mat::Identity(1, 1)}, {{{1}}}, Mat::Identity(1, 1),
                          TraceMode::Real);
}

// F = Q(i), n = 1: the order Z[i].
inline EmbeddingPtr gaussian_embedding(int r) {
    Mat one = Mat::Identity(1, 1), i = kI * Mat::Identity(1, 1);
    return make_embedding("gaussian", LatticeType::A, 1, r, {one, i}, {{{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}}},
                          Mat::Identity(1, 1), TraceMode::TwiceReal);
}

// (2,5)_Q (x) Q(i), n = 2, order Z<1,i,j,k> (x) Z[sqrt-1].
inline EmbeddingPtr gaussian_quaternion_embedding(int r) {
    const double s2 = std::sqrt(2.0), s5 = std::sqrt(5.0);
    Mat one = Mat::Identity(2, 2);
    Mat qi(2, 2), qj(2, 2);
    qi << s2, 0, 0, -s2;
    qj << 0, s5, s5, 0;
    Mat qk = qi * qj;
    const std::vector<Mat> quat = {one, qi, qj, qk};
    // quaternion table: entry (coef, index)
    const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const long long coef[4][4] = {{1, 1, 1, 1}, {1, 2, 1, 2}, {1, -1, 5, -5}, {1, -2, 5, -10}};
    std::vector<Mat> basis;
    for (int g = 0; g < 2; ++g)
        for (int a = 0; a < 4; ++a) basis.push_back(g == 0 ? quat[a] : Mat(kI * quat[a]));
    std::vector<std::vector<std::vector<long long>>> sc(8, std::vector<std::vector<long long>>(8, std::vector<long long>(8, 0)));
    for (int ga = 0; ga < 2; ++ga)
        for (int gb = 0; gb < 2; ++gb)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    long long c = coef[a][b];
                    int g = ga + gb;
                    if (g == 2) { c = -c; g = 0; }
                    sc[ga * 4 + a][gb * 4 + b][g * 4 + idx[a][b]] = c;
                }
    return make_embedding("gaussian-quaternion", LatticeType::A, 2, r, basis, sc, one / std::sqrt(10.0),
                          TraceMode::TwiceReal);
}

struct RiemannFormDescriptor {
    Mat mu;
    TraceMode trace_mode = TraceMode::TwiceReal;
};

// J = (0, -I; I, 0) on the module width.
inline Mat riemann_j(const OrderEmbedding& e) {
    const int h = e.width() / 2;
    Mat j = Mat::Zero(e.width(), e.width());
    j.topRightCorner(h, h) = -domains::identity(h);
    j.bottomLeftCorner(h, h) = domains::identity(h);
    return j;
}

struct PeriodLattice {
    EmbeddingPtr embedding;
    Mat point;      // Z (unbounded) or U (bounded)
    bool bounded = false;
    int p = 0, q = 0;
    Mat vectors;    // rank x nr, row a = lambda_{b_a} flattened row-major
    RMat real_basis;  // rank x 2nr

    int dim() const { return static_cast<int>(vectors.cols()); }
    int rank() const { return static_cast<int>(vectors.rows()); }
};

namespace detail {

inline Eigen::RowVectorXcd flatten(const Mat& m) {
    Eigen::RowVectorXcd v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

inline void finish(PeriodLattice& l) {
    l.real_basis = realify_rows(l.vectors);
    if (l.real_basis.rows() != l.real_basis.cols()) throw RankDeficient("lattice rank differs from 2nr");
    Eigen::JacobiSVD<RMat> svd(l.real_basis);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-12 * sv(0)) throw RankDeficient("lattice vectors are not independent over R");
}

}  // namespace detail

// lambda_beta(Z) for one coefficient vector; affine in Z.
inline Eigen::RowVectorXcd lattice_vector(const OrderEmbedding& e, const Mat& z, const Eigen::VectorXd& beta) {
    Mat s = e.sigma(beta);
    if (e.type == LatticeType::C) {
        Mat zi(2 * e.r, e.r);
        zi << z, domains::identity(e.r);
        return detail::flatten(s * zi);
    }
    const int h = e.r / 2;
    Mat top(e.r, h), bottom(e.r, h);
    top << z, domains::identity(h);
    bottom << z.transpose(), domains::identity(h);
    Mat out(e.n, e.r);
    out << s * top, s.conjugate() * bottom;
    return detail::flatten(out);
}

inline Eigen::VectorXd unit_coords(int rank, int a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(rank);
    v(a) = 1.0;
    return v;
}

inline PeriodLattice build_lattice(const domains::HermitianPoint& z, EmbeddingPtr e) {
    if (e->type != LatticeType::A || 2 * z.size() != e->r)
        throw InvalidEmbedding("Hermitian point needs a type A embedding with r = 2b");
    PeriodLattice l{e, z.z(), false, e->r / 2, e->r / 2, Mat(e->rank(), e->complex_dim()), {}};
    for (int a = 0; a < e->rank(); ++a) l.vectors.row(a) = lattice_vector(*e, z.z(), unit_coords(e->rank(), a));
    detail::finish(l);
    return l;
}

inline PeriodLattice build_lattice(const domains::SiegelPoint& z, EmbeddingPtr e) {
    if (e->type != LatticeType::C || z.size() != e->r)
        throw InvalidEmbedding("Siegel point needs a type C embedding of the same size");
    PeriodLattice l{e, z.z(), false, e->r, 0, Mat(e->rank(), e->complex_dim()), {}};
    for (int a = 0; a < e->rank(); ++a) l.vectors.row(a) = lattice_vector(*e, z.z(), unit_coords(e->rank(), a));
    detail::finish(l);
    return l;
}

// Bounded realisation, U in D_{p,q}: (sigma(b)[U; I_q], conj sigma(b)[I_p; U^t]).
inline PeriodLattice build_lattice_bounded(const domains::BoundedPoint& u, EmbeddingPtr e) {
    const int p = static_cast<int>(u.a()), q = static_cast<int>(u.b());
    if (e->type != LatticeType::A || p + q != e->r) throw InvalidEmbedding("bounded point needs type A with p + q = r");
    PeriodLattice l{e, u.u(), true, p, q, Mat(e->rank(), e->complex_dim()), {}};
    Mat top(e->r, q), bottom(e->r, p);
    top << u.u(), domains::identity(q);
    bottom << domains::identity(p), u.u().transpose();
    for (int a = 0; a < e->rank(); ++a) {
        Mat s = e->module_basis[a];
        Mat out(e->n, e->r);
        out << s * top, s.conjugate() * bottom;
        l.vectors.row(a) = detail::flatten(out);
    }
    detail::finish(l);
    return l;
}

// E(b_a, b_b) = trace_mode(tr(mu^{-1} sigma(b_a) J conj(sigma(b_b))^t)); independent of Z.
inline RMat riemann_gram(const OrderEmbedding& e, const RiemannFormDescriptor& d) {
    if (d.mu.rows() != e.n || d.mu.cols() != e.n) throw std::invalid_argument("mu must be n x n");
    Eigen::FullPivLU<Mat> lu(d.mu);
    if (!lu.isInvertible()) throw std::invalid_argument("singular mu");
    const Mat mu_inv = lu.inverse();
    const Mat j = riemann_j(e);
    const int k = e.rank();
    RMat g(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            g(a, b) = realise(d.trace_mode, (mu_inv * e.module_basis[a] * j * e.module_basis[b].adjoint()).trace());
    return g;
}

inline double riemann_form(const PeriodLattice& l, const RiemannFormDescriptor& d, const Eigen::VectorXd& beta,
                           const Eigen::VectorXd& beta2) {
    return beta.dot(riemann_gram(*l.embedding, d) * beta2);
}

// Real lattice coordinates of v in C^{nr}.
inline Eigen::RowVectorXd lattice_coords(const PeriodLattice& l, const Eigen::RowVectorXcd& v) {
    Eigen::RowVectorXd x(2 * v.size());
    x << v.real(), v.imag();
    return l.real_basis.transpose().partialPivLu().solve(x.transpose()).transpose();
}

// E extended R-bilinearly to C^{nr}.
inline double form_on_vectors(const PeriodLattice& l, const RMat& gram, const Eigen::RowVectorXcd& v,
                              const Eigen::RowVectorXcd& w) {
    return (lattice_coords(l, v) * gram * lattice_coords(l, w).transpose())(0, 0);
}

// H(v, w) = E(iv, w) + i E(v, w), as a matrix on the standard basis of C^{nr}.
inline Mat hermitian_gram(const PeriodLattice& l, const RMat& gram) {
    const int N = l.dim();
    // realified e_m is the unit row m and i e_m the unit row N + m, so their
    // coordinates are rows of R^{-1}
    const RMat coords = l.real_basis.inverse();
    Mat h(N, N);
    for (int m = 0; m < N; ++m)
        for (int k = 0; k < N; ++k) {
            const double e_iv_w = coords.row(N + m) * gram * coords.row(k).transpose();
            const double e_v_w = coords.row(m) * gram * coords.row(k).transpose();
            h(m, k) = cd(e_iv_w, e_v_w);
        }
    return h;
}

inline double min_hermitian_eigenvalue(const PeriodLattice& l, const RiemannFormDescriptor& d) {
    return domains::min_eigenvalue(hermitian_gram(l, riemann_gram(*l.embedding, d)));
}

inline bool is_integral(const RMat& g, double tol = 1e-9) {
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            if (std::abs(g(i, j) - std::round(g(i, j))) > tol * std::max(1.0, std::abs(g(i, j)))) return false;
    return true;
}

inline algebra::IntMatrix round_to_integers(const RMat& g) {
    algebra::IntMatrix out(static_cast<std::size_t>(g.rows()));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) out[i].emplace_back(static_cast<long long>(std::llround(g(i, j))));
    return out;
}

// Exact |det| of an integral Gram matrix through its invariant factors; 0 if singular.
inline algebra::BigInt integral_abs_det(const RMat& g) {
    auto snf = algebra::integer_smith(round_to_integers(g));
    if (static_cast<Eigen::Index>(snf.rank()) < g.rows()) return 0;
    algebra::BigInt det = 1;
    for (const auto& d : snf.divisors) det *= d;
    return det;
}

// sqrt |det gram| for integral E.
inline double polarization_degree(const PeriodLattice& l, const RiemannFormDescriptor& d) {
    RMat g = riemann_gram(*l.embedding, d);
    if (!is_integral(g)) throw NonIntegralForm("Riemann form is not integral on the lattice");
    algebra::BigInt det = integral_abs_det(g);
    if (det == 0) throw NonIntegralForm("Riemann form is degenerate");
    algebra::BigInt root = boost::multiprecision::sqrt(det);
    if (root * root == det) return root.convert_to<double>();
    return std::sqrt(det.convert_to<double>());
}

// Lebesgue covolume |det R| of the realified basis, i.e. sqrt det(R R^t).
inline double covolume(const PeriodLattice& l) { return std::abs(l.real_basis.determinant()); }

// Dual lattice for the real pairing <x, y> = Re(x . conj y): basis (R^{-1})^t.
inline RMat dual_real_basis(const PeriodLattice& l) { return l.real_basis.inverse().transpose(); }
inline double dual_covolume(const PeriodLattice& l) { return std::abs(dual_real_basis(l).determinant()); }

// E-dual lattice {v : E(v, Lambda) in Z}; its rows are G^{-1} R.
inline RMat e_dual_real_basis(const PeriodLattice& l, const RiemannFormDescriptor& d) {
    RMat g = riemann_gram(*l.embedding, d);
    return g.inverse() * l.real_basis;
}
// [Lambda^E : Lambda] as a covolume ratio.
inline double dual_lattice_index(const PeriodLattice& l, const RiemannFormDescriptor& d) {
    return covolume(l) / std::abs(e_dual_real_basis(l, d).determinant());
}

// ||wedge dz||_Fal, with ||.||^2 = covol / pi^{nr}.
inline double faltings_norm(const PeriodLattice& l) {
    return std::sqrt(covolume(l) / std::pow(std::numbers::pi, l.dim()));
}

// mu = c mu0 with |c| = deg(E_mu0)^{1/(nr)}, sign fixed by positivity of H.
inline RiemannFormDescriptor solve_self_dual_mu(const PeriodLattice& l, const OrderEmbedding& e) {
    RiemannFormDescriptor base{e.mu0, e.trace_mode};
    RMat g0 = riemann_gram(e, base);
    const double det0 = std::abs(g0.determinant());
    if (!(det0 > 0)) throw NoSelfDualForm("reference form is degenerate");
    const double degree0 = std::sqrt(det0);
    const double c = std::pow(degree0, 1.0 / e.complex_dim());
    RMat g = g0 / c;
    if (!is_integral(g)) {
        std::ostringstream os;
        os << "E_mu0 / " << c << " is not integral on the lattice";
        throw NoSelfDualForm(os.str());
    }
    if (integral_abs_det(g) != 1) throw NoSelfDualForm("rescaled form is not unimodular");
    RiemannFormDescriptor plus{e.mu0 * c, e.trace_mode}, minus{e.mu0 * (-c), e.trace_mode};
    if (min_hermitian_eigenvalue(l, plus) > 0) return plus;
    if (min_hermitian_eigenvalue(l, minus) > 0) return minus;
    throw NoSelfDualForm("H is indefinite for both signs of the multiplier");
}

// Complex structure v -> iv in lattice coordinates (row convention).
inline RMat complex_structure(const PeriodLattice& l) {
    const int N = l.dim();
    RMat j0 = RMat::Zero(2 * N, 2 * N);
    j0.topRightCorner(N, N) = RMat::Identity(N, N);
    j0.bottomLeftCorner(N, N) = -RMat::Identity(N, N);
    return l.real_basis * j0 * l.real_basis.inverse();
}

struct Commensurability {
    int kernel_dim = 0;
    bool rational = false;   // kernel has a basis with small-denominator rational entries
    bool invertible = false; // some integer combination is invertible
    double determinant = 0;
};

// Rational X with rho_b X = X rho_u, where rho_b / rho_u are the complex
// structures of the bounded lattice at U and of the unbounded lattice at
// cayley(U). X is required to work at U and at a fixed set of auxiliary
// points (the origin and deterministic samples), so it is a constant change
// of basis rather than a pointwise accident.
inline Commensurability cayley_commensurability(const domains::BoundedPoint& u, EmbeddingPtr e,
                                                int auxiliary_points = 3) {
    std::vector<domains::BoundedPoint> points{u, domains::BoundedPoint(Mat::Zero(u.a(), u.b()))};
    domains::Rng rng(0x5eed);
    for (int t = 0; t < auxiliary_points; ++t) points.push_back(domains::random_bounded_point(rng, u.a(), u.b()));
    std::vector<std::pair<RMat, RMat>> pairs;
    for (const auto& pt : points)
        pairs.emplace_back(complex_structure(build_lattice_bounded(pt, e)),
                           complex_structure(build_lattice(domains::cayley(pt), e)));
    const int k = static_cast<int>(pairs.front().first.rows());
    // vec(rho_b X - X rho_u) = (I (x) rho_b - rho_u^t (x) I) vec X
    auto op = [k](const RMat& left, const RMat& right) {
        RMat m = RMat::Zero(k * k, k * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                m.block(i * k, j * k, k, k) -= right(j, i) * RMat::Identity(k, k);
                if (i == j) m.block(i * k, j * k, k, k) += left;
            }
        return m;
    };
    RMat sys(static_cast<Eigen::Index>(pairs.size()) * k * k, k * k);
    for (std::size_t t = 0; t < pairs.size(); ++t)
        sys.block(static_cast<Eigen::Index>(t) * k * k, 0, k * k, k * k) = op(pairs[t].first, pairs[t].second);
    Eigen::JacobiSVD<RMat> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Commensurability out;
    std::vector<int> null_cols;
    for (int c = 0; c < k * k; ++c)
        if (c >= sv.size() || sv(c) < 1e-9 * sv(0)) null_cols.push_back(c);
    out.kernel_dim = static_cast<int>(null_cols.size());
    if (null_cols.empty()) return out;
    RMat basis(k * k, out.kernel_dim);
    for (int t = 0; t < out.kernel_dim; ++t) basis.col(t) = svd.matrixV().col(null_cols[t]);
    // reduced row echelon form of basis^t
    RMat rref = basis.transpose();
    int lead = 0;
    for (int row = 0; row < rref.rows() && lead < rref.cols(); ++row) {
        Eigen::Index piv = row;
        while (lead < rref.cols()) {
            rref.col(lead).tail(rref.rows() - row).cwiseAbs().maxCoeff(&piv);
            piv += row;
            if (std::abs(rref(piv, lead)) > 1e-8) break;
            ++lead;
        }
        if (lead >= rref.cols()) break;
        rref.row(row).swap(rref.row(piv));
        rref.row(row) /= rref(row, lead);
        for (int o = 0; o < rref.rows(); ++o)
            if (o != row) rref.row(o) -= rref(o, lead) * rref.row(row);
        ++lead;
    }
    out.rational = true;
    for (Eigen::Index i = 0; i < rref.rows(); ++i)
        for (Eigen::Index j = 0; j < rref.cols(); ++j) {
            bool ok = false;
            for (int den = 1; den <= 12 && !ok; ++den)
                ok = std::abs(rref(i, j) * den - std::round(rref(i, j) * den)) < 1e-7;
            out.rational = out.rational && ok;
        }
    // deterministic search over small integer combinations
    std::vector<int> coeff(static_cast<std::size_t>(out.kernel_dim), -2);
    for (int trial = 0; trial < 4096; ++trial) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(k * k);
        for (int t = 0; t < out.kernel_dim; ++t) x += coeff[t] * rref.row(t).transpose();
        RMat m = Eigen::Map<RMat>(x.data(), k, k);
        const double det = m.determinant();
        if (std::abs(det) > 1e-6) {
            out.invertible = true;
            out.determinant = det;
            break;
        }
        for (int t = 0; t < out.kernel_dim; ++t) {
            if (++coeff[t] <= 2) break;
            coeff[t] = -2;
        }
    }
    return out;
}

}  // namespace pelks::lattice
