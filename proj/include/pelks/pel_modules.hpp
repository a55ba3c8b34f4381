#pragma once

// Signed basis modules e_ij over the local maximal order, the relation
// submodule of M (x) M^dual, its Smith-form quotient, and the global
// rank computation for W (x) W over an imaginary quadratic ring.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pelks/cyclic_algebra.hpp"

namespace pelks::pel {

using algebra::LocalSeriesElement;
using algebra::SeriesMatrix;
using cyclic::DescriptorPtr;

enum class PelType { A, C };

inline const char* to_string(PelType t) { return t == PelType::A ? "A" : "C"; }

// Type C: xbar = tau^s(x). Type A places are split in F/F^+, so x and xbar
// are independent elements of O_E.
enum class ConjugationModel { PowerOfTau, SplitPlace };

struct LocalPelInstance {
    DescriptorPtr algebra;
    PelType type = PelType::C;
    int r = 1;
    int p = 1;  // columns j < p see x, the rest see xbar
    int q = 0;

    int n() const { return algebra->n; }
    ConjugationModel conjugation() const {
        return type == PelType::A ? ConjugationModel::SplitPlace : ConjugationModel::PowerOfTau;
    }
};

inline LocalPelInstance make_local_instance(DescriptorPtr d, PelType type, int r, int p = -1, int q = -1) {
    if (r < 1) throw std::invalid_argument("rank r must be positive");
    LocalPelInstance inst{std::move(d), type, r, r, 0};
    if (type == PelType::A) {
        if (p < 0 || q < 0 || p + q != r) throw SignatureMismatch("type A needs a signature (p, q) with p + q = r");
        inst.p = p;
        inst.q = q;
    } else if (inst.algebra->conj_exponent != 0) {
        throw InvalidInvariant("type C uses the trivial conjugation s = 0");
    }
    return inst;
}

struct BasisLabel {
    int i = 0;  // 0 <= i < n
    int j = 0;  // 0 <= j < r
    friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

struct TensorIndex {
    BasisLabel plain;
    BasisLabel dual;
    friend auto operator<=>(const TensorIndex&, const TensorIndex&) = default;
};

inline std::string label_string(const BasisLabel& b, bool dual) {
    std::ostringstream os;
    os << "e" << (dual ? "'" : "") << "_" << b.i + 1 << "," << b.j + 1;
    return os.str();
}
inline std::string label_string(const TensorIndex& t) {
    return label_string(t.plain, false) + "(x)" + label_string(t.dual, true);
}

struct SignedBasisModule {
    int n = 1, r = 1, p = 1, q = 0;
    bool dual = false;
    std::vector<BasisLabel> basis() const {
        std::vector<BasisLabel> out;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) out.push_back({i, j});
        return out;
    }
};

inline SignedBasisModule plain_module(const LocalPelInstance& inst) {
    return {inst.n(), inst.r, inst.p, inst.q, false};
}
inline SignedBasisModule dual_module(const LocalPelInstance& inst) {
    return {inst.n(), inst.r, inst.p, inst.q, true};
}

struct TestElement {
    LocalSeriesElement x;
    LocalSeriesElement x_bar;
};

inline TestElement make_test_element(const LocalPelInstance& inst, const LocalSeriesElement& x,
                                     std::optional<LocalSeriesElement> x_bar = std::nullopt) {
    if (inst.conjugation() == ConjugationModel::PowerOfTau) {
        if (x_bar) throw std::invalid_argument("conjugate is determined by x for this place");
        return {x, inst.algebra->bar(x)};
    }
    if (!x_bar) throw std::invalid_argument("a split place needs an explicit conjugate");
    return {x, *x_bar};
}

struct Generator {
    bool is_u = false;
    TestElement element;  // ignored for u
    static Generator u() { return {true, {}}; }
    static Generator scalar(TestElement t) { return {false, std::move(t)}; }
};

struct ScaledLabel {
    LocalSeriesElement coeff;
    BasisLabel label;
};

// Action of a generator on one basis vector of the plain or dual module.
inline ScaledLabel act(const LocalPelInstance& inst, const Generator& g, const BasisLabel& b, bool dual) {
    const auto& d = *inst.algebra;
    const int n = d.n;
    if (g.is_u) {
        if (b.i == 0) return {d.norm_element(), {n - 1, b.j}};
        return {d.one(), {b.i - 1, b.j}};
    }
    const bool first_block = b.j < inst.p;
    if (!dual) {
        const auto& src = first_block ? g.element.x : g.element.x_bar;
        return {d.tau(src, b.i), b};
    }
    const auto& src = first_block ? g.element.x_bar : g.element.x;
    return {d.tau(src, n - b.i), b};
}

using TensorVector = std::map<TensorIndex, LocalSeriesElement>;

inline void accumulate(TensorVector& v, const TensorIndex& t, const LocalSeriesElement& c) {
    auto it = v.find(t);
    if (it == v.end()) v.emplace(t, c);
    else it->second = it->second + c;
}

// Residues of the characters x -> tau^a(x) (and tau^a(xbar) at split places)
// are pairwise distinct.
inline bool is_separating(const LocalPelInstance& inst, const TestElement& t) {
    const auto& d = *inst.algebra;
    std::vector<algebra::Code> residues;
    for (int a = 0; a < d.n; ++a) {
        residues.push_back(d.tau(t.x, a).digit(0));
        if (inst.conjugation() == ConjugationModel::SplitPlace) residues.push_back(d.tau(t.x_bar, a).digit(0));
    }
    if (!t.x.is_integral() || !t.x_bar.is_integral()) return false;
    std::set<algebra::Code> uniq(residues.begin(), residues.end());
    return uniq.size() == residues.size();
}

// First separating element among powers of the residue generator (pairs of
// powers at split places).
inline TestElement find_separating_element(const LocalPelInstance& inst) {
    const auto& d = *inst.algebra;
    const long long order = static_cast<long long>(d.field->size()) - 1;
    for (long long k = 0; k <= order; ++k) {
        auto x = k == order ? d.zero() : d.zeta_power(k);
        if (inst.conjugation() == ConjugationModel::PowerOfTau) {
            TestElement t{x, d.bar(x)};
            if (is_separating(inst, t)) return t;
            continue;
        }
        for (long long l = 0; l <= order; ++l) {
            auto y = l == order ? d.zero() : d.zeta_power(l);
            TestElement t{x, y};
            if (is_separating(inst, t)) return t;
        }
    }
    std::ostringstream os;
    os << "no separating test element in F_" << d.field->size() << " for n=" << d.n;
    throw DegenerateTestElement(os.str());
}

// (beta e) (x) e' - e (x) (beta e') for beta in xs and u, over all basis pairs.
inline std::vector<TensorVector> relation_generators(const LocalPelInstance& inst,
                                                     const std::vector<TestElement>& xs) {
    bool separating = false;
    for (const auto& t : xs) separating = separating || is_separating(inst, t);
    if (!separating) throw DegenerateTestElement("no test element separates the characters");
    std::vector<Generator> gens;
    for (const auto& t : xs) gens.push_back(Generator::scalar(t));
    gens.push_back(Generator::u());

    const auto plain = plain_module(inst).basis();
    const auto dual = dual_module(inst).basis();
    std::vector<TensorVector> out;
    for (const auto& g : gens)
        for (const auto& a : plain)
            for (const auto& b : dual) {
                TensorVector v;
                auto ga = act(inst, g, a, false);
                auto gb = act(inst, g, b, true);
                accumulate(v, {ga.label, b}, ga.coeff);
                accumulate(v, {a, gb.label}, -gb.coeff);
                out.push_back(std::move(v));
            }
    return out;
}

inline std::vector<TestElement> default_test_elements(const LocalPelInstance& inst) {
    return {find_separating_element(inst)};
}

struct RelationPresentation {
    std::vector<TensorIndex> columns;
    SeriesMatrix matrix;  // one row per relation
};

inline std::vector<TensorIndex> tensor_labels(const LocalPelInstance& inst) {
    std::vector<TensorIndex> out;
    for (const auto& a : plain_module(inst).basis())
        for (const auto& b : dual_module(inst).basis()) out.push_back({a, b});
    return out;
}

inline RelationPresentation presentation(const LocalPelInstance& inst, const std::vector<TensorVector>& rels) {
    RelationPresentation pr;
    pr.columns = tensor_labels(inst);
    std::map<TensorIndex, std::size_t> col;
    for (std::size_t c = 0; c < pr.columns.size(); ++c) col[pr.columns[c]] = c;
    const auto& d = *inst.algebra;
    pr.matrix = algebra::series_zero_matrix(std::max<std::size_t>(rels.size(), 1), pr.columns.size(), d.field,
                                            d.precision);
    for (std::size_t r = 0; r < rels.size(); ++r)
        for (const auto& [t, c] : rels[r]) pr.matrix(r, col.at(t)) = c;
    return pr;
}

struct SurvivorMember {
    TensorIndex label;
    int twist = 0;             // image = pi^twist * unit * image(generator)
    LocalSeriesElement unit;
};

struct SurvivorClass {
    TensorIndex generator;
    std::vector<SurvivorMember> members;
};

struct QuotientStructure {
    int free_rank = 0;
    std::vector<int> torsion;  // finite positive divisor valuations
    std::vector<SurvivorClass> classes;
    std::vector<TensorIndex> torsion_only;  // nonzero image inside the torsion part only
    std::vector<TensorIndex> killed;
    algebra::SmithDecomposition smith;
    RelationPresentation relations;

    // Relation-span membership of a vector given in presentation columns.
    bool in_relation_span(const TensorVector& v) const;
};

namespace detail {

struct Image {
    std::vector<LocalSeriesElement> free_part;
    std::vector<LocalSeriesElement> torsion_part;
};

inline Image image_of(const QuotientStructure& qs, const std::vector<LocalSeriesElement>& row) {
    Image im;
    const auto& divs = qs.smith.divisors;
    for (std::size_t c = 0; c < row.size(); ++c) {
        int dv = c < divs.size() ? divs[c] : algebra::kInfiniteValuation;
        if (dv == 0) continue;
        if (dv == algebra::kInfiniteValuation) im.free_part.push_back(row[c]);
        else im.torsion_part.push_back(row[c].with_precision(dv));
    }
    return im;
}

inline bool all_zero(const std::vector<LocalSeriesElement>& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_zero(); });
}

inline int min_valuation(const std::vector<LocalSeriesElement>& v) {
    int m = algebra::kInfiniteValuation;
    for (const auto& x : v)
        if (!x.is_zero()) m = std::min(m, x.valuation());
    return m;
}

}  // namespace detail

inline bool QuotientStructure::in_relation_span(const TensorVector& v) const {
    const auto& V = smith.right;
    const std::size_t N = relations.columns.size();
    std::map<TensorIndex, std::size_t> col;
    for (std::size_t c = 0; c < N; ++c) col[relations.columns[c]] = c;
    auto field = relations.matrix.zero().field();
    std::vector<LocalSeriesElement> y(N, LocalSeriesElement::zero(field, relations.matrix.zero().precision()));
    for (const auto& [t, c] : v) {
        const std::size_t row = col.at(t);
        for (std::size_t k = 0; k < N; ++k) y[k] = y[k] + c * V(row, k);
    }
    auto im = detail::image_of(*this, y);
    return detail::all_zero(im.free_part) && detail::all_zero(im.torsion_part);
}

inline QuotientStructure quotient_structure(const LocalPelInstance& inst, const std::vector<TensorVector>& rels) {
    QuotientStructure qs;
    qs.relations = presentation(inst, rels);
    qs.smith = algebra::smith_normal_form(qs.relations.matrix);
    const std::size_t N = qs.relations.columns.size();
    for (std::size_t c = 0; c < N; ++c) {
        int dv = c < qs.smith.divisors.size() ? qs.smith.divisors[c] : algebra::kInfiniteValuation;
        if (dv == algebra::kInfiniteValuation) ++qs.free_rank;
        else if (dv > 0) qs.torsion.push_back(dv);
    }

    struct Rep {
        std::vector<LocalSeriesElement> primitive;
        std::size_t pivot;
    };
    std::vector<Rep> reps;
    std::vector<std::vector<std::tuple<TensorIndex, int, LocalSeriesElement>>> raw;
    const auto& V = qs.smith.right;
    for (std::size_t t = 0; t < N; ++t) {
        std::vector<LocalSeriesElement> row;
        for (std::size_t c = 0; c < N; ++c) row.push_back(V(t, c));
        auto im = detail::image_of(qs, row);
        const auto& label = qs.relations.columns[t];
        if (detail::all_zero(im.free_part)) {
            if (detail::all_zero(im.torsion_part)) qs.killed.push_back(label);
            else qs.torsion_only.push_back(label);
            continue;
        }
        const int w = detail::min_valuation(im.free_part);
        std::vector<LocalSeriesElement> prim;
        for (const auto& x : im.free_part) prim.push_back(x.shift(-w));
        bool placed = false;
        for (std::size_t k = 0; k < reps.size() && !placed; ++k) {
            const auto& rep = reps[k];
            LocalSeriesElement lambda = prim[rep.pivot] / rep.primitive[rep.pivot];
            if (!lambda.is_unit()) continue;
            bool same = true;
            for (std::size_t c = 0; c < prim.size() && same; ++c)
                same = congruent(prim[c], lambda * rep.primitive[c]);
            if (!same) continue;
            raw[k].emplace_back(label, w, lambda);
            placed = true;
        }
        if (!placed) {
            std::size_t pivot = 0;
            while (!prim[pivot].is_unit()) ++pivot;
            reps.push_back({prim, pivot});
            raw.push_back({{label, w, LocalSeriesElement::one(prim[pivot].field(), prim[pivot].precision())}});
        }
    }
    for (auto& members : raw) {
        // generator: least twist, then least label
        auto gen = std::min_element(members.begin(), members.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<1>(a), std::get<0>(a)) < std::tie(std::get<1>(b), std::get<0>(b));
        });
        const int w0 = std::get<1>(*gen);
        const LocalSeriesElement u0 = std::get<2>(*gen);
        SurvivorClass cls;
        cls.generator = std::get<0>(*gen);
        for (const auto& [label, w, lambda] : members) cls.members.push_back({label, w - w0, lambda / u0});
        std::sort(cls.members.begin(), cls.members.end(),
                  [](const auto& a, const auto& b) { return a.label < b.label; });
        qs.classes.push_back(std::move(cls));
    }
    std::sort(qs.classes.begin(), qs.classes.end(),
              [](const auto& a, const auto& b) { return a.generator < b.generator; });
    return qs;
}

inline QuotientStructure quotient_structure(const LocalPelInstance& inst) {
    return quotient_structure(inst, relation_generators(inst, default_test_elements(inst)));
}

// Classes counted once under the polarization symmetry (j,k) <-> (k,j).
inline bool in_fundamental_domain(const LocalPelInstance& inst, const TensorIndex& g) {
    if (inst.type == PelType::A) return g.plain.j < inst.p && g.dual.j >= inst.p;
    return g.plain.j <= g.dual.j;
}

struct ClassExponent {
    TensorIndex generator;
    int exponent = 0;
};

struct ImageExponent {
    int total = 0;
    std::vector<ClassExponent> per_class;
};

// Sum over survivor classes of the valuation of det K_c, where K_c pairs the
// plain and dual labels supporting the class.
inline ImageExponent image_exponent(const LocalPelInstance& inst, const QuotientStructure& qs) {
    if (inst.type == PelType::A && inst.p != inst.q) {
        std::ostringstream os;
        os << "signature (" << inst.p << "," << inst.q << ") is not balanced";
        throw SignatureMismatch(os.str());
    }
    const auto& d = *inst.algebra;
    ImageExponent out;
    for (const auto& cls : qs.classes) {
        if (!in_fundamental_domain(inst, cls.generator)) continue;
        std::vector<BasisLabel> rows, cols;
        for (const auto& m : cls.members) {
            if (std::find(rows.begin(), rows.end(), m.label.plain) == rows.end()) rows.push_back(m.label.plain);
            if (std::find(cols.begin(), cols.end(), m.label.dual) == cols.end()) cols.push_back(m.label.dual);
        }
        if (rows.size() != cols.size())
            throw std::logic_error("survivor class " + label_string(cls.generator) + " has non-square support");
        SeriesMatrix k = algebra::series_zero_matrix(rows.size(), cols.size(), d.field, d.precision);
        for (const auto& m : cls.members) {
            auto ri = std::find(rows.begin(), rows.end(), m.label.plain) - rows.begin();
            auto ci = std::find(cols.begin(), cols.end(), m.label.dual) - cols.begin();
            k(ri, ci) = m.unit * LocalSeriesElement::uniformizer_power(d.field, m.twist, d.precision);
        }
        const int e = algebra::determinant_valuation(k);
        if (e == algebra::kInfiniteValuation)
            throw InsufficientPrecision("class determinant vanishes to precision");
        out.per_class.push_back({cls.generator, e});
        out.total += e;
    }
    return out;
}

inline ImageExponent image_exponent(const LocalPelInstance& inst) {
    return image_exponent(inst, quotient_structure(inst));
}

// ------------------------------------------------------------- global rank

// O_F for F = Q(sqrt d), d squarefree and negative. omega = sqrt d, or
// (1 + sqrt d)/2 when d = 1 mod 4.
struct QuadraticRing {
    long long d = -1;
    bool one_mod_four = false;

    static QuadraticRing make(long long d) {
        if (d >= 0) throw std::invalid_argument("expected an imaginary quadratic field");
        for (long long k = 2; k * k <= -d; ++k)
            if ((-d) % (k * k) == 0) throw std::invalid_argument("d must be squarefree");
        return {d, ((d % 4) + 4) % 4 == 1};
    }
    long long discriminant() const { return one_mod_four ? d : 4 * d; }

    using Elt = std::pair<long long, long long>;  // a + b omega
    Elt mul(Elt x, Elt y) const {
        const long long bb = x.second * y.second;
        if (!one_mod_four) return {x.first * y.first + d * bb, x.first * y.second + x.second * y.first};
        // omega^2 = omega + (d - 1)/4
        return {x.first * y.first + bb * ((d - 1) / 4), x.first * y.second + x.second * y.first + bb};
    }
    Elt conj(Elt x) const {
        if (!one_mod_four) return {x.first, -x.second};
        return {x.first + x.second, -x.second};
    }
};

struct GlobalRankResult {
    int rank = 0;                      // O_F-rank of the free part
    std::optional<int> n_r;            // common number of survivors per index
    std::vector<algebra::BigInt> torsion;  // Z invariant factors > 1
    bool torsion_killed_by_discriminant = true;
    long long discriminant = 0;
    std::vector<int> weight_counts;
};

// W (x) W / R for W = O_F^{p+q}, R spanned by i(b)u (x) v - u (x) i(b*)v and
// u (x) v - v (x) u; i acts by b on the first p coordinates and by bbar after.
inline GlobalRankResult global_rank_lemma(int p, int q, long long d) {
    if (p < 0 || q < 0) throw std::invalid_argument("signature must be nonnegative");
    const auto O = QuadraticRing::make(d);
    const int r = p + q;
    GlobalRankResult out;
    out.discriminant = O.discriminant();
    out.weight_counts.assign(static_cast<std::size_t>(r), 0);
    if (r == 0) {
        out.n_r = 0;
        return out;
    }
    const std::size_t ncols = static_cast<std::size_t>(2 * r * r);
    auto idx = [&](int i, int j, int s) { return static_cast<std::size_t>((i * r + j) * 2 + s); };
    using Elt = QuadraticRing::Elt;
    const Elt basis[2] = {{1, 0}, {0, 1}};
    auto chi = [&](int i, Elt b) { return i < p ? b : O.conj(b); };
    auto psi = [&](int j, Elt b) { return j < p ? O.conj(b) : b; };

    algebra::IntMatrix rows;
    auto emit = [&](const std::vector<std::pair<std::size_t, Elt>>& terms) {
        // terms: generator index (s = 0 slot) and O_F coefficient
        std::vector<algebra::BigInt> row(ncols, 0);
        bool nonzero = false;
        for (const auto& [g, c] : terms) {
            row[g] += c.first;
            row[g + 1] += c.second;
            nonzero = nonzero || c.first != 0 || c.second != 0;
        }
        if (nonzero) rows.push_back(std::move(row));
    };
    for (const Elt& beta : basis)
        for (const Elt& c : basis)
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    Elt a = chi(i, beta), b = psi(j, beta);
                    Elt diff{a.first - b.first, a.second - b.second};
                    emit({{idx(i, j, 0), O.mul(c, diff)}});
                }
    for (const Elt& c : basis)
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) emit({{idx(i, j, 0), c}, {idx(j, i, 0), {-c.first, -c.second}}});

    if (rows.empty()) rows.push_back(std::vector<algebra::BigInt>(ncols, 0));
    auto snf = algebra::integer_smith(rows);
    const std::size_t zrank = snf.rank();
    out.rank = static_cast<int>((ncols - zrank) / 2);
    const algebra::BigInt D = out.discriminant < 0 ? -out.discriminant : out.discriminant;
    for (const auto& dv : snf.divisors)
        if (dv > 1) {
            out.torsion.push_back(dv);
            if (D % dv != 0) out.torsion_killed_by_discriminant = false;
        }
    // free survivors among the generators t_ij, i <= j
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            bool survives = false;
            for (std::size_t c = zrank; c < ncols && !survives; ++c)
                survives = snf.right[idx(i, j, 0)][c] != 0 || snf.right[idx(i, j, 1)][c] != 0;
            if (!survives) continue;
            ++out.weight_counts[static_cast<std::size_t>(i)];
            if (j != i) ++out.weight_counts[static_cast<std::size_t>(j)];
        }
    const int c0 = out.weight_counts.front();
    const bool uniform = std::all_of(out.weight_counts.begin(), out.weight_counts.end(),
                                     [&](int c) { return c == c0; });
    if (uniform && c0 > 0) out.n_r = c0;
    return out;
}

}  // namespace pelks::pel
