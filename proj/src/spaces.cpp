#include "syzygy/spaces.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace syzygy {

long long binom(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

long long factorial(long n) {
    long long r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

struct Space::Node {
    Kind kind;
    int arity = 0;
    std::shared_ptr<const Node> a, b;

    mutable std::once_flag basis_once;
    mutable Index dim = -1;
    mutable std::vector<std::vector<int>> tuples;
    mutable std::vector<int> weights;

    void ensure_basis() const;
    Index dimension() const;
};

namespace {

void gen_tuples(int n, Index inner_dim, bool strict, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    int lo = cur.empty() ? 0 : cur.back() + (strict ? 1 : 0);
    for (int v = lo; v < inner_dim; ++v) {
        cur.push_back(v);
        gen_tuples(n, inner_dim, strict, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Index Space::Node::dimension() const {
    switch (kind) {
        case Kind::atom_u:
            return 2;
        case Kind::sym:
            return binom(a->dimension() + arity - 1, arity);
        case Kind::wedge:
            return binom(a->dimension(), arity);
        case Kind::tensor:
            return a->dimension() * b->dimension();
    }
    return 0;
}

void Space::Node::ensure_basis() const {
    std::call_once(basis_once, [this] {
        dim = dimension();
        switch (kind) {
            case Kind::atom_u:
                weights = {1, -1};
                break;
            case Kind::sym:
            case Kind::wedge: {
                a->ensure_basis();
                std::vector<int> cur;
                gen_tuples(arity, a->dim, kind == Kind::wedge, cur, tuples);
                weights.reserve(tuples.size());
                for (const auto& t : tuples) {
                    int w = 0;
                    for (int m : t) w += a->weights[static_cast<size_t>(m)];
                    weights.push_back(w);
                }
                if (static_cast<Index>(tuples.size()) != dim)
                    throw std::logic_error("space: basis enumeration does not match dimension");
                break;
            }
            case Kind::tensor: {
                a->ensure_basis();
                b->ensure_basis();
                weights.reserve(static_cast<size_t>(dim));
                for (Index i = 0; i < a->dim; ++i)
                    for (Index j = 0; j < b->dim; ++j)
                        weights.push_back(a->weights[static_cast<size_t>(i)] +
                                          b->weights[static_cast<size_t>(j)]);
                break;
            }
        }
    });
}

Space Space::U() {
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::atom_u;
        return n;
    }();
    return Space(node);
}

Space Space::sym(int n, const Space& inner) {
    if (n < 0) throw std::invalid_argument("sym: negative power");
    auto node = std::make_shared<Node>();
    node->kind = Kind::sym;
    node->arity = n;
    node->a = inner.node_;
    return Space(node);
}

Space Space::wedge(int n, const Space& inner) {
    if (n < 0) throw std::invalid_argument("wedge: negative power");
    auto node = std::make_shared<Node>();
    node->kind = Kind::wedge;
    node->arity = n;
    node->a = inner.node_;
    return Space(node);
}

Space Space::tensor(const Space& left, const Space& right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::tensor;
    node->a = left.node_;
    node->b = right.node_;
    return Space(node);
}

Space::Kind Space::kind() const { return node_->kind; }
int Space::arity() const { return node_->arity; }
Space Space::left() const { return Space(node_->a); }
Space Space::right() const { return Space(node_->b); }

Index Space::dim() const {
    node_->ensure_basis();
    return node_->dim;
}

const std::vector<int>& Space::weights() const {
    node_->ensure_basis();
    return node_->weights;
}

const std::vector<std::vector<int>>& Space::tuples() const {
    node_->ensure_basis();
    if (node_->kind != Kind::sym && node_->kind != Kind::wedge)
        throw std::logic_error("space: tuples only defined for sym/wedge nodes");
    return node_->tuples;
}

Index Space::tuple_index(const std::vector<int>& t) const {
    const auto& ts = tuples();
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    if (it == ts.end() || *it != t)
        throw std::logic_error("space: tuple not in basis");
    return static_cast<Index>(it - ts.begin());
}

std::string Space::label(Index i) const {
    node_->ensure_basis();
    switch (node_->kind) {
        case Kind::atom_u:
            return i == 0 ? "x" : "y";
        case Kind::sym: {
            Space in = inner();
            const auto& t = tuples()[static_cast<size_t>(i)];
            if (t.empty()) return "1";
            std::ostringstream os;
            size_t k = 0;
            bool first = true;
            while (k < t.size()) {
                size_t j = k;
                while (j < t.size() && t[j] == t[k]) ++j;
                if (!first) os << "*";
                first = false;
                std::string l = in.label(t[k]);
                if (in.kind() != Kind::atom_u) l = "(" + l + ")";
                os << l;
                if (j - k > 1) os << "^" << (j - k);
                k = j;
            }
            return os.str();
        }
        case Kind::wedge: {
            Space in = inner();
            const auto& t = tuples()[static_cast<size_t>(i)];
            std::ostringstream os;
            for (size_t k = 0; k < t.size(); ++k) {
                if (k) os << "∧";
                std::string l = in.label(t[k]);
                if (in.kind() != Kind::atom_u) l = "(" + l + ")";
                os << l;
            }
            return os.str();
        }
        case Kind::tensor: {
            Index db = right().dim();
            return left().label(i / db) + "⊗" + right().label(i % db);
        }
    }
    return "?";
}

std::string Space::name() const {
    switch (node_->kind) {
        case Kind::atom_u:
            return "U";
        case Kind::sym:
            return "Sym(" + std::to_string(node_->arity) + ", " + inner().name() + ")";
        case Kind::wedge:
            return "Wedge(" + std::to_string(node_->arity) + ", " + inner().name() + ")";
        case Kind::tensor:
            return "Tensor(" + left().name() + ", " + right().name() + ")";
    }
    return "?";
}

long long Character::total() const {
    long long s = 0;
    for (const auto& [w, c] : coeff) s += c;
    return s;
}

bool Character::palindromic() const {
    for (const auto& [w, c] : coeff) {
        auto it = coeff.find(-w);
        if (it == coeff.end() || it->second != c) return false;
    }
    return true;
}

std::string Character::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
        if (!first) os << ", ";
        first = false;
        os << it->first << ": " << it->second;
    }
    return os.str();
}

Character character(const Space& s) {
    Character ch;
    for (int w : s.weights()) ++ch.coeff[w];
    std::erase_if(ch.coeff, [](const auto& kv) { return kv.second == 0; });
    return ch;
}

Character product(const Character& a, const Character& b) {
    Character r;
    for (const auto& [wa, ca] : a.coeff)
        for (const auto& [wb, cb] : b.coeff) r.coeff[wa + wb] += ca * cb;
    std::erase_if(r.coeff, [](const auto& kv) { return kv.second == 0; });
    return r;
}

namespace {

using QMat = SparseMatrix<RationalField>;

// Column view of the inner action: col -> list of (row, integer coeff).
std::vector<std::vector<std::pair<Index, long>>> columns_of(const QMat& m) {
    std::vector<std::vector<std::pair<Index, long>>> cols(static_cast<size_t>(m.cols()));
    for (const auto& e : m.entries())
        cols[static_cast<size_t>(e.col)].push_back({e.row, static_cast<long>(e.value.get_num().get_si())});
    return cols;
}

QMat sym_derivation(const Space& s, const QMat& inner_act) {
    RationalField f;
    auto cols = columns_of(inner_act);
    const auto& ts = s.tuples();
    MatrixBuilder<RationalField> mb(f, s.dim(), s.dim());
    for (size_t idx = 0; idx < ts.size(); ++idx) {
        const auto& t = ts[idx];
        for (size_t k = 0; k < t.size(); ++k) {
            for (const auto& [w, c] : cols[static_cast<size_t>(t[k])]) {
                std::vector<int> nt = t;
                nt[k] = static_cast<int>(w);
                std::sort(nt.begin(), nt.end());
                mb.add_int(s.tuple_index(nt), static_cast<Index>(idx), c);
            }
        }
    }
    return mb.build();
}

QMat wedge_derivation(const Space& s, const QMat& inner_act) {
    RationalField f;
    auto cols = columns_of(inner_act);
    const auto& ts = s.tuples();
    MatrixBuilder<RationalField> mb(f, s.dim(), s.dim());
    for (size_t idx = 0; idx < ts.size(); ++idx) {
        const auto& t = ts[idx];
        for (size_t k = 0; k < t.size(); ++k) {
            for (const auto& [w, c] : cols[static_cast<size_t>(t[k])]) {
                bool repeated = false;
                for (size_t j = 0; j < t.size(); ++j)
                    if (j != k && t[j] == static_cast<int>(w)) {
                        repeated = true;
                        break;
                    }
                if (repeated) continue;
                std::vector<int> nt = t;
                nt[k] = static_cast<int>(w);
                int sign = 1;
                // Insertion sort, counting transpositions.
                for (size_t j = 1; j < nt.size(); ++j) {
                    size_t m = j;
                    while (m > 0 && nt[m - 1] > nt[m]) {
                        std::swap(nt[m - 1], nt[m]);
                        sign = -sign;
                        --m;
                    }
                }
                mb.add_int(s.tuple_index(nt), static_cast<Index>(idx), sign * c);
            }
        }
    }
    return mb.build();
}

}  // namespace

SparseMatrix<RationalField> sl2_action(const Space& s, Sl2 gen) {
    RationalField f;
    switch (s.kind()) {
        case Space::Kind::atom_u: {
            MatrixBuilder<RationalField> mb(f, 2, 2);
            if (gen == Sl2::e) {
                mb.add_int(0, 1, 1);  // e: y -> x
            } else if (gen == Sl2::f) {
                mb.add_int(1, 0, 1);  // f: x -> y
            } else {
                mb.add_int(0, 0, 1);
                mb.add_int(1, 1, -1);
            }
            return mb.build();
        }
        case Space::Kind::sym:
            return sym_derivation(s, sl2_action(s.inner(), gen));
        case Space::Kind::wedge:
            return wedge_derivation(s, sl2_action(s.inner(), gen));
        case Space::Kind::tensor: {
            auto l = sl2_action(s.left(), gen);
            auto r = sl2_action(s.right(), gen);
            auto il = SparseMatrix<RationalField>::identity(f, s.left().dim());
            auto ir = SparseMatrix<RationalField>::identity(f, s.right().dim());
            return add_matrices(kron(l, ir), kron(il, r));
        }
    }
    throw std::logic_error("sl2_action: unreachable");
}

HermiteReport hermite_verify(int a, int b) {
    if (a < 0 || b < 1 || a > b + 1)
        throw std::invalid_argument("hermite_verify: need 0 <= a <= b+1, b >= 1");
    HermiteReport rep;
    rep.a = a;
    rep.b = b;
    Space lhs = Space::wedge(a, Space::sym(b, Space::U()));
    Space rhs = Space::sym(b + 1 - a, Space::sym(a, Space::U()));
    rep.dim_wedge = lhs.dim();
    rep.dim_sym = rhs.dim();
    rep.binomial = binom(b + 1, a);
    rep.dims_equal = rep.dim_wedge == rep.binomial && rep.dim_sym == rep.binomial;
    Character cl = character(lhs), cr = character(rhs);
    rep.chars_equal = cl == cr;
    if (!rep.chars_equal) {
        for (const auto& [w, c] : cl.coeff) {
            auto it = cr.coeff.find(w);
            if (it == cr.coeff.end() || it->second != c) {
                rep.first_mismatch_weight = w;
                break;
            }
        }
    }
    return rep;
}

std::vector<int> wedge2_decompose(int m) {
    if (m < 1) throw std::invalid_argument("wedge2_decompose: need m >= 1");
    Character ch = character(Space::wedge(2, Space::sym(m, Space::U())));
    std::vector<int> weights;
    while (!ch.coeff.empty()) {
        int top = ch.coeff.rbegin()->first;
        if (ch.coeff.rbegin()->second <= 0)
            throw std::logic_error("wedge2_decompose: negative multiplicity");
        weights.push_back(top);
        for (int w = -top; w <= top; w += 2) {
            auto it = ch.coeff.find(w);
            if (it == ch.coeff.end() || it->second <= 0)
                throw std::logic_error("wedge2_decompose: character is not a sum of irreducibles");
            if (--it->second == 0) ch.coeff.erase(it);
        }
    }
    return weights;
}

}  // namespace syzygy
