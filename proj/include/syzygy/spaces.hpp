#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "syzygy/sparse.hpp"

namespace syzygy {

long long binom(long n, long k);
long long factorial(long n);

// Symbolic description of an SL2 space built from the two-dimensional
// standard representation U by symmetric powers, exterior powers and
// tensor products. Nodes are immutable and shared; bases and weights
// are memoized per node.
class Space {
public:
    enum class Kind { atom_u, sym, wedge, tensor };

    static Space U();
    static Space sym(int n, const Space& inner);
    static Space wedge(int n, const Space& inner);
    static Space tensor(const Space& left, const Space& right);

    Kind kind() const;
    int arity() const;  // the n of sym/wedge
    Space left() const;
    Space right() const;
    Space inner() const { return left(); }

    Index dim() const;
    // sl2 weight of each canonical basis vector.
    const std::vector<int>& weights() const;
    // Tuples of inner indices for sym (weakly increasing) and wedge
    // (strictly increasing); lex ordered. Meaningless for atoms/tensors.
    const std::vector<std::vector<int>>& tuples() const;
    // Index of a sorted tuple in the canonical basis order.
    Index tuple_index(const std::vector<int>& t) const;

    std::string label(Index i) const;
    std::string name() const;

    bool operator==(const Space& o) const { return node_ == o.node_; }

private:
    struct Node;
    explicit Space(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Laurent polynomial in one weight variable; coefficients are weight
// space dimensions.
struct Character {
    std::map<int, long long> coeff;

    long long total() const;
    bool palindromic() const;
    bool operator==(const Character& o) const { return coeff == o.coeff; }
    std::string str() const;  // sorted "weight: multiplicity" list
};

Character character(const Space& s);
Character product(const Character& a, const Character& b);

enum class Sl2 { e, f, h };

// Matrix of the generator on the canonical basis, extended to sym,
// wedge and tensor constructions by the derivation rule. Integer
// entries over the rationals; convention e = x d/dy, f = y d/dx on U
// with ordered basis (x, y).
SparseMatrix<RationalField> sl2_action(const Space& s, Sl2 gen);

struct HermiteReport {
    int a = 0, b = 0;
    Index dim_wedge = 0;   // dim Wedge(a, Sym(b, U))
    Index dim_sym = 0;     // dim Sym(b+1-a, Sym(a, U))
    long long binomial = 0;  // C(b+1, a)
    bool dims_equal = false;
    bool chars_equal = false;
    int first_mismatch_weight = 0;  // meaningful only when !chars_equal
    bool pass() const { return dims_equal && chars_equal; }
};

// Character-level verification of Wedge(a, Sym(b,U)) = Sym(b+1-a, Sym(a,U)).
HermiteReport hermite_verify(int a, int b);

// Irreducible decomposition of Wedge(2, Sym(m, U)) as a descending list
// of highest weights, by character subtraction.
std::vector<int> wedge2_decompose(int m);

}  // namespace syzygy
