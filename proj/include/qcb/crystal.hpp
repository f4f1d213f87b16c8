#pragma once

#include "qcb/module.hpp"

namespace qcb {

/// One piece of an sl2-string decomposition: x = sum_n F_i^{(n)} u_n with
/// E_i u_n = 0, the decomposition being unique.
struct StringComponent {
    int n;
    ModuleVector u;
};

std::vector<StringComponent> i_string_decompose(const WeightModule& m, const ModuleVector& x,
                                                int i);

/// Kashiwara operators on lattice vectors: ftilde x = sum F_i^{(n+1)} u_n,
/// etilde x = sum F_i^{(n-1)} u_n over the string decomposition.  The result
/// may be the zero vector (null at the crystal level is decided by classes).
ModuleVector kashiwara_f(const WeightModule& m, int i, const ModuleVector& x);
ModuleVector kashiwara_e(const WeightModule& m, int i, const ModuleVector& x);

/// String sequence s^< : pairs (vertex, multiplicity).
using StringSeq = std::vector<std::pair<int, int>>;

enum class StringOrd { less, greater, equal, incomparable };

/// The refine string order: lexicographic comparison of (vertex,
/// multiplicity) pairs at the first differing position; sequences where one
/// is a proper prefix of the other (necessarily of different weights) are
/// incomparable.
StringOrd string_order_compare(const StringSeq& a, const StringSeq& b);

std::string string_seq_str(const StringSeq& s, const Quiver& q);

/// The crystal B(lambda) enumerated up to a height bound, with module-level
/// lattice data: per weight, an A0-basis of the span of the ftilde-word
/// vectors and the class of every node modulo v.
class Crystal {
public:
    struct Node {
        WeightVector nu;
        StringSeq string;      // s^< with respect to the vertex order
        ModuleVector rep;      // replay of the string as an ftilde-word
        std::vector<int> eps;  // eps_i per vertex
    };

    Crystal(const Module& m, int height_bound);

    const Module& module() const { return *m_; }
    int height_bound() const { return bound_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<int>& at_weight(const WeightVector& nu) const;

    /// Index of the node whose class is x mod vL; -1 when the class is zero.
    /// x must lie in the lattice of its weight.
    int identify(const ModuleVector& x) const;
    /// Crystal edges; -1 encodes null.  f_edge requires the target height to
    /// be within the bound.
    int f_edge(int node, int i) const;
    int e_edge(int node, int i) const;

private:
    const Module* m_;
    int bound_;
    std::vector<Node> nodes_;
    std::map<WeightVector, std::vector<int>> by_weight_;
    struct Lattice {
        std::vector<std::vector<RatFun>> rows;  // echelonized A0-basis
        std::vector<int> pivots;
        std::vector<std::vector<Rat>> classes;  // per node, aligned with by_weight_
    };
    std::map<WeightVector, Lattice> lattice_;

    std::vector<Rat> class_of(const Lattice& lat, std::vector<RatFun> x) const;
    void enumerate();
};

/// Signature-rule tensor crystal on pairs (first factor, second factor) of
/// factor-crystal node indices, matching the module coproduct convention.
class TensorCrystal {
public:
    TensorCrystal(const Crystal& first, const Crystal& second)
        : c2_(&first), c1_(&second) {}

    using NodePair = std::pair<int, int>;
    /// ftilde: acts on the first factor when phi(first) > eps(second),
    /// etilde: on the first factor when phi(first) >= eps(second).
    std::optional<NodePair> f(int i, NodePair b) const;
    std::optional<NodePair> e(int i, NodePair b) const;

    const Crystal& first() const { return *c2_; }
    const Crystal& second() const { return *c1_; }

private:
    const Crystal *c2_, *c1_;
};

/// phi_i(b) = eps_i(b) + <i, weight(b)>.
long crystal_phi(const Crystal& c, int node, int i);

/// Replay a string sequence as an ftilde-word from the highest node of the
/// given crystal; -1 when the word dies there.
int crystal_restriction(const StringSeq& s, const Crystal& smaller);

/// Cross-check of the signature rule against module-level Kashiwara
/// operators acting on pure tensors of node representatives.  Both results
/// are compared as classes modulo v times the tensor lattice L2 (x) L1.
struct TensorAgreement {
    int pairs_checked = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};
TensorAgreement check_tensor_crystal_agreement(const TensorModule& tm, const Crystal& c2,
                                               const Crystal& c1, int height_bound);

}  // namespace qcb
