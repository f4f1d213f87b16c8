#pragma once

#include "qcb/crystal.hpp"

#include <functional>

namespace qcb {

/// Coefficientwise bar involution (chosen basis vectors are bar-fixed words).
ModuleVector bar_vector(const ModuleVector& x);

/// Crystal node indices at one weight, ascending in the string order.
std::vector<int> nodes_in_string_order(const Crystal& c, const WeightVector& nu);

/// m_b = F^{(a_1)}_{i_1} ... F^{(a_l)}_{i_l} v_lambda, the word read from
/// s^<(b) with the leftmost factor applied last.
ModuleVector monomial_vector(const Module& m, const Crystal::Node& b);

struct MonomialBasis {
    WeightVector nu;
    std::vector<int> node_order;        // crystal node indices, string-ascending
    std::vector<ModuleVector> vectors;  // sign-normalized monomial vectors
    std::vector<int> signs;             // absorbed sign per node (+1 or -1)
    bool independent = false;           // exact nonsingularity certificate
};

/// Monomial vectors for all nodes of the weight, ordered by the fixed linear
/// extension of the refine string order, normalized so the node class of each
/// vector is +1 on the diagonal.  A singular coordinate matrix is a hard
/// failure.
MonomialBasis monomial_basis(const Module& m, const Crystal& c, const WeightVector& nu);

struct CanonicalBasis {
    WeightVector nu;
    std::vector<int> node_order;        // as in the monomial basis
    std::vector<ModuleVector> vectors;  // G(b): bar-invariant, == b mod v L
};

/// Bar-invariant vectors congruent to their node modulo v times the node
/// lattice, by successive v-adic correction against already computed G(b')
/// at string-order-larger nodes.  Throws past the degree bound
/// 2*dim + height (non-convergence names lambda, nu, b).
CanonicalBasis canonical_basis(const Module& m, const Crystal& c, const WeightVector& nu);

struct TransitionMatrix {
    std::vector<StringSeq> row_basis, col_basis;
    Mat<RatFun> entries;       // columns of A over B
    bool unitriangular = false;  // w.r.t. the refine string order, diagonal 1
    bool entries_laurent = false;
};

/// Exact change-of-basis matrix expressing the columns of `a` over `b`;
/// triangularity flags are recomputed from the entries.
TransitionMatrix transition_matrix(const Crystal& c, const std::vector<int>& node_order,
                                   const std::vector<ModuleVector>& a,
                                   const std::vector<ModuleVector>& b);

/// psi-twisted generator action: the apply_generator result scaled by the
/// sign from the framed quiver.
ModuleVector twisted_action(const WeightModule& m, const FramedQuiver& fq, int i, int r, bool is_f,
                            const ModuleVector& x);

/// Integral basis per weight: columns over the module's own coordinates.
/// Operator matrices conjugated into it must be Laurent.
using IntegralBasisFn = std::function<Mat<RatFun>(const WeightVector&)>;

/// Specializes the psi-twisted operator matrices over an integral basis at
/// v = -1 and checks the classical relations as exact integer identities:
/// [e_i, f_j] = delta_ij h_i with h_i the integer weight, the cleared-form
/// Serre relations, cross-vertex commutation, and integrability.
/// `twist = false` runs the untwisted operators (negative control).
RelationReport verify_twisted_relations(const WeightModule& m, const FramedQuiver& fq,
                                        const IntegralBasisFn& basis, const WeightVector& lambda_total,
                                        int height, bool twist = true);

/// Monomial integral basis for an irreducible module (crystal bound must
/// cover height + the largest Serre ladder).
IntegralBasisFn monomial_integral_basis(const Module& m, const Crystal& c);
/// Pure tensors of factor monomial vectors.
IntegralBasisFn tensor_integral_basis(const TensorModule& tm, const Crystal& c2, const Crystal& c1);

/// Delta(F_{word1}) applied to (F_{word2} v_{lambda2}) (x) v_{lambda1}.
ModuleVector tensor_monomial_shadow(const TensorModule& tm, const Word& word1, const Word& word2);

/// The quasi-R block solve: the weight-graded operator Theta with Theta_0 = Id
/// determined by Theta Delta(u) = bar-Delta(u) Theta under the triangularity
/// ansatz (each graded piece raises the first factor and lowers the second).
struct QuasiRResult {
    enum class Status { ok, non_unique, inconsistent };
    Status status;
    Mat<RatFun> theta;  // on the total weight block `nu`, slot-indexed
};
QuasiRResult quasi_r_block(const TensorModule& tm, const WeightVector& nu, int height_bound);

}  // namespace qcb
