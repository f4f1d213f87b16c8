#pragma once

#include "qcb/linalg.hpp"
#include "qcb/quiver.hpp"

#include <map>
#include <memory>

namespace qcb {

/// Lowering word: letters are base vertices, word[0] is the outermost letter
/// (the F applied last).  The word (i, j) stands for F_i F_j v_lambda.
using Word = std::vector<int>;

WeightVector word_content(const Word& w, int n);
/// All words of the given content, in lexicographic order by the vertex order.
std::vector<Word> words_of_content(const WeightVector& nu);

/// Element of one weight space, as coordinates over the chosen word basis.
struct ModuleVector {
    WeightVector nu;            // lowering from the highest weight
    std::vector<RatFun> coords;
    bool is_zero() const;
};

/// Abstract weight-graded module with E_i/F_i/K actions on its weight spaces.
/// Weight spaces are indexed by the lowering vector nu over base vertices.
/// Operator matrices are cached per (vertex, weight).
class WeightModule {
public:
    virtual ~WeightModule() = default;
    virtual const Quiver& quiver() const = 0;
    virtual int dim(const WeightVector& nu) const = 0;
    /// <i, weight of the nu-space> under the Cartan form.
    virtual long weight_pairing(int i, const WeightVector& nu) const = 0;

    const Mat<RatFun>& f_mat(int i, const WeightVector& from) const;
    const Mat<RatFun>& e_mat(int i, const WeightVector& from) const;

    Mat<RatFun> f_divided_mat(int i, int r, const WeightVector& from) const;
    Mat<RatFun> e_divided_mat(int i, int r, const WeightVector& from) const;
    /// K_mu acts on the nu-space by v^{<mu, weight>}.
    RatFun k_scalar(const WeightVector& mu, const WeightVector& nu) const;

    ModuleVector apply_f(int i, const ModuleVector& x) const;
    ModuleVector apply_e(int i, const ModuleVector& x) const;
    ModuleVector apply_f_divided(int i, int r, const ModuleVector& x) const;
    ModuleVector apply_e_divided(int i, int r, const ModuleVector& x) const;
    ModuleVector zero_vector(const WeightVector& nu) const;

protected:
    virtual Mat<RatFun> f_mat_impl(int i, const WeightVector& from) const = 0;
    virtual Mat<RatFun> e_mat_impl(int i, const WeightVector& from) const = 0;

private:
    mutable std::map<std::pair<int, WeightVector>, Mat<RatFun>> f_cache_, e_cache_;
};

/// One weight space of L(lambda): all lowering words of content nu, with the
/// greedily chosen subset that is independent modulo the radical of the
/// contravariant form.  Independence is decided through the raising maps
/// (x = 0 in L(lambda) iff every E_i x = 0, since the radical is the maximal
/// submodule); the chosen set coincides with the greedy full-rank subset of
/// the word Gram matrix, which is kept for cross-checks.
struct WeightSpace {
    WeightVector nu;
    std::vector<Word> words;      // every word of content nu, lex order
    std::vector<int> basis;       // indices into words
    Mat<Laurent> gram;            // pairings of basis words

    // Reduced echelon of the basis words' raising vectors, with the
    // transform back to basis coordinates (red = trans * basis rows).
    int eps_len = 0;
    std::vector<int> eps_offset;  // block offset per vertex in a raising vector
    Mat<RatFun> red, trans;
    std::vector<int> pivots;
    std::map<Word, std::vector<RatFun>> word_coords;  // class of each word

    int dim() const { return (int)basis.size(); }
};

/// The irreducible integrable highest weight module L(lambda), realized as
/// lowering-word spans modulo the radical of the contravariant form.
/// lambda is dominant, in fundamental coordinates.
class Module : public WeightModule {
public:
    Module(Quiver q, WeightVector lambda);

    const Quiver& quiver() const override { return q_; }
    const WeightVector& lambda() const { return lambda_; }

    const WeightSpace& space(const WeightVector& nu) const;
    int dim(const WeightVector& nu) const override { return space(nu).dim(); }
    long weight_pairing(int i, const WeightVector& nu) const override;

    /// Contravariant (Shapovalov) pairing of two lowering words, normalized
    /// by <v_lambda, v_lambda> = 1, with E_i adjoint to F_i.
    const Laurent& pairing(const Word& x, const Word& y) const;
    /// E_i (F_w v_lambda) expanded over shorter words: each letter equal to i
    /// is removed with coefficient [<i, lambda - content(suffix)>].
    std::map<Word, Laurent> raise_word(int i, const Word& w) const;

    /// Class of a formal word combination in L(lambda), in chosen-basis
    /// coordinates (radical components vanish by construction).
    ModuleVector from_words(const WeightVector& nu, const std::map<Word, RatFun>& combo) const;
    ModuleVector highest() const;
    /// F_{w[0]} ... F_{w[k]} v_lambda as a module vector (plain powers).
    ModuleVector word_vector(const Word& w) const;

    /// Gram matrix over every word of content nu (for rank cross-checks).
    Mat<Laurent> full_gram(const WeightVector& nu) const;

protected:
    Mat<RatFun> f_mat_impl(int i, const WeightVector& from) const override;
    Mat<RatFun> e_mat_impl(int i, const WeightVector& from) const override;

private:
    Quiver q_;
    WeightVector lambda_;
    mutable std::map<WeightVector, std::unique_ptr<WeightSpace>> spaces_;
    mutable std::map<std::pair<Word, Word>, Laurent> pair_cache_;
    const WeightSpace& build_space(const WeightVector& nu) const;
};

/// The tensor module L(lambda2) (x) L(lambda1) over one quiver, with the
/// generator action through the coproduct
///   Delta(E_i) = E_i (x) K_{-i} + 1 (x) E_i,
///   Delta(F_i) = F_i (x) 1 + K_i (x) F_i,
///   Delta(K_mu) = K_mu (x) K_mu.
/// Basis of the total nu-space: pairs (b2, b1) of factor basis vectors over
/// all splittings nu2 + nu1 = nu, ordered by (nu2 lex, b2, b1).
class TensorModule : public WeightModule {
public:
    TensorModule(Quiver q, WeightVector lambda1, WeightVector lambda2);

    struct Slot {
        WeightVector nu2, nu1;
        int b2, b1;
    };
    struct Space {
        WeightVector nu;
        std::vector<Slot> slots;
        int dim() const { return (int)slots.size(); }
    };

    const Quiver& quiver() const override { return m1_.quiver(); }
    const Module& factor1() const { return m1_; }  // L(lambda1), right factor
    const Module& factor2() const { return m2_; }  // L(lambda2), left factor

    const Space& space(const WeightVector& nu) const;
    int dim(const WeightVector& nu) const override { return space(nu).dim(); }
    long weight_pairing(int i, const WeightVector& nu) const override;

    ModuleVector highest() const;
    /// Pure tensor x2 (x) x1 of factor vectors.
    ModuleVector pure(const ModuleVector& x2, const ModuleVector& x1) const;

    /// Bar-conjugated coproduct operators:
    ///   bar-Delta(F_i) = F_i (x) 1 + K_{-i} (x) F_i,
    ///   bar-Delta(E_i) = E_i (x) K_i + 1 (x) E_i.
    Mat<RatFun> f_bar_mat(int i, const WeightVector& from) const;
    Mat<RatFun> e_bar_mat(int i, const WeightVector& from) const;

protected:
    Mat<RatFun> f_mat_impl(int i, const WeightVector& from) const override;
    Mat<RatFun> e_mat_impl(int i, const WeightVector& from) const override;
    Mat<RatFun> coproduct_f(int i, const WeightVector& from, bool bar) const;
    Mat<RatFun> coproduct_e(int i, const WeightVector& from, bool bar) const;

private:
    Module m1_, m2_;
    mutable std::map<WeightVector, std::unique_ptr<Space>> spaces_;
    int slot_index(const Space& sp, const WeightVector& nu2, int b2, int b1) const;
};

/// One relation check: exact matrix identity on one weight space.
struct RelationCheck {
    std::string relation;
    WeightVector nu;
    bool pass;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const;
};

/// Checks relations (b)-(f) and integrability F_i^{<i,lambda>+1} v = 0 as
/// exact matrix identities on every weight space up to the height bound.
RelationReport verify_relations(const WeightModule& m, const WeightVector& lambda_total,
                                int height);

/// Enumerate all nu >= 0 over n vertices with total height exactly h / at most h.
std::vector<WeightVector> compositions_of_height(int n, int h);
std::vector<WeightVector> weights_up_to_height(int n, int h);

}  // namespace qcb
