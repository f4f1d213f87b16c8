#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcb {

/// Integer vector indexed by a vertex set (dimension vectors, framings,
/// dominant weights).  Dominant weights are handled in fundamental
/// coordinates throughout: lambda[i] = <i, lambda>.
using WeightVector = std::vector<int>;

WeightVector wv_zero(int n);
WeightVector wv_unit(int n, int i);
WeightVector wv_add(const WeightVector& a, const WeightVector& b);
WeightVector wv_sub(const WeightVector& a, const WeightVector& b);
long wv_height(const WeightVector& a);
bool wv_nonneg(const WeightVector& a);
bool wv_leq(const WeightVector& a, const WeightVector& b);  // componentwise
std::string wv_str(const WeightVector& a);

/// Finite quiver without loops, with an acyclic orientation.  The vertex
/// order in `names` is the fixed total order used for string data.
class Quiver {
public:
    Quiver() = default;
    /// Validates: no loops, orientation acyclic.  Throws std::invalid_argument
    /// naming the offending vertex or listing a directed cycle.
    Quiver(std::vector<std::string> names, std::vector<std::pair<int, int>> arrows);

    int n() const { return (int)names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
    int vertex(const std::string& name) const;  // -1 when absent

    /// Symmetric Cartan matrix entry: a_ii = 2, a_ij = -(edges between i, j).
    int cartan(int i, int j) const;
    /// <i, nu> under the Cartan form, nu in root coordinates.
    long cartan_pairing(int i, const WeightVector& nu) const;

    /// Euler form <a, b>_Q = sum_i a_i b_i - sum_{h in Omega} a_{h'} b_{h''}.
    long euler_form(const WeightVector& a, const WeightVector& b) const;

    bool is_source(int i) const;
    bool is_sink(int i) const;
    /// Reverse all arrows incident to i; i must be a source or a sink.
    Quiver mutated(int i) const;
    /// All arrows reversed.
    Quiver reversed() const;

    friend bool operator==(const Quiver& a, const Quiver& b);

private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> arrows_;
};

Quiver build_quiver(std::vector<std::string> names,
                    std::vector<std::pair<std::string, std::string>> edges);

/// omega over the framed copy I^1, from a dominant weight in fundamental
/// coordinates: omega_{i^1} = <i, lambda>.  Rejects non-dominant input.
WeightVector framing_from_weight(const Quiver& q, const WeightVector& lambda);

/// Quiver with one or two framings.  Framed arrows run i -> i^1 (and i -> i^2).
struct FramedQuiver {
    Quiver base;
    int level = 1;  // 1 or 2
    WeightVector omega1;  // indexed by base vertices
    WeightVector omega2;  // empty unless level == 2

    FramedQuiver(Quiver q, WeightVector w1);
    FramedQuiver(Quiver q, WeightVector w1, WeightVector w2);

    int total_framing(int i) const;
    /// Euler form of the framed quiver on extended vectors laid out as
    /// [base | I^1 | I^2] of length n*(1+level).
    long euler_form(const WeightVector& a, const WeightVector& b) const;
    /// Extended vector nu + omega for the base dimension vector nu.
    WeightVector extend(const WeightVector& nu) const;
};

enum class SignKind { psi_minus, psi_plus, nakajima_f, nakajima_e };

/// The four sign twists attached to a generator action at vertex i with
/// multiplicity r on degree nu:
///   psi_minus  = (-1)^{<r i, nu + omega>_{Q^(N)}}
///   psi_plus   = (-1)^{<r i, nu + omega>_{opposite Q^(N)}}
///   nakajima_f = (-1)^{r <i, omega - C_Omega nu>}
///   nakajima_e = (-1)^{r <i, C_opp(Omega) nu>}
/// with C_Omega = Id - A_Omega and the coordinate pairing.
int sign_twist(const FramedQuiver& fq, int i, int r, const WeightVector& nu, SignKind kind);

/// Mutation sequence (each step at a then-current source) after which i is a
/// source: recursion on the maximal length of paths with target i, mutating
/// all sources of maximal-length paths per pass, in vertex order.
std::vector<int> source_mutation_sequence(const Quiver& q, int i);

/// Cocharacter weights accumulated along a source mutation sequence
/// (c_j decreases by one per mutation at j).  For the conjugation weight
/// c_target - c_source on each arrow of the original orientation: 1 on every
/// arrow the sequence reverses and 0 on every arrow it keeps.
WeightVector contracting_cocharacter(const Quiver& q, const std::vector<int>& sequence);

/// Quiver description parsed from text or JSON (see README for the format).
struct QuiverSpec {
    Quiver q;
    std::optional<WeightVector> framing1, framing2;
};

QuiverSpec parse_quiver(const std::string& content);
QuiverSpec load_quiver_file(const std::string& path);

}  // namespace qcb
