#include "qcb/crystal.hpp"

#include <algorithm>

namespace qcb {

std::vector<StringComponent> i_string_decompose(const WeightModule& m, const ModuleVector& x,
                                                int i) {
    const WeightVector& nu = x.nu;
    int d = m.dim(nu);
    if ((int)x.coords.size() != d) throw std::invalid_argument("string decomposition: bad vector");
    std::vector<StringComponent> out;
    if (x.is_zero()) return out;
    int max_n = nu[i];
    // Columns: F_i^{(n)} applied to a kernel basis of E_i at nu - n*e_i.
    std::vector<Mat<RatFun>> kernels(max_n + 1);
    std::vector<Mat<RatFun>> lifted(max_n + 1);
    int total_cols = 0;
    for (int n = 0; n <= max_n; ++n) {
        WeightVector dn = nu;
        dn[i] -= n;
        kernels[n] = Mat<RatFun>(0, 0);
        lifted[n] = Mat<RatFun>(d, 0);
        if (m.dim(dn) == 0) continue;
        // Primitive vectors at dn span i-strings of length m+1; F^{(n)}
        // annihilates the whole block when n exceeds the string weight.
        if (m.weight_pairing(i, dn) < n) continue;
        kernels[n] = kernel_basis(m.e_mat(i, dn));
        lifted[n] = m.f_divided_mat(i, n, dn) * kernels[n];
        total_cols += kernels[n].cols();
    }
    Mat<RatFun> a(d, total_cols);
    int col = 0;
    for (int n = 0; n <= max_n; ++n)
        for (int c = 0; c < lifted[n].cols(); ++c, ++col)
            for (int r = 0; r < d; ++r) a(r, col) = lifted[n](r, c);
    auto sol = solve(a, x.coords);
    if (sol.status != SolveResult<RatFun>::Status::unique)
        throw std::logic_error("string decomposition is not unique");
    col = 0;
    for (int n = 0; n <= max_n; ++n) {
        int k = kernels[n].cols();
        if (k == 0) continue;
        WeightVector dn = nu;
        dn[i] -= n;
        std::vector<RatFun> coef(sol.solution.begin() + col, sol.solution.begin() + col + k);
        col += k;
        std::vector<RatFun> u = kernels[n].apply(coef);
        bool zero = std::all_of(u.begin(), u.end(), [](const RatFun& c) { return c.is_zero(); });
        if (!zero) out.push_back({n, ModuleVector{dn, std::move(u)}});
    }
    return out;
}

ModuleVector kashiwara_f(const WeightModule& m, int i, const ModuleVector& x) {
    WeightVector up = x.nu;
    up[i] += 1;
    ModuleVector y = m.zero_vector(up);
    for (const auto& comp : i_string_decompose(m, x, i)) {
        ModuleVector t = m.apply_f_divided(i, comp.n + 1, comp.u);
        for (size_t c = 0; c < y.coords.size(); ++c) y.coords[c] += t.coords[c];
    }
    return y;
}

ModuleVector kashiwara_e(const WeightModule& m, int i, const ModuleVector& x) {
    WeightVector dn = x.nu;
    dn[i] -= 1;
    ModuleVector y = m.zero_vector(dn);
    for (const auto& comp : i_string_decompose(m, x, i)) {
        if (comp.n == 0) continue;
        ModuleVector t = m.apply_f_divided(i, comp.n - 1, comp.u);
        for (size_t c = 0; c < y.coords.size(); ++c) y.coords[c] += t.coords[c];
    }
    return y;
}

StringOrd string_order_compare(const StringSeq& a, const StringSeq& b) {
    size_t k = std::min(a.size(), b.size());
    for (size_t t = 0; t < k; ++t) {
        if (a[t] == b[t]) continue;
        return a[t] < b[t] ? StringOrd::less : StringOrd::greater;
    }
    if (a.size() == b.size()) return StringOrd::equal;
    return StringOrd::incomparable;
}

std::string string_seq_str(const StringSeq& s, const Quiver& q) {
    if (s.empty()) return "()";
    std::string out;
    for (const auto& [i, mult] : s)
        out += "(" + q.names()[i] + "," + std::to_string(mult) + ")";
    return out;
}

Crystal::Crystal(const Module& m, int height_bound) : m_(&m), bound_(height_bound) {
    enumerate();
}

const std::vector<int>& Crystal::at_weight(const WeightVector& nu) const {
    static const std::vector<int> empty;
    auto it = by_weight_.find(nu);
    return it == by_weight_.end() ? empty : it->second;
}

std::vector<Rat> Crystal::class_of(const Lattice& lat, std::vector<RatFun> x) const {
    std::vector<Rat> cls(lat.rows.size(), Rat(0));
    for (size_t k = 0; k < lat.rows.size(); ++k) {
        const RatFun& p = x[lat.pivots[k]];
        if (p.is_zero()) continue;
        RatFun coef = p / lat.rows[k][lat.pivots[k]];
        if (coef.valuation() < 0)
            throw std::logic_error("crystal lattice: vector is not in the lattice");
        cls[k] = coef.value_at_zero();
        for (size_t c = 0; c < x.size(); ++c)
            if (!lat.rows[k][c].is_zero()) x[c] -= coef * lat.rows[k][c];
    }
    for (const auto& c : x)
        if (!c.is_zero()) throw std::logic_error("crystal lattice: residual after reduction");
    return cls;
}

int Crystal::identify(const ModuleVector& x) const {
    if (x.is_zero()) return -1;
    auto lit = lattice_.find(x.nu);
    if (lit == lattice_.end()) throw std::logic_error("identify: weight not enumerated");
    std::vector<Rat> cls = class_of(lit->second, x.coords);
    if (std::all_of(cls.begin(), cls.end(), [](const Rat& c) { return c == 0; })) return -1;
    const auto& idxs = at_weight(x.nu);
    for (size_t t = 0; t < idxs.size(); ++t)
        if (lit->second.classes[t] == cls) return idxs[t];
    throw std::logic_error("identify: class does not match any node");
}

void Crystal::enumerate() {
    const Quiver& q = m_->quiver();
    int n = q.n();
    Node top;
    top.nu = wv_zero(n);
    top.rep = m_->highest();
    top.eps.assign(n, 0);
    nodes_.push_back(top);
    by_weight_[top.nu] = {0};
    Lattice ltop;
    ltop.rows = {top.rep.coords};
    ltop.pivots = {0};
    ltop.classes = {{Rat(1)}};
    lattice_[top.nu] = std::move(ltop);

    for (int h = 1; h <= bound_; ++h) {
        for (const auto& nu : compositions_of_height(n, h)) {
            int d = m_->dim(nu);
            // Candidates: ftilde_i images of the nodes one step up.
            std::vector<std::vector<RatFun>> cand_vecs;
            for (int i = 0; i < n; ++i) {
                if (nu[i] == 0) continue;
                WeightVector up = nu;
                up[i] -= 1;
                for (int b : at_weight(up)) {
                    ModuleVector y = kashiwara_f(*m_, i, nodes_[b].rep);
                    if (!y.is_zero()) cand_vecs.push_back(std::move(y.coords));
                }
            }
            if (cand_vecs.empty()) {
                if (d != 0)
                    throw std::logic_error("crystal enumeration: no candidates at a nonzero space");
                continue;
            }
            // A0-basis of the lattice spanned by the candidates: Gaussian
            // elimination picking the minimal-valuation pivot per column.
            Lattice lat;
            std::vector<std::vector<RatFun>> work = cand_vecs;
            int dim_space = (int)work[0].size();
            std::vector<bool> used(work.size(), false);
            for (int col = 0; col < dim_space; ++col) {
                int best = -1, best_val = 0;
                for (size_t r = 0; r < work.size(); ++r) {
                    if (used[r] || work[r][col].is_zero()) continue;
                    int val = work[r][col].valuation();
                    if (best < 0 || val < best_val) {
                        best = (int)r;
                        best_val = val;
                    }
                }
                if (best < 0) continue;
                used[best] = true;
                for (size_t r = 0; r < work.size(); ++r) {
                    if (used[r] || work[r][col].is_zero()) continue;
                    RatFun f = work[r][col] / work[best][col];
                    for (int c = 0; c < dim_space; ++c)
                        if (!work[best][c].is_zero()) work[r][c] -= f * work[best][c];
                }
                lat.rows.push_back(work[best]);
                lat.pivots.push_back(col);
            }
            for (size_t r = 0; r < work.size(); ++r)
                if (!used[r])
                    for (const auto& c : work[r])
                        if (!c.is_zero())
                            throw std::logic_error("crystal lattice: reduction left a nonzero row");

            // Distinct nonzero classes, in candidate order, are the nodes.
            std::vector<std::vector<Rat>> classes;
            std::vector<int> first_cand;
            for (size_t t = 0; t < cand_vecs.size(); ++t) {
                std::vector<Rat> cls = class_of(lat, cand_vecs[t]);
                if (std::all_of(cls.begin(), cls.end(), [](const Rat& c) { return c == 0; }))
                    continue;  // null crystal edge whose vector did not vanish
                if (std::find(classes.begin(), classes.end(), cls) == classes.end()) {
                    classes.push_back(std::move(cls));
                    first_cand.push_back((int)t);
                }
            }
            if ((int)classes.size() != d)
                throw std::logic_error(
                    "crystal enumeration: node count differs from dimension at " + wv_str(nu));

            lattice_[nu] = lat;  // identify() needs the lattice while descending
            std::vector<int> idxs;
            for (size_t t = 0; t < classes.size(); ++t) {
                Node node;
                node.nu = nu;
                // The string: minimal vertex with eps > 0, descending at the
                // class level through already enumerated weights.
                ModuleVector x{nu, cand_vecs[first_cand[t]]};
                int imin = -1, eps = 0;
                for (int i = 0; i < n && imin < 0; ++i) {
                    if (nu[i] == 0) continue;
                    ModuleVector y = x;
                    int k = 0;
                    while (true) {
                        y = kashiwara_e(*m_, i, y);
                        bool nonzero_class = false;
                        if (!y.is_zero()) {
                            auto lit = lattice_.find(y.nu);
                            if (lit == lattice_.end())
                                throw std::logic_error("crystal: lower weight missing");
                            auto cls = class_of(lit->second, y.coords);
                            nonzero_class = !std::all_of(cls.begin(), cls.end(),
                                                         [](const Rat& c) { return c == 0; });
                        }
                        if (!nonzero_class) break;
                        ++k;
                    }
                    if (k > 0) {
                        imin = i;
                        eps = k;
                    }
                }
                if (imin < 0)
                    throw std::logic_error("crystal: no raising direction at nonzero weight");
                // Identify the node eps steps up the imin-string.
                ModuleVector y = x;
                for (int s = 0; s < eps; ++s) y = kashiwara_e(*m_, imin, y);
                int up_node = identify(y);
                if (up_node < 0) throw std::logic_error("crystal: string descent lost its class");
                node.string.emplace_back(imin, eps);
                node.string.insert(node.string.end(), nodes_[up_node].string.begin(),
                                   nodes_[up_node].string.end());
                // Canonical representative: replay the string as an ftilde-word.
                ModuleVector rep = m_->highest();
                for (auto it = node.string.rbegin(); it != node.string.rend(); ++it)
                    for (int s = 0; s < it->second; ++s) {
                        rep = kashiwara_f(*m_, it->first, rep);
                        if (rep.is_zero()) throw std::logic_error("crystal: string replay died");
                    }
                std::vector<Rat> replay_cls = class_of(lat, rep.coords);
                if (replay_cls != classes[t])
                    throw std::logic_error("crystal: string replay does not match the node class");
                node.rep = std::move(rep);
                nodes_.push_back(std::move(node));
                idxs.push_back((int)nodes_.size() - 1);
            }
            by_weight_[nu] = idxs;
            lattice_[nu].classes = std::move(classes);

            // eps data per node (class-level iteration of etilde).
            for (int idx : idxs) {
                Node& node = nodes_[idx];
                node.eps.assign(n, 0);
                for (int i = 0; i < n; ++i) {
                    if (nu[i] == 0) continue;
                    ModuleVector y = node.rep;
                    int k = 0;
                    while (true) {
                        y = kashiwara_e(*m_, i, y);
                        if (y.is_zero() || identify(y) < 0) break;
                        ++k;
                    }
                    node.eps[i] = k;
                }
            }
        }
    }
}

int Crystal::f_edge(int node, int i) const {
    const Node& b = nodes_[node];
    if (wv_height(b.nu) + 1 > bound_)
        throw std::logic_error("f_edge: target height exceeds the enumeration bound");
    ModuleVector y = kashiwara_f(*m_, i, b.rep);
    if (y.is_zero()) return -1;
    return identify(y);
}

int Crystal::e_edge(int node, int i) const {
    const Node& b = nodes_[node];
    if (b.nu[i] == 0) return -1;
    ModuleVector y = kashiwara_e(*m_, i, b.rep);
    if (y.is_zero()) return -1;
    return identify(y);
}

long crystal_phi(const Crystal& c, int node, int i) {
    const Crystal::Node& b = c.nodes()[node];
    return b.eps[i] + c.module().weight_pairing(i, b.nu);
}

std::optional<TensorCrystal::NodePair> TensorCrystal::f(int i, NodePair b) const {
    long phi_a = crystal_phi(*c2_, b.first, i);
    long eps_b = c1_->nodes()[b.second].eps[i];
    if (phi_a > eps_b) {
        int t = c2_->f_edge(b.first, i);
        if (t < 0) return std::nullopt;
        return NodePair{t, b.second};
    }
    int t = c1_->f_edge(b.second, i);
    if (t < 0) return std::nullopt;
    return NodePair{b.first, t};
}

std::optional<TensorCrystal::NodePair> TensorCrystal::e(int i, NodePair b) const {
    long phi_a = crystal_phi(*c2_, b.first, i);
    long eps_b = c1_->nodes()[b.second].eps[i];
    if (phi_a >= eps_b) {
        int t = c2_->e_edge(b.first, i);
        if (t < 0) return std::nullopt;
        return NodePair{t, b.second};
    }
    int t = c1_->e_edge(b.second, i);
    if (t < 0) return std::nullopt;
    return NodePair{b.first, t};
}

int crystal_restriction(const StringSeq& s, const Crystal& smaller) {
    int node = 0;  // the highest node is always index 0
    for (auto it = s.rbegin(); it != s.rend(); ++it)
        for (int k = 0; k < it->second; ++k) {
            node = smaller.f_edge(node, it->first);
            if (node < 0) return -1;
        }
    return node;
}

namespace {

// Pairs of factor nodes at a given total weight, with the matrix of their
// pure-tensor representatives over the tensor space basis.
struct PureBasis {
    std::vector<TensorCrystal::NodePair> pairs;
    Mat<RatFun> columns;
};

PureBasis pure_basis_at(const TensorModule& tm, const Crystal& c2, const Crystal& c1,
                        const WeightVector& nu) {
    PureBasis pb;
    int d = tm.dim(nu);
    std::vector<std::vector<RatFun>> cols;
    for (const auto& nu2 : weights_up_to_height(tm.quiver().n(), (int)wv_height(nu))) {
        if (!wv_leq(nu2, nu)) continue;
        WeightVector nu1 = wv_sub(nu, nu2);
        for (int a : c2.at_weight(nu2))
            for (int b : c1.at_weight(nu1)) {
                ModuleVector pure = tm.pure(c2.nodes()[a].rep, c1.nodes()[b].rep);
                pb.pairs.push_back({a, b});
                cols.push_back(pure.coords);
            }
    }
    if ((int)cols.size() != d)
        throw std::logic_error("pure tensor basis size differs from the tensor dimension");
    pb.columns = Mat<RatFun>(d, d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) pb.columns(r, c) = cols[c][r];
    return pb;
}

// Class of y modulo v(L2 (x) L1): coefficients over the pure basis must be
// regular at v = 0; returns their values.
std::vector<Rat> pure_class(const PureBasis& pb, const ModuleVector& y) {
    auto sol = solve(pb.columns, y.coords);
    if (sol.status != SolveResult<RatFun>::Status::unique)
        throw std::logic_error("pure tensor basis is singular");
    std::vector<Rat> cls(sol.solution.size(), Rat(0));
    for (size_t k = 0; k < sol.solution.size(); ++k) {
        if (sol.solution[k].is_zero()) continue;
        if (sol.solution[k].valuation() < 0)
            throw std::logic_error("module Kashiwara image leaves the tensor lattice");
        cls[k] = sol.solution[k].value_at_zero();
    }
    return cls;
}

}  // namespace

TensorAgreement check_tensor_crystal_agreement(const TensorModule& tm, const Crystal& c2,
                                               const Crystal& c1, int height_bound) {
    TensorAgreement rep;
    TensorCrystal tc(c2, c1);
    const Quiver& q = tm.quiver();
    std::map<WeightVector, PureBasis> bases;
    auto basis_at = [&](const WeightVector& nu) -> const PureBasis& {
        auto it = bases.find(nu);
        if (it == bases.end()) it = bases.emplace(nu, pure_basis_at(tm, c2, c1, nu)).first;
        return it->second;
    };
    for (const auto& nu : weights_up_to_height(q.n(), height_bound - 1)) {
        const PureBasis& pb = basis_at(nu);
        for (size_t t = 0; t < pb.pairs.size(); ++t) {
            auto pair = pb.pairs[t];
            ModuleVector x = tm.pure(c2.nodes()[pair.first].rep, c1.nodes()[pair.second].rep);
            ++rep.pairs_checked;
            for (int i = 0; i < q.n(); ++i) {
                auto describe = [&](const char* op) {
                    return std::string(op) + "_" + q.names()[i] + " at pair (" +
                           string_seq_str(c2.nodes()[pair.first].string, q) + ", " +
                           string_seq_str(c1.nodes()[pair.second].string, q) + ")";
                };
                // ftilde
                {
                    ModuleVector y = kashiwara_f(tm, i, x);
                    auto expect = tc.f(i, pair);
                    WeightVector up = nu;
                    up[i] += 1;
                    const PureBasis& pbt = basis_at(up);
                    std::vector<Rat> cls =
                        y.is_zero() ? std::vector<Rat>(pbt.pairs.size(), Rat(0)) : pure_class(pbt, y);
                    std::vector<Rat> want(pbt.pairs.size(), Rat(0));
                    if (expect) {
                        auto pos = std::find(pbt.pairs.begin(), pbt.pairs.end(), *expect);
                        if (pos == pbt.pairs.end())
                            throw std::logic_error("tensor rule result outside the pure basis");
                        want[pos - pbt.pairs.begin()] = Rat(1);
                    }
                    if (cls != want) rep.failures.push_back(describe("ftilde"));
                }
                // etilde
                if (nu[i] > 0) {
                    ModuleVector y = kashiwara_e(tm, i, x);
                    auto expect = tc.e(i, pair);
                    WeightVector dn = nu;
                    dn[i] -= 1;
                    const PureBasis& pbt = basis_at(dn);
                    std::vector<Rat> cls =
                        y.is_zero() ? std::vector<Rat>(pbt.pairs.size(), Rat(0)) : pure_class(pbt, y);
                    std::vector<Rat> want(pbt.pairs.size(), Rat(0));
                    if (expect) {
                        auto pos = std::find(pbt.pairs.begin(), pbt.pairs.end(), *expect);
                        if (pos == pbt.pairs.end())
                            throw std::logic_error("tensor rule result outside the pure basis");
                        want[pos - pbt.pairs.begin()] = Rat(1);
                    }
                    if (cls != want) rep.failures.push_back(describe("etilde"));
                } else {
                    auto expect = tc.e(i, pair);
                    if (expect) rep.failures.push_back(describe("etilde(null)"));
                }
            }
        }
    }
    return rep;
}

}  // namespace qcb
