#include "qcb/bases.hpp"

#include <algorithm>

namespace qcb {

ModuleVector bar_vector(const ModuleVector& x) {
    ModuleVector y{x.nu, x.coords};
    for (auto& c : y.coords) c = c.bar();
    return y;
}

std::vector<int> nodes_in_string_order(const Crystal& c, const WeightVector& nu) {
    std::vector<int> order = c.at_weight(nu);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return c.nodes()[a].string < c.nodes()[b].string;
    });
    return order;
}

ModuleVector monomial_vector(const Module& m, const Crystal::Node& b) {
    ModuleVector x = m.highest();
    for (auto it = b.string.rbegin(); it != b.string.rend(); ++it)
        x = m.apply_f_divided(it->first, it->second, x);
    return x;
}

namespace {

// Coordinates over the node representatives of the weight.
struct NodeFrame {
    std::vector<int> order;   // string-ascending node indices
    Mat<RatFun> reps;         // columns: node reps over the chosen word basis
    Mat<RatFun> reps_inv;
};

NodeFrame node_frame(const Crystal& c, const WeightVector& nu) {
    NodeFrame fr;
    fr.order = nodes_in_string_order(c, nu);
    int d = (int)fr.order.size();
    fr.reps = Mat<RatFun>(d, d);
    for (int k = 0; k < d; ++k) {
        const auto& rep = c.nodes()[fr.order[k]].rep;
        for (int r = 0; r < d; ++r) fr.reps(r, k) = rep.coords[r];
    }
    if (d > 0) {
        auto inv = inverse(fr.reps);
        if (!inv) throw std::logic_error("node representatives are dependent");
        fr.reps_inv = std::move(*inv);
    }
    return fr;
}

std::vector<RatFun> node_coords(const NodeFrame& fr, const ModuleVector& x) {
    return fr.reps_inv.apply(x.coords);
}

// Bar-symmetric removal of the nonpositive part of the Laurent expansion:
// q with f - q in v*A0 and bar(q) = q (coefficients may be rational).
RatFun sym_ext(const RatFun& f) {
    if (f.is_zero()) return RatFun();
    int lo = f.valuation();
    if (lo >= 1) return RatFun();
    auto series = f.series_at_zero(lo, 0);
    Int den(1);
    for (const auto& a : series)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den().get_mpz_t());
    Laurent num;
    for (int e = lo; e <= 0; ++e) {
        const Rat& a = series[e - lo];
        if (a == 0) continue;
        Int coef = Int(a.get_num()) * (den / Int(a.get_den()));
        num += Laurent::monomial(coef, e);
        if (e < 0) num += Laurent::monomial(coef, -e);
    }
    return RatFun(num, Laurent(den));
}

}  // namespace

MonomialBasis monomial_basis(const Module& m, const Crystal& c, const WeightVector& nu) {
    MonomialBasis mb;
    mb.nu = nu;
    NodeFrame fr = node_frame(c, nu);
    mb.node_order = fr.order;
    int d = (int)fr.order.size();
    if ((int)c.at_weight(nu).size() != m.dim(nu))
        throw std::logic_error("monomial basis: node count differs from dimension");
    Mat<RatFun> cols(d, d);
    for (int k = 0; k < d; ++k) {
        ModuleVector v = monomial_vector(m, c.nodes()[fr.order[k]]);
        auto gamma = node_coords(fr, v);
        // The node class of a monomial is +-1 on its own node, corrections at
        // strictly string-larger nodes only.
        Rat diag;
        for (int j = 0; j < d; ++j) {
            if (gamma[j].is_zero()) continue;
            if (gamma[j].valuation() < 0)
                throw std::logic_error("monomial vector leaves the crystal lattice");
            Rat val = gamma[j].value_at_zero();
            if (j == k) {
                diag = val;
            } else if (val != 0 && j < k) {
                throw std::logic_error("monomial correction below the diagonal in the string order");
            }
        }
        int sign;
        if (diag == 1)
            sign = 1;
        else if (diag == -1)
            sign = -1;
        else
            throw std::logic_error("monomial diagonal class is not a unit sign");
        if (sign < 0)
            for (auto& cc : v.coords) cc = -cc;
        mb.signs.push_back(sign);
        for (int r = 0; r < d; ++r) cols(r, k) = v.coords[r];
        mb.vectors.push_back(std::move(v));
    }
    mb.independent = rank(cols) == d;
    if (!mb.independent)
        throw std::logic_error("monomial vectors are dependent at " + wv_str(nu));
    return mb;
}

CanonicalBasis canonical_basis(const Module& m, const Crystal& c, const WeightVector& nu) {
    MonomialBasis mb = monomial_basis(m, c, nu);
    NodeFrame fr = node_frame(c, nu);
    CanonicalBasis cb;
    cb.nu = nu;
    cb.node_order = mb.node_order;
    int d = (int)mb.node_order.size();
    cb.vectors.resize(d);
    int bound = 2 * d + (int)wv_height(nu);

    for (int k = d - 1; k >= 0; --k) {
        ModuleVector x = mb.vectors[k];
        bool done = false;
        for (int iter = 0; iter <= bound && !done; ++iter) {
            auto gamma = node_coords(fr, x);
            // Obstructions: gamma_j in v*A0 for j != k, gamma_k in 1 + v*A0.
            int jbad = -1;
            bool diag_bad = false;
            {
                RatFun dk = gamma[k] - RatFun(1);
                if (!dk.is_zero() && dk.valuation() < 1) diag_bad = true;
            }
            for (int j = d - 1; j > k; --j) {
                if (gamma[j].is_zero() || gamma[j].valuation() >= 1) continue;
                jbad = j;
                break;
            }
            for (int j = 0; j < k; ++j)
                if (!gamma[j].is_zero() && gamma[j].valuation() < 1)
                    throw std::logic_error("canonical basis: obstruction below the diagonal at " +
                                           wv_str(nu));
            if (jbad < 0 && !diag_bad) {
                cb.vectors[k] = x;
                done = true;
                break;
            }
            if (jbad >= 0) {
                RatFun qq = sym_ext(gamma[jbad]);
                const ModuleVector& g = cb.vectors[jbad];
                for (size_t t = 0; t < x.coords.size(); ++t) x.coords[t] -= qq * g.coords[t];
            } else {
                // Rescale by the bar-invariant unit fixing the diagonal.
                RatFun o = sym_ext(gamma[k] - RatFun(1));
                RatFun scale = RatFun(1) + o;
                if (scale.is_zero() || scale.valuation() != 0)
                    throw std::logic_error("canonical basis: diagonal class degenerated at " +
                                           wv_str(nu));
                for (auto& t : x.coords) t = t / scale;
            }
        }
        if (!done)
            throw std::logic_error("canonical basis did not converge at lambda=" +
                                   wv_str(m.lambda()) + ", nu=" + wv_str(nu) + ", node " +
                                   string_seq_str(c.nodes()[mb.node_order[k]].string, m.quiver()));
        // The result is bar-invariant by construction; verify exactly.
        ModuleVector bx = bar_vector(cb.vectors[k]);
        if (!(bx.coords == cb.vectors[k].coords))
            throw std::logic_error("canonical vector is not bar-invariant");
    }
    return cb;
}

TransitionMatrix transition_matrix(const Crystal& c, const std::vector<int>& node_order,
                                   const std::vector<ModuleVector>& a,
                                   const std::vector<ModuleVector>& b) {
    TransitionMatrix tr;
    int d = (int)node_order.size();
    for (int k = 0; k < d; ++k) tr.row_basis.push_back(c.nodes()[node_order[k]].string);
    tr.col_basis = tr.row_basis;
    if (a.size() != b.size() || (int)a.size() != d)
        throw std::invalid_argument("transition_matrix: basis size mismatch");
    if (d == 0) {
        tr.unitriangular = true;
        tr.entries_laurent = true;
        return tr;
    }
    int dim = (int)a[0].coords.size();
    Mat<RatFun> bm(dim, d), am(dim, d);
    for (int k = 0; k < d; ++k)
        for (int r = 0; r < dim; ++r) {
            bm(r, k) = b[k].coords[r];
            am(r, k) = a[k].coords[r];
        }
    auto x = field_solve_multi(bm, am);
    if (!x) throw std::invalid_argument("transition_matrix: target basis is singular");
    tr.entries = std::move(*x);
    tr.unitriangular = true;
    tr.entries_laurent = true;
    for (int r = 0; r < d; ++r)
        for (int col = 0; col < d; ++col) {
            const RatFun& e = tr.entries(r, col);
            if (!e.as_laurent()) tr.entries_laurent = false;
            if (r == col) {
                if (!e.is_one()) tr.unitriangular = false;
            } else if (!e.is_zero()) {
                // Nonzero off-diagonal entries must sit at string-larger rows.
                if (string_order_compare(c.nodes()[node_order[r]].string,
                                         c.nodes()[node_order[col]].string) != StringOrd::greater)
                    tr.unitriangular = false;
            }
        }
    return tr;
}

ModuleVector twisted_action(const WeightModule& m, const FramedQuiver& fq, int i, int r, bool is_f,
                            const ModuleVector& x) {
    int sign = sign_twist(fq, i, r, x.nu, is_f ? SignKind::psi_minus : SignKind::psi_plus);
    ModuleVector y = is_f ? m.apply_f_divided(i, r, x) : m.apply_e_divided(i, r, x);
    if (sign < 0)
        for (auto& c : y.coords) c = -c;
    return y;
}

namespace {

// Twisted operator matrices over an integral basis, specialized at v = -1.
struct MinusOneOps {
    const WeightModule& m;
    const FramedQuiver& fq;
    const IntegralBasisFn& basis;
    bool twist;
    std::map<WeightVector, Mat<RatFun>> basis_cache;
    std::map<std::pair<int, WeightVector>, Mat<Rat>> f_cache, e_cache;

    const Mat<RatFun>& basis_at(const WeightVector& nu) {
        auto it = basis_cache.find(nu);
        if (it == basis_cache.end()) it = basis_cache.emplace(nu, basis(nu)).first;
        return it->second;
    }

    Mat<Rat> conjugated(const Mat<RatFun>& op, const WeightVector& from, const WeightVector& to,
                        int sign) {
        const Mat<RatFun>& bs = basis_at(from);
        const Mat<RatFun>& bt = basis_at(to);
        Mat<Rat> out(bt.cols(), bs.cols());
        if (bt.cols() == 0 || bs.cols() == 0) return out;
        auto x = field_solve_multi(bt, op * bs);
        if (!x) throw std::logic_error("integral basis is singular");
        for (int r = 0; r < out.rows(); ++r)
            for (int c = 0; c < out.cols(); ++c) {
                auto l = (*x)(r, c).as_laurent();
                if (!l)
                    throw std::logic_error("operator matrix over the integral basis has denominators");
                Rat val(specialize(*l, -1));
                out(r, c) = sign < 0 ? Rat(-val) : val;
            }
        return out;
    }

    const Mat<Rat>& f1(int i, const WeightVector& from) {
        auto key = std::make_pair(i, from);
        auto it = f_cache.find(key);
        if (it != f_cache.end()) return it->second;
        WeightVector to = from;
        to[i] += 1;
        int sign = twist ? sign_twist(fq, i, 1, from, SignKind::psi_minus) : 1;
        return f_cache.emplace(key, conjugated(m.f_mat(i, from), from, to, sign)).first->second;
    }

    const Mat<Rat>& e1(int i, const WeightVector& from) {
        auto key = std::make_pair(i, from);
        auto it = e_cache.find(key);
        if (it != e_cache.end()) return it->second;
        WeightVector to = from;
        to[i] -= 1;
        int sign = twist ? sign_twist(fq, i, 1, from, SignKind::psi_plus) : 1;
        if (to[i] < 0) {
            Mat<Rat> z(0, basis_at(from).cols());
            return e_cache.emplace(key, std::move(z)).first->second;
        }
        return e_cache.emplace(key, conjugated(m.e_mat(i, from), from, to, sign)).first->second;
    }
};

Mat<Rat> rat_identity_scaled(int n, const Rat& s) {
    Mat<Rat> m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

}  // namespace

RelationReport verify_twisted_relations(const WeightModule& m, const FramedQuiver& fq,
                                        const IntegralBasisFn& basis,
                                        const WeightVector& lambda_total, int height, bool twist) {
    RelationReport report;
    const Quiver& q = m.quiver();
    int n = q.n();
    MinusOneOps ops{m, fq, basis, twist, {}, {}, {}};
    auto add = [&](const std::string& rel, const WeightVector& nu, bool pass) {
        report.checks.push_back({rel, nu, pass});
    };

    for (const auto& nu : weights_up_to_height(n, height)) {
        int d = m.dim(nu);
        if (d == 0) continue;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                // [e_i, f_j] = delta_ij h_i with h_i the integer weight.
                WeightVector nu_j = nu;
                nu_j[j] += 1;
                Mat<Rat> ef = ops.e1(i, nu_j) * ops.f1(j, nu);
                Mat<Rat> fe(ef.rows(), ef.cols());
                if (nu[i] > 0) {
                    WeightVector nu_i = nu;
                    nu_i[i] -= 1;
                    fe = ops.f1(j, nu_i) * ops.e1(i, nu);
                }
                Mat<Rat> comm = ef - fe;
                bool pass;
                if (i == j) {
                    pass = comm == rat_identity_scaled(d, Rat(m.weight_pairing(i, nu)));
                } else {
                    pass = comm.is_zero();
                }
                add("[e_" + q.names()[i] + ", f_" + q.names()[j] + "]", nu, pass);

                if (i == j) continue;
                int N = 1 - q.cartan(i, j);
                // Cleared-form Serre: sum_p (-1)^p C(N,p) f^p f_j f^{N-p} = 0.
                {
                    WeightVector target = nu;
                    target[i] += N;
                    target[j] += 1;
                    if (m.dim(target) == 0) {
                        add("Serre f, i=" + q.names()[i] + ", j=" + q.names()[j], nu, true);
                    } else {
                        Mat<Rat> acc(m.dim(target), d);
                        for (int p = 0; p <= N; ++p) {
                            WeightVector a = nu;
                            Mat<Rat> term = rat_identity_scaled(d, Rat(1));
                            for (int s = 0; s < N - p; ++s) {
                                term = ops.f1(i, a) * term;
                                a[i] += 1;
                            }
                            term = ops.f1(j, a) * term;
                            a[j] += 1;
                            for (int s = 0; s < p; ++s) {
                                term = ops.f1(i, a) * term;
                                a[i] += 1;
                            }
                            Int binom;
                            mpz_bin_uiui(binom.get_mpz_t(), N, p);
                            term = term.scaled(p % 2 == 0 ? Rat(binom) : Rat(-binom));
                            acc = acc + term;
                        }
                        add("Serre f, i=" + q.names()[i] + ", j=" + q.names()[j], nu,
                            acc.is_zero());
                    }
                }
                // Serre for e, when the target exists.
                if (nu[i] >= N && nu[j] >= 1) {
                    WeightVector target = nu;
                    target[i] -= N;
                    target[j] -= 1;
                    if (!wv_nonneg(target)) continue;
                    Mat<Rat> acc(m.dim(target), d);
                    for (int p = 0; p <= N; ++p) {
                        WeightVector a = nu;
                        Mat<Rat> term = rat_identity_scaled(d, Rat(1));
                        for (int s = 0; s < N - p; ++s) {
                            term = ops.e1(i, a) * term;
                            a[i] -= 1;
                        }
                        term = ops.e1(j, a) * term;
                        a[j] -= 1;
                        for (int s = 0; s < p; ++s) {
                            term = ops.e1(i, a) * term;
                            a[i] -= 1;
                        }
                        Int binom;
                        mpz_bin_uiui(binom.get_mpz_t(), N, p);
                        term = term.scaled(p % 2 == 0 ? Rat(binom) : Rat(-binom));
                        acc = acc + term;
                    }
                    add("Serre e, i=" + q.names()[i] + ", j=" + q.names()[j], nu, acc.is_zero());
                }
            }
        }
    }
    // Integrability of the twisted action.
    for (int i = 0; i < n; ++i) {
        int power = (int)lambda_total[i] + 1;
        WeightVector nu = wv_zero(n);
        Mat<Rat> x = rat_identity_scaled(1, Rat(1));
        for (int s = 0; s < power; ++s) {
            x = ops.f1(i, nu) * x;
            nu[i] += 1;
        }
        add("integrability f_" + q.names()[i] + "^{<i,lambda>+1} v = 0", wv_zero(n), x.is_zero());
    }
    return report;
}

IntegralBasisFn monomial_integral_basis(const Module& m, const Crystal& c) {
    return [&m, &c](const WeightVector& nu) {
        MonomialBasis mb = monomial_basis(m, c, nu);
        int dim = m.dim(nu);
        Mat<RatFun> cols(dim, (int)mb.vectors.size());
        for (int k = 0; k < (int)mb.vectors.size(); ++k)
            for (int r = 0; r < dim; ++r) cols(r, k) = mb.vectors[k].coords[r];
        return cols;
    };
}

IntegralBasisFn tensor_integral_basis(const TensorModule& tm, const Crystal& c2,
                                      const Crystal& c1) {
    return [&tm, &c2, &c1](const WeightVector& nu) {
        int dim = tm.dim(nu);
        std::vector<std::vector<RatFun>> cols;
        for (const auto& nu2 : weights_up_to_height(tm.quiver().n(), (int)wv_height(nu))) {
            if (!wv_leq(nu2, nu)) continue;
            WeightVector nu1 = wv_sub(nu, nu2);
            if (c2.at_weight(nu2).empty() && tm.factor2().dim(nu2) > 0)
                throw std::logic_error("tensor integral basis: factor crystal bound too small");
            for (int a : c2.at_weight(nu2)) {
                ModuleVector ma = monomial_vector(tm.factor2(), c2.nodes()[a]);
                for (int b : c1.at_weight(nu1)) {
                    ModuleVector mbv = monomial_vector(tm.factor1(), c1.nodes()[b]);
                    cols.push_back(tm.pure(ma, mbv).coords);
                }
            }
        }
        if ((int)cols.size() != dim)
            throw std::logic_error("tensor integral basis: size mismatch at " + wv_str(nu));
        Mat<RatFun> out(dim, dim);
        for (int c = 0; c < dim; ++c)
            for (int r = 0; r < dim; ++r) out(r, c) = cols[c][r];
        return out;
    };
}

ModuleVector tensor_monomial_shadow(const TensorModule& tm, const Word& word1, const Word& word2) {
    ModuleVector x2 = tm.factor2().word_vector(word2);
    ModuleVector x = tm.pure(x2, tm.factor1().highest());
    for (auto it = word1.rbegin(); it != word1.rend(); ++it) x = tm.apply_f(*it, x);
    return x;
}

QuasiRResult quasi_r_block(const TensorModule& tm, const WeightVector& nu, int height_bound) {
    const Quiver& q = tm.quiver();
    int n = q.n();
    // Unknown graded pieces: maps between group pairs with a positive transfer
    // of the first-factor lowering, over total weights within the bound.
    struct Group {
        WeightVector nu2;
        int size;
        int slot0;
    };
    auto groups_of = [&](const WeightVector& mu) {
        std::vector<Group> gs;
        const auto& sp = tm.space(mu);
        for (int s = 0; s < sp.dim(); ++s) {
            if (s == 0 || !(sp.slots[s].nu2 == sp.slots[s - 1].nu2)) gs.push_back({sp.slots[s].nu2, 0, s});
            gs.back().size += 1;
        }
        return gs;
    };
    struct Piece {
        WeightVector mu, from2, to2;
        int rows, cols;
        int offset;
    };
    std::vector<Piece> pieces;
    int nvars = 0;
    auto weights = weights_up_to_height(n, height_bound);
    for (const auto& mu : weights) {
        auto gs = groups_of(mu);
        for (const auto& gf : gs)
            for (const auto& gt : gs) {
                WeightVector transfer = wv_sub(gf.nu2, gt.nu2);
                if (!wv_nonneg(transfer) || wv_height(transfer) == 0) continue;
                pieces.push_back({mu, gf.nu2, gt.nu2, gt.size, gf.size, nvars});
                nvars += gt.size * gf.size;
            }
    }
    auto piece_lookup = [&](const WeightVector& mu, const WeightVector& from2,
                            const WeightVector& to2) -> const Piece* {
        for (const auto& p : pieces)
            if (p.mu == mu && p.from2 == from2 && p.to2 == to2) return &p;
        return nullptr;
    };
    // Theta entry as (constant, variable index); variable -1 means constant.
    auto theta_entry = [&](const WeightVector& mu, int t, int s) -> std::pair<RatFun, int> {
        const auto& sp = tm.space(mu);
        const auto& st = sp.slots[t];
        const auto& ss = sp.slots[s];
        if (st.nu2 == ss.nu2) return {t == s ? RatFun(1) : RatFun(), -1};
        WeightVector transfer = wv_sub(ss.nu2, st.nu2);
        if (!wv_nonneg(transfer)) return {RatFun(), -1};
        const Piece* p = piece_lookup(mu, ss.nu2, st.nu2);
        if (!p) return {RatFun(), -1};
        auto gs = groups_of(mu);
        int row = -1, col = -1;
        for (const auto& g : gs) {
            if (g.nu2 == st.nu2) row = t - g.slot0;
            if (g.nu2 == ss.nu2) col = s - g.slot0;
        }
        return {RatFun(), p->offset + row * p->cols + col};
    };

    // Equations: Theta Delta(u) - barDelta(u) Theta = 0 entrywise.
    std::vector<std::vector<RatFun>> rows;
    std::vector<RatFun> rhs;
    auto add_equations = [&](const WeightVector& mu, const Mat<RatFun>& du, const Mat<RatFun>& dbu,
                             const WeightVector& mu_to) {
        int dim_from = tm.dim(mu), dim_to = tm.dim(mu_to);
        if (dim_from == 0 || dim_to == 0) return;
        for (int t = 0; t < dim_to; ++t)
            for (int s = 0; s < dim_from; ++s) {
                std::vector<RatFun> row(nvars);
                RatFun cst;
                bool nontrivial = false;
                for (int mint = 0; mint < dim_to; ++mint) {
                    if (du(mint, s).is_zero()) continue;
                    auto [c, var] = theta_entry(mu_to, t, mint);
                    if (var >= 0) {
                        row[var] += du(mint, s);
                        nontrivial = true;
                    } else if (!c.is_zero()) {
                        cst += c * du(mint, s);
                    }
                }
                for (int mins = 0; mins < dim_from; ++mins) {
                    if (dbu(t, mins).is_zero()) continue;
                    auto [c, var] = theta_entry(mu, mins, s);
                    if (var >= 0) {
                        row[var] -= dbu(t, mins);
                        nontrivial = true;
                    } else if (!c.is_zero()) {
                        cst -= dbu(t, mins) * c;
                    }
                }
                if (!nontrivial && cst.is_zero()) continue;
                rows.push_back(std::move(row));
                rhs.push_back(-cst);
            }
    };
    for (const auto& mu : weights) {
        for (int i = 0; i < n; ++i) {
            if (wv_height(mu) + 1 <= height_bound) {
                WeightVector up = mu;
                up[i] += 1;
                add_equations(mu, tm.f_mat(i, mu), tm.f_bar_mat(i, mu), up);
            }
            if (mu[i] > 0) {
                WeightVector dn = mu;
                dn[i] -= 1;
                add_equations(mu, tm.e_mat(i, mu), tm.e_bar_mat(i, mu), dn);
            }
        }
    }
    QuasiRResult res;
    std::vector<RatFun> sol(nvars);
    if (nvars > 0) {
        Mat<RatFun> a((int)rows.size(), nvars);
        for (int r = 0; r < (int)rows.size(); ++r)
            for (int c = 0; c < nvars; ++c) a(r, c) = rows[r][c];
        auto s = solve(a, rhs);
        if (s.status == SolveResult<RatFun>::Status::inconsistent) {
            res.status = QuasiRResult::Status::inconsistent;
            return res;
        }
        if (s.status == SolveResult<RatFun>::Status::underdetermined) {
            res.status = QuasiRResult::Status::non_unique;
            return res;
        }
        sol = std::move(s.solution);
    }
    res.status = QuasiRResult::Status::ok;
    int d = tm.dim(nu);
    res.theta = Mat<RatFun>(d, d);
    for (int t = 0; t < d; ++t)
        for (int s = 0; s < d; ++s) {
            auto [c, var] = theta_entry(nu, t, s);
            res.theta(t, s) = var >= 0 ? sol[var] : c;
        }
    return res;
}

}  // namespace qcb
