#include "qcb/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace qcb {

WeightVector wv_zero(int n) { return WeightVector(n, 0); }

WeightVector wv_unit(int n, int i) {
    WeightVector w(n, 0);
    w[i] = 1;
    return w;
}

WeightVector wv_add(const WeightVector& a, const WeightVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("weight vector size mismatch");
    WeightVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

WeightVector wv_sub(const WeightVector& a, const WeightVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("weight vector size mismatch");
    WeightVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

long wv_height(const WeightVector& a) {
    long h = 0;
    for (int x : a) h += x;
    return h;
}

bool wv_nonneg(const WeightVector& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; });
}

bool wv_leq(const WeightVector& a, const WeightVector& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::string wv_str(const WeightVector& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

namespace {

// Returns a directed cycle (vertex list) if one exists.
std::optional<std::vector<int>> find_cycle(int n, const std::vector<std::pair<int, int>>& arrows) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [s, t] : arrows) adj[s].push_back(t);
    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<int> stack;
    std::optional<std::vector<int>> cycle;
    std::function<bool(int)> dfs = [&](int u) {
        state[u] = 1;
        stack.push_back(u);
        for (int w : adj[u]) {
            if (state[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                cycle = std::vector<int>(it, stack.end());
                return true;
            }
            if (state[w] == 0 && dfs(w)) return true;
        }
        stack.pop_back();
        state[u] = 2;
        return false;
    };
    for (int u = 0; u < n; ++u)
        if (state[u] == 0 && dfs(u)) return cycle;
    return std::nullopt;
}

}  // namespace

Quiver::Quiver(std::vector<std::string> names, std::vector<std::pair<int, int>> arrows)
    : names_(std::move(names)), arrows_(std::move(arrows)) {
    for (const auto& [s, t] : arrows_) {
        if (s < 0 || s >= n() || t < 0 || t >= n())
            throw std::invalid_argument("arrow endpoint out of range");
        if (s == t)
            throw std::invalid_argument("loop at vertex " + names_[s]);
    }
    if (auto cyc = find_cycle(n(), arrows_)) {
        std::string msg = "directed cycle:";
        for (int u : *cyc) msg += " " + names_[u];
        throw std::invalid_argument(msg);
    }
}

int Quiver::vertex(const std::string& name) const {
    for (int i = 0; i < n(); ++i)
        if (names_[i] == name) return i;
    return -1;
}

int Quiver::cartan(int i, int j) const {
    if (i == j) return 2;
    int edges = 0;
    for (const auto& [s, t] : arrows_)
        if ((s == i && t == j) || (s == j && t == i)) ++edges;
    return -edges;
}

long Quiver::cartan_pairing(int i, const WeightVector& nu) const {
    if ((int)nu.size() != n()) throw std::invalid_argument("cartan_pairing: size mismatch");
    long s = 0;
    for (int j = 0; j < n(); ++j) s += (long)cartan(i, j) * nu[j];
    return s;
}

long Quiver::euler_form(const WeightVector& a, const WeightVector& b) const {
    if ((int)a.size() != n() || (int)b.size() != n())
        throw std::invalid_argument("euler_form: size mismatch");
    long s = 0;
    for (int i = 0; i < n(); ++i) s += (long)a[i] * b[i];
    for (const auto& [src, tgt] : arrows_) s -= (long)a[src] * b[tgt];
    return s;
}

bool Quiver::is_source(int i) const {
    return std::none_of(arrows_.begin(), arrows_.end(),
                        [i](const auto& h) { return h.second == i; });
}

bool Quiver::is_sink(int i) const {
    return std::none_of(arrows_.begin(), arrows_.end(),
                        [i](const auto& h) { return h.first == i; });
}

Quiver Quiver::mutated(int i) const {
    if (!is_source(i) && !is_sink(i))
        throw std::invalid_argument("mutation at " + names_[i] + ": neither source nor sink");
    auto arr = arrows_;
    for (auto& h : arr)
        if (h.first == i || h.second == i) std::swap(h.first, h.second);
    return Quiver(names_, arr);
}

Quiver Quiver::reversed() const {
    auto arr = arrows_;
    for (auto& h : arr) std::swap(h.first, h.second);
    return Quiver(names_, arr);
}

bool operator==(const Quiver& a, const Quiver& b) {
    auto sa = a.arrows_, sb = b.arrows_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return a.names_ == b.names_ && sa == sb;
}

Quiver build_quiver(std::vector<std::string> names,
                    std::vector<std::pair<std::string, std::string>> edges) {
    std::vector<std::pair<int, int>> arrows;
    Quiver lookup(names, {});
    for (const auto& [s, t] : edges) {
        int si = lookup.vertex(s), ti = lookup.vertex(t);
        if (si < 0) throw std::invalid_argument("unknown vertex " + s);
        if (ti < 0) throw std::invalid_argument("unknown vertex " + t);
        arrows.emplace_back(si, ti);
    }
    return Quiver(std::move(names), std::move(arrows));
}

WeightVector framing_from_weight(const Quiver& q, const WeightVector& lambda) {
    if ((int)lambda.size() != q.n())
        throw std::invalid_argument("framing_from_weight: size mismatch");
    if (!wv_nonneg(lambda))
        throw std::invalid_argument("framing_from_weight: weight is not dominant");
    return lambda;
}

FramedQuiver::FramedQuiver(Quiver q, WeightVector w1)
    : base(std::move(q)), level(1), omega1(std::move(w1)) {
    if ((int)omega1.size() != base.n() || !wv_nonneg(omega1))
        throw std::invalid_argument("framing must be a nonnegative vector over the base vertices");
}

FramedQuiver::FramedQuiver(Quiver q, WeightVector w1, WeightVector w2)
    : base(std::move(q)), level(2), omega1(std::move(w1)), omega2(std::move(w2)) {
    if ((int)omega1.size() != base.n() || !wv_nonneg(omega1) ||
        (int)omega2.size() != base.n() || !wv_nonneg(omega2))
        throw std::invalid_argument("framing must be a nonnegative vector over the base vertices");
}

int FramedQuiver::total_framing(int i) const {
    return omega1[i] + (level == 2 ? omega2[i] : 0);
}

long FramedQuiver::euler_form(const WeightVector& a, const WeightVector& b) const {
    int n = base.n();
    if ((int)a.size() != n * (1 + level) || (int)b.size() != n * (1 + level))
        throw std::invalid_argument("framed euler_form: extended vector size mismatch");
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (long)a[i] * b[i];
    for (const auto& [src, tgt] : base.arrows()) s -= (long)a[src] * b[tgt];
    for (int i = 0; i < n; ++i) {
        s -= (long)a[i] * b[n + i];  // i -> i^1
        if (level == 2) s -= (long)a[i] * b[2 * n + i];  // i -> i^2
    }
    return s;
}

WeightVector FramedQuiver::extend(const WeightVector& nu) const {
    int n = base.n();
    if ((int)nu.size() != n) throw std::invalid_argument("extend: size mismatch");
    WeightVector ext(n * (1 + level), 0);
    for (int i = 0; i < n; ++i) ext[i] = nu[i];
    for (int i = 0; i < n; ++i) ext[n + i] = omega1[i];
    if (level == 2)
        for (int i = 0; i < n; ++i) ext[2 * n + i] = omega2[i];
    return ext;
}

int sign_twist(const FramedQuiver& fq, int i, int r, const WeightVector& nu, SignKind kind) {
    const Quiver& q = fq.base;
    if (i < 0 || i >= q.n()) throw std::invalid_argument("sign_twist: vertex out of range");
    if ((int)nu.size() != q.n() || !wv_nonneg(nu))
        throw std::invalid_argument("sign_twist: nu must be a nonnegative base vector");
    long out = 0, in = 0;  // sum of nu over arrow targets from i / sources into i
    for (const auto& [src, tgt] : q.arrows()) {
        if (src == i) out += nu[tgt];
        if (tgt == i) in += nu[src];
    }
    long exponent = 0;
    switch (kind) {
        case SignKind::psi_minus:
            exponent = (long)r * (nu[i] - out - fq.total_framing(i));
            break;
        case SignKind::psi_plus:
            exponent = (long)r * (nu[i] - in);
            break;
        case SignKind::nakajima_f:
            exponent = (long)r * (fq.total_framing(i) - nu[i] + out);
            break;
        case SignKind::nakajima_e:
            exponent = (long)r * (nu[i] - in);
            break;
    }
    return (exponent % 2 == 0) ? 1 : -1;
}

std::vector<int> source_mutation_sequence(const Quiver& q, int i) {
    std::vector<int> seq;
    Quiver cur = q;
    long prev_m = -1;
    for (;;) {
        // Longest path length ending at each vertex, over the current DAG.
        int n = cur.n();
        std::vector<std::vector<int>> adj(n);
        std::vector<int> indeg(n, 0);
        for (const auto& [s, t] : cur.arrows()) {
            adj[s].push_back(t);
            indeg[t]++;
        }
        std::vector<int> topo, q0;
        for (int u = 0; u < n; ++u)
            if (indeg[u] == 0) q0.push_back(u);
        while (!q0.empty()) {
            int u = q0.back();
            q0.pop_back();
            topo.push_back(u);
            for (int w : adj[u])
                if (--indeg[w] == 0) q0.push_back(w);
        }
        // Longest path from each vertex to i.
        std::vector<long> to_i(n, -1);
        to_i[i] = 0;
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            int u = *it;
            for (int w : adj[u])
                if (to_i[w] >= 0) to_i[u] = std::max(to_i[u], to_i[w] + 1);
        }
        long m = 0;
        for (int u = 0; u < n; ++u) m = std::max(m, to_i[u]);
        if (m == 0) break;  // i is a source
        if (prev_m >= 0 && m >= prev_m)
            throw std::logic_error("source_mutation_sequence: path length did not decrease");
        prev_m = m;
        // Mutate all maximal-length-path sources, in the fixed vertex order.
        for (int u = 0; u < n; ++u) {
            if (to_i[u] != m) continue;
            if (!cur.is_source(u))
                throw std::logic_error("source_mutation_sequence: maximal-path vertex is not a source");
            cur = cur.mutated(u);
            seq.push_back(u);
        }
    }
    return seq;
}

WeightVector contracting_cocharacter(const Quiver& q, const std::vector<int>& sequence) {
    WeightVector c = wv_zero(q.n());
    Quiver cur = q;
    for (size_t k = 0; k < sequence.size(); ++k) {
        int j = sequence[k];
        if (j < 0 || j >= q.n())
            throw std::invalid_argument("contracting_cocharacter: step " + std::to_string(k) +
                                        " names an unknown vertex");
        if (!cur.is_source(j))
            throw std::invalid_argument("contracting_cocharacter: step " + std::to_string(k) +
                                        " mutates at " + q.names()[j] + ", which is not a source");
        cur = cur.mutated(j);
        c[j] -= 1;
    }
    return c;
}

namespace {

QuiverSpec spec_from_parts(std::vector<std::string> names,
                           std::vector<std::pair<std::string, std::string>> edges,
                           const std::map<std::string, int>& f1,
                           const std::map<std::string, int>& f2) {
    QuiverSpec spec;
    spec.q = build_quiver(names, edges);
    auto to_vec = [&](const std::map<std::string, int>& f) {
        WeightVector w = wv_zero(spec.q.n());
        for (const auto& [name, val] : f) {
            int i = spec.q.vertex(name);
            if (i < 0) throw std::invalid_argument("framing names unknown vertex " + name);
            if (val < 0) throw std::invalid_argument("framing dimension must be nonnegative");
            w[i] = val;
        }
        return w;
    };
    if (!f1.empty()) spec.framing1 = to_vec(f1);
    if (!f2.empty()) spec.framing2 = to_vec(f2);
    return spec;
}

QuiverSpec parse_quiver_json(const std::string& content) {
    nlohmann::json j = nlohmann::json::parse(content);
    std::vector<std::string> names;
    for (const auto& v : j.at("vertices")) names.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    std::vector<std::pair<std::string, std::string>> edges;
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            auto name = [](const nlohmann::json& x) {
                return x.is_string() ? x.get<std::string>() : x.dump();
            };
            edges.emplace_back(name(e.at(0)), name(e.at(1)));
        }
    std::map<std::string, int> f1, f2;
    if (j.contains("framing1"))
        for (auto& [k, val] : j["framing1"].items()) f1[k] = val.get<int>();
    if (j.contains("framing2"))
        for (auto& [k, val] : j["framing2"].items()) f2[k] = val.get<int>();
    return spec_from_parts(names, edges, f1, f2);
}

QuiverSpec parse_quiver_text(const std::string& content) {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::string, int> f1, f2;
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "vertices") {
            std::string v;
            while (ls >> v) names.push_back(v);
        } else if (key == "edge") {
            std::string s, t;
            if (!(ls >> s >> t)) throw std::invalid_argument("quiver file: edge needs two vertices");
            edges.emplace_back(s, t);
        } else if (key == "framing1" || key == "framing2") {
            std::string v;
            int d;
            if (!(ls >> v >> d)) throw std::invalid_argument("quiver file: framing needs vertex and value");
            (key == "framing1" ? f1 : f2)[v] = d;
        } else {
            throw std::invalid_argument("quiver file: unknown directive '" + key + "'");
        }
    }
    if (names.empty()) throw std::invalid_argument("quiver file: no vertices");
    return spec_from_parts(names, edges, f1, f2);
}

}  // namespace

QuiverSpec parse_quiver(const std::string& content) {
    for (char c : content) {
        if (isspace((unsigned char)c)) continue;
        if (c == '{') return parse_quiver_json(content);
        break;
    }
    return parse_quiver_text(content);
}

QuiverSpec load_quiver_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read quiver file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_quiver(ss.str());
}

}  // namespace qcb
