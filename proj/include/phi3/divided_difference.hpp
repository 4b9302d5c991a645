#pragma once

#include <span>
#include <vector>

#include "phi3/jet.hpp"
#include "phi3/numeric.hpp"

namespace phi3 {

// Divided differences f[x_1..x_N] = sum_k f(x_k) prod_{l!=k} (x_k-x_l)^{-1},
// extended to repeated and nearly-coincident nodes.
//
// Nodes are grouped into clusters (relative gap below rel_eps). Within a
// cluster the divided difference over a span of s nodes is expanded around the
// cluster mean m:
//     f[x_i..x_j] = sum_{k>=s-1} f_k(m) h_{k-s+1}(d_i,..,d_j),
// where f_k are Taylor coefficients at m, d = x - m, and h_j is the complete
// homogeneous symmetric polynomial. Across clusters the usual recursion
// (f[...] - f[...])/(x_j - x_i) applies with a well-separated denominator.
// The result is a linear form in the Taylor coefficients of f at the cluster
// centers, returned as explicit weights.
struct DDWeights {
    struct Cluster {
        cplx center;
        std::vector<cplx> w;  // w[k] multiplies Taylor coefficient k at center
    };
    std::vector<Cluster> clusters;

    int order(std::size_t c) const { return int(clusters[c].w.size()) - 1; }
};

namespace detail {

// prefix expansion of prod_i 1/(1 - d_i z) up to degree M
inline std::vector<cplx> homogeneous_sums(std::span<const cplx> deltas, int M) {
    std::vector<cplx> H(std::size_t(M) + 1, cplx(0));
    H[0] = cplx(1);
    for (cplx d : deltas)
        for (int m = 1; m <= M; ++m) H[m] += d * H[m - 1];
    return H;
}

}  // namespace detail

inline DDWeights dd_weights(std::span<const cplx> nodes, double rel_eps = 1e-5,
                            int extra_order = 8) {
    const int n = int(nodes.size());
    if (n == 0) throw input_error("dd_weights: empty node list");

    // union-find clustering on |x_i - x_j| <= rel_eps * max(|x_i|,|x_j|)
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(nodes[i] - nodes[j]) <=
                rel_eps * std::max(std::abs(nodes[i]), std::abs(nodes[j])))
                parent[find(i)] = find(j);

    // clusters in order of first occurrence
    std::vector<int> cluster_of(n, -1), roots;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        int c = -1;
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (roots[k] == r) c = int(k);
        if (c < 0) {
            c = int(roots.size());
            roots.push_back(r);
        }
        cluster_of[i] = c;
    }
    const int nc = int(roots.size());

    std::vector<std::vector<int>> members(nc);
    for (int i = 0; i < n; ++i) members[cluster_of[i]].push_back(i);

    std::vector<cplx> center(nc);
    std::vector<std::vector<cplx>> delta(nc);
    std::vector<int> korder(nc);
    for (int c = 0; c < nc; ++c) {
        cplx m(0);
        for (int i : members[c]) m += nodes[i];
        m /= double(members[c].size());
        center[c] = m;
        bool exact = true;
        for (int i : members[c]) {
            delta[c].push_back(nodes[i] - m);
            if (nodes[i] != m) exact = false;
        }
        korder[c] = int(members[c].size()) - 1 + (exact ? 0 : extra_order);
    }

    // reorder nodes cluster-contiguously
    struct Entry {
        cplx x;
        int cluster;
        cplx d;
    };
    std::vector<Entry> ord;
    ord.reserve(n);
    for (int c = 0; c < nc; ++c)
        for (int i : members[c]) ord.push_back({nodes[i], c, nodes[i] - center[c]});

    std::vector<int> block(nc, 0);
    int dim = 0;
    for (int c = 0; c < nc; ++c) {
        block[c] = dim;
        dim += korder[c] + 1;
    }

    // Newton table by levels over linear forms
    using Form = std::vector<cplx>;
    std::vector<Form> cur(n, Form(dim, cplx(0)));
    for (int i = 0; i < n; ++i) cur[i][block[ord[i].cluster] + 0] = cplx(1);
    // level-0 forms: f(x_i) = sum_k f_k d_i^k
    for (int i = 0; i < n; ++i) {
        const int c = ord[i].cluster;
        cplx p(1);
        for (int k = 1; k <= korder[c]; ++k) {
            p *= ord[i].d;
            cur[i][block[c] + k] = p;
        }
    }

    for (int len = 1; len < n; ++len) {
        std::vector<Form> nxt(n - len, Form(dim, cplx(0)));
        for (int i = 0; i + len < n; ++i) {
            const int j = i + len;
            if (ord[i].cluster == ord[j].cluster) {
                const int c = ord[i].cluster;
                std::vector<cplx> d(std::size_t(len) + 1);
                for (int t = 0; t <= len; ++t) d[t] = ord[i + t].d;
                auto H = detail::homogeneous_sums(d, korder[c] - len);
                for (int k = len; k <= korder[c]; ++k)
                    nxt[i][block[c] + k] = H[std::size_t(k - len)];
            } else {
                const cplx denom = ord[j].x - ord[i].x;
                for (int q = 0; q < dim; ++q)
                    nxt[i][q] = (cur[i + 1][q] - cur[i][q]) / denom;
            }
        }
        cur = std::move(nxt);
    }

    DDWeights result;
    for (int c = 0; c < nc; ++c) {
        DDWeights::Cluster cl;
        cl.center = center[c];
        cl.w.assign(cur[0].begin() + block[c], cur[0].begin() + block[c] + korder[c] + 1);
        while (cl.w.size() > 1 && cl.w.back() == cplx(0)) cl.w.pop_back();
        result.clusters.push_back(std::move(cl));
    }
    return result;
}

// Contract dd weights with Taylor coefficients supplied by jet_at(center, order).
template <class JetAt>
cplx apply_dd(const DDWeights& dd, JetAt&& jet_at) {
    cplx acc(0);
    for (const auto& cl : dd.clusters) {
        const int K = int(cl.w.size()) - 1;
        Jet<cplx> j = jet_at(cl.center, K);
        for (int k = 0; k <= K; ++k) acc += cl.w[std::size_t(k)] * j[k];
    }
    return acc;
}

template <class JetAt>
cplx divided_difference(std::span<const cplx> nodes, JetAt&& jet_at, double rel_eps = 1e-5,
                        int extra_order = 8) {
    return apply_dd(dd_weights(nodes, rel_eps, extra_order), std::forward<JetAt>(jet_at));
}

}  // namespace phi3
