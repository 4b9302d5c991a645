#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "phi3/numeric.hpp"

namespace phi3 {

// Multivariate truncated Taylor series over complex coefficients with a fixed
// per-variable order cap. Dense storage in mixed-radix layout; sizes stay tiny
// (coincidence limits need a handful of derivative orders per slot).
//
// Nonlinear functions (recip/sqrt/pow/log) use the nilpotent split
// u = u0 (1 + e): e has no constant term, so e^j vanishes beyond the total
// truncation degree and the binomial/log series are finite sums.
class MSeries {
public:
    explicit MSeries(std::vector<int> orders) : orders_(std::move(orders)) {
        std::size_t n = 1;
        for (int o : orders_) {
            if (o < 0) throw input_error("MSeries: negative order");
            n *= std::size_t(o + 1);
        }
        a_.assign(n, cplx(0));
    }

    static MSeries constant(std::vector<int> orders, cplx v) {
        MSeries s(std::move(orders));
        s.a_[0] = v;
        return s;
    }
    // v + (variable #i)
    static MSeries variable(std::vector<int> orders, int i, cplx v) {
        MSeries s(std::move(orders));
        s.a_[0] = v;
        if (i < 0 || i >= int(s.orders_.size())) throw input_error("MSeries::variable: bad index");
        if (s.orders_[i] >= 1) s.a_[s.stride(i)] = cplx(1);
        return s;
    }

    int nvars() const { return int(orders_.size()); }
    const std::vector<int>& orders() const { return orders_; }
    std::size_t size() const { return a_.size(); }

    cplx& at(const std::vector<int>& idx) { return a_[flat(idx)]; }
    const cplx& at(const std::vector<int>& idx) const { return a_[flat(idx)]; }
    cplx value() const { return a_[0]; }

    friend MSeries operator+(const MSeries& x, const MSeries& y) {
        x.check_shape(y);
        MSeries r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
        return r;
    }
    friend MSeries operator-(const MSeries& x, const MSeries& y) {
        x.check_shape(y);
        MSeries r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
        return r;
    }
    friend MSeries operator-(const MSeries& x) {
        MSeries r = x;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    friend MSeries operator*(const MSeries& x, cplx s) {
        MSeries r = x;
        for (auto& v : r.a_) v *= s;
        return r;
    }
    friend MSeries operator*(cplx s, const MSeries& x) { return x * s; }
    friend MSeries operator+(const MSeries& x, cplx s) { MSeries r = x; r.a_[0] += s; return r; }
    friend MSeries operator-(const MSeries& x, cplx s) { MSeries r = x; r.a_[0] -= s; return r; }

    friend MSeries operator*(const MSeries& x, const MSeries& y) {
        x.check_shape(y);
        MSeries r(x.orders_);
        const int nv = x.nvars();
        std::vector<int> ix(nv, 0), iy(nv, 0), iz(nv, 0);
        // convolution with clipping; iterate over x entries and y entries
        for (std::size_t px = 0; px < x.a_.size(); ++px) {
            if (x.a_[px] == cplx(0)) continue;
            x.unflat(px, ix);
            for (std::size_t py = 0; py < y.a_.size(); ++py) {
                if (y.a_[py] == cplx(0)) continue;
                y.unflat(py, iy);
                bool ok = true;
                for (int v = 0; v < nv; ++v) {
                    iz[v] = ix[v] + iy[v];
                    if (iz[v] > x.orders_[v]) { ok = false; break; }
                }
                if (ok) r.a_[r.flat(iz)] += x.a_[px] * y.a_[py];
            }
        }
        return r;
    }

    int total_order() const { return std::accumulate(orders_.begin(), orders_.end(), 0); }

    // u^alpha, principal branch at the constant term.
    MSeries pow(double alpha) const {
        cplx u0 = a_[0];
        require_off_cut(u0, "MSeries pow");
        MSeries e = *this * (cplx(1) / u0);
        e.a_[0] = cplx(0);
        MSeries acc = constant(orders_, cplx(1));
        MSeries term = constant(orders_, cplx(1));
        const int S = total_order();
        double binom = 1.0;
        for (int j = 1; j <= S; ++j) {
            binom *= (alpha - double(j - 1)) / double(j);
            term = term * e;
            acc = acc + term * cplx(binom);
        }
        return acc * detail::scalar_pow(u0, alpha);
    }

    MSeries recip() const { return pow(-1.0); }
    MSeries sqrt() const { return pow(0.5); }

    MSeries log() const {
        cplx u0 = a_[0];
        require_off_cut(u0, "MSeries log");
        MSeries e = *this * (cplx(1) / u0);
        e.a_[0] = cplx(0);
        MSeries acc = constant(orders_, std::log(u0));
        MSeries term = constant(orders_, cplx(1));
        const int S = total_order();
        for (int j = 1; j <= S; ++j) {
            term = term * e;
            acc = acc + term * cplx((j % 2 ? 1.0 : -1.0) / double(j));
        }
        return acc;
    }

    // Sub-series multiplying (variable #i)^degree, with variable i removed.
    MSeries coeff_of(int i, int degree) const {
        if (i < 0 || i >= nvars() || degree < 0 || degree > orders_[i])
            throw input_error("MSeries::coeff_of: bad index");
        std::vector<int> rest;
        for (int v = 0; v < nvars(); ++v)
            if (v != i) rest.push_back(orders_[v]);
        MSeries r(rest);
        std::vector<int> idx(nvars(), 0), jdx(nvars() - 1, 0);
        for (std::size_t p = 0; p < a_.size(); ++p) {
            unflat(p, idx);
            if (idx[i] != degree) continue;
            int q = 0;
            for (int v = 0; v < nvars(); ++v)
                if (v != i) jdx[q++] = idx[v];
            r.a_[r.flat(jdx)] = a_[p];
        }
        return r;
    }

private:
    void check_shape(const MSeries& o) const {
        if (orders_ != o.orders_) throw input_error("MSeries: shape mismatch");
    }
    std::size_t stride(int i) const {
        std::size_t s = 1;
        for (int v = 0; v < i; ++v) s *= std::size_t(orders_[v] + 1);
        return s;
    }
    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t p = 0, s = 1;
        for (int v = 0; v < nvars(); ++v) {
            p += std::size_t(idx[v]) * s;
            s *= std::size_t(orders_[v] + 1);
        }
        return p;
    }
    void unflat(std::size_t p, std::vector<int>& idx) const {
        for (int v = 0; v < nvars(); ++v) {
            idx[v] = int(p % std::size_t(orders_[v] + 1));
            p /= std::size_t(orders_[v] + 1);
        }
    }

    std::vector<int> orders_;
    std::vector<cplx> a_;
};

}  // namespace phi3
