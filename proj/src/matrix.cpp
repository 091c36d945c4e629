#include "chainlcd/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace chainlcd {

RingMatrix RingMatrix::identity(const Ring& r, std::size_t n) {
    RingMatrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RingMatrix RingMatrix::from_rows(const Ring& r, const std::vector<std::vector<elem>>& rows, std::size_t cols) {
    RingMatrix m(r, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

FieldMatrix FieldMatrix::identity(const Field& f, std::size_t n) {
    FieldMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

namespace {

void same_ring(const RingMatrix& x, const RingMatrix& y) {
    if (x.ring != y.ring) throw std::invalid_argument("matrices over different rings");
}

}  // namespace

RingMatrix mat_mul(const RingMatrix& x, const RingMatrix& y) {
    same_ring(x, y);
    if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch in mat_mul");
    const Ring& r = *x.ring;
    RingMatrix out(r, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const elem a = x.at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) = r.add(out.at(i, j), r.mul(a, y.at(k, j)));
        }
    return out;
}

RingMatrix mat_mul_sigma(const RingMatrix& x, const RingMatrix& y, int h) {
    same_ring(x, y);
    if (x.cols != y.cols) throw std::invalid_argument("dimension mismatch in mat_mul_sigma");
    const Ring& r = *x.ring;
    RingMatrix out(r, x.rows, y.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < y.rows; ++j) {
            elem acc = 0;
            for (std::size_t k = 0; k < x.cols; ++k) acc = r.add(acc, r.mul(x.at(i, k), r.frobenius(y.at(j, k), h)));
            out.at(i, j) = acc;
        }
    return out;
}

RingMatrix mat_add(const RingMatrix& x, const RingMatrix& y) {
    same_ring(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("dimension mismatch in mat_add");
    RingMatrix out(x);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = x.ring->add(x.data[i], y.data[i]);
    return out;
}

RingMatrix transpose(const RingMatrix& x) {
    RingMatrix out(*x.ring, x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) out.at(j, i) = x.at(i, j);
    return out;
}

FieldMatrix residue_matrix(const RingMatrix& x) {
    FieldMatrix out(x.ring->field(), x.rows, x.cols);
    for (std::size_t i = 0; i < x.data.size(); ++i) out.data[i] = x.ring->residue(x.data[i]);
    return out;
}

FieldMatrix field_mul(const FieldMatrix& x, const FieldMatrix& y) {
    if (x.cols != y.rows || x.field != y.field) throw std::invalid_argument("dimension mismatch in field_mul");
    const Field& f = *x.field;
    FieldMatrix out(f, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const elem a = x.at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(a, y.at(k, j)));
        }
    return out;
}

FieldMatrix field_mul_sigma(const FieldMatrix& x, const FieldMatrix& y, int h) {
    if (x.cols != y.cols || x.field != y.field) throw std::invalid_argument("dimension mismatch in field_mul_sigma");
    const Field& f = *x.field;
    FieldMatrix out(f, x.rows, y.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < y.rows; ++j) {
            elem acc = 0;
            for (std::size_t k = 0; k < x.cols; ++k) acc = f.add(acc, f.mul(x.at(i, k), f.frobenius(y.at(j, k), h)));
            out.at(i, j) = acc;
        }
    return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(FieldMatrix& m) {
    const Field& f = *m.field;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols && row < m.rows; ++c) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, c) == 0) ++sel;
        if (sel == m.rows) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(sel, j));
        const elem inv = f.inv(m.at(row, c));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(row, j) = f.mul(inv, m.at(row, j));
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, c) == 0) continue;
            const elem factor = m.at(i, c);
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

InvertResult field_invertible(const FieldMatrix& x) {
    InvertResult res;
    if (x.rows != x.cols) {
        res.reason = "matrix is not square";
        return res;
    }
    const std::size_t n = x.rows;
    FieldMatrix aug(*x.field, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = x.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) {
        res.reason = "matrix is singular";
        return res;
    }
    res.invertible = true;
    res.inverse = FieldMatrix(*x.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) res.inverse.at(i, j) = aug.at(i, n + j);
    return res;
}

std::size_t field_rank(const FieldMatrix& x) {
    FieldMatrix m(x);
    return rref(m).size();
}

FieldMatrix field_kernel(const FieldMatrix& x) {
    FieldMatrix m(x);
    auto piv = rref(m);
    const Field& f = *x.field;
    std::vector<bool> is_pivot(x.cols, false);
    for (auto c : piv) is_pivot[c] = true;
    FieldMatrix out(f, x.cols - piv.size(), x.cols);
    std::size_t r = 0;
    for (std::size_t free = 0; free < x.cols; ++free) {
        if (is_pivot[free]) continue;
        out.at(r, free) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) out.at(r, piv[i]) = f.neg(m.at(i, free));
        ++r;
    }
    return out;
}

bool ring_inverse(const RingMatrix& x, RingMatrix& out) {
    if (x.rows != x.cols) return false;
    const Ring& r = *x.ring;
    const std::size_t n = x.rows;
    auto inv = field_invertible(residue_matrix(x));
    if (!inv.invertible) return false;
    // Residue codes are valid ring codes of the lifted constants.
    RingMatrix m(r, n, n);
    m.data.assign(inv.inverse.data.begin(), inv.inverse.data.end());
    const RingMatrix id = RingMatrix::identity(r, n);
    for (int step = 0; step <= r.e() + 1; ++step) {
        RingMatrix xm = mat_mul(x, m);
        if (xm == id) {
            out = m;
            return true;
        }
        RingMatrix corr(r, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                corr.at(i, j) = r.sub(i == j ? r.add(1, 1) : 0, xm.at(i, j));
        m = mat_mul(m, corr);
    }
    throw std::logic_error("gamma-adic lifting did not converge");
}

RingMatrix solve_right(const RingMatrix& x, const RingMatrix& d) {
    same_ring(x, d);
    if (x.rows != x.cols || d.rows != d.cols || x.rows != d.rows)
        throw std::invalid_argument("solve_right expects square matrices of equal size");
    const Ring& r = *x.ring;
    const std::size_t n = x.rows;
    RingMatrix xi;
    if (ring_inverse(x, xi)) {
        RingMatrix p = mat_mul(xi, d);
        RingMatrix check;
        if (!ring_inverse(p, check)) throw std::domain_error("no invertible solution");
        return p;
    }
    // D = diag(gamma^{d_i} u_i): X P = D  <=>  P^{-1} = W with X = D W.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && d.at(i, j) != 0) throw std::domain_error("no invertible solution");
    RingMatrix w(r, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = r.valuation(d.at(i, i));
        if (v >= r.e()) throw std::domain_error("no invertible solution");
        const elem unit_inv = r.inv(r.div_gamma(d.at(i, i), v));
        for (std::size_t j = 0; j < n; ++j) {
            if (r.valuation(x.at(i, j)) < v) throw std::domain_error("no invertible solution");
            w.at(i, j) = r.mul(unit_inv, r.div_gamma(x.at(i, j), v));
        }
    }
    RingMatrix p;
    if (!ring_inverse(w, p)) throw std::domain_error("no invertible solution");
    if (!(mat_mul(x, p) == d)) throw std::logic_error("solve_right verification failed");
    return p;
}

std::vector<int> smith_valuations(const RingMatrix& x) {
    const Ring& r = *x.ring;
    RingMatrix m(x);
    const std::size_t k = std::min(m.rows, m.cols);
    std::vector<int> out;
    for (std::size_t t = 0; t < k; ++t) {
        int best = r.e();
        std::size_t bi = t, bj = t;
        for (std::size_t i = t; i < m.rows; ++i)
            for (std::size_t j = t; j < m.cols; ++j) {
                const int v = r.valuation(m.at(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        out.push_back(best);
        if (best == r.e()) continue;
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(t, j), m.at(bi, j));
        for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, t), m.at(i, bj));
        const elem uinv = r.inv(r.div_gamma(m.at(t, t), best));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(t, j) = r.mul(uinv, m.at(t, j));
        for (std::size_t i = t + 1; i < m.rows; ++i) {
            const elem f = r.div_gamma(m.at(i, t), best);
            if (f == 0) continue;
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = r.sub(m.at(i, j), r.mul(f, m.at(t, j)));
        }
        for (std::size_t j = t + 1; j < m.cols; ++j) {
            const elem f = r.div_gamma(m.at(t, j), best);
            if (f == 0) continue;
            for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = r.sub(m.at(i, j), r.mul(f, m.at(i, t)));
        }
    }
    return out;
}

std::string render(const RingMatrix& x) {
    std::ostringstream os;
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) os << (j ? " " : "") << x.ring->render(x.at(i, j));
        os << '\n';
    }
    return os.str();
}

std::string render(const FieldMatrix& x) {
    std::ostringstream os;
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) os << (j ? " " : "") << x.field->render(x.at(i, j));
        os << '\n';
    }
    return os.str();
}

}  // namespace chainlcd
