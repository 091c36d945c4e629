#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chainlcd/ring.hpp"

namespace chainlcd {

/// Dense row-major matrix over a chain ring. Zero dimensions are allowed.
struct RingMatrix {
    const Ring* ring = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<elem> data;

    RingMatrix() = default;
    RingMatrix(const Ring& r, std::size_t m, std::size_t n) : ring(&r), rows(m), cols(n), data(m * n, 0) {}
    static RingMatrix identity(const Ring& r, std::size_t n);
    static RingMatrix from_rows(const Ring& r, const std::vector<std::vector<elem>>& rows, std::size_t cols);

    elem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    elem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    bool operator==(const RingMatrix& o) const {
        return ring == o.ring && rows == o.rows && cols == o.cols && data == o.data;
    }
};

/// Dense row-major matrix over a finite field.
struct FieldMatrix {
    const Field* field = nullptr;
    std::size_t rows = 0, cols = 0;
    std::vector<elem> data;

    FieldMatrix() = default;
    FieldMatrix(const Field& f, std::size_t m, std::size_t n) : field(&f), rows(m), cols(n), data(m * n, 0) {}
    static FieldMatrix identity(const Field& f, std::size_t n);

    elem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    elem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    bool operator==(const FieldMatrix& o) const {
        return field == o.field && rows == o.rows && cols == o.cols && data == o.data;
    }
};

/// X * Y.
RingMatrix mat_mul(const RingMatrix& x, const RingMatrix& y);
/// X * sigma^h(Y)^T.
RingMatrix mat_mul_sigma(const RingMatrix& x, const RingMatrix& y, int h);
RingMatrix mat_add(const RingMatrix& x, const RingMatrix& y);
RingMatrix transpose(const RingMatrix& x);

FieldMatrix residue_matrix(const RingMatrix& x);
FieldMatrix field_mul(const FieldMatrix& x, const FieldMatrix& y);
/// X * sigma^h(Y)^T over the field.
FieldMatrix field_mul_sigma(const FieldMatrix& x, const FieldMatrix& y, int h);

struct InvertResult {
    bool invertible = false;
    std::string reason;
    FieldMatrix inverse;
};

InvertResult field_invertible(const FieldMatrix& x);
std::size_t field_rank(const FieldMatrix& x);
/// Basis (as rows) of {v : X v^T = 0}.
FieldMatrix field_kernel(const FieldMatrix& x);

/// Inverse over the ring by residue inversion and gamma-adic Newton lifting.
/// Returns false when the residue matrix is singular.
bool ring_inverse(const RingMatrix& x, RingMatrix& out);

/// Invertible P with X P = D. Supports invertible X, and diagonal D whose
/// entries are gamma^d * unit with d < e. Throws std::domain_error("no invertible solution").
RingMatrix solve_right(const RingMatrix& x, const RingMatrix& d);

/// Valuations of the invariant factors (Smith form), one per min(rows, cols); zero factors report e.
std::vector<int> smith_valuations(const RingMatrix& x);

std::string render(const RingMatrix& x);
std::string render(const FieldMatrix& x);

}  // namespace chainlcd
