#ifndef VBETTI_GF2_HPP
#define VBETTI_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "vbetti/exec.hpp"

namespace vbetti::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

using vbetti::Exec;

/// Bit-packed vector over the two-element field.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t size);
    static Vector from_bits(std::initializer_list<int> bits);
    static Vector unit(std::size_t size, std::size_t index);

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const noexcept {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::size_t i, bool value = true) noexcept {
        const Word mask = Word(1) << (i % kWordBits);
        if (value) words_[i / kWordBits] |= mask;
        else words_[i / kWordBits] &= ~mask;
    }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word(1) << (i % kWordBits); }

    Vector& operator^=(const Vector& other) noexcept;
    friend Vector operator^(Vector a, const Vector& b) noexcept { return a ^= b; }

    bool is_zero() const noexcept;
    std::size_t popcount() const noexcept;
    /// Lowest set index, or nullopt for the zero vector.
    std::optional<std::size_t> leading() const noexcept;
    /// Parity of the bitwise AND (the dot product).
    bool dot(const Vector& other) const noexcept;

    /// Copy of the bits [begin, end) as a vector of length end - begin.
    Vector slice(std::size_t begin, std::size_t end) const;
    /// This vector placed at `offset` inside a zero vector of length `size`.
    Vector embed(std::size_t size, std::size_t offset) const;

    std::span<const Word> words() const noexcept { return words_; }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

/// Dense row-major matrix over GF(2); each row is a packed Vector.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::size_t cols, std::vector<Vector> rows);
    static Matrix from_dense(const std::vector<std::vector<int>>& entries, std::size_t cols = 0);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool value = true) noexcept { rows_[r].set(c, value); }
    void flip(std::size_t r, std::size_t c) noexcept { rows_[r].flip(c); }
    const Vector& row(std::size_t r) const noexcept { return rows_[r]; }
    const std::vector<Vector>& row_vectors() const noexcept { return rows_; }

    Matrix transpose() const;
    Vector apply(const Vector& v) const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    bool is_zero() const noexcept;
    /// Sub-block of rows [r0, r1) and columns [c0, c1).
    Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<Vector> rows_;
};

/// Subspace of GF(2)^n stored as a reduced row-echelon basis: every basis
/// vector's pivot is its lowest set bit, pivots strictly increase, and each
/// pivot column is clear in every other basis vector. Equal subspaces have
/// identical bases.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(std::size_t ambient);
    static Subspace full(std::size_t ambient);
    static Subspace span(std::size_t ambient, std::vector<Vector> vectors, Exec exec = Exec::parallel);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vector>& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    /// Remainder of `v` after clearing every pivot position.
    Vector reduce(Vector v) const;
    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    /// Intersection with the coordinate subspace {x : x_j = 0 for j < first}.
    Subspace restrict_to_suffix(std::size_t first) const;
    /// The subspace of vectors orthogonal to every vector here.
    Subspace annihilator() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<Vector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Reduce `rows` in place to reduced row-echelon form and drop zero rows.
/// Returns the pivot column of each surviving row.
std::vector<std::size_t> echelonize(std::vector<Vector>& rows, std::size_t cols, Exec exec = Exec::parallel);

std::size_t rank(const Matrix& m, Exec exec = Exec::parallel);
/// {v : m v = 0}; dim = cols - rank.
Subspace kernel_basis(const Matrix& m, Exec exec = Exec::parallel);
/// Column space of m, a subspace of GF(2)^rows.
Subspace image_basis(const Matrix& m, Exec exec = Exec::parallel);
/// dim(outer) - dim(inner). Throws ContainmentViolation unless inner is inside outer.
std::size_t quotient_dim(const Subspace& outer, const Subspace& inner);
/// {v : m v in target}.
Subspace preimage(const Matrix& m, const Subspace& target);
/// Image of a subspace under m.
Subspace image_of(const Matrix& m, const Subspace& source);

} // namespace vbetti::gf2

#endif
