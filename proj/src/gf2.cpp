#include "vbetti/gf2.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include <omp.h>

#include "vbetti/error.hpp"

namespace vbetti::gf2 {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Below this many rows the OpenMP fork/join costs more than the XORs.
constexpr std::size_t kParallelRows = 128;

} // namespace

Vector::Vector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

Vector Vector::from_bits(std::initializer_list<int> bits) {
    Vector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
}

Vector Vector::unit(std::size_t size, std::size_t index) {
    Vector v(size);
    v.set(index);
    return v;
}

Vector& Vector::operator^=(const Vector& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool Vector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t Vector::popcount() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::optional<std::size_t> Vector::leading() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] != 0) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return std::nullopt;
}

bool Vector::dot(const Vector& other) const noexcept {
    Word acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return (std::popcount(acc) & 1) != 0;
}

Vector Vector::slice(std::size_t begin, std::size_t end) const {
    Vector out(end - begin);
    for (std::size_t i = begin; i < end; ++i)
        if (get(i)) out.set(i - begin);
    return out;
}

Vector Vector::embed(std::size_t size, std::size_t offset) const {
    Vector out(size);
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i)) out.set(offset + i);
    return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Vector(cols)) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<Vector> rows) {
    Matrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<int>>& entries, std::size_t cols) {
    if (!entries.empty()) cols = entries.front().size();
    Matrix m(entries.size(), cols);
    for (std::size_t r = 0; r < entries.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, (entries[r][c] & 1) != 0);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r);
    return t;
}

Vector Matrix::apply(const Vector& v) const {
    Vector out(rows());
    for (std::size_t r = 0; r < rows(); ++r)
        if (rows_[r].dot(v)) out.set(r);
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    Matrix out(rows(), rhs.cols());
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(r, k)) out.rows_[r] ^= rhs.rows_[k];
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    Matrix out = *this;
    for (std::size_t r = 0; r < rows(); ++r) out.rows_[r] ^= rhs.rows_[r];
    return out;
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(rows_.begin(), rows_.end(), [](const Vector& v) { return v.is_zero(); });
}

Matrix Matrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    Matrix out(r1 - r0, c1 - c0);
    for (std::size_t r = r0; r < r1; ++r) out.rows_[r - r0] = rows_[r].slice(c0, c1);
    return out;
}

std::vector<std::size_t> echelonize(std::vector<Vector>& rows, std::size_t cols, Exec exec) {
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    const std::size_t n = rows.size();
    const bool par = exec == Exec::parallel && n >= kParallelRows;
    for (std::size_t c = 0; c < cols && pivot_row < n; ++c) {
        std::size_t found = pivot_row;
        while (found < n && !rows[found].get(c)) ++found;
        if (found == n) continue;
        std::swap(rows[found], rows[pivot_row]);
        const Vector& pivot = rows[pivot_row];
        if (par) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n); ++r) {
                const auto ur = static_cast<std::size_t>(r);
                if (ur != pivot_row && rows[ur].get(c)) rows[ur] ^= pivot;
            }
        } else {
            for (std::size_t r = 0; r < n; ++r)
                if (r != pivot_row && rows[r].get(c)) rows[r] ^= pivot;
        }
        pivots.push_back(c);
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return pivots;
}

std::size_t rank(const Matrix& m, Exec exec) {
    std::vector<Vector> rows = m.row_vectors();
    return echelonize(rows, m.cols(), exec).size();
}

Subspace kernel_basis(const Matrix& m, Exec exec) {
    const std::size_t cols = m.cols();
    std::vector<Vector> rows = m.row_vectors();
    const auto pivots = echelonize(rows, cols, exec);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<Vector> kernel;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols);
        v.set(f);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            if (rows[k].get(f)) v.set(pivots[k]);
        kernel.push_back(std::move(v));
    }
    return Subspace::span(cols, std::move(kernel), exec);
}

Subspace image_basis(const Matrix& m, Exec exec) {
    return Subspace::span(m.rows(), m.transpose().row_vectors(), exec);
}

std::size_t quotient_dim(const Subspace& outer, const Subspace& inner) {
    if (outer.ambient_dim() != inner.ambient_dim() || !outer.contains(inner)) {
        throw Error(ErrorCode::ContainmentViolation, "inner subspace is not contained in outer subspace");
    }
    return outer.dim() - inner.dim();
}

Subspace preimage(const Matrix& m, const Subspace& target) {
    // v maps into target iff m v is orthogonal to target's annihilator.
    const Subspace ann = target.annihilator();
    const Matrix a = Matrix::from_rows(m.rows(), ann.basis());
    return kernel_basis(a * m);
}

Subspace image_of(const Matrix& m, const Subspace& source) {
    std::vector<Vector> images;
    images.reserve(source.dim());
    for (const Vector& v : source.basis()) images.push_back(m.apply(v));
    return Subspace::span(m.rows(), std::move(images));
}

Subspace Subspace::zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    for (std::size_t i = 0; i < ambient; ++i) {
        s.basis_.push_back(Vector::unit(ambient, i));
        s.pivots_.push_back(i);
    }
    return s;
}

Subspace Subspace::span(std::size_t ambient, std::vector<Vector> vectors, Exec exec) {
    Subspace s;
    s.ambient_ = ambient;
    s.pivots_ = echelonize(vectors, ambient, exec);
    s.basis_ = std::move(vectors);
    return s;
}

Vector Subspace::reduce(Vector v) const {
    for (std::size_t k = 0; k < basis_.size(); ++k)
        if (v.get(pivots_[k])) v ^= basis_[k];
    return v;
}

bool Subspace::contains(const Vector& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Vector& v) { return contains(v); });
}

Subspace Subspace::sum(const Subspace& other) const {
    std::vector<Vector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, std::move(all));
}

Subspace Subspace::intersect(const Subspace& other) const {
    // Zassenhaus: rows [u | u] and [w | 0]; rows whose left half vanishes
    // carry a basis of the intersection in their right half.
    const std::size_t n = ambient_;
    std::vector<Vector> rows;
    for (const Vector& u : basis_) rows.push_back(u.embed(2 * n, 0) ^ u.embed(2 * n, n));
    for (const Vector& w : other.basis_) rows.push_back(w.embed(2 * n, 0));
    echelonize(rows, 2 * n);
    std::vector<Vector> common;
    for (const Vector& r : rows) {
        if (*r.leading() >= n) common.push_back(r.slice(n, 2 * n));
    }
    return span(n, std::move(common));
}

Subspace Subspace::restrict_to_suffix(std::size_t first) const {
    // A combination of RREF rows has a set bit at every pivot it uses, so the
    // vectors vanishing below `first` are exactly the span of rows pivoting there.
    Subspace s;
    s.ambient_ = ambient_;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (pivots_[k] >= first) {
            s.basis_.push_back(basis_[k]);
            s.pivots_.push_back(pivots_[k]);
        }
    }
    return s;
}

Subspace Subspace::annihilator() const {
    return kernel_basis(Matrix::from_rows(ambient_, basis_));
}

} // namespace vbetti::gf2
