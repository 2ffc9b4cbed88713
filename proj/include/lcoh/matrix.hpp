#ifndef LCOH_MATRIX_HPP
#define LCOH_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lcoh
{

// Dense row-major matrix. Zero-row and zero-column shapes are valid.
template <typename T>
class Matrix
{
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : m_rows(rows), m_cols(cols), m_data(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T &fill)
        : m_rows(rows), m_cols(cols), m_data(rows * cols, fill)
    {
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows)
    {
        m_rows = rows.size();
        m_cols = m_rows ? rows.begin()->size() : 0;
        m_data.reserve(m_rows * m_cols);
        for (const auto &r : rows) {
            if (r.size() != m_cols) {
                throw std::invalid_argument("ragged matrix initializer");
            }
            m_data.insert(m_data.end(), r.begin(), r.end());
        }
    }

    static Matrix from_rows(const std::vector<std::vector<T>> &rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw std::invalid_argument("row length mismatch");
            }
            for (std::size_t j = 0; j < cols; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return m_rows; }
    std::size_t cols() const noexcept { return m_cols; }
    bool empty() const noexcept { return m_rows == 0 || m_cols == 0; }

    T &operator()(std::size_t r, std::size_t c)
    {
        assert(r < m_rows && c < m_cols);
        return m_data[r * m_cols + c];
    }
    const T &operator()(std::size_t r, std::size_t c) const
    {
        assert(r < m_rows && c < m_cols);
        return m_data[r * m_cols + c];
    }

    std::vector<T> row(std::size_t r) const
    {
        return std::vector<T>(m_data.begin() + static_cast<std::ptrdiff_t>(r * m_cols),
                              m_data.begin() + static_cast<std::ptrdiff_t>((r + 1) * m_cols));
    }
    std::vector<T> column(std::size_t c) const
    {
        std::vector<T> out;
        out.reserve(m_rows);
        for (std::size_t r = 0; r < m_rows; ++r) {
            out.push_back((*this)(r, c));
        }
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t c = 0; c < m_cols; ++c) {
            std::swap((*this)(a, c), (*this)(b, c));
        }
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t r = 0; r < m_rows; ++r) {
            std::swap((*this)(r, a), (*this)(r, b));
        }
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<T> m_data;
};

template <typename T>
Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product dimension mismatch");
    }
    const T zero(0);
    Matrix<T> out(a.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T &aik = a(i, k);
            if (aik == zero) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (!(b(k, j) == zero)) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
    }
    return out;
}

} // namespace lcoh

#endif
