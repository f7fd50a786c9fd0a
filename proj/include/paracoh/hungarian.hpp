#pragma once

#include <cstddef>
#include <vector>

namespace paracoh::coherence {

// Dense row-major matrix of assignment values.
class ValueMatrix {
public:
    ValueMatrix() = default;
    ValueMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    ValueMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    std::size_t row;
    std::size_t col;

    bool operator==(const Assignment&) const = default;
};

// Optimal one-to-one assignment of min(rows, cols) pairs (Kuhn-Munkres with
// potentials, O(n^2 m)). Maximizes the total when `maximize` is true,
// minimizes it otherwise. Result is sorted by row. Throws InvalidArgument on
// an empty matrix or non-finite entries.
std::vector<Assignment> assign_hungarian(const ValueMatrix& values, bool maximize = true);

}  // namespace paracoh::coherence
