#include "paracoh/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paracoh/error.hpp"

namespace paracoh::coherence {

ValueMatrix::ValueMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw InvalidArgument("matrix data size does not match its shape");
}

std::vector<Assignment> assign_hungarian(const ValueMatrix& values, bool maximize) {
    if (values.rows() == 0 || values.cols() == 0) throw InvalidArgument("assignment matrix is empty");
    const bool transpose = values.rows() > values.cols();
    const std::size_t n = transpose ? values.cols() : values.rows();
    const std::size_t m = transpose ? values.rows() : values.cols();
    auto cost = [&](std::size_t i, std::size_t j) {
        const double v = transpose ? values(j, i) : values(i, j);
        return maximize ? -v : v;
    };
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (std::size_t j = 0; j < values.cols(); ++j) {
            if (!std::isfinite(values(i, j))) throw InvalidArgument("assignment matrix holds a non-finite value");
        }
    }

    // 1-based potentials; p[j] is the row matched to column j, way[] the
    // augmenting path.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0);
    std::vector<double> v(m + 1, 0.0);
    std::vector<std::size_t> p(m + 1, 0);
    std::vector<std::size_t> way(m + 1, 0);
    std::vector<double> minv(m + 1);
    std::vector<char> used(m + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<Assignment> out;
    out.reserve(n);
    for (std::size_t j = 1; j <= m; ++j) {
        if (p[j] == 0) continue;
        if (transpose) {
            out.push_back({j - 1, p[j] - 1});
        } else {
            out.push_back({p[j] - 1, j - 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const Assignment& a, const Assignment& b) { return a.row < b.row; });
    return out;
}

}  // namespace paracoh::coherence
