#include "grade3/rank.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <utility>

namespace grade3 {

namespace {

namespace mp = boost::multiprecision;

template <class Scalar>
int bareiss_rank(const IntMatrix& input) {
    std::vector<std::vector<Scalar>> a;
    a.reserve(input.size());
    std::size_t cols = 0;
    for (const auto& row : input) {
        bool nonzero = false;
        for (auto v : row) nonzero = nonzero || v != 0;
        if (!nonzero) continue;
        a.emplace_back(row.begin(), row.end());
        cols = row.size();
    }
    const std::size_t rows = a.size();
    Scalar prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const Scalar& p = a[rank][col];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const Scalar f = a[i][col];
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = (a[i][j] * p - f * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = p;
        ++rank;
    }
    return static_cast<int>(rank);
}

}  // namespace

int exact_rank(const IntMatrix& rows) {
    try {
        return bareiss_rank<mp::checked_int128_t>(rows);
    } catch (const std::overflow_error&) {
        return bareiss_rank<mp::cpp_int>(rows);
    } catch (const std::range_error&) {
        return bareiss_rank<mp::cpp_int>(rows);
    }
}

}  // namespace grade3
