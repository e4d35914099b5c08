#ifndef POLYCONF_GEN_EMBEDDING_HPP
#define POLYCONF_GEN_EMBEDDING_HPP

#include <span>
#include <vector>

namespace polyconf::gen {

// Dense row-per-unit embedding matrix.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(int rows, int dim) : rows_(rows), dim_(dim) {
        values_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(dim), 0.0);
    }

    int rows() const { return rows_; }
    int dim() const { return dim_; }

    double& at(int r, int c) {
        return values_[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(c)];
    }
    double at(int r, int c) const {
        return values_[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
                       static_cast<std::size_t>(c)];
    }
    std::span<const double> row(int r) const {
        return {values_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    bool operator==(const EmbeddingMatrix&) const = default;

private:
    int rows_ = 0;
    int dim_ = 0;
    std::vector<double> values_;
};

// Zeroes the rows in `mask_set`, leaving every other row bit-identical.
// Throws IndexOutOfRangeError on an out-of-range index.
EmbeddingMatrix mask_rows(const EmbeddingMatrix& x, std::span<const int> mask_set);

// Arithmetic mean of the rows as a 1-row matrix. Throws EmptyMatrixError.
EmbeddingMatrix mean_pool(const EmbeddingMatrix& e);

} // namespace polyconf::gen

#endif
