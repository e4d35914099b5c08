#include "polyconf/gen/embedding.hpp"

#include <string>

#include "polyconf/error.hpp"

namespace polyconf::gen {

EmbeddingMatrix mask_rows(const EmbeddingMatrix& x, std::span<const int> mask_set) {
    EmbeddingMatrix out = x;
    for (int r : mask_set) {
        if (r < 0 || r >= x.rows())
            throw IndexOutOfRangeError("mask index " + std::to_string(r) + " out of range");
        for (int c = 0; c < x.dim(); ++c)
            out.at(r, c) = 0.0;
    }
    return out;
}

EmbeddingMatrix mean_pool(const EmbeddingMatrix& e) {
    if (e.rows() < 1)
        throw EmptyMatrixError("mean_pool needs at least one row");
    EmbeddingMatrix out(1, e.dim());
    for (int c = 0; c < e.dim(); ++c) {
        double acc = 0.0;
        for (int r = 0; r < e.rows(); ++r)
            acc += e.at(r, c);
        out.at(0, c) = acc / e.rows();
    }
    return out;
}

} // namespace polyconf::gen
