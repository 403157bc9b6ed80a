#include "diffalg/complex.hpp"

namespace diffalg {

void ChainComplex::verify() const {
    if (d.size() + 1 != dims.size()) throw input_error("complex shape mismatch");
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i].rows() != dims[i + 1] || d[i].cols() != dims[i])
            throw input_error("differential " + std::to_string(i) + " has wrong shape");
    for (size_t i = 0; i + 1 < d.size(); ++i) {
        Mat dd = d[i + 1] * d[i];
        if (!dd.is_zero())
            throw invariant_error("d . d != 0 between spots " + std::to_string(i) + " and " +
                                  std::to_string(i + 2));
    }
}

ChainComplex::Homology ChainComplex::homology() const {
    verify();
    Homology h;
    for (int i = 0; i < length(); ++i) {
        Subspace ker = i < static_cast<int>(d.size())
                           ? Subspace::span(field, dims[static_cast<size_t>(i)],
                                            kernel_basis(d[static_cast<size_t>(i)]))
                           : Subspace::full(field, dims[static_cast<size_t>(i)]);
        Subspace im(field, dims[static_cast<size_t>(i)]);
        if (i > 0) {
            std::vector<Vec> cols;
            const Mat& prev = d[static_cast<size_t>(i - 1)];
            for (int c = 0; c < prev.cols(); ++c) cols.push_back(prev.col(c));
            im = Subspace::span(field, dims[static_cast<size_t>(i)], cols);
        }
        h.dims.push_back(ker.dim() - im.dim());
        // canonical representatives: kernel basis reduced modulo the image
        Quotient q(im);
        std::vector<Vec> reps;
        for (const Vec& v : ker.basis()) {
            Vec r = q.lift(q.project(v));
            if (!is_zero(r)) reps.push_back(r);
        }
        Subspace rep_span = Subspace::span(field, dims[static_cast<size_t>(i)], reps);
        h.bases.push_back(rep_span.basis());
        if (rep_span.dim() != h.dims.back())
            throw invariant_error("homology representative count mismatch at spot " + std::to_string(i));
    }
    return h;
}

}  // namespace diffalg
