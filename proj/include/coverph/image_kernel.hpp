#pragma once

#include <vector>

#include "coverph/morphism.hpp"

namespace coverph {

// Output of the image/kernel sweep over a persistence morphism matrix.
//  - kernel: a barcode basis of Ker(f), vectors over the domain, each carrying
//    the step coefficient of the critical value where it entered the kernel.
//  - image: a barcode basis of Im(f), vectors over the codomain, listed by the
//    domain column that produced them.
//  - preimage[i] (when requested) is a vector over the domain with
//    f(preimage[i]) = image[i]; it records the accumulated left-to-right
//    column additions (the matrix T).
struct ImageKernelResult {
    std::vector<BarcodeVector> kernel;
    std::vector<BarcodeVector> image;
    std::vector<BarcodeVector> preimage;
    std::vector<int> image_source_col;

    BarcodeBasis kernel_basis() const;
    BarcodeBasis image_basis() const;
};

ImageKernelResult image_kernel(const PersistenceMorphismMatrix& M, const PrimeField& F,
                               bool want_preimages = false);

} // namespace coverph
