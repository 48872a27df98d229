// Python bindings: the direct-reduction barcode, the covered (spectral
// sequence) pipeline, and the morphism-level image/kernel operation.

#include <cmath>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coverph/cover.hpp"
#include "coverph/errors.hpp"
#include "coverph/image_kernel.hpp"
#include "coverph/oracle.hpp"
#include "coverph/spectral.hpp"

namespace py = pybind11;
using namespace coverph;

namespace {

double out_filt(Filt v) {
    return v < kInfFilt ? v : std::numeric_limits<double>::infinity();
}

PrimeField make_field(int prime) { return PrimeField(prime); }

// Per-degree list of (birth, death) pairs from the direct column reduction.
std::vector<std::vector<std::pair<double, double>>> rips_persistence(
    const std::vector<std::vector<double>>& points, int max_dim, double max_filt, int prime) {
    const PrimeField F = make_field(prime);
    FilteredComplex X = vietoris_rips(points, max_dim, max_filt);
    auto bars = standard_reduction_ph(X, max_dim, F);
    std::vector<std::vector<std::pair<double, double>>> out;
    for (auto& degree : bars) {
        std::sort(degree.begin(), degree.end(), bar_less);
        std::vector<std::pair<double, double>> d;
        for (const Interval& b : degree) d.emplace_back(out_filt(b.birth), out_filt(b.death));
        out.push_back(std::move(d));
    }
    return out;
}

// Full covered run: barcodes with gluing provenance plus every page generator.
py::dict covered_persistence(const std::vector<std::vector<double>>& points, int max_dim,
                             double max_filt, const std::vector<int>& divisions, double overlap,
                             int prime, int workers) {
    const PrimeField F = make_field(prime);
    if (points.empty()) throw ConfigError("empty point cloud");
    std::vector<int> div = divisions.empty() ? std::vector<int>{1} : divisions;
    if (div.size() > points.front().size())
        throw ConfigError("more division axes than point coordinates");
    div.resize(points.front().size(), 1);
    if (overlap < 0) overlap = 2 * max_filt;

    FilteredComplex X = vietoris_rips(points, max_dim, max_filt);
    CoverAssignment cover = cubical_cover(X, points, div, overlap);
    Nerve N = nerve(cover);
    SpectralEngine engine(cover, N, F, workers);
    engine.run();

    py::list barcodes;
    for (int n = 0; n <= max_dim; ++n) {
        py::list degree;
        for (const AssembledBar& b : engine.homology(n)) {
            py::dict bar;
            bar["birth"] = out_filt(b.bar.birth);
            bar["death"] = out_filt(b.bar.death);
            bar["sources"] = b.sources;
            degree.append(bar);
        }
        barcodes.append(degree);
    }
    py::list pages;
    for (int r = 1; r <= engine.page_limit(); ++r)
        for (int p = 0; p <= engine.complex().pmax(); ++p)
            for (int q = 0; q <= engine.complex().qmax(); ++q)
                for (const PageGen& g : engine.page(r, p, q).gens)
                    pages.append(py::make_tuple(r, p, q, out_filt(g.bar.birth),
                                                out_filt(g.bar.death)));
    py::dict out;
    out["barcodes"] = barcodes;
    out["pages"] = pages;
    out["page_limit"] = engine.page_limit();
    out["collapse_page"] = engine.detected_collapse_page();
    out["patches"] = static_cast<int>(cover.patches.size());
    return out;
}

// Image and kernel barcodes of a natural morphism given by constant entries
// over two interval lists. Bars are (birth, death) pairs.
py::dict morphism_image_kernel(const std::vector<std::pair<double, double>>& domain_bars,
                               const std::vector<std::pair<double, double>>& codomain_bars,
                               const std::vector<std::vector<int>>& entries, int prime) {
    const PrimeField F = make_field(prime);
    auto to_basis = [](const std::vector<std::pair<double, double>>& bars) {
        std::vector<Interval> iv;
        for (auto [b, d] : bars)
            iv.push_back({b, std::isinf(d) ? kInfFilt : d});
        return BarcodeBasis(std::move(iv));
    };
    PersistenceMorphismMatrix M;
    M.domain = to_basis(domain_bars);
    M.codomain = to_basis(codomain_bars);
    M.entries = entries;
    M.validate(F);
    ImageKernelResult ik = image_kernel(M, F, false);
    auto bars_of = [](const std::vector<BarcodeVector>& vs) {
        std::vector<std::pair<double, double>> out;
        for (const auto& v : vs) out.emplace_back(out_filt(v.assoc.birth), out_filt(v.assoc.death));
        return out;
    };
    py::dict out;
    out["image"] = bars_of(ik.image);
    out["kernel"] = bars_of(ik.kernel);
    return out;
}

} // namespace

PYBIND11_MODULE(_coverph, m) {
    m.doc() = "Persistent homology of covered point clouds via the Mayer-Vietoris "
              "spectral sequence";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<CoverViolationError>(m, "CoverViolationError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<InternalConsistencyError>(m, "InternalConsistencyError",
                                                     PyExc_RuntimeError);

    m.def("rips_persistence", &rips_persistence, py::arg("points"), py::arg("max_dim") = 2,
          py::arg("max_filt") = 1.0, py::arg("prime") = 5,
          "Vietoris-Rips persistence barcodes by direct column reduction; returns one "
          "list of (birth, death) pairs per degree 0..max_dim.");

    m.def("covered_persistence", &covered_persistence, py::arg("points"), py::arg("max_dim") = 2,
          py::arg("max_filt") = 1.0, py::arg("divisions") = std::vector<int>{},
          py::arg("overlap") = -1.0, py::arg("prime") = 5, py::arg("workers") = 1,
          "Covered Vietoris-Rips persistence via the Mayer-Vietoris spectral sequence. "
          "Returns a dict with per-degree 'barcodes' (birth/death/sources), all page "
          "generators under 'pages' as (page, p, q, birth, death) tuples, 'page_limit', "
          "'collapse_page' and 'patches'. A negative overlap means 2 * max_filt.");

    m.def("morphism_image_kernel", &morphism_image_kernel, py::arg("domain_bars"),
          py::arg("codomain_bars"), py::arg("entries"), py::arg("prime") = 5,
          "Image and kernel barcodes of a natural morphism of barcode modules given by "
          "a constant coefficient matrix.");
}
