"""Smoke test for the _coverph extension module.

Runs the split-circle cloud through both the direct reduction and the covered
spectral-sequence pipeline and checks that they agree, that the glued bar
carries two page sources, and that worker counts do not change the output.
"""

import math
import sys

import _coverph as cph

POINTS = [
    [0, 0], [0, 0.5], [0, 1], [0.5, 0], [0.5, 1], [1, 0], [1, 0.2],
    [1, 0.8], [1, 1], [1.5, 0], [1.5, 1], [2, 0], [2, 0.5], [2, 1],
]
GAP = math.dist(POINTS[6], POINTS[7])  # 0.8 - 0.2, kept float-exact


def barcode_pairs(result, n):
    return sorted((b["birth"], b["death"]) for b in result["barcodes"][n])


def main():
    direct = cph.rips_persistence(POINTS, max_dim=2, max_filt=1.0)
    covered = cph.covered_persistence(
        POINTS, max_dim=2, max_filt=1.0, divisions=[2, 1], overlap=1.0
    )

    # Degree-1: the glued circle bar plus the late small loop.
    assert barcode_pairs(covered, 1) == [(0.5, 1.0), (GAP, 1.0)], covered["barcodes"][1]
    # The glued bar is assembled from two page positions.
    glued = [b for b in covered["barcodes"][1] if b["birth"] == 0.5]
    assert len(glued) == 1 and sorted(glued[0]["sources"]) == [(0, 1), (1, 0)], glued

    # Full agreement with the direct reduction in every degree.
    for n in range(3):
        assert barcode_pairs(covered, n) == sorted(direct[n]), (n, covered["barcodes"][n])

    # Deterministic across worker counts.
    covered8 = cph.covered_persistence(
        POINTS, max_dim=2, max_filt=1.0, divisions=[2, 1], overlap=1.0, workers=8
    )
    assert covered == covered8

    # The morphism-level operation on the worked example.
    ik = cph.morphism_image_kernel(
        [(1, 5), (1, 4), (2, 5)],
        [(0, 5), (0, 3), (1, 4)],
        [[0, 0, 1], [1, 0, 0], [1, 1, 1]],
    )
    assert sorted(ik["image"]) == [(1.0, 3.0), (1.0, 4.0), (2.0, 5.0)], ik["image"]
    assert ik["kernel"] == [(3.0, 5.0)], ik["kernel"]

    # Bad configuration surfaces as ValueError.
    try:
        cph.covered_persistence(POINTS, max_filt=1.0, divisions=[2, 1], overlap=0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("undersized overlap must raise")

    print("smoke test OK")


if __name__ == "__main__":
    sys.exit(main())
