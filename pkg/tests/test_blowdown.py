import random

import pytest
from sympy import QQ

from blowdown.charts import CHARTS, blowdown_map, contracted_image, image_point
from blowdown.frame import CuspidalFrame, moduli_from_frame
from blowdown.planes import PlaneForm, plane_span
from blowdown.roundtrip import fit_projective, maps_to, roundtrip_check, sample_pairs
from errors import PreconditionError
from exact.polynomial import evaluate
from lines.construction import base_points
from lines.plucker import LineLabel, ProjPoint
from model.moduli import ModuliVector
from model.octanomial import plane_cubic_basis

FRAME_IMAGES = {
    1: (1, 0, 0),
    2: (0, 1, 0),
    3: (0, 0, 1),
    4: (1, 1, 1),
    5: (35, 32, 25),
    6: (8, 7, 5),
}


@pytest.fixture(scope="module")
def bmap(census):
    return blowdown_map(census)


def test_plane_span_contains_both_lines(census):
    plane = plane_span(census["G1"], census["E2"])
    assert plane.contains(census["G1"])
    assert plane.contains(census["E2"])
    assert plane(census.intersection("G1", "E2").coords) == 0


def test_plane_span_of_skew_lines(census):
    with pytest.raises(PreconditionError, match="span no unique plane"):
        plane_span(census["E1"], census["E2"])


def test_plane_form_is_primitive():
    assert PlaneForm((0, -2, 4, 6)).coeffs == (0, 1, -2, -3)
    with pytest.raises(PreconditionError):
        PlaneForm((1, 2, 3))


def test_contracted_exceptional_lines(census, bmap):
    for i, expected in FRAME_IMAGES.items():
        image = contracted_image(bmap, census, LineLabel("E", (i,)))
        assert image.same_as(ProjPoint(expected)), f"E{i} -> {image}"


def test_charts_agree_on_overlaps(census, bmap):
    for point in census["F16"].sample_points(7):
        images = list(bmap.charts_at(point.coords).values())
        assert all(images[0].same_as(other) for other in images[1:])
    assert set(bmap.to_json()["constants"]) == set(CHARTS)


def test_image_point_rejects_base_points(d0):
    basis = plane_cubic_basis(d0)
    with pytest.raises(PreconditionError, match="base point"):
        image_point(basis, base_points(d0)[2].coords)
    assert len(image_point(basis, (1, 7, 2))) == 4


def test_standard_frame_recovers_moduli(d0):
    frame = CuspidalFrame.standard()
    for point in base_points(d0):
        assert evaluate(frame.cubic(), point.coords) == 0
    assert moduli_from_frame(frame, base_points(d0)) == d0


def test_rescaled_frame_rescales_moduli(d0):
    # ℓ0 -> 2X, ℓ1 -> 3Y, ℓ2 -> (27/4)Z keeps the same cubic up to a factor
    frame = CuspidalFrame((2, 0, 0), (0, 3, 0), (0, 0, QQ(27, 4)))
    assert moduli_from_frame(frame, base_points(d0)) == d0.scaled(QQ(3, 2))


def test_frame_rejects_the_cusp_and_points_off_the_cubic(d0):
    frame = CuspidalFrame.standard()
    points = base_points(d0)
    with pytest.raises(PreconditionError, match="vanishes"):
        moduli_from_frame(frame, [(0, 0, 1)] + [p.coords for p in points[1:]])
    with pytest.raises(PreconditionError, match="not on the cuspidal cubic"):
        moduli_from_frame(frame, [(1, 1, 2)] + [p.coords for p in points[1:]])


def test_frame_forms_must_be_independent():
    with pytest.raises(PreconditionError):
        CuspidalFrame((1, 0, 0), (2, 0, 0), (0, 0, 1))


def test_fit_projective_identity():
    frame = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    pairs = [(ProjPoint(p), ProjPoint(p)) for p in frame]
    transform = fit_projective(pairs)
    assert maps_to(transform, ProjPoint((1, 2, 3)), ProjPoint((1, 2, 3)))


def test_sample_pairs(d0, bmap):
    assert sample_pairs(d0, bmap, 0, random.Random(0)) == []
    pairs = sample_pairs(d0, bmap, 3, random.Random(0))
    assert len(pairs) == 3


def test_roundtrip_recovers_reference_moduli(d0, census):
    trip = roundtrip_check(d0, census, seed=1)
    assert trip.recovered == d0
    assert trip.checked_points == 9
    for point, expected in zip(trip.contracted, FRAME_IMAGES.values()):
        assert point.same_as(ProjPoint(expected))
    for p, e in zip(base_points(d0), trip.contracted):
        assert maps_to(trip.transform, p, e)
    data = trip.to_json()
    assert data["recovered_moduli"] == d0.to_json()
    assert set(data["frame"]) == {"ell0", "ell1", "ell2"}


def test_roundtrip_on_rational_moduli():
    d = ModuliVector.parse("1/2,-3,5/3,7,-11/4,2")
    assert roundtrip_check(d, check_points=2, seed=5).recovered == d
