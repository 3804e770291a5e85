import pytest

from errors import PreconditionError
from polytope.constants import GKZ_TOTAL, TOTAL_VOLUME
from polytope.secondary import (
    certify_regular,
    cone_inequalities,
    enumerate_regular_triangulations,
    roundtrip_witness,
    secondary_cone_witness,
)
from polytope.symmetry import class_index, table_rows, triangulation_census
from polytope.toric import toric_ideal_check
from polytope.triangulations import (
    Triangulation,
    gkz_vector,
    regular_subdivision,
    sr_ideal,
    support_config,
    unimodular_count,
)

ROW1_GKZ = (5, 5, 5, 5, 2, 2, 2, 2)
ROW1_SR = ("ah", "bg", "cf", "de", "eg", "eh", "fg", "fh")
ROW8_WEIGHTS = (4, 4, 3, 1, 1, 1, 1, 7)


def test_support_configuration():
    config = support_config()
    assert config.labels == "abcdefgh"
    assert config.dimension == 3
    assert config.volume == TOTAL_VOLUME == 7


def test_first_table_row():
    row = table_rows()[0]
    t = row.triangulation
    assert t.is_unimodular()
    assert len(t.cells) == 7
    assert gkz_vector(t) == ROW1_GKZ
    assert sum(gkz_vector(t)) == GKZ_TOTAL
    assert sr_ideal(t) == ROW1_SR
    assert class_index(t) == 1


def test_every_table_row_is_consistent():
    rows = table_rows()
    assert [r.row for r in rows] == list(range(1, 11))
    assert sorted(r.orbit_size for r in rows) == [1, 4, 4, 4, 4, 4, 8, 8, 8, 8]
    for row in rows:
        t = row.triangulation
        assert t.is_unimodular()
        assert gkz_vector(t) == row.gkz
        assert sr_ideal(t) == row.sr_ideal
        assert class_index(t) == row.row


def test_regularity_certificate_round_trips():
    t = table_rows()[3].triangulation
    cert = certify_regular(t)
    assert cert.regular and cert.margin > 0
    assert roundtrip_witness(cert)
    assert regular_subdivision(secondary_cone_witness(t)) == t
    assert cone_inequalities(t, cert.witness)


def test_weights_outside_the_cone_fail_the_inequalities():
    t = table_rows()[0].triangulation
    assert cone_inequalities(t, table_rows()[0].weights)
    assert not cone_inequalities(t, [0] * 8)


def test_constant_heights_give_one_cell():
    t = regular_subdivision([0] * 8)
    assert t.cells == frozenset({"abcdefgh"})
    assert not t.is_triangulation()
    with pytest.raises(PreconditionError):
        gkz_vector(t)


def test_subdivision_needs_eight_weights():
    with pytest.raises(PreconditionError):
        regular_subdivision([1, 2, 3])


def test_non_triangulation_is_rejected_by_the_certificate():
    with pytest.raises(PreconditionError):
        certify_regular(Triangulation.of(["abce"]))


def test_toric_initial_monomials():
    report = toric_ideal_check(ROW8_WEIGHTS)
    assert report.homogeneous
    assert report.generic
    assert report.initial_monomials == frozenset({"ab", "ac", "ad", "ah", "bg", "cf", "eh", "fh"})


def test_toric_ties_are_reported():
    report = toric_ideal_check([1] * 8)
    assert report.homogeneous
    assert not report.generic
    assert len(report.ties) == 8
    assert report.initial_monomials == frozenset()


def test_unimodular_count_of_table_rows():
    rows = table_rows()
    assert unimodular_count(row.triangulation for row in rows) == len(rows)
    assert unimodular_count([]) == 0


@pytest.mark.slow
def test_regular_triangulation_census():
    assert len(enumerate_regular_triangulations()) == 70
    census = triangulation_census()
    unimodular = [s for s in census if s.unimodular]
    assert len(census) == 14
    assert sum(s.size for s in census) == 70
    assert sum(s.size for s in unimodular) == 53
    assert len(unimodular) == 10
    assert sorted(s.size for s in unimodular) == [1, 4, 4, 4, 4, 4, 8, 8, 8, 8]
    assert sorted(s.table_row for s in unimodular) == list(range(1, 11))
    assert all(len(s.representative.cells) == 7 for s in unimodular)
    assert unimodular_count(c.triangulation for c in enumerate_regular_triangulations()) == 53
