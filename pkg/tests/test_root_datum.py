import pytest

from affhecke import lattice
from affhecke.root_datum import (
    RootDatumError,
    build_root_datum,
    nonreduced_roots,
    parabolic_data,
)

TYPES = [("A1", "adjoint"), ("A1", "sc"), ("A2", "adjoint"), ("A2", "sc"), ("B2", "adjoint"),
         ("B2", "sc"), ("C2", "adjoint"), ("G2", "adjoint"), ("A1xA1", "adjoint"), ("A3", "adjoint"),
         ("B3", "sc")]


def test_examples():
    a1 = build_root_datum("A1")
    assert a1.rank == 1 and len(a1.roots) == 2 and len(a1.simple_roots) == 1
    a2 = build_root_datum("A2")
    assert len(a2.roots) == 6 and len(a2.simple_roots) == 2
    aa = build_root_datum("A1xA1")
    assert len(aa.roots) == 4
    assert lattice.dot(aa.simple_roots[0], aa.simple_coroots[1]) == 0


@pytest.mark.parametrize("spec,lat", TYPES)
def test_invariants(spec, lat):
    rd = build_root_datum(spec, lat)
    roots = set(rd.roots)
    for a in rd.roots:
        assert rd.pair(a, rd.coroot[a]) == 2
        assert tuple(2 * x for x in a) not in roots
        for b in rd.roots:
            sb = rd.reflect(a, b)
            assert sb in roots
            # duality: (s_α β)^∨ = s^∨_α(β^∨)
            assert rd.coroot[sb] == rd.coreflect(a, rd.coroot[b])
        c = rd.root_coeffs[a]
        assert all(x >= 0 for x in c) or all(x <= 0 for x in c)
    assert len(rd.positive_roots) * 2 == len(rd.roots)


def test_nonreduced_roots():
    a1 = build_root_datum("A1")
    nr = nonreduced_roots(a1)
    assert sorted(nr.nr_roots) == [(-2,), (-1,), (1,), (2,)]
    assert sorted(nr.long_roots) == [(-2,), (2,)]
    assert sorted(nonreduced_roots(build_root_datum("A1", "sc")).nr_roots) == sorted(
        build_root_datum("A1", "sc").roots)
    a2 = build_root_datum("A2")
    assert sorted(nonreduced_roots(a2).nr_roots) == sorted(a2.roots)


def test_parabolic_data():
    a2 = build_root_datum("A2")
    assert len(parabolic_data(a2, [0]).roots) == 2
    full = parabolic_data(a2, [0, 1])
    assert sorted(full.roots) == sorted(a2.roots)
    empty = parabolic_data(a2, [])
    assert empty.roots == () and empty.datum_P.rank == 0


def test_rank_beyond_roots():
    gl2 = build_root_datum("A1xT1")
    assert gl2.rank == 2 and gl2.semisimple_rank == 1
    assert gl2.central_lattice()


@pytest.mark.parametrize("spec", ["", "Q3", "A0x"])
def test_bad_types(spec):
    with pytest.raises(RootDatumError):
        build_root_datum(spec)


def test_bad_lattice():
    with pytest.raises(RootDatumError):
        build_root_datum("A2", ((1, 0), (0, 1), (1, 1)))
