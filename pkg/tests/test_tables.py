import math

import pytest

from rabichiral.tables import TABLE_IDS, reproduce, _sym

_cache = {}


def rows(tid):
    if tid not in _cache:
        _cache[tid] = reproduce(tid, numeric=False)
    return _cache[tid]


def _cell(row, kind, label_part=""):
    return next(c for c in row.cells if c.kind == kind and label_part in c.label)


def test_every_table_has_rows():
    for tid in TABLE_IDS:
        assert rows(tid)


def test_unknown_table():
    with pytest.raises(ValueError):
        reproduce("VIII")


def test_symbolic_edges():
    assert _sym("(sqrt3+sqrt2)eps", 0.1) == pytest.approx(0.3146, abs=5e-5)
    assert _sym("(sqrt2+1)eps", 0.2) == pytest.approx(0.482843, abs=5e-7)
    assert _sym("C1(eps)", 0.5) == pytest.approx(1.1938972, abs=5e-8)
    assert _sym("(sqrt5+2)eps", 0.1) == pytest.approx(0.4236, abs=5e-5)


def test_summary_row_two():
    r = rows("I")[1]
    assert r.indices == (0, 1) and r.eps == 0.1 and r.region == (0.1, 0.2414)
    assert _cell(r, "bound").ok and r.ok


def test_eps040_row_two_bound_and_indices():
    r = rows("VI")[2]
    assert r.indices == (1, 1) and r.region == (0.9165, 0.9659)
    assert _cell(r, "bound").ok and _cell(r, "indices").ok


def test_eps050_c1_boundary():
    r = rows("VII")[1]
    assert _cell(r, "boundary", "hi").ok


def test_eps010_boundaries():
    for r in rows("III"):
        for c in r.cells:
            if c.kind == "boundary":
                assert c.ok, c


def test_weak_coupling_table():
    (r,) = rows("II")
    assert r.ok


def test_all_index_cells_pass():
    for tid in TABLE_IDS:
        for r in rows(tid):
            assert _cell(r, "indices").ok, (tid, r.indices, r.region)


def test_known_mismatches_are_reported():
    # Printed decimals that disagree with their closed forms surface as FAIL cells.
    bad = {(tid, c.label) for tid in TABLE_IDS for r in rows(tid) for c in r.cells if not c.ok}
    assert ("I", "hi (sqrt2+1)0.4") in bad
    assert ("VII", "hi C1(0.5)") in bad
    assert math.isclose(_sym("(sqrt2+1)eps", 0.4), 0.96568542, abs_tol=1e-8)
