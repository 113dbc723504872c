import numpy as np
from hypothesis import given, strategies as st

from dscoh import gf2

rows_st = st.lists(st.integers(0, 2**12 - 1), max_size=10)


@given(rows_st)
def test_bitset_rank_matches_dense_elimination(rows):
    assert gf2.rank(rows) == gf2.matrix_rank(gf2.to_matrix(rows, 12))


@given(rows_st, st.integers(0, 2**12 - 1))
def test_contains_iff_rank_unchanged(rows, vec):
    elim = gf2.Eliminator()
    for r in rows:
        elim.add(r)
    assert elim.contains(vec) == (gf2.rank(rows + [vec]) == gf2.rank(rows))


def test_examples():
    assert gf2.rank([0b011, 0b110, 0b101]) == 2
    assert not gf2.is_independent([0b011, 0b110, 0b101])
    assert gf2.same_span([0b011, 0b110], [0b101, 0b011])
    assert not gf2.same_span([0b011], [0b110])
    assert gf2.from_bits(gf2.to_bits([0, 3, 5])) == (0, 3, 5)
    np.testing.assert_array_equal(gf2.to_matrix([0b101], 3), [[1, 0, 1]])
