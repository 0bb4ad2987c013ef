from hypothesis import strategies as st

from sftc.graphs import Graph, trim_essential
from sftc.linalg import Matrix


def square_matrices(max_n=4, max_entry=3, min_n=1):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, max_entry), min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


def int_matrices(max_n=4, lo=-3, hi=3):
    return st.tuples(st.integers(1, max_n), st.integers(1, max_n)).flatmap(
        lambda rc: st.lists(
            st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]
        )
    )


def graphs(max_n=4, max_entry=3):
    return square_matrices(max_n, max_entry).map(lambda rows: Graph.from_matrix(Matrix(rows)))


def essential_graphs(max_n=4, max_entry=2):
    return graphs(max_n, max_entry).map(lambda g: trim_essential(g).graph).filter(lambda g: not g.is_empty())


def _no_zero_lines(rows):
    return all(any(r) for r in rows) and all(any(c) for c in zip(*rows))


def factor_pairs(max_n=3, max_entry=2):
    """(R, S) with no zero rows or columns; A_G = SR and A_H = RS are intertwined by R."""
    def build(pq):
        p, q = pq
        r = st.lists(st.lists(st.integers(0, max_entry), min_size=q, max_size=q), min_size=p, max_size=p)
        s = st.lists(st.lists(st.integers(0, max_entry), min_size=p, max_size=p), min_size=q, max_size=q)
        return st.tuples(r, s)

    pairs = st.tuples(st.integers(1, max_n), st.integers(1, max_n)).flatmap(build)
    pairs = pairs.filter(lambda rs: _no_zero_lines(rs[0]) and _no_zero_lines(rs[1]))
    return pairs.map(lambda rs: (Matrix(rs[0]), Matrix(rs[1])))
