"""
title : test_union_find.py
create : @tarick 24/01/01
update : @tarickali 26/10/17
"""

import random

from qkagome.structures import UnionFind


def test_union_find():
    U = UnionFind(range(3))

    assert U.find(0) != U.find(1)
    assert U.find(0) != U.find(2)
    assert U.find(1) != U.find(2)
    U.union(0, 1)
    assert U.find(0) == U.find(1)
    assert U.find(0) != U.find(2)
    U.union(1, 2)
    assert U.find(0) == U.find(1)
    assert U.find(0) == U.find(2)

    assert len(U) == 3
    assert U.find(5) is None
    assert 5 not in U


def test_union_find_groups():
    for _ in range(10):
        n = random.randint(1, 200)
        U = UnionFind(range(n))
        labels = [random.randint(0, 9) for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if labels[i] == labels[j]:
                    U.union(i, j)

        groups = U.groups()
        assert sorted(x for g in groups for x in g) == list(range(n))
        assert len(groups) == len(set(labels))
        for g in groups:
            assert len({labels[i] for i in g}) == 1
            assert g == sorted(g)
        assert [g[0] for g in groups] == sorted(g[0] for g in groups)
