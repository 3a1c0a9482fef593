"""
title : union_find.py
create : @tarickali 23/12/28
update : @tarickali 26/10/17
"""

from typing import Hashable, Iterable
from dataclasses import dataclass


@dataclass
class Data:
    parent: Hashable = None
    rank: int = 0


class UnionFind:
    """Union-find over hashable keys, used to group numerically close values.

    Notation
    --------
    U : the union-find data structure

    Implementation Note
    -------------------
    This data structure is implemented with union-by-rank and path splitting.
    As such on an instance with |U|=n items and |O|=m U.find and U.union
    operations, the amortized time complexity is O(m•α(n)).

    """

    def __init__(self, items: Iterable[Hashable] = None) -> None:
        self.datum: dict[Hashable, Data] = {}

        if items is not None:
            self.add_many(items)

    def add(self, item: Hashable) -> None:
        """Add and create a new partition for item in U.

        If item is in U, then this method does nothing.

        Parameters
        ----------
        item : Hashable

        """

        if item in self.datum:
            return None

        self.datum[item] = Data()

    def add_many(self, items: Iterable[Hashable]) -> None:
        for item in items:
            self.add(item)

    def find(self, item: Hashable) -> Hashable | None:
        """Find the representative of the partition of item in U.

        If item is not in U, then this method will return None.

        Parameters
        ----------
        item : Hashable

        Returns
        -------
        Hashable | None

        """

        if item not in self.datum:
            return None

        cid = item
        while self.datum[cid].parent is not None:
            parent = self.datum[cid].parent
            grandparent = self.datum[parent].parent
            cid, self.datum[cid].parent = parent, grandparent
        return cid

    def union(self, u: Hashable, v: Hashable) -> None:
        """Merge the partitions of u and v into one partition in U.

        Parameters
        ----------
        u : Hashable
        v : Hashable

        """

        uset = self.find(u)
        vset = self.find(v)

        if uset is None or vset is None:
            return None

        if uset == vset:
            return None

        if self.datum[uset].rank < self.datum[vset].rank:
            uset, vset = vset, uset

        self.datum[vset].parent = uset
        if self.datum[uset].rank == self.datum[vset].rank:
            self.datum[uset].rank += 1

    def groups(self) -> list[list[Hashable]]:
        """Collect the partitions of U.

        Groups keep the insertion order of their members, and are ordered by
        their first member, so the result is deterministic.

        Returns
        -------
        list[list[Hashable]]

        """

        groups: dict[Hashable, list[Hashable]] = {}
        for item in self.datum:
            groups.setdefault(self.find(item), []).append(item)
        return list(groups.values())

    def __contains__(self, item: Hashable) -> bool:
        return item in self.datum

    def __len__(self) -> int:
        return len(self.datum)
