"""The category of finite ordinals and all functions between them.

Objects are natural numbers, a morphism m -> n is a table of images into
{0, ..., n-1}.  Block coproducts, the merge/insert/swap generating maps and
exhaustive hom-set enumeration are the combinatorial substrate for every law
checker in this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce


class ShapeError(ValueError):
    """A map's endpoints do not match what an operation requires."""


@dataclass(frozen=True)
class FinMap:
    """A total function {0..dom-1} -> {0..cod-1} stored as a tuple of images."""

    dom: int
    cod: int
    table: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if self.dom < 0 or self.cod < 0:
            raise ShapeError(f"negative endpoints {self.dom}->{self.cod}")
        if len(self.table) != self.dom:
            raise ShapeError(
                f"table {list(self.table)} has length {len(self.table)}, "
                f"expected {self.dom}"
            )
        for pos, img in enumerate(self.table):
            if not 0 <= img < self.cod:
                raise ShapeError(f"image {img} at {pos} outside codomain {self.cod}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __repr__(self) -> str:
        return f"FinMap({self.dom}->{self.cod} {list(self.table)})"

    def to_json(self) -> dict:
        return {"dom": self.dom, "cod": self.cod, "table": list(self.table)}


def identity(n: int) -> FinMap:
    return FinMap(n, n, tuple(range(n)))


def compose(f: FinMap, g: FinMap) -> FinMap:
    """f followed by g."""
    if f.cod != g.dom:
        raise ShapeError(f"cannot compose {f} with {g}")
    return FinMap(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def compose_all(maps) -> FinMap:
    return reduce(compose, maps)


compose_cached = lru_cache(maxsize=None)(compose)


def coproduct(f: FinMap, g: FinMap) -> FinMap:
    """Block sum: f on the left summand, g shifted onto the right one."""
    table = f.table + tuple(f.cod + v for v in g.table)
    return FinMap(f.dom + g.dom, f.cod + g.cod, table)


@lru_cache(maxsize=None)
def shifted(f: FinMap) -> FinMap:
    """f beside a one-point identity block; memoized, it is built constantly."""
    return coproduct(f, identity(1))


@lru_cache(maxsize=None)
def old(n: int) -> FinMap:
    """The inclusion of n into n+1 that misses the top point."""
    return FinMap(n, n + 1, tuple(range(n)))


def new(n: int) -> FinMap:
    """The top point of n+1, as a map out of 1."""
    return FinMap(1, n + 1, (n,))


@dataclass(frozen=True)
class Generators:
    """The merge, insert and swap maps on the one-point object."""

    c: FinMap
    w: FinMap
    s: FinMap

    @staticmethod
    def old(n: int) -> FinMap:
        return old(n)

    @staticmethod
    def new(n: int) -> FinMap:
        return new(n)


def generators() -> Generators:
    return Generators(
        c=FinMap(2, 1, (0, 0)),
        w=FinMap(0, 1, ()),
        s=FinMap(2, 2, (1, 0)),
    )


def enumerate_maps(m: int, n: int) -> list[FinMap]:
    """All n**m maps m -> n, tables in lexicographic order.

    The order is a file-format contract: serialized action tables are keyed
    by it.  m = 0 yields exactly the empty map, even when n = 0; n = 0 with
    m > 0 yields nothing.
    """
    return [FinMap(m, n, t) for t in itertools.product(range(n), repeat=m)]


def symmetric_monoid_diagrams(
    c: FinMap, w: FinMap, s: FinMap
) -> tuple[tuple[str, tuple[FinMap, ...], tuple[FinMap, ...]], ...]:
    """The eight commuting diagrams asked of a merge/insert/swap triple.

    Each entry is (law, leg, leg); a leg composes left to right and the two
    legs of an entry share endpoints.
    """
    i1 = identity(1)
    return (
        ("associativity", (coproduct(c, i1), c), (coproduct(i1, c), c)),
        ("left-unit", (coproduct(w, i1), c), (i1,)),
        ("right-unit", (coproduct(i1, w), c), (i1,)),
        ("merge-after-swap", (s, c), (c,)),
        ("swap-involution", (s, s), (identity(2),)),
        (
            "braid",
            (coproduct(s, i1), coproduct(i1, s), coproduct(s, i1)),
            (coproduct(i1, s), coproduct(s, i1), coproduct(i1, s)),
        ),
        ("insert-swap", (coproduct(w, i1), s), (coproduct(i1, w),)),
        (
            "merge-swap",
            (coproduct(s, i1), coproduct(i1, s), coproduct(c, i1)),
            (coproduct(i1, c), s),
        ),
    )


@dataclass(frozen=True)
class MonoidCheck:
    law: str
    passed: bool
    counterexample: tuple[FinMap, FinMap] | None


@dataclass(frozen=True)
class MonoidCheckReport:
    checks: tuple[MonoidCheck, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, law: str) -> MonoidCheck:
        for c in self.checks:
            if c.law == law:
                return c
        raise KeyError(law)


def check_symmetric_monoid(c: FinMap, w: FinMap, s: FinMap) -> MonoidCheckReport:
    """Decide all eight diagrams for a candidate triple by table composition.

    A failed check carries the two unequal composites as its counterexample.
    """
    for cand, dom, cod in ((c, 2, 1), (w, 0, 1), (s, 2, 2)):
        if (cand.dom, cand.cod) != (dom, cod):
            raise ShapeError(f"expected a {dom}->{cod} map, got {cand}")
    results = []
    for law, left, right in symmetric_monoid_diagrams(c, w, s):
        lhs = compose_all(left)
        rhs = compose_all(right)
        ok = lhs == rhs
        results.append(MonoidCheck(law, ok, None if ok else (lhs, rhs)))
    return MonoidCheckReport(tuple(results))
