"""Abstract clones: carriers indexed by arity with simultaneous substitution.

Provides the free term clone over a signature, the clone of term operations
of a finite algebra, three built-in clones, and the induced category whose
hom-sets are tuples of carrier elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .checks import CheckPolicy, LawRunner, Report


class ContextError(ValueError):
    """A term or an index escapes the variable context it was declared in."""


@dataclass(frozen=True)
class Var:
    """A variable; min_context is the smallest context it lives in."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ContextError(f"negative variable index {self.index}")
        object.__setattr__(self, "min_context", self.index + 1)

    def __hash__(self) -> int:
        return hash((0, self.index))

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        floor = 0
        for a in self.args:
            if a.min_context > floor:
                floor = a.min_context
        object.__setattr__(self, "min_context", floor)
        object.__setattr__(self, "_hash", None)

    def __hash__(self) -> int:
        # terms key memoization tables, so hashing must not re-walk the tree
        h = self._hash
        if h is None:
            h = hash((1, self.op, self.args))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(map(repr, self.args))})"


Term = Var | App


class Signature:
    """Operator names with their arities."""

    def __init__(self, operators: dict[str, int]):
        for name, arity in operators.items():
            if not name or not isinstance(name, str):
                raise ValueError(f"bad operator name {name!r}")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"bad arity {arity!r} for operator {name!r}")
        self.operators = dict(sorted(operators.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}:{v}" for k, v in self.operators.items())
        return f"Signature({inner})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self.operators == other.operators


@dataclass(frozen=True)
class Budget:
    """Bounds for enumerating infinite carriers during checks."""

    max_depth: int = 2
    max_arity: int = 3
    sample_seed: int | None = None

    def __post_init__(self) -> None:
        if self.max_depth < 0 or self.max_arity < 0:
            raise ValueError("budget bounds must be non-negative")


def _check_vars(t: Term, context: int) -> None:
    if t.min_context > context:
        raise ContextError(
            f"term {t!r} needs a context of at least {t.min_context}, got {context}"
        )


def _subst(t: Term, us: tuple[Term, ...]) -> Term:
    match t:
        case Var(index=i):
            return us[i]
        case App(op=op, args=args):
            return App(op, tuple(_subst(a, us) for a in args))
    raise TypeError(f"not a term: {t!r}")


def free_iota(m: int, i: int) -> Term:
    """The i-th variable in a context of m variables."""
    if not 0 <= i < m:
        raise ContextError(f"variable index {i} outside context of size {m}")
    return Var(i)


def free_mu(m: int, n: int, t: Term, us) -> Term:
    """Simultaneously replace the m variables of t by terms over n variables."""
    us = tuple(us)
    if len(us) != m:
        raise ContextError(f"expected {m} substituends, got {len(us)}")
    _check_vars(t, m)
    for u in us:
        _check_vars(u, n)
    return _subst(t, us)


class Clone:
    """Carriers C_n with substitution mu, projections iota and equality."""

    name = "clone"

    def elems(self, n: int, budget: Budget | None = None) -> list:
        raise NotImplementedError

    def mu(self, m: int, n: int, t, us):
        raise NotImplementedError

    def iota(self, m: int, i: int):
        raise NotImplementedError

    def eq(self, n: int, a, b) -> bool:
        return a == b


class FreeClone(Clone):
    """Syntax trees over a signature; substitution is literal substitution."""

    def __init__(self, signature: Signature):
        self.signature = signature
        ops = ",".join(f"{k}:{v}" for k, v in signature.operators.items())
        self.name = f"free({ops})"
        self._layers: dict[int, list[list[Term]]] = {}

    def elems(self, n: int, budget: Budget | None = None) -> list[Term]:
        depth = (budget or Budget()).max_depth
        layers = self._layers.setdefault(n, [[Var(i) for i in range(n)]])
        while len(layers) <= depth:
            d = len(layers)
            pool: list[Term] = []
            pool_depth: dict[Term, int] = {}
            for k, layer in enumerate(layers):
                for t in layer:
                    pool.append(t)
                    pool_depth[t] = k
            fresh: list[Term] = []
            for op, arity in self.signature.operators.items():
                if arity == 0:
                    if d == 1:
                        fresh.append(App(op, ()))
                    continue
                for args in itertools.product(pool, repeat=arity):
                    if max(pool_depth[a] for a in args) == d - 1:
                        fresh.append(App(op, args))
            layers.append(fresh)
        return [t for layer in layers[: depth + 1] for t in layer]

    def mu(self, m, n, t, us):
        return free_mu(m, n, t, us)

    def iota(self, m, i):
        return free_iota(m, i)


@dataclass
class FiniteAlgebra:
    """A finite carrier {0..k-1} with operation tables.

    Tables are row-major over argument tuples with the last argument varying
    fastest.
    """

    carrier_size: int
    operations: dict[str, tuple[int, tuple[int, ...]]]

    def __post_init__(self) -> None:
        k = self.carrier_size
        if k < 1:
            raise ValueError("carrier must be non-empty")
        for name, (arity, table) in list(self.operations.items()):
            table = tuple(table)
            self.operations[name] = (arity, table)
            if arity < 0 or len(table) != k**arity:
                raise ValueError(f"operation {name!r}: table does not match arity")
            if any(not 0 <= v < k for v in table):
                raise ValueError(f"operation {name!r}: value outside carrier")


def _tuple_index(values, k: int) -> int:
    idx = 0
    for v in values:
        idx = idx * k + v
    return idx


class FiniteClone(Clone):
    """Term operations of a finite algebra, as value tables k**n -> k.

    Carriers are generated from projections by closing under the algebra's
    operations; they can grow doubly exponentially, so construction is gated
    by max_arity.
    """

    def __init__(self, algebra: FiniteAlgebra, max_arity: int):
        self.algebra = algebra
        self.max_arity = max_arity
        self.name = f"finite(k={algebra.carrier_size})"
        self._carriers: dict[int, list[tuple[int, ...]]] = {}

    def elems(self, n: int, budget: Budget | None = None) -> list[tuple[int, ...]]:
        if n > self.max_arity:
            raise ValueError(
                f"carrier C_{n} not constructed: clone was closed up to arity "
                f"{self.max_arity}"
            )
        if n not in self._carriers:
            self._carriers[n] = self._closure(n)
        return list(self._carriers[n])

    def _closure(self, n: int) -> list[tuple[int, ...]]:
        k = self.algebra.carrier_size
        elems = [self.iota(n, i) for i in range(n)]
        seen = set(elems)
        changed = True
        while changed:
            changed = False
            snapshot = list(elems)
            for name, (arity, table) in self.algebra.operations.items():
                if arity == 0:
                    candidates = [(table[0],) * (k**n)]
                else:
                    candidates = (
                        tuple(
                            table[_tuple_index((f[j] for f in fs), k)]
                            for j in range(k**n)
                        )
                        for fs in itertools.product(snapshot, repeat=arity)
                    )
                for cand in candidates:
                    if cand not in seen:
                        seen.add(cand)
                        elems.append(cand)
                        changed = True
        return elems

    def mu(self, m, n, t, us):
        us = tuple(us)
        if len(us) != m:
            raise ContextError(f"expected {m} substituends, got {len(us)}")
        k = self.algebra.carrier_size
        return tuple(
            t[_tuple_index((u[j] for u in us), k)] for j in range(k**n)
        )

    def iota(self, m, i):
        if not 0 <= i < m:
            raise ContextError(f"projection index {i} outside arity {m}")
        k = self.algebra.carrier_size
        stride = k ** (m - 1 - i)
        return tuple((j // stride) % k for j in range(k**m))


def finite_clone_of_algebra(algebra: FiniteAlgebra, max_arity: int) -> FiniteClone:
    return FiniteClone(algebra, max_arity)


STAR = "*"


class InitialClone(Clone):
    """Carrier C_n = {0..n-1}; substitution selects."""

    name = "initial"

    def elems(self, n, budget=None):
        return list(range(n))

    def mu(self, m, n, t, us):
        us = tuple(us)
        if len(us) != m or not 0 <= t < m:
            raise ContextError(f"bad substitution instance ({m},{n})")
        return us[t]

    def iota(self, m, i):
        if not 0 <= i < m:
            raise ContextError(f"index {i} outside {m}")
        return i


class TerminalClone(Clone):
    """Every carrier is a singleton."""

    name = "terminal"

    def elems(self, n, budget=None):
        return [STAR]

    def mu(self, m, n, t, us):
        return STAR

    def iota(self, m, i):
        if not 0 <= i < m:
            raise ContextError(f"index {i} outside {m}")
        return STAR


class ArrowClone(Clone):
    """Empty carrier at arity 0, singletons above."""

    name = "arrow"

    def elems(self, n, budget=None):
        return [] if n == 0 else [STAR]

    def mu(self, m, n, t, us):
        if n == 0:
            raise ContextError("arity-0 carrier of the arrow clone is empty")
        return STAR

    def iota(self, m, i):
        if not 0 <= i < m:
            raise ContextError(f"index {i} outside {m}")
        return STAR


_BUILTINS = {
    "initial": InitialClone,
    "terminal": TerminalClone,
    "arrow": ArrowClone,
}


def builtin_clone(name: str) -> Clone:
    if name not in _BUILTINS:
        raise ValueError(f"unknown builtin clone {name!r}; have {sorted(_BUILTINS)}")
    return _BUILTINS[name]()


def _carriers_within(clone: Clone, budget: Budget, report: Report) -> dict[int, list]:
    """Enumerate carriers up to max_arity, noting where enumeration stops."""
    carriers: dict[int, list] = {}
    for n in range(budget.max_arity + 1):
        try:
            carriers[n] = list(clone.elems(n, budget))
        except Exception as exc:  # enumeration exhaustion is incomplete, not failure
            report.notes.append(f"carrier C_{n} unavailable: {exc}")
            break
    return carriers


def clone_laws_check(
    clone: Clone,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
) -> Report:
    """Check associativity, projection and right identity of substitution."""
    budget = budget or Budget()
    policy = policy or CheckPolicy(seed=budget.sample_seed or 0)
    report = Report()
    carriers = _carriers_within(clone, budget, report)
    arities = sorted(carriers)

    assoc = LawRunner("associativity", policy)
    for l, m, n in itertools.product(arities, repeat=3):
        axes = [carriers[l]] + [carriers[m]] * l + [carriers[n]] * m

        def violated(*vals, l=l, m=m, n=n):
            x, ys, zs = vals[0], vals[1 : 1 + l], vals[1 + l :]
            lhs = clone.mu(m, n, clone.mu(l, m, x, ys), zs)
            rhs = clone.mu(l, n, x, tuple(clone.mu(m, n, y, zs) for y in ys))
            if not clone.eq(n, lhs, rhs):
                return {"x": x, "ys": ys, "zs": zs, "lhs": lhs, "rhs": rhs}
            return None

        assoc.run(f"l={l},m={m},n={n}", axes, violated)
    report.checks.append(assoc.result())

    proj = LawRunner("projection", policy)
    for m, n in itertools.product(arities, repeat=2):
        if m == 0:
            continue
        axes = [list(range(m))] + [carriers[n]] * m

        def violated(i, *xs, m=m, n=n):
            lhs = clone.mu(m, n, clone.iota(m, i), xs)
            if not clone.eq(n, lhs, xs[i]):
                return {"i": i, "xs": xs, "lhs": lhs, "rhs": xs[i]}
            return None

        proj.run(f"m={m},n={n}", axes, violated)
    report.checks.append(proj.result())

    rid = LawRunner("right-identity", policy)
    for m in arities:
        iotas = tuple(clone.iota(m, i) for i in range(m))

        def violated(x, m=m, iotas=iotas):
            lhs = clone.mu(m, m, x, iotas)
            if not clone.eq(m, lhs, x):
                return {"x": x, "lhs": lhs}
            return None

        rid.run(f"m={m}", [carriers[m]], violated)
    report.checks.append(rid.result())
    return report


@dataclass(frozen=True)
class TheoryHom:
    """A morphism src -> dst of the induced theory: dst carrier elements."""

    src: int
    dst: int
    components: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.dst:
            raise ValueError(
                f"hom {self.src}->{self.dst} needs {self.dst} components, "
                f"got {len(self.components)}"
            )


def theory_identity(clone: Clone, m: int) -> TheoryHom:
    return TheoryHom(m, m, tuple(clone.iota(m, i) for i in range(m)))


def theory_compose(clone: Clone, f: TheoryHom, g: TheoryHom) -> TheoryHom:
    """The composite g-then-f; component k is f's k-th component substituted
    along g's components."""
    if g.dst != f.src:
        raise ValueError(f"cannot compose {f.src}->{f.dst} after {g.src}->{g.dst}")
    return TheoryHom(
        g.src,
        f.dst,
        tuple(clone.mu(f.src, g.src, comp, g.components) for comp in f.components),
    )


def _hom_eq(clone: Clone, a: TheoryHom, b: TheoryHom) -> bool:
    return (
        a.src == b.src
        and a.dst == b.dst
        and all(clone.eq(a.src, x, y) for x, y in zip(a.components, b.components))
    )


def theory_laws_check(
    clone: Clone,
    bound: int = 3,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
    compose_fn=None,
) -> Report:
    """Associativity and identity laws of theory composition up to bound."""
    budget = budget or Budget(max_arity=bound)
    policy = policy or CheckPolicy(seed=budget.sample_seed or 0)
    comp = compose_fn or theory_compose
    report = Report()
    carriers = {}
    for n in range(bound + 1):
        try:
            carriers[n] = list(clone.elems(n, budget))
        except Exception as exc:
            report.notes.append(f"carrier C_{n} unavailable: {exc}")
            break
    objs = sorted(carriers)

    assoc = LawRunner("hom-associativity", policy)
    for a, b, c, d in itertools.product(objs, repeat=4):
        axes = [carriers[c]] * d + [carriers[b]] * c + [carriers[a]] * b

        def violated(*vals, a=a, b=b, c=c, d=d):
            f = TheoryHom(c, d, vals[:d])
            g = TheoryHom(b, c, vals[d : d + c])
            h = TheoryHom(a, b, vals[d + c :])
            lhs = comp(clone, comp(clone, f, g), h)
            rhs = comp(clone, f, comp(clone, g, h))
            if not _hom_eq(clone, lhs, rhs):
                return {"f": f, "g": g, "h": h, "lhs": lhs, "rhs": rhs}
            return None

        assoc.run(f"{a}->{b}->{c}->{d}", axes, violated)
    report.checks.append(assoc.result())

    unit = LawRunner("hom-identity", policy)
    for m, n in itertools.product(objs, repeat=2):
        axes = [carriers[m]] * n

        def violated(*vals, m=m, n=n):
            f = TheoryHom(m, n, vals)
            left = comp(clone, theory_identity(clone, n), f)
            right = comp(clone, f, theory_identity(clone, m))
            if not (_hom_eq(clone, left, f) and _hom_eq(clone, right, f)):
                return {"f": f, "left": left, "right": right}
            return None

        unit.run(f"{m}->{n}", axes, violated)
    report.checks.append(unit.result())
    return report


def enumerate_theory_homs(
    clone: Clone, m: int, n: int, budget: Budget | None = None
) -> list[TheoryHom]:
    carrier = list(clone.elems(m, budget or Budget()))
    return [
        TheoryHom(m, n, combo) for combo in itertools.product(carrier, repeat=n)
    ]


def clone_hom_check(
    h,
    src: Clone,
    dst: Clone,
    budget: Budget | None = None,
    policy: CheckPolicy | None = None,
) -> Report:
    """Check that the family h(m, -) preserves projections and substitution."""
    budget = budget or Budget()
    policy = policy or CheckPolicy(seed=budget.sample_seed or 0)
    report = Report()
    carriers = _carriers_within(src, budget, report)
    arities = sorted(carriers)

    iotas = LawRunner("iota-preservation", policy)
    for m in arities:
        def violated(i, m=m):
            lhs = h(m, src.iota(m, i))
            rhs = dst.iota(m, i)
            if not dst.eq(m, lhs, rhs):
                return {"m": m, "i": i, "lhs": lhs, "rhs": rhs}
            return None

        iotas.run(f"m={m}", [list(range(m))], violated)
    report.checks.append(iotas.result())

    mus = LawRunner("mu-preservation", policy)
    for m, n in itertools.product(arities, repeat=2):
        axes = [carriers[m]] + [carriers[n]] * m

        def violated(t, *us, m=m, n=n):
            lhs = h(n, src.mu(m, n, t, us))
            rhs = dst.mu(m, n, h(m, t), tuple(h(n, u) for u in us))
            if not dst.eq(n, lhs, rhs):
                return {"t": t, "us": us, "lhs": lhs, "rhs": rhs}
            return None

        mus.run(f"m={m},n={n}", axes, violated)
    report.checks.append(mus.result())
    return report
