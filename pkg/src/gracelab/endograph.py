"""Endofunctions on Z_n and their functional directed graphs.

A map ``f: Z_n -> Z_n`` is stored as a tuple of images.  Its functional
graph has one directed edge ``i -> f(i)`` per vertex, so a fixed point
shows up as a loop.  Every weakly connected component of such a graph
contains exactly one cycle.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

if TYPE_CHECKING:
    from gracelab.monoid import Permutation


@dataclass(frozen=True, eq=False)
class EndoFunction:
    """A total map ``Z_n -> Z_n`` given by its image sequence.

    Equality and hashing look only at the images, so a permutation equals
    the plain endofunction with the same values.
    """

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n < 1:
            raise ValueError("an endofunction needs at least one point")
        for i, v in enumerate(vals):
            if not 0 <= v < n:
                raise ValueError(f"value f({i})={v} outside [0, {n})")

    @property
    def n(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoFunction):
            return NotImplemented
        return self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.values)})"

    @classmethod
    def identity(cls, n: int) -> EndoFunction:
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, c: int = 0) -> EndoFunction:
        return cls((c,) * n)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, v) for i, v in enumerate(self.values)]

    def loops(self) -> int:
        return sum(1 for i, v in enumerate(self.values) if i == v)

    # serialization

    def to_json(self) -> dict:
        return {"n": self.n, "f": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> EndoFunction:
        """Accept ``{"n": .., "f": [..]}``, a bare list, or a JSON string of either."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, dict):
            if "f" not in obj:
                raise ValueError("missing key 'f'")
            vals = obj["f"]
            if "n" in obj and int(obj["n"]) != len(vals):
                raise ValueError(f"n={obj['n']} does not match len(f)={len(vals)}")
        else:
            vals = obj
        if not isinstance(vals, (list, tuple)) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in vals
        ):
            raise ValueError("f must be a list of integers")
        return cls(tuple(vals))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f"  {i} -> {v};" for i, v in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FunctionalGraphSummary:
    component_count: int
    cycle_lengths: tuple[int, ...]
    loops: int
    order_lcm: int


@dataclass(frozen=True)
class SignedIncidenceMatrix:
    """``A_{G_f} - I`` as a dense integer matrix."""

    n: int
    entries: np.ndarray

    def rank(self) -> int:
        return len(_rational_rref(self.entries.tolist())[1])

    def kernel(self) -> list[tuple[int, ...]]:
        """Integer basis of the right null space, via exact elimination."""
        return nullspace(self.entries.tolist())

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries @ np.asarray(x, dtype=np.int64))


def _check_same_n(f: EndoFunction, g: EndoFunction) -> None:
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} != {g.n}")


def compose(f: EndoFunction, g: EndoFunction) -> EndoFunction:
    """``(f o g)(i) = f(g(i))``."""
    _check_same_n(f, g)
    fv = f.values
    return EndoFunction(tuple(fv[x] for x in g.values))


def _compose_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a[x] for x in b)


def iterate(f: EndoFunction, k: int) -> EndoFunction:
    """The ``k``-fold composite of ``f``; ``iterate(f, 0)`` is the identity."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = f.n
    result = tuple(range(n))
    if k <= n:
        for _ in range(k):
            result = _compose_tuples(f.values, result)
        return EndoFunction(result)
    base = f.values
    while k:
        if k & 1:
            result = _compose_tuples(base, result)
        base = _compose_tuples(base, base)
        k >>= 1
    return EndoFunction(result)


def cycles(f: EndoFunction) -> list[tuple[int, ...]]:
    """The cycles of ``G_f``, each listed from its smallest vertex."""
    n = f.n
    state = [0] * n  # 0 unseen, 1 on current walk, 2 done
    found = []
    for start in range(n):
        if state[start]:
            continue
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = f.values[v]
        if state[v] == 1:
            cyc = walk[walk.index(v):]
            m = cyc.index(min(cyc))
            found.append(tuple(cyc[m:] + cyc[:m]))
        for w in walk:
            state[w] = 2
    return sorted(found)


def summarize(f: EndoFunction) -> FunctionalGraphSummary:
    cyc = cycles(f)
    lengths = tuple(sorted(len(c) for c in cyc))
    return FunctionalGraphSummary(
        component_count=len(cyc),
        cycle_lengths=lengths,
        loops=f.loops(),
        order_lcm=math.lcm(*lengths),
    )


def is_tree_function(f: EndoFunction) -> bool:
    v = f.values
    return v[0] == 0 and all(v[i] < i for i in range(1, f.n))


def is_forest_function(f: EndoFunction) -> bool:
    return all(x <= i for i, x in enumerate(f.values))


def has_attractive_fixed_point(f: EndoFunction) -> bool:
    return len(set(iterate(f, f.n - 1).values)) == 1


def signed_incidence(f: EndoFunction) -> SignedIncidenceMatrix:
    n = f.n
    m = np.zeros((n, n), dtype=np.int64)
    for i, v in enumerate(f.values):
        m[i, v] += 1
        m[i, i] -= 1
    return SignedIncidenceMatrix(n, m)


def apply_label_differences(f: EndoFunction, sigma: Permutation) -> tuple[int, ...]:
    """``d[i] = sigma(f(sigma^-1(i))) - i``, the signed labels of the relabeled graph."""
    _check_same_n(f, sigma)
    s = sigma.values
    inv = [0] * f.n
    for i, x in enumerate(s):
        inv[x] = i
    fv = f.values
    return tuple(s[fv[inv[i]]] - i for i in range(f.n))


def undirected_adjacency(f: EndoFunction) -> list[list[int]]:
    """Neighbour lists of the underlying simple graph, loops dropped."""
    adj: list[set[int]] = [set() for _ in range(f.n)]
    for i, v in enumerate(f.values):
        if i != v:
            adj[i].add(v)
            adj[v].add(i)
    return [sorted(a) for a in adj]


# exact linear algebra for the small incidence matrices


def _rational_rref(rows: Iterable[Sequence[int]]) -> tuple[list[list[Fraction]], list[int]]:
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return mat, []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][c]
        mat[r] = [x / piv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                fac = mat[i][c]
                mat[i] = [a - fac * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def nullspace(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    mat, pivots = _rational_rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        denom = math.lcm(*(x.denominator for x in vec))
        ints = [int(x * denom) for x in vec]
        g = math.gcd(*ints)
        basis.append(tuple(x // g for x in ints))
    return basis
