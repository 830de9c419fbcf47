"""Permutations, lexicographic ranking, and the forest/tree composition families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from gracelab.endograph import EndoFunction, _check_same_n, cycles

FAMILIES = ("forest-monoid", "tree-semigroup", "conjugated-forest", "no-odd-permutations")
CENSUS_MAX_N = 7
PERMUTATION_TABLE_MAX_N = 10


@dataclass(frozen=True, eq=False)
class Permutation(EndoFunction):
    """A bijection on Z_n."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(set(self.values)) != self.n:
            raise ValueError(f"{list(self.values)} is not a bijection")

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.values):
            inv[x] = i
        return Permutation(tuple(inv))

    @classmethod
    def complement(cls, n: int) -> Permutation:
        """The involution ``i -> (n-1) - i``."""
        return cls(tuple(range(n - 1, -1, -1)))

    def sign(self) -> int:
        return -1 if (self.n - len(cycles(self))) % 2 else 1


def lex_rank(sigma: Permutation) -> int:
    """Position of ``sigma`` among the n! image sequences in lexicographic order."""
    s = sigma.values
    n = len(s)
    rank = 0
    for k in range(n):
        smaller_after = sum(1 for i in range(k + 1, n) if s[i] < s[k])
        rank += smaller_after * math.factorial(n - 1 - k)
    return rank


def lex_unrank(r: int, n: int) -> Permutation:
    if not 0 <= r < math.factorial(n):
        raise ValueError(f"rank {r} outside [0, {n}!)")
    pool = list(range(n))
    out = []
    for k in range(n):
        q, r = divmod(r, math.factorial(n - 1 - k))
        out.append(pool.pop(q))
    return Permutation(tuple(out))


def conjugate(f: EndoFunction, sigma: Permutation) -> EndoFunction:
    """``sigma o f o sigma^-1``: the same graph with vertex ``i`` renamed ``sigma(i)``."""
    _check_same_n(f, sigma)
    s = sigma.values
    inv = [0] * f.n
    for i, x in enumerate(s):
        inv[x] = i
    fv = f.values
    return EndoFunction(tuple(s[fv[inv[j]]] for j in range(f.n)))


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order, so the k-th item has rank k."""
    for p in itertools.permutations(range(n)):
        yield Permutation(p)


@lru_cache(maxsize=None)
def permutation_table(n: int) -> np.ndarray:
    """All of S_n as an ``(n!, n)`` array, rows in lexicographic order."""
    if n > PERMUTATION_TABLE_MAX_N:
        raise ValueError(f"n={n} too large for a full permutation table")
    table = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def inverse_table(n: int) -> np.ndarray:
    table = permutation_table(n)
    inv = np.empty_like(table)
    rows = np.arange(table.shape[0])[:, None]
    inv[rows, table] = np.arange(n)[None, :]
    inv.setflags(write=False)
    return inv


def enumerate_tree_functions(n: int) -> Iterator[EndoFunction]:
    """Every ``t`` with ``t(0) = 0`` and ``t(i) < i``; (n-1)! of them, mixed-radix order."""
    if n < 1:
        raise ValueError("n must be positive")
    choices = [range(1)] + [range(i) for i in range(1, n)]
    for vals in itertools.product(*choices):
        yield EndoFunction(vals)


def enumerate_forest_functions(n: int) -> Iterator[EndoFunction]:
    """Every ``h`` with ``h(i) <= i``; n! of them, mixed-radix order."""
    if n < 1:
        raise ValueError("n must be positive")
    for vals in itertools.product(*[range(i + 1) for i in range(n)]):
        yield EndoFunction(vals)


def enumerate_all_functions(n: int) -> Iterator[EndoFunction]:
    for vals in itertools.product(range(n), repeat=n):
        yield EndoFunction(vals)


# closure checks over encoded function tables


def _encode(rows: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(n, dtype=np.int64)
    return rows @ weights


def _as_table(funcs, n: int) -> np.ndarray:
    return np.array([f.values for f in funcs], dtype=np.int64).reshape(-1, n)


def _conjugate_rows(rows: np.ndarray, sigma: tuple[int, ...]) -> np.ndarray:
    s = np.asarray(sigma, dtype=np.int64)
    inv = np.argsort(s)
    return s[rows[:, inv]]


@dataclass(frozen=True)
class ClosureResult:
    family: str
    n: int
    size: int
    closed: bool
    has_identity: bool
    witness: tuple[EndoFunction, EndoFunction] | None = None

    def __bool__(self) -> bool:
        return self.closed


def _closure_witness(rows: np.ndarray, n: int) -> tuple[int, int] | None:
    codes = np.sort(_encode(rows, n))
    for a, f in enumerate(rows):
        comp = _encode(f[rows], n)
        pos = np.searchsorted(codes, comp)
        pos[pos == len(codes)] = 0
        bad = np.nonzero(codes[pos] != comp)[0]
        if bad.size:
            return a, int(bad[0])
    return None


def family_members(family: str, n: int, sigma: Permutation | None = None) -> np.ndarray:
    if family == "forest-monoid":
        return _as_table(enumerate_forest_functions(n), n)
    if family == "tree-semigroup":
        return _as_table(enumerate_tree_functions(n), n)
    if family == "conjugated-forest":
        if sigma is None or sigma.n != n:
            raise ValueError("conjugated-forest needs a permutation of matching size")
        return _conjugate_rows(_as_table(enumerate_forest_functions(n), n), sigma.values)
    if family == "no-odd-permutations":
        if n > 5:
            raise ValueError("no-odd-permutations closure is limited to n <= 5")
        keep = []
        for f in enumerate_all_functions(n):
            if len(set(f.values)) == n and Permutation(f.values).sign() < 0:
                continue
            keep.append(f.values)
        return np.array(keep, dtype=np.int64).reshape(-1, n)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def verify_closure(family: str, n: int, sigma: Permutation | None = None) -> ClosureResult:
    """Check that a family is closed under composition (and holds id if it claims to be a monoid)."""
    rows = family_members(family, n, sigma)
    has_id = bool(np.any(np.all(rows == np.arange(n), axis=1)))
    hit = _closure_witness(rows, n)
    witness = None
    if hit is not None:
        witness = (EndoFunction(rows[hit[0]]), EndoFunction(rows[hit[1]]))
    closed = hit is None and (family == "tree-semigroup" or has_id)
    return ClosureResult(family, n, len(rows), closed, has_id, witness)


@dataclass
class MonoidCensus:
    n: int
    forest_monoid_size: int
    tree_semigroup_size: int
    union_count: int
    cayley_formula: int
    closure_verified: dict[str, bool | None] = field(default_factory=dict)
    lower_bound: dict | None = None

    @property
    def match(self) -> bool:
        return self.union_count == self.cayley_formula

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "forest_monoid_size": self.forest_monoid_size,
            "tree_semigroup_size": self.tree_semigroup_size,
            "union_count": self.union_count,
            "cayley_formula": self.cayley_formula,
            "match": self.match,
            "closure_verified": self.closure_verified,
            "lower_bound": self.lower_bound,
        }


def union_count(n: int) -> int:
    """|S_n  union  (union over sigma of sigma.Forest.sigma^-1)|, by materializing every conjugate."""
    forest = _as_table(enumerate_forest_functions(n), n)
    seen = np.zeros(n**n, dtype=bool)
    perms = permutation_table(n)
    seen[_encode(perms, n)] = True
    for s in perms:
        seen[_encode(_conjugate_rows(forest, tuple(s)), n)] = True
    return int(seen.sum())


def _lower_bound_families(n: int) -> dict:
    """Closed families of size (n-1)!+1 from three constructions: conjugated trees, stabilizers, fixed-point forests."""
    target = math.factorial(n - 1) + 1
    ident = np.arange(n, dtype=np.int64)[None, :]
    trees = _as_table(enumerate_tree_functions(n), n)
    found: dict[str, set[bytes]] = {"conjugated_trees": set(), "stabilizers": set(), "fixed_point_forests": set()}
    rejected = {"wrong_size": 0, "not_closed": 0}

    def consider(kind: str, rows: np.ndarray) -> None:
        codes = np.unique(_encode(rows, n))
        if len(codes) != target:
            rejected["wrong_size"] += 1
            return
        if _closure_witness(rows, n) is not None:
            rejected["not_closed"] += 1
            return
        found[kind].add(codes.tobytes())

    for s in permutation_table(n):
        consider("conjugated_trees", np.vstack([ident, _conjugate_rows(trees, tuple(s))]))
    perms = permutation_table(n)
    for j in range(n):
        stab = perms[perms[:, j] == j]
        consider("stabilizers", np.vstack([stab, np.full((1, n), j, dtype=np.int64)]))
        choices = [range(i + 1) if i != j else range(j, j + 1) for i in range(n)]
        base = np.array(list(itertools.product(*choices)), dtype=np.int64)
        for s in stab:
            conj = _conjugate_rows(base, tuple(s))
            consider("fixed_point_forests", np.vstack([conj, np.full((1, n), j, dtype=np.int64)]))
    union: set[bytes] = set().union(*found.values())
    claimed = 2 * math.factorial(n) + n
    return {
        "target_size": target,
        "claimed": claimed,
        "distinct_closed": len(union),
        "by_construction": {k: len(v) for k, v in found.items()},
        "rejected": rejected,
        "met": len(union) >= claimed,
    }


def census(n: int) -> MonoidCensus:
    if not 2 <= n <= CENSUS_MAX_N:
        raise ValueError(f"census supports 2 <= n <= {CENSUS_MAX_N}, got {n}")
    closure: dict[str, bool | None] = {
        "forest-monoid": verify_closure("forest-monoid", n).closed,
        "tree-semigroup": verify_closure("tree-semigroup", n).closed,
        "no-odd-permutations": verify_closure("no-odd-permutations", n).closed if n <= 5 else None,
    }
    return MonoidCensus(
        n=n,
        forest_monoid_size=sum(1 for _ in enumerate_forest_functions(n)),
        tree_semigroup_size=sum(1 for _ in enumerate_tree_functions(n)),
        union_count=union_count(n),
        cayley_formula=(n + 1) ** (n - 1) + math.factorial(n) - 1,
        closure_verified=closure,
        lower_bound=_lower_bound_families(n) if 3 < n <= 5 else None,
    )
