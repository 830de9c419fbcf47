"""Induced subtractive edge labels and graceful-labeling search.

Relabeling the vertices of ``G_f`` by a permutation ``sigma`` gives the edge
``i -> f(i)`` the label ``|sigma(f(i)) - sigma(i)|``.  A labeling is graceful
when these n labels are exactly ``0, 1, ..., n-1``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from gracelab.endograph import (
    EndoFunction,
    _check_same_n,
    has_attractive_fixed_point,
    is_tree_function,
    undirected_adjacency,
)
from gracelab.monoid import Permutation, inverse_table, permutation_table

EXHAUSTIVE_MAX_N = 9
EXTREMA_EXHAUSTIVE_MAX_N = 7
RHO_MAX_N = 12

EdgeLabelSequence = tuple[int, ...]


def edge_labels(f: EndoFunction, sigma: Permutation) -> EdgeLabelSequence:
    _check_same_n(f, sigma)
    s = sigma.values
    return tuple(sorted(abs(s[v] - s[i]) for i, v in enumerate(f.values)))


def is_graceful(f: EndoFunction, sigma: Permutation) -> bool:
    return edge_labels(f, sigma) == tuple(range(f.n))


def star_sequence(n: int, j: int) -> EdgeLabelSequence:
    """Label sequence of the constant function whose center carries label ``j``."""
    if not 0 <= j <= n // 2:
        raise ValueError(f"center label j={j} outside [0, {n // 2}]")
    return tuple(sorted(abs(i - j) for i in range(n)))


# backtracking search


@dataclass
class SearchResult:
    found: bool
    witness: Permutation | None
    nodes_explored: int
    elapsed: float
    solution_count: int | None = None

    def to_record(self, f: EndoFunction) -> dict:
        return {
            "f": list(f.values),
            "witness": None if self.witness is None else list(self.witness.values),
            "labels": None if self.witness is None else list(edge_labels(f, self.witness)),
            "nodes_explored": self.nodes_explored,
        }


def _tree_root(f: EndoFunction) -> int:
    if not (is_tree_function(f) or has_attractive_fixed_point(f)):
        raise ValueError(f"{list(f.values)} is not a functional tree")
    return next(i for i, v in enumerate(f.values) if i == v)


def _label_search(
    n: int,
    adj: list[list[int]],
    root: int,
    counts: list[int],
    *,
    find_all: bool,
    symmetry: bool,
) -> tuple[list[tuple[int, ...]], int]:
    """Assign vertex labels so that tree-edge label ``k`` occurs ``counts[k]`` times.

    Labels are realized largest first: the largest outstanding label ``k`` must
    come from a pair ``(a, a+k)`` sitting on an edge, so we branch over every
    way such a pair can be completed from the current partial labeling.
    """
    if n == 1:
        return [(0,)], 1
    lab = [-1] * n
    vert = [-1] * n
    rem = list(counts)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    root_cap = (n + 1) // 2 if symmetry else n
    solutions: list[tuple[int, ...]] = []
    nodes = 0

    def place(v: int, a: int) -> tuple[list[int], bool]:
        nonlocal nodes
        nodes += 1
        lab[v] = a
        vert[a] = v
        dec = []
        ok = True
        for u in adj[v]:
            b = lab[u]
            if b >= 0:
                k = a - b if a > b else b - a
                rem[k] -= 1
                dec.append(k)
                if rem[k] < 0:
                    ok = False
        return dec, ok

    def unplace(v: int, dec: list[int]) -> None:
        for k in dec:
            rem[k] += 1
        vert[lab[v]] = -1
        lab[v] = -1

    def allowed(v: int, a: int) -> bool:
        return v != root or a < root_cap

    def rec(top: int) -> bool:
        while top > 0 and rem[top] == 0:
            top -= 1
        if top == 0:
            solutions.append(tuple(lab))
            return not find_all
        k = top
        for a in range(n - k):
            b = a + k
            va, vb = vert[a], vert[b]
            if va >= 0 and vb >= 0:
                continue
            if va >= 0 or vb >= 0:
                anchor, free = (va, b) if va >= 0 else (vb, a)
                for u in adj[anchor]:
                    if lab[u] >= 0 or not allowed(u, free):
                        continue
                    dec, ok = place(u, free)
                    if ok and rec(k):
                        return True
                    unplace(u, dec)
                continue
            for u, v in edges:
                if lab[u] >= 0 or lab[v] >= 0:
                    continue
                for x, y in ((u, v), (v, u)):
                    if not (allowed(x, a) and allowed(y, b)):
                        continue
                    dec1, ok1 = place(x, a)
                    dec2, ok2 = place(y, b)
                    if ok1 and ok2 and rec(k):
                        return True
                    unplace(y, dec2)
                    unplace(x, dec1)
        return False

    rec(n - 1)
    if find_all and symmetry:
        solutions += [tuple(n - 1 - x for x in s) for s in solutions]
    if find_all:
        solutions = sorted(set(solutions))
    return solutions, nodes


def _run_search(f: EndoFunction, counts: list[int], exhaustive: bool, symmetry: bool) -> SearchResult:
    start = time.perf_counter()
    root = _tree_root(f)
    adj = undirected_adjacency(f)
    sols, nodes = _label_search(f.n, adj, root, counts, find_all=exhaustive, symmetry=symmetry)
    elapsed = time.perf_counter() - start
    if not sols:
        return SearchResult(False, None, nodes, elapsed, 0 if exhaustive else None)
    # in exhaustive mode the sorted solution list starts with the lex-minimal witness
    witness = Permutation(sols[0])
    return SearchResult(True, witness, nodes, elapsed, len(sols) if exhaustive else None)


def search_graceful(f: EndoFunction, *, exhaustive: bool = False, symmetry: bool = True) -> SearchResult:
    """Look for a graceful relabeling of a functional tree.

    With ``exhaustive`` every graceful permutation is enumerated, the count is
    reported, and the witness is the one with the smallest lex rank.
    """
    counts = [0] + [1] * (f.n - 1)
    return _run_search(f, counts, exhaustive, symmetry)


def realizes_sequence(
    f: EndoFunction, target: EdgeLabelSequence, *, exhaustive: bool = False, symmetry: bool = True
) -> SearchResult:
    """Look for ``sigma`` with ``edge_labels(f, sigma) == sorted(target)``."""
    n = f.n
    _tree_root(f)
    if len(target) != n:
        raise ValueError(f"target has length {len(target)}, expected {n}")
    counts = [0] * n
    for k in target:
        if not 0 <= k < n:
            return SearchResult(False, None, 0, 0.0, 0 if exhaustive else None)
        counts[k] += 1
    # a functional tree has exactly one loop, and only a loop can carry label 0
    if counts[0] != 1:
        return SearchResult(False, None, 0, 0.0, 0 if exhaustive else None)
    counts[0] = 0
    return _run_search(f, counts, exhaustive, symmetry)


# exhaustive statistics over S_n


def _conjugate_all(f: EndoFunction) -> np.ndarray:
    """Row r holds ``sigma f sigma^-1`` for the r-th permutation in lex order."""
    n = f.n
    perms = permutation_table(n)
    inv = inverse_table(n)
    fv = np.asarray(f.values, dtype=np.int64)
    return np.take_along_axis(perms, fv[inv], axis=1)


def _distinct_counts(f: EndoFunction, perms: np.ndarray) -> np.ndarray:
    fv = np.asarray(f.values, dtype=np.int64)
    labels = np.sort(np.abs(perms[:, fv] - perms), axis=1)
    return 1 + np.count_nonzero(np.diff(labels, axis=1), axis=1)


@dataclass(frozen=True)
class LabelExtrema:
    min: int
    max: int
    argmin: Permutation
    argmax: Permutation
    exhaustive: bool


def distinct_label_extrema(
    f: EndoFunction, *, samples: int | None = None, seed: int | None = None
) -> LabelExtrema:
    """Min and max over sigma of the number of distinct induced edge labels.

    Exhaustive over S_n for n <= 7.  Passing ``samples`` draws that many random
    permutations instead, which only bounds the true extrema from inside.
    """
    n = f.n
    if samples is None:
        if n > EXTREMA_EXHAUSTIVE_MAX_N:
            raise ValueError(f"n={n} too large for exhaustive extrema; pass samples=")
        perms = permutation_table(n)
    else:
        rng = np.random.default_rng(seed)
        perms = np.array([rng.permutation(n) for _ in range(samples)], dtype=np.int64).reshape(-1, n)
    counts = _distinct_counts(f, perms)
    lo, hi = int(np.argmin(counts)), int(np.argmax(counts))
    return LabelExtrema(
        min=int(counts[lo]),
        max=int(counts[hi]),
        argmin=Permutation(tuple(perms[lo])),
        argmax=Permutation(tuple(perms[hi])),
        exhaustive=samples is None,
    )


@dataclass(frozen=True)
class GrL:
    """Distinct gracefully labeled conjugates of ``f``, each with its lex-first representative."""

    graphs: tuple[EndoFunction, ...]
    representatives: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def count(self) -> int:
        return len(self.graphs)


def enumerate_grl(f: EndoFunction) -> GrL:
    n = f.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"n={n} too large for exhaustive GrL enumeration")
    conj = _conjugate_all(f)
    labels = np.sort(np.abs(conj - np.arange(n)), axis=1)
    mask = np.all(labels == np.arange(n), axis=1)
    rows = np.nonzero(mask)[0]
    if rows.size == 0:
        return GrL((), ())
    graphs, first = np.unique(conj[rows], axis=0, return_index=True)
    order = np.argsort(rows[first])
    perms = permutation_table(n)
    return GrL(
        graphs=tuple(EndoFunction(tuple(graphs[i])) for i in order),
        representatives=tuple(Permutation(tuple(perms[rows[first[i]]])) for i in order),
    )


@dataclass(frozen=True)
class AutomorphismGroup:
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_group(self) -> bool:
        elems = set(self.elements)
        if not elems:
            return False
        n = self.elements[0].n
        if Permutation.identity(n) not in elems:
            return False
        for a in elems:
            if a.inverse() not in elems:
                return False
            for b in elems:
                if EndoFunction(tuple(a.values[x] for x in b.values)) not in elems:
                    return False
        return True


def automorphisms(f: EndoFunction) -> AutomorphismGroup:
    n = f.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"n={n} too large for brute-force automorphisms")
    conj = _conjugate_all(f)
    rows = np.nonzero(np.all(conj == np.asarray(f.values), axis=1))[0]
    perms = permutation_table(n)
    return AutomorphismGroup(tuple(Permutation(tuple(perms[r])) for r in rows))


# rho: fewest edge deletions leaving a loop-free union of paths


@dataclass(frozen=True)
class RhoStat:
    rho: int
    deleted: tuple[tuple[int, int], ...] = field(default=())


def _is_path_forest(n: int, edges: list[tuple[int, int]]) -> bool:
    deg = [0] * n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if u == v:
            return False
        deg[u] += 1
        deg[v] += 1
        if deg[u] > 2 or deg[v] > 2:
            return False
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def rho(f: EndoFunction) -> RhoStat:
    """Minimum deletions from ``G_f`` (as an undirected multigraph) leaving disjoint paths.

    Loops always go.  A greedy pass gives an upper bound; every smaller deletion
    count is then searched exhaustively, so the answer is exact.
    """
    n = f.n
    if n > RHO_MAX_N:
        raise ValueError(f"n={n} too large for subset minimization")
    edges = f.edges()
    kept: list[tuple[int, int]] = []
    greedy_deleted = []
    for e in edges:
        if _is_path_forest(n, kept + [e]):
            kept.append(e)
        else:
            greedy_deleted.append(e)
    best = tuple(greedy_deleted)
    loops = [e for e in edges if e[0] == e[1]]
    others = [e for e in edges if e[0] != e[1]]
    for k in range(len(loops), len(best)):
        hit = None
        for extra in itertools.combinations(range(len(others)), k - len(loops)):
            drop = set(extra)
            if _is_path_forest(n, [e for i, e in enumerate(others) if i not in drop]):
                hit = tuple(sorted(loops + [others[i] for i in extra]))
                break
        if hit is not None:
            best = hit
            break
    return RhoStat(len(best), tuple(sorted(best)))


def graceful_permutations(f: EndoFunction) -> list[Permutation]:
    """Every graceful sigma for ``f``, by direct scan of S_n (lex order)."""
    n = f.n
    perms = permutation_table(n)
    counts = _distinct_counts(f, perms)
    return [Permutation(tuple(perms[r])) for r in np.nonzero(counts == n)[0]]

