"""Exact evaluation of the Vandermonde and Eisenstein certificate sums.

All arithmetic here is on Python integers.  The Eisenstein modulus
``|a + b w + c w^2|^2`` with ``w`` a primitive cube root of unity is replaced
by its closed form ``a^2 + b^2 + c^2 - ab - bc - ca``, so nothing is rounded.

Evaluation points use unit scale and zero offset: ``d[i] = h(i) - i`` for the
relabeled function ``h``.  Edge labels do not depend on the offset and scale
linearly, so zero/nonzero questions are unaffected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from gracelab.endograph import EndoFunction, _check_same_n, compose, is_tree_function
from gracelab.labeling import automorphisms, distinct_label_extrema, enumerate_grl, is_graceful
from gracelab.monoid import Permutation

FSUM_MAX_N = 6


def vander_det(d: Sequence[int]) -> int:
    """``det [d[i]^(2j)]`` via the product of differences of squares."""
    sq = [x * x for x in d]
    out = 1
    for i, j in itertools.combinations(range(len(sq)), 2):
        out *= sq[j] - sq[i]
        if out == 0:
            return 0
    return out


def vandermonde_product(n: int) -> int:
    """``prod_{i<j} (j^2 - i^2)``: the determinant for labels 0..n-1 in order."""
    return vander_det(range(n))


def _require_trees(*fs: EndoFunction) -> None:
    for f in fs:
        if not is_tree_function(f):
            raise ValueError(f"{list(f.values)} is not a tree function")


@dataclass(frozen=True)
class EvaluationPoint:
    d: tuple[int, ...]
    sigma: Permutation
    t: int


def _relabeled(f: EndoFunction, g: EndoFunction, t: int) -> EndoFunction:
    if t not in (0, 1):
        raise ValueError("t must be 0 or 1")
    return compose(f, g) if t else f


def _differences(h: EndoFunction, sigma: Sequence[int]) -> tuple[int, ...]:
    n = h.n
    inv = [0] * n
    for i, x in enumerate(sigma):
        inv[x] = i
    hv = h.values
    return tuple(sigma[hv[inv[i]]] - i for i in range(n))


def evaluation_points(f: EndoFunction, g: EndoFunction, sigma: Permutation, t: int) -> EvaluationPoint:
    _check_same_n(f, g)
    _check_same_n(f, sigma)
    _require_trees(f, g)
    h = _relabeled(f, g, t)
    return EvaluationPoint(_differences(h, sigma.values), sigma, t)


def _fsum_of(h: EndoFunction) -> int:
    if h.n > FSUM_MAX_N:
        raise ValueError(f"n={h.n} too large for a sum over S_n")
    total = 0
    for s in itertools.permutations(range(h.n)):
        v = vander_det(_differences(h, s))
        total += v * v
    return total


def F_sum(f: EndoFunction, g: EndoFunction, t: int) -> int:
    """Sum over S_n of the squared Vandermonde determinant at the prescribed points."""
    _check_same_n(f, g)
    _require_trees(f, g)
    return _fsum_of(_relabeled(f, g, t))


@dataclass(frozen=True)
class CenterSums:
    f: EndoFunction
    g: EndoFunction
    t: int
    lhs: int
    grl: int
    aut: int
    rhs: int

    @property
    def match(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self) -> bool:
        return self.match

    def to_json(self) -> dict:
        return {
            "n": self.f.n,
            "f": list(self.f.values),
            "g": list(self.g.values),
            "t": self.t,
            "F": str(self.lhs),
            "grl": self.grl,
            "aut": self.aut,
            "rhs": str(self.rhs),
            "match": self.match,
        }


def center_sums_check(f: EndoFunction, g: EndoFunction, t: int) -> CenterSums:
    """Compare the certificate sum with |GrL| * |Aut| * prod (j^2 - i^2)^2."""
    lhs = F_sum(f, g, t)
    h = _relabeled(f, g, t)
    grl = enumerate_grl(h).count
    aut = automorphisms(h).order
    rhs = grl * aut * vandermonde_product(h.n) ** 2
    return CenterSums(f, g, t, lhs, grl, aut, rhs)


@dataclass(frozen=True)
class CompositionCheck:
    f: EndoFunction
    g: EndoFunction
    max_fg: int
    max_f: int

    @property
    def holds(self) -> bool:
        return self.max_fg <= self.max_f

    def __bool__(self) -> bool:
        return self.holds

    def to_record(self) -> dict:
        return {
            "f": list(self.f.values),
            "g": list(self.g.values),
            "max_fg": self.max_fg,
            "max_f": self.max_f,
            "holds": self.holds,
        }


def composition_lemma_check(f: EndoFunction, g: EndoFunction) -> CompositionCheck:
    """Does composing with ``g`` never raise the best achievable distinct-label count?"""
    _check_same_n(f, g)
    _require_trees(f, g)
    return CompositionCheck(
        f, g, distinct_label_extrema(compose(f, g)).max, distinct_label_extrema(f).max
    )


# graceful expansion


@dataclass(frozen=True)
class GracefulExpansion:
    gamma: Permutation
    sign: tuple[int, ...]
    sigma_gamma: Permutation

    @property
    def n(self) -> int:
        return self.gamma.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "gamma": list(self.gamma.values),
            "sign": list(self.sign),
            "sigma_gamma": list(self.sigma_gamma.values),
        }


def extract_expansion(f: EndoFunction, sigma: Permutation) -> GracefulExpansion:
    """Read off ``gamma(j) = |h(j) - j|`` and its signs for ``h = sigma f sigma^-1``."""
    if not is_graceful(f, sigma):
        raise ValueError(f"sigma={list(sigma.values)} is not graceful for f={list(f.values)}")
    d = _differences(f, sigma.values)
    gamma = Permutation(tuple(abs(x) for x in d))
    sign = tuple((x > 0) - (x < 0) for x in d)
    return GracefulExpansion(gamma, sign, sigma)


def verify_expansion(e: GracefulExpansion, f: EndoFunction) -> bool:
    """Rebuild ``f`` from the expansion for both t = 0 and t = 1."""
    n = e.n
    if f.n != n or len(e.sign) != n:
        return False
    s = e.sigma_gamma.values
    inv = e.sigma_gamma.inverse().values
    gamma = e.gamma.values
    for t in (0, 1):

        def phi(x: int) -> int:
            return n - 1 - x if t else x

        for i in range(n):
            j = s[i]
            inner = phi(j) + (-1) ** t * e.sign[j] * gamma[j]
            if not 0 <= inner < n:
                return False
            if inv[phi(inner)] != f.values[i]:
                return False
    return True


# Eisenstein-weighted certificate


def eisenstein_norm_sq(a: int, b: int, c: int) -> int:
    """``|a + b w + c w^2|^2`` for ``w = (sqrt(-3) - 1) / 2``."""
    return a * a + b * b + c * c - a * b - b * c - c * a


def strong_ell_range(n: int) -> range:
    """Admissible ``ell``: ``1 <= ell < ceil((n-1)/2)``; empty for n <= 3."""
    return range(1, -(-(n - 1) // 2))


def _strong_term(d: Sequence[int], n: int, ell: int) -> int:
    sq = [x * x for x in d]
    out = 1
    for s in range(n):
        for t in range(n - ell, n):
            v = sq[s] - t * t
            out *= v * v
            if out == 0:
                return 0
    for i, j in itertools.combinations(range(n), 2):
        for k in range(ell + 1, n - ell):
            out *= eisenstein_norm_sq(sq[j], sq[i], k * k)
            if out == 0:
                return 0
    for u, v, w in itertools.combinations(range(n), 3):
        out *= eisenstein_norm_sq(sq[w], sq[v], sq[u])
        if out == 0:
            return 0
    return out


@lru_cache(maxsize=4096)
def _strong_certificate_cached(values: tuple[int, ...], ell: int) -> int:
    h = EndoFunction(values)
    n = h.n
    return sum(_strong_term(_differences(h, s), n, ell) for s in itertools.permutations(range(n)))


def strong_certificate(f: EndoFunction, ell: int) -> int:
    """Sum over S_n of the three-factor product attached to ``sigma f sigma^-1``.

    A summand vanishes when the relabeling uses some label ``>= n - ell``,
    repeats a label in ``[ell+1, n-ell)``, or uses any label three times.
    """
    _require_trees(f)
    n = f.n
    valid = strong_ell_range(n)
    if ell not in valid:
        if not valid:
            raise ValueError(f"no admissible ell for n={n}: the range 1 <= ell < ceil((n-1)/2) is empty")
        raise ValueError(f"ell={ell} outside [{valid.start}, {valid.stop})")
    if n > FSUM_MAX_N:
        raise ValueError(f"n={n} too large for a sum over S_n")
    return _strong_certificate_cached(f.values, ell)


@dataclass(frozen=True)
class StrongCompositionCheck:
    f: EndoFunction
    g: EndoFunction
    ell: int
    cert_f: int
    cert_fg: int

    @property
    def holds(self) -> bool:
        return self.cert_f != 0 or self.cert_fg == 0

    def __bool__(self) -> bool:
        return self.holds

    def to_record(self) -> dict:
        return {
            "f": list(self.f.values),
            "g": list(self.g.values),
            "ell": self.ell,
            "cert_f": str(self.cert_f),
            "cert_fg": str(self.cert_fg),
            "holds": self.holds,
        }


def strong_composition_check(f: EndoFunction, g: EndoFunction, ell: int) -> StrongCompositionCheck:
    """A vanishing certificate for ``f`` must force a vanishing one for ``f o g``."""
    _check_same_n(f, g)
    _require_trees(f, g)
    return StrongCompositionCheck(
        f, g, ell, strong_certificate(f, ell), strong_certificate(compose(f, g), ell)
    )

