"""Exhaustive verification suites and their parallel runner.

Each suite turns an ``n`` into a canonical list of small picklable instances
and a per-instance check that returns ``None`` on success or a failure record.
Workers only ever see disjoint slices of the instance list and results are
reassembled in instance order, so reports do not depend on the job count.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from gracelab import certificate, labeling, monoid
from gracelab.endograph import EndoFunction, compose, iterate, summarize
from gracelab.monoid import Permutation

Record = dict


@dataclass
class VerificationReport:
    suite: str
    n_range: tuple[int, int]
    instances_checked: int
    failures: list[Record] = field(default_factory=list)
    per_n: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, include_elapsed: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "n_range": list(self.n_range),
            "instances_checked": self.instances_checked,
            "per_n": {str(k): v for k, v in self.per_n.items()},
            "passed": self.passed,
            "failure_count": len(self.failures),
            "failures": self.failures,
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> VerificationReport:
        return cls(
            suite=obj["suite"],
            n_range=tuple(obj["n_range"]),
            instances_checked=obj["instances_checked"],
            failures=list(obj["failures"]),
            per_n={int(k): v for k, v in obj.get("per_n", {}).items()},
            elapsed=obj.get("elapsed", 0.0),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lo, hi = self.n_range
        return (
            f"{status} {self.suite} n={lo}..{hi}: {self.instances_checked} instances, "
            f"{len(self.failures)} failures ({self.elapsed:.2f}s)"
        )


# per-instance checks; payloads are tuples of ints so they pickle cheaply


def _check_glc(payload) -> Record | None:
    f = EndoFunction(payload)
    res = labeling.search_graceful(f)
    if res.found and labeling.is_graceful(f, res.witness):
        return None
    return {"f": list(payload), "reason": "no graceful labeling found", **res.to_record(f)}


def _check_strong_glc(payload) -> Record | None:
    values, j = payload
    f = EndoFunction(values)
    target = labeling.star_sequence(f.n, j)
    res = labeling.realizes_sequence(f, target)
    if res.found and labeling.edge_labels(f, res.witness) == target:
        return None
    return {"f": list(values), "j": j, "target": list(target), "reason": "star sequence not realized"}


def _check_composition(payload) -> Record | None:
    fv, gv = payload
    chk = certificate.composition_lemma_check(EndoFunction(fv), EndoFunction(gv))
    return None if chk.holds else chk.to_record()


def _check_strong_composition(payload) -> Record | None:
    fv, gv, ell = payload
    chk = certificate.strong_composition_check(EndoFunction(fv), EndoFunction(gv), ell)
    return None if chk.holds else chk.to_record()


def _check_center_sums(payload) -> Record | None:
    fv, gv, t = payload
    chk = certificate.center_sums_check(EndoFunction(fv), EndoFunction(gv), t)
    return None if chk.match else chk.to_json()


def _check_bounds(payload) -> Record | None:
    f = EndoFunction(payload)
    n = f.n
    ext = labeling.distinct_label_extrema(f)
    r = labeling.rho(f)
    loops = f.loops()
    lower_max = n - r.rho + max(0, loops - 1)
    violated = []
    if not 1 <= ext.min:
        violated.append("min>=1")
    if not ext.min <= r.rho:
        violated.append("min<=rho")
    if not lower_max <= ext.max:
        violated.append("n-rho+max(0,loops-1)<=max")
    if not ext.max <= n:
        violated.append("max<=n")
    if not violated:
        return None
    return {
        "f": list(payload),
        "rho": r.rho,
        "deleted": [list(e) for e in r.deleted],
        "loops": loops,
        "min": ext.min,
        "argmin": list(ext.argmin.values),
        "max": ext.max,
        "argmax": list(ext.argmax.values),
        "violated": violated,
    }


def _check_component_identity(payload) -> Record | None:
    f = EndoFunction(payload)
    o = summarize(f).order_lcm
    h = iterate(f, o)
    lhs = f.n + 1 - summarize(h).component_count
    ext = labeling.distinct_label_extrema(h)
    if lhs == ext.max:
        return None
    return {"f": list(payload), "order_lcm": o, "f_power": list(h.values), "lhs": lhs,
            "max": ext.max, "argmax": list(ext.argmax.values)}


def _check_lex(payload) -> Record | None:
    r, perm = payload
    sigma = Permutation(perm)
    got_rank = monoid.lex_rank(sigma)
    got_perm = monoid.lex_unrank(r, len(perm)).values
    if got_rank == r and got_perm == tuple(perm):
        return None
    return {"rank": r, "perm": list(perm), "lex_rank": got_rank, "lex_unrank": list(got_perm)}


def _check_expansion(payload) -> Record | None:
    f = EndoFunction(payload)
    for sigma in labeling.graceful_permutations(f):
        e = certificate.extract_expansion(f, sigma)
        if not certificate.verify_expansion(e, f):
            return {"f": list(payload), "sigma": list(sigma.values), **e.to_json()}
    return None


def _check_grl(payload) -> Record | None:
    f = EndoFunction(payload)
    count = labeling.enumerate_grl(f).count
    return None if count == 2 else {"f": list(payload), "grl": count, "expected": 2}


def _check_monoid(payload) -> Record | None:
    kind, n = payload[0], payload[1]
    if kind == "census":
        c = monoid.census(n)
        ok = (
            c.match
            and c.forest_monoid_size == math.factorial(n)
            and c.tree_semigroup_size == math.factorial(n - 1)
        )
        return None if ok else {"check": "census", **c.to_json()}
    if kind == "closure":
        family = payload[2]
        res = monoid.verify_closure(family, n)
        if res.closed:
            return None
        return {
            "check": "closure",
            "family": family,
            "n": n,
            "has_identity": res.has_identity,
            "witness": None if res.witness is None else [list(w.values) for w in res.witness],
        }
    if kind == "conjugated-closure":
        sigma = Permutation(payload[2])
        res = monoid.verify_closure("conjugated-forest", n, sigma)
        if res.closed:
            return None
        return {"check": "conjugated-closure", "n": n, "sigma": list(sigma.values)}
    if kind == "corollary":
        trees = list(monoid.enumerate_tree_functions(n))
        zero = EndoFunction.constant(n, 0)
        for combo in itertools.product(trees, repeat=max(n - 1, 1)):
            h = functools.reduce(compose, combo)
            if h != zero:
                return {"check": "corollary", "n": n, "factors": [list(t.values) for t in combo],
                        "composite": list(h.values)}
        return None
    raise ValueError(f"unknown monoid check {kind!r}")


# instance generators


def _trees(n: int) -> list[tuple[int, ...]]:
    return [t.values for t in monoid.enumerate_tree_functions(n)]


def _all_functions(n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(n), repeat=n))


def _monoid_instances(n: int, opts: dict) -> list:
    items: list = [("census", n)]
    items += [("closure", n, fam) for fam in ("forest-monoid", "tree-semigroup")]
    if n <= 4:
        items.append(("closure", n, "no-odd-permutations"))
    if n <= 5:
        items += [("conjugated-closure", n, p) for p in itertools.permutations(range(n))]
    if n <= 4:
        items.append(("corollary", n))
    return items


def _strong_composition_instances(n: int, opts: dict) -> list:
    ells = [opts["ell"]] if opts.get("ell") is not None else list(certificate.strong_ell_range(n))
    trees = _trees(n)
    return [(f, g, ell) for ell in ells for f in trees for g in trees]


@dataclass(frozen=True)
class Suite:
    name: str
    instances: Callable[[int, dict], list]
    check: Callable
    default: tuple[int, int]
    limits: tuple[int, int]


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("glc", lambda n, o: _trees(n), _check_glc, (1, 8), (1, 10)),
        Suite("strong-glc", lambda n, o: [(t, j) for t in _trees(n) for j in range(1, n // 2 + 1)],
              _check_strong_glc, (2, 8), (2, 10)),
        Suite("composition", lambda n, o: [(f, g) for f in _trees(n) for g in _trees(n)],
              _check_composition, (2, 5), (2, 7)),
        Suite("strong-composition", _strong_composition_instances, _check_strong_composition, (5, 5), (4, 6)),
        Suite("center-sums", lambda n, o: [(f, g, t) for f in _trees(n) for g in _trees(n) for t in (0, 1)],
              _check_center_sums, (2, 5), (2, 6)),
        Suite("monoid", _monoid_instances, _check_monoid, (2, 5), (2, 7)),
        Suite("bounds", lambda n, o: _all_functions(n), _check_bounds, (2, 5), (1, 6)),
        Suite("theorem6", lambda n, o: _all_functions(n), _check_component_identity, (2, 5), (1, 6)),
        Suite("lex", lambda n, o: list(enumerate(itertools.permutations(range(n)))), _check_lex, (1, 7), (1, 9)),
        Suite("expansion", lambda n, o: _trees(n), _check_expansion, (1, 6), (1, 7)),
        Suite("grl", lambda n, o: [(0,) * n], _check_grl, (2, 7), (2, 9)),
    ]
}

ALL_ORDER = list(SUITES)


def default_jobs() -> int:
    env = os.environ.get("GRACELAB_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _check_chunk(check: Callable, chunk: list) -> list[Record | None]:
    return [check(p) for p in chunk]


def _map_ordered(check: Callable, items: list, jobs: int) -> Iterable[Record | None]:
    if jobs <= 1 or len(items) < 2:
        return [check(p) for p in items]
    size = max(1, math.ceil(len(items) / (jobs * 8)))
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(functools.partial(_check_chunk, check), chunks)
        return [r for part in parts for r in part]


def resolve_range(suite: str, n: int | None = None, n_max: int | None = None) -> tuple[int, int]:
    s = SUITES[suite]
    if n is not None and n_max is not None:
        lo, hi = n, n_max
    elif n is not None:
        lo = hi = n
    elif n_max is not None:
        lo, hi = s.default[0], n_max
    else:
        lo, hi = s.default
    if lo > hi or lo < s.limits[0] or hi > s.limits[1]:
        raise ValueError(f"suite {suite} supports {s.limits[0]} <= n <= {s.limits[1]}, got {lo}..{hi}")
    return lo, hi


def run_suite(
    suite: str,
    n: int | None = None,
    n_max: int | None = None,
    *,
    jobs: int = 1,
    ell: int | None = None,
) -> VerificationReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    s = SUITES[suite]
    lo, hi = resolve_range(suite, n, n_max)
    opts = {"ell": ell}
    start = time.perf_counter()
    report = VerificationReport(suite, (lo, hi), 0)
    for k in range(lo, hi + 1):
        items = s.instances(k, opts)
        results = _map_ordered(s.check, items, jobs)
        report.per_n[k] = len(items)
        report.instances_checked += len(items)
        report.failures += [r for r in results if r is not None]
    report.elapsed = time.perf_counter() - start
    return report
