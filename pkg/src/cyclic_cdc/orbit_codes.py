"""Union codes assembled from orbit generators: exact size and minimum
distance verification, closed-form size formulas for the odd/even tower
constructions and their best known competitors, sphere-packing and Johnson
bounds, rates, and the n = 4k ratio to the common bound value.

All formula evaluation is exact big-integer arithmetic; divisions assert a
zero remainder.  Floating point appears only in rate reporting.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import DimensionMismatch, InexactDivision, Infeasible
from .field_tower import FieldTower, tower_from_spec
from .sidon_constructions import cross_pair_ok, is_sidon, max_rep_index
from .subspace_linalg import (
    Subspace,
    orbit_size,
    rank_rows,
    subspace_from_json,
)

DEFAULT_SCAN_BUDGET = 1 << 26


@dataclass(frozen=True)
class UnionCode:
    """A union of cyclic orbit codes, given by one generator per orbit."""

    tower: FieldTower = field(repr=False)
    generators: tuple[Subspace, ...]
    claimed_size: int
    claimed_min_distance: int
    provenance: str = ""

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    def to_json(self) -> dict:
        return {
            "tower": self.tower.spec_dict(),
            "generators": [g.to_json() for g in self.generators],
            "claimed_size": str(self.claimed_size),
            "claimed_min_distance": self.claimed_min_distance,
            "provenance": self.provenance,
        }


def code_from_json(obj: dict) -> UnionCode:
    tower = tower_from_spec(obj["tower"])
    gens = tuple(subspace_from_json(tower, g) for g in obj["generators"])
    return UnionCode(
        tower=tower,
        generators=gens,
        claimed_size=int(obj["claimed_size"]),
        claimed_min_distance=int(obj["claimed_min_distance"]),
        provenance=obj.get("provenance", ""),
    )


def build_union(tower: FieldTower, generators: Iterable[Subspace], provenance: str = "") -> UnionCode:
    """Union code with claimed size = sum of orbit sizes (disjointness is
    claimed here and established by verification)."""
    gens = tuple(generators)
    if not gens:
        raise DimensionMismatch("no generators")
    k = gens[0].dim
    if any(g.dim != k for g in gens):
        raise DimensionMismatch("generators of mixed dimension")
    size = sum(orbit_size(g) for g in gens)
    return UnionCode(tower, gens, size, 2 * k - 2, provenance)


# -- exact and criterion-based verification -----------------------------------

def _exact_scan(code: UnionCode, budget: int, map_fn: Callable = map) -> tuple[int, list]:
    """Minimum distance over all generator pairs and all projective shifts,
    plus any orbit collisions discovered (i < j with U_i = alpha*U_j)."""
    tower = code.tower
    gens = code.generators
    k = code.dim
    n_alpha = (tower.top.order - 1) // (tower.q - 1)
    pairs = [(i, j) for i in range(len(gens)) for j in range(i, len(gens))]
    if len(pairs) * n_alpha > budget:
        raise Infeasible(
            f"{len(pairs)} pairs x {n_alpha} shifts exceeds budget {budget}"
        )
    alphas = list(tower.projective_reps("top"))
    mul = tower.top.mul
    rank = rank_rows

    def scan_pair(pair):
        i, j = pair
        rows_i = gens[i].rows
        rows_j = gens[j].rows
        best = 2 * k
        collision = False
        for alpha in alphas:
            stacked = list(rows_i) + [mul(alpha, r) for r in rows_j]
            inter = 2 * k - rank(tower, stacked)
            if inter == k:
                if i != j:
                    collision = True
                continue
            d = 2 * k - 2 * inter
            if d < best:
                best = d
        return best, (pair if collision else None)

    best = 2 * k
    collisions = []
    for d, coll in map_fn(scan_pair, pairs):
        if d < best:
            best = d
        if coll is not None:
            collisions.append(coll)
    return best, collisions


def verify_min_distance(
    code: UnionCode,
    mode: str = "exact",
    budget: int = DEFAULT_SCAN_BUDGET,
    map_fn: Callable = map,
) -> int:
    """Exact minimum distance of the union.

    exact: exhaustive scan over generator pairs and projective shifts.
    criterion: 2k-2 if every generator is Sidon and every pair passes the
    cross test; otherwise falls back to the exact scan.
    """
    if mode == "criterion":
        gens = code.generators
        pair_cost = sum(1 for _ in itertools.combinations(gens, 2))
        reps = (code.tower.mid.order - 1) // (code.tower.q - 1)
        if pair_cost * reps * reps > budget:
            raise Infeasible("criterion pair scan exceeds budget")
        if all(map_fn(is_sidon, gens)) and all(
            cross_pair_ok(a, b) for a, b in itertools.combinations(gens, 2)
        ):
            return 2 * code.dim - 2
        mode = "exact"
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    d, _ = _exact_scan(code, budget, map_fn)
    return d


def verify_code(
    code: UnionCode,
    mode: str = "exact",
    budget: int = DEFAULT_SCAN_BUDGET,
    sample_pairs: int | None = None,
    seed: int = 0,
    map_fn: Callable = map,
) -> dict:
    """Full claim verification: size by orbit accounting plus disjointness,
    distance per the chosen mode.  Returns a JSON-serializable report."""
    gens = code.generators
    k = code.dim
    report: dict = {"mode": mode, "n_generators": len(gens)}
    t0 = time.perf_counter()
    orbit_sizes = [orbit_size(g) for g in gens]
    report["orbit_sizes_distinct"] = sorted(set(orbit_sizes))
    report["time_orbit_sizes"] = round(time.perf_counter() - t0, 3)

    disjoint = True
    if mode == "criterion":
        t0 = time.perf_counter()
        sidon_fail = [i for i, g in enumerate(gens) if not is_sidon(g)]
        report["sidon_failures"] = sidon_fail
        report["time_sidon"] = round(time.perf_counter() - t0, 3)
        all_pairs = list(itertools.combinations(range(len(gens)), 2))
        if sample_pairs is not None and sample_pairs < len(all_pairs):
            rng = random.Random(seed)
            checked = rng.sample(all_pairs, sample_pairs)
            report["pairs_checked"] = f"sampled {sample_pairs} of {len(all_pairs)}"
        else:
            checked = all_pairs
            report["pairs_checked"] = f"all {len(all_pairs)}"
        t0 = time.perf_counter()
        cross_fail = [
            (i, j) for i, j in checked if not cross_pair_ok(gens[i], gens[j])
        ]
        report["cross_failures"] = cross_fail
        report["time_cross"] = round(time.perf_counter() - t0, 3)
        if sidon_fail or cross_fail:
            report["verified_min_distance"] = None
            disjoint = False
        else:
            report["verified_min_distance"] = 2 * k - 2
    else:
        t0 = time.perf_counter()
        d, collisions = _exact_scan(code, budget, map_fn)
        report["verified_min_distance"] = d
        report["orbit_collisions"] = collisions
        report["time_exact_scan"] = round(time.perf_counter() - t0, 3)
        disjoint = not collisions

    verified_size = sum(orbit_sizes) if disjoint else None
    report["verified_size"] = None if verified_size is None else str(verified_size)
    report["size_claim_ok"] = verified_size == code.claimed_size
    report["distance_claim_ok"] = (
        report["verified_min_distance"] == code.claimed_min_distance
    )
    report["ok"] = bool(report["size_claim_ok"] and report["distance_claim_ok"])
    return report


# -- closed-form sizes ----------------------------------------------------------

def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise InexactDivision(f"{num} not divisible by {den}")
    return num // den


def construction_size(q: int, k: int, r: int, parity: str) -> int:
    """Size of the union code built over the odd (n = (2r+1)k) or even
    (n = 2rk) tower, as a closed form."""
    if r < 2:
        raise InexactDivision("r must be >= 2")
    qk = q ** k - 1
    if parity == "odd":
        n = (2 * r + 1) * k
        p0 = max_rep_index(r, "odd")
        s = sum(r // i - r // (i + 1) for i in range(2, p0 + 1))
        num = ((r + s) * qk * (q - 1) + r) * qk ** (r - 1) * (q ** n - 1)
    elif parity == "even":
        n = 2 * r * k
        p0 = max_rep_index(r, "even")
        s = sum(-(-r // i) - r // (i + 1) - 1 for i in range(2, p0 + 1))
        num = (
            ((r - 1 + s) * qk * (q - 1) + (r - 1))
            * qk ** (r - 2)
            * ((q ** k - 2) // 2)
            * (q ** n - 1)
        )
    else:
        raise ValueError(f"unknown parity {parity!r}")
    return _exact_div(num, q - 1)


def best_known_size(q: int, k: int, r: int, parity: str) -> int:
    """Best previously known size for the same parameters."""
    qk = q ** k - 1
    if parity == "odd":
        n = (2 * r + 1) * k
        return r * (qk ** r * (q ** n - 1) + _exact_div(qk ** (r - 1) * (q ** n - 1), q - 1))
    if parity == "even":
        n = 2 * r * k
        return ((q ** k - 2) // 2) * (r - 1) * qk ** (r - 1) * (q ** n - 1)
    raise ValueError(f"unknown parity {parity!r}")


def known_size_5k(q: int, k: int) -> int:
    """Competing n = 5k construction size."""
    n = 5 * k
    qk = q ** k - 1
    return _exact_div(qk * (3 * q ** k - 2) * (q ** n - 1), q - 1)


def size_difference(q: int, k: int, r: int, parity: str) -> int:
    """Closed-form difference (ours minus best known) for the same row."""
    qk = q ** k - 1
    if parity == "odd":
        n = (2 * r + 1) * k
        p0 = max_rep_index(r, "odd")
        s = sum(r // i - r // (i + 1) for i in range(2, p0 + 1))
        return s * qk ** r * (q ** n - 1)
    if parity == "even":
        n = 2 * r * k
        p0 = max_rep_index(r, "even")
        s = sum(-(-r // i) - r // (i + 1) - 1 for i in range(2, p0 + 1))
        num = (
            (s * qk * (q - 1) + (r - 1))
            * qk ** (r - 2)
            * ((q ** k - 2) // 2)
            * (q ** n - 1)
        )
        return _exact_div(num, q - 1)
    raise ValueError(f"unknown parity {parity!r}")


def size_difference_5k(q: int, k: int) -> int:
    n = 5 * k
    qk = q ** k - 1
    return _exact_div((qk * (3 * q - 6) + 1) * qk * (q ** n - 1), q - 1)


def compare_sizes(q: int, k: int, r: int, parity: str) -> dict:
    """One comparison row: our size, the best known, the difference column,
    with the identity ours - known == difference asserted exactly."""
    ours = construction_size(q, k, r, parity)
    known = best_known_size(q, k, r, parity)
    diff = size_difference(q, k, r, parity)
    if ours - known != diff:
        raise InexactDivision("difference column does not match ours - known")
    n = (2 * r + 1) * k if parity == "odd" else 2 * r * k
    row = {
        "q": q,
        "k": k,
        "r": r,
        "parity": parity,
        "n": n,
        "ours": ours,
        "best_known": known,
        "difference": diff,
        "rate_ours": round(rate(ours, q, n, k), 6),
        "rate_best_known": round(rate(known, q, n, k), 6),
    }
    if parity == "odd" and r == 2:
        other = known_size_5k(q, k)
        diff5 = size_difference_5k(q, k)
        if ours - other != diff5:
            raise InexactDivision("n=5k difference column does not match")
        row["known_5k"] = other
        row["difference_5k"] = diff5
        row["rate_known_5k"] = round(rate(other, q, n, k), 6)
    return row


# -- bounds, rates, ratios --------------------------------------------------------

def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n, exactly."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return _exact_div(num, den)


def sphere_packing_bound(q: int, n: int, k: int, d: int) -> int:
    """Upper bound for a CDC of minimum distance d = 2*delta + 2."""
    if d < 2 or d % 2:
        raise InexactDivision("distance must be even and >= 2")
    delta = (d - 2) // 2
    num = gaussian_binomial(n, k - delta, q)
    den = gaussian_binomial(k, k - delta, q)
    return _exact_div(num, den)


def johnson_bound(q: int, n: int, k: int, d: int) -> int:
    """Upper bound for a CDC of minimum distance d = 2*delta (product form,
    exactness asserted)."""
    if d < 2 or d % 2:
        raise InexactDivision("distance must be even and >= 2")
    delta = d // 2
    num = 1
    den = 1
    for i in range(k - delta + 1):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return _exact_div(num, den)


def rate(code_size: int, q: int, n: int, k: int) -> float:
    """log_q(size) / (n*k), in double precision."""
    if code_size < 1:
        raise ValueError("size must be >= 1")
    return math.log2(code_size) / math.log2(q) / (n * k)


def common_bound_4k(q: int, k: int) -> int:
    """The value shared by the sphere-packing and Johnson bounds at n = 4k,
    distance 2k - 2."""
    n = 4 * k
    num = (q ** n - 1) * (q ** (n - 1) - 1)
    den = (q ** k - 1) * (q ** (k - 1) - 1)
    return _exact_div(num, den)


def ratio_to_bound(q: int, k: int) -> Fraction:
    """Even-construction size at r = 2 (n = 4k) over the common bound value,
    as an exact rational.

    The bound enters as the exact rational product (it is an integer for
    small k but not for all k; the integral bound is its floor)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    n = 4 * k
    bound = Fraction((q ** n - 1) * (q ** (n - 1) - 1), (q ** k - 1) * (q ** (k - 1) - 1))
    return construction_size(q, k, 2, "even") / bound
