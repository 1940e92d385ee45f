"""Linearized (q-)polynomial machinery: kernels as subspaces, the
coefficient-twist under cyclic shifts, gcd-based intersection dimensions,
the rank-matrix criterion certifying unions of polynomial-kernel orbits,
and the exact distance/size scan for such unions.

A q-polynomial sum(a_i * x^(q^i)) is kept sparsely as (exponent, coefficient)
pairs; coefficients are encodings valid in the tower's top field (elements of
the middle field embed with unchanged encodings, so middle-level coefficients
can be used directly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    BadSupport,
    Infeasible,
    LevelMismatch,
    NonPowerDegree,
    NotFoundWithinBound,
    WrongCharacteristic,
    ZeroShift,
)
from .field_tower import FieldTower, build_tower
from .subspace_linalg import Subspace, map_kernel, orbit_size

DEFAULT_SCAN_BUDGET = 1 << 26


@dataclass(frozen=True)
class LinearizedPolynomial:
    """sum of coeff * x^(q^exp) with coefficients in the tower's top field."""

    tower: FieldTower = field(repr=False)
    coeffs: tuple[tuple[int, int], ...]  # (q-exponent, encoding), ascending, nonzero

    @property
    def q_degree(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else -1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.coeffs)

    def coeff(self, exp: int) -> int:
        for e, c in self.coeffs:
            if e == exp:
                return c
        return 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1][1] == 1

    def evaluate(self, x: int) -> int:
        """GF(q)-linear evaluation at a top-field element."""
        top = self.tower.top
        q = self.tower.q
        acc = 0
        power = x  # x^(q^i)
        idx = 0
        for i in range(self.q_degree + 1):
            e, c = self.coeffs[idx]
            if e == i:
                acc = top.add(acc, top.mul(c, power))
                idx += 1
                if idx == len(self.coeffs):
                    break
            power = top.pow(power, q)
        return acc

    def to_json(self) -> dict:
        return {str(e): int(c) for e, c in self.coeffs}


def linpoly(tower: FieldTower, mapping: Mapping[int, int]) -> LinearizedPolynomial:
    """Build a q-polynomial from {exponent: encoding}, dropping zeros."""
    top_order = tower.top.order
    items = []
    for e, c in mapping.items():
        e, c = int(e), int(c)
        if not 0 <= c < top_order:
            raise LevelMismatch("coefficient encoding out of range for the top field")
        if c:
            items.append((e, c))
    items.sort()
    return LinearizedPolynomial(tower, tuple(items))


def poly_eval(P: LinearizedPolynomial, x: int) -> int:
    return P.evaluate(x)


def kernel_subspace(P: LinearizedPolynomial) -> Subspace:
    """Kernel of x -> P(x) on GF(q^m) as a GF(q)-subspace, via the m x m
    coordinate matrix of the map."""
    tower = P.tower
    m = tower.m
    images = [P.evaluate(tower.unflatten([1 if i == j else 0 for i in range(m)])) for j in range(m)]
    return map_kernel(tower, images)


def find_splitting_N(
    p: int, a: int, coeff_degree: int, coeffs: Mapping[int, int], max_multiple: int
) -> int:
    """Smallest N = coeff_degree * t (t <= max_multiple) such that the kernel
    over GF(q^N) has full dimension equal to the q-degree.

    ``coeffs`` uses encodings of the degree-``coeff_degree`` coefficient
    field, which transfer unchanged into every hosting tower.
    """
    mid_order = build_tower(p, a, coeff_degree, 1).mid.order
    if any(int(c) >= mid_order for c in coeffs.values()):
        raise LevelMismatch("coefficients must lie in the coefficient field")
    want = max(int(e) for e, c in coeffs.items() if int(c) != 0)
    for t in range(1, max_multiple + 1):
        tw = build_tower(p, a, coeff_degree, t)
        P = linpoly(tw, coeffs)
        if kernel_subspace(P).dim == want:
            return coeff_degree * t
    raise NotFoundWithinBound(
        f"no splitting field within {max_multiple} multiples of {coeff_degree}"
    )


def shift_transform(P: LinearizedPolynomial, alpha: int) -> LinearizedPolynomial:
    """The polynomial vanishing on alpha*V when P vanishes on V: the
    coefficient at exponent j picks up the factor alpha^(q^k - q^j)."""
    if alpha == 0:
        raise ZeroShift("shift by zero")
    if not P.is_monic():
        raise BadSupport("shift transform needs a monic polynomial")
    tower = P.tower
    top = tower.top
    q = tower.q
    k = P.q_degree
    out = []
    for e, c in P.coeffs:
        if e == k:
            out.append((e, c))
        else:
            out.append((e, top.mul(top.pow(alpha, q ** k - q ** e), c)))
    return LinearizedPolynomial(tower, tuple(out))


def subspace_polynomial(V: Subspace) -> LinearizedPolynomial:
    """The monic q-polynomial of q-degree dim(V) vanishing exactly on V,
    built by adjoining one basis vector at a time:
    P_(V + <w>)(y) = P_V(y)^q - P_V(w)^(q-1) * P_V(y)."""
    tower = V.tower
    top = tower.top
    q = tower.q
    coeffs: dict[int, int] = {0: 1}  # P = x
    for w in V.rows:
        b = 0
        for e, c in coeffs.items():
            b = top.add(b, top.mul(c, top.pow(w, q ** e)))
        scale = top.pow(b, q - 1)
        new: dict[int, int] = {}
        for e, c in coeffs.items():
            new[e + 1] = top.pow(c, q)
        for e, c in coeffs.items():
            new[e] = top.sub_(new.get(e, 0), top.mul(scale, c))
        coeffs = {e: c for e, c in new.items() if c}
    return LinearizedPolynomial(tower, tuple(sorted(coeffs.items())))


# -- ordinary polynomial view and gcds ------------------------------------------

def densify(P: LinearizedPolynomial) -> list[int]:
    """Ordinary coefficient list (low degree first) of the q-polynomial."""
    q = P.tower.q
    out = [0] * (q ** P.q_degree + 1)
    for e, c in P.coeffs:
        out[q ** e] = c
    return out


def _dense_trim(v: list[int]) -> list[int]:
    while v and v[-1] == 0:
        v.pop()
    return v


def _dense_mod(top, a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    inv_lead = top.inv(b[-1])
    while len(a) - 1 >= db and a:
        c = top.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            if bj:
                a[shift + j] = top.sub_(a[shift + j], top.mul(c, bj))
        _dense_trim(a)
    return a


def dense_gcd(top, a: list[int], b: list[int]) -> list[int]:
    """Monic gcd of ordinary polynomials over the top field."""
    a, b = _dense_trim(list(a)), _dense_trim(list(b))
    while b:
        a, b = b, _dense_mod(top, a, b)
    if a and a[-1] != 1:
        inv = top.inv(a[-1])
        a = [top.mul(inv, c) for c in a]
    return a


def intersection_dim_via_gcd(P: LinearizedPolynomial, Q: LinearizedPolynomial) -> int:
    """dim(ker P ∩ ker Q) as log_q of the degree of the ordinary gcd.

    Both polynomials must split with simple roots in the working field (true
    for subspace polynomials); the gcd is then the subspace polynomial of the
    intersection.
    """
    top = P.tower.top
    q = P.tower.q
    g = dense_gcd(top, densify(P), densify(Q))
    deg = len(g) - 1
    dim = round(math.log(deg, q)) if deg > 0 else 0
    if q ** dim != deg:
        raise NonPowerDegree(f"gcd degree {deg} is not a power of q={q}")
    return dim


# -- the rank-matrix criterion ---------------------------------------------------

def validate_support(P: LinearizedPolynomial, s: int) -> None:
    """Monic, support within {0..s+1} u {k}, with the coefficients at
    exponents s+1, s and 0 all nonzero."""
    k = P.q_degree
    if not P.is_monic():
        raise BadSupport("polynomial must be monic")
    allowed = set(range(s + 2)) | {k}
    if not set(P.support) <= allowed:
        raise BadSupport(f"support {P.support} not within {sorted(allowed)}")
    for e in (s + 1, s, 0):
        if P.coeff(e) == 0:
            raise BadSupport(f"coefficient at exponent {e} must be nonzero")


@dataclass(frozen=True)
class RankMatrix:
    """The (k+1) x (k-s+1) matrix whose full column rank at every admissible
    shift certifies small intersections between shifted kernels."""

    entries: tuple[tuple[int, ...], ...]
    i: int
    j: int
    alpha: int


def _matrix_rows(top, q: int, k: int, s: int, r: list[int], last_col: list[int]) -> list[list[int]]:
    """(k+1) x (k-s+1) rows: the twisted differences r_t on a descending
    diagonal band raised to shrinking q-powers, then the coefficient column."""
    ncols = k - s + 1
    rows = [[0] * ncols for _ in range(k + 1)]
    for c in range(k - s):
        e = q ** (k - s - 1 - c)
        for off in range(s + 2):
            rows[c + off][c] = top.pow(r[s + 1 - off], e)
    for rho in range(k + 1):
        rows[rho][ncols - 1] = last_col[rho]
    return rows


def build_rank_matrix(
    Pi: LinearizedPolynomial, Pj: LinearizedPolynomial, alpha: int, s: int
) -> RankMatrix:
    """Columns 0..k-s-1 carry the q-power twisted differences
    r_t = gamma_(t,i) - gamma_(t,j) * alpha^(q^k - q^t) on a descending
    diagonal band; the last column is the coefficient vector of Pi by
    descending q-degree."""
    validate_support(Pi, s)
    validate_support(Pj, s)
    if alpha == 0:
        raise ZeroShift("alpha must be nonzero")
    tower = Pi.tower
    top = tower.top
    q = tower.q
    k = Pi.q_degree
    if Pj.q_degree != k:
        raise BadSupport("polynomials must share the q-degree")
    r = [
        top.sub_(Pi.coeff(t), top.mul(Pj.coeff(t), top.pow(alpha, q ** k - q ** t)))
        for t in range(s + 2)
    ]
    last_col = [Pi.coeff(k - rho) for rho in range(k + 1)]
    rows = _matrix_rows(top, q, k, s, r, last_col)
    return RankMatrix(tuple(tuple(row) for row in rows), -1, -1, alpha)


def field_matrix_rank(top, rows: Iterable[Iterable[int]]) -> int:
    """Rank by Gaussian elimination with field inverses."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = top.inv(work[row][col])
        work[row] = [top.mul(inv, x) for x in work[row]]
        for i in range(len(work)):
            if i != row and work[i][col]:
                c = work[i][col]
                work[i] = [top.sub_(x, top.mul(c, y)) for x, y in zip(work[i], work[row])]
        rank += 1
        row += 1
        if row == len(work):
            break
    return rank


def field_matrix_rank_division_free(top, rows: Iterable[Iterable[int]]) -> int:
    """Division-free elimination oracle (cross-multiplication only)."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        p = work[row][col]
        for i in range(len(work)):
            if i != row and work[i][col]:
                c = work[i][col]
                work[i] = [
                    top.sub_(top.mul(p, x), top.mul(c, y))
                    for x, y in zip(work[i], work[row])
                ]
        rank += 1
        row += 1
        if row == len(work):
            break
    return rank


@dataclass
class CriteriaVerdict:
    """Outcome of the two union-distance conditions, with witnesses."""

    rank_ok: bool
    rank_witness: tuple | None  # (i, j, alpha, rank)
    coeff_ok: bool
    coeff_witnesses: list
    alphas_checked: int

    @property
    def passed(self) -> bool:
        return self.rank_ok and self.coeff_ok

    def to_json(self) -> dict:
        return {
            "rank_condition_ok": self.rank_ok,
            "rank_witness": self.rank_witness,
            "coefficient_condition_ok": self.coeff_ok,
            "coefficient_witnesses": self.coeff_witnesses,
            "alphas_checked": self.alphas_checked,
            "passed": self.passed,
        }


def _admissible_alphas(tower: FieldTower, k: int, s: int) -> list[int]:
    """All nonzero alpha excluding the subfields GF(q^(k-s-1)) and GF(q^k)
    intersected with the working field."""
    q = tower.q
    N = tower.m
    top = tower.top
    g1 = math.gcd(k - s - 1, N)
    g2 = math.gcd(k, N)
    out = []
    e1 = q ** g1
    e2 = q ** g2
    for alpha in range(1, top.order):
        if top.pow(alpha, e1) == alpha or top.pow(alpha, e2) == alpha:
            continue
        out.append(alpha)
    return out


def _rank_condition(
    polys: list[LinearizedPolynomial], s: int, budget: int
) -> tuple[bool, tuple | None, int]:
    tower = polys[0].tower
    top = tower.top
    q = tower.q
    k = polys[0].q_degree
    alphas = _admissible_alphas(tower, k, s)
    if len(alphas) * len(polys) ** 2 > budget:
        raise Infeasible("rank scan exceeds budget")
    want = k - s + 1
    gammas = [[P.coeff(t) for t in range(s + 2)] for P in polys]
    exps = [q ** k - q ** t for t in range(s + 2)]
    last_cols = [[P.coeff(k - rho) for rho in range(k + 1)] for P in polys]
    for alpha in alphas:
        apow = [top.pow(alpha, e) for e in exps]
        for i in range(len(polys)):
            gi = gammas[i]
            for j in range(len(polys)):
                gj = gammas[j]
                r = [top.sub_(gi[t], top.mul(gj[t], apow[t])) for t in range(s + 2)]
                rows = _matrix_rows(top, q, k, s, r, last_cols[i])
                rank = field_matrix_rank(top, rows)
                if rank != want:
                    return False, (i, j, alpha, rank), len(alphas)
    return True, None, len(alphas)


def check_union_distance_criteria(
    polys: list[LinearizedPolynomial], s: int, budget: int = DEFAULT_SCAN_BUDGET
) -> CriteriaVerdict:
    """The two sufficient conditions for the union of the kernel orbits to be
    a cyclic code of distance >= 2k - 2s.

    (1) every rank matrix has full column rank k - s + 1 for every ordered
        pair and every admissible alpha;
    (2) for every unordered pair i != j some exponent h <= s + 1 coprime to
        the coefficient-field degree separates the twisted coefficient
        ratios (h is only eligible where both h-coefficients are nonzero).
    """
    tower = polys[0].tower
    k = polys[0].q_degree
    if not (k > 2 and 1 <= s < k - 1):
        raise BadSupport("need k > 2 and 1 <= s < k - 1")
    for P in polys:
        validate_support(P, s)
        if P.q_degree != k:
            raise BadSupport("polynomials must share the q-degree")
    rank_ok, witness, n_alphas = _rank_condition(polys, s, budget)

    top = tower.top
    q = tower.q
    n_coeff = tower.k  # degree of the coefficient field over GF(q)
    e_k = (q ** k - 1) // (q - 1)
    failures = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            found = False
            g0 = top.mul(polys[i].coeff(0), top.inv(polys[j].coeff(0)))
            for h in range(1, s + 2):
                if math.gcd(h, n_coeff) != 1:
                    continue
                chi, chj = polys[i].coeff(h), polys[j].coeff(h)
                if chi == 0 or chj == 0:
                    continue
                e_h = (q ** h - 1) // (q - 1)
                gh = top.mul(chi, top.inv(chj))
                lhs = top.pow(g0, e_h)
                rhs = top.pow(top.mul(g0, top.inv(gh)), e_k)
                if lhs != rhs:
                    found = True
                    break
            if not found:
                failures.append((i, j))
    return CriteriaVerdict(rank_ok, witness, not failures, failures, n_alphas)


def check_union_distance_criteria_gf2(
    polys: list[LinearizedPolynomial], s: int, budget: int = DEFAULT_SCAN_BUDGET
) -> CriteriaVerdict:
    """Characteristic-2 specialization: condition (2) becomes "constant
    coefficients pairwise distinct, and some h coprime to the coefficient
    degree has the h-coefficient equal to the constant one in both
    polynomials"."""
    tower = polys[0].tower
    if tower.q != 2:
        raise WrongCharacteristic("this criterion requires q = 2")
    k = polys[0].q_degree
    if not (k > 2 and 1 <= s < k - 1):
        raise BadSupport("need k > 2 and 1 <= s < k - 1")
    for P in polys:
        validate_support(P, s)
    rank_ok, witness, n_alphas = _rank_condition(polys, s, budget)
    n_coeff = tower.k
    mid_order = tower.mid.order
    failures = []
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            g0i, g0j = polys[i].coeff(0), polys[j].coeff(0)
            ok = g0i != g0j
            if ok:
                ok = any(
                    math.gcd(h, n_coeff) == 1
                    and polys[i].coeff(h) == g0i
                    and polys[j].coeff(h) == g0j
                    and 0 < g0i < mid_order
                    and 0 < g0j < mid_order
                    for h in range(1, s + 2)
                )
            if not ok:
                failures.append((i, j))
    return CriteriaVerdict(rank_ok, witness, not failures, failures, n_alphas)


# -- exact distance and size of polynomial-kernel unions -------------------------

@dataclass
class PolyCodeReport:
    distance: int
    size: int
    orbit_sizes: list[int]
    collisions: list[tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "distance": self.distance,
            "size": str(self.size),
            "orbit_sizes": self.orbit_sizes,
            "orbit_collisions": self.collisions,
        }


def poly_code_distance(
    polys: list[LinearizedPolynomial], budget: int = DEFAULT_SCAN_BUDGET
) -> PolyCodeReport:
    """Exact minimum distance and size of the union of kernel orbits, by the
    gcd method over all projective shifts and all generator pairs."""
    tower = polys[0].tower
    top = tower.top
    q = tower.q
    k = polys[0].q_degree
    kernels = [kernel_subspace(P) for P in polys]
    for P, V in zip(polys, kernels):
        if V.dim != k:
            raise BadSupport(
                f"kernel dimension {V.dim} below the q-degree {k}: "
                "not a subspace polynomial for this field"
            )
    n_alpha = (top.order - 1) // (q - 1)
    pairs = [(i, j) for i in range(len(polys)) for j in range(i, len(polys))]
    if n_alpha * len(pairs) > budget:
        raise Infeasible("distance scan exceeds budget")
    dense = [densify(P) for P in polys]
    exps = [q ** k - q ** t for t in range(k)]
    best = 2 * k
    collisions = []
    for i, j in pairs:
        Pi, Pj = polys[i], polys[j]
        di = dense[i]
        gj = [Pj.coeff(t) for t in range(k)]
        collision = False
        for alpha in tower.projective_reps("top"):
            r = [
                top.sub_(Pi.coeff(t), top.mul(gj[t], top.pow(alpha, exps[t])))
                for t in range(k)
            ]
            R = [0] * (q ** (k - 1) + 1)
            for t in range(k):
                R[q ** t] = r[t]
            _dense_trim(R)
            if not R:
                if i != j:
                    collision = True
                continue  # identical subspace, not a distance pair
            g = dense_gcd(top, di, R)
            deg = len(g) - 1
            dim = round(math.log(deg, q)) if deg > 0 else 0
            if q ** dim != deg:
                raise NonPowerDegree(f"gcd degree {deg} not a power of {q}")
            if dim == k:
                if i != j:
                    collision = True
                continue
            d = 2 * k - 2 * dim
            if d < best:
                best = d
        if collision:
            collisions.append((i, j))
    sizes = [orbit_size(V) for V in kernels]
    total = sum(sizes) if not collisions else -1
    return PolyCodeReport(best, total, sizes, collisions)


# -- serialization -----------------------------------------------------------------

def poly_family_from_json(obj: dict, N: int) -> tuple[FieldTower, list[LinearizedPolynomial], int, int]:
    """Load a family of q-polynomials from the wire format
    {q, coeff_field_degree, k, s, polys: [{exponent: element}]}, hosting the
    kernels in GF(q^N).

    Elements are xi-exponents (integers) or coordinate vectors (nested
    arrays over the coefficient field, low degree first).
    """
    q = int(obj["q"])
    n_coeff = int(obj["coeff_field_degree"])
    k = int(obj["k"])
    s = int(obj["s"])
    if N % n_coeff:
        raise BadSupport(f"N={N} is not a multiple of the coefficient degree {n_coeff}")
    p, a = _prime_power(q)
    tower = build_tower(p, a, n_coeff, N // n_coeff)
    from .field_tower import enc_from_nested

    polys = []
    for raw in obj["polys"]:
        mapping = {}
        for e, val in raw.items():
            if isinstance(val, list):
                enc = enc_from_nested(tower.mid, val)
            else:
                enc = tower.mid.pow(tower.xi, int(val))
            mapping[int(e)] = enc
        polys.append(linpoly(tower, mapping))
    for P in polys:
        validate_support(P, s)
        if P.q_degree != k:
            raise BadSupport("polynomial q-degree disagrees with the declared k")
    return tower, polys, k, s


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            a = 0
            while q % p == 0:
                q //= p
                a += 1
            if q != 1:
                raise BadSupport("q must be a prime power")
            return p, a
    raise BadSupport("q must be >= 2")
