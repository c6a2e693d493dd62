"""Coset tables for the congruence families and the induced permutation
action of Xi(N) on them.

Cosets are the left cosets r*Psi of Psi = image of the subgroup in Xi(N);
an element g acts by image[i] = j where r_j^-1 g r_i lies in the subgroup.
The cycle type of that permutation is the splitting type of any hyperbolic
class of SL2(Z) reducing to g, and can be recovered independently from the
traces of the permutation powers by Moebius inversion; the two routes are
kept separate so they can cross-check each other.

Representative order is fixed by a breadth-first walk of the whole group
from the identity under right multiplication by the images of
S = [[0,-1],[1,0]] and T = [[1,1],[0,1]] (S first), the first element
landing in a fresh coset becoming its representative.  This makes every
derived table byte-stable.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .core import (
    CapExceeded,
    ConsistencyError,
    Family,
    SubgroupSpec,
    canon,
    divisors,
    enumerate_xi,
    identity,
    is_member_tuple,
    moebius,
    mul,
    order_in_xi_tuple,
)

DEFAULT_INDEX_CAP = 10**7

# numpy bulk path pays off only for wide tables; the key lut needs N^4 ints
_VECTOR_MIN_INDEX = 128
_VECTOR_MAX_KEYSPACE = 3 * 10**7


class CosetTable:
    """Reps and element->coset lookup for one congruence subgroup."""

    def __init__(self, subgroup: SubgroupSpec, reps, elt_to_coset):
        self.subgroup = subgroup
        self.level = subgroup.level
        self.reps = reps
        self.index = len(reps)
        self.elt_to_coset = elt_to_coset
        self._vector = None

    def coset_of(self, g):
        return self.elt_to_coset[g]

    # lazily built numpy engine: rep component arrays + dense key lookup
    def _vector_engine(self):
        if self._vector is None:
            n = self.level
            if n**4 > _VECTOR_MAX_KEYSPACE:
                self._vector = False
            else:
                ra = np.array([r[0] for r in self.reps], dtype=np.int64)
                rb = np.array([r[1] for r in self.reps], dtype=np.int64)
                rc = np.array([r[2] for r in self.reps], dtype=np.int64)
                rd = np.array([r[3] for r in self.reps], dtype=np.int64)
                lut = np.full(n**4, -1, dtype=np.int32)
                for (a, b, c, d), i in self.elt_to_coset.items():
                    lut[((a * n + b) * n + c) * n + d] = i
                self._vector = (ra, rb, rc, rd, lut)
        return self._vector


def build_coset_table(s: SubgroupSpec, cap=DEFAULT_INDEX_CAP, group_cap=None) -> CosetTable:
    """BFS coset table for Gamma~(N) inside Xi(N)."""
    n = s.level
    kwargs = {} if group_cap is None else {"cap": group_cap}
    xi = enumerate_xi(n, **kwargs)
    psi = [g for g in xi if is_member_tuple(g, s.family, n)]
    if len(xi) // len(psi) > cap:
        raise CapExceeded(f"index {len(xi) // len(psi)} exceeds cap {cap}")
    gen_s = canon(0, -1, 1, 0, n)
    gen_t = canon(1, 1, 0, 1, n)
    e = identity(n)
    reps = []
    e2c = {}

    def new_coset(r):
        idx = len(reps)
        reps.append(r)
        for ps in psi:
            e2c[mul(r, ps, n)] = idx

    seen = {e}
    new_coset(e)
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for gen in (gen_s, gen_t):
            y = mul(x, gen, n)
            if y in seen:
                continue
            seen.add(y)
            queue.append(y)
            if y not in e2c:
                new_coset(y)
    table = CosetTable(s, reps, e2c)
    if table.index * len(psi) != len(xi):
        raise ConsistencyError("coset table does not partition Xi")
    return table


def act(g, table: CosetTable):
    """Permutation of coset indices induced by g (as a list of images)."""
    g = _as_tuple(g, table.level)
    eng = table._vector_engine() if table.index >= _VECTOR_MIN_INDEX else False
    if eng:
        return _act_vector(g, table, eng)
    n = table.level
    e2c = table.elt_to_coset
    return [e2c[mul(g, r, n)] for r in table.reps]


def _act_vector(g, table, eng):
    n = table.level
    ga, gb, gc, gd = g
    ra, rb, rc, rd = eng[0], eng[1], eng[2], eng[3]
    na = (ga * ra + gb * rc) % n
    nb = (ga * rb + gb * rd) % n
    nc = (gc * ra + gd * rc) % n
    nd = (gc * rb + gd * rd) % n
    ma = (n - na) % n
    mb = (n - nb) % n
    mc = (n - nc) % n
    md = (n - nd) % n
    neg = (ma < na) | ((ma == na) & ((mb < nb) | ((mb == nb) & ((mc < nc) | ((mc == nc) & (md < nd))))))
    na = np.where(neg, ma, na)
    nb = np.where(neg, mb, nb)
    nc = np.where(neg, mc, nc)
    nd = np.where(neg, md, nd)
    return eng[4][((na * n + nb) * n + nc) * n + nd]


def _act_reference(g, table: CosetTable):
    """Pure dict-lookup action; the vectorized path must agree with this."""
    g = _as_tuple(g, table.level)
    n = table.level
    e2c = table.elt_to_coset
    return [e2c[mul(g, r, n)] for r in table.reps]


def _as_tuple(g, level):
    if isinstance(g, tuple):
        return g
    if g.level != level:
        raise ValueError("level mismatch")
    return g.tuple


def cycle_type_of(perm):
    """Cycle type of a permutation given as an image list/array."""
    if isinstance(perm, np.ndarray):
        perm = perm.tolist()
    elif not isinstance(perm, list):
        perm = list(perm)
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        out.append(length)
    out.sort(reverse=True)
    return tuple(out)


def splitting_type_cycles(g, table: CosetTable):
    """Splitting type as the cycle type of the coset permutation."""
    return cycle_type_of(act(g, table))


def induced_trace(g, table: CosetTable):
    """Number of fixed cosets of g (the induced-representation character)."""
    perm = act(g, table)
    if isinstance(perm, np.ndarray):
        return int(np.count_nonzero(perm == np.arange(len(perm))))
    return sum(1 for i, j in enumerate(perm) if i == j)


def moebius_type_from_perm(perm, m_order, index):
    """Type from traces of permutation powers via the Moebius recursion:

        m * l_m = sum_{d | m} mu(m/d) tr sigma(g^d),

    with m running over the divisors of the order of g in Xi (every part
    divides that order).  Never inspects cycles; powers of the permutation
    are taken by composition and only their fixed points are counted.
    """
    if not isinstance(perm, np.ndarray):
        perm = np.array(perm, dtype=np.int64)
    idx = np.arange(len(perm))
    traces = {}
    for d in divisors(m_order):
        q = _perm_power(perm, d)
        traces[d] = int(np.count_nonzero(q == idx))
    parts = []
    for m in divisors(m_order):
        s = sum(moebius(m // d) * traces[d] for d in divisors(m))
        if s < 0 or s % m != 0:
            raise ConsistencyError(
                f"Moebius recursion produced invalid multiplicity {s}/{m}"
            )
        parts.extend([m] * (s // m))
    parts.sort(reverse=True)
    lam = tuple(parts)
    if sum(lam) != index:
        raise ConsistencyError("Moebius-reconstructed type has wrong weight")
    return lam


def splitting_type_moebius(g, table: CosetTable):
    """Splitting type recovered from permutation-power traces alone."""
    gt = _as_tuple(g, table.level)
    m_order = order_in_xi_tuple(gt, table.level)
    return moebius_type_from_perm(act(gt, table), m_order, table.index)


def dual_type_report(level, family, group_cap=None):
    """Exhaustive cycle-vs-Moebius comparison over all of Xi(level).

    Returns (element count, mismatch list); one shared permutation per
    element feeds both extraction routes.
    """
    table = build_coset_table(SubgroupSpec(family, level), group_cap=group_cap)
    kwargs = {} if group_cap is None else {"cap": group_cap}
    xi = enumerate_xi(level, **kwargs)
    mismatches = []
    for g in xi:
        perm = act(g, table)
        lam_c = cycle_type_of(perm)
        lam_m = moebius_type_from_perm(perm, order_in_xi_tuple(g, level), table.index)
        if lam_c != lam_m:
            mismatches.append((g, lam_c, lam_m))
    return len(xi), mismatches


def _perm_power(perm, d):
    """perm^d via binary composition (permutations compose by indexing)."""
    result = None
    base = perm
    while d:
        if d & 1:
            result = base if result is None else base[result]
        base = base[base]
        d >>= 1
    return result if result is not None else np.arange(len(perm))


# ---------------------------------------------------------------------------
# P^1(Z/N) fast-path model of the Gamma0 cosets
#
# Left cosets g*Gamma0(N) are classified by the first column (a : c) of g
# up to units, so the Gamma0 table embeds in P^1(Z/N).  The generic BFS
# table remains the reference; the two must agree coset-for-coset.

def p1_points(n):
    """Unimodular column pairs (a, c) mod n up to unit scaling, canonical min."""
    import math as _math

    norm = {}
    units = [u for u in range(1, n) if _math.gcd(u, n) == 1]
    for a in range(n):
        for c in range(n):
            if _math.gcd(_math.gcd(a, c), n) != 1:
                continue
            key = (a, c)
            if key in norm:
                continue
            orbit = {((u * a) % n, (u * c) % n) for u in units}
            rep = min(orbit)
            for pt in orbit:
                norm[pt] = rep
    return norm


class P1Model:
    """Gamma0(N) coset action realized on P^1(Z/N), indexed to match a CosetTable."""

    def __init__(self, table: CosetTable):
        if table.subgroup.family != Family.GAMMA0:
            raise ValueError("P1 model applies to gamma0 only")
        n = table.level
        self.level = n
        self.norm = p1_points(n)
        self.point_to_coset = {}
        for i, (a, b, c, d) in enumerate(table.reps):
            self.point_to_coset[self.norm[(a, c)]] = i
        if len(self.point_to_coset) != table.index:
            raise ConsistencyError("P1 model does not match coset table")
        self.coset_to_point = [None] * table.index
        for pt, i in self.point_to_coset.items():
            self.coset_to_point[i] = pt

    def act(self, g):
        n = self.level
        ga, gb, gc, gd = _as_tuple(g, n)
        out = [0] * len(self.coset_to_point)
        for i, (a, c) in enumerate(self.coset_to_point):
            pt = self.norm[((ga * a + gb * c) % n, (gc * a + gd * c) % n)]
            out[i] = self.point_to_coset[pt]
        return out
