"""Finite posets, lattices and frames.

Elements are dense integer indices 0..n-1 and the order matrix is the single
source of truth; meet/join tables and all domain-theoretic data (way-below,
Scott-open filters, the Lawson dual, normality) are derived from it and
cached.  Subsets of a lattice are passed around as bitmasks.

Quantifier-heavy checks (way-below, Scott-openness, filter enumeration) run
a literal subset scan up to ``EXHAUSTIVE_CAP`` elements.  Beyond the cap the
finite-collapse shortcuts (every filter is principal, every up-set is
Scott-open, way-below equals the order) take over; the shortcuts themselves
are certified against the literal scan on every small lattice they touch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

EXHAUSTIVE_CAP = 12
WAY_BELOW_CAP = 12


class OrderError(ValueError):
    """Base class for order-axiom violations."""


class NotReflexive(OrderError):
    def __init__(self, i):
        super().__init__(f"leq({i},{i}) fails")
        self.i = i


class NotAntisymmetric(OrderError):
    def __init__(self, i, j):
        super().__init__(f"leq({i},{j}) and leq({j},{i}) with {i} != {j}")
        self.i, self.j = i, j


class NotTransitive(OrderError):
    def __init__(self, i, j, k):
        super().__init__(f"leq({i},{j}) and leq({j},{k}) but not leq({i},{k})")
        self.i, self.j, self.k = i, j, k


class NoMeet(OrderError):
    def __init__(self, x, y):
        super().__init__(f"elements {x},{y} have no greatest lower bound")
        self.x, self.y = x, y


class NoJoin(OrderError):
    def __init__(self, x, y):
        super().__init__(f"elements {x},{y} have no least upper bound")
        self.x, self.y = x, y


class NoBottom(OrderError):
    def __init__(self):
        super().__init__("poset has no least element")


class NoTop(OrderError):
    def __init__(self):
        super().__init__("poset has no greatest element")


class NotDistributive(OrderError):
    def __init__(self, x, y, z):
        super().__init__(f"x&(y|z) != (x&y)|(x&z) at ({x},{y},{z})")
        self.witness = (x, y, z)


class LawsonNotLattice(OrderError):
    """Internal-consistency failure while building the Lawson dual."""


class CapExceeded(OrderError):
    def __init__(self, what, n, cap):
        super().__init__(f"{what}: size {n} exceeds cap {cap}")
        self.what, self.n, self.cap = what, n, cap


class InternalCheckError(RuntimeError):
    """A cross-check that should be a theorem failed; indicates a bug."""


class LatticeParseError(OrderError):
    def __init__(self, line_no, msg):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


class FinPoset:
    """Finite poset on 0..n-1.

    ``ups[i]`` is the bitmask of elements above (and including) i.  The
    order axioms are validated on construction.
    """

    __slots__ = ("n", "ups", "_downs", "__dict__")

    def __init__(self, ups):
        ups = tuple(ups)
        n = len(ups)
        full = (1 << n) - 1
        for i, u in enumerate(ups):
            if u & ~full:
                raise OrderError(f"row {i} mentions elements out of range")
            if not (u >> i) & 1:
                raise NotReflexive(i)
        for i in range(n):
            for j in bits(ups[i]):
                if i != j and (ups[j] >> i) & 1:
                    raise NotAntisymmetric(i, j)
                if ups[j] & ~ups[i]:
                    k = next(bits(ups[j] & ~ups[i]))
                    raise NotTransitive(i, j, k)
        self.n = n
        self.ups = ups
        self._downs = None

    @property
    def downs(self):
        if self._downs is None:
            self._downs = tuple(
                sum(1 << i for i in range(self.n) if (self.ups[i] >> j) & 1)
                for j in range(self.n)
            )
        return self._downs

    def leq(self, i, j):
        return bool((self.ups[i] >> j) & 1)

    def op(self):
        """The opposite poset (order reversed)."""
        return FinPoset(self.downs)

    @cached_property
    def covers(self):
        """Pairs (lower, upper) with nothing strictly in between."""
        out = []
        for i in range(self.n):
            strict = self.ups[i] & ~(1 << i)
            for j in bits(strict):
                between = strict & self.downs[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return tuple(out)

    @cached_property
    def heights(self):
        """Length of the longest chain up to each element, from below."""
        h = [0] * self.n
        for x in self.linear_extension:
            below = self.downs[x] & ~(1 << x)
            h[x] = max((h[y] + 1 for y in bits(below)), default=0)
        return tuple(h)

    @cached_property
    def linear_extension(self):
        return tuple(sorted(range(self.n), key=lambda i: (bin(self.downs[i]).count("1"), i)))

    def __eq__(self, other):
        return isinstance(other, FinPoset) and self.ups == other.ups

    def __hash__(self):
        return hash(self.ups)

    def __repr__(self):
        return f"FinPoset(n={self.n}, covers={list(self.covers)})"


def check_poset(matrix):
    """Validate a square boolean matrix as a partial order.

    Raises NotReflexive / NotAntisymmetric / NotTransitive with the first
    offending indices; returns the FinPoset otherwise.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise OrderError("order matrix is not square")
    ups = tuple(sum(1 << j for j in range(n) if matrix[i][j]) for i in range(n))
    return FinPoset(ups)


class FinLattice:
    """Finite lattice: a poset with all binary meets/joins, bottom and top.

    Finiteness makes it complete: ``sup_mask``/``inf_mask`` fold the binary
    tables over arbitrary element bitmasks (empty mask gives bot / top).
    Construct through :func:`check_lattice`.
    """

    def __init__(self, poset, meet_table, join_table, bot, top):
        self.poset = poset
        self.n = poset.n
        self._meet = meet_table
        self._join = join_table
        self.bot = bot
        self.top = top
        self._wb_certified = False

    @property
    def ups(self):
        return self.poset.ups

    @property
    def downs(self):
        return self.poset.downs

    @property
    def covers(self):
        return self.poset.covers

    def leq(self, i, j):
        return self.poset.leq(i, j)

    def meet(self, x, y):
        return self._meet[x][y]

    def join(self, x, y):
        return self._join[x][y]

    def sup_mask(self, mask):
        s = self.bot
        for i in bits(mask):
            s = self._join[s][i]
        return s

    def inf_mask(self, mask):
        s = self.top
        for i in bits(mask):
            s = self._meet[s][i]
        return s

    @cached_property
    def is_distributive(self):
        try:
            self.check_distributive()
        except NotDistributive:
            return False
        return True

    def check_distributive(self):
        for x in range(self.n):
            for y in range(self.n):
                for z in range(self.n):
                    lhs = self._meet[x][self._join[y][z]]
                    rhs = self._join[self._meet[x][y]][self._meet[x][z]]
                    if lhs != rhs:
                        raise NotDistributive(x, y, z)

    def op(self):
        """The dual lattice (order reversed, meet and join swapped)."""
        return check_lattice(self.poset.op())

    @cached_property
    def directed_masks(self):
        """All directed subsets (nonempty, pairwise upper bounds inside)."""
        return self._bounded_masks(self.ups)

    @cached_property
    def codirected_masks(self):
        return self._bounded_masks(self.downs)

    def _bounded_masks(self, rows):
        if self.n > EXHAUSTIVE_CAP:
            raise CapExceeded("directed-subset enumeration", self.n, EXHAUSTIVE_CAP)
        out = []
        for mask in range(1, 1 << self.n):
            elems = list(bits(mask))
            ok = True
            for a, b in itertools.combinations(elems, 2):
                if not rows[a] & rows[b] & mask:
                    ok = False
                    break
            if ok:
                out.append(mask)
        return tuple(out)

    @cached_property
    def meet_closed_masks(self):
        """Nonempty subsets closed under binary meets."""
        if self.n > EXHAUSTIVE_CAP:
            raise CapExceeded("meet-closed enumeration", self.n, EXHAUSTIVE_CAP)
        out = []
        for mask in range(1, 1 << self.n):
            elems = list(bits(mask))
            if all((mask >> self._meet[a][b]) & 1 for a, b in itertools.combinations(elems, 2)):
                out.append(mask)
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, FinLattice) and self.poset == other.poset

    def __hash__(self):
        return hash(self.poset)

    def __repr__(self):
        return f"FinLattice(n={self.n}, covers={list(self.covers)})"


def check_lattice(p):
    """Compute meet/join tables for a poset, or raise the missing piece.

    Bottom and top are located first (NoBottom/NoTop), then every pair is
    scanned for a greatest lower / least upper bound (NoMeet/NoJoin).
    """
    n = p.n
    if n == 0:
        raise NoBottom()
    full = (1 << n) - 1
    bots = [i for i in range(n) if p.ups[i] == full]
    if not bots:
        raise NoBottom()
    tops = [i for i in range(n) if p.downs[i] == full]
    if not tops:
        raise NoTop()
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            lower = p.downs[x] & p.downs[y]
            glb = [m for m in bits(lower) if not lower & ~p.downs[m]]
            if not glb:
                raise NoMeet(x, y)
            meet[x][y] = meet[y][x] = glb[0]
            upper = p.ups[x] & p.ups[y]
            lub = [m for m in bits(upper) if not upper & ~p.ups[m]]
            if not lub:
                raise NoJoin(x, y)
            join[x][y] = join[y][x] = lub[0]
    return FinLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bots[0], tops[0])


# -- way-below ---------------------------------------------------------------

def way_below_bruteforce(L, x, y):
    """Literal quantifier: every cover of y admits a finite subcover above x.

    For each subset Y with y <= sup Y there must be a finite X within Y with
    x <= sup X; by monotonicity of sup the best candidate is X = Y itself.
    """
    if L.n > WAY_BELOW_CAP:
        raise CapExceeded("way-below brute force", L.n, WAY_BELOW_CAP)
    for ymask in range(1 << L.n):
        s = L.sup_mask(ymask)
        if L.leq(y, s) and not L.leq(x, s):
            return False
    return True


def certify_way_below(L):
    """Assert way-below == leq on L by the brute-force path, once."""
    if L._wb_certified:
        return
    for x in range(L.n):
        for y in range(L.n):
            if way_below_bruteforce(L, x, y) != L.leq(x, y):
                raise InternalCheckError(f"way-below/leq collapse fails at ({x},{y})")
    L._wb_certified = True


def way_below(L, x, y):
    # fast path through leq is sound only after the per-lattice certificate
    certify_way_below(L)
    return L.leq(x, y)


def way_below_mask(L, y):
    """Bitmask of x with x way-below y."""
    certify_way_below(L)
    return L.downs[y]


def is_continuous(L):
    """Every element is the directed sup of its way-below set."""
    certify_way_below(L)
    for x in range(L.n):
        wb = way_below_mask(L, x)
        if not wb:
            return False
        for a, b in itertools.combinations(list(bits(wb)), 2):
            if not L.ups[a] & L.ups[b] & wb:
                return False
        if L.sup_mask(wb) != x:
            return False
    return True


def is_stably_continuous(L):
    """Continuous with multiplicative way-below, including top << top."""
    if not is_continuous(L):
        return False
    if not way_below(L, L.top, L.top):
        return False
    for x in range(L.n):
        for y in range(L.n):
            for z in range(L.n):
                if way_below(L, x, y) and way_below(L, x, z):
                    if not way_below(L, x, L.meet(y, z)):
                        return False
    return True


# -- filters -----------------------------------------------------------------

@dataclass(eq=False)
class Filter:
    """Up-closed, meet-closed, nonempty subset of a lattice.

    Stored as a bitmask plus its least element; at finite scale every
    filter is principal at ``least``.
    """

    lattice: FinLattice
    mask: int
    least: int
    scott_open: bool

    def __contains__(self, x):
        return bool((self.mask >> x) & 1)

    def members(self):
        return tuple(bits(self.mask))

    def __eq__(self, other):
        return isinstance(other, Filter) and self.mask == other.mask and self.lattice is other.lattice

    def __hash__(self):
        return hash((id(self.lattice), self.mask))

    def __repr__(self):
        return f"Filter({sorted(bits(self.mask))}, least={self.least}, scott_open={self.scott_open})"


def _is_filter_mask(L, mask):
    if not mask:
        return False
    for i in bits(mask):
        if L.ups[i] & ~mask:
            return False
    elems = list(bits(mask))
    for a, b in itertools.combinations(elems, 2):
        if not (mask >> L.meet(a, b)) & 1:
            return False
    return True


def is_scott_open_mask(L, mask):
    """Scott-open test for an up-closed subset.

    Below the cap this is the literal scan over all directed subsets D
    (sup D in U must force D to meet U).  Above the cap every directed D
    contains its maximum, which equals sup D, so up-closedness suffices;
    the two paths are compared wherever both run.
    """
    up_closed = all(not (L.ups[i] & ~mask) for i in bits(mask))
    if not up_closed:
        return False
    if L.n <= EXHAUSTIVE_CAP:
        for d in L.directed_masks:
            if (mask >> L.sup_mask(d)) & 1 and not d & mask:
                return False
        return True
    return True


def filters(L):
    """All filters of L in canonical order (ascending member bitmask).

    Below the cap, filters are found by the literal subset scan and the
    principality invariant (filter == up-set of its least element) is
    asserted.  Above the cap the principal family is constructed directly.
    """
    cached = getattr(L, "_filters", None)
    if cached is not None:
        return cached
    out = []
    if L.n <= EXHAUSTIVE_CAP:
        for mask in range(1, 1 << L.n):
            if _is_filter_mask(L, mask):
                least = L.inf_mask(mask)
                if not (mask >> least) & 1 or mask != L.ups[least]:
                    raise InternalCheckError("non-principal filter found on a finite lattice")
                out.append(Filter(L, mask, least, is_scott_open_mask(L, mask)))
    else:
        for x in range(L.n):
            out.append(Filter(L, L.ups[x], x, is_scott_open_mask(L, L.ups[x])))
    out.sort(key=lambda f: f.mask)
    L._filters = out
    return out


def scott_open_filters(L):
    return [f for f in filters(L) if f.scott_open]


@dataclass
class LawsonDual:
    """Scott-open filters of L ordered by inclusion, with the witness of
    the finite collapse: filter i is the up-set of ``least[i]`` and the
    assignment is an order isomorphism onto L reversed."""

    lattice: FinLattice
    filters: list
    least: tuple

    def index_of_principal(self, x):
        return self.least.index(x)


def lawson_dual(L):
    """Build sigma-filters-of-L as a lattice and verify its structure.

    Meets must be intersections, joins must be the upward closure of the
    pairwise-meet set, and filter -> least element must invert the order.
    Any failure is an internal-consistency error (LawsonNotLattice).
    """
    fs = scott_open_filters(L)
    m = len(fs)
    ups = []
    for i in range(m):
        ups.append(sum(1 << j for j in range(m) if fs[i].mask & ~fs[j].mask == 0))
    dual = check_lattice(FinPoset(tuple(ups)))
    mask_index = {f.mask: i for i, f in enumerate(fs)}
    for i in range(m):
        for j in range(m):
            inter = fs[i].mask & fs[j].mask
            if mask_index.get(inter) != dual.meet(i, j):
                raise LawsonNotLattice(f"meet of filters {i},{j} is not their intersection")
            pairwise = 0
            for u in bits(fs[i].mask):
                for v in bits(fs[j].mask):
                    pairwise |= 1 << L.meet(u, v)
            up = 0
            for w in bits(pairwise):
                up |= L.ups[w]
            if mask_index.get(up) != dual.join(i, j):
                raise LawsonNotLattice(f"join of filters {i},{j} is not the upward-closed meet set")
    least = tuple(f.least for f in fs)
    if sorted(least) != list(range(L.n)):
        raise LawsonNotLattice("principal filters do not exhaust the lattice")
    for i in range(m):
        for j in range(m):
            if dual.leq(i, j) != L.leq(least[j], least[i]):
                raise LawsonNotLattice("filter inclusion does not invert the order")
    return LawsonDual(dual, fs, least)


# -- lemma-style reports -----------------------------------------------------

@dataclass
class ItemResult:
    ok: bool
    counterexample: object = None
    witnesses: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


@dataclass
class ScottFilterReport:
    items: dict

    @property
    def ok(self):
        return all(r.ok for r in self.items.values())

    def __bool__(self):
        return self.ok


def scott_filter_properties_check(L):
    """Check the five Scott-open-filter properties plus the down-set lemma.

    (a) y << x  iff  some Scott-open filter k has x in k within up(y)
    (b) x in k  implies  some y << x lies in k
    (c) l << k in the dual  iff  some x in k has l within up(x)
    (d) x in k  implies  some l << k contains x
    (e) the Scott-open filters containing a fixed x are codirected
    (down-set) for directed D, the way-below sets of D and of sup D agree
    """
    certify_way_below(L)
    dual = lawson_dual(L)
    fs = dual.filters
    certify_way_below(dual.lattice)
    items = {}

    r = ItemResult(True)
    for x in range(L.n):
        for y in range(L.n):
            has = any(x in k and not k.mask & ~L.ups[y] for k in fs)
            if has != way_below(L, y, x):
                r = ItemResult(False, (x, y))
                break
        if not r.ok:
            break
    items["a"] = r

    r = ItemResult(True)
    for x in range(L.n):
        for k in fs:
            if x in k:
                w = [y for y in bits(way_below_mask(L, x)) if y in k]
                if not w:
                    r = ItemResult(False, (x, k.mask))
                    break
                r.witnesses[(x, k.mask)] = w[0]
        if not r.ok:
            break
    items["b"] = r

    r = ItemResult(True)
    for ki, k in enumerate(fs):
        for li, l in enumerate(fs):
            w = [x for x in k.members() if not l.mask & ~L.ups[x]]
            if bool(w) != way_below(dual.lattice, li, ki):
                r = ItemResult(False, (ki, li))
                break
            if w:
                r.witnesses[(ki, li)] = w[0]
        if not r.ok:
            break
    items["c"] = r

    r = ItemResult(True)
    for x in range(L.n):
        for ki, k in enumerate(fs):
            if x in k:
                w = [li for li in range(len(fs)) if way_below(dual.lattice, li, ki) and x in fs[li]]
                if not w:
                    r = ItemResult(False, (x, ki))
                    break
                r.witnesses[(x, ki)] = w[0]
        if not r.ok:
            break
    items["d"] = r

    r = ItemResult(True)
    for x in range(L.n):
        holding = [k for k in fs if x in k]
        if not holding:
            r = ItemResult(False, x)
            break
        for a, b in itertools.combinations(holding, 2):
            if not any(not k.mask & ~(a.mask & b.mask) for k in holding):
                r = ItemResult(False, (x, a.mask, b.mask))
                break
        if not r.ok:
            break
    items["e"] = r

    r = ItemResult(True)
    for d in L.directed_masks:
        dd = 0
        for y in bits(d):
            dd |= way_below_mask(L, y)
        if dd != way_below_mask(L, L.sup_mask(d)):
            r = ItemResult(False, d)
            break
    items["downset"] = r

    return ScottFilterReport(items)


@dataclass
class WilkerReport:
    ok: bool
    witnesses: dict
    counterexample: object = None

    def __bool__(self):
        return self.ok


def wilker_check(L):
    """For x, y and a Scott-open filter l with x|y in l, find Scott-open
    k, k' with x in k, y in k' and the intersection of k, k' inside l."""
    fs = scott_open_filters(L)
    witnesses = {}
    for x in range(L.n):
        for y in range(L.n):
            xy = L.join(x, y)
            for li, l in enumerate(fs):
                if xy not in l:
                    continue
                found = None
                for k in fs:
                    if x not in k:
                        continue
                    for kp in fs:
                        if y in kp and not (k.mask & kp.mask) & ~l.mask:
                            found = (k.mask, kp.mask)
                            break
                    if found:
                        break
                if not found:
                    return WilkerReport(False, witnesses, (x, y, l.mask))
                witnesses[(x, y, l.mask)] = found
    return WilkerReport(True, witnesses)


@dataclass
class NormalityReport:
    normal: bool
    witness: object = None

    def __bool__(self):
        return self.normal


def is_normal_frame(L):
    """Normality of a finite distributive lattice, with the first failing
    pair (g, h) as witness.  Raises NotDistributive first."""
    L.check_distributive()
    for g in range(L.n):
        for h in range(L.n):
            if L.join(g, h) != L.top:
                continue
            ok = False
            for u in range(L.n):
                if L.join(u, g) != L.top:
                    continue
                for v in range(L.n):
                    if L.join(v, h) == L.top and L.meet(u, v) == L.bot:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return NormalityReport(False, (g, h))
    return NormalityReport(True)


# -- monotone maps -----------------------------------------------------------

@dataclass(frozen=True)
class MonotoneMap:
    """Monotone map between lattices as a value array.

    ``contravariant`` records that the map is read as dom^op -> cod, i.e.
    x <= y in dom forces val[x] >= val[y] in cod.
    """

    dom: object
    cod: object
    val: tuple
    contravariant: bool = False

    def __post_init__(self):
        dom, cod = self.dom, self.cod
        if len(self.val) != dom.n:
            raise OrderError("value array length mismatch")
        for x, y in dom.covers:
            a, b = self.val[x], self.val[y]
            if self.contravariant:
                a, b = b, a
            if not cod.leq(a, b):
                raise OrderError(f"not monotone at cover ({x},{y})")

    def __call__(self, x):
        return self.val[x]


def join_irreducibles(L):
    """Elements that are not the sup of their strict down-set (bot excluded)."""
    out = []
    for x in range(L.n):
        if x == L.bot:
            continue
        if L.sup_mask(L.downs[x] & ~(1 << x)) != x:
            out.append(x)
    return out


def _plain_monotone(P, Q):
    order = P.poset.linear_extension
    nq = Q.n
    val = [0] * P.n
    out = []

    def rec(k):
        if k == len(order):
            out.append(tuple(val))
            return
        x = order[k]
        below = P.downs[x] & ~(1 << x)
        s = Q.bot
        for y in bits(below):
            s = Q.join(s, val[y])
        for q in bits(Q.ups[s]):
            # join of the images of lower elements bounds the candidate
            good = all(Q.leq(val[y], q) for y in bits(below))
            if good:
                val[x] = q
                rec(k + 1)

    rec(0)
    return out


def _sup_preserving_monotone(P, Q, include_empty_sup, fin_inf):
    irr = join_irreducibles(P)
    irr_pos = {j: i for i, j in enumerate(irr)}
    irr_below = [sum(1 << irr_pos[j] for j in irr if P.leq(j, x)) for x in range(P.n)]
    # over distributive lattices join-irreducibles are join-prime, so the
    # extension by joins preserves binary joins automatically and meet
    # preservation reduces to pairs of irreducibles; the general path below
    # stays as the oracle for the non-distributive bases
    fast = P.is_distributive and Q.is_distributive
    incomparable = [
        (x, y)
        for x in range(P.n)
        for y in range(x + 1, P.n)
        if not P.leq(x, y) and not P.leq(y, x)
    ]
    assignments = []
    g = [0] * len(irr)

    def rec(k):
        if k == len(irr):
            assignments.append(tuple(g))
            return
        j = irr[k]
        s = Q.bot
        for i in range(k):
            if P.leq(irr[i], j):
                s = Q.join(s, g[i])
        for q in bits(Q.ups[s]):
            if all(not P.leq(irr[i], j) or Q.leq(g[i], q) for i in range(k)):
                g[k] = q
                rec(k + 1)

    rec(0)
    out = []
    for asg in assignments:
        val = []
        for x in range(P.n):
            s = Q.bot
            for i in bits(irr_below[x]):
                s = Q.join(s, asg[i])
            val.append(s)
        if not fast:
            if any(val[P.join(x, y)] != Q.join(val[x], val[y]) for x, y in incomparable):
                continue
        if fin_inf and include_empty_sup:
            # with the bottom pinned the meet filter can run here; the
            # nonempty-sup branch re-filters after choosing the bottom
            if val[P.top] != Q.top:
                continue
            if fast:
                # meets of irreducible pairs suffice over distributive P, Q
                ok = all(
                    val[P.meet(j1, j2)] == Q.meet(val[j1], val[j2])
                    for j1 in irr
                    for j2 in irr
                )
            else:
                ok = all(
                    val[P.meet(x, y)] == Q.meet(val[x], val[y])
                    for x in range(P.n)
                    for y in range(P.n)
                )
            if not ok:
                continue
        if include_empty_sup:
            out.append(tuple(val))
        else:
            # bottom is unconstrained by nonempty sups beyond monotonicity
            m = Q.top
            for x in range(P.n):
                if x != P.bot:
                    m = Q.meet(m, val[x])
            for q in bits(Q.downs[m]):
                v = list(val)
                v[P.bot] = q
                out.append(tuple(v))
    return out


def enumerate_monotone_maps(
    P,
    Q,
    *,
    contravariant=False,
    preserve_finite_infima=False,
    preserve_arbitrary_suprema=False,
    preserve_nonempty_suprema=False,
):
    """All monotone maps P -> Q satisfying the selected preservation flags.

    Finite infima include the empty one (top to top); arbitrary suprema
    include the empty one (bot to bot); nonempty suprema are binary plus
    directed, and directed suprema are automatic on finite lattices.  With
    contravariant=True the map is enumerated on P read upside down but the
    value array stays indexed by P's own elements.
    """
    src = P.op() if contravariant else P
    need_inf_filter = preserve_finite_infima
    if preserve_arbitrary_suprema:
        vals = _sup_preserving_monotone(src, Q, True, preserve_finite_infima)
        need_inf_filter = False
    elif preserve_nonempty_suprema:
        vals = _sup_preserving_monotone(src, Q, False, False)
    else:
        vals = _plain_monotone(src, Q)
    if need_inf_filter:
        def inf_ok(val):
            if val[src.top] != Q.top:
                return False
            return all(
                val[src.meet(x, y)] == Q.meet(val[x], val[y])
                for x in range(src.n)
                for y in range(src.n)
            )
        vals = [v for v in vals if inf_ok(v)]
    vals = sorted(set(vals))
    return [MonotoneMap(P, Q, v, contravariant) for v in vals]


# -- builders ----------------------------------------------------------------

def poset_from_covers(n, pairs):
    """Reflexive-transitive closure of cover pairs (i, j) meaning i < j."""
    ups = [1 << i for i in range(n)]
    for i, j in pairs:
        if not 0 <= i < n or not 0 <= j < n:
            raise OrderError(f"cover ({i},{j}) out of range")
        ups[i] |= 1 << j
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = ups[i]
            for j in bits(ups[i]):
                acc |= ups[j]
            if acc != ups[i]:
                ups[i] = acc
                changed = True
    return FinPoset(tuple(ups))


def chain(n):
    return check_lattice(poset_from_covers(n, [(i, i + 1) for i in range(n - 1)]))


def antichain(n):
    return FinPoset(tuple(1 << i for i in range(n)))


def boolean_lattice(k):
    """Powerset of k atoms; element index is its atom bitmask."""
    n = 1 << k
    ups = tuple(sum(1 << j for j in range(n) if i & ~j == 0) for i in range(n))
    return check_lattice(FinPoset(ups))


def pentagon():
    return check_lattice(poset_from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))


def diamond_m3():
    return check_lattice(poset_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


def downset_lattice(poset):
    """Lattice of down-closed subsets ordered by inclusion.

    Returns (lattice, labels) where labels[i] is the member bitmask of the
    i-th down-set; down-sets are indexed in ascending bitmask order.
    """
    n = poset.n
    downsets = []
    for mask in range(1 << n):
        if all(not poset.downs[i] & ~mask for i in bits(mask)):
            downsets.append(mask)
    downsets.sort()
    m = len(downsets)
    ups = tuple(
        sum(1 << j for j in range(m) if downsets[i] & ~downsets[j] == 0) for i in range(m)
    )
    return check_lattice(FinPoset(ups)), tuple(downsets)


def _nonnormal5():
    lattice, _ = downset_lattice(poset_from_covers(3, [(0, 1), (0, 2)]))
    return lattice


NAMED_LATTICES = {
    "chain1": lambda: chain(1),
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "chain4": lambda: chain(4),
    "chain5": lambda: chain(5),
    "chain6": lambda: chain(6),
    "bool4": lambda: boolean_lattice(2),
    "bool8": lambda: boolean_lattice(3),
    "n5": pentagon,
    "m3": diamond_m3,
    "nonnormal5": _nonnormal5,
}


def named_lattice(name):
    try:
        return NAMED_LATTICES[name]()
    except KeyError:
        raise OrderError(f"unknown lattice name {name!r}") from None


# -- text format and DOT -----------------------------------------------------

def parse_poset(text, *, headers=("poset", "lattice")):
    """Parse the cover-pair format: a header line, then lines ``i<j``."""
    lines = text.splitlines()
    header = None
    n = None
    pairs = []
    for no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] not in headers:
                raise LatticeParseError(no, f"expected header '<{'|'.join(headers)}> <n>'")
            header = parts[0]
            try:
                n = int(parts[1])
            except ValueError:
                raise LatticeParseError(no, "element count is not an integer") from None
            if n < 0:
                raise LatticeParseError(no, "element count is negative")
            continue
        if "<" not in line:
            raise LatticeParseError(no, "expected a cover pair 'i<j'")
        a, _, b = line.partition("<")
        try:
            i, j = int(a), int(b)
        except ValueError:
            raise LatticeParseError(no, "cover endpoints are not integers") from None
        if not (0 <= i < n and 0 <= j < n):
            raise LatticeParseError(no, f"cover ({i},{j}) out of range for n={n}")
        if i == j:
            raise LatticeParseError(no, "cover relates an element to itself")
        pairs.append((i, j))
    if header is None:
        raise LatticeParseError(1, "empty input")
    try:
        return poset_from_covers(n, pairs)
    except OrderError as e:
        raise LatticeParseError(0, str(e)) from e


def parse_lattice(text):
    return check_lattice(parse_poset(text))


def poset_to_text(p, header="poset"):
    lines = [f"{header} {p.n}"]
    lines += [f"{i}<{j}" for i, j in p.covers]
    return "\n".join(lines) + "\n"


def lattice_to_text(L):
    return poset_to_text(L.poset, header="lattice")


def poset_to_dot(p, labels=None, name="poset"):
    """Hasse diagram: cover edges only, elements ranked by height."""
    labels = labels or [str(i) for i in range(p.n)]
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(p.n):
        lines.append(f'  v{i} [label="{labels[i]}"];')
    by_height = {}
    for i, h in enumerate(p.heights):
        by_height.setdefault(h, []).append(i)
    for h in sorted(by_height):
        row = " ".join(f"v{i};" for i in by_height[h])
        lines.append(f"  {{ rank=same; {row} }}")
    for i, j in p.covers:
        lines.append(f"  v{i} -> v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_dot(L, labels=None, name="lattice"):
    return poset_to_dot(L.poset, labels, name)
