"""Finite compact ordered spaces and their decomposition combinatorics.

A finite compact ordered space is just a finite poset carrying the discrete
topology, so closed subsets are arbitrary subsets and the open-set frame of
the underlying space is the full powerset.  The two associated topologies
(open down-sets / open up-sets), compact saturated sets, the filter-side
order isomorphism, the interpolation criterion for commuting closed pairs
and the decomposition-vs-frame-homomorphism bijection all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .order import (
    CapExceeded,
    FinLattice,
    FinPoset,
    InternalCheckError,
    OrderError,
    bits,
    boolean_lattice,
    check_lattice,
    downset_lattice,
    enumerate_monotone_maps,
    filters,
    scott_open_filters,
)

POINT_CAP = 4


class NotT0(OrderError):
    def __init__(self, x, y):
        super().__init__(f"points {x},{y} share all opens")
        self.x, self.y = x, y


@dataclass
class FinTopSpace:
    """Finite topological space: points 0..n-1 and open sets as bitmasks."""

    n: int
    opens: tuple

    def __post_init__(self):
        opens = set(self.opens)
        full = (1 << self.n) - 1
        if 0 not in opens or full not in opens:
            raise OrderError("topology must contain the empty and full sets")
        for u in opens:
            for v in opens:
                if u | v not in opens or u & v not in opens:
                    raise OrderError("topology not closed under union/intersection")
        self.opens = tuple(sorted(opens))

    def specialization_ups(self):
        """ups[x] = the saturation of x: intersection of all opens holding x."""
        full = (1 << self.n) - 1
        out = []
        for x in range(self.n):
            acc = full
            for u in self.opens:
                if (u >> x) & 1:
                    acc &= u
            out.append(acc)
        return tuple(out)

    def is_t0(self):
        ups = self.specialization_ups()
        for x in range(self.n):
            for y in range(self.n):
                if x != y and (ups[x] >> y) & 1 and (ups[y] >> x) & 1:
                    return False
        return True


@dataclass
class CompOrdSpace:
    """Compact ordered space at finite scale: a poset, discrete topology."""

    poset: FinPoset

    @property
    def n(self):
        return self.poset.n

    def leq(self, x, y):
        return self.poset.leq(x, y)


def down_up_duality(X):
    """The down-open and up-open spaces plus the complement pairing.

    Returns (down, up, pairs) where pairs lists (down_open, complement);
    the pairing is verified to be an order-reversing bijection between the
    two open families.
    """
    n = X.n
    full = (1 << n) - 1
    down_opens = []
    up_opens = []
    for mask in range(1 << n):
        if all(not X.poset.downs[i] & ~mask for i in bits(mask)):
            down_opens.append(mask)
        if all(not X.poset.ups[i] & ~mask for i in bits(mask)):
            up_opens.append(mask)
    down = FinTopSpace(n, tuple(down_opens))
    up = FinTopSpace(n, tuple(up_opens))
    pairs = [(u, full ^ u) for u in down.opens]
    if sorted(c for _, c in pairs) != list(up.opens):
        raise InternalCheckError("complements of down-opens do not exhaust up-opens")
    for u1, c1 in pairs:
        for u2, c2 in pairs:
            if (u1 & ~u2 == 0) != (c2 & ~c1 == 0):
                raise InternalCheckError("complement pairing is not order reversing")
    return down, up, pairs


def down_space(X):
    return down_up_duality(X)[0]


def up_space(X):
    return down_up_duality(X)[1]


def compact_saturated(S):
    """The lattice of compact saturated subsets (= intersections of opens).

    Requires T0.  At finite scale the intersection closure adds nothing
    and the result must coincide with the up-sets of the specialization
    order; both facts are recomputed, not assumed.
    """
    ups = S.specialization_ups()
    for x in range(S.n):
        for y in range(S.n):
            if x != y and (ups[x] >> y) & 1 and (ups[y] >> x) & 1:
                raise NotT0(x, y)
    sats = set(S.opens)
    changed = True
    while changed:
        changed = False
        for a in list(sats):
            for b in list(sats):
                if a & b not in sats:
                    sats.add(a & b)
                    changed = True
    up_sets = {
        mask
        for mask in range(1 << S.n)
        if all(not ups[i] & ~mask for i in bits(mask))
    }
    if sats != up_sets:
        raise InternalCheckError("saturated sets differ from specialization up-sets")
    sats = sorted(sats)
    m = len(sats)
    rows = tuple(
        sum(1 << j for j in range(m) if sats[i] & ~sats[j] == 0) for i in range(m)
    )
    return check_lattice(FinPoset(rows)), tuple(sats)


def open_set_lattice(S):
    m = len(S.opens)
    rows = tuple(
        sum(1 << j for j in range(m) if S.opens[i] & ~S.opens[j] == 0) for i in range(m)
    )
    return check_lattice(FinPoset(rows))


def hofmann_mislove_check(S):
    """Order isomorphism between compact saturated sets (reversed) and
    Scott-open filters of the open-set lattice, with the stated inverse."""
    ksat, sat_masks = compact_saturated(S)
    omega = open_set_lattice(S)
    sofs = scott_open_filters(omega)
    filter_by_mask = {f.mask: f for f in sofs}
    assign = {}
    for ki, k in enumerate(sat_masks):
        members = sum(1 << ui for ui, u in enumerate(S.opens) if k & ~u == 0)
        f = filter_by_mask.get(members)
        if f is None:
            return False
        assign[ki] = f
    if len({f.mask for f in assign.values()}) != len(sofs):
        return False
    for k1 in range(len(sat_masks)):
        for k2 in range(len(sat_masks)):
            contained = sat_masks[k1] & ~sat_masks[k2] == 0
            reversed_inclusion = assign[k2].mask & ~assign[k1].mask == 0
            if contained != reversed_inclusion:
                return False
    full = (1 << S.n) - 1
    for ki, f in assign.items():
        inter = full
        for ui in bits(f.mask):
            inter &= S.opens[ui]
        if inter != sat_masks[ki]:
            return False
    return True


def closed_commute(X, c1, c2):
    """Interpolation criterion for two closed subsets (given as bitmasks)."""
    inter = c1 & c2
    for x1 in bits(c1):
        for x2 in bits(c2):
            if X.leq(x1, x2):
                if not any(X.leq(x1, z) and X.leq(z, x2) for z in bits(inter)):
                    return False
            if X.leq(x2, x1):
                if not any(X.leq(x2, z) and X.leq(z, x1) for z in bits(inter)):
                    return False
    return True


@dataclass
class ClosedCommuteReport:
    criterion: bool
    pushout_matches_union: bool

    @property
    def agree(self):
        return self.criterion == self.pushout_matches_union

    def __bool__(self):
        return self.criterion


def closed_commute_report(X, c1, c2):
    """The criterion next to the poset-pushout experiment.

    The pushout of the two inclusions from the intersection is the union
    carrying the transitive closure of the two induced orders; it matches
    the union with its induced order exactly when nothing new is forced.
    Disagreement with the criterion would be a finding, so both verdicts
    are reported.
    """
    union = c1 | c2
    pts = list(bits(union))
    idx = {p: i for i, p in enumerate(pts)}
    m = len(pts)
    generated = [1 << i for i in range(m)]
    for part in (c1, c2):
        for a in bits(part):
            for b in bits(part):
                if X.leq(a, b):
                    generated[idx[a]] |= 1 << idx[b]
    changed = True
    while changed:
        changed = False
        for i in range(m):
            acc = generated[i]
            for j in bits(generated[i]):
                acc |= generated[j]
            if acc != generated[i]:
                generated[i] = acc
                changed = True
    induced = [
        sum(1 << j for j, q in enumerate(pts) if X.leq(p, q)) for p in pts
    ]
    matches = generated == induced
    return ClosedCommuteReport(closed_commute(X, c1, c2), matches)


def interpolating_check(q, X, Y):
    """Is the point map q: X -> Y (read into the down-open space of Y) an
    interpolating decomposition?"""
    if len(q) != X.n or any(not 0 <= v < Y.n for v in q):
        raise OrderError("point map out of range")
    for x1 in range(X.n):
        for x2 in range(X.n):
            if not X.leq(x1, x2):
                continue
            if not any(
                X.leq(x1, z) and X.leq(z, x2) and Y.leq(q[x1], q[z]) and Y.leq(q[x2], q[z])
                for z in range(X.n)
            ):
                return False
    return True


@dataclass
class DecompositionReport:
    """Two independent enumerations and the connecting bijection.

    ``interpolating`` holds the qualifying point maps; ``frame_homs`` the
    finite-meet/all-join preserving maps from down-sets of Y to subsets of
    X with pairwise-commuting image (commutation read through complements
    and the interpolation criterion); ``pairing`` maps each point map to
    the index of its preimage homomorphism.
    """

    interpolating: list
    frame_homs: list
    pairing: dict
    bijection: bool

    @property
    def counts(self):
        return {"decompositions": len(self.interpolating), "frame_homs": len(self.frame_homs)}

    def __bool__(self):
        return self.bijection


def decomposition_bijection_check(X, Y, cap=POINT_CAP):
    if X.n > cap or Y.n > cap:
        raise CapExceeded("decomposition bijection", max(X.n, Y.n), cap)
    decompositions = [
        q for q in itertools.product(range(Y.n), repeat=X.n) if interpolating_check(q, X, Y)
    ]

    dy, dy_labels = downset_lattice(Y.poset)
    px = boolean_lattice(X.n)  # element index is the subset bitmask
    full_x = (1 << X.n) - 1
    candidates = enumerate_monotone_maps(
        dy, px, preserve_finite_infima=True, preserve_arbitrary_suprema=True
    )
    frame_homs = []
    for f in candidates:
        image = sorted(set(f.val))
        ok = True
        for a in image:
            for b in image:
                if not closed_commute(X, full_x ^ a, full_x ^ b):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            frame_homs.append(f.val)

    hom_index = {v: i for i, v in enumerate(frame_homs)}
    pairing = {}
    ok = True
    for q in decompositions:
        val = tuple(
            sum(1 << x for x in range(X.n) if (dy_labels[i] >> q[x]) & 1)
            for i in range(dy.n)
        )
        if val not in hom_index:
            ok = False
            break
        pairing[q] = hom_index[val]
    if ok:
        ok = len(set(pairing.values())) == len(decompositions) == len(frame_homs)
    return DecompositionReport(decompositions, frame_homs, pairing, ok)


def decomposition_to_dot(q, X, Y, name="decomposition"):
    """DOT drawing: both posets side by side, the map as dashed arrows."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  subgraph cluster_x {", '    label="X";']
    for i in range(X.n):
        lines.append(f'    x{i} [label="{i}"];')
    for i, j in X.poset.covers:
        lines.append(f"    x{i} -> x{j};")
    lines.append("  }")
    lines.append("  subgraph cluster_y {")
    lines.append('    label="Y";')
    for i in range(Y.n):
        lines.append(f'    y{i} [label="{i}"];')
    for i, j in Y.poset.covers:
        lines.append(f"    y{i} -> y{j};")
    lines.append("  }")
    for x, y in enumerate(q):
        lines.append(f"  x{x} -> y{y} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
