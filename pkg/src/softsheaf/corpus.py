"""Deterministic corpus generation: finite lattices, posets and T0 spaces.

Posets on n labelled elements are enumerated as reflexive-transitive
upper-triangular relations (every poset relabels so that the numeric order
is a linear extension); isomorphism classes are keyed by a canonical form
that minimizes the order-matrix bitstring over the permutations respecting
an invariant-refinement pre-pass.  T0 spaces are posets in disguise
(opens are the up-sets), so one enumeration serves both.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .order import FinPoset, OrderError, bits, check_lattice, poset_to_text

DEFAULT_LATTICE_CAP = 6
DEFAULT_POINT_CAP = 5


def _refinement_classes(p):
    """Group elements by an iterated order invariant (size-stable)."""
    n = p.n
    inv = [
        (bin(p.downs[i]).count("1"), bin(p.ups[i]).count("1"), p.heights[i]) for i in range(n)
    ]
    for _ in range(n):
        nxt = []
        for i in range(n):
            down_profile = sorted(inv[j] for j in bits(p.downs[i]) if j != i)
            up_profile = sorted(inv[j] for j in bits(p.ups[i]) if j != i)
            nxt.append((inv[i], tuple(down_profile), tuple(up_profile)))
        ranks = {v: r for r, v in enumerate(sorted(set(nxt)))}
        new_inv = [(ranks[v],) for v in nxt]
        if new_inv == inv:
            break
        inv = new_inv
    classes = {}
    for i in range(n):
        classes.setdefault(inv[i], []).append(i)
    return [classes[k] for k in sorted(classes)]


def canonical_key(p):
    """Minimal order-matrix bitstring over invariant-respecting relabelings."""
    n = p.n
    classes = _refinement_classes(p)
    best = None
    for perm_parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        position = [0] * n
        spot = 0
        for part in perm_parts:
            for old in part:
                position[old] = spot
                spot += 1
        code = 0
        for i in range(n):
            for j in bits(p.ups[i]):
                code |= 1 << (position[i] * n + position[j])
        if best is None or code < best:
            best = code
    return (n, best)


def are_isomorphic(p1, p2):
    """Brute-force poset isomorphism search (reference oracle)."""
    if p1.n != p2.n:
        return False
    n = p1.n
    for perm in itertools.permutations(range(n)):
        if all(
            p1.leq(i, j) == p2.leq(perm[i], perm[j]) for i in range(n) for j in range(n)
        ):
            return True
    return False


def enumerate_posets(n):
    """All posets on n labelled elements whose numeric order is a linear
    extension, as upper-triangular transitive relations."""
    if n == 0:
        return
    strict_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(strict_pairs)):
        ups = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(strict_pairs):
            if (mask >> k) & 1:
                ups[i] |= 1 << j
        ok = True
        for i in range(n):
            acc = ups[i]
            for j in bits(ups[i]):
                acc |= ups[j]
            if acc != ups[i]:
                ok = False
                break
        if ok:
            yield FinPoset(tuple(ups))


def poset_classes(n):
    """Isomorphism classes of posets on n elements, canonical order."""
    seen = {}
    for p in enumerate_posets(n):
        key = canonical_key(p)
        if key not in seen:
            seen[key] = p
    return [seen[k] for k in sorted(seen)]


def poset_classes_by_extension(n):
    """Independent recount: grow posets by adding a new maximal element
    over each down-closed subset, deduplicating by canonical form."""
    if n == 0:
        return []
    if n == 1:
        return [FinPoset((1,))]
    out = {}
    for base in poset_classes_by_extension(n - 1):
        m = base.n
        downsets = [
            mask
            for mask in range(1 << m)
            if all(not base.downs[i] & ~mask for i in bits(mask))
        ]
        for d in downsets:
            ups = [base.ups[i] | ((1 << m) if (d >> i) & 1 else 0) for i in range(m)]
            ups.append(1 << m)
            p = FinPoset(tuple(ups))
            key = canonical_key(p)
            if key not in out:
                out[key] = p
    return [out[k] for k in sorted(out)]


def lattice_classes(n):
    """Isomorphism classes of n-element lattices, canonical order."""
    out = []
    for p in poset_classes(n):
        try:
            out.append(check_lattice(p))
        except OrderError:
            continue
    return out


def corpus_lattices(max_size):
    out = []
    for n in range(1, max_size + 1):
        out.extend(lattice_classes(n))
    return out


def corpus_posets(max_size):
    out = []
    for n in range(1, max_size + 1):
        out.extend(poset_classes(n))
    return out


@dataclass
class CorpusManifest:
    seed: int
    caps: dict
    lattice_counts: dict
    poset_counts: dict
    files: list

    def to_json(self):
        return json.dumps(
            {
                "seed": self.seed,
                "caps": self.caps,
                "lattice_counts": self.lattice_counts,
                "poset_counts": self.poset_counts,
                "files": self.files,
            },
            indent=2,
            sort_keys=True,
        )


def generate_corpus(seed, max_lattice, max_points, out_dir):
    """Write the lattice and poset corpora plus a manifest.

    The enumeration is deterministic; the seed is recorded so that runs
    are reproducible byte for byte under the same configuration.
    """
    import os

    os.makedirs(out_dir, exist_ok=True)
    files = []
    lattice_counts = {}
    for n in range(1, max_lattice + 1):
        classes = lattice_classes(n)
        lattice_counts[str(n)] = len(classes)
        for k, lat in enumerate(classes):
            name = f"lattice_{n}_{k}.lat"
            path = os.path.join(out_dir, name)
            with open(path, "w") as fh:
                fh.write(poset_to_text(lat.poset, header="lattice"))
            files.append(name)
    poset_counts = {}
    for n in range(1, max_points + 1):
        classes = poset_classes(n)
        poset_counts[str(n)] = len(classes)
        for k, p in enumerate(classes):
            name = f"poset_{n}_{k}.pos"
            path = os.path.join(out_dir, name)
            with open(path, "w") as fh:
                fh.write(poset_to_text(p))
            files.append(name)
    manifest = CorpusManifest(
        seed,
        {"max_lattice": max_lattice, "max_points": max_points},
        lattice_counts,
        poset_counts,
        files,
    )
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        fh.write(manifest.to_json())
    return manifest
