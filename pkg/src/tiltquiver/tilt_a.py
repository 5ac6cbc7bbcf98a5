"""Tilting modules over a hereditary quiver algebra and their exchange graph.

Over a hereditary algebra a basic module with n pairwise Ext-orthogonal
rigid indecomposable summands is tilting (count criterion), so
enumeration is clique search over the indecomposable pool under the
symmetric compatibility relation Ext1(X,Y) = Ext1(Y,X) = 0.  The
exchange graph has the tilting modules as vertices and one arc per
almost complete module with two complements, oriented along the short
exact sequence 0 -> X -> E -> Y -> 0 (from the module containing X to
the one containing Y); the engine certifies every arc twice, once by
the Ext criterion and once by building the sequence.

The same machinery runs on the double-arrow (tame) quiver restricted to
a preprojective/preinjective window; everything touching the window rim
is flagged window-limited instead of being trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .quiver_core import Quiver, named_diagram, orientations
from .rep_a import (
    IndecId,
    Rep,
    exchange_sequence,
    ext1_dim,
    indecomposables,
    kronecker_window,
)

__all__ = [
    "Tilting",
    "Arc",
    "TiltingGraph",
    "Saturation",
    "enumerate_tilting",
    "complements",
    "AlmostComplete",
    "almost_complete_survey",
    "tilting_quiver",
    "kronecker_tilting_quiver",
    "zero_support",
    "nonsaturated_tame",
    "orientation_invariance",
]


class Pool:
    """Indecomposable pool with a cached Ext table and compatibility."""

    def __init__(self, quiver: Quiver, items: Sequence[tuple[IndecId, Rep]]):
        self.quiver = quiver
        self.ids = [iid for iid, _ in items]
        self.reps = [rep for _, rep in items]
        self.index_of = {iid: i for i, iid in enumerate(self.ids)}
        size = len(items)
        self._ext = [[None] * size for _ in range(size)]
        for i in range(size):
            assert self.ext(i, i) == 0, f"pool member {self.ids[i]} is not rigid"

    def ext(self, i: int, j: int) -> int:
        e = self._ext[i][j]
        if e is None:
            e = ext1_dim(self.reps[i], self.reps[j])
            self._ext[i][j] = e
        return e

    def compatible(self, i: int, j: int) -> bool:
        return self.ext(i, j) == 0 and self.ext(j, i) == 0

    def __len__(self) -> int:
        return len(self.ids)


_POOLS: dict[Quiver, Pool] = {}
_KRON_POOLS: dict[int, Pool] = {}


def _dynkin_pool(q: Quiver) -> Pool:
    if q not in _POOLS:
        _POOLS[q] = Pool(q, indecomposables(q))
    return _POOLS[q]


def _kron_pool(w: int) -> Pool:
    if w not in _KRON_POOLS:
        _KRON_POOLS[w] = Pool(named_diagram("K"), kronecker_window(w))
    return _KRON_POOLS[w]


class Tilting(NamedTuple):
    """A basic tilting module, as sorted pool indices plus bookkeeping."""

    indices: tuple[int, ...]
    ids: tuple[IndecId, ...]
    dim_sum: tuple[int, ...]

    def label(self) -> str:
        return "+".join(str(i) for i in self.ids)


@dataclass(frozen=True)
class Arc:
    src: int
    dst: int
    x: IndecId
    y: IndecId
    e_dims: tuple[int, ...]


class Saturation(NamedTuple):
    s: int
    e: int
    sigma: int
    saturated: bool
    dim_criterion: bool


@dataclass
class TiltingGraph:
    quiver: Quiver
    pool: Pool
    tiltings: list[Tilting]
    arcs: list[Arc]
    boundary: set[int] = field(default_factory=set)  # window-limited vertices

    @property
    def n(self) -> int:
        return self.quiver.n

    def index_of(self, t: Tilting | tuple[int, ...]) -> int:
        key = t.indices if isinstance(t, Tilting) else tuple(sorted(t))
        for i, cand in enumerate(self.tiltings):
            if cand.indices == key:
                return i
        raise ValueError(f"tilting module {key} not a vertex of this graph")

    def out_degree(self, i: int) -> int:
        return sum(1 for a in self.arcs if a.src == i)

    def in_degree(self, i: int) -> int:
        return sum(1 for a in self.arcs if a.dst == i)

    def saturation(self, t: Tilting | int) -> Saturation:
        i = t if isinstance(t, int) else self.index_of(t)
        if not 0 <= i < len(self.tiltings):
            raise ValueError(f"no vertex {i}")
        s, e = self.out_degree(i), self.in_degree(i)
        dims = self.tiltings[i].dim_sum
        return Saturation(s, e, s + e, s + e == self.n, all(d >= 2 for d in dims))

    def weak_components(self) -> list[list[int]]:
        parent = list(range(len(self.tiltings)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arcs:
            ra, rb = find(a.src), find(a.dst)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for i in range(len(self.tiltings)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.weak_components()) <= 1


# ---------------------------------------------------------------------------
# enumeration


def _cliques(pool: Pool, size: int) -> list[tuple[int, ...]]:
    """All ascending pairwise-compatible index tuples of the given size."""
    total = len(pool)
    out: list[tuple[int, ...]] = []
    cur: list[int] = []

    def rec(start: int) -> None:
        if len(cur) == size:
            out.append(tuple(cur))
            return
        need = size - len(cur)
        for i in range(start, total - need + 1):
            if all(pool.compatible(j, i) for j in cur):
                cur.append(i)
                rec(i + 1)
                cur.pop()

    rec(0)
    return out


def _tilting_from_indices(pool: Pool, idx: tuple[int, ...]) -> Tilting:
    q = pool.quiver
    dims = [0] * q.n
    for i in idx:
        for k, d in enumerate(pool.reps[i].dim_vector()):
            dims[k] += d
    return Tilting(idx, tuple(pool.ids[i] for i in idx), tuple(dims))


def enumerate_tilting(q: Quiver) -> list[Tilting]:
    """All basic tilting modules of a quiver with Dynkin components.

    Uses the count criterion: n pairwise compatible rigid
    indecomposables form a tilting module over a hereditary algebra.
    The empty quiver has exactly one (the zero module), which keeps
    deleted-vertex counting uniform.
    """
    if q.n == 0:
        return [Tilting((), (), ())]
    pool = _dynkin_pool(q)
    return [_tilting_from_indices(pool, c) for c in _cliques(pool, q.n)]


def complements(q: Quiver, m: Iterable[IndecId | tuple[int, ...]]) -> list[IndecId]:
    """All indecomposables completing an almost complete tilting module."""
    pool = _dynkin_pool(q)
    idx = []
    for item in m:
        iid = item if isinstance(item, IndecId) else IndecId("dyn", tuple(item))
        if iid not in pool.index_of:
            raise ValueError(f"unknown summand {iid}")
        idx.append(pool.index_of[iid])
    if len(set(idx)) != len(idx) or len(idx) != q.n - 1:
        raise ValueError(f"need {q.n - 1} distinct summands, got {idx}")
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if not pool.compatible(idx[a], idx[b]):
                raise ValueError("summand set is not partial tilting")
    got = _complement_indices(pool, tuple(sorted(idx)))
    return [pool.ids[c] for c in got]


def _complement_indices(pool: Pool, rest: tuple[int, ...]) -> list[int]:
    rest_set = set(rest)
    return [
        c for c in range(len(pool))
        if c not in rest_set and all(pool.compatible(r, c) for r in rest)
    ]


class AlmostComplete(NamedTuple):
    """An almost complete tilting module with its completion data."""

    summands: tuple[IndecId, ...]
    dim_sum: tuple[int, ...]
    sincere: bool
    zero_support: tuple[int, ...]
    complements: tuple[IndecId, ...]

    def label(self) -> str:
        return "+".join(str(i) for i in self.summands)


def almost_complete_survey(q: Quiver) -> list[AlmostComplete]:
    """Every almost complete tilting module with all its complements."""
    pool = _dynkin_pool(q)
    out = []
    for rest in _cliques(pool, q.n - 1):
        ds = summand_dim_sum(q, [pool.reps[i] for i in rest])
        zeros = zero_support(q, ds)
        comps = _complement_indices(pool, rest)
        out.append(AlmostComplete(
            tuple(pool.ids[i] for i in rest),
            ds,
            not zeros,
            tuple(sorted(zeros)),
            tuple(pool.ids[c] for c in comps),
        ))
    return out


# ---------------------------------------------------------------------------
# graph construction


def _build_graph(q: Quiver, pool: Pool, cliques: list[tuple[int, ...]],
                 certify: bool = True) -> TiltingGraph:
    position = {c: i for i, c in enumerate(cliques)}
    arcs: list[Arc] = []
    comp_cache: dict[tuple[int, ...], list[int]] = {}
    for T in cliques:
        for x in T:
            rest = tuple(j for j in T if j != x)
            if rest in comp_cache:
                comps = comp_cache[rest]
            else:
                comps = _complement_indices(pool, rest)
                comp_cache[rest] = comps
            assert x in comps
            if len(comps) == 1:
                continue
            if len(comps) > 2:
                raise RuntimeError(
                    f"almost complete module {rest} has {len(comps)} complements"
                )
            other = comps[0] if comps[1] == x else comps[1]
            # orientation: the sequence runs from the complement X with
            # Ext1(Y, X) != 0 towards Y; exactly one direction may fire
            e_other_x = pool.ext(other, x)
            e_x_other = pool.ext(x, other)
            if (e_other_x > 0) == (e_x_other > 0):
                raise RuntimeError(
                    f"ambiguous exchange orientation between {pool.ids[x]} "
                    f"and {pool.ids[other]}"
                )
            if e_other_x == 0:
                continue  # x is the Y side; the arc is recorded from the X side
            partner = tuple(sorted(rest + (other,)))
            if partner not in position:
                continue  # partner falls outside a windowed vertex set
            seq_dims: tuple[int, ...]
            if certify:
                got = exchange_sequence(pool.reps[x], [pool.reps[r] for r in rest])
                assert got is not None, "certified arc lost its exchange sequence"
                e_rep, y_rep = got
                assert y_rep.dim_vector() == pool.reps[other].dim_vector()
                seq_dims = e_rep.dim_vector()
            else:
                seq_dims = tuple(
                    a + b for a, b in zip(pool.reps[x].dim_vector(),
                                          pool.reps[other].dim_vector())
                )
            arcs.append(Arc(position[T], position[partner],
                            pool.ids[x], pool.ids[other], seq_dims))
    arcs.sort(key=lambda a: (a.src, a.dst))
    tilts = [_tilting_from_indices(pool, c) for c in cliques]
    return TiltingGraph(q, pool, tilts, arcs)


def tilting_quiver(q: Quiver) -> TiltingGraph:
    """Exchange graph of all tilting modules (Dynkin components only)."""
    if q.n == 0:
        return TiltingGraph(q, Pool(q, []), [Tilting((), (), ())], [])
    pool = _dynkin_pool(q)
    return _build_graph(q, pool, _cliques(pool, q.n))


def kronecker_tilting_quiver(w: int) -> TiltingGraph:
    """Window piece of the double-arrow exchange graph.

    Vertices whose summands touch the outermost orbit index w may miss
    arcs that leave the window; they are collected in ``boundary`` and
    must be treated as window-limited by any verifier.
    """
    if w < 1:
        raise ValueError("window must be >= 1 to see any tilting pair")
    pool = _kron_pool(w)
    g = _build_graph(pool.quiver, pool, _cliques(pool, 2))
    rim = {i for i, iid in enumerate(pool.ids) if iid.key[0] == w}
    g.boundary = {
        pos for pos, t in enumerate(g.tiltings) if any(i in rim for i in t.indices)
    }
    return g


# ---------------------------------------------------------------------------
# saturation bookkeeping


def zero_support(q: Quiver, dim_sum: Sequence[int]) -> set[int]:
    """Vertices where a summand-set dimension sum vanishes."""
    dv = q.dimvec(dim_sum)
    return {v for v, d in zip(q.vertices, dv) if d == 0}


def summand_dim_sum(q: Quiver, reps: Iterable[Rep]) -> tuple[int, ...]:
    dims = [0] * q.n
    for r in reps:
        for k, d in enumerate(r.dim_vector()):
            dims[k] += d
    return tuple(dims)


# ---------------------------------------------------------------------------
# tame non-saturated analysis


@dataclass
class NonSaturatedSet:
    window: int
    parts: dict[int, list[Tilting]]      # deleted vertex -> completions
    delta: list[Tilting]
    interior_nonsaturated: list[Tilting]
    agrees_with_flags: bool


def nonsaturated_tame(w: int) -> NonSaturatedSet:
    """Non-saturated tilting modules of the double-arrow quiver.

    For each vertex x the deleted quiver is a single point whose unique
    tilting module lifts to the window module supported off x; its
    unique completion contributes to the part at x.  The union is
    cross-checked against the saturation flags of every non-boundary
    window vertex.
    """
    if w < 2:
        raise ValueError("window must be >= 2 so the rim stays clear of the answer")
    q = named_diagram("K")
    pool = _kron_pool(w)
    g = kronecker_tilting_quiver(w)
    parts: dict[int, list[Tilting]] = {}
    seen: dict[tuple[int, ...], Tilting] = {}
    for x in q.vertices:
        deleted = q.delete_vertex(x)
        lifts: list[tuple[int, ...]] = []
        for sub in enumerate_tilting(deleted):
            want = [0] * q.n
            for live, d in zip(deleted.vertices, sub.dim_sum):
                want[q.v_pos[live]] = d
            matches = [
                i for i, rep in enumerate(pool.reps)
                if list(rep.dim_vector()) == want
            ]
            if len(matches) != 1:
                raise ValueError(
                    f"no unique window module with dimensions {want}; enlarge the window"
                )
            lifts.append((matches[0],))
        part: list[Tilting] = []
        for rest in lifts:
            comps = _complement_indices(pool, rest)
            if not comps:
                raise ValueError(
                    f"no completion found for {rest} inside window {w}; enlarge it"
                )
            assert len(comps) == 1, "support-restricted module completed ambiguously"
            idx = tuple(sorted(rest + (comps[0],)))
            t = seen.setdefault(idx, _tilting_from_indices(pool, idx))
            part.append(t)
        parts[x] = part
    delta = sorted(seen.values(), key=lambda t: t.indices)
    interior = [
        g.tiltings[i]
        for i in range(len(g.tiltings))
        if i not in g.boundary and not g.saturation(i).saturated
    ]
    agrees = sorted(t.indices for t in interior) == [t.indices for t in delta]
    return NonSaturatedSet(w, parts, delta, interior, agrees)


# ---------------------------------------------------------------------------
# orientation invariance


def orientation_invariance(diagram: str | Quiver) -> dict:
    """Per-orientation (s, t) table with the deleted-vertex identity.

    For every orientation of the given Dynkin diagram: s counts tilting
    modules, t counts exchange arcs, and m sums the deleted-vertex
    tilting counts; the report checks 2t + m = n*s per orientation and
    that t never varies.
    """
    qs = orientations(diagram)
    n = qs[0].n
    if n > 5:
        raise ValueError("orientation sweep capped at rank 5")
    per = []
    violations = []
    t_seen = set()
    for k, q in enumerate(qs):
        g = tilting_quiver(q)
        s, t = len(g.tiltings), len(g.arcs)
        m = sum(len(enumerate_tilting(q.delete_vertex(x))) for x in q.vertices)
        lhs, rhs = 2 * t + m, n * s
        entry = {
            "orientation": k,
            "arrows": [(a.source, a.target) for a in q.arrows],
            "s": s, "t": t, "m": m, "lhs": lhs, "rhs": rhs,
        }
        per.append(entry)
        t_seen.add(t)
        if lhs != rhs:
            violations.append({"orientation": k, "reason": "identity", **entry})
    if len(t_seen) != 1:
        violations.append({"reason": "arc count varies", "values": sorted(t_seen)})
    return {
        "n": n,
        "per_orientation": per,
        "t_constant": len(t_seen) == 1,
        "violations": violations,
        "status": "pass" if not violations else "violation",
    }
