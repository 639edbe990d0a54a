"""Combinatorial representation of abstract polyhedra on the 2-sphere.

An abstract polyhedron is stored as a rotation system: for every vertex, the
cyclic (counterclockwise) order of its neighbours.  Faces are derived by
tracing the orbits of directed edges.  On top of this the module implements
the validity predicates for right-angled hyperbolic realizability: the
Steinitz condition (3-connectivity), prismatic circuits in the dual, and the
full right-angled realizability test, plus canonical codes used for
isomorphism rejection in the censuses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence


class PolyhedronError(ValueError):
    """Base class for structural errors."""


class NotASphere(PolyhedronError):
    pass


class NotSimple(PolyhedronError):
    pass


class Disconnected(PolyhedronError):
    pass


class InconsistentEdgeUse(PolyhedronError):
    pass


class BadParameter(PolyhedronError):
    pass


CODE_PREFIX = "RA1:"


def _trace_faces(rotation: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Orbits of directed edges under the next-dart map.

    The dart following (u, v) belongs to the same face and is (v, w) where w
    succeeds u in the rotation at v.
    """
    index = [{w: i for i, w in enumerate(nbrs)} for nbrs in rotation]
    seen = set()
    faces = []
    for u in range(len(rotation)):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            cycle = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                cycle.append(a)
                i = index[b][a]
                a, b = b, rotation[b][(i + 1) % len(rotation[b])]
            faces.append(_normalize_cycle(cycle))
    faces.sort()
    return faces


def _normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cycle so it starts at its smallest element (ties broken
    lexicographically); direction is preserved."""
    n = len(cycle)
    best = None
    m = min(cycle)
    for i, x in enumerate(cycle):
        if x == m:
            cand = tuple(cycle[i:]) + tuple(cycle[:i])
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True)
class AbstractPolyhedron:
    """Immutable rotation system with derived faces.

    ``rotation[v]`` lists the neighbours of ``v`` in cyclic order.  ``faces``
    are the traced face cycles (each rotated to a canonical starting point).
    ``face_tags`` optionally records geometric provenance per face (used for
    volume additivity of connected sums); tags never affect combinatorics.
    """

    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    face_tags: tuple[Optional[str], ...] = field(compare=False, default=())

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rotation(rotation: Iterable[Iterable[int]],
                      face_tags: Optional[Sequence[Optional[str]]] = None
                      ) -> "AbstractPolyhedron":
        rot = tuple(tuple(nbrs) for nbrs in rotation)
        n = len(rot)
        if n == 0:
            raise Disconnected("empty polyhedron")
        for v, nbrs in enumerate(rot):
            if any(w < 0 or w >= n for w in nbrs):
                raise PolyhedronError("neighbour index out of range")
            if v in nbrs:
                raise NotSimple(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise NotSimple(f"parallel edge at vertex {v}")
            if len(nbrs) == 0:
                raise Disconnected(f"isolated vertex {v}")
        for v, nbrs in enumerate(rot):
            for w in nbrs:
                if v not in rot[w]:
                    raise PolyhedronError(f"edge {v}-{w} not symmetric")
        # connectivity
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in rot[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            raise Disconnected("graph is not connected")
        faces = _trace_faces(rot)
        E = sum(len(nbrs) for nbrs in rot) // 2
        if n - E + len(faces) != 2:
            raise NotASphere(
                f"V-E+F = {n}-{E}+{len(faces)} != 2")
        # every edge on two distinct faces
        edge_faces: dict[tuple[int, int], list[int]] = {}
        for fi, f in enumerate(faces):
            for i, a in enumerate(f):
                b = f[(i + 1) % len(f)]
                edge_faces.setdefault((min(a, b), max(a, b)), []).append(fi)
        for e, fs in edge_faces.items():
            if len(fs) != 2 or fs[0] == fs[1]:
                raise InconsistentEdgeUse(f"edge {e} lies on faces {fs}")
        if face_tags is None:
            tags = (None,) * len(faces)
        else:
            if len(face_tags) != len(faces):
                raise PolyhedronError("face_tags length mismatch")
            tags = tuple(face_tags)
        return AbstractPolyhedron(rot, tuple(faces), tags)

    # -- basic derived data ------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def V(self) -> int:
        return len(self.rotation)

    @property
    def E(self) -> int:
        return sum(len(nbrs) for nbrs in self.rotation) // 2

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        out = set()
        for v, nbrs in enumerate(self.rotation):
            for w in nbrs:
                out.add((min(v, w), max(v, w)))
        return tuple(sorted(out))

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @property
    def kind(self) -> str:
        degs = {len(nbrs) for nbrs in self.rotation}
        if degs == {4}:
            return "ideal"
        if degs == {3}:
            return "compact"
        if degs <= {3, 4}:
            return "mixed"
        return "non-right-angled"

    def faces_at(self, v: int) -> tuple[int, ...]:
        """Indices of the faces incident to v, in rotation order: entry i is
        the face containing the corner (rotation[v][i], v, rotation[v][i+1])
        walked in face direction v -> rotation[v][i+1]."""
        lookup = {}
        for fi, f in enumerate(self.faces):
            for i, a in enumerate(f):
                lookup[(a, f[(i + 1) % len(f)])] = fi
        nbrs = self.rotation[v]
        return tuple(lookup[(v, nbrs[(i + 1) % len(nbrs)])]
                     for i in range(len(nbrs)))

    def face_index(self, cycle: Sequence[int]) -> int:
        """Index of the face equal to ``cycle`` up to rotation/reflection."""
        want = frozenset(cycle)
        for fi, f in enumerate(self.faces):
            if len(f) == len(cycle) and frozenset(f) == want:
                return fi
        raise PolyhedronError(f"no face with cycle {tuple(cycle)}")

    def with_tags(self, tags: Sequence[Optional[str]]) -> "AbstractPolyhedron":
        if len(tags) != self.F:
            raise PolyhedronError("face_tags length mismatch")
        return AbstractPolyhedron(self.rotation, self.faces, tuple(tags))

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"faces": [list(f) for f in self.faces]})

    @staticmethod
    def from_json(text: str) -> "AbstractPolyhedron":
        data = json.loads(text)
        return build_from_faces(data["faces"])


@dataclass(frozen=True)
class CountsProfile:
    V: int
    E: int
    F: int
    p: dict  # k -> number of k-gonal faces
    kind: str


@dataclass(frozen=True)
class PrismaticCircuit:
    k: int
    dual_cycle: tuple[int, ...]
    crossed_edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ValidityReport:
    steinitz_ok: bool
    cond_faces_ge6: bool
    cond_valency: bool
    cond_triples: bool
    cond_no_prismatic4: bool
    kind: str
    witness: Optional[object] = None

    @property
    def valid(self) -> bool:
        return (self.steinitz_ok and self.cond_faces_ge6 and
                self.cond_valency and self.cond_triples and
                self.cond_no_prismatic4)


def build_from_faces(faces: Sequence[Sequence[int]],
                     face_tags: Optional[Sequence[Optional[str]]] = None
                     ) -> AbstractPolyhedron:
    """Reconstruct the rotation system from a list of face cycles.

    Input cycles may be arbitrarily rotated/reflected; they are re-oriented
    consistently by a BFS over face adjacencies before the rotation at each
    vertex is read off from the face corners.
    """
    cycles = [tuple(f) for f in faces]
    if not cycles:
        raise Disconnected("no faces")
    verts = set()
    keys = set()
    for f in cycles:
        if len(f) < 3:
            raise PolyhedronError("face cycle shorter than 3")
        if len(set(f)) != len(f):
            raise NotSimple(f"repeated vertex in face {f}")
        key = _dihedral_key(f)
        if key in keys:
            raise InconsistentEdgeUse(f"duplicate face {f}")
        keys.add(key)
        verts.update(f)
    n = max(verts) + 1
    if verts != set(range(n)):
        raise PolyhedronError("vertex indices not dense in 0..V-1")

    # undirected edge -> list of (face index, traversal direction)
    edge_use: dict[tuple[int, int], list[int]] = {}
    for fi, f in enumerate(cycles):
        for i, a in enumerate(f):
            b = f[(i + 1) % len(f)]
            edge_use.setdefault((min(a, b), max(a, b)), []).append(fi)
    for e, fs in edge_use.items():
        if len(fs) != 2 or fs[0] == fs[1]:
            raise InconsistentEdgeUse(f"edge {e} used by faces {fs}")

    # orient faces consistently: across every edge the two faces must
    # traverse it in opposite directions
    oriented: list[Optional[tuple[int, ...]]] = [None] * len(cycles)
    oriented[0] = cycles[0]
    queue = [0]
    while queue:
        fi = queue.pop()
        f = oriented[fi]
        for i, a in enumerate(f):
            b = f[(i + 1) % len(f)]
            e = (min(a, b), max(a, b))
            other = edge_use[e][0] if edge_use[e][1] == fi else edge_use[e][1]
            g = cycles[other]
            dirs = _edge_direction(g, a, b)
            if oriented[other] is None:
                oriented[other] = g if dirs == -1 else tuple(reversed(g))
                queue.append(other)
            else:
                if _edge_direction(oriented[other], a, b) != -1:
                    raise NotASphere("faces cannot be oriented consistently")
    if any(f is None for f in oriented):
        raise Disconnected("face complex is not connected")

    # rotation at v: corner (prev, v, next) of an oriented face says that
    # neighbour `next` follows neighbour `prev` around v
    succ: list[dict[int, int]] = [dict() for _ in range(n)]
    for f in oriented:
        m = len(f)
        for i, v in enumerate(f):
            prev, nxt = f[(i - 1) % m], f[(i + 1) % m]
            if prev in succ[v]:
                raise InconsistentEdgeUse(f"vertex {v} corner used twice")
            succ[v][prev] = nxt
    rotation = []
    for v in range(n):
        if not succ[v]:
            raise Disconnected(f"isolated vertex {v}")
        start = min(succ[v])
        cyc = [start]
        cur = succ[v][start]
        while cur != start:
            if cur in cyc:
                raise NotASphere(f"vertex link at {v} is not a single cycle")
            cyc.append(cur)
            cur = succ[v].get(cur)
            if cur is None:
                raise NotASphere(f"vertex link at {v} is not a single cycle")
        if len(cyc) != len(succ[v]):
            raise NotASphere(f"vertex link at {v} is not a single cycle")
        rotation.append(tuple(cyc))

    poly = AbstractPolyhedron.from_rotation(rotation)
    if face_tags is not None:
        if len(face_tags) != len(cycles):
            raise PolyhedronError("face_tags length mismatch")
        tag_by_key = {_dihedral_key(f): t for f, t in zip(cycles, face_tags)}
        tags = tuple(tag_by_key.get(_dihedral_key(f)) for f in poly.faces)
        poly = poly.with_tags(tags)
    return poly


def _dihedral_key(cycle: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a cycle under rotation and reflection."""
    fwd = _normalize_cycle(cycle)
    rev = _normalize_cycle(tuple(reversed(cycle)))
    return min(fwd, rev)


def _edge_direction(cycle: Sequence[int], a: int, b: int) -> int:
    """+1 if cycle traverses a->b, -1 if b->a, 0 if edge absent."""
    m = len(cycle)
    for i, x in enumerate(cycle):
        y = cycle[(i + 1) % m]
        if (x, y) == (a, b):
            return 1
        if (x, y) == (b, a):
            return -1
    return 0


def counts(poly: AbstractPolyhedron) -> CountsProfile:
    p: dict[int, int] = {}
    for f in poly.faces:
        p[len(f)] = p.get(len(f), 0) + 1
    return CountsProfile(V=poly.V, E=poly.E, F=poly.F, p=p, kind=poly.kind)


def is_steinitz(poly: AbstractPolyhedron) -> bool:
    """3-connectivity by deleting every vertex pair."""
    n = poly.V
    if n < 4:
        return False
    adj = [set(nbrs) for nbrs in poly.rotation]
    for u, v in combinations(range(n), 2):
        keep = [w for w in range(n) if w not in (u, v)]
        if len(keep) <= 1:
            continue
        seen = {keep[0]}
        stack = [keep[0]]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in (u, v) and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(keep):
            return False
    return True


def dual(poly: AbstractPolyhedron) -> AbstractPolyhedron:
    """Face-vertex dual with the inherited rotation system."""
    lookup = {}
    for fi, f in enumerate(poly.faces):
        for i, a in enumerate(f):
            lookup[(a, f[(i + 1) % len(f)])] = fi
    rotation = []
    for f in poly.faces:
        m = len(f)
        # neighbouring faces in order around f: across each boundary edge
        rotation.append(tuple(lookup[(f[(i + 1) % m], f[i])]
                              for i in range(m)))
    return AbstractPolyhedron.from_rotation(rotation)


def _dual_adjacency(poly: AbstractPolyhedron
                    ) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """(fi, fj) with fi < fj -> list of shared (primal) edges."""
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for fi, f in enumerate(poly.faces):
        for i, a in enumerate(f):
            b = f[(i + 1) % len(f)]
            edge_faces.setdefault((min(a, b), max(a, b)), []).append(fi)
    shared: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e, (fa, fb) in edge_faces.items():
        key = (min(fa, fb), max(fa, fb))
        shared.setdefault(key, []).append(e)
    for v in shared.values():
        v.sort()
    return shared


def prismatic_circuits(poly: AbstractPolyhedron, k: int
                       ) -> list[PrismaticCircuit]:
    """All prismatic k-circuits: simple dual k-cycles whose crossed primal
    edges are pairwise vertex-disjoint.  Deterministic lexicographic order."""
    if k < 3:
        raise BadParameter("k must be >= 3")
    shared = _dual_adjacency(poly)
    nbrs: dict[int, list[int]] = {}
    for (fa, fb) in shared:
        nbrs.setdefault(fa, []).append(fb)
        nbrs.setdefault(fb, []).append(fa)
    for v in nbrs.values():
        v.sort()
    out = []

    def extend(path: list[int]) -> None:
        if len(path) == k:
            if path[0] in nbrs.get(path[-1], ()) and path[1] < path[-1]:
                _emit(path)
            return
        for w in nbrs.get(path[-1], ()):
            if w > path[0] and w not in path:
                path.append(w)
                extend(path)
                path.pop()

    def _emit(path: list[int]) -> None:
        choices = []
        for i in range(k):
            a, b = path[i], path[(i + 1) % k]
            choices.append(shared[(min(a, b), max(a, b))])
        for combo in _product(choices):
            vs = set()
            ok = True
            for (a, b) in combo:
                if a in vs or b in vs:
                    ok = False
                    break
                vs.add(a)
                vs.add(b)
            if ok:
                out.append(PrismaticCircuit(k, tuple(path), tuple(combo)))

    for f0 in sorted(nbrs):
        extend([f0])
    out.sort(key=lambda c: (c.dual_cycle, c.crossed_edges))
    return out


def _product(choices):
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for rest in _product(choices[1:]):
            yield (head,) + rest


def andreev_check(poly: AbstractPolyhedron) -> ValidityReport:
    """Right-angled realizability test.

    Conditions: Steinitz 1-skeleton; at least six faces; every vertex 3- or
    4-valent; any two faces joined through a common neighbour face by a pair
    of disjoint edges are themselves disjoint; no prismatic 4-circuit in the
    dual.  kind = ideal iff all vertices are 4-valent (ideal vertices),
    compact iff all 3-valent (finite vertices).
    """
    steinitz_ok = is_steinitz(poly)
    cond_faces = poly.F >= 6
    cond_val = poly.kind in ("ideal", "compact", "mixed")
    witness = None

    cond_triples = True
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for fi, f in enumerate(poly.faces):
        for i, a in enumerate(f):
            b = f[(i + 1) % len(f)]
            edge_faces.setdefault((min(a, b), max(a, b)), []).append(fi)
    face_sets = [set(f) for f in poly.faces]
    for j, f in enumerate(poly.faces):
        m = len(f)
        bedges = [(f[i], f[(i + 1) % m]) for i in range(m)]
        for (a1, b1), (a2, b2) in combinations(bedges, 2):
            if {a1, b1} & {a2, b2}:
                continue
            e1 = (min(a1, b1), max(a1, b1))
            e2 = (min(a2, b2), max(a2, b2))
            i1 = next(x for x in edge_faces[e1] if x != j)
            i2 = next(x for x in edge_faces[e2] if x != j)
            if i1 == i2 or i1 == j or i2 == j:
                continue
            if face_sets[i1] & face_sets[i2]:
                cond_triples = False
                if witness is None:
                    witness = ("triple", i1, j, i2)
    p4 = prismatic_circuits(poly, 4)
    cond_no_p4 = not p4
    if p4 and witness is None:
        witness = ("prismatic4", p4[0])
    if not steinitz_ok and witness is None:
        witness = ("steinitz",)
    if not cond_faces and witness is None:
        witness = ("faces", poly.F)
    if not cond_val and witness is None:
        bad = next(v for v in range(poly.V) if poly.degree(v) not in (3, 4))
        witness = ("valency", bad)
    return ValidityReport(steinitz_ok, cond_faces, cond_val, cond_triples,
                          cond_no_p4, poly.kind, witness)


# -- canonical codes -------------------------------------------------------

def _trace_labelling(rotation, start: int, anchor0: int, direction: int):
    """BFS relabelling determined by a start dart and an orientation.

    Returns the relabelled rotation rows in BFS order, plus the vertex
    permutation old -> new.
    """
    n = len(rotation)
    label = {start: 0}
    order = [start]
    anchor = {start: anchor0}
    qi = 0
    rows = []
    while qi < len(order):
        u = order[qi]
        qi += 1
        ru = rotation[u]
        deg = len(ru)
        a = anchor[u]
        seq = [ru[(a + direction * t) % deg] for t in range(deg)]
        for w in seq:
            if w not in label:
                label[w] = len(order)
                order.append(w)
                anchor[w] = rotation[w].index(u)
        rows.append(tuple(label[w] for w in seq))
    if len(order) != n:
        raise Disconnected("graph is not connected")
    return tuple(rows), label


def canonical_rotation(poly: AbstractPolyhedron):
    """Lexicographically minimal BFS relabelling over all start darts and
    both orientations; invariant under relabelling and reflection."""
    best = None
    best_label = None
    for s in range(poly.V):
        for a in range(len(poly.rotation[s])):
            for d in (1, -1):
                rows, label = _trace_labelling(poly.rotation, s, a, d)
                if best is None or rows < best:
                    best = rows
                    best_label = label
    return best, best_label


def canonical_code(poly: AbstractPolyhedron) -> str:
    rows, _ = canonical_rotation(poly)
    payload = ";".join(",".join(str(x) for x in row) for row in rows)
    return CODE_PREFIX + payload


def decode_code(code: str) -> AbstractPolyhedron:
    if not code.startswith(CODE_PREFIX):
        raise PolyhedronError("missing RA1 header")
    rows = [tuple(int(x) for x in part.split(","))
            for part in code[len(CODE_PREFIX):].split(";")]
    return AbstractPolyhedron.from_rotation(rows)


def canonical_form(poly: AbstractPolyhedron) -> AbstractPolyhedron:
    """The canonically labelled representative, carrying over face tags."""
    rows, label = canonical_rotation(poly)
    rep = AbstractPolyhedron.from_rotation(rows)
    if any(t is not None for t in poly.face_tags):
        tag_by_key = {}
        for f, t in zip(poly.faces, poly.face_tags):
            tag_by_key[frozenset(label[v] for v in f)] = t
        tags = tuple(tag_by_key.get(frozenset(f)) for f in rep.faces)
        rep = rep.with_tags(tags)
    return rep


def load_polyhedron(text: str) -> AbstractPolyhedron:
    """Parse either polyhedron JSON ({"faces": ...}) or an RA1 code."""
    text = text.strip()
    if text.startswith("{"):
        return AbstractPolyhedron.from_json(text)
    if text.startswith(CODE_PREFIX):
        return decode_code(text)
    raise PolyhedronError("unrecognized polyhedron format")
