"""Named families and combinatorial moves.

Generators: antiprisms A(n) (ideal), Löbell polyhedra L(n) and towers
(compact).  Moves: the edge-twist on two disjoint edges of a face, edge
surgery / edge addition between large faces, and connected sums along
same-size faces.  All moves are implemented as face-list surgeries followed
by a full rebuild, so every result is re-validated structurally.

Faces of generated polyhedra carry provenance tags (e.g. "lateral-pent-6"):
two faces share a tag only when the corresponding hyperbolic polygons are
known to be isometric, which is what justifies volume additivity of a
connected sum along them.  Ideal triangles are all isometric, so every
triangular face of an ideal polyhedron is implicitly glueable; tags matter
only in the compact case.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .core import (AbstractPolyhedron, BadParameter, PolyhedronError,
                   andreev_check, build_from_faces, canonical_code,
                   canonical_form, decode_code, prismatic_circuits)


class MoveError(PolyhedronError):
    pass


class BadOperands(MoveError):
    pass


class WrongKind(MoveError):
    pass


class NotVeryGood(MoveError):
    pass


class SizeMismatch(MoveError):
    pass


class UnsupportedIdealGluing(MoveError):
    pass


Edge = tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


# -- named families --------------------------------------------------------

def antiprism(n: int) -> AbstractPolyhedron:
    """Ideal antiprism A(n): two n-gon bases, 2n lateral triangles."""
    if n < 3:
        raise BadParameter("antiprism needs n >= 3")
    top = list(range(n))
    bot = [n + i for i in range(n)]
    faces: list[list[int]] = [top, list(reversed(bot))]
    tags: list[Optional[str]] = [None, None]
    for i in range(n):
        j = (i + 1) % n
        faces.append([top[i], bot[i], top[j]])
        faces.append([bot[i], top[j], bot[j]])
        tags.extend(["tri", "tri"])
    return build_from_faces(faces, tags)


def lobell(n: int) -> AbstractPolyhedron:
    """Compact Löbell polyhedron L(n): two n-gon bases, 2n lateral
    pentagons; 4n vertices, all 3-valent."""
    if n < 5:
        raise BadParameter("lobell needs n >= 5")
    A = list(range(n))
    B = [n + i for i in range(n)]
    C = [2 * n + i for i in range(n)]
    D = [3 * n + i for i in range(n)]
    faces: list[list[int]] = [A, list(reversed(D))]
    # every face of the regular right-angled dodecahedron is the same
    # regular pentagon; for n >= 6 only the lateral pentagons are mutually
    # isometric, and the bases form their own class
    if n == 5:
        tags: list[Optional[str]] = ["pent-5", "pent-5"]
        lateral = "pent-5"
    else:
        tags = [f"base-{n}", f"base-{n}"]
        lateral = f"lateral-pent-{n}"
    for i in range(n):
        j = (i + 1) % n
        faces.append([A[i], A[j], B[j], C[j], B[i]])
        faces.append([D[i], D[j], C[j], B[i], C[i]])
        tags.extend([lateral, lateral])
    return build_from_faces(faces, tags)


def tower(n: int, k: int) -> AbstractPolyhedron:
    """Tower of k copies of L(n) glued successively along n-gon bases."""
    if n < 5 or k < 1:
        raise BadParameter("tower needs n >= 5, k >= 1")
    result = lobell(n)
    for _ in range(k - 1):
        piece = lobell(n)
        f1 = _base_face(result, n)
        f2 = _base_face(piece, n)
        result = connect_sum(result, f1, piece, f2, (0, 1))
    return result


def _base_face(poly: AbstractPolyhedron, n: int) -> int:
    for fi, f in enumerate(poly.faces):
        if len(f) == n:
            return fi
    raise PolyhedronError(f"no {n}-gon face")


# -- move descriptors ------------------------------------------------------

@dataclass(frozen=True)
class MoveDescriptor:
    """Replayable record of a move.

    Operand vertex/face indices refer to the canonically labelled
    representative of the polyhedron the move is applied to (see
    ``replay``), which makes logs stable across runs.
    """
    kind: str  # twist | surgery | addition | compose
    params: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": list(self.params)}

    @staticmethod
    def from_json(data: dict) -> "MoveDescriptor":
        def fix(x):
            return tuple(fix(y) for y in x) if isinstance(x, list) else x
        return MoveDescriptor(data["kind"], fix(data["params"]))

    def apply(self, poly: AbstractPolyhedron) -> AbstractPolyhedron:
        if self.kind == "twist":
            e1, e2 = self.params
            return edge_twist(poly, tuple(e1), tuple(e2))
        if self.kind == "surgery":
            return edge_surgery(poly, tuple(self.params[0]))
        if self.kind == "addition":
            f, ea, eb = self.params
            return edge_addition(poly, f, tuple(ea), tuple(eb))[0]
        if self.kind == "compose":
            other_code, f1, f2, offset, direction = self.params
            other = decode_code(other_code)
            return connect_sum(poly, f1, other, f2, (offset, direction))
        raise MoveError(f"unknown move kind {self.kind}")


def replay(seed_code: str, moves: Sequence[MoveDescriptor]) -> str:
    """Apply a provenance log starting from a seed code; the polyhedron is
    re-canonicalized after every move so stored operand indices are valid."""
    poly = decode_code(seed_code)
    for mv in moves:
        poly = canonical_form(mv.apply(poly))
    return canonical_code(poly)


# -- edge twist ------------------------------------------------------------

def edge_twist_candidates(poly: AbstractPolyhedron) -> list[tuple[Edge, Edge]]:
    """Unordered pairs of vertex-disjoint edges on a common face whose four
    endpoints are all 4-valent."""
    found = set()
    for f in poly.faces:
        m = len(f)
        bedges = [(f[i], f[(i + 1) % m]) for i in range(m)]
        for (a1, b1), (a2, b2) in combinations(bedges, 2):
            if {a1, b1} & {a2, b2}:
                continue
            if any(poly.degree(v) != 4 for v in (a1, b1, a2, b2)):
                continue
            pair = tuple(sorted((_edge(a1, b1), _edge(a2, b2))))
            found.add(pair)
    return sorted(found)


def edge_twist(poly: AbstractPolyhedron, e1: Edge, e2: Edge
               ) -> AbstractPolyhedron:
    """Delete e1, e2 (disjoint edges of a common face) and join their four
    endpoints to one new 4-valent vertex."""
    e1, e2 = _edge(*e1), _edge(*e2)
    pair = tuple(sorted((e1, e2)))
    if pair not in edge_twist_candidates(poly):
        raise BadOperands(f"{e1}, {e2} is not a twistable pair")
    e1, e2 = pair
    common = None
    for fi, f in enumerate(poly.faces):
        if _contains_edge(f, e1) and _contains_edge(f, e2):
            common = fi
            break
    f = poly.faces[common]
    m = len(f)
    i = next(i for i in range(m) if _edge(f[i], f[(i + 1) % m]) == e1)
    j = next(i for i in range(m) if _edge(f[i], f[(i + 1) % m]) == e2)
    if i > j:
        i, j = j, i
        e1, e2 = e2, e1
    v = poly.V
    # split the face at the two deleted edges; both arcs close up through v
    arc1 = [f[t] for t in range(i + 1, j + 1)]
    arc2 = [f[t % m] for t in range(j + 1, i + 1 + m)]
    new_faces = [list(g) for fi2, g in enumerate(poly.faces) if fi2 != common]
    new_faces.append(arc1 + [v])
    new_faces.append(arc2 + [v])
    # the outside faces of e1, e2 gain v between the endpoints
    for e in (e1, e2):
        for g in new_faces[:-2]:
            if _contains_edge(g, e):
                _insert_between(g, e, v)
                break
    return build_from_faces(new_faces)


def _contains_edge(cycle: Sequence[int], e: Edge) -> bool:
    m = len(cycle)
    return any(_edge(cycle[i], cycle[(i + 1) % m]) == e for i in range(m))


def _insert_between(cycle: list, e: Edge, v: int) -> None:
    m = len(cycle)
    for i in range(m):
        if _edge(cycle[i], cycle[(i + 1) % m]) == e:
            cycle.insert(i + 1, v)
            return
    raise MoveError(f"edge {e} not on face")


# -- good edges, surgery, addition ----------------------------------------

def _edge_faces(poly: AbstractPolyhedron) -> dict[Edge, list[int]]:
    out: dict[Edge, list[int]] = {}
    for fi, f in enumerate(poly.faces):
        for i, a in enumerate(f):
            out.setdefault(_edge(a, f[(i + 1) % len(f)]), []).append(fi)
    return out


def good_edges(poly: AbstractPolyhedron) -> list[tuple[Edge, str]]:
    """Edges joining two non-adjacent faces with >= 6 sides each; classified
    'very_good' when additionally on no prismatic 5-circuit."""
    if poly.kind != "compact":
        raise WrongKind("good edges are defined for compact polyhedra")
    ef = _edge_faces(poly)
    adjacent = set(ef)  # face pairs sharing an edge, via lookup below
    face_pairs = {tuple(sorted(fs)) for fs in ef.values()}
    crossed5 = {e for c in prismatic_circuits(poly, 5) for e in c.crossed_edges}
    out = []
    for e in sorted(ef):
        v1, v2 = e
        side = set(ef[e])
        f1 = next(fi for fi in _faces_with_vertex(poly, v1) if fi not in side)
        f2 = next(fi for fi in _faces_with_vertex(poly, v2) if fi not in side)
        if f1 == f2:
            continue
        if tuple(sorted((f1, f2))) in face_pairs:
            continue  # adjacent
        if len(poly.faces[f1]) < 6 or len(poly.faces[f2]) < 6:
            continue
        out.append((e, "good" if e in crossed5 else "very_good"))
    return out


def _faces_with_vertex(poly: AbstractPolyhedron, v: int):
    return [fi for fi, f in enumerate(poly.faces) if v in f]


def edge_surgery(poly: AbstractPolyhedron, e: Edge) -> AbstractPolyhedron:
    """Delete a very good edge: its two 3-valent endpoints dissolve and the
    two side faces merge; V drops by 2."""
    e = _edge(*e)
    classification = dict(good_edges(poly))
    if classification.get(e) != "very_good":
        raise NotVeryGood(f"edge {e} is not very good")
    v1, v2 = e
    ef = _edge_faces(poly)
    side_a, side_b = ef[e]
    merged = _merge_across(list(poly.faces[side_a]), list(poly.faces[side_b]), e)
    new_faces = []
    for fi, f in enumerate(poly.faces):
        if fi in (side_a, side_b):
            continue
        new_faces.append([v for v in f if v not in (v1, v2)])
    new_faces.append([v for v in merged if v not in (v1, v2)])
    return _renumber_and_build(new_faces)


def edge_addition(poly: AbstractPolyhedron, face: int, e_a: Edge, e_b: Edge):
    """Subdivide two non-adjacent boundary edges of a face with new 3-valent
    vertices joined by a new edge, splitting the face.

    Returns (polyhedron, validity report): additions can produce
    combinatorially fine but non-realizable results, so the caller filters.
    """
    e_a, e_b = _edge(*e_a), _edge(*e_b)
    f = poly.faces[face]
    m = len(f)
    if set(e_a) & set(e_b):
        raise BadOperands("edges must be non-adjacent")
    if not (_contains_edge(f, e_a) and _contains_edge(f, e_b)) or e_a == e_b:
        raise BadOperands("edges must be distinct boundary edges of the face")
    i = next(i for i in range(m) if _edge(f[i], f[(i + 1) % m]) == e_a)
    j = next(i for i in range(m) if _edge(f[i], f[(i + 1) % m]) == e_b)
    if i > j:
        i, j = j, i
        e_a, e_b = e_b, e_a
    x, y = poly.V, poly.V + 1
    part1 = [x] + [f[t] for t in range(i + 1, j + 1)] + [y]
    part2 = [y] + [f[t % m] for t in range(j + 1, i + 1 + m)] + [x]
    new_faces = [list(g) for fi, g in enumerate(poly.faces) if fi != face]
    for e, v in ((e_a, x), (e_b, y)):
        for g in new_faces:
            if _contains_edge(g, e):
                _insert_between(g, e, v)
                break
    new_faces.append(part1)
    new_faces.append(part2)
    result = build_from_faces(new_faces)
    return result, andreev_check(result)


def _merge_across(fa: list, fb: list, e: Edge) -> list:
    """Concatenate two face cycles along a shared edge, removing it."""
    a = _rotate_to_edge(fa, e)
    b = _rotate_to_edge(fb, e)
    if a[0] == b[0]:
        b = [b[0]] + list(reversed(b[1:]))
        b = _rotate_to_edge(b, e)
    assert a[0] == b[-1] and a[-1] == b[0]
    return a + b[1:-1]


def _rotate_to_edge(cycle: list, e: Edge) -> list:
    """Rotate so the cycle starts just after the given edge (the edge is the
    wrap-around pair)."""
    m = len(cycle)
    for i in range(m):
        if _edge(cycle[i], cycle[(i + 1) % m]) == e:
            return [cycle[(i + 1 + t) % m] for t in range(m)]
    raise MoveError(f"edge {e} not on face")


def _renumber_and_build(faces: list[list[int]],
                        tags: Optional[list] = None) -> AbstractPolyhedron:
    used = sorted({v for f in faces for v in f})
    remap = {v: i for i, v in enumerate(used)}
    return build_from_faces([[remap[v] for v in f] for f in faces], tags)


# -- connected sums --------------------------------------------------------

def connect_sum(p1: AbstractPolyhedron, f1: int,
                p2: AbstractPolyhedron, f2: int,
                matching: tuple[int, int] = (0, 1)) -> AbstractPolyhedron:
    """Glue p1 and p2 along faces f1, f2 of equal size k.

    ``matching = (offset, direction)`` identifies vertex t of the f1 cycle
    with vertex (offset + direction*t) mod k of the f2 cycle.

    Ideal kind: k must be 3; the triangle edges are deleted and the three
    vertex pairs identified (result has V1+V2-3 vertices).  Compact kind:
    k >= 5; both faces vanish, boundary vertices dissolve into edge
    interiors (V1+V2-2k vertices).  Tags of merged faces are kept only when
    both parts agree.
    """
    kind = p1.kind
    if p2.kind != kind or kind not in ("ideal", "compact"):
        raise WrongKind("connect_sum needs two polyhedra of one kind")
    c1, c2 = p1.faces[f1], p2.faces[f2]
    if len(c1) != len(c2):
        raise SizeMismatch(f"faces have sizes {len(c1)} and {len(c2)}")
    k = len(c1)
    if kind == "ideal" and k != 3:
        raise UnsupportedIdealGluing("ideal gluing only along triangles")
    if kind == "compact" and k < 5:
        raise SizeMismatch("compact faces have at least 5 sides")
    offset, direction = matching
    # map p2 vertices: glued-boundary vertices onto their partners in p1,
    # the rest to fresh indices above p1's range
    partner = {c2[(offset + direction * t) % k]: c1[t] for t in range(k)}
    shift = {}
    nxt = p1.V
    for v in range(p2.V):
        if v not in partner:
            shift[v] = nxt
            nxt += 1
    mapped = {**partner, **shift}

    faces: list[list[int]] = []
    tags: list = []
    for fi, f in enumerate(p1.faces):
        if fi != f1:
            faces.append(list(f))
            tags.append(p1.face_tags[fi] if p1.face_tags else None)
    for fi, f in enumerate(p2.faces):
        if fi != f2:
            faces.append([mapped[v] for v in f])
            tags.append(p2.face_tags[fi] if p2.face_tags else None)

    # around the glued boundary, faces of the two parts merge pairwise
    boundary = [(_edge(c1[t], c1[(t + 1) % k])) for t in range(k)]
    for e in boundary:
        ids = [i for i, f in enumerate(faces) if _contains_edge(f, e)]
        if len(ids) != 2:
            raise MoveError("degenerate gluing: boundary edge reuse")
        ia, ib = ids
        merged = _merge_across(faces[ia], faces[ib], e)
        mtag = tags[ia] if tags[ia] == tags[ib] else None
        faces = [f for i, f in enumerate(faces) if i not in (ia, ib)]
        newtags = [t for i, t in enumerate(tags) if i not in (ia, ib)]
        faces.append(merged)
        newtags.append(mtag)
        tags = newtags

    if kind == "compact":
        # glued vertices become interior edge points: drop them
        drop = set(c1)
        faces = [[v for v in f if v not in drop] for f in faces]
    result = _renumber_and_build(faces, tags)
    expected = p1.V + p2.V - (2 * k if kind == "compact" else 3)
    if result.V != expected:
        raise MoveError("gluing produced unexpected vertex count")
    return result


def connect_sum_all(p1: AbstractPolyhedron, f1: int,
                    p2: AbstractPolyhedron, f2: int
                    ) -> list[AbstractPolyhedron]:
    """All matchings (k rotations x 2 reflections), de-duplicated by
    canonical code; degenerate gluings are skipped."""
    k = len(p1.faces[f1])
    seen = {}
    for direction in (1, -1):
        for offset in range(k):
            try:
                q = connect_sum(p1, f1, p2, f2, (offset, direction))
            except MoveError:
                continue
            seen.setdefault(canonical_code(q), q)
    return [seen[c] for c in sorted(seen)]
