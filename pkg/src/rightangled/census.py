"""Exhaustive enumeration of right-angled polyhedra within a vertex budget.

Ideal polyhedra: closure of the antiprisms under the edge-twist move.
Compact polyhedra: closure of the Löbell polyhedra under edge addition
(validity-filtered) and connected sums over all face-size matches.  Both
censuses deduplicate by canonical code and record a replayable provenance
log per member.

All moves strictly increase the vertex count, so enumeration proceeds level
by level; members below the current level are final, which makes the output
independent of worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .core import (AbstractPolyhedron, BadParameter, andreev_check,
                   canonical_code, canonical_form, decode_code)
from .moves import (MoveDescriptor, MoveError, antiprism, connect_sum,
                    edge_addition, edge_twist, edge_twist_candidates, lobell)
from .volumes import lobell_volume


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class CensusMember:
    code: str
    ver: int
    provenance: dict  # {"seed": code, "moves": [descriptor json, ...]}
    volume: Optional[float] = None  # closed-form/additive only (compact)
    face_tags: Optional[tuple] = None


@dataclass
class CensusResult:
    kind: str
    n_max: int
    members: dict  # code -> CensusMember
    stats: dict = field(default_factory=dict)

    @property
    def by_n(self) -> dict:
        out: dict[int, list[str]] = {}
        for m in self.members.values():
            out.setdefault(m.ver, []).append(m.code)
        for v in out.values():
            v.sort()
        return out

    def counts(self) -> dict:
        return {n: len(codes) for n, codes in sorted(self.by_n.items())}


@dataclass
class GrowthGraph:
    generations: list  # list of sorted code lists
    edges: set  # (parent code, child code)


# -- ideal census ----------------------------------------------------------

def _twist_children(code: str) -> list[tuple[str, dict]]:
    """All valid ideal twist children of a canonical representative."""
    poly = decode_code(code)
    out = {}
    for e1, e2 in edge_twist_candidates(poly):
        child = edge_twist(poly, e1, e2)
        if not andreev_check(child).valid or child.kind != "ideal":
            continue
        ccode = canonical_code(child)
        desc = MoveDescriptor("twist", (e1, e2)).to_json()
        if ccode not in out:
            out[ccode] = desc
    return sorted(out.items())


def ideal_census(n_max: int, jobs: int = 1,
                 max_nodes: int = 200000) -> CensusResult:
    """All ideal right-angled polyhedra with 6..n_max vertices."""
    if n_max < 6:
        raise BadParameter("ideal census needs n_max >= 6")
    members: dict[str, CensusMember] = {}
    stats = {"frontier": {}, "dedup_hits": 0}

    def insert(code: str, ver: int, provenance: dict) -> bool:
        if code in members:
            stats["dedup_hits"] += 1
            return False
        if len(members) >= max_nodes:
            raise BudgetExceeded(f"node cap {max_nodes} reached")
        members[code] = CensusMember(code, ver, provenance)
        return True

    for m in range(3, n_max // 2 + 1):
        seed = antiprism(m)
        code = canonical_code(seed)
        insert(code, seed.V, {"seed": code, "moves": []})

    for n in range(6, n_max):
        frontier = sorted(c for c, mem in members.items() if mem.ver == n)
        stats["frontier"][n] = len(frontier)
        if not frontier:
            continue
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                expanded = list(pool.map(_twist_children, frontier))
        else:
            expanded = [_twist_children(c) for c in frontier]
        for parent, children in zip(frontier, expanded):
            base = members[parent].provenance
            for ccode, desc in children:
                insert(ccode, n + 1,
                       {"seed": base["seed"],
                        "moves": base["moves"] + [desc]})
    return CensusResult("ideal", n_max, members, stats)


# -- compact census --------------------------------------------------------

def _addition_children(args) -> list[tuple[str, dict, tuple]]:
    """All valid edge-addition children: (code, descriptor, tags)."""
    code, tags = args
    poly = decode_code(code)
    out = {}
    for fi, f in enumerate(poly.faces):
        m = len(f)
        bedges = [(f[i], f[(i + 1) % m]) for i in range(m)]
        for ea, eb in combinations(bedges, 2):
            if set(ea) & set(eb):
                continue
            child, report = edge_addition(poly, fi, ea, eb)
            if not report.valid or child.kind != "compact":
                continue
            ccode = canonical_code(child)
            if ccode in out:
                continue
            ea_s = (min(ea), max(ea))
            eb_s = (min(eb), max(eb))
            desc = MoveDescriptor("addition", (fi, ea_s, eb_s)).to_json()
            out[ccode] = desc
    return sorted((c, d, None) for c, d in out.items())


def compact_census(n_max: int, jobs: int = 1,
                   max_nodes: int = 200000) -> CensusResult:
    """All compact right-angled polyhedra with 20..n_max vertices.

    Members carry a volume whenever it is additively constructible: Löbell
    closed forms plus connected sums along faces whose provenance tags
    certify isometry.  Other members have volume None.
    """
    if n_max < 20:
        raise BadParameter("compact census needs n_max >= 20")
    members: dict[str, CensusMember] = {}
    stats = {"frontier": {}, "dedup_hits": 0}

    def insert(code: str, ver: int, provenance: dict,
               volume=None, tags=None) -> None:
        if code in members:
            stats["dedup_hits"] += 1
            mem = members[code]
            if mem.volume is None and volume is not None:
                mem.volume = volume
                mem.face_tags = tags
            return
        if len(members) >= max_nodes:
            raise BudgetExceeded(f"node cap {max_nodes} reached")
        members[code] = CensusMember(code, ver, provenance, volume, tags)

    for m in range(5, n_max // 4 + 1):
        seed = canonical_form(lobell(m))
        code = canonical_code(seed)
        insert(code, seed.V, {"seed": code, "moves": []},
               volume=lobell_volume(m).value, tags=seed.face_tags)

    for n in range(22, n_max + 1, 2):
        parents = sorted(c for c, mem in members.items() if mem.ver == n - 2)
        stats["frontier"][n - 2] = len(parents)
        # edge additions from the previous level
        tasks = [(c, members[c].face_tags) for c in parents]
        if jobs > 1 and tasks:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                expanded = list(pool.map(_addition_children, tasks))
        else:
            expanded = [_addition_children(t) for t in tasks]
        for parent, children in zip(parents, expanded):
            base = members[parent].provenance
            for ccode, desc, _ in children:
                insert(ccode, n,
                       {"seed": base["seed"],
                        "moves": base["moves"] + [desc]})
        # connected sums of earlier members producing exactly n vertices
        final = sorted(c for c, mem in members.items() if mem.ver < n)
        for c1, c2 in combinations_with_repeats(final):
            m1, m2 = members[c1], members[c2]
            p1 = _tagged(c1, m1)
            p2 = _tagged(c2, m2)
            sizes1 = {len(f) for f in p1.faces}
            sizes2 = {len(f) for f in p2.faces}
            for k in sorted(sizes1 & sizes2):
                if k < 5 or m1.ver + m2.ver - 2 * k != n:
                    continue
                for f1 in [i for i, f in enumerate(p1.faces) if len(f) == k]:
                    for f2 in [i for i, f in enumerate(p2.faces)
                               if len(f) == k]:
                        _sum_children(insert, p1, m1, f1, p2, m2, f2, k, n)
    return CensusResult("compact", n_max, members, stats)


def combinations_with_repeats(items: Sequence[str]):
    for i, a in enumerate(items):
        for b in items[i:]:
            yield a, b


def _tagged(code: str, mem: CensusMember) -> AbstractPolyhedron:
    poly = decode_code(code)
    if mem.face_tags is not None:
        poly = poly.with_tags(mem.face_tags)
    return poly


def _sum_children(insert, p1, m1, f1, p2, m2, f2, k, n) -> None:
    additive = (p1.face_tags and p2.face_tags
                and p1.face_tags[f1] is not None
                and p1.face_tags[f1] == p2.face_tags[f2]
                and m1.volume is not None and m2.volume is not None)
    for direction in (1, -1):
        for offset in range(k):
            try:
                child = connect_sum(p1, f1, p2, f2, (offset, direction))
            except MoveError:
                continue
            if not andreev_check(child).valid or child.kind != "compact":
                continue
            rep = canonical_form(child)
            ccode = canonical_code(rep)
            desc = MoveDescriptor(
                "compose", (m2.code, f1, f2, offset, direction)).to_json()
            vol = m1.volume + m2.volume if additive else None
            tags = rep.face_tags if additive else None
            insert(ccode, n,
                   {"seed": m1.provenance["seed"],
                    "moves": m1.provenance["moves"] + [desc]},
                   volume=vol, tags=tags)


# -- growth graph ----------------------------------------------------------

def growth_graph(seed: AbstractPolyhedron, move_set, depth: int,
                 max_nodes: int = 200000) -> GrowthGraph:
    """BFS by generations from a seed under the given moves ("twist" and/or
    "addition"); children are validity-filtered and deduplicated per
    generation."""
    if depth < 0:
        raise BadParameter("depth must be >= 0")
    move_set = set(move_set)
    gen = [canonical_code(seed)]
    generations = [list(gen)]
    edges = set()
    total = 1
    for _ in range(depth):
        nxt = set()
        for parent in sorted(gen):
            children = []
            if "twist" in move_set:
                children += [c for c, _ in _twist_children(parent)]
            if "addition" in move_set:
                children += [c for c, _, _ in
                             _addition_children((parent, None))]
            for child in children:
                nxt.add(child)
                edges.add((parent, child))
        total += len(nxt)
        if total > max_nodes:
            raise BudgetExceeded(f"node cap {max_nodes} reached")
        generations.append(sorted(nxt))
        gen = nxt
        if not gen:
            break
    return GrowthGraph(generations, edges)


def verify_provenance(result: CensusResult) -> bool:
    """Replay every member's provenance log and compare codes."""
    from .moves import replay
    for code, mem in result.members.items():
        moves = [MoveDescriptor.from_json(d) for d in mem.provenance["moves"]]
        if replay(mem.provenance["seed"], moves) != code:
            return False
    return True
