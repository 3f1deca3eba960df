"""Floriated and polygon-tree quivers: gluing, recognition, invariants.

A polygon-tree quiver is built from oriented cycles glued pairwise along
single arrows so that the gluing pattern forms a tree.  Its primitive
potential is the sum of all oriented chordless cycles, which coincide with
the gluing components.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import potentials, quivers
from .errors import (
    GluedArrowReuse,
    InvalidPosition,
    NonTreeGluing,
    NotCyclicallyOriented,
    NotPolygonTree,
    PetalTooSmall,
    UnsupportedWeight,
)


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class FloriatedSpec:
    """Central cycle of size m0 with petal cycles glued on chosen arrows.

    petals: tuple of (position in 1..m0, petal size >= 3), positions strictly
    increasing.  Petal j shares the central arrow position_j -> position_j+1.
    """

    m0: int
    petals: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.m0 < 3:
            raise PetalTooSmall(f"central cycle size {self.m0} < 3")
        last = 0
        for pos, size in self.petals:
            if not 1 <= pos <= self.m0:
                raise InvalidPosition(f"petal position {pos} outside 1..{self.m0}")
            if pos <= last:
                raise InvalidPosition("petal positions must be strictly increasing")
            if size < 3:
                raise PetalTooSmall(f"petal size {size} < 3")
            last = pos

    def to_polygon_tree(self) -> "PolygonTreeSpec":
        sizes = (self.m0,) + tuple(size for _, size in self.petals)
        gluings = tuple((0, pos) for pos, _ in self.petals)
        return PolygonTreeSpec(sizes, gluings)


@dataclass(frozen=True)
class PolygonTreeSpec:
    """Gluing script: component cycle sizes plus, for each component i >= 1,
    the host component (index < i) and the 1-based arrow position on the host
    where it glues.  Position p of a component of size m is the arrow from its
    p-th to its (p+1)-th vertex in cycle order; a glued component occupies its
    host arrow as its own position-1 arrow."""

    sizes: tuple[int, ...]
    gluings: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not self.sizes:
            raise NonTreeGluing("at least one component required")
        for m in self.sizes:
            if m < 3:
                raise PetalTooSmall(f"component size {m} < 3")
        if len(self.gluings) != len(self.sizes) - 1:
            raise NonTreeGluing("need exactly one gluing per non-root component")
        used: set[tuple[int, int]] = set()
        for i, (host, pos) in enumerate(self.gluings, start=1):
            if not 0 <= host < i:
                raise NonTreeGluing(f"component {i} glued to non-earlier component {host}")
            if not 1 <= pos <= self.sizes[host]:
                raise InvalidPosition(f"gluing position {pos} outside host cycle")
            if host != 0 and pos == 1:
                # position 1 of a non-root host is the arrow it shares with
                # its own parent, which is already glued
                raise GluedArrowReuse(f"component {i} reuses the glued arrow of host {host}")
            if (host, pos) in used:
                raise GluedArrowReuse(f"host arrow ({host}, {pos}) glued twice")
            used.add((host, pos))

    # -- derived data ------------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.sizes)

    @property
    def m(self) -> int:
        return sum(self.sizes)

    @property
    def N(self) -> int:
        return len(self.sizes) - 1

    def children(self, i: int) -> list[tuple[int, int]]:
        """(component index, gluing position on i) for components glued to i."""
        return [(j, pos) for j, (host, pos) in enumerate(self.gluings, start=1) if host == i]

    def neighbor_positions(self, i: int) -> list[int]:
        """Positions, in component i's own cycle, of all arrows shared with
        adjacent components (its host at position 1, its children at theirs)."""
        positions = [pos for _, pos in self.children(i)]
        if i != 0:
            positions.append(1)
        return sorted(positions)

    def d_component(self, i: int) -> int:
        """d of the floriated neighborhood centered at component i: the number
        of cyclic gaps of length exactly 1 between consecutive glue positions."""
        positions = self.neighbor_positions(i)
        if len(positions) < 2:
            return 0
        m = self.sizes[i]
        gaps = [
            positions[(j + 1) % len(positions)] - positions[j]
            for j in range(len(positions) - 1)
        ]
        gaps.append(positions[0] + m - positions[-1])
        return sum(1 for g in gaps if g == 1)

    @property
    def d_Q(self) -> int:
        return sum(self.d_component(i) for i in range(self.n_components))

    def to_json_dict(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "gluings": [{"host": h, "position": p} for h, p in self.gluings],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "PolygonTreeSpec":
        gluings = tuple((g["host"], g["position"]) for g in data.get("gluings", []))
        return PolygonTreeSpec(tuple(data["sizes"]), gluings)


def d_invariant(spec: PolygonTreeSpec | FloriatedSpec) -> tuple[int, int, int]:
    """(m, N, d_Q) of a polygon-tree spec."""
    if isinstance(spec, FloriatedSpec):
        spec = spec.to_polygon_tree()
    return spec.m, spec.N, spec.d_Q


# ---------------------------------------------------------------------------
# construction


def _cycle_arrows(names: list[str]) -> list[tuple[str, str]]:
    return [(names[i], names[(i + 1) % len(names)]) for i in range(len(names))]


def build_polygon_tree(spec: PolygonTreeSpec) -> potentials.QP:
    qp, _ = build_polygon_tree_with_layout(spec)
    return qp


def build_polygon_tree_with_layout(
    spec: PolygonTreeSpec,
) -> tuple[potentials.QP, list[list[str]]]:
    """Build the glued quiver with its primitive potential.

    Returns the QP and, per component, its vertex cycle (component i's cycle
    starts at the tail of the arrow it shares with its host)."""
    layouts: list[list[str]] = []
    for i, m in enumerate(spec.sizes):
        if i == 0:
            layouts.append([f"0.{p}" for p in range(1, m + 1)])
            continue
        host, pos = spec.gluings[i - 1]
        host_cycle = layouts[host]
        u = host_cycle[pos - 1]
        v = host_cycle[pos % len(host_cycle)]
        layouts.append([u, v] + [f"{i}.{p}" for p in range(3, m + 1)])
    vertices: list[str] = []
    arrows: set[tuple[str, str]] = set()
    for cyc in layouts:
        for v in cyc:
            if v not in vertices:
                vertices.append(v)
        arrows.update(_cycle_arrows(cyc))
    q = quivers.validate(vertices, sorted(arrows))
    potential = []
    for cyc in layouts:
        word = tuple(f"{s}->{t}" for s, t in _cycle_arrows(cyc))
        potential.append((word, Fraction(1)))
    qp = potentials.qp_from_quiver(q, potential)
    return qp, layouts


def build_floriated(spec: FloriatedSpec) -> potentials.QP:
    return build_polygon_tree(spec.to_polygon_tree())


def build_canonical_ct(p1: int, p2: int, p3: int) -> potentials.QP:
    """Three parallel arms from a source L to a sink R plus a return arrow,
    the middle arm passing through one extra vertex; the relations are the
    cyclic derivatives of the three arm-plus-return cycles."""
    if p1 != 2:
        raise UnsupportedWeight(f"only weight p1=2 is supported, got {p1}")
    if p2 < 2 or p3 < 2:
        raise UnsupportedWeight("weights must be >= 2")
    vertices = ["L", "R", "c1"]
    top = ["L"] + [f"t{i}" for i in range(1, p2)] + ["R"]
    bot = ["L"] + [f"b{i}" for i in range(1, p3)] + ["R"]
    vertices += top[1:-1] + bot[1:-1]
    arrows: list[tuple[str, str]] = [("L", "c1"), ("c1", "R"), ("R", "L")]
    arrows += [(top[i], top[i + 1]) for i in range(len(top) - 1)]
    arrows += [(bot[i], bot[i + 1]) for i in range(len(bot) - 1)]
    q = quivers.validate(vertices, arrows)
    cycles = [
        ["L", "c1", "R"],
        top,
        bot,
    ]
    potential = []
    for cyc in cycles:
        word = tuple(f"{cyc[i]}->{cyc[i + 1]}" for i in range(len(cyc) - 1)) + (f"R->L",)
        potential.append((word, Fraction(1)))
    return potentials.qp_from_quiver(q, potential)


# ---------------------------------------------------------------------------
# recognition


def chordless_cycles(q: quivers.Quiver) -> list[list[str]]:
    """All chordless cycles (oriented or not) as vertex sequences.

    Each cycle is listed once, starting at its smallest vertex (in the
    quiver's vertex order) with the smaller of the two traversal directions.
    """
    index = {v: i for i, v in enumerate(q.vertices)}
    adj: dict[str, set[str]] = {v: set() for v in q.vertices}
    for s, t, _ in q.arrows:
        adj[s].add(t)
        adj[t].add(s)
    cycles = []

    def extend(path: list[str], members: set[str]):
        s = path[0]
        last = path[-1]
        for y in sorted(adj[last], key=index.get):
            if index[y] <= index[s] or y in members:
                continue
            # chordlessness: y may touch only the path tip (and possibly s)
            inner = [p for p in path[:-1] if p != s]
            if any(p in adj[y] for p in inner):
                continue
            if s in adj[y]:
                if len(path) >= 2:
                    cycles.append(path + [y])
                continue
            extend(path + [y], members | {y})

    for s in q.vertices:
        for first in sorted(adj[s], key=index.get):
            if index[first] <= index[s]:
                continue
            extend([s, first], {s, first})

    # each cycle is found twice (once per direction): keep the lexicographically
    # smaller of (second vertex, last vertex)
    seen = {}
    for cyc in cycles:
        key = frozenset(cyc)
        if key not in seen or (index[cyc[1]] < index[seen[key][1]]):
            seen[key] = cyc
    return list(seen.values())


def orient_cycle(q: quivers.Quiver, cycle: list[str]) -> list[str] | None:
    """Return the cycle as an oriented vertex sequence (following arrows), or
    None when it is not oriented."""
    def ok(seq):
        return all(q.weight(seq[i], seq[(i + 1) % len(seq)]) > 0 for i in range(len(seq)))

    if ok(cycle):
        return list(cycle)
    rev = [cycle[0]] + list(reversed(cycle[1:]))
    if ok(rev):
        return rev
    return None


def is_cyclically_oriented(q: quivers.Quiver) -> bool:
    return all(orient_cycle(q, c) is not None for c in chordless_cycles(q))


def primitive_potential(q: quivers.Quiver) -> list[tuple[tuple[str, ...], Fraction]]:
    """The sum of all oriented chordless cycles with coefficient 1, as
    potential terms over canonical arrow ids."""
    terms = []
    for cyc in chordless_cycles(q):
        oriented = orient_cycle(q, cyc)
        if oriented is None:
            raise NotCyclicallyOriented(f"chordless cycle {cyc} is not oriented")
        word = tuple(
            f"{oriented[i]}->{oriented[(i + 1) % len(oriented)]}" for i in range(len(oriented))
        )
        terms.append((word, Fraction(1)))
    return terms


def primitive_qp(q: quivers.Quiver) -> potentials.QP:
    return potentials.qp_from_quiver(q, primitive_potential(q))


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class ComponentInfo:
    index: int
    cycle: list[str]  # vertex cycle; for non-root, cycle[0]->cycle[1] is the glued arrow
    parent: int | None
    children: list[tuple[int, int]] = field(default_factory=list)  # (child index, my position)

    @property
    def size(self) -> int:
        return len(self.cycle)

    def arrow_at(self, position: int) -> tuple[str, str]:
        return (self.cycle[position - 1], self.cycle[position % len(self.cycle)])


@dataclass
class PolygonTreeDecomposition:
    spec: PolygonTreeSpec
    components: list[ComponentInfo]

    def leaves(self) -> list[int]:
        return [c.index for c in self.components if not c.children and c.parent is not None]


def decompose(q: quivers.Quiver) -> PolygonTreeDecomposition:
    """Recognize a polygon-tree quiver and recover its gluing script.

    Raises NotPolygonTree (with the violating cycle pair where applicable).
    """
    if q.n == 0:
        raise NotPolygonTree("empty quiver")
    if q.max_weight() > 1:
        raise NotPolygonTree("polygon-tree quivers have all arrow weights 1")
    raw_cycles = chordless_cycles(q)
    cycles: list[list[str]] = []
    for cyc in raw_cycles:
        oriented = orient_cycle(q, cyc)
        if oriented is None:
            raise NotPolygonTree(f"chordless cycle {cyc} is not oriented")
        cycles.append(oriented)
    if not cycles:
        raise NotPolygonTree("no chordless cycles")

    def arrow_set(cyc: list[str]) -> set[tuple[str, str]]:
        return set(_cycle_arrows(cyc))

    arrow_sets = [arrow_set(c) for c in cycles]
    covered_vertices = set().union(*(set(c) for c in cycles))
    covered_arrows = set().union(*arrow_sets)
    if covered_vertices != set(q.vertices):
        raise NotPolygonTree("vertices outside every chordless cycle")
    if covered_arrows != {(s, t) for s, t, _ in q.arrows}:
        raise NotPolygonTree("arrows outside every chordless cycle")

    shared: dict[tuple[int, int], tuple[str, str]] = {}
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            inter = arrow_sets[i] & arrow_sets[j]
            if len(inter) > 1:
                raise NotPolygonTree(
                    f"cycles {cycles[i]} and {cycles[j]} share {len(inter)} arrows",
                    witness=(cycles[i], cycles[j]),
                )
            if len(inter) == 1:
                shared[(i, j)] = next(iter(inter))
    for arrow in covered_arrows:
        owners = [i for i, s in enumerate(arrow_sets) if arrow in s]
        if len(owners) > 2:
            raise NotPolygonTree(f"arrow {arrow} glued more than once")

    # intersection graph must be a tree spanning all cycles
    n_comp = len(cycles)
    adjacency: dict[int, list[int]] = {i: [] for i in range(n_comp)}
    for (i, j) in shared:
        adjacency[i].append(j)
        adjacency[j].append(i)
    if len(shared) != n_comp - 1:
        raise NotPolygonTree("gluing relation is not a tree")
    root = min(
        range(n_comp), key=lambda i: (min((q.vertices.index(v) for v in cycles[i])), i)
    )
    order = [root]
    parent: dict[int, int | None] = {root: None}
    stack = [root]
    while stack:
        cur = stack.pop()
        for nxt in sorted(adjacency[cur]):
            if nxt not in parent:
                parent[nxt] = cur
                order.append(nxt)
                stack.append(nxt)
    if len(order) != n_comp:
        raise NotPolygonTree("gluing relation is not connected")

    # rotate each cycle: non-root cycles start at their parent-glued arrow;
    # the root starts at its lexicographically smallest vertex
    def rotate_to(cyc: list[str], u: str) -> list[str]:
        i = cyc.index(u)
        return cyc[i:] + cyc[:i]

    new_index = {old: new for new, old in enumerate(order)}
    infos: list[ComponentInfo] = []
    for new_i, old_i in enumerate(order):
        cyc = cycles[old_i]
        p = parent[old_i]
        if p is None:
            start = min(cyc, key=lambda v: q.vertices.index(v))
            cyc = rotate_to(cyc, start)
        else:
            key = (min(old_i, p), max(old_i, p))
            u, _v = shared[key]
            cyc = rotate_to(cyc, u)
        infos.append(
            ComponentInfo(new_i, cyc, None if p is None else new_index[p])
        )
    sizes = tuple(len(info.cycle) for info in infos)
    gluings: list[tuple[int, int]] = []
    for info in infos[1:]:
        host = infos[info.parent]
        u, v = info.cycle[0], info.cycle[1]
        position = None
        for pos in range(1, host.size + 1):
            if host.arrow_at(pos) == (u, v):
                position = pos
                break
        if position is None:
            raise NotPolygonTree("glued arrow missing from host cycle")
        gluings.append((info.parent, position))
        host.children.append((info.index, position))
    spec = PolygonTreeSpec(sizes, tuple(gluings))
    return PolygonTreeDecomposition(spec, infos)


# ---------------------------------------------------------------------------
# simpleness (banned 4-component configurations)


def banned_witness(spec: PolygonTreeSpec, strict: bool = False):
    """A witness of a banned configuration, or None if the spec is simple.

    Literal reading: a path of four components whose two middle components
    each have their pair of glued arrows adjacent (sharing a vertex); the two
    sub-forms differ in whether the two contact vertices coincide.  The
    strict flag additionally bans one component glued to three others on
    pairwise-adjacent arrows (only possible on a triangle component).
    """
    n = spec.n_components
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    glue_pos: dict[tuple[int, int], int] = {}
    for child, (host, pos) in enumerate(spec.gluings, start=1):
        adj[host].append(child)
        adj[child].append(host)
        glue_pos[(host, child)] = pos
        glue_pos[(child, host)] = 1

    def arrows_adjacent(comp: int, p: int, q_: int) -> bool:
        m = spec.sizes[comp]
        return p != q_ and ((p - q_) % m == 1 or (q_ - p) % m == 1)

    for b in range(n):
        for c in adj[b]:
            for a in adj[b]:
                if a == c:
                    continue
                if not arrows_adjacent(b, glue_pos[(b, a)], glue_pos[(b, c)]):
                    continue
                for d in adj[c]:
                    if d == b:
                        continue
                    if arrows_adjacent(c, glue_pos[(c, b)], glue_pos[(c, d)]):
                        return ("path", (a, b, c, d))
    if strict:
        for i in range(n):
            positions = spec.neighbor_positions(i)
            if len(positions) >= 3:
                pairs = [
                    (p, q_)
                    for ix, p in enumerate(positions)
                    for q_ in positions[ix + 1 :]
                ]
                if all(arrows_adjacent(i, p, q_) for p, q_ in pairs):
                    return ("star", (i, tuple(positions)))
    return None


def is_simple(spec: PolygonTreeSpec | FloriatedSpec, strict: bool = False) -> bool:
    if isinstance(spec, FloriatedSpec):
        spec = spec.to_polygon_tree()
    return banned_witness(spec, strict=strict) is None


def is_type_d_candidate(spec: PolygonTreeSpec | FloriatedSpec) -> bool:
    """Floriated star whose petals are all triangles (or a bare cycle): the
    shapes whose Jacobian algebras are cluster-tilted of type D."""
    if isinstance(spec, FloriatedSpec):
        spec = spec.to_polygon_tree()
    if spec.N == 0:
        return True
    adjacency: dict[int, set[int]] = {i: set() for i in range(spec.n_components)}
    for child, (host, _) in enumerate(spec.gluings, start=1):
        adjacency[host].add(child)
        adjacency[child].add(host)
    for center in range(spec.n_components):
        others = [i for i in range(spec.n_components) if i != center]
        if all(i in adjacency[center] for i in others) and all(
            spec.sizes[i] == 3 for i in others
        ):
            return True
    return False


def spec_canonical_key(spec: PolygonTreeSpec) -> tuple:
    """Isomorphism-invariant key of a polygon-tree spec.

    Two specs build isomorphic quivers iff their trees of components match
    with sizes and glue positions up to re-rooting and a cyclic rotation of
    each component's position labels (the rotation of non-root components is
    pinned by their parent arrow, so only the root contributes freedom).
    """
    n = spec.n_components
    parent_edge: dict[int, tuple[int, int]] = {}
    neighbors: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for child, (host, pos) in enumerate(spec.gluings, start=1):
        parent_edge[child] = (host, pos)
        neighbors[host].append((child, pos))  # shared arrow sits at `pos` in host
        neighbors[child].append((host, 1))  # and at position 1 in the child

    def anchor_in(b: int, a: int) -> int:
        """Position, in b's cycle, of the arrow shared with neighbor a."""
        if parent_edge.get(b, (None, None))[0] == a:
            return 1
        return parent_edge[a][1]

    def code(comp: int, parent_comp: int) -> tuple:
        m = spec.sizes[comp]
        anchor = anchor_in(comp, parent_comp)
        rel = sorted(
            ((pos - anchor) % m, code(other, comp))
            for other, pos in neighbors[comp]
            if other != parent_comp
        )
        return (m, tuple(rel))

    def rooted(root: int) -> tuple:
        m = spec.sizes[root]
        items = [(pos, code(other, root)) for other, pos in neighbors[root]]
        if not items:
            return (m, ())
        best = min(
            tuple(sorted(((pos - r) % m, sub) for pos, sub in items))
            for r in range(m)
        )
        return (m, best)

    return min(rooted(i) for i in range(n))


def figure_9_1_quiver() -> quivers.Quiver:
    """The 6-vertex chain of four triangles: a non-simple polygon-tree quiver
    in the mutation class of E6."""
    spec = PolygonTreeSpec((3, 3, 3, 3), ((0, 2), (1, 2), (2, 2)))
    return build_polygon_tree(spec).underlying_quiver()
