"""Weighted quivers, Fomin-Zelevinsky mutation and canonical forms.

A quiver here is a finite loop-free directed graph with positive integer
arrow weights and no antiparallel arrow pairs.  Internally it is the
skew-symmetric exchange matrix B with B[i][j] = +weight of i->j, which makes
the t-rs mutation rule and all sign conventions unambiguous.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DanglingEndpoint,
    LoopArrow,
    NonPositiveWeight,
    TooLarge,
    TwoCycle,
    UnknownVertex,
)

CANONICAL_VERTEX_BOUND = 12


@dataclass(frozen=True)
class Quiver:
    """Immutable weighted quiver.

    vertices: ordered tuple of opaque labels (strings).
    arrows:   tuple of (src, tgt, weight), at most one per unordered pair.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, int], ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    # -- basic queries ---------------------------------------------------

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._index

    @property
    def n(self) -> int:
        return len(self.vertices)

    def b_matrix(self) -> list[list[int]]:
        """Skew-symmetric exchange matrix in vertex order."""
        idx = self._index
        B = [[0] * self.n for _ in range(self.n)]
        for s, t, w in self.arrows:
            B[idx[s]][idx[t]] = w
            B[idx[t]][idx[s]] = -w
        return B

    def weight(self, src: str, tgt: str) -> int:
        for s, t, w in self.arrows:
            if s == src and t == tgt:
                return w
        return 0

    def in_weight(self, vertex: str) -> int:
        return sum(w for _, t, w in self.arrows if t == vertex)

    def out_weight(self, vertex: str) -> int:
        return sum(w for s, _, w in self.arrows if s == vertex)

    def max_weight(self) -> int:
        return max((w for _, _, w in self.arrows), default=0)

    def arrow_set(self) -> frozenset[tuple[str, str, int]]:
        return frozenset(self.arrows)

    def is_isomorphic_to(self, other: "Quiver") -> bool:
        if self.n != other.n or len(self.arrows) != len(other.arrows):
            return False
        return canonical_form(self).code == canonical_form(other).code

    def relabel(self, mapping: dict[str, str]) -> "Quiver":
        return Quiver(
            tuple(mapping[v] for v in self.vertices),
            tuple((mapping[s], mapping[t], w) for s, t, w in self.arrows),
        )

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple((t, s, w) for s, t, w in self.arrows))

    def induced(self, keep: Iterable[str]) -> "Quiver":
        keep_set = set(keep)
        return Quiver(
            tuple(v for v in self.vertices if v in keep_set),
            tuple(a for a in self.arrows if a[0] in keep_set and a[1] in keep_set),
        )

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"src": s, "tgt": t, "w": w} for s, t, w in self.arrows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for s, t, w in self.arrows:
            if w == 1:
                lines.append(f'  "{s}" -> "{t}";')
            else:
                lines.append(f'  "{s}" -> "{t}" [label="{w}"];')
        lines.append("}")
        return "\n".join(lines)


def validate(vertices: Sequence[str], arrows: Iterable[Sequence]) -> Quiver:
    """Check the quiver invariants and build an immutable Quiver.

    Raises LoopArrow, TwoCycle, NonPositiveWeight or DanglingEndpoint naming
    the offending arrow.
    """
    vertex_tuple = tuple(str(v) for v in vertices)
    seen_pairs: dict[frozenset, tuple] = {}
    normalized = []
    vertex_set = set(vertex_tuple)
    if len(vertex_set) != len(vertex_tuple):
        raise DanglingEndpoint(("<duplicate>", "<vertex>", 0))
    for raw in arrows:
        if isinstance(raw, dict):
            s, t, w = str(raw["src"]), str(raw["tgt"]), int(raw.get("w", 1))
        else:
            s, t = str(raw[0]), str(raw[1])
            w = int(raw[2]) if len(raw) > 2 else 1
        arrow = (s, t, w)
        if s not in vertex_set or t not in vertex_set:
            raise DanglingEndpoint(arrow)
        if s == t:
            raise LoopArrow(arrow)
        if w < 1:
            raise NonPositiveWeight(arrow)
        pair = frozenset((s, t))
        if pair in seen_pairs:
            prev = seen_pairs[pair]
            if prev[:2] == (s, t):
                # parallel arrows between the same ordered pair: merge weights
                normalized.remove(prev)
                arrow = (s, t, prev[2] + w)
            else:
                raise TwoCycle(arrow)
        seen_pairs[pair] = arrow
        normalized.append(arrow)
    return Quiver(vertex_tuple, tuple(normalized))


def from_json_dict(data: dict) -> Quiver:
    return validate(data["vertices"], data["arrows"])


def from_json(text: str) -> Quiver:
    return from_json_dict(json.loads(text))


def from_b_matrix(vertices: Sequence[str], B: Sequence[Sequence[int]]) -> Quiver:
    arrows = []
    n = len(vertices)
    for i in range(n):
        for j in range(n):
            if B[i][j] > 0:
                arrows.append((vertices[i], vertices[j], B[i][j]))
    return Quiver(tuple(vertices), tuple(arrows))


def fz_mutate(q: Quiver, k: str) -> Quiver:
    """Fomin-Zelevinsky mutation at vertex k.

    For every composable pair i->k (weight r), k->j (weight s) and the
    existing j->i weight t (negative if the arrow runs i->j, 0 if absent),
    the new (j, i) weight is t - rs; arrows through k are reversed.
    """
    if k not in q:
        raise UnknownVertex(k)
    idx = {v: i for i, v in enumerate(q.vertices)}
    ki = idx[k]
    B = q.b_matrix()
    n = q.n
    newB = [row[:] for row in B]
    for i in range(n):
        for j in range(n):
            if i == ki or j == ki:
                newB[i][j] = -B[i][j]
            elif B[i][ki] > 0 and B[ki][j] > 0:
                newB[i][j] = B[i][j] + B[i][ki] * B[ki][j]
            elif B[i][ki] < 0 and B[ki][j] < 0:
                newB[i][j] = B[i][j] - B[i][ki] * B[ki][j]
    return from_b_matrix(q.vertices, newB)


@dataclass(frozen=True)
class CanonicalQuiver:
    """Permutation-minimal adjacency code plus the permutation achieving it.

    Two quivers are isomorphic iff their codes are equal.  The witness maps
    position in the canonical ordering to the original vertex label.
    """

    code: str
    witness: tuple[str, ...]


def _invariant_classes(q: Quiver) -> dict[str, int]:
    """Iterated degree refinement; used only to prune the permutation search."""
    idx = {v: i for i, v in enumerate(q.vertices)}
    B = q.b_matrix()
    raw = {v: (q.in_weight(v), q.out_weight(v)) for v in q.vertices}
    ranks = {c: r for r, c in enumerate(sorted(set(raw.values())))}
    color = {v: ranks[raw[v]] for v in q.vertices}
    for _ in range(q.n):
        refined = {}
        for v in q.vertices:
            vi = idx[v]
            neigh = sorted(
                (B[vi][idx[u]], color[u]) for u in q.vertices if B[vi][idx[u]] != 0
            )
            refined[v] = (color[v], tuple(neigh))
        ranks = {c: r for r, c in enumerate(sorted(set(refined.values())))}
        new_color = {v: ranks[refined[v]] for v in q.vertices}
        if len(set(new_color.values())) == len(set(color.values())):
            return new_color
        color = new_color
    return color


def canonical_form(q: Quiver, bound: int = CANONICAL_VERTEX_BOUND) -> CanonicalQuiver:
    """Total-order-minimal serialized adjacency matrix over vertex permutations.

    The matrix is serialized in L-shaped increments: placing the p-th vertex
    appends its column entries against, then its row entries over, the
    vertices already placed.  A partial placement's serialization is then a
    prefix of every completion, so comparing against the best full code is a
    sound exhaustive prune; the search stays exact for any symmetry.
    """
    if q.n > bound:
        raise TooLarge(q.n, bound)
    n = q.n
    if n == 0:
        return CanonicalQuiver("", ())
    idx = {v: i for i, v in enumerate(q.vertices)}
    B = q.b_matrix()
    color = _invariant_classes(q)

    best: list[int] | None = None
    best_perm: list | None = None

    def extend(chosen: list[str], prefix: list[int]):
        nonlocal best, best_perm
        p = len(chosen)
        if p == n:
            if best is None or prefix < best:
                best = list(prefix)
                best_perm = list(chosen)
            return
        scored = []
        for v in q.vertices:
            if v in chosen:
                continue
            vi = idx[v]
            block = [B[idx[u]][vi] for u in chosen]
            block += [B[vi][idx[u]] for u in chosen]
            scored.append((block, color[v], v))
        scored.sort()
        for block, _c, v in scored:
            candidate = prefix + block
            if best is not None and candidate > best[: len(candidate)]:
                continue
            extend(chosen + [v], candidate)

    extend([], [])
    assert best is not None and best_perm is not None
    # render the winning matrix row-major for a readable, decodable code
    widx = {v: i for i, v in enumerate(best_perm)}
    M = [[0] * n for _ in range(n)]
    for a in q.vertices:
        for b_ in q.vertices:
            M[widx[a]][widx[b_]] = B[idx[a]][idx[b_]]
    code = ";".join(",".join(str(x) for x in row) for row in M)
    return CanonicalQuiver(code, tuple(best_perm))
