"""Potentials, cyclic derivatives and quiver-with-potential mutation.

Arrows are named generators (an id plus endpoints), so the path algebra side
can track composite arrows like ``[a.b]`` and reversals like ``a*`` through a
mutation without colliding with the weighted-quiver view.  Paths are stored
left to right: ``(a1, a2)`` means "first a1, then a2"; rendering converts to
the usual right-to-left product notation.

All coefficients are exact rationals.  Potentials live in a path algebra
truncated at a configurable degree; the default bound (arrow count + 2) is
generous for every finite-dimensional algebra this package targets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import quivers
from .errors import (
    CycleThroughVertexInPotential,
    LoopAtVertex,
    NoConvergence,
    NonSplittableQuadraticPart,
    NotTwoAcyclic,
    TwoCycleAtVertex,
    UnknownArrow,
    UnknownVertex,
)

Path = tuple[str, ...]
PathPoly = dict[Path, Fraction]


def default_truncation(num_arrows: int) -> int:
    return num_arrows + 2


@dataclass(frozen=True)
class QP:
    """A quiver with potential.

    vertices:  ordered vertex labels.
    arrows:    id -> (source, target); parallel arrows allowed, loops not.
    potential: minimal-rotation cyclic word -> nonzero rational coefficient.
    trunc:     truncation degree of the ambient path algebra.
    """

    vertices: tuple[str, ...]
    arrows: dict[str, tuple[str, str]]
    potential: dict[Path, Fraction]
    trunc: int

    # -- path helpers -----------------------------------------------------

    def src(self, arrow_id: str) -> str:
        return self.arrows[arrow_id][0]

    def tgt(self, arrow_id: str) -> str:
        return self.arrows[arrow_id][1]

    def path_source(self, path: Path) -> str:
        return self.src(path[0])

    def path_target(self, path: Path) -> str:
        return self.tgt(path[-1])

    def is_composable(self, path: Iterable[str]) -> bool:
        path = tuple(path)
        for i in range(len(path) - 1):
            if self.tgt(path[i]) != self.src(path[i + 1]):
                return False
        return True

    def arrows_from(self, vertex: str) -> list[str]:
        return [a for a, (s, _) in self.arrows.items() if s == vertex]

    def arrows_into(self, vertex: str) -> list[str]:
        return [a for a, (_, t) in self.arrows.items() if t == vertex]

    # -- views -------------------------------------------------------------

    def underlying_quiver(self) -> quivers.Quiver:
        """Weighted quiver obtained by counting parallel arrows.

        Fails with NotTwoAcyclic if antiparallel arrows are present, since the
        weighted view has no representation for them.
        """
        weights: dict[tuple[str, str], int] = {}
        for s, t in self.arrows.values():
            weights[(s, t)] = weights.get((s, t), 0) + 1
        for (s, t) in weights:
            if (t, s) in weights:
                raise NotTwoAcyclic(f"antiparallel arrows between {s!r} and {t!r}")
        return quivers.Quiver(
            self.vertices, tuple((s, t, w) for (s, t), w in sorted(weights.items()))
        )

    def has_two_cycle(self) -> bool:
        pairs = {(s, t) for s, t in self.arrows.values()}
        return any((t, s) in pairs for (s, t) in pairs)

    def opposite(self) -> "QP":
        arrows = {a: (t, s) for a, (s, t) in self.arrows.items()}
        pot = {}
        for cyc, c in self.potential.items():
            rev = tuple(reversed(cyc))
            pot[min_rotation(rev)] = c
        return QP(self.vertices, arrows, pot, self.trunc)

    def rename_vertices(self, mapping: Mapping[str, str]) -> "QP":
        full = {v: mapping.get(v, v) for v in self.vertices}
        arrows = {a: (full[s], full[t]) for a, (s, t) in self.arrows.items()}
        return QP(tuple(full[v] for v in self.vertices), arrows, dict(self.potential), self.trunc)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        id_map = canonical_arrow_ids(self)
        cycles = []
        for cyc in sorted(self.potential, key=lambda w: (len(w), w)):
            cycles.append(
                {
                    "coeff": str(self.potential[cyc]),
                    "cycle": [id_map[a] for a in cyc],
                }
            )
        return {
            "quiver": self.underlying_quiver().to_json_dict(),
            "potential": cycles,
            "trunc": self.trunc,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def min_rotation(word: Path) -> Path:
    """Lexicographically minimal rotation: the stored form of a cyclic word."""
    if not word:
        return word
    return min(word[r:] + word[:r] for r in range(len(word)))


def canonical_arrow_ids(qp: QP) -> dict[str, str]:
    """Stable export names: 'src->tgt' with '#k' suffixes for parallels."""
    by_pair: dict[tuple[str, str], list[str]] = {}
    for a, (s, t) in sorted(qp.arrows.items()):
        by_pair.setdefault((s, t), []).append(a)
    id_map = {}
    for (s, t), ids in by_pair.items():
        if len(ids) == 1:
            id_map[ids[0]] = f"{s}->{t}"
        else:
            for k, a in enumerate(ids, 1):
                id_map[a] = f"{s}->{t}#{k}"
    return id_map


def make_qp(
    vertices: Iterable[str],
    arrows: Mapping[str, tuple[str, str]],
    potential: Mapping[Path, Fraction] | Iterable[tuple[Path, Fraction]] = (),
    trunc: int | None = None,
) -> QP:
    """Validate and normalize a QP: no loops, potential cycles composable,
    in m^2, keys in minimal rotation, zero coefficients dropped."""
    vertices = tuple(vertices)
    vertex_set = set(vertices)
    arrow_map = dict(arrows)
    for a, (s, t) in arrow_map.items():
        if s not in vertex_set or t not in vertex_set:
            raise UnknownVertex(s if s not in vertex_set else t)
        if s == t:
            raise LoopAtVertex(f"arrow {a!r} is a loop at {s!r}")
    if trunc is None:
        trunc = default_truncation(len(arrow_map))
    items = potential.items() if isinstance(potential, Mapping) else potential
    pot: dict[Path, Fraction] = {}
    for word, coeff in items:
        word = tuple(word)
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        if len(word) < 2:
            raise NonSplittableQuadraticPart(
                f"potential term {word!r} has length < 2 (not in m^2)"
            )
        for a in word:
            if a not in arrow_map:
                raise UnknownArrow(a)
        closed = all(
            arrow_map[word[i]][1] == arrow_map[word[(i + 1) % len(word)]][0]
            for i in range(len(word))
        )
        if not closed:
            raise NonSplittableQuadraticPart(f"potential term {word!r} is not a cyclic path")
        if len(word) > trunc:
            continue
        key = min_rotation(word)
        pot[key] = pot.get(key, Fraction(0)) + coeff
    pot = {w: c for w, c in pot.items() if c != 0}
    return QP(vertices, arrow_map, pot, trunc)


def qp_from_quiver(q: quivers.Quiver, potential=(), trunc: int | None = None) -> QP:
    """Lift a weighted quiver to named arrows ('src->tgt', '#k' for weight>=2)."""
    arrows: dict[str, tuple[str, str]] = {}
    for s, t, w in q.arrows:
        if w == 1:
            arrows[f"{s}->{t}"] = (s, t)
        else:
            for k in range(1, w + 1):
                arrows[f"{s}->{t}#{k}"] = (s, t)
    return make_qp(q.vertices, arrows, potential, trunc)


def qp_from_json_dict(data: dict) -> QP:
    q = quivers.from_json_dict(data["quiver"])
    qp0 = qp_from_quiver(q, trunc=data.get("trunc"))
    potential = [
        (tuple(term["cycle"]), Fraction(term["coeff"])) for term in data.get("potential", [])
    ]
    return make_qp(qp0.vertices, qp0.arrows, potential, qp0.trunc)


def qp_from_json(text: str) -> QP:
    return qp_from_json_dict(json.loads(text))


# -- cyclic derivative ------------------------------------------------------


def cyclic_derivative(qp: QP, arrow_id: str) -> PathPoly:
    """d/da of the potential: each occurrence of `a` in each cyclic word
    contributes the rotated remainder path, with the word's coefficient."""
    if arrow_id not in qp.arrows:
        raise UnknownArrow(arrow_id)
    out: PathPoly = {}
    for word, coeff in qp.potential.items():
        for i, a in enumerate(word):
            if a != arrow_id:
                continue
            remainder = word[i + 1 :] + word[:i]
            if len(remainder) > qp.trunc:
                continue
            out[remainder] = out.get(remainder, Fraction(0)) + coeff
    return {p: c for p, c in out.items() if c != 0}


# -- premutation and reduction ----------------------------------------------


def star_name(arrow_id: str) -> str:
    return arrow_id + "*"


def composite_name(alpha: str, beta: str) -> str:
    return f"[{alpha}.{beta}]"


def premutate(qp: QP, k: str) -> QP:
    """DWZ premutation at k: add composites [ab], reverse arrows through k,
    rewrite the potential as W1' + W2'.  The result may contain 2-cycles."""
    if k not in qp.vertices:
        raise UnknownVertex(k)
    for a, (s, t) in qp.arrows.items():
        if s == t:
            raise LoopAtVertex(f"arrow {a!r} violates (c1)")
    ins = sorted(qp.arrows_into(k))
    outs = sorted(qp.arrows_from(k))
    in_srcs = {qp.src(b) for b in ins}
    if in_srcs & {qp.tgt(a) for a in outs}:
        raise TwoCycleAtVertex(f"oriented 2-cycle at {k!r} violates (c2)")

    new_arrows: dict[str, tuple[str, str]] = {}
    for a, (s, t) in qp.arrows.items():
        if s == k or t == k:
            new_arrows[star_name(a)] = (t, s)
        else:
            new_arrows[a] = (s, t)
    for alpha in outs:
        for beta in ins:
            new_arrows[composite_name(alpha, beta)] = (qp.src(beta), qp.tgt(alpha))

    in_set, out_set = set(ins), set(outs)
    new_pot: list[tuple[Path, Fraction]] = []
    for word, coeff in qp.potential.items():
        # rotate so the word does not start at k; fails only against (c3)
        rot = next((r for r in range(len(word)) if qp.src(word[r]) != k), None)
        if rot is None:
            raise CycleThroughVertexInPotential(
                f"potential cycle {word!r} cannot avoid starting at {k!r} (c3)"
            )
        w = word[rot:] + word[:rot]
        rewritten: list[str] = []
        i = 0
        while i < len(w):
            if w[i] in in_set:
                # composability forces the next arrow to leave k
                alpha = w[(i + 1) % len(w)]
                assert alpha in out_set
                rewritten.append(composite_name(alpha, w[i]))
                i += 2
            else:
                rewritten.append(w[i])
                i += 1
        new_pot.append((tuple(rewritten), coeff))
    for alpha in outs:
        for beta in ins:
            new_pot.append(
                ((composite_name(alpha, beta), star_name(alpha), star_name(beta)), Fraction(1))
            )
    trunc = default_truncation(len(new_arrows))
    return make_qp(qp.vertices, new_arrows, new_pot, trunc)


def _rotations_starting_with(word: Path, arrow_id: str):
    for i, a in enumerate(word):
        if a == arrow_id:
            yield word[i:] + word[:i]


def reduce_qp(qp: QP) -> QP:
    """Reduced part: eliminate every 2-cycle term of the potential together
    with its arrow pair, rewriting the higher terms, until none remain.

    Supported normal position: in every term each member of the 2-cycle pair
    occurs at most once, and only the quadratic term contains both.
    """
    arrows = dict(qp.arrows)
    pot = dict(qp.potential)
    max_rounds = max(1, len(arrows))
    for _ in range(max_rounds):
        quad_terms = sorted(w for w in pot if len(w) == 2)
        if not quad_terms:
            break
        word = quad_terms[0]
        a, b = word
        coeff = pot[word]
        f_terms: list[tuple[Path, Fraction]] = []  # a . P, P: tgt(a) ~> src(a)
        g_terms: list[tuple[Path, Fraction]] = []  # b . Q, Q: tgt(b) ~> src(b)
        rest: dict[Path, Fraction] = {}
        for w, c in pot.items():
            na, nb = w.count(a), w.count(b)
            if w == word:
                continue
            if na == 0 and nb == 0:
                rest[w] = c
                continue
            if na + nb > 1:
                raise NonSplittableQuadraticPart(
                    f"term {w!r} mixes the 2-cycle pair ({a!r}, {b!r})"
                )
            if na:
                rot = next(_rotations_starting_with(w, a))
                f_terms.append((rot[1:], c))
            else:
                rot = next(_rotations_starting_with(w, b))
                g_terms.append((rot[1:], c))
        for p, fc in f_terms:
            for q, gc in g_terms:
                new_word = p + q
                if len(new_word) > qp.trunc:
                    continue
                key = min_rotation(new_word)
                rest[key] = rest.get(key, Fraction(0)) - fc * gc / coeff
        del arrows[a]
        del arrows[b]
        pot = {w: c for w, c in rest.items() if c != 0}
    else:
        raise NoConvergence("2-cycle elimination did not stabilize")
    return make_qp(qp.vertices, arrows, pot, default_truncation(len(arrows)))


def qp_mutate(qp: QP, k: str) -> QP:
    """DWZ mutation: reduce(premutate(qp, k)), asserting 2-acyclicity of the
    result (the nondegeneracy witness along explored sequences)."""
    result = reduce_qp(premutate(qp, k))
    if result.has_two_cycle():
        raise NotTwoAcyclic(f"mutation at {k!r} left a 2-cycle in the quiver")
    return result


def render_cycle(qp: QP, word: Path) -> str:
    """Right-to-left product notation, matching the usual convention."""
    return "".join(reversed(word))
