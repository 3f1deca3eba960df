"""Truncated linear model of the Jacobian algebra J(Q, W).

The Jacobian ideal is generated by the cyclic derivatives of the potential
inside the completed path algebra.  We work in the quotient truncated at a
degree bound D, with the m-adic term order: lower degree terms lead, ties
broken lexicographically on arrow ids.  A rewriting system is completed by
resolving subword containments and overlap ambiguities; the quotient basis is
then the set of paths avoiding every pivot as a subword.

Saturation (no surviving paths at degrees D-1 and D) certifies that the
truncation is exact and the algebra finite-dimensional; reports without the
certificate are explicitly partial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotSaturated, NotSchurian, UnknownVertex
from .potentials import QP, PathPoly, cyclic_derivative

Word = tuple[str, ...]


def _order_key(word: Word) -> tuple:
    return (len(word), word)


class PathReducer:
    """Rewriting system for the truncated Jacobian quotient."""

    def __init__(self, qp: QP, max_degree: int):
        self.qp = qp
        self.max_degree = max_degree
        self.rules: dict[Word, PathPoly] = {}
        self._max_pivot_len = 0
        self._complete()

    # -- reduction ---------------------------------------------------------

    def _find_pivot_subword(self, word: Word) -> tuple[int, Word] | None:
        L = len(word)
        for i in range(L):
            for l in range(1, min(self._max_pivot_len, L - i) + 1):
                sub = word[i : i + l]
                if sub in self.rules:
                    return i, sub
        return None

    def reduce_poly(self, poly: PathPoly) -> PathPoly:
        """Normal form of a path polynomial modulo the current rules."""
        work = {w: Fraction(c) for w, c in poly.items() if len(w) <= self.max_degree}
        out: PathPoly = {}
        while work:
            word = min(work, key=_order_key)
            coeff = work.pop(word)
            if coeff == 0:
                continue
            hit = self._find_pivot_subword(word) if self.rules else None
            if hit is None:
                out[word] = out.get(word, Fraction(0)) + coeff
                continue
            i, sub = hit
            tail = self.rules[sub]
            for t, tc in tail.items():
                new_word = word[:i] + t + word[i + len(sub) :]
                if len(new_word) > self.max_degree:
                    continue
                work[new_word] = work.get(new_word, Fraction(0)) + coeff * tc
        return {w: c for w, c in out.items() if c != 0}

    def word_class(self, word: Word) -> PathPoly:
        return self.reduce_poly({word: Fraction(1)})

    def is_zero(self, word: Word) -> bool:
        return not self.word_class(word)

    # -- completion ----------------------------------------------------------

    def _add_rule(self, poly: PathPoly, agenda: list[PathPoly]):
        pivot = min(poly, key=_order_key)
        coeff = poly[pivot]
        tail = {w: -c / coeff for w, c in poly.items() if w != pivot}
        # retire rules whose pivot is now reducible via the new pivot
        stale = [p for p in self.rules if len(p) >= len(pivot) and _contains(p, pivot)]
        self.rules[pivot] = tail
        self._max_pivot_len = max(self._max_pivot_len, len(pivot))
        for p in stale:
            if p == pivot:
                continue
            old_tail = self.rules.pop(p)
            requeued = dict(old_tail)
            requeued[p] = requeued.get(p, Fraction(0)) - Fraction(1)
            agenda.append({w: -c for w, c in requeued.items()})
        # overlap ambiguities with every live rule (including self-overlaps)
        for other in list(self.rules):
            for w1, w2 in ((pivot, other), (other, pivot)):
                for k in range(1, min(len(w1), len(w2))):
                    if w1[len(w1) - k :] == w2[:k]:
                        merged = w1 + w2[k:]
                        if len(merged) > self.max_degree:
                            continue
                        left = self._apply_rule_at(merged, 0, w1)
                        right = self._apply_rule_at(merged, len(w1) - k, w2)
                        diff = _poly_sub(left, right)
                        if diff:
                            agenda.append(diff)

    def _apply_rule_at(self, word: Word, i: int, pivot: Word) -> PathPoly:
        tail = self.rules[pivot]
        out: PathPoly = {}
        for t, tc in tail.items():
            new_word = word[:i] + t + word[i + len(pivot) :]
            if len(new_word) <= self.max_degree:
                out[new_word] = out.get(new_word, Fraction(0)) + tc
        return out

    def _complete(self):
        agenda: list[PathPoly] = []
        for arrow in sorted(self.qp.arrows):
            d = cyclic_derivative(self.qp, arrow)
            if d:
                agenda.append(d)
        while agenda:
            poly = self.reduce_poly(agenda.pop())
            if poly:
                self._add_rule(poly, agenda)


def _contains(word: Word, sub: Word) -> bool:
    n, k = len(word), len(sub)
    return any(word[i : i + k] == sub for i in range(n - k + 1))


def _poly_sub(a: PathPoly, b: PathPoly) -> PathPoly:
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, Fraction(0)) - c
    return {w: c for w, c in out.items() if c != 0}


@dataclass
class BasisReport:
    """Linear basis of the truncated Jacobian algebra with Cartan data.

    basis entries are (source vertex, word); the trivial path at v is (v, ()).
    cartan[j][i] counts basis classes of paths from vertex i to vertex j.
    """

    qp: QP
    max_degree: int
    basis: list[tuple[str, Word]]
    saturated: bool
    cartan: dict[str, dict[str, int]]
    _reducer: PathReducer = field(repr=False, compare=False, default=None)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def path_class(self, word: Word) -> PathPoly:
        return self._reducer.word_class(word)

    def path_is_zero(self, word: Word) -> bool:
        return not self.path_class(word)

    def cartan_matrix(self) -> list[list[int]]:
        vs = self.qp.vertices
        return [[self.cartan[j][i] for i in vs] for j in vs]

    def cyclic_basis_words(self) -> list[Word]:
        return [
            w
            for (src, w) in self.basis
            if w and self.qp.path_target(w) == src
        ]

    def to_json_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "saturated": self.saturated,
            "max_degree": self.max_degree,
            "vertices": list(self.qp.vertices),
            "cartan": self.cartan_matrix(),
            "basis": [
                {"source": src, "path": list(w)} for src, w in self.basis
            ],
        }


def jacobian_basis(qp: QP, max_degree: int | None = None) -> BasisReport:
    """Degree-by-degree basis of the truncated Jacobian algebra.

    A report with saturated=False is a partial answer (degree bound hit while
    the algebra was still growing), returned flagged rather than raised.
    """
    if max_degree is None:
        max_degree = qp.trunc
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    reducer = PathReducer(qp, max_degree)
    pivots = reducer.rules
    max_len = reducer._max_pivot_len

    basis: list[tuple[str, Word]] = [(v, ()) for v in qp.vertices]
    frontier: list[tuple[str, Word]] = list(basis)
    arrows_from: dict[str, list[str]] = {v: [] for v in qp.vertices}
    for a in sorted(qp.arrows):
        arrows_from[qp.src(a)].append(a)
    last_nonempty = 0
    for degree in range(1, max_degree + 1):
        new_frontier: list[tuple[str, Word]] = []
        for src, word in frontier:
            tip = qp.tgt(word[-1]) if word else src
            for a in arrows_from[tip]:
                cand = word + (a,)
                reducible = any(
                    cand[len(cand) - l :] in pivots
                    for l in range(1, min(max_len, len(cand)) + 1)
                )
                if not reducible:
                    new_frontier.append((src, cand))
        if not new_frontier:
            break
        basis.extend(new_frontier)
        frontier = new_frontier
        last_nonempty = degree
    saturated = last_nonempty <= max_degree - 2
    basis.sort(key=lambda e: (len(e[1]), e[0], e[1]))
    cartan = {j: {i: 0 for i in qp.vertices} for j in qp.vertices}
    for src, word in basis:
        tgt = qp.path_target(word) if word else src
        cartan[tgt][src] += 1
    return BasisReport(qp, max_degree, basis, saturated, cartan, reducer)


# ---------------------------------------------------------------------------
# structural predicates


def is_schurian(report: BasisReport) -> bool:
    """True iff every Cartan entry is 0 or 1."""
    if not report.saturated:
        raise NotSaturated("schurian check needs a saturated basis")
    return all(
        e <= 1 for row in report.cartan.values() for e in row.values()
    )


def socle_condition(report: BasisReport) -> bool:
    """True iff every cyclic path of length >= 1 is zero in the algebra."""
    if not report.saturated:
        raise NotSaturated("socle check needs a saturated basis")
    return not report.cyclic_basis_words()


def simple_not_in_radical(report: BasisReport, k: str) -> bool:
    """True iff S_k is not a submodule of rad P_k: no nonzero combination of
    cyclic classes at k is annihilated by every arrow out of k."""
    if not report.saturated:
        raise NotSaturated("socle membership needs a saturated basis")
    if k not in report.qp.vertices:
        raise UnknownVertex(k)
    qp = report.qp
    cyclic = [w for w in report.cyclic_basis_words() if qp.path_source(w) == k]
    if not cyclic:
        return True
    outs = qp.arrows_from(k)
    # matrix of the map x -> (a.x)_a on the span of cyclic classes
    columns = []
    images: list[Word] = []
    image_index: dict[tuple[str, Word], int] = {}
    rows: list[dict[int, Fraction]] = []
    for w in cyclic:
        row: dict[int, Fraction] = {}
        for a in outs:
            img = report.path_class(w + (a,))
            for iw, c in img.items():
                key = (a, iw)
                if key not in image_index:
                    image_index[key] = len(image_index)
                row[image_index[key]] = row.get(image_index[key], Fraction(0)) + c
        rows.append(row)
    # S_k embeds iff the map has nontrivial kernel
    rank = _sparse_rank(rows)
    return rank == len(cyclic)


def _sparse_rank(rows: list[dict[int, Fraction]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                factor = row[col] / pivots[col][col]
                for c2, v2 in pivots[col].items():
                    row[c2] = row.get(c2, Fraction(0)) - factor * v2
                row = {c: v for c, v in row.items() if v != 0}
            else:
                pivots[col] = row
                rank += 1
                break
    return rank


def negative_mutation_defined(report: BasisReport, k: str) -> bool:
    """Schurian criterion: every nonzero path class k ~> i (i != k) admits an
    arrow j -> k whose composite j -> k ~> i is nonzero."""
    return _mutation_defined(report, k, negative=True)


def positive_mutation_defined(report: BasisReport, k: str) -> bool:
    """Dual criterion on paths into k and arrows out of k."""
    return _mutation_defined(report, k, negative=False)


def _mutation_defined(report: BasisReport, k: str, negative: bool) -> bool:
    if not report.saturated:
        raise NotSaturated("mutation-definedness needs a saturated basis")
    if not is_schurian(report):
        raise NotSchurian("mutation-definedness is implemented for schurian algebras")
    qp = report.qp
    if k not in qp.vertices:
        raise UnknownVertex(k)
    attach = qp.arrows_into(k) if negative else qp.arrows_from(k)
    for src, word in report.basis:
        if not word:
            continue
        tgt = qp.path_target(word)
        if negative:
            if src != k or tgt == k:
                continue
            witnesses = (
                (a,) + word for a in attach
            )
        else:
            if tgt != k or src == k:
                continue
            witnesses = (
                word + (a,) for a in attach
            )
        if not any(report.path_class(w) for w in witnesses):
            return False
    return True


def vanishing_arrowcount(q, k: str) -> bool:
    """Sufficient vanishing condition: total weight of arrows ending at k <= 1."""
    if k not in q.vertices:
        raise UnknownVertex(k)
    return q.in_weight(k) <= 1


# ---------------------------------------------------------------------------
# dense oracle (independent check for small quivers)


def dense_jacobian(qp: QP, max_degree: int | None = None):
    """Enumerate ALL paths up to the bound and row-reduce the full relation
    span u*r*v per (source, target) block.  Independent of PathReducer."""
    if max_degree is None:
        max_degree = qp.trunc
    paths_by_degree: list[list[tuple[str, Word]]] = [[(v, ()) for v in qp.vertices]]
    for d in range(1, max_degree + 1):
        level = []
        for src, w in paths_by_degree[d - 1]:
            tip = qp.tgt(w[-1]) if w else src
            for a in sorted(qp.arrows):
                if qp.src(a) == tip:
                    level.append((src, w + (a,)))
        paths_by_degree.append(level)
    all_paths = [p for level in paths_by_degree for p in level]

    def endpoints(entry):
        src, w = entry
        return src, (qp.path_target(w) if w else src)

    blocks: dict[tuple[str, str], list[Word | tuple]] = {}
    index: dict[tuple[str, Word], int] = {}
    for entry in all_paths:
        st = endpoints(entry)
        blocks.setdefault(st, []).append(entry)
        index[entry] = len(blocks[st]) - 1

    relations = [cyclic_derivative(qp, a) for a in sorted(qp.arrows)]
    relations = [r for r in relations if r]
    span: dict[tuple[str, str], list[dict[int, Fraction]]] = {st: [] for st in blocks}
    for r in relations:
        some_word = next(iter(r))
        r_src, r_tgt = qp.path_source(some_word), qp.path_target(some_word)
        r_len_min = min(len(w) for w in r)
        for u_src, u in all_paths:
            u_tip = qp.tgt(u[-1]) if u else u_src
            if u_tip != r_src:
                continue
            for v_src, v in all_paths:
                if v_src != r_tgt:
                    continue
                if len(u) + len(v) + r_len_min > max_degree:
                    continue
                vec: dict[int, Fraction] = {}
                for w, c in r.items():
                    full = u + w + v
                    if len(full) > max_degree:
                        continue
                    entry = (u_src, full)
                    vec[index[entry]] = vec.get(index[entry], Fraction(0)) + c
                if vec:
                    v_tgt = qp.path_target(v) if v else v_src
                    span[(u_src, v_tgt)].append(vec)
    dim = 0
    cartan = {j: {i: 0 for i in qp.vertices} for j in qp.vertices}
    for st, vecs in blocks.items():
        rank = _sparse_rank(span[st])
        block_dim = len(vecs) - rank
        dim += block_dim
        cartan[st[1]][st[0]] += block_dim
    return dim, cartan
