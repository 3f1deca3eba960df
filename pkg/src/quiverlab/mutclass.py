"""Mutation-class exploration and representation-type classification.

A quiver with >= 3 vertices has a finite mutation class iff no mutation ever
produces an arrow of weight >= 3, so the BFS over canonical codes terminates
with either a closed class or an explicit witness sequence.  Named classes
(Dynkin, extended Dynkin, the exceptional double-arrow families) are matched
by membership of their representative's canonical code in the explored class.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import deque
from dataclasses import dataclass

from . import polytree, quivers
from .errors import Capped as CappedError
from .errors import InfiniteClass, NotPolygonTree, QuiverlabError

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class TypeTag:
    family: str  # A | D | E | ExtE | E11 | X | T | K | SurfaceOrUnknown
    param: int | None = None

    def __str__(self):
        if self.family == "SurfaceOrUnknown":
            return "SurfaceOrUnknown"
        return f"{self.family}({self.param})"


@dataclass
class ClassReport:
    seed: quivers.Quiver
    status: str  # finite | infinite | capped
    codes: frozenset[str] | None = None
    witness: tuple[str, ...] | None = None
    cap: int | None = None

    @property
    def size(self) -> int | None:
        return len(self.codes) if self.codes is not None else None


def find_infinite_witness(
    q: quivers.Quiver, walks: int = 400, depth: int | None = None, seed: int = 0
) -> tuple[str, ...] | None:
    """Randomized hunt for a mutation sequence reaching an arrow weight >= 3.

    A found witness is a sound certificate of infinite mutation type (replay
    it with fz_mutate); returning None proves nothing.  Deterministic for a
    fixed seed."""
    import random

    if depth is None:
        depth = 4 * q.n
    rng = random.Random(seed)
    for _ in range(walks):
        cur = q
        prev = None
        path: list[str] = []
        for _step in range(depth):
            k = rng.choice([v for v in cur.vertices if v != prev])
            prev = k
            path.append(k)
            cur = quivers.fz_mutate(cur, k)
            if cur.max_weight() >= 3:
                return tuple(path)
    return None


def explore_class(q: quivers.Quiver, cap: int = DEFAULT_CAP) -> ClassReport:
    """BFS over the mutation class up to isomorphism.

    For >= 3 vertices an arrow weight >= 3 certifies an infinite class (the
    witness replays to it); 2-vertex quivers always have class {K_m}.  A
    brief randomized witness hunt runs first on larger quivers, where the
    shortest weight-3 witness can sit too deep for breadth-first search.
    """
    if q.n < 2:
        raise QuiverlabError("mutation classes need at least 2 vertices")
    if q.n == 2:
        return ClassReport(q, "finite", frozenset([quivers.canonical_form(q).code]))
    if q.max_weight() >= 3:
        return ClassReport(q, "infinite", witness=())
    if q.n >= 9:
        witness = find_infinite_witness(q)
        if witness is not None:
            return ClassReport(q, "infinite", witness=witness)
    seen = {quivers.canonical_form(q).code}
    queue: deque[tuple[quivers.Quiver, tuple[str, ...]]] = deque([(q, ())])
    while queue:
        cur, path = queue.popleft()
        for k in cur.vertices:
            nxt = quivers.fz_mutate(cur, k)
            if nxt.max_weight() >= 3:
                return ClassReport(q, "infinite", witness=path + (k,))
            code = quivers.canonical_form(nxt).code
            if code in seen:
                continue
            if len(seen) >= cap:
                return ClassReport(q, "capped", cap=cap)
            seen.add(code)
            queue.append((nxt, path + (k,)))
    return ClassReport(q, "finite", frozenset(seen))


# ---------------------------------------------------------------------------
# named representatives (weights shown; unoriented tree parts oriented away
# from the core, which stays in the same mutation class)


def _tree_quiver(n: int, edges: list[tuple[int, int]]) -> quivers.Quiver:
    return quivers.validate([str(i) for i in range(1, n + 1)],
                            [(str(a), str(b)) for a, b in edges])


def _star_arms(arms: list[int]) -> quivers.Quiver:
    """Center vertex with outgoing paths of the given lengths."""
    vertices = ["c"]
    arrows = []
    for ai, length in enumerate(arms):
        prev = "c"
        for k in range(1, length + 1):
            v = f"a{ai}.{k}"
            vertices.append(v)
            arrows.append((prev, v))
            prev = v
    return quivers.validate(vertices, arrows)


def _e11_core() -> tuple[list[str], list[tuple[str, str, int]]]:
    vertices = ["p", "A", "B", "C", "D"]
    arrows = [
        ("p", "A", 1),
        ("B", "p", 1),
        ("A", "B", 2),
        ("B", "C", 1),
        ("C", "A", 1),
        ("B", "D", 1),
        ("D", "A", 1),
    ]
    return vertices, arrows


def _with_tails(vertices, arrows, tails: dict[str, int]):
    vertices = list(vertices)
    arrows = list(arrows)
    for base, length in tails.items():
        prev = base
        for k in range(1, length + 1):
            v = f"{base}.t{k}"
            vertices.append(v)
            arrows.append((prev, v, 1))
            prev = v
    return quivers.validate(vertices, arrows)


def representative(tag: TypeTag) -> quivers.Quiver:
    fam, n = tag.family, tag.param
    if fam == "A":
        return _tree_quiver(n, [(i, i + 1) for i in range(1, n)])
    if fam == "D":
        if n == 3:
            return representative(TypeTag("A", 3))
        return _tree_quiver(n, [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n)])
    if fam == "E":
        arms = {6: [1, 2, 2], 7: [1, 2, 3], 8: [1, 2, 4]}[n]
        return _star_arms(arms)
    if fam == "ExtE":
        arms = {6: [2, 2, 2], 7: [1, 3, 3], 8: [1, 2, 5]}[n]
        return _star_arms(arms)
    if fam == "E11":
        vertices, arrows = _e11_core()
        tails = {6: {"p": 1, "C": 1, "D": 1}, 7: {"p": 2, "D": 2}, 8: {"p": 1, "D": 4}}[n]
        return _with_tails(vertices, arrows, tails)
    if fam == "X":
        vertices = ["a", "b", "c", "d", "e", "f"]
        arrows = [
            ("c", "a", 1), ("a", "b", 2), ("b", "c", 1),
            ("c", "e", 1), ("e", "f", 2), ("f", "c", 1),
            ("d", "c", 1),
        ]
        if n == 7:
            vertices.append("g")
            arrows = [x for x in arrows if x != ("d", "c", 1)]
            arrows += [("c", "d", 1), ("d", "g", 2), ("g", "c", 1)]
        return quivers.validate(vertices, arrows)
    if fam == "T":
        if n == 6:
            return quivers.validate(
                ["a", "b", "c"], [("a", "b", 2), ("b", "c", 2), ("c", "a", 2)]
            )
        # the unique mutation-finite 4-vertex quiver with 6 arrows and a
        # double arrow; its class has size 1, so the double arrow never leaves
        return quivers.validate(
            ["a", "b", "c", "d"],
            [("a", "b", 1), ("a", "c", 1), ("d", "a", 1), ("b", "c", 1),
             ("d", "b", 1), ("c", "d", 2)],
        )
    if fam == "K":
        return quivers.validate(["1", "2"], [("1", "2", n)])
    raise QuiverlabError(f"no representative for {tag}")


def _candidate_tags(n: int) -> list[TypeTag]:
    tags: list[TypeTag] = []
    if n == 2:
        return tags  # handled by the K(m) special case
    tags.append(TypeTag("A", n))
    if n >= 4:
        tags.append(TypeTag("D", n))
    if n in (6, 7, 8):
        tags.append(TypeTag("E", n))
    if n in (7, 8, 9):
        tags.append(TypeTag("ExtE", n - 1))
    if n in (8, 9, 10):
        tags.append(TypeTag("E11", n - 2))
    if n in (6, 7):
        tags.append(TypeTag("X", n))
    if n in (3, 4):
        tags.append(TypeTag("T", n + 3))
    return tags


# ---------------------------------------------------------------------------
# on-disk class cache


BUNDLED_DATA_DIR = os.path.join(os.path.dirname(__file__), "data", "classes")


def cache_dir() -> str:
    return os.environ.get(
        "QF_CACHE_DIR", os.path.join(os.path.expanduser("~"), ".cache", "quiverlab")
    )


def _cache_path(kind: str, key: str) -> str:
    digest = hashlib.sha256(key.encode()).hexdigest()[:16]
    return os.path.join(cache_dir(), f"{kind}-{digest}.json")


def _cache_load(kind: str, key: str):
    if kind == "class":
        bundled = os.path.join(BUNDLED_DATA_DIR, key.replace(":", "-") + ".json")
        if os.path.exists(bundled):
            with open(bundled) as fh:
                return json.load(fh)
    path = _cache_path(kind, key)
    if os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        if data.get("key") == key:
            return data["value"]
    return None


def _cache_store(kind: str, key: str, value) -> None:
    os.makedirs(cache_dir(), exist_ok=True)
    path = _cache_path(kind, key)
    with open(path, "w") as fh:
        json.dump({"key": key, "value": value}, fh)


def named_class_codes(tag: TypeTag, cap: int = DEFAULT_CAP) -> frozenset[str]:
    """Canonical codes of the whole mutation class of a named representative,
    computed once and cached on disk (override the location via QF_CACHE_DIR)."""
    key = f"{tag.family}:{tag.param}"
    cached = _cache_load("class", key)
    if cached is not None:
        return frozenset(cached)
    rep = representative(tag)
    report = explore_class(rep, cap=cap)
    if report.status != "finite":
        raise InfiniteClass(f"representative class {tag} did not close (status {report.status})")
    _cache_store("class", key, sorted(report.codes))
    return report.codes


def classify_mutation_type(q: quivers.Quiver, cap: int = DEFAULT_CAP) -> TypeTag:
    """Match the quiver's mutation class against the named representatives of
    the same vertex count; SurfaceOrUnknown when finite but unnamed.

    Cached class databases are consulted before the seed's own class is
    explored, so membership in a known big class costs one canonical form.
    """
    if q.n == 2:
        return TypeTag("K", q.max_weight())
    code = quivers.canonical_form(q).code
    pending = []
    for tag in _candidate_tags(q.n):
        cached = _cache_load("class", f"{tag.family}:{tag.param}")
        if cached is not None:
            if code in cached:
                return tag
        else:
            pending.append(tag)
    report = explore_class(q, cap=cap)
    if report.status == "infinite":
        raise InfiniteClass("quiver has infinite mutation type")
    if report.status == "capped":
        raise CappedError(f"class exploration capped at {report.cap}")
    for tag in pending:
        rep_code = quivers.canonical_form(representative(tag)).code
        if rep_code in report.codes:
            _cache_store("class", f"{tag.family}:{tag.param}", sorted(report.codes))
            return tag
    return TypeTag("SurfaceOrUnknown")


def has_E6_class_subquiver(q: quivers.Quiver, cap: int = DEFAULT_CAP) -> bool:
    """True iff some induced 6-vertex subquiver lies in the E6 mutation class."""
    report = explore_class(q, cap=cap)
    if report.status == "infinite":
        raise InfiniteClass("quiver has infinite mutation type")
    if report.status == "capped":
        raise CappedError(f"class exploration capped at {report.cap}")
    e6 = named_class_codes(TypeTag("E", 6))
    from itertools import combinations

    for subset in combinations(q.vertices, 6):
        sub = q.induced(subset)
        if sub.max_weight() >= 3:
            continue
        if quivers.canonical_form(sub).code in e6:
            return True
    return False


# ---------------------------------------------------------------------------
# representation type


@dataclass
class RepTypeReport:
    verdict: str  # finite | tame | wild | out_of_trichotomy
    tag: TypeTag | None
    reason: str


def _structural_type_d(q: quivers.Quiver) -> bool:
    """Single oriented cycle, or a floriated star whose petals are all
    triangles: the polygon-tree shapes known to be of mutation type D."""
    try:
        dec = polytree.decompose(q)
    except NotPolygonTree:
        return False
    return polytree.is_type_d_candidate(dec.spec)


def representation_type(q: quivers.Quiver, cap: int = DEFAULT_CAP) -> RepTypeReport:
    """Finite / Tame / Wild trichotomy for the Jacobian algebra of a
    polygon-tree quiver with its (nondegenerate) primitive potential."""
    polytree.decompose(q)  # raises NotPolygonTree otherwise
    if _structural_type_d(q):
        tag = TypeTag("A", 3) if q.n == 3 else TypeTag("D", q.n)
        return RepTypeReport("finite", tag, "floriated star with triangle petals")
    if q.n > 10:
        return RepTypeReport(
            "wild", None, "more than 10 vertices and not of structural type D"
        )
    try:
        tag = classify_mutation_type(q, cap=cap)
    except InfiniteClass:
        return RepTypeReport("wild", None, "infinite mutation type")
    if tag.family in ("A", "D", "E") and (tag.family != "A" or tag.param == 3):
        return RepTypeReport("finite", tag, f"mutation class {tag}")
    if tag.family in ("ExtE", "E11"):
        return RepTypeReport("tame", tag, f"mutation class {tag}")
    if tag.family in ("X", "T", "K"):
        return RepTypeReport(
            "out_of_trichotomy", tag, f"mutation class {tag} is excluded from the trichotomy"
        )
    return RepTypeReport("wild", tag, "finite mutation type outside the named classes")
