"""Graph model for foundational-layer passages.

A passage is a rooted tree of units over a token sequence, plus remote
edges that re-attach existing units to additional parents.  Primary
(non-remote) edges form the tree; adding the remote edges gives a DAG.
Terminal units own token positions, which may be non-contiguous.
Implicit units stand for participants with no surface realization and
own nothing.  Punctuation tokens stay in the token sequence but belong
to no unit.

Passages are immutable once built.  `build_passage` checks structural
well-formedness and assigns unit ids densely in pre-order over the
primary tree, so ids are stable across serialization and usable in
diagnostics.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .categories import CategorySet

TERMINAL = "terminal"
INTERNAL = "internal"
IMPLICIT = "implicit"
_KINDS = (TERMINAL, INTERNAL, IMPLICIT)


class UccaError(Exception):
    """Base class for all errors raised by this package."""


class BuildError(UccaError):
    """A structural problem that prevents assembling a passage."""


class DuplicateId(BuildError):
    pass


class DanglingEdge(BuildError):
    pass


class PrimaryCycle(BuildError):
    pass


class MultiplePrimaryParents(BuildError):
    pass


class MultipleRoots(BuildError):
    pass


class TokenCoverageGap(BuildError):
    pass


class InvalidToken(BuildError):
    pass


class InvalidUnit(BuildError):
    pass


class InvalidRemote(BuildError):
    pass


class RemoteCycle(BuildError):
    pass


class UnknownUnit(UccaError):
    """A unit id that does not exist in the passage."""


class NotInternal(UccaError):
    """An operation that needs an internal unit got a terminal or implicit one."""


@dataclass(frozen=True)
class Token:
    """One surface token.  Position is the 0-based index in the passage."""

    text: str
    position: int
    is_punct: bool = False


@dataclass(frozen=True)
class Edge:
    """A labeled parent-child connection.

    `remote` marks edges that re-attach a unit which already has a
    primary parent elsewhere; they express shared argumenthood rather
    than containment.
    """

    parent: str
    child: str
    categories: CategorySet
    remote: bool = False


@dataclass(frozen=True)
class Unit:
    """One annotation unit.

    kind is "terminal" (owns tokens), "internal" (owns child edges), or
    "implicit" (owns nothing).  `tokens` holds token positions and is
    only populated for terminals; `outgoing` is only populated for
    internal units.
    """

    id: str
    kind: str
    tokens: frozenset[int] = frozenset()
    outgoing: tuple[Edge, ...] = ()


@dataclass(frozen=True)
class UnitSpec:
    """Input description of a unit for `build_passage`."""

    id: str
    kind: str
    tokens: tuple[int, ...] = ()


@dataclass(frozen=True)
class EdgeSpec:
    """Input description of an edge for `build_passage`.

    The order of edge specs sharing a parent fixes the order of that
    unit's children.
    """

    parent: str
    child: str
    categories: CategorySet
    remote: bool = False


class Passage:
    """An immutable annotated passage.  Create via `build_passage`."""

    def __init__(self, passage_id, tokens, units, root, primary_parent, remote_parents, yields):
        self.id = passage_id
        self.tokens: tuple[Token, ...] = tokens
        self.units: Mapping[str, Unit] = MappingProxyType(units)
        self.root: str = root
        self._primary_parent: Mapping[str, Edge] = MappingProxyType(primary_parent)
        self._remote_parents: Mapping[str, tuple[Edge, ...]] = MappingProxyType(remote_parents)
        self._yields: Mapping[str, frozenset[int]] = MappingProxyType(yields)

    def unit(self, unit_id: str) -> Unit:
        try:
            return self.units[unit_id]
        except KeyError:
            raise UnknownUnit(f"no unit with id {unit_id!r}") from None

    def primary_parent_edge(self, unit_id: str) -> Edge | None:
        """The unique non-remote incoming edge, or None for the root."""
        self.unit(unit_id)
        return self._primary_parent.get(unit_id)

    def incoming(self, unit_id: str) -> tuple[Edge, ...]:
        """All incoming edges, primary first."""
        primary = self.primary_parent_edge(unit_id)
        remotes = self._remote_parents.get(unit_id, ())
        return ((primary,) if primary else ()) + remotes

    def edges(self) -> Iterator[Edge]:
        for unit in self.units.values():
            yield from unit.outgoing

    def non_punct_positions(self) -> frozenset[int]:
        return frozenset(t.position for t in self.tokens if not t.is_punct)

    def text_of(self, unit_id: str, limit: int | None = None) -> str:
        """The unit's surface text (primary yield, token order)."""
        text = " ".join(self.tokens[p].text for p in sorted(self._yields[unit_id]))
        if limit is not None:
            text = text[:limit]
        return text


def _as_category_set(value) -> CategorySet:
    if isinstance(value, CategorySet):
        return value
    if isinstance(value, str):
        return CategorySet.from_notation(value)
    return CategorySet(value)


def build_passage(
    tokens: Sequence[Token],
    units: Iterable[UnitSpec],
    edges: Iterable[EdgeSpec],
    *,
    passage_id: str = "passage",
    require_coverage: bool = True,
) -> Passage:
    """Assemble and check a passage, renumbering unit ids in pre-order.

    Checks are structural only: tree-ness of primary edges, kind
    consistency, remote sanity, DAG-ness over all edges, and token
    coverage.  Annotation-level restrictions (which categories may go
    where) are deliberately not enforced here; the validator reports
    them, which keeps ill-annotated passages representable.

    With require_coverage=False, non-punctuation tokens outside every
    terminal are tolerated; the notation parser uses this so that
    partially annotated text can still be loaded and validated.
    """
    tokens = tuple(tokens)
    for i, tok in enumerate(tokens):
        if not isinstance(tok, Token):
            raise InvalidToken(f"token {i} is not a Token")
        if tok.position != i:
            raise InvalidToken(f"token {tok.text!r} has position {tok.position}, expected {i}")
        if not tok.text:
            raise InvalidToken(f"token {i} has empty text")

    specs: dict[str, UnitSpec] = {}
    for spec in units:
        if spec.id in specs:
            raise DuplicateId(f"unit id {spec.id!r} appears twice")
        if spec.kind not in _KINDS:
            raise InvalidUnit(f"unit {spec.id!r} has unknown kind {spec.kind!r}")
        specs[spec.id] = spec

    edge_list = []
    for e in edges:
        if e.parent not in specs:
            raise DanglingEdge(f"edge parent {e.parent!r} is not a declared unit")
        if e.child not in specs:
            raise DanglingEdge(f"edge child {e.child!r} is not a declared unit")
        edge_list.append(EdgeSpec(e.parent, e.child, _as_category_set(e.categories), e.remote))

    outgoing: dict[str, list[EdgeSpec]] = {uid: [] for uid in specs}
    primary_in: dict[str, list[EdgeSpec]] = {uid: [] for uid in specs}
    remote_in: dict[str, list[EdgeSpec]] = {uid: [] for uid in specs}
    seen_remote = set()
    for e in edge_list:
        outgoing[e.parent].append(e)
        if e.remote:
            key = (e.parent, e.child)
            if key in seen_remote:
                raise InvalidRemote(f"duplicate remote edge {e.parent!r} -> {e.child!r}")
            seen_remote.add(key)
            if e.parent == e.child:
                raise InvalidRemote(f"remote edge from {e.parent!r} to itself")
            remote_in[e.child].append(e)
        else:
            primary_in[e.child].append(e)

    for uid, incoming in primary_in.items():
        if len(incoming) > 1:
            parents = ", ".join(repr(e.parent) for e in incoming)
            raise MultiplePrimaryParents(f"unit {uid!r} has primary parents {parents}")

    roots = [uid for uid in specs if not primary_in[uid]]
    if not roots:
        raise PrimaryCycle("no unit without a primary parent; the primary edges form a cycle")
    if len(roots) > 1:
        raise MultipleRoots(f"units {roots!r} all lack a primary parent; expected exactly one root")
    root = roots[0]

    for uid, spec in specs.items():
        is_root = uid == root
        if spec.kind == TERMINAL:
            if outgoing[uid]:
                raise InvalidUnit(f"terminal unit {uid!r} has outgoing edges")
            if not spec.tokens:
                raise InvalidUnit(f"terminal unit {uid!r} owns no tokens")
            for pos in spec.tokens:
                if not 0 <= pos < len(tokens):
                    raise InvalidUnit(f"unit {uid!r} claims token position {pos}, out of range")
                if tokens[pos].is_punct:
                    raise InvalidUnit(
                        f"unit {uid!r} claims punctuation token {tokens[pos].text!r}"
                    )
        else:
            if spec.tokens:
                raise InvalidUnit(f"{spec.kind} unit {uid!r} must not own tokens")
            if spec.kind == IMPLICIT and outgoing[uid]:
                raise InvalidUnit(f"implicit unit {uid!r} has outgoing edges")
            if spec.kind == INTERNAL and not outgoing[uid] and not is_root:
                raise InvalidUnit(f"internal unit {uid!r} has no children")
        if is_root and spec.kind != INTERNAL:
            raise InvalidUnit(f"root unit {uid!r} must be internal, not {spec.kind}")

    for e in edge_list:
        if e.remote:
            if not primary_in[e.child]:
                raise InvalidRemote(
                    f"remote edge to {e.child!r}, which has no primary parent"
                )
            if primary_in[e.child][0].parent == e.parent:
                raise InvalidRemote(
                    f"remote edge {e.parent!r} -> {e.child!r} duplicates the primary edge"
                )

    # Reachability doubles as the cycle check: every non-root unit has
    # exactly one primary parent, so anything unreachable sits on a cycle.
    reached = set()
    stack = [root]
    while stack:
        uid = stack.pop()
        if uid in reached:
            continue
        reached.add(uid)
        stack.extend(e.child for e in outgoing[uid] if not e.remote)
    if len(reached) != len(specs):
        missing = sorted(set(specs) - reached)
        raise PrimaryCycle(f"units {missing!r} are not reachable from the root")

    _check_dag(specs, outgoing)

    claimed: Counter[int] = Counter()
    for spec in specs.values():
        if spec.kind == TERMINAL:
            claimed.update(spec.tokens)
    for pos, count in claimed.items():
        if count > 1:
            raise TokenCoverageGap(f"token {tokens[pos].text!r} (position {pos}) belongs to {count} units")
    if require_coverage:
        for tok in tokens:
            if not tok.is_punct and claimed[tok.position] == 0:
                raise TokenCoverageGap(
                    f"token {tok.text!r} (position {tok.position}) belongs to no unit"
                )

    rename: dict[str, str] = {}
    order: list[str] = []

    def visit(uid: str) -> None:
        rename[uid] = str(len(rename))
        order.append(uid)
        for e in outgoing[uid]:
            if not e.remote:
                visit(e.child)

    visit(root)

    final_units: dict[str, Unit] = {}
    primary_parent: dict[str, Edge] = {}
    remote_parents: dict[str, list[Edge]] = {}
    for old in order:
        spec = specs[old]
        new_edges = tuple(
            Edge(rename[e.parent], rename[e.child], e.categories, e.remote)
            for e in outgoing[old]
        )
        final_units[rename[old]] = Unit(rename[old], spec.kind, frozenset(spec.tokens), new_edges)
    for unit in final_units.values():
        for e in unit.outgoing:
            if e.remote:
                remote_parents.setdefault(e.child, []).append(e)
            else:
                primary_parent[e.child] = e

    yields: dict[str, frozenset[int]] = {}
    for uid in reversed(list(final_units)):
        unit = final_units[uid]
        if unit.kind == TERMINAL:
            yields[uid] = frozenset(unit.tokens)
        else:
            agg: set[int] = set()
            for e in unit.outgoing:
                if not e.remote:
                    agg.update(yields[e.child])
            yields[uid] = frozenset(agg)

    return Passage(
        passage_id,
        tokens,
        final_units,
        rename[root],
        primary_parent,
        {k: tuple(v) for k, v in remote_parents.items()},
        yields,
    )


def _check_dag(specs, outgoing) -> None:
    # Primary edges are a tree by now, so any cycle goes through a remote.
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {uid: WHITE for uid in specs}
    for start in specs:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        color[start] = GRAY
        while stack:
            uid, idx = stack[-1]
            if idx < len(outgoing[uid]):
                stack[-1] = (uid, idx + 1)
                child = outgoing[uid][idx].child
                if color[child] == GRAY:
                    raise RemoteCycle(f"remote edges create a cycle through unit {child!r}")
                if color[child] == WHITE:
                    color[child] = GRAY
                    stack.append((child, 0))
            else:
                color[uid] = BLACK
                stack.pop()


def yield_of(passage: Passage, unit_id: str, include_remote: bool = False) -> frozenset[int]:
    """Token positions reachable from the unit.

    By default only primary edges are followed, which is the unit's own
    surface extent.  With include_remote=True, remote edges are followed
    too, pulling in the extents of shared arguments.
    """
    passage.unit(unit_id)
    if not include_remote:
        return passage._yields[unit_id]
    seen: set[str] = set()
    agg: set[int] = set()
    stack = [unit_id]
    while stack:
        uid = stack.pop()
        if uid in seen:
            continue
        seen.add(uid)
        unit = passage.units[uid]
        agg.update(unit.tokens)
        stack.extend(e.child for e in unit.outgoing)
    return frozenset(agg)


def is_scene_unit(passage: Passage, unit_id: str) -> bool:
    """True if the unit contains a main relation (a P or S child edge).

    Remote child edges count: a scene whose process is shared with an
    earlier scene still describes a scene.
    """
    unit = passage.unit(unit_id)
    if unit.kind != INTERNAL:
        raise NotInternal(f"unit {unit_id!r} is {unit.kind}; only internal units can be scenes")
    return any("P" in e.categories or "S" in e.categories for e in unit.outgoing)


@dataclass
class CategoryCounts:
    """Aggregatable passage statistics.

    `categories` counts edges per category label; an edge with a combined
    category contributes once to each member label.  Addition merges
    counts, so per-file statistics sum to corpus statistics.
    """

    categories: dict[str, int] = field(default_factory=dict)
    edges: int = 0
    scene_units: int = 0
    remote_edges: int = 0
    implicit_units: int = 0
    una_units: int = 0
    tokens: int = 0

    def __add__(self, other: "CategoryCounts") -> "CategoryCounts":
        merged = Counter(self.categories)
        merged.update(other.categories)
        return CategoryCounts(
            categories=dict(merged),
            edges=self.edges + other.edges,
            scene_units=self.scene_units + other.scene_units,
            remote_edges=self.remote_edges + other.remote_edges,
            implicit_units=self.implicit_units + other.implicit_units,
            una_units=self.una_units + other.una_units,
            tokens=self.tokens + other.tokens,
        )

    def to_dict(self) -> dict:
        return {
            "categories": {k: self.categories[k] for k in sorted(self.categories)},
            "edges": self.edges,
            "scene_units": self.scene_units,
            "remote_edges": self.remote_edges,
            "implicit_units": self.implicit_units,
            "una_units": self.una_units,
            "tokens": self.tokens,
        }


def stats(passage: Passage) -> CategoryCounts:
    """Count edges per category plus scene, remote, implicit and UNA totals."""
    counts = CategoryCounts(tokens=len(passage.tokens))
    cats: Counter[str] = Counter()
    for edge in passage.edges():
        counts.edges += 1
        cats.update(edge.categories)
        if edge.remote:
            counts.remote_edges += 1
    for unit in passage.units.values():
        if unit.kind == IMPLICIT:
            counts.implicit_units += 1
        if unit.kind == INTERNAL and is_scene_unit(passage, unit.id):
            counts.scene_units += 1
        if any("UNA" in e.categories for e in passage.incoming(unit.id)):
            counts.una_units += 1
    counts.categories = dict(cats)
    return counts


def isomorphic(a: Passage, b: Passage) -> bool:
    """Structural equality up to unit ids and child bookkeeping order.

    Token streams must match exactly.  Units are compared recursively by
    kind, owned token positions, child edges (categories and structure)
    and remote edges (categories and target extent).
    """
    if [(t.text, t.is_punct) for t in a.tokens] != [(t.text, t.is_punct) for t in b.tokens]:
        return False
    return _signature(a, a.root) == _signature(b, b.root)


def _signature(passage: Passage, unit_id: str):
    unit = passage.units[unit_id]
    children = []
    remotes = []
    for e in unit.outgoing:
        if e.remote:
            remotes.append((e.categories.labels, tuple(sorted(passage._yields[e.child]))))
        elif passage.units[e.child].kind == IMPLICIT:
            children.append(((), e.categories.labels, "implicit"))
        else:
            child_min = min(passage._yields[e.child], default=-1)
            children.append(((child_min,), e.categories.labels, _signature(passage, e.child)))
    return (
        unit.kind,
        tuple(sorted(unit.tokens)),
        tuple(sorted(children)),
        tuple(sorted(remotes)),
    )
