"""Plain-text bracket notation: lexing, parsing and rendering.

The dialect annotates a unit by wrapping its text in square brackets with
a category label just inside the opening or closing bracket, so
"[A apple]" and "[apple A]" are the same unit.  Within one bracket the
label is found first-wins: if the token right after "[" looks like a
label it is the label, otherwise the last token must be.  Interior
tokens are always text, which keeps words such as "A" usable.

Non-contiguous units are written as two or more fragments sharing a
dashed label: "[P- took]" opens the unit and "[up on -P]" continues it.
When same-category fragments interleave, digit indices disambiguate:
"[A1- w1] [A2- w2] w3 [-A1 w4] [-A2 w5]".  Fragments are matched among
the children of one unit; the first fragment fixes the unit's parent and
categories.

Round-bracket groups at the end of a unit add edges without adding text:
"(John A)" re-attaches the existing unit reading "John" as a remote
participant, and "(IMP A)" adds an implicit participant.  A final "UNA"
word inside a bracket marks the unit as unanalyzable.

Top-level material outside any bracket is wrapped in an implicit root.
Punctuation tokens enter the token stream but belong to no unit.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field

from .categories import CategorySet, InvalidCategory, ALL_LABELS
from .core import (
    EdgeSpec,
    IMPLICIT,
    INTERNAL,
    Passage,
    TERMINAL,
    Token,
    UccaError,
    UnitSpec,
    build_passage,
)

LBRACKET = "lbracket"
RBRACKET = "rbracket"
LPAREN = "lparen"
RPAREN = "rparen"
LABEL = "label"
WORD = "word"
_EOF = "eof"

_DELIMS = {"[": LBRACKET, "]": RBRACKET, "(": LPAREN, ")": RPAREN}

_LABEL_SHAPE = re.compile(r"^(-)?([A-Z]+(?:\+[A-Z]+)*)(\d+)?(-)?$")

IMPLICIT_MARKER = "IMP"
UNA_MARKER = "UNA"


class ParseError(UccaError):
    """Notation input that cannot be parsed.

    position is a byte offset into the UTF-8 encoding of the source;
    expected/found describe the mismatch when that is meaningful.
    """

    def __init__(self, message, *, position, expected=None, found=None):
        detail = message
        if expected or found:
            parts = []
            if expected:
                parts.append(f"expected {expected}")
            if found:
                parts.append(f"found {found}")
            detail = f"{message} ({', '.join(parts)})"
        super().__init__(f"byte {position}: {detail}")
        self.position = position
        self.expected = expected
        self.found = found


class UnbalancedBrackets(ParseError):
    pass


class UnknownCategoryLabel(ParseError):
    pass


class DanglingContinuation(ParseError):
    pass


class OrphanContinuation(ParseError):
    pass


class AmbiguousContinuation(ParseError):
    pass


class UnresolvedRemote(ParseError):
    pass


class AmbiguousRemote(ParseError):
    pass


class MisplacedRemote(ParseError):
    pass


class RenderError(UccaError):
    """A passage that the bracket notation cannot express."""


@dataclass(frozen=True)
class NotationToken:
    """One lexer token with its byte span in the source."""

    kind: str
    text: str
    start: int
    end: int


def _classify(text: str) -> str:
    m = _LABEL_SHAPE.match(text)
    if not m:
        return WORD
    if m.group(1) and m.group(4):
        return WORD
    if all(part in ALL_LABELS for part in m.group(2).split("+")):
        return LABEL
    return WORD


def lex(source: str) -> list[NotationToken]:
    """Split source into bracket, paren, label and word tokens.

    Brackets and parens are always single-character tokens; everything
    else splits on whitespace.  A token whose text matches the label
    pattern (category abbreviations joined by "+", optional digit index,
    at most one leading or trailing dash) gets the label kind; whether it
    acts as a label is decided by its position during parsing.
    """
    out: list[NotationToken] = []
    offset = 0
    word_chars: list[str] = []
    word_start = 0

    def flush(end: int) -> None:
        if word_chars:
            text = "".join(word_chars)
            out.append(NotationToken(_classify(text), text, word_start, end))
            word_chars.clear()

    for ch in source:
        width = len(ch.encode("utf-8"))
        if ch in _DELIMS:
            flush(offset)
            out.append(NotationToken(_DELIMS[ch], ch, offset, offset + width))
        elif ch.isspace():
            flush(offset)
        else:
            if not word_chars:
                word_start = offset
            word_chars.append(ch)
        offset += width
    flush(offset)
    return out


def _is_punct_text(text: str) -> bool:
    return all(unicodedata.category(ch).startswith("P") for ch in text)


@dataclass
class _Label:
    cats: CategorySet
    index: str | None
    open_dash: bool
    close_dash: bool
    tok: NotationToken


@dataclass
class _RawParen:
    words: list[str]
    cats: CategorySet
    start: int


@dataclass
class _RawGroup:
    label: _Label
    una: bool
    words: list[NotationToken]
    children: list["_RawGroup"]
    parens: list[_RawParen]
    start: int


@dataclass
class _Node:
    cats: CategorySet
    una: bool
    words: list[NotationToken]
    children: list["_Node"]
    parens: list[_RawParen]
    scope: dict = field(default_factory=dict)
    start: int = 0
    kind: str = INTERNAL
    positions: tuple[int, ...] = ()
    parent: "_Node | None" = None


def _parse_label_token(tok: NotationToken) -> _Label:
    m = _LABEL_SHAPE.match(tok.text)
    try:
        cats = CategorySet.from_notation(m.group(2))
    except InvalidCategory as exc:
        raise ParseError(str(exc), position=tok.start) from None
    return _Label(cats, m.group(3), bool(m.group(4)), bool(m.group(1)), tok)


def _label_hint(items) -> None:
    """Raise the most helpful error for a bracket with no usable label."""
    for pick in (items[0], items[-1]) if items else ():
        if pick[0] == "tok" and pick[1].kind == WORD and _LABEL_SHAPE.match(pick[1].text):
            raise UnknownCategoryLabel(
                f"{pick[1].text!r} is not a known category label",
                position=pick[1].start,
            )


class _Parser:
    def __init__(self, source: str):
        self.toks = lex(source)
        self.toks.append(NotationToken(_EOF, "", len(source.encode("utf-8")), len(source.encode("utf-8"))))
        self.i = 0

    def peek(self) -> NotationToken:
        return self.toks[self.i]

    def take(self) -> NotationToken:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse_top(self):
        groups: list[_RawGroup] = []
        bare: list[NotationToken] = []
        parens: list[_RawParen] = []
        while True:
            tok = self.peek()
            if tok.kind == _EOF:
                break
            if tok.kind == LBRACKET:
                self.take()
                groups.append(self.parse_group(tok))
            elif tok.kind == LPAREN:
                self.take()
                parens.append(self.parse_paren(tok))
            elif tok.kind == RBRACKET:
                raise UnbalancedBrackets(
                    "']' without a matching '['", position=tok.start, found="']'"
                )
            elif tok.kind == RPAREN:
                raise UnbalancedBrackets(
                    "')' without a matching '('", position=tok.start, found="')'"
                )
            else:
                self.take()
                bare.append(tok)
        return groups, bare, parens

    def parse_group(self, open_tok: NotationToken) -> _RawGroup:
        items: list[tuple[str, object]] = []
        while True:
            tok = self.peek()
            if tok.kind == _EOF:
                raise UnbalancedBrackets(
                    "bracket opened here is never closed",
                    position=open_tok.start,
                    expected="']'",
                    found="end of input",
                )
            if tok.kind == RBRACKET:
                self.take()
                break
            if tok.kind == LBRACKET:
                self.take()
                items.append(("group", self.parse_group(tok)))
            elif tok.kind == LPAREN:
                self.take()
                items.append(("paren", self.parse_paren(tok)))
            elif tok.kind == RPAREN:
                raise UnbalancedBrackets(
                    "')' without a matching '('", position=tok.start, found="')'"
                )
            else:
                items.append(("tok", self.take()))
        return self.finish_group(open_tok, items)

    def finish_group(self, open_tok: NotationToken, items) -> _RawGroup:
        parens: list[_RawParen] = []
        while items and items[-1][0] == "paren":
            parens.insert(0, items.pop()[1])
        for kind, value in items:
            if kind == "paren":
                raise MisplacedRemote(
                    "round-bracket group must come at the end of its unit",
                    position=value.start,
                )

        def is_tok(item, kind=None):
            return item[0] == "tok" and (kind is None or item[1].kind == kind)

        def is_una(item):
            return is_tok(item, LABEL) and item[1].text == UNA_MARKER

        una = False
        if items and is_una(items[-1]):
            items.pop()
            una = True
        elif len(items) >= 2 and is_tok(items[-1], LABEL) and is_una(items[-2]):
            items.pop(-2)
            una = True

        label_tok = None
        if items and is_tok(items[0], LABEL):
            label_tok = items.pop(0)[1]
        elif items and is_tok(items[-1], LABEL):
            label_tok = items.pop()[1]
        else:
            _label_hint(items)
            raise ParseError(
                "bracket group has no category label",
                position=open_tok.start,
                expected="a label just inside '[' or just before ']'",
            )
        label = _parse_label_token(label_tok)

        words = [item[1] for item in items if item[0] == "tok"]
        children = [item[1] for item in items if item[0] == "group"]
        if not words and not children and not parens and not (label.open_dash or label.close_dash):
            raise ParseError(
                "category label without any text; write the label beside its text,"
                " as in [A apple]",
                position=label_tok.start,
            )
        return _RawGroup(label, una, words, children, parens, open_tok.start)

    def parse_paren(self, open_tok: NotationToken) -> _RawParen:
        toks: list[NotationToken] = []
        while True:
            tok = self.peek()
            if tok.kind == _EOF:
                raise UnbalancedBrackets(
                    "round bracket opened here is never closed",
                    position=open_tok.start,
                    expected="')'",
                    found="end of input",
                )
            if tok.kind == RPAREN:
                self.take()
                break
            if tok.kind in (LBRACKET, LPAREN):
                raise ParseError(
                    "remote and implicit groups hold a flat word sequence;"
                    " nested brackets are not allowed here",
                    position=tok.start,
                    found=tok.text,
                )
            if tok.kind == RBRACKET:
                raise UnbalancedBrackets(
                    "']' inside a round-bracket group", position=tok.start, found="']'"
                )
            toks.append(self.take())
        if len(toks) < 2:
            raise ParseError(
                "round-bracket group needs words and a category, as in (John A)",
                position=open_tok.start,
            )
        if toks[-1].kind == LABEL:
            label_tok = toks.pop()
        elif toks[0].kind == LABEL:
            label_tok = toks.pop(0)
        else:
            _label_hint([("tok", t) for t in toks])
            raise ParseError(
                "round-bracket group has no category label",
                position=open_tok.start,
                expected="a label first or last, as in (John A)",
            )
        label = _parse_label_token(label_tok)
        if label.open_dash or label.close_dash or label.index:
            raise ParseError(
                "continuation marks are not allowed on remote or implicit units",
                position=label_tok.start,
            )
        return _RawParen([t.text for t in toks], label.cats, open_tok.start)


def _resolve(raw_children, scope, all_nodes):
    out: list[_Node] = []
    for g in raw_children:
        lab = g.label
        key = (lab.cats.labels, lab.index)
        if lab.close_dash:
            entry = scope.get(key)
            if entry is None:
                raise OrphanContinuation(
                    f"continuation '-{lab.tok.text.lstrip('-')}' has no open fragment"
                    " among its siblings",
                    position=lab.tok.start,
                )
            entry[1] = True
            node = entry[0]
            node.una = node.una or g.una
            node.words.extend(g.words)
            node.children.extend(_resolve(g.children, node.scope, all_nodes))
            node.parens.extend(g.parens)
        else:
            node = _Node(lab.cats, g.una, list(g.words), [], list(g.parens), start=g.start)
            node.children = _resolve(g.children, node.scope, all_nodes)
            all_nodes.append(node)
            if lab.open_dash:
                if key in scope:
                    raise AmbiguousContinuation(
                        f"'{lab.tok.text}' opened while an earlier fragment with the"
                        " same label is still open; use digit indices such as A1- and A2-",
                        position=lab.tok.start,
                    )
                scope[key] = [node, False, lab.tok.start]
            out.append(node)
    return out


def _check_dangling(scopes) -> None:
    dangling = [entry[2] for scope in scopes for entry in scope.values() if not entry[1]]
    if dangling:
        raise DanglingContinuation(
            "fragment opened with a trailing dash is never continued",
            position=min(dangling),
        )


def parse_passage(
    source: str,
    *,
    passage_id: str = "passage",
    lenient_remotes: bool = False,
    on_warning=None,
) -> Passage:
    """Parse one passage written in the bracket dialect.

    Unlabeled top-level material is wrapped in an implicit root.  Words
    made only of Unicode punctuation enter the token stream but are not
    attached to any unit, and so are words that appear next to child
    brackets; the validator reports the latter as coverage gaps.

    Remote groups are resolved against the surface text of every unit in
    the passage, forwards as well as backwards.  The minimal matching
    unit is preferred; if several remain, strict mode raises
    AmbiguousRemote while lenient mode warns through on_warning and picks
    the nearest preceding match.
    """
    parser = _Parser(source)
    top_groups, top_bare, top_parens = parser.parse_top()

    all_nodes: list[_Node] = []
    root_scope: dict = {}
    top_nodes = _resolve(top_groups, root_scope, all_nodes)
    _check_dangling([root_scope] + [n.scope for n in all_nodes])

    root = _Node(None, False, list(top_bare), top_nodes, list(top_parens))
    for node in all_nodes:
        for child in node.children:
            child.parent = node
    for child in top_nodes:
        child.parent = root

    word_toks = sorted(
        [t for n in all_nodes for t in n.words] + top_bare, key=lambda t: t.start
    )
    stream = [
        Token(t.text, pos, _is_punct_text(t.text)) for pos, t in enumerate(word_toks)
    ]
    position_of = {id(t): pos for pos, t in enumerate(word_toks)}

    for node in all_nodes:
        if node.children or node.parens:
            node.kind = INTERNAL
        else:
            node.kind = TERMINAL
            node.positions = tuple(
                position_of[id(t)] for t in node.words if not _is_punct_text(t.text)
            )
            if not node.positions:
                raise ParseError(
                    "unit covers no text", position=node.start
                )

    yields: dict[int, frozenset[int]] = {}

    def compute_yield(node: _Node) -> frozenset[int]:
        agg = set(node.positions)
        for child in node.children:
            agg.update(compute_yield(child))
        yields[id(node)] = frozenset(agg)
        return yields[id(node)]

    compute_yield(root)

    texts = {
        id(n): tuple(stream[p].text for p in sorted(yields[id(n)])) for n in all_nodes
    }

    def ancestors(node: _Node) -> set[int]:
        seen = set()
        cur = node.parent
        while cur is not None:
            seen.add(id(cur))
            cur = cur.parent
        return seen

    def resolve_remote(owner: _Node, paren: _RawParen) -> _Node:
        wanted = tuple(paren.words)
        blocked = ancestors(owner) | {id(owner)}
        candidates = [
            n
            for n in all_nodes
            if texts[id(n)] == wanted
            and id(n) not in blocked
            and n.parent is not owner
        ]
        # Prefer the minimal unit: drop any candidate wrapped around
        # another candidate with the very same extent.
        spans = {id(n): yields[id(n)] for n in candidates}
        ids = set(spans)
        minimal = [
            n
            for n in candidates
            if not any(
                id(c) in ids and spans[id(c)] == spans[id(n)] for c in n.children
            )
        ]
        if not minimal:
            raise UnresolvedRemote(
                f"no unit reads {' '.join(wanted)!r}", position=paren.start
            )
        if len(minimal) == 1:
            return minimal[0]
        if not lenient_remotes:
            raise AmbiguousRemote(
                f"{len(minimal)} units read {' '.join(wanted)!r}; resolve by hand"
                " or use lenient mode",
                position=paren.start,
            )
        ref = sum(1 for t in word_toks if t.start < paren.start)
        if on_warning is not None:
            on_warning(
                f"byte {paren.start}: {len(minimal)} units read {' '.join(wanted)!r};"
                " picking the nearest preceding one"
            )
        before = [n for n in minimal if min(yields[id(n)]) < ref]
        if before:
            return max(before, key=lambda n: min(yields[id(n)]))
        return min(minimal, key=lambda n: min(yields[id(n)]))

    units: list[UnitSpec] = []
    edges: list[EdgeSpec] = []
    ids: dict[int, str] = {}
    remote_requests: list[tuple[_Node, _RawParen]] = []

    def emit(node: _Node) -> str:
        uid = f"t{len(units)}"
        ids[id(node)] = uid
        units.append(
            UnitSpec(uid, node.kind if node is not root else INTERNAL, node.positions)
        )
        for child in node.children:
            cats = child.cats
            if child.una and UNA_MARKER not in cats:
                cats = CategorySet(list(cats) + [UNA_MARKER])
            child_id = emit(child)
            edges.append(EdgeSpec(uid, child_id, cats))
        for paren in node.parens:
            if paren.words == [IMPLICIT_MARKER]:
                imp_id = f"t{len(units)}"
                units.append(UnitSpec(imp_id, IMPLICIT))
                edges.append(EdgeSpec(uid, imp_id, paren.cats))
            else:
                remote_requests.append((node, paren))
        return uid

    emit(root)
    for owner, paren in remote_requests:
        target = resolve_remote(owner, paren)
        edges.append(EdgeSpec(ids[id(owner)], ids[id(target)], paren.cats, remote=True))

    return build_passage(
        stream, units, edges, passage_id=passage_id, require_coverage=False
    )


def split_passages(text: str) -> list[str]:
    """Split a file into blank-line-separated passage sources."""
    chunks = re.split(r"\n[ \t]*\n", text)
    return [c for c in chunks if c.strip()]


# ---------------------------------------------------------------------------
# Rendering


def render(passage: Passage, label_side: str = "left") -> str:
    """Write a passage back into the bracket dialect.

    Output is deterministic and reparses to an isomorphic passage.
    Non-contiguous units come out as dashed fragments, with digit indices
    added exactly when sibling fragments of the same category interleave.
    Remote targets are written as the target's surface text, so passages
    in which that text picks out several units cannot round-trip and are
    reported as unrenderable, as are zero-width internal units.
    """
    if label_side not in ("left", "right"):
        raise ValueError(f"label_side must be 'left' or 'right', not {label_side!r}")
    return _Renderer(passage, label_side).render()


class _Renderer:
    def __init__(self, passage: Passage, label_side: str):
        self.p = passage
        self.side = label_side
        self.frags: dict[str, list[tuple[int, ...]]] = {}
        self.indices: dict[str, str] = {}

    def render(self) -> str:
        p = self.p
        for tok in p.tokens:
            if any(ch in "[]()" for ch in tok.text) or any(ch.isspace() for ch in tok.text):
                raise RenderError(
                    f"token {tok.text!r} contains notation delimiters or spaces"
                )
        for uid, unit in p.units.items():
            if uid == p.root:
                continue
            if unit.kind == INTERNAL and not p._yields[uid]:
                raise RenderError(f"unit {uid} covers no tokens and cannot be written")
        for uid in p.units:
            self.frags[uid] = self._fragments(uid)
        for uid, unit in p.units.items():
            if unit.kind == INTERNAL or uid == p.root:
                self._assign_indices(uid)

        top_items = []
        covered_intervals = []
        for e in p.units[p.root].outgoing:
            if e.remote or p.units[e.child].kind == IMPLICIT:
                continue
            for k, frag in enumerate(self.frags[e.child]):
                top_items.append((frag[0], self._bracket(e, k)))
                covered_intervals.append((frag[0], frag[-1]))
        for pos in range(len(p.tokens)):
            covered = any(lo <= pos <= hi for lo, hi in covered_intervals)
            claimed = any(
                pos in p._yields[e.child]
                for e in p.units[p.root].outgoing
                if not e.remote
            )
            if not covered and not claimed:
                top_items.append((pos, p.tokens[pos].text))
        top_items.sort(key=lambda item: item[0])
        pieces = [text for _, text in top_items]
        pieces.extend(self._paren_texts(p.root))
        return " ".join(pieces)

    def _fragments(self, uid: str) -> list[tuple[int, ...]]:
        ys = sorted(self.p._yields[uid])
        if not ys:
            return []
        frags = [[ys[0]]]
        yset = self.p._yields[uid]
        for prev, cur in zip(ys, ys[1:]):
            split = any(
                not self.p.tokens[r].is_punct and r not in yset
                for r in range(prev + 1, cur)
            )
            if split:
                frags.append([cur])
            else:
                frags[-1].append(cur)
        return [tuple(f) for f in frags]

    def _assign_indices(self, uid: str) -> None:
        groups: dict[tuple, list[str]] = {}
        for e in self.p.units[uid].outgoing:
            if e.remote or self.p.units[e.child].kind == IMPLICIT:
                continue
            if len(self.frags[e.child]) > 1:
                key = tuple(l for l in e.categories.labels if l != UNA_MARKER)
                groups.setdefault(key, []).append(e.child)
        for members in groups.values():
            if len(members) > 1:
                members.sort(key=lambda cid: self.frags[cid][0][0])
                for n, cid in enumerate(members, start=1):
                    self.indices[cid] = str(n)

    def _label_text(self, edge) -> str:
        plain = [l for l in edge.categories.labels if l != UNA_MARKER]
        # An edge carrying only UNA cannot be built, so plain is never empty.
        return "+".join(plain)

    def _bracket(self, edge, frag_index: int) -> str:
        p = self.p
        uid = edge.child
        unit = p.units[uid]
        frags = self.frags[uid]
        frag = frags[frag_index]
        label = self._label_text(edge) + self.indices.get(uid, "")
        if len(frags) > 1:
            label = f"{label}-" if frag_index == 0 else f"-{label}"

        items: list[tuple[int, str]] = []
        lo, hi = frag[0], frag[-1]
        if unit.kind == TERMINAL:
            for pos in range(lo, hi + 1):
                if pos in p._yields[uid] or p.tokens[pos].is_punct:
                    items.append((pos, p.tokens[pos].text))
        else:
            child_intervals = []
            for e in unit.outgoing:
                if e.remote or p.units[e.child].kind == IMPLICIT:
                    continue
                for k, cf in enumerate(self.frags[e.child]):
                    if lo <= cf[0] <= hi:
                        items.append((cf[0], self._bracket(e, k)))
                        child_intervals.append((cf[0], cf[-1]))
            for pos in range(lo, hi + 1):
                if p.tokens[pos].is_punct and not any(
                    a <= pos <= b for a, b in child_intervals
                ):
                    items.append((pos, p.tokens[pos].text))
        items.sort(key=lambda item: item[0])
        words = [text for _, text in items]

        una = []
        if UNA_MARKER in edge.categories and frag_index == 0:
            una = [UNA_MARKER]
        if not una and unit.kind == TERMINAL and words and words[-1] == UNA_MARKER:
            raise RenderError(
                f"unit {uid} ends with the literal word 'UNA', which the notation reserves"
            )

        parens = self._paren_texts(uid) if frag_index == len(frags) - 1 else []
        side = self.side
        if side == "right" and words and _classify(words[0]) == LABEL:
            # A leading label-shaped word would win label detection, so
            # fall back to a left-side label for this bracket.
            side = "left"
        if side == "left":
            pieces = [label] + words + una + parens
        else:
            pieces = words + una + [label] + parens
        return "[" + " ".join(pieces) + "]"

    def _paren_texts(self, uid: str) -> list[str]:
        p = self.p
        out = []
        for e in p.units[uid].outgoing:
            if e.remote:
                text = p.text_of(e.child)
                if not text:
                    raise RenderError(
                        f"remote target {e.child} has no surface text to refer to it by"
                    )
                if text == IMPLICIT_MARKER:
                    raise RenderError(
                        "remote target reads 'IMP', which the notation reserves"
                    )
                self._check_unambiguous(uid, e.child, text)
                out.append(f"({text} {self._label_text(e)})")
            elif p.units[e.child].kind == IMPLICIT:
                out.append(f"({IMPLICIT_MARKER} {e.categories.notation()})")
        return out

    def _check_unambiguous(self, owner: str, target: str, text: str) -> None:
        # Re-run the reference resolution a reader would apply; if it
        # would not land on a unit with the target's extent, the remote
        # cannot be written as text.
        p = self.p
        blocked = {owner}
        cur = p.primary_parent_edge(owner)
        while cur is not None:
            blocked.add(cur.parent)
            cur = p.primary_parent_edge(cur.parent)
        candidates = [
            uid
            for uid in p.units
            if uid != p.root
            and uid not in blocked
            and p._yields[uid]
            and p.text_of(uid) == text
            and (p.primary_parent_edge(uid) is None or p.primary_parent_edge(uid).parent != owner)
        ]
        spans = {uid: p._yields[uid] for uid in candidates}
        minimal = [
            uid
            for uid in candidates
            if not any(
                not e.remote and e.child in spans and spans[e.child] == spans[uid]
                for e in p.units[uid].outgoing
            )
        ]
        if len(minimal) != 1:
            raise RenderError(
                f"{len(minimal)} units read {text!r}; the remote reference to"
                f" {target} would be ambiguous"
            )
