"""Structural validation against the foundational-layer guidelines.

Each rule in the registry checks one restriction from the annotation
guidelines and reports violations as diagnostics rather than exceptions,
so a single run surfaces every problem in a passage.  Severity overrides
from a config can re-grade or silence individual rules, but never change
which violations are detected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import IMPLICIT, INTERNAL, Passage

ERROR = "error"
WARNING = "warning"
OFF = "off"

_EXCERPT = 40


@dataclass(frozen=True)
class RuleInfo:
    """One registered rule: identifier, default severity, what it checks,
    and where in the guidelines the restriction comes from."""

    id: str
    severity: str
    description: str
    guideline_anchor: str


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    severity: str
    unit: str
    message: str


_RULES = [
    RuleInfo(
        "R1",
        ERROR,
        "top-level units carry only parallel-scene (H) or linker (L) categories",
        "restrictions summary: only scenes and linkers at the top level",
    ),
    RuleInfo(
        "R2",
        ERROR,
        "a scene unit has exactly one main-relation child (P, S, or a CMR combination)",
        "restrictions summary: every scene has a single main relation",
    ),
    RuleInfo(
        "R3",
        ERROR,
        "an elaborated non-scene unit includes a center (C) child unless unanalyzable",
        "restrictions summary: non-scene units are built around a center",
    ),
    RuleInfo(
        "R4",
        ERROR,
        "a linker's parent also contains a parallel scene, or is the top level",
        "restrictions summary: linkers link parallel scenes",
    ),
    RuleInfo(
        "R5",
        ERROR,
        "function words are never remote, and pure function units have no remote children",
        "restrictions summary: function units take part in no relation",
    ),
    RuleInfo(
        "R6",
        ERROR,
        "a unit with children has at least one non-remote child that is not pure function",
        "restrictions summary: at least one non-remote, non-function child",
    ),
    RuleInfo(
        "R7",
        WARNING,
        "an adverbial inside a non-scene unit, outside the center-coordination pattern",
        "adverbials: D belongs to scenes, or to C units coordinating D with C",
    ),
    RuleInfo(
        "R8",
        ERROR,
        "a coordinated-main-relation mark accompanies a process or state",
        "restrictions summary: CMR is secondary to P or S",
    ),
    RuleInfo(
        "R9",
        ERROR,
        "an unanalyzable unit has no internal structure",
        "restrictions summary: unanalyzable units are left unstructured",
    ),
    RuleInfo(
        "R10",
        ERROR,
        "every non-punctuation token belongs to some unit",
        "foundational layer: annotation covers the whole text",
    ),
    RuleInfo(
        "R11",
        ERROR,
        "a unit with a connector (N) child has no elaborator or quantifier children",
        "restrictions summary: connectives take no elaborators or quantifiers",
    ),
    RuleInfo(
        "R12",
        WARNING,
        "a remote edge points at the minimal unit for its entity",
        "technical notes: select the minimal possible relevant unit",
    ),
    RuleInfo(
        "R13",
        ERROR,
        "a scene unit serves its parent as participant, elaborator, center or parallel scene",
        "scenes: a scene is an A, E or C of another scene, or parallel to it",
    ),
    RuleInfo(
        "W1",
        WARNING,
        "a parallel-scene unit whose children are all parallel scenes and linkers",
        "restrictions summary: scene sequences are not nested under another H",
    ),
    RuleInfo(
        "W2",
        WARNING,
        "a remote or implicit edge carries a category beyond function and UNA",
        "remote and implicit units: added edges name a real role",
    ),
]

_RULE_ORDER = {rule.id: i for i, rule in enumerate(_RULES)}
_BY_ID = {rule.id: rule for rule in _RULES}


def list_rules() -> list[RuleInfo]:
    """All registered rules in reporting order."""
    return list(_RULES)


def _id_key(unit_id: str):
    return (len(unit_id), unit_id)


def parse_config(text: str) -> dict[str, str]:
    """Parse severity overrides, one `RULE = error|warning|off` per line.

    Blank lines and `#` comments are ignored.  Unknown rule ids or
    severities raise ValueError.
    """
    overrides: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'RULE = severity', got {raw!r}")
        rule, _, value = (part.strip() for part in line.partition("="))
        if rule not in _BY_ID:
            raise ValueError(f"line {lineno}: unknown rule id {rule!r}")
        if value not in (ERROR, WARNING, OFF):
            raise ValueError(
                f"line {lineno}: severity must be error, warning or off, got {value!r}"
            )
        overrides[rule] = value
    return overrides


def load_config(path) -> dict[str, str]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())


def validate(passage: Passage, config: dict[str, str] | None = None) -> list[Diagnostic]:
    """Check every rule and return diagnostics sorted by (unit, rule).

    `config` maps rule ids to an overriding severity, or to "off" to
    suppress reporting.  Overrides affect reporting only; the set of
    detected violations is always the same.
    """
    found: list[tuple[str, str, str]] = []

    def report(rule: str, unit_id: str, message: str) -> None:
        excerpt = passage.text_of(unit_id, _EXCERPT)
        found.append((rule, unit_id, f"{message}: '{excerpt}'"))

    units = passage.units
    root = passage.root

    def is_scene(unit) -> bool:
        return any("P" in e.categories or "S" in e.categories for e in unit.outgoing)

    def unanalyzable(unit_id: str) -> bool:
        return any("UNA" in e.categories for e in passage.incoming(unit_id))

    for e in units[root].outgoing:
        base = e.categories.base()
        if not base or not base <= {"H", "L"}:
            report("R1", e.child, f"top-level unit carries {e.categories}")

    for uid, unit in units.items():
        if unit.kind != INTERNAL:
            continue
        mains = [e for e in unit.outgoing if "P" in e.categories or "S" in e.categories]
        if len(mains) > 1:
            report("R2", uid, f"scene unit has {len(mains)} main-relation children")

        if (
            uid != root
            and not is_scene(unit)
            and not unanalyzable(uid)
            and len(unit.outgoing) >= 2
            and not any("H" in e.categories or "L" in e.categories for e in unit.outgoing)
            and not any("C" in e.categories for e in unit.outgoing)
        ):
            report("R3", uid, "non-scene unit has several children but no center")

        if any("N" in e.categories for e in unit.outgoing) and any(
            "E" in e.categories or "Q" in e.categories for e in unit.outgoing
        ):
            report("R11", uid, "unit mixes a connector child with elaborator or quantifier children")

        if unit.outgoing and not any(
            not e.remote and set(e.categories.labels) != {"F"} for e in unit.outgoing
        ):
            report("R6", uid, "unit has no non-remote child beyond function words")

    for uid, unit in units.items():
        for e in unit.outgoing:
            if "L" in e.categories and uid != root:
                if not any("H" in s.categories for s in unit.outgoing):
                    report("R4", e.child, "linker has no parallel scene beside it")

            if e.remote and "F" in e.categories:
                report("R5", e.child, "function word attached as remote")

            if "D" in e.categories and uid != root and not is_scene(unit):
                parent_in = passage.primary_parent_edge(uid)
                coordination = (
                    parent_in is not None
                    and "C" in parent_in.categories
                    and any("C" in s.categories for s in unit.outgoing)
                )
                if not coordination:
                    report("R7", e.child, "adverbial inside a non-scene unit")

            if "CMR" in e.categories and "P" not in e.categories and "S" not in e.categories:
                report("R8", e.child, "coordinated-main-relation mark without process or state")

            if e.remote:
                target = units[e.child]
                if target.kind == INTERNAL and passage._yields[e.child]:
                    wrapped = any(
                        not c.remote
                        and passage._yields[c.child] == passage._yields[e.child]
                        for c in target.outgoing
                    )
                    if wrapped:
                        report(
                            "R12",
                            uid,
                            "remote edge targets a unit wrapping an equally wide child",
                        )

            if (e.remote or units[e.child].kind == IMPLICIT) and all(
                label in ("F", "UNA") for label in e.categories.labels
            ):
                report("W2", e.child, f"added edge carries only {e.categories}")

    for uid, unit in units.items():
        if uid == root:
            continue
        if unanalyzable(uid) and unit.kind == INTERNAL:
            report("R9", uid, "unanalyzable unit has children")

        incoming = passage.primary_parent_edge(uid)
        all_f = all(e.categories.base() == {"F"} for e in passage.incoming(uid))
        if all_f and any(e.remote for e in unit.outgoing):
            report("R5", uid, "function unit has remote children")

        if unit.kind == INTERNAL and is_scene(unit):
            base = incoming.categories.base()
            if not base <= {"A", "E", "C", "H"}:
                report("R13", uid, f"scene unit serves its parent as {incoming.categories}")

        if (
            unit.kind == INTERNAL
            and "H" in incoming.categories
            and unit.outgoing
            and all("H" in e.categories or "L" in e.categories for e in unit.outgoing)
        ):
            report("W1", uid, "parallel scene contains only parallel scenes and linkers")

    covered = set()
    for unit in units.values():
        covered.update(unit.tokens)
    for tok in passage.tokens:
        if not tok.is_punct and tok.position not in covered:
            report(
                "R10",
                root,
                f"token {tok.text!r} (position {tok.position}) belongs to no unit",
            )

    config = config or {}
    out: list[Diagnostic] = []
    for rule, unit_id, message in found:
        severity = config.get(rule, _BY_ID[rule].severity)
        if severity == OFF:
            continue
        out.append(Diagnostic(rule, severity, unit_id, message))
    out.sort(key=lambda d: (_id_key(d.unit), _RULE_ORDER[d.rule]))
    return out
