"""KAIST-style to Penn-style constituent trees.

Three things change: punctuation inside an eojeol becomes separate tokens,
round-bracketed spans become ``NP-PRN`` phrases, and the affixes KAIST
agglutinates onto phrases are lowered into the terminals.  Eojeol-final
punctuation is then raised to the highest phrase ending at it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import DEFAULT_REGISTRY, Eojeol, TagsetRegistry
from .treeio import WARNING, Diagnostic, Phrase, Terminal

BASE = "base"
PUNCT = "punct"
PAREN_OPEN = "paren_open"
PAREN_CLOSE = "paren_close"
AFFIX_RUN = "affix_run"

_PUNCT_KINDS = (PUNCT, PAREN_OPEN, PAREN_CLOSE)


@dataclass(frozen=True)
class Segment:
    kind: str
    morphemes: tuple
    surface: str | None = None

    @property
    def form(self) -> str:
        if self.surface is not None:
            return self.surface
        return "".join(m.form for m in self.morphemes)

    def eojeol(self) -> Eojeol:
        return Eojeol(self.morphemes, self.surface)


@dataclass(frozen=True)
class PRNGroup:
    items: tuple


def segment_eojeol(e: Eojeol, registry: TagsetRegistry = DEFAULT_REGISTRY,
                   warnings: list | None = None) -> list[Segment]:
    """Split an eojeol at punctuation.

    Punctuation morphemes become one segment each; brackets are recognised
    by their literal form.  Affixes stranded behind punctuation form an
    ``affix_run``; everything else groups into ``base`` runs.
    """
    runs: list[list] = []
    for m in e.morphemes:
        if m.form == "(":
            runs.append([PAREN_OPEN, [m]])
            continue
        if m.form == ")":
            runs.append([PAREN_CLOSE, [m]])
            continue
        if registry.is_punct(m.tag):
            runs.append([PUNCT, [m]])
            continue
        affix = registry.is_grammatical_affix(m.tag)
        cur = runs[-1] if runs else None
        if cur is None:
            runs.append([BASE, [m]])
        elif cur[0] == BASE or (cur[0] == AFFIX_RUN and affix):
            cur[1].append(m)
        elif cur[0] == AFFIX_RUN:
            runs.append([BASE, [m]])
        else:
            runs.append([AFFIX_RUN if affix else BASE, [m]])
    segments = [Segment(kind, tuple(ms)) for kind, ms in runs]
    if e.surface is not None:
        segments = _distribute_surface(segments, e.surface, warnings)
    return segments


def _distribute_surface(segments, surface, warnings):
    """Give each segment its slice of a fused surface.

    Segments whose forms match the surface are peeled off both ends; the one
    segment left over takes the remaining (fused) text.
    """
    pieces = [s.form for s in segments]
    lo, hi = 0, len(segments)
    left, right = 0, len(surface)
    while lo < hi and surface.startswith(pieces[lo], left) \
            and left + len(pieces[lo]) <= right:
        left += len(pieces[lo])
        lo += 1
    while hi > lo and surface.endswith(pieces[hi - 1], left, right) \
            and right - len(pieces[hi - 1]) >= left:
        right -= len(pieces[hi - 1])
        hi -= 1
    if hi - lo == 1 and right > left:
        out = list(segments)
        s = segments[lo]
        out[lo] = Segment(s.kind, s.morphemes, surface[left:right])
        return out
    if hi == lo and left == right:
        return segments
    if warnings is not None:
        warnings.append(Diagnostic(WARNING, "surface-split",
                                   f"cannot split surface {surface!r} over its segments"))
    return segments


def group_parentheticals(segments, warnings: list | None = None) -> list:
    """Wrap each balanced ``( ... )`` span, innermost first, in a PRNGroup.

    Unmatched brackets stay plain tokens and add a warning.
    """
    stack: list[list] = [[]]
    for seg in segments:
        if seg.kind == PAREN_OPEN:
            stack.append([seg])
        elif seg.kind == PAREN_CLOSE:
            if len(stack) > 1:
                inner = stack.pop()
                inner.append(seg)
                stack[-1].append(PRNGroup(tuple(inner)))
            else:
                stack[-1].append(seg)
                if warnings is not None:
                    warnings.append(Diagnostic(WARNING, "unbalanced-paren",
                                               "')' without matching '('"))
        else:
            stack[-1].append(seg)
    while len(stack) > 1:
        inner = stack.pop()
        stack[-1].extend(inner)
        if warnings is not None:
            warnings.append(Diagnostic(WARNING, "unbalanced-paren",
                                       "'(' without matching ')'"))
    return stack[0]


class _Penn:
    def __init__(self, registry, warnings):
        self.registry = registry
        self.warnings = warnings
        # raisable punctuation terminals, by identity; kept alive in self.keep
        self.marked: set[int] = set()
        self.keep: list = []

    def mark(self, node):
        self.marked.add(id(node))
        self.keep.append(node)

    def node(self, item):
        if isinstance(item, Segment):
            return Terminal(item.eojeol())
        return Phrase(self.registry.prn_label,
                      tuple(self.node(i) for i in item.items), frozenset({"PRN"}))

    def expand(self, t: Terminal) -> list:
        segments = segment_eojeol(t.eojeol, self.registry, self.warnings)
        if len(segments) == 1:
            node = Terminal(t.eojeol)
            if segments[0].kind == PUNCT:
                self.mark(node)
            return [node]
        items = group_parentheticals(segments, self.warnings)
        nodes = [self.node(i) for i in items]
        for item, node in zip(reversed(items), reversed(nodes)):
            if isinstance(item, Segment) and item.kind == PUNCT:
                self.mark(node)
            else:
                break
        return nodes

    def lower(self, phrase: Phrase) -> Phrase:
        children = []
        for c in phrase.children:
            if isinstance(c, Terminal):
                children.extend(self.expand(c))
            else:
                children.append(self.lower(c))
        if not phrase.affixes:
            return Phrase(phrase.label, tuple(children), phrase.ftags)
        children = self.attach_affixes(children, phrase.affixes)
        if (len(children) == 1 and isinstance(children[0], Phrase)
                and children[0].label == phrase.label
                and children[0].ftags == phrase.ftags):
            # the level only existed to carry the affix
            return children[0]
        return Phrase(phrase.label, tuple(children), phrase.ftags)

    def attach_affixes(self, children: list, affixes: tuple) -> list:
        path = []
        node = children[-1]
        while isinstance(node, Phrase):
            path.append(node)
            node = node.children[-1]
        if not self._mergeable(node):
            return children + self.expand(Terminal(Eojeol(affixes)))
        new = tuple(self.expand(self._merged(node, affixes)))
        for p in reversed(path):
            new = (Phrase(p.label, p.children[:-1] + new, p.ftags),)
        return children[:-1] + list(new)

    def _mergeable(self, t: Terminal) -> bool:
        return not any(m.form in ("(", ")") or self.registry.is_punct(m.tag)
                       for m in t.eojeol.morphemes)

    @staticmethod
    def _merged(t: Terminal, affixes: tuple) -> Terminal:
        e = t.eojeol
        surface = None
        if e.surface is not None:
            surface = e.surface + "".join(m.form for m in affixes)
        return Terminal(Eojeol(e.morphemes + affixes, surface))

    def raise_punct(self, phrase: Phrase):
        """Return (phrase, trailing) with raisable final punctuation detached."""
        children = list(phrase.children)
        n = len(children)
        k = 0
        while k < n and isinstance(children[n - 1 - k], Terminal) \
                and id(children[n - 1 - k]) in self.marked:
            k += 1
        if k == n:
            return phrase, []
        trailing = children[n - k:]
        body = children[:n - k]
        out = []
        for i, c in enumerate(body):
            if isinstance(c, Terminal):
                out.append(c)
                continue
            c2, tr = self.raise_punct(c)
            if tr and i == len(body) - 1:
                trailing = tr + trailing
            elif tr:
                c2 = Phrase(c2.label, c2.children + tuple(tr), c2.ftags)
            out.append(c2)
        return Phrase(phrase.label, tuple(out), phrase.ftags), trailing


def to_penn(tree: Phrase, registry: TagsetRegistry = DEFAULT_REGISTRY,
            warnings: list | None = None) -> Phrase:
    """Transform a KAIST-style tree; Penn-style input comes back unchanged."""
    if isinstance(tree, Terminal):
        raise TypeError("to_penn expects a phrase")
    conv = _Penn(registry, warnings)
    lowered = conv.lower(tree)
    body, trailing = conv.raise_punct(lowered)
    if trailing:
        body = Phrase(body.label, body.children + tuple(trailing), body.ftags)
    return body
