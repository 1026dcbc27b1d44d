"""Penn-style constituent trees to labeled dependency trees.

Heads are chosen head-final: the rightmost child of each phrase, skipping
children that should not head a phrase (AUXP/IP phrases, PRN-tagged
phrases, affix-only and punctuation-only material) unless nothing else is
left.  Labels come from a fixed cascade over the dependent's morphology and
its position in the tree; the tag sets it reads live in
``TagsetRegistry.rules`` and ``TagsetRegistry.case_labels``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import DEFAULT_REGISTRY, TagsetRegistry
from .treeio import DependencyTree, DepToken, Phrase, Terminal, iter_morphemes

EXCLUDED_LABELS = frozenset({"AUXP", "IP"})


def _all_tags(node, pred) -> bool:
    return all(pred(m.tag) for m in iter_morphemes(node))


def is_excluded_head(child, registry: TagsetRegistry = DEFAULT_REGISTRY) -> bool:
    if isinstance(child, Phrase):
        if child.label in EXCLUDED_LABELS or "PRN" in child.ftags:
            return True
    if _all_tags(child, registry.is_grammatical_affix):
        return True
    return _all_tags(child, registry.is_punct)


def head_child_index(phrase: Phrase, registry: TagsetRegistry = DEFAULT_REGISTRY) -> int:
    children = phrase.children
    for i in range(len(children) - 1, -1, -1):
        if not is_excluded_head(children[i], registry):
            return i
    return len(children) - 1


@dataclass
class HeadAssignment:
    """Per-phrase head child and lexical head, keyed by tree position.

    A position is the tuple of child indices from the root, as in
    ``Phrase.children[i].children[j]`` -> ``(i, j)``.  Token indices are
    1-based.
    """

    head_child: dict
    lexical_head: dict


@dataclass
class Arc:
    dependent: int
    head: int
    source: object        # the non-head child whose lexical head is the dependent
    parent: Phrase
    position: int         # index of source in parent.children
    head_position: int    # index of the head child in parent.children


def _collect(tree, registry):
    tokens: list[Terminal] = []
    arcs: list[Arc] = []
    head_child: dict = {}
    lexical: dict = {}

    def visit(node, pos) -> int:
        if isinstance(node, Terminal):
            tokens.append(node)
            lexical[pos] = len(tokens)
            return len(tokens)
        heads = [visit(c, pos + (i,)) for i, c in enumerate(node.children)]
        h = head_child_index(node, registry)
        for i, c in enumerate(node.children):
            if i != h:
                arcs.append(Arc(heads[i], heads[h], c, node, i, h))
        head_child[pos] = h
        lexical[pos] = heads[h]
        return heads[h]

    try:
        root = visit(tree, ())
    finally:
        del visit   # break the closure's self-reference
    return tokens, arcs, root, HeadAssignment(head_child, lexical)


def head_assignment(tree, registry: TagsetRegistry = DEFAULT_REGISTRY) -> HeadAssignment:
    return _collect(tree, registry)[3]


def to_dependency(tree, registry: TagsetRegistry = DEFAULT_REGISTRY) -> DependencyTree:
    """Convert a Penn-style tree; tokens are its terminals, left to right."""
    if tree is None:
        raise ValueError("empty tree")
    tokens, arcs, root, _ = _collect(tree, registry)
    heads = [0] * (len(tokens) + 1)
    for a in arcs:
        heads[a.dependent] = a.head
    labeler = Labeler(tokens, heads, registry)
    labels = ["root"] * (len(tokens) + 1)
    for a in arcs:
        labels[a.dependent] = labeler.label(a)
    return DependencyTree(tuple(
        DepToken(i, t.eojeol.form, t.eojeol.morphemes, heads[i], labels[i])
        for i, t in enumerate(tokens, 1)))


class Labeler:
    """The labeling cascade over one sentence's arcs."""

    def __init__(self, tokens, heads, registry):
        self.tokens = tokens
        self.heads = heads
        self.reg = registry
        self.rules = registry.rules
        # affix-only dependents lend their particles to the token they attach to
        self.donors: dict[int, list] = {}
        for i, t in enumerate(tokens, 1):
            if heads[i] and self.affix_only(t):
                self.donors.setdefault(heads[i], []).append(i)

    def affix_only(self, t) -> bool:
        return all(self.reg.is_grammatical_affix(m.tag) for m in t.eojeol.morphemes)

    def punct_only(self, t) -> bool:
        return all(self.reg.is_punct(m.tag) for m in t.eojeol.morphemes)

    def is_cc(self, node) -> bool:
        return all(m.tag in self.rules.cc_tags for m in iter_morphemes(node))

    def stem_tag(self, t) -> str:
        """Tag of the last morpheme that is neither particle, ending nor punctuation."""
        for m in reversed(t.eojeol.morphemes):
            tag = m.tag
            if tag[:1].lower() in ("j", "e") or self.reg.is_punct(tag):
                continue
            return tag
        return t.eojeol.morphemes[0].tag

    def label(self, arc: Arc) -> str:
        rules = self.rules
        tok = self.tokens[arc.dependent - 1]
        head = self.tokens[arc.head - 1]
        src = arc.source
        tags = [m.tag for m in tok.eojeol.morphemes]
        last = tags[-1]

        if self.punct_only(tok):
            return "p"
        if isinstance(src, Phrase):
            if "PRN" in src.ftags:
                return "prn"
            if src.label == "AUXP":
                return "aux"
        if (isinstance(src, Phrase) and src.label == "IP") \
                or all(t in rules.intj_tags for t in tags):
            return "intj"
        if self.affix_only(tok):
            return "ejx"

        particles = tags + [m.tag for d in self.donors.get(arc.dependent, ())
                            for m in self.tokens[d - 1].eojeol.morphemes]
        for tag in reversed(particles):
            if tag[:1] == "j":
                case = self.reg.case_label(tag)
                if case is not None:
                    return case
                break

        if last in rules.conj_tags:
            return "conj"
        siblings = arc.parent.children
        i = arc.position
        if self.is_cc(src):
            if 0 < i < arc.head_position:
                return "cc"
        if i + 1 < len(siblings) and self.is_cc(siblings[i + 1]) \
                and i + 1 < arc.head_position:
            return "conj"

        if last in rules.adn_tags:
            return "adn"
        if last in rules.adv_tags:
            return "adv"
        if last in rules.sub_tags:
            return "sub"

        stem = self.stem_tag(head)
        coarse = self.reg.coarse_tag(stem).lower()
        if stem in rules.amod_tags:
            return "amod"
        if coarse in rules.nominal_coarse or stem in rules.nominal_tags:
            return "nmod"
        if coarse in rules.predicate_coarse or stem in rules.predicate_tags:
            return "vmod"
        return "dep"


def arcs(tree, registry: TagsetRegistry = DEFAULT_REGISTRY):
    """(terminals, arcs, root token index) of a Penn-style tree."""
    tokens, found, root, _ = _collect(tree, registry)
    return tokens, found, root


def assign_label(arc: Arc, tokens, heads, registry: TagsetRegistry = DEFAULT_REGISTRY) -> str:
    """Label one arc; ``heads[i]`` is the head of token i (index 0 unused)."""
    return Labeler(tokens, heads, registry).label(arc)
