"""Random trees for property tests, benchmarks and demos.

``random_tree`` draws structurally arbitrary trees over the full tag
registry (KAIST flavor with phrase affixes and fused surfaces, or Penn
flavor).  ``SentenceGenerator`` draws linguistically shaped KAIST sentences
whose size after conversion roughly matches real newswire (about 13 tokens).
"""
from __future__ import annotations

import random

from .model import (DEFAULT_REGISTRY, KAIST_TAGS, Eojeol, Morpheme,
                    TagsetRegistry)
from .treeio import DependencyTree, DepToken, Phrase, Terminal

_LEXICAL = sorted(t for t in KAIST_TAGS if t[0] not in "jexs")
_AFFIX = sorted(t for t in KAIST_TAGS if t[0] in "jex")
_PUNCT = sorted(t for t in KAIST_TAGS if t[0] == "s")
_LABELS = ("ADJP", "ADVP", "AUXP", "IP", "NP", "VP", "S")
_EXOTIC = ["(", ")", "+", "/", "\\", "=", " ", "\t", "_", "a b", "x+y", "p/q", "　"]


def hangul(rng: random.Random, lo=1, hi=3) -> str:
    return "".join(chr(0xAC00 + rng.randrange(11172)) for _ in range(rng.randint(lo, hi)))


def _form(rng, exotic):
    if exotic and rng.random() < 0.15:
        return rng.choice(_EXOTIC)
    if rng.random() < 0.1:
        return rng.choice(["Cognac", "KAIST", "SPMRL", "1994", "x"])
    return hangul(rng)


def random_morpheme(rng: random.Random, kind: str | None = None, exotic=False) -> Morpheme:
    kind = kind or rng.choices(["lex", "affix", "punct", "paren"], [5, 4, 1.5, 0.5])[0]
    if kind == "lex":
        return Morpheme(_form(rng, exotic), rng.choice(_LEXICAL))
    if kind == "affix":
        return Morpheme(_form(rng, exotic), rng.choice(_AFFIX))
    if kind == "paren":
        return Morpheme(rng.choice("()"), rng.choice(["sl", "sr"]))
    return Morpheme(rng.choice(list(".,?!'\"-") + ["..."]), rng.choice(_PUNCT))


def random_eojeol(rng: random.Random, exotic=False, surface_prob=0.1, max_len=5) -> Eojeol:
    n = rng.randint(1, max_len)
    morphemes = tuple(random_morpheme(rng, exotic=exotic) for _ in range(n))
    e = Eojeol(morphemes)
    if rng.random() < surface_prob:
        # a fused surface: drop or change a character of the concatenation
        text = e.concatenation
        k = rng.randrange(len(text))
        fused = text[:k] + hangul(rng, 1, 1) + text[k + 1:]
        e = Eojeol(morphemes, fused)
    return e


def random_tree(rng: random.Random, flavor: str = "kaist", max_depth: int = 4,
                max_children: int = 4, exotic: bool = False) -> Phrase:
    """Structurally arbitrary tree rooted in S."""
    kaist = flavor == "kaist"

    def phrase(depth, label):
        n = rng.randint(1, max_children)
        children = []
        for _ in range(n):
            if depth < max_depth and rng.random() < 0.45:
                children.append(phrase(depth + 1, rng.choice(_LABELS)))
            else:
                children.append(Terminal(random_eojeol(rng, exotic)))
        ftags = frozenset({"PRN"}) if rng.random() < 0.08 else frozenset()
        affixes = ()
        if kaist and depth > 0 and rng.random() < 0.3:
            affixes = tuple(random_morpheme(rng, "affix", exotic)
                            for _ in range(rng.randint(1, 2)))
        return Phrase(label, tuple(children), ftags, affixes)

    return phrase(0, "S")


def random_dependency_tree(rng: random.Random, exotic=True, max_len=12) -> DependencyTree:
    """Random head/label assignment; only guarantees heads are in range."""
    n = rng.randint(1, max_len)
    labels = sorted(DEFAULT_REGISTRY.dependency_labels)
    tokens = []
    for i in range(1, n + 1):
        e = random_eojeol(rng, exotic)
        head = rng.choice([h for h in range(n + 1) if h != i] or [0])
        tokens.append(DepToken(i, e.form, e.morphemes, head, rng.choice(labels)))
    return DependencyTree(tuple(tokens))


class SentenceGenerator:
    """Linguistically shaped KAIST-style sentences.

    Arguments carry case particles agglutinated to their NP (as KAIST
    does), predicates may take auxiliaries or coordinate, and the sentence
    usually ends in a period fused to the final eojeol.
    """

    def __init__(self, seed: int | None = 0, registry: TagsetRegistry = DEFAULT_REGISTRY):
        self.rng = random.Random(seed)
        self.registry = registry

    def m(self, form, tag):
        return Morpheme(form, tag)

    def noun_phrase(self, depth=0):
        rng = self.rng
        r = rng.random()
        if r < 0.12 and depth < 2:
            # coordination: X and Y
            return Phrase("NP", (self.bare_np(), Phrase("ADVP", (Terminal(Eojeol((self.m("및", "maj"),))),)),
                                 self.bare_np()))
        if r < 0.4 and depth < 2:
            # adnominal clause or adnoun modifying a noun
            if rng.random() < 0.5:
                mod = Phrase("VP", (Terminal(Eojeol((self.m(hangul(rng), "pvg"), self.m("ㄴ", "etm")))),))
            else:
                mod = Phrase("NP", (Terminal(Eojeol((self.m(hangul(rng), "ncn"), self.m("의", "jcm")))),))
            return Phrase("NP", (mod, self.bare_np()))
        return self.bare_np()

    def bare_np(self):
        rng = self.rng
        morphemes = [self.m(hangul(rng), rng.choice(["ncn", "ncn", "nq", "npp", "ncpa", "nbn"]))]
        if rng.random() < 0.15:
            morphemes.append(self.m(hangul(rng), "ncn"))
        if rng.random() < 0.06:
            morphemes += [self.m("(", "sl"), self.m(rng.choice(["Cognac", "KAIST", "UN"]), "f"),
                          self.m(")", "sr")]
        return Phrase("NP", (Terminal(Eojeol(tuple(morphemes))),))

    def argument(self, depth=0):
        rng = self.rng
        r = rng.random()
        if r < 0.1:
            return Phrase("ADVP", (Terminal(Eojeol((self.m(hangul(rng), "mag"),))),))
        if r < 0.14:
            return Phrase("ADVP", (Terminal(Eojeol((self.m(hangul(rng), "ncn"), self.m("에", "jca")))),))
        particle = rng.choice([("가", "jcs"), ("를", "jco"), ("는", "jxt"), ("에서", "jca"),
                               ("와", "jct"), ("라고", "jcr"), ("이", "jcc"), ("도", "jxc")])
        np = self.noun_phrase(depth)
        comma = (self.m(",", "sp"),) if rng.random() < 0.08 else ()
        return Phrase("NP", (np,), affixes=(self.m(*particle),) + comma)

    def predicate(self, final=True):
        rng = self.rng
        ending = ("다", "ef") if final else rng.choice([("고", "ecc"), ("어서", "ecs"), ("지만", "ecs")])
        stem = self.m(hangul(rng), rng.choice(["pvg", "pvg", "paa", "pvd"]))
        tense = (self.m("었", "ep"),) if rng.random() < 0.5 else ()
        if rng.random() < 0.15:
            main = Phrase("VP", (Terminal(Eojeol((stem, self.m("어", "ecx")))),))
            aux = Phrase("AUXP", (Terminal(Eojeol((self.m("보", "px"),) + tense + (self.m(*ending),))),))
            return Phrase("VP", (main, aux))
        if rng.random() < 0.15:
            verb = (self.m(hangul(rng), "ncpa"), self.m("하", "xsv"))
        else:
            verb = (stem,)
        return Phrase("VP", (Terminal(Eojeol(verb + tense + (self.m(*ending),))),))

    def clause(self, depth=0, final=True):
        rng = self.rng
        args = [self.argument(depth) for _ in range(rng.choice([1, 2, 2, 3, 3, 3, 4, 4, 5]))]
        pred = self.predicate(final)
        if final and rng.random() < 0.2 and depth < 1:
            # coordinated predicates
            pred = Phrase("VP", (self.predicate(False), pred))
        return Phrase("S" if depth == 0 else "VP", tuple(args) + (pred,))

    def sentence(self) -> Phrase:
        rng = self.rng
        parts = []
        if rng.random() < 0.04:
            parts.append(Phrase("IP", (Terminal(Eojeol((self.m(hangul(rng), "ii"),))),)))
        for _ in range(rng.choice([0, 0, 1, 1, 1, 2])):
            parts.append(self.clause(depth=1, final=False))
        main = self.clause(depth=0)
        tree = Phrase("S", tuple(parts) + main.children)
        if rng.random() < 0.9:
            tree = _append_final_punct(tree, self.m(rng.choice([".", ".", "?", "!"]), "sf"))
        return tree

    def __iter__(self):
        while True:
            yield self.sentence()

    def take(self, n):
        return [self.sentence() for _ in range(n)]


def _append_final_punct(node: Phrase, punct: Morpheme) -> Phrase:
    last = node.children[-1]
    if isinstance(last, Terminal):
        e = last.eojeol
        new = Terminal(Eojeol(e.morphemes + (punct,),
                              None if e.surface is None else e.surface + punct.form))
    else:
        new = _append_final_punct(last, punct)
    return Phrase(node.label, node.children[:-1] + (new,), node.ftags, node.affixes)
