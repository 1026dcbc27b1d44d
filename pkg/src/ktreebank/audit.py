"""Corpus checks: dependency validation, statistics, splits and morphology.

Token counts are taken at the Penn/dependency granularity (punctuation and
stranded particles count as tokens), not per eojeol.
"""
from __future__ import annotations

import bisect
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .model import DEFAULT_REGISTRY, Eojeol, Tagset, TagsetRegistry, tagset_of
from .transform import segment_eojeol, to_penn
from .treeio import (ERROR, WARNING, DependencyTree, DepToken, Diagnostic, Phrase,
                     Terminal, terminals)

SPLITS = ("train", "dev", "test")


# -- dependency validation -----------------------------------------------------

def validate_dependency(tree: DependencyTree,
                        registry: TagsetRegistry = DEFAULT_REGISTRY) -> list[Diagnostic]:
    """One diagnostic per violated property; empty for a well-formed tree.

    Codes: head-range, no-root, multiple-roots, root-label, unknown-label,
    cycle (errors) and non-projective (warning).
    """
    diags = []
    n = len(tree)
    heads = [0] + [t.head for t in tree.tokens]

    def err(code, msg, severity=ERROR):
        diags.append(Diagnostic(severity, code, msg))

    bad_range = [t.index for t in tree.tokens if not 0 <= t.head <= n]
    if bad_range:
        err("head-range", f"heads out of range at tokens {bad_range}")
    roots = [t.index for t in tree.tokens if t.head == 0]
    if not roots:
        err("no-root", "no token is attached to the root")
    elif len(roots) > 1:
        err("multiple-roots", f"tokens {roots} are all attached to the root")
    mislabeled = [t.index for t in tree.tokens
                  if (t.head == 0) != (t.label == "root")]
    if mislabeled:
        err("root-label", f"root label and root attachment disagree at tokens {mislabeled}")
    unknown = sorted({t.label for t in tree.tokens
                      if t.label not in registry.dependency_labels})
    if unknown:
        err("unknown-label", f"labels not in the label set: {unknown}")
    if bad_range:
        return diags

    # tokens that never reach the root sit on, or hang from, a cycle
    state = [0] * (n + 1)       # 0 unknown, 1 reaches root, 2 does not
    state[0] = 1
    for i in range(1, n + 1):
        path = []
        j = i
        seen = set()
        while state[j] == 0 and j not in seen:
            seen.add(j)
            path.append(j)
            j = heads[j]
        result = state[j] if state[j] else 2
        for k in path:
            state[k] = result
    cyclic = [i for i in range(1, n + 1) if state[i] == 2]
    if cyclic:
        err("cycle", f"tokens {cyclic} do not reach the root")

    if not diags and not is_projective(heads[1:]):
        err("non-projective", "crossing arcs", WARNING)
    return diags


def is_projective(heads: Sequence[int]) -> bool:
    """Every subtree covers a contiguous span (artificial root at position 0).

    ``heads[i-1]`` is the head of token i; the input must be a tree.
    """
    n = len(heads)
    lo = list(range(n + 1))
    hi = list(range(n + 1))
    size = [1] * (n + 1)
    for i in range(1, n + 1):
        j = heads[i - 1]
        while True:
            lo[j] = min(lo[j], i)
            hi[j] = max(hi[j], i)
            size[j] += 1
            if j == 0:
                break
            j = heads[j - 1]
    return all(hi[i] - lo[i] + 1 == size[i] for i in range(1, n + 1))


# -- statistics ----------------------------------------------------------------

def token_count(item, registry: TagsetRegistry = DEFAULT_REGISTRY) -> int:
    if isinstance(item, DependencyTree):
        return len(item)
    if isinstance(item, Phrase):
        return len(terminals(to_penn(item, registry)))
    raise TypeError(f"cannot count tokens of {type(item).__name__}")


@dataclass
class StatsReport:
    rows: list = field(default_factory=list)   # (name, trees, tokens)

    @property
    def trees(self) -> int:
        return sum(r[1] for r in self.rows)

    @property
    def tokens(self) -> int:
        return sum(r[2] for r in self.rows)

    def row(self, name):
        for r in self.rows:
            if r[0] == name:
                return r
        raise KeyError(name)

    def to_tsv(self) -> str:
        """Columns: name, trees, tokens; last row is the total."""
        lines = ["name\ttrees\ttokens"]
        lines += [f"{name}\t{trees}\t{tokens}" for name, trees, tokens in self.rows]
        lines.append(f"total\t{self.trees}\t{self.tokens}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        width = max([len(r[0]) for r in self.rows] + [5])
        lines = [f"{'':{width}}  {'trees':>8}  {'tokens':>9}"]
        for name, trees, tokens in self.rows + [("total", self.trees, self.tokens)]:
            lines.append(f"{name:{width}}  {trees:>8,}  {tokens:>9,}")
        return "\n".join(lines) + "\n"


def corpus_stats(streams, manifest: "Manifest | None" = None,
                 registry: TagsetRegistry = DEFAULT_REGISTRY) -> StatsReport:
    """Tree and token counts per named stream.

    ``streams`` maps names to iterables of trees (constituent or
    dependency); a list of (name, iterable) pairs works too.  With a
    manifest there must be exactly one stream, broken down by split.
    """
    if isinstance(streams, Mapping):
        streams = list(streams.items())
    report = StatsReport()
    if manifest is not None:
        if len(streams) != 1:
            raise ValueError("a split manifest applies to exactly one stream")
        counts = {s: [0, 0] for s in SPLITS}
        n = 0
        for n, item in enumerate(streams[0][1], 1):
            c = counts[manifest.split_of(n)]
            c[0] += 1
            c[1] += token_count(item, registry)
        manifest.check(n)
        report.rows = [(s, counts[s][0], counts[s][1]) for s in SPLITS]
        return report
    for name, items in streams:
        trees = tokens = 0
        for item in items:
            trees += 1
            tokens += token_count(item, registry)
        report.rows.append((name, trees, tokens))
    return report


# -- splitting -----------------------------------------------------------------

class ManifestError(ValueError):
    pass


_MANIFEST_LINE = re.compile(
    r"^\s*(\d+)(?:\s*[-–]\s*(\d+))?\s*(?:->|→|:)?\s*([A-Za-z]+)\s*$")


@dataclass
class Manifest:
    """Explicit ordinal ranges per split (1-based, inclusive)."""

    ranges: list = field(default_factory=list)   # (lo, hi, split)

    def __post_init__(self):
        spans = sorted(self.ranges)
        for lo, hi, split in spans:
            if split not in SPLITS:
                raise ManifestError(f"unknown split {split!r}")
            if lo < 1 or hi < lo:
                raise ManifestError(f"bad range {lo}-{hi}")
        for (lo1, hi1, _), (lo2, hi2, _) in zip(spans, spans[1:]):
            if lo2 <= hi1:
                raise ManifestError(f"ranges {lo1}-{hi1} and {lo2}-{hi2} overlap")
        self._spans = spans
        self._starts = [s[0] for s in spans]

    @classmethod
    def parse(cls, text: str) -> "Manifest":
        ranges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0]
            if not line.strip():
                continue
            m = _MANIFEST_LINE.match(line)
            if not m:
                raise ManifestError(f"line {lineno}: cannot parse {line.strip()!r}")
            lo = int(m.group(1))
            hi = int(m.group(2)) if m.group(2) else lo
            ranges.append((lo, hi, m.group(3).lower()))
        return cls(ranges)

    @classmethod
    def read(cls, path) -> "Manifest":
        with open(path, encoding="utf-8") as f:
            return cls.parse(f.read())

    def split_of(self, ordinal: int) -> str:
        k = bisect.bisect_right(self._starts, ordinal) - 1
        if k >= 0:
            lo, hi, split = self._spans[k]
            if lo <= ordinal <= hi:
                return split
        raise ManifestError(f"tree {ordinal} is not assigned to any split")

    def check(self, total: int) -> None:
        """The manifest must cover trees 1..total exactly."""
        covered = 0
        for lo, hi, _ in self._spans:
            if hi > total:
                raise ManifestError(f"range {lo}-{hi} exceeds the {total} trees")
            covered += hi - lo + 1
        if covered != total:
            raise ManifestError(f"manifest covers {covered} of {total} trees")


def ratio_boundaries(total: int, ratios: Sequence) -> tuple[int, int]:
    """Cut points (end of train, end of dev) for a contiguous split."""
    if len(ratios) != 3:
        raise ValueError("need three ratios (train, dev, test)")
    fr = [Fraction(str(r)) for r in ratios]
    if any(r < 0 for r in fr) or abs(float(sum(fr)) - 1) > 1e-9:
        raise ValueError(f"ratios must be non-negative and sum to 1, got {ratios}")
    fr[2] = 1 - fr[0] - fr[1]
    half = Fraction(1, 2)
    a = int(total * fr[0] + half)
    b = int(total * (fr[0] + fr[1]) + half)
    return min(a, total), min(max(b, a), total)


def split_corpus(corpus, ratios: Sequence | None = None,
                 manifest: Manifest | None = None) -> tuple[list, list, list]:
    """Order-preserving (train, dev, test) partition, by ratios or manifest."""
    if (ratios is None) == (manifest is None):
        raise ValueError("give exactly one of ratios or manifest")
    items = list(corpus)
    if manifest is not None:
        manifest.check(len(items))
        out = {s: [] for s in SPLITS}
        for i, item in enumerate(items, 1):
            out[manifest.split_of(i)].append(item)
        return out["train"], out["dev"], out["test"]
    a, b = ratio_boundaries(len(items), ratios)
    return items[:a], items[a:b], items[b:]


# -- automatic morphology ------------------------------------------------------

def _token_forms(sentence) -> list[str]:
    if isinstance(sentence, DependencyTree):
        return [t.form for t in sentence.tokens]
    return [t.form for t in terminals(sentence)]


def align_eojeols(forms: Sequence[str], auto: Sequence[Eojeol]):
    """Group token indices (0-based, end-exclusive spans) under each eojeol.

    Returns (spans, diagnostics); spans is None when alignment fails.
    """
    diags = []
    spans = []
    i = 0
    for k, e in enumerate(auto, 1):
        target = e.form
        start, acc = i, ""
        while i < len(forms) and len(acc) < len(target):
            acc += forms[i]
            i += 1
        if acc != target:
            if acc and len(acc) == len(target):
                diags.append(Diagnostic(WARNING, "surface-mismatch",
                                        f"eojeol {k}: tokens read {acc!r}, analysis has {target!r}"))
            else:
                diags.append(Diagnostic(ERROR, "length-mismatch",
                                        f"eojeol {k} ({target!r}) does not line up with the tokens"))
                return None, diags
        spans.append((start, i))
    if i != len(forms):
        diags.append(Diagnostic(ERROR, "length-mismatch",
                                f"{len(forms) - i} tokens left after {len(auto)} eojeols"))
        return None, diags
    return spans, diags


def substitute_morphology(sentence, auto: Sequence[Eojeol], tagset: Tagset | None = None,
                          registry: TagsetRegistry = DEFAULT_REGISTRY):
    """Swap gold morphology for automatic analyses, one eojeol at a time.

    Only morphemes change; forms, heads and labels stay put.  An eojeol whose
    analysis splits into a different number of tokens keeps its gold
    morphology (warning).  A sentence that cannot be aligned at all comes
    back unchanged with an error.
    """
    forms = _token_forms(sentence)
    spans, diags = align_eojeols(forms, auto)
    if spans is None:
        return sentence, diags
    replacement: list = [None] * len(forms)
    for k, ((start, end), e) in enumerate(zip(spans, auto), 1):
        if tagset is not None:
            wrong = [m.tag for m in e.morphemes if tagset_of(m.tag) is not tagset]
            if wrong:
                diags.append(Diagnostic(ERROR, "wrong-tagset",
                                        f"eojeol {k}: tags {wrong} are not {tagset.value}"))
                return sentence, diags
        segments = segment_eojeol(e, registry)
        if len(segments) != end - start:
            diags.append(Diagnostic(WARNING, "unalignable",
                                    f"eojeol {k} ({e.form!r}): {len(segments)} segments "
                                    f"for {end - start} tokens, gold morphology kept"))
            continue
        for j, seg in zip(range(start, end), segments):
            replacement[j] = seg.morphemes
    if isinstance(sentence, DependencyTree):
        return DependencyTree(tuple(
            t if replacement[i] is None else
            DepToken(t.index, t.form, replacement[i], t.head, t.label)
            for i, t in enumerate(sentence.tokens))), diags
    it = iter(replacement)
    return _replace_terminals(sentence, it), diags


def _replace_terminals(node, it):
    if isinstance(node, Terminal):
        morphemes = next(it)
        if morphemes is None:
            return node
        return Terminal(Eojeol(morphemes, node.eojeol.form))
    return Phrase(node.label, tuple(_replace_terminals(c, it) for c in node.children),
                  node.ftags, node.affixes)


@dataclass
class AgreementReport:
    eojeols: int = 0
    exact: int = 0
    gold_morphemes: int = 0
    auto_morphemes: int = 0
    matched: int = 0
    alignment_failures: int = 0

    @property
    def accuracy(self) -> float:
        return self.exact / self.eojeols if self.eojeols else 0.0

    @property
    def precision(self) -> float:
        return self.matched / self.auto_morphemes if self.auto_morphemes else 0.0

    @property
    def recall(self) -> float:
        return self.matched / self.gold_morphemes if self.gold_morphemes else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def to_tsv(self) -> str:
        """Columns: metric, value."""
        rows = [("eojeols", self.eojeols), ("exact", self.exact),
                ("accuracy", f"{self.accuracy:.6f}"),
                ("gold_morphemes", self.gold_morphemes),
                ("auto_morphemes", self.auto_morphemes), ("matched", self.matched),
                ("precision", f"{self.precision:.6f}"), ("recall", f"{self.recall:.6f}"),
                ("f1", f"{self.f1:.6f}"), ("alignment_failures", self.alignment_failures)]
        return "metric\tvalue\n" + "".join(f"{k}\t{v}\n" for k, v in rows)

    def to_text(self) -> str:
        return (f"eojeol accuracy   {self.accuracy:.4f} ({self.exact}/{self.eojeols})\n"
                f"morpheme P/R/F1   {self.precision:.4f} / {self.recall:.4f} / {self.f1:.4f}\n"
                f"alignment errors  {self.alignment_failures}\n")


def _pairs(e: Eojeol) -> list:
    return [(m.form, m.tag) for m in e.morphemes]


def morph_agreement(gold: Iterable[Sequence[Eojeol]],
                    auto: Iterable[Sequence[Eojeol]]) -> AgreementReport:
    """Exact-match eojeol accuracy and multiset morpheme P/R/F1.

    Sentences with different eojeol counts are skipped and counted as
    alignment failures.
    """
    report = AgreementReport()
    for g_sent, a_sent in zip(gold, auto, strict=True):
        if len(g_sent) != len(a_sent):
            report.alignment_failures += 1
            continue
        for g, a in zip(g_sent, a_sent):
            gp, ap = _pairs(g), _pairs(a)
            report.eojeols += 1
            report.exact += gp == ap
            report.gold_morphemes += len(gp)
            report.auto_morphemes += len(ap)
            report.matched += sum((Counter(gp) & Counter(ap)).values())
    return report
