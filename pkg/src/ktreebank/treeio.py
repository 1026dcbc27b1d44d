"""Readers and writers for bracketed trees, morph TSV lines and CoNLL-X.

Bracketed grammar (one grammar for both tree flavors)::

    tree     := '(' LABEL ('-' FTAG)* ('+' MORPHEME)* (tree | leaf)+ ')'
    leaf     := [SURFACE '='] MORPHEME ('+' MORPHEME)*
    MORPHEME := form '/' tag

Phrase-level ``+MORPHEME`` suffixes are the affixes a KAIST tree agglutinates
onto a phrase; Penn-style trees never carry them.  ``SURFACE=`` is only
written when an eojeol's surface differs from its concatenated forms.
Literal ``( ) + / = \\`` and whitespace inside forms and surfaces are
backslash-escaped (whitespace as ``\\s \\t \\n \\r`` or ``\\uXXXX``).
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .model import (DEFAULT_REGISTRY, Eojeol, Morpheme, Tagset, TagError,
                    TagsetRegistry, tagset_of)


# -- diagnostics ---------------------------------------------------------------

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    line: int | None = None
    column: int | None = None
    tree: int | None = None
    source: str | None = None

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    @property
    def location(self) -> str:
        loc = self.source or "-"
        if self.line is not None:
            loc += f":{self.line}"
            if self.column is not None:
                loc += f":{self.column}"
        if self.tree is not None:
            loc += f"#{self.tree}"
        return loc

    def format(self) -> str:
        """One-line ``severity<TAB>location<TAB>code<TAB>message`` record."""
        message = self.message.replace("\t", " ").replace("\n", " ")
        return f"{self.severity}\t{self.location}\t{self.code}\t{message}"

    def at(self, **kw) -> "Diagnostic":
        fields = dict(self.__dict__)
        fields.update({k: v for k, v in kw.items() if v is not None})
        return Diagnostic(**fields)


class TreeSyntaxError(ValueError):
    """Raised when a tree, morph line or CoNLL block cannot be read."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def _fail(code, message, line=None, column=None):
    raise TreeSyntaxError(Diagnostic(ERROR, code, message, line, column))


# -- escaping ------------------------------------------------------------------

_ESCAPED = frozenset("()+/=\\")
# LEMMA only needs the join character and backslash escaped
_LEMMA_ESCAPED = frozenset("+\\")
_NAMED_WS = {" ": "s", "\t": "t", "\n": "n", "\r": "r"}
_NAMED_WS_INV = {v: k for k, v in _NAMED_WS.items()}


def escape(text: str, special=_ESCAPED) -> str:
    out = []
    for ch in text:
        if ch in special:
            out.append("\\" + ch)
        elif ch.isspace():
            if ch in _NAMED_WS:
                out.append("\\" + _NAMED_WS[ch])
            else:
                out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


def unescape(text: str) -> str:
    if "\\" not in text:
        return text
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(text):
            raise ValueError("dangling backslash")
        nxt = text[i + 1]
        if nxt in _NAMED_WS_INV:
            out.append(_NAMED_WS_INV[nxt])
            i += 2
        elif nxt == "u":
            code = text[i + 2:i + 6]
            if len(code) != 4 or not all(c in "0123456789abcdefABCDEF" for c in code):
                raise ValueError(f"bad \\u escape in {text!r}")
            out.append(chr(int(code, 16)))
            i += 6
        else:
            out.append(nxt)
            i += 2
    return "".join(out)


def split_unescaped(text: str, sep: str) -> list[str]:
    """Split on ``sep`` characters that are not backslash-escaped."""
    parts, start, i = [], 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == sep:
            parts.append(text[start:i])
            start = i + 1
        i += 1
    parts.append(text[start:])
    return parts


def _parse_morpheme(raw: str, registry: TagsetRegistry, warnings: list | None,
                    line=None, column=None) -> Morpheme:
    pieces = split_unescaped(raw, "/")
    if len(pieces) != 2 or not pieces[0] or not pieces[1]:
        _fail("malformed-morpheme",
              f"malformed morpheme {raw!r} (expected form/tag)", line, column)
    form, tag = pieces
    try:
        form = unescape(form)
    except ValueError as e:
        _fail("bad-escape", str(e), line, column)
    check_tag(tag, registry, warnings, line, column)
    return Morpheme(form, tag)


def check_tag(tag, registry, warnings, line=None, column=None):
    if registry.is_known(tag):
        return
    if registry.strict:
        _fail("unknown-tag", f"unknown tag {tag!r}", line, column)
    if warnings is not None:
        warnings.append(Diagnostic(WARNING, "unknown-tag", f"unknown tag {tag!r}",
                                   line, column))


def parse_morphemes(raw: str, registry: TagsetRegistry = DEFAULT_REGISTRY,
                    warnings: list | None = None, line=None, column=None) -> tuple:
    """Parse ``form/tag+form/tag`` (escaped) into a tuple of morphemes."""
    if not raw:
        _fail("empty-analysis", "empty morpheme list", line, column)
    return tuple(_parse_morpheme(p, registry, warnings, line, column)
                 for p in split_unescaped(raw, "+"))


def format_morphemes(morphemes) -> str:
    return "+".join(f"{escape(m.form)}/{m.tag}" for m in morphemes)


# -- constituent trees ---------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Terminal:
    eojeol: Eojeol

    @property
    def morphemes(self) -> tuple:
        return self.eojeol.morphemes

    @property
    def form(self) -> str:
        return self.eojeol.form

    def __str__(self):
        return serialize_tree(self)


@dataclass(frozen=True, slots=True)
class Phrase:
    label: str
    children: tuple
    ftags: frozenset = frozenset()
    affixes: tuple = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if not isinstance(self.ftags, frozenset):
            object.__setattr__(self, "ftags", frozenset(self.ftags))
        if not isinstance(self.affixes, tuple):
            object.__setattr__(self, "affixes", tuple(self.affixes))
        if not self.children:
            raise ValueError(f"phrase {self.label} has no children")

    def __str__(self):
        return serialize_tree(self)


def terminals(node) -> list:
    """Terminals in left-to-right order."""
    out = []
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Terminal):
            out.append(n)
        else:
            stack.extend(reversed(n.children))
    return out


def iter_morphemes(node) -> Iterator[Morpheme]:
    """All morphemes in surface order; phrase affixes follow their content."""
    if isinstance(node, Terminal):
        yield from node.eojeol.morphemes
        return
    for child in node.children:
        yield from iter_morphemes(child)
    yield from node.affixes


def has_affixes(node) -> bool:
    if isinstance(node, Terminal):
        return False
    return bool(node.affixes) or any(has_affixes(c) for c in node.children)


def _format_label(node: Phrase) -> str:
    label = node.label + "".join("-" + t for t in sorted(node.ftags))
    if node.affixes:
        label += "+" + format_morphemes(node.affixes)
    return label


def _format_leaf(e: Eojeol) -> str:
    text = format_morphemes(e.morphemes)
    if e.surface is not None:
        text = escape(e.surface) + "=" + text
    return text


def serialize_tree(node) -> str:
    """Canonical single-line bracketed form."""
    if isinstance(node, Terminal):
        return _format_leaf(node.eojeol)
    parts: list[str] = []
    _emit(node, parts)
    return "".join(parts)


def _emit(n, parts):
    if isinstance(n, Terminal):
        parts.append(" " + _format_leaf(n.eojeol))
        return
    parts.append(("(" if not parts else " (") + _format_label(n))
    for c in n.children:
        _emit(c, parts)
    parts.append(")")


_TOKEN = re.compile(r"\(|\)|(?:\\.|[^()\s\\])+|\\")


def _tokenize(text: str):
    """Yield (kind, value, line, column); kind is '(' ')' or 'atom'."""
    line, line_start, last = 1, 0, 0
    for m in _TOKEN.finditer(text):
        start = m.start()
        # only whitespace lies between tokens; atoms never span lines
        nl = text.count("\n", last, start)
        if nl:
            line += nl
            line_start = text.rfind("\n", last, start) + 1
        last = start
        column = start - line_start + 1
        value = m.group()
        if value == "\\":
            _fail("bad-escape", "dangling backslash", line, column)
        yield ("atom" if value not in "()" else value), value, line, column


def parse_tree(text: str, registry: TagsetRegistry = DEFAULT_REGISTRY,
               warnings: list | None = None, root_label: str | None = None) -> Phrase:
    """Parse one bracketed tree.

    Raises ``TreeSyntaxError`` carrying a diagnostic.  Lenient-mode problems
    (unknown tags, a root other than ``root_label``) are appended to
    ``warnings`` when given.  Fragments parse with any root unless
    ``root_label`` is set; treebank readers set it to S.
    """
    tokens = list(_tokenize(text))
    if not tokens:
        _fail("empty-input", "no tree in input", 1, 1)
    pos = 0

    def parse_phrase():
        nonlocal pos
        kind, _, line, col = tokens[pos]
        if kind != "(":
            _fail("expected-open", "expected '('", line, col)
        pos += 1
        if pos >= len(tokens):
            _fail("unbalanced-brackets", "unbalanced brackets: input ends inside a phrase",
                  line, col)
        kind, value, lline, lcol = tokens[pos]
        if kind != "atom":
            _fail("missing-label", "phrase without a label", lline, lcol)
        pos += 1
        label, ftags, affixes = _parse_label(value, registry, warnings, lline, lcol)
        children = []
        while True:
            if pos >= len(tokens):
                _fail("unbalanced-brackets", "unbalanced brackets: missing ')'", line, col)
            kind, value, cline, ccol = tokens[pos]
            if kind == ")":
                pos += 1
                break
            if kind == "(":
                children.append(parse_phrase())
            else:
                children.append(Terminal(_parse_leaf(value, registry, warnings, cline, ccol)))
                pos += 1
        if not children:
            _fail("empty-phrase", f"phrase {label} has no children", line, col)
        return Phrase(label, tuple(children), ftags, affixes)

    try:
        root = parse_phrase()
    finally:
        # the recursive closure is a reference cycle holding the token list
        del parse_phrase
    if pos != len(tokens):
        _, value, line, col = tokens[pos]
        _fail("trailing-input", f"unexpected {value!r} after tree", line, col)
    if root_label is not None and root.label != root_label:
        msg = f"root label is {root.label}, expected {root_label}"
        if registry.strict:
            _fail("root-label", msg, tokens[0][2], tokens[0][3])
        if warnings is not None:
            warnings.append(Diagnostic(WARNING, "root-label", msg, tokens[0][2], tokens[0][3]))
    return root


def _parse_label(raw, registry, warnings, line, col):
    pieces = split_unescaped(raw, "+")
    head, affix_parts = pieces[0], pieces[1:]
    names = head.split("-")
    label, ftags = names[0], names[1:]
    if not label or any(not t for t in ftags):
        _fail("bad-label", f"malformed phrase label {raw!r}", line, col)
    if label not in registry.phrase_types:
        if registry.strict:
            _fail("unknown-phrase", f"unknown phrase type {label!r}", line, col)
        if warnings is not None:
            warnings.append(Diagnostic(WARNING, "unknown-phrase",
                                       f"unknown phrase type {label!r}", line, col))
    for t in ftags:
        if t not in registry.function_tags:
            if registry.strict:
                _fail("unknown-ftag", f"unknown function tag {t!r}", line, col)
            if warnings is not None:
                warnings.append(Diagnostic(WARNING, "unknown-ftag",
                                           f"unknown function tag {t!r}", line, col))
    affixes = tuple(_parse_morpheme(p, registry, warnings, line, col) for p in affix_parts)
    return label, frozenset(ftags), affixes


def _parse_leaf(raw, registry, warnings, line, col) -> Eojeol:
    pieces = split_unescaped(raw, "=")
    if len(pieces) > 2:
        _fail("malformed-morpheme", f"more than one '=' in leaf {raw!r}", line, col)
    surface = None
    if len(pieces) == 2:
        if not pieces[0]:
            _fail("malformed-morpheme", f"empty surface in leaf {raw!r}", line, col)
        try:
            surface = unescape(pieces[0])
        except ValueError as e:
            _fail("bad-escape", str(e), line, col)
    morphemes = parse_morphemes(pieces[-1], registry, warnings, line, col)
    return Eojeol(morphemes, surface)


# -- treebank streams ----------------------------------------------------------

def _blocks(lines: Iterable[str]):
    """Chunk a line stream into (text, first_line, error) tree blocks.

    A block ends when its brackets balance; a blank line inside an open
    block ends it as unbalanced.  Escaped brackets are not counted.
    """
    buf, start, depth = [], None, 0
    lineno = 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            if depth > 0:
                yield "".join(buf), start, "unbalanced"
                buf, start, depth = [], None, 0
            continue
        i, n = 0, len(line)
        seg_start = 0
        while i < n:
            ch = line[i]
            if ch == "\\":
                i += 2
                continue
            if ch == "(":
                if depth == 0:
                    junk = line[seg_start:i]
                    if junk.strip():
                        yield junk, lineno, "junk"
                    seg_start = i
                    start = lineno
                depth += 1
            elif ch == ")":
                if depth == 0:
                    yield line[seg_start:i + 1], lineno, "unbalanced"
                    seg_start = i + 1
                else:
                    depth -= 1
                    if depth == 0:
                        buf.append(line[seg_start:i + 1])
                        yield "".join(buf), start, None
                        buf, start = [], None
                        seg_start = i + 1
            i += 1
        rest = line[seg_start:]
        if depth > 0:
            buf.append(rest)
        elif rest.strip():
            yield rest, lineno, "junk"
    if depth > 0:
        yield "".join(buf), start, "unbalanced"


class TreebankReader:
    """Iterate over a treebank stream, yielding trees and error diagnostics.

    Invalid trees are dropped; each yields exactly one error ``Diagnostic``
    in its place.  Lenient-mode warnings are collected in ``warnings``.
    ``kept`` and ``dropped`` are final once iteration finishes.
    """

    def __init__(self, stream, registry: TagsetRegistry = DEFAULT_REGISTRY,
                 source: str | None = None):
        if isinstance(stream, str):
            stream = io.StringIO(stream)
        self.stream = stream
        self.registry = registry
        self.source = source
        self.kept = 0
        self.dropped = 0
        self.warnings: list[Diagnostic] = []

    def __iter__(self):
        ordinal = 0
        for text, first_line, problem in _blocks(self.stream):
            ordinal += 1
            if problem == "junk":
                diag = Diagnostic(ERROR, "junk", f"text outside brackets: {text.strip()[:40]!r}")
            elif problem == "unbalanced":
                diag = Diagnostic(ERROR, "unbalanced-brackets", "unbalanced brackets")
            else:
                local: list[Diagnostic] = []
                try:
                    tree = parse_tree(text, self.registry, local, root_label="S")
                except TreeSyntaxError as e:
                    diag = e.diagnostic
                else:
                    self.kept += 1
                    self.warnings.extend(self._relocate(d, first_line, ordinal) for d in local)
                    yield tree
                    continue
            self.dropped += 1
            yield self._relocate(diag, first_line, ordinal)

    def _relocate(self, d: Diagnostic, first_line: int, ordinal: int) -> Diagnostic:
        line = first_line + (d.line - 1) if d.line is not None else first_line
        return Diagnostic(d.severity, d.code, d.message, line, d.column, ordinal, self.source)


def read_treebank(stream, registry: TagsetRegistry = DEFAULT_REGISTRY,
                  source: str | None = None) -> TreebankReader:
    return TreebankReader(stream, registry, source)


# -- morph TSV -----------------------------------------------------------------

def parse_morph_line(text: str, registry: TagsetRegistry = DEFAULT_REGISTRY,
                     warnings: list | None = None) -> tuple[str, Eojeol]:
    """``surface<TAB>form/tag+form/tag`` -> (surface, Eojeol)."""
    text = text.rstrip("\r\n")
    if "\t" not in text:
        _fail("missing-tab", f"no tab in morph line {text!r}")
    surface, analysis = text.split("\t", 1)
    if not surface:
        _fail("empty-surface", "morph line has an empty surface")
    morphemes = parse_morphemes(analysis, registry, warnings)
    return surface, Eojeol(morphemes, surface)


def format_morph_line(e: Eojeol) -> str:
    return f"{e.form}\t{format_morphemes(e.morphemes)}"


def read_morph_file(stream, registry: TagsetRegistry = DEFAULT_REGISTRY,
                    warnings: list | None = None) -> Iterator[list[Eojeol]]:
    """Sentences (blank-line separated) of per-eojeol morph lines."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    sentence: list[Eojeol] = []
    for lineno, line in enumerate(stream, 1):
        if not line.strip():
            if sentence:
                yield sentence
                sentence = []
            continue
        try:
            sentence.append(parse_morph_line(line, registry, warnings)[1])
        except TreeSyntaxError as e:
            raise TreeSyntaxError(e.diagnostic.at(line=lineno)) from None
    if sentence:
        yield sentence


# -- dependency trees and CoNLL-X ----------------------------------------------

@dataclass(frozen=True, slots=True)
class DepToken:
    index: int
    form: str
    morphemes: tuple
    head: int
    label: str

    @property
    def tags(self) -> tuple:
        return tuple(m.tag for m in self.morphemes)


@dataclass(frozen=True)
class DependencyTree:
    tokens: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.tokens, tuple):
            object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    @property
    def heads(self) -> list[int]:
        return [t.head for t in self.tokens]

    @property
    def labels(self) -> list[str]:
        return [t.label for t in self.tokens]


_FORM_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}


def _escape_form(text: str) -> str:
    if not any(c in text for c in _FORM_ESCAPES):
        return text
    return "".join(_FORM_ESCAPES.get(c, c) for c in text)


def _unescape_form(text: str) -> str:
    if "\\" not in text:
        return text
    return unescape(text)


def write_conll(tree: DependencyTree, tagset: Tagset | None = None,
                registry: TagsetRegistry = DEFAULT_REGISTRY) -> str:
    """CoNLL-X block (10 columns, blank-line terminated).

    LEMMA, CPOSTAG and POSTAG are ``+``-joined per morpheme so the three
    columns stay aligned.
    """
    lines = []
    for t in tree.tokens:
        if t.label not in registry.dependency_labels and registry.strict:
            raise TagError(f"token {t.index}: label {t.label!r} not in the label set")
        lemma = "+".join(escape(m.form, _LEMMA_ESCAPED) for m in t.morphemes)
        cpos = "+".join(registry.coarse_tag(m.tag, tagset) for m in t.morphemes)
        pos = "+".join(m.tag for m in t.morphemes)
        lines.append(f"{t.index}\t{_escape_form(t.form)}\t{lemma}\t{cpos}\t{pos}\t_\t"
                     f"{t.head}\t{t.label}\t_\t_\n")
    lines.append("\n")
    return "".join(lines)


def from_conll(text: str, registry: TagsetRegistry = DEFAULT_REGISTRY,
               warnings: list | None = None) -> DependencyTree:
    """Rebuild one dependency tree from a CoNLL-X block."""
    rows = [line for line in text.split("\n") if line.strip()]
    if not rows:
        _fail("empty-block", "empty CoNLL block")
    tokens = []
    for n, row in enumerate(rows, 1):
        cols = row.rstrip("\r").split("\t")
        if len(cols) != 10:
            _fail("column-count", f"expected 10 columns, got {len(cols)}", n)
        idx, form, lemma, _cpos, pos, _feats, head, label = cols[:8]
        if idx != str(n):
            _fail("bad-index", f"token index {idx!r}, expected {n}", n, 1)
        if not head.isdigit():
            _fail("bad-head", f"non-numeric head {head!r}", n, 7)
        forms = split_unescaped(lemma, "+")
        tags = pos.split("+")
        if len(forms) != len(tags) or not all(forms) or not all(tags):
            _fail("morph-mismatch", "LEMMA and POSTAG have different morpheme counts", n, 3)
        for tag in tags:
            check_tag(tag, registry, warnings, n, 5)
        if label not in registry.dependency_labels:
            if registry.strict:
                _fail("unknown-label", f"unknown dependency label {label!r}", n, 8)
            if warnings is not None:
                warnings.append(Diagnostic(WARNING, "unknown-label",
                                           f"unknown dependency label {label!r}", n, 8))
        try:
            morphemes = tuple(Morpheme(unescape(f), t) for f, t in zip(forms, tags))
            form = _unescape_form(form)
        except ValueError as e:
            _fail("bad-escape", str(e), n)
        tokens.append(DepToken(n, form, morphemes, int(head), label))
    size = len(tokens)
    for t in tokens:
        if t.head > size:
            _fail("head-range", f"head {t.head} out of range for {size} tokens", t.index, 7)
    return DependencyTree(tuple(tokens))


def conll_blocks(stream) -> Iterator[tuple[str, int]]:
    """Yield (block text, first line number) for blank-line separated blocks."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    buf, start = [], None
    for lineno, line in enumerate(stream, 1):
        if line.strip():
            if start is None:
                start = lineno
            buf.append(line)
        elif buf:
            yield "".join(buf), start
            buf, start = [], None
    if buf:
        yield "".join(buf), start


def read_conll(stream, registry: TagsetRegistry = DEFAULT_REGISTRY,
               source: str | None = None) -> Iterator[DependencyTree | Diagnostic]:
    """One tree per block; unreadable blocks become error diagnostics."""
    for ordinal, (block, start) in enumerate(conll_blocks(stream), 1):
        local: list[Diagnostic] = []
        try:
            yield from_conll(block, registry, local)
        except TreeSyntaxError as e:
            d = e.diagnostic
            line = start + d.line - 1 if d.line is not None else start
            yield Diagnostic(d.severity, d.code, d.message, line, d.column, ordinal, source)
        else:
            for d in local:
                line = start + d.line - 1 if d.line is not None else start
                yield Diagnostic(d.severity, d.code, d.message, line, d.column, ordinal, source)


def sniff_format(first_chunk: str) -> str:
    """'brackets' when the first non-blank character is '(' else 'conll'."""
    stripped = first_chunk.lstrip()
    return "brackets" if stripped.startswith("(") else "conll"


__all__ = [
    "Diagnostic", "TreeSyntaxError", "Terminal", "Phrase", "DepToken",
    "DependencyTree", "parse_tree", "serialize_tree", "read_treebank",
    "parse_morph_line", "format_morph_line", "read_morph_file", "write_conll",
    "from_conll", "read_conll", "escape", "unescape", "terminals",
    "iter_morphemes", "tagset_of",
]
