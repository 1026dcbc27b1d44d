"""Tag vocabularies, morphology types and tag classification.

Two fine-grained tagsets are supported: the KAIST tagset (lowercase
identifiers, used by the treebank and by HanNanum) and the Sejong tagset
(uppercase identifiers).  Because the two never share an identifier's case,
the tagset of a bare tag string can be inferred from it; see ``tagset_of``.

The tables here are data.  ``TagsetRegistry.from_config`` overlays a
configparser-style file on top of the defaults, which is how the
case-particle mapping, the punctuation sets and strict/lenient mode are
swapped without touching code.
"""
from __future__ import annotations

import configparser
import enum
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping


class TagError(ValueError):
    """Raised for a tag that is not in its registry (strict mode)."""


class Tagset(enum.Enum):
    KAIST = "kaist"
    SEJONG = "sejong"

    @classmethod
    def parse(cls, name: str) -> "Tagset":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown tagset {name!r}") from None


KAIST_TAGS = {
    "nbn": "Non-unit bound noun",
    "nbu": "Unit bound noun",
    "ncn": "Non-predicative common noun",
    "ncpa": "Active-predicative common noun",
    "ncps": "Stative-predicative common noun",
    "nnc": "Cardinal numerals",
    "nno": "Ordinal numerals",
    "npd": "Demonstrative pronoun",
    "npp": "Personal pronoun",
    "nq": "Proper noun",
    "f": "Foreign word",
    "paa": "Attributive adjective",
    "pad": "Demonstrative adjective",
    "pvd": "Demonstrative verb",
    "pvg": "General verb",
    "px": "auxiliary verb",
    "mad": "Demonstrative adverb",
    "mag": "General adverb",
    "maj": "Conjunctive adverb",
    "mma": "Attributive adnoun",
    "mmd": "Demonstrative adnoun",
    "jca": "Adverbial CP",
    "jcc": "Complemental CP",
    "jcj": "Conjunctive CP",
    "jcm": "Adnominal CP",
    "jco": "Objective CP",
    "jcr": "Quotative CP",
    "jcs": "Subjective CP",
    "jct": "Comitative CP",
    "jcv": "Vocative CP",
    "jp": "Predicative maker",
    "jxc": "common auxiliary",
    "jxf": "Final auxiliary",
    "jxt": "Topical auxiliary",
    "ecc": "Coordinate conjunction EM",
    "ecs": "Subordinate conjunction EM",
    "ecx": "Auxiliary conjunction EM",
    "ef": "Final EM",
    "ep": "Pre-final EM",
    "etm": "Adnominalizing EM",
    "etn": "Nominalizing EM",
    "xp": "Prefix",
    "xsa": "Adverb DS",
    "xsm": "Adjective DS",
    "xsn": "Noun DS",
    "xsv": "Verb DS",
    "ii": "Interjection",
    "sd": "Punctuation",
    "sf": "Punctuation",
    "sl": "Punctuation",
    "sp": "Punctuation",
    "sr": "Punctuation",
    "su": "Punctuation",
    "sy": "Punctuation",
}

SEJONG_TAGS = {
    "NNG": "General noun",
    "NNP": "Proper noun",
    "NNB": "Bound noun",
    "NP": "Pronoun",
    "NR": "Numeral",
    "VV": "Verb",
    "VA": "Adjective",
    "VX": "Auxiliary predicate",
    "VCP": "Copula",
    "VCN": "Negation adjective",
    "MM": "Adnoun",
    "MAG": "General adverb",
    "MAJ": "Conjunctive adverb",
    "JKS": "Subjective CP",
    "JKC": "Complemental CP",
    "JKG": "Adnomial CP",
    "JKO": "Objective CP",
    "JKB": "Adverbial CP",
    "JKV": "Vocative CP",
    "JKQ": "Quotative CP",
    "EP": "Prefinal EM",
    "EF": "Final EM",
    "EC": "Conjunctive EM",
    "ETN": "Nominalizing EM",
    "ETM": "Adnominalizing EM",
    "XPN": "Noun prefix",
    "XSN": "Noun DS",
    "XSV": "Verb DS",
    "XSA": "Adjective DS",
    "XR": "Base morpheme",
    "JX": "Auxiliary PR",
    "JC": "Conjunctive PR",
    "IC": "Interjection",
    "SN": "Number",
    "SL": "Foreign word",
    "SH": "Chinese word",
    "NF": "Noun-like word",
    "NV": "Predicate-like word",
    "NA": "Unknown word",
    "SF": "Punctuation",
    "SP": "Punctuation",
    "SS": "Punctuation",
    "SE": "Punctuation",
    "SO": "Punctuation",
    "SW": "Punctuation",
}

PHRASE_TYPES = frozenset({"ADJP", "ADVP", "AUXP", "IP", "NP", "VP", "S"})
FUNCTION_TAGS = frozenset({"PRN"})

CASE_LABELS = ("comit", "comp", "obj", "quot", "sbj", "tpc")
INFERRED_LABELS = (
    "adn", "adv", "amod", "aux", "cc", "conj", "dep", "ejx", "intj",
    "nmod", "p", "prn", "root", "sub", "vmod",
)
DEPENDENCY_LABELS = frozenset(CASE_LABELS + INFERRED_LABELS)

DEFAULT_PUNCT = {
    Tagset.KAIST: frozenset({"sd", "sf", "sl", "sp", "sr", "su", "sy"}),
    Tagset.SEJONG: frozenset({"SF", "SP", "SS", "SE", "SO", "SW"}),
}

SEJONG_COARSE_EXCEPTIONS = {"SN": "N", "NF": "N", "SL": "F", "SH": "F", "NV": "V"}

# trailing case particle -> case label
DEFAULT_CASE_LABELS = {
    "jcs": "sbj",
    "jco": "obj",
    "jcc": "comp",
    "jct": "comit",
    "jcr": "quot",
    "jxt": "tpc",
}


def tagset_of(tag: str) -> Tagset:
    """Infer the tagset from the identifier's case."""
    if tag and tag.islower():
        return Tagset.KAIST
    if tag and tag.isupper():
        return Tagset.SEJONG
    raise TagError(f"cannot infer tagset of tag {tag!r}")


@dataclass(frozen=True)
class LabelRules:
    """Tag sets driving the inferred part of the labeling cascade."""

    intj_tags: frozenset = frozenset({"ii"})
    conj_tags: frozenset = frozenset({"ecc", "jcj"})
    cc_tags: frozenset = frozenset({"maj"})
    adn_tags: frozenset = frozenset({"jcm", "etm", "mma", "mmd"})
    adv_tags: frozenset = frozenset({"jca"})
    sub_tags: frozenset = frozenset({"ecs"})
    amod_tags: frozenset = frozenset({"paa", "pad", "xsm"})
    nominal_tags: frozenset = frozenset({"xsn"})
    predicate_tags: frozenset = frozenset({"px", "xsv"})
    nominal_coarse: frozenset = frozenset({"n"})
    predicate_coarse: frozenset = frozenset({"p"})


@dataclass(frozen=True)
class TagsetRegistry:
    """Closed vocabularies plus the tables derived from them."""

    tags: Mapping[Tagset, Mapping[str, str]] = field(
        default_factory=lambda: MappingProxyType({
            Tagset.KAIST: MappingProxyType(KAIST_TAGS),
            Tagset.SEJONG: MappingProxyType(SEJONG_TAGS),
        }))
    punct: Mapping[Tagset, frozenset] = field(
        default_factory=lambda: MappingProxyType(dict(DEFAULT_PUNCT)))
    coarse_exceptions: Mapping[str, str] = field(
        default_factory=lambda: MappingProxyType(SEJONG_COARSE_EXCEPTIONS))
    case_labels: Mapping[str, str] = field(
        default_factory=lambda: MappingProxyType(DEFAULT_CASE_LABELS))
    phrase_types: frozenset = PHRASE_TYPES
    function_tags: frozenset = FUNCTION_TAGS
    dependency_labels: frozenset = DEPENDENCY_LABELS
    rules: LabelRules = field(default_factory=LabelRules)
    prn_label: str = "NP"
    strict: bool = True

    def __post_init__(self):
        for tagset, members in self.punct.items():
            unknown = set(members) - set(self.tags[tagset])
            if unknown:
                raise TagError(f"punctuation tags not in {tagset.value} tagset: "
                               f"{sorted(unknown)}")
        bad = set(self.case_labels.values()) - self.dependency_labels
        if bad:
            raise TagError(f"case mapping targets unknown labels: {sorted(bad)}")
        if self.prn_label not in self.phrase_types:
            raise TagError(f"PRN phrase label {self.prn_label!r} is not a phrase type")

    # -- membership --------------------------------------------------------

    def validate_tag(self, tagset: Tagset, identifier: str) -> bool:
        return identifier in self.tags[tagset]

    def is_known(self, tag: str) -> bool:
        try:
            return tag in self.tags[tagset_of(tag)]
        except TagError:
            return False

    def _resolve(self, tag: str, tagset: Tagset | None) -> Tagset:
        if tagset is None:
            try:
                tagset = tagset_of(tag)
            except TagError:
                if self.strict:
                    raise
                return Tagset.KAIST
        if tag not in self.tags[tagset] and self.strict:
            raise TagError(f"unknown {tagset.value} tag {tag!r}")
        return tagset

    # -- classification ----------------------------------------------------

    def is_grammatical_affix(self, tag: str, tagset: Tagset | None = None) -> bool:
        tagset = self._resolve(tag, tagset)
        if tagset is Tagset.KAIST:
            return tag[:1] in ("j", "e", "x")
        # Sejong XR is a root, not an affix
        return tag[:1] in ("J", "E") or (tag[:1] == "X" and tag != "XR")

    def is_punct(self, tag: str, tagset: Tagset | None = None) -> bool:
        tagset = self._resolve(tag, tagset)
        if tag in self.punct[tagset]:
            return True
        # lenient fallback for unregistered KAIST tags
        return (tagset is Tagset.KAIST and tag not in self.tags[tagset]
                and tag[:1] == "s")

    def coarse_tag(self, tag: str, tagset: Tagset | None = None) -> str:
        tagset = self._resolve(tag, tagset)
        if tagset is Tagset.SEJONG and tag in self.coarse_exceptions:
            return self.coarse_exceptions[tag]
        return tag[:1]

    def case_label(self, tag: str) -> str | None:
        return self.case_labels.get(tag)

    # -- configuration -----------------------------------------------------

    @classmethod
    def from_config(cls, path, base: "TagsetRegistry | None" = None) -> "TagsetRegistry":
        parser = configparser.ConfigParser(interpolation=None)
        # keep tag identifiers case-sensitive
        parser.optionxform = str
        with open(path, encoding="utf-8") as f:
            parser.read_file(f)
        return (base or cls()).with_overrides(parser)

    def with_overrides(self, parser: configparser.ConfigParser) -> "TagsetRegistry":
        changes = {}
        if parser.has_section("general"):
            general = parser["general"]
            if "mode" in general:
                mode = general["mode"].strip().lower()
                if mode not in ("strict", "lenient"):
                    raise ValueError(f"mode must be strict or lenient, got {mode!r}")
                changes["strict"] = mode == "strict"
            if "prn_label" in general:
                changes["prn_label"] = general["prn_label"].strip()
        if parser.has_section("punctuation"):
            punct = dict(self.punct)
            for key, value in parser["punctuation"].items():
                punct[Tagset.parse(key)] = frozenset(value.split())
            changes["punct"] = MappingProxyType(punct)
        if parser.has_section("case_labels"):
            # the section replaces the default table wholesale so entries can be dropped
            changes["case_labels"] = MappingProxyType(
                {k: v.strip() for k, v in parser["case_labels"].items()})
        if parser.has_section("cascade"):
            known = LabelRules.__dataclass_fields__
            overrides = {}
            for key, value in parser["cascade"].items():
                if key not in known:
                    raise ValueError(f"unknown cascade key {key!r}")
                overrides[key] = frozenset(value.split())
            changes["rules"] = replace(self.rules, **overrides)
        return replace(self, **changes)

    def lenient(self) -> "TagsetRegistry":
        return replace(self, strict=False)


DEFAULT_REGISTRY = TagsetRegistry()


def validate_tag(tagset: Tagset, identifier: str,
                 registry: TagsetRegistry = DEFAULT_REGISTRY) -> bool:
    return registry.validate_tag(tagset, identifier)


def is_grammatical_affix(tag: str, registry: TagsetRegistry = DEFAULT_REGISTRY) -> bool:
    """True for particles (j*), endings (e*) and derivational affixes (x*)."""
    return registry.is_grammatical_affix(tag)


def is_punct(tag: str, registry: TagsetRegistry = DEFAULT_REGISTRY) -> bool:
    """True for punctuation tags.  Sejong SN/SL/SH are *not* punctuation."""
    return registry.is_punct(tag)


def coarse_tag(tag: str, tagset: Tagset | None = None,
               registry: TagsetRegistry = DEFAULT_REGISTRY) -> str:
    """Single-character coarse tag: the Sejong exception table, else the first
    character of the fine tag with its case preserved."""
    return registry.coarse_tag(tag, tagset)


def case_label(tag: str, registry: TagsetRegistry = DEFAULT_REGISTRY) -> str | None:
    return registry.case_label(tag)


# -- morphology --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Morpheme:
    form: str
    tag: str

    def __post_init__(self):
        if not self.form:
            raise ValueError("morpheme form must be non-empty")
        if not self.tag:
            raise ValueError(f"morpheme {self.form!r} has an empty tag")

    def __str__(self):
        return f"{self.form}/{self.tag}"


@dataclass(frozen=True, slots=True)
class Eojeol:
    """A whitespace-delimited token and its morpheme analysis.

    ``surface`` is only stored when it differs from the concatenated morpheme
    forms (fusion, e.g. 들이키+였+다 written 들이켰다); use ``form`` to read it.
    """

    morphemes: tuple
    surface: str | None = None

    def __post_init__(self):
        if not isinstance(self.morphemes, tuple):
            object.__setattr__(self, "morphemes", tuple(self.morphemes))
        if not self.morphemes:
            raise ValueError("an eojeol needs at least one morpheme")
        if self.surface is not None and self.surface == self.concatenation:
            object.__setattr__(self, "surface", None)

    @property
    def concatenation(self) -> str:
        return "".join(m.form for m in self.morphemes)

    @property
    def form(self) -> str:
        return self.surface if self.surface is not None else self.concatenation

    @property
    def tags(self) -> tuple:
        return tuple(m.tag for m in self.morphemes)

    def __str__(self):
        return "+".join(str(m) for m in self.morphemes)


def eojeol(*pairs: Iterable[str], surface: str | None = None) -> Eojeol:
    """Shorthand: ``eojeol(("나", "npp"), ("는", "jxt"))``."""
    return Eojeol(tuple(Morpheme(f, t) for f, t in pairs), surface)
