import random

import pytest
from hypothesis import given

from ktreebank.audit import validate_dependency
from ktreebank.depconv import (Arc, arcs, assign_label, head_assignment, head_child_index,
                               is_excluded_head, to_dependency)
from ktreebank.model import DEFAULT_REGISTRY, Eojeol, Morpheme, eojeol
from ktreebank.synthetic import SentenceGenerator, random_tree
from ktreebank.transform import to_penn
from ktreebank.treeio import Phrase, Terminal, iter_morphemes, parse_tree, terminals

from conftest import COGNAC_TREE, COORD_TREE, seeds
from oracles import oracle_head_child, oracle_heads, oracle_problems


def T(*pairs):
    return Terminal(eojeol(*pairs))


def P(label, *children, prn=False):
    return Phrase(label, children, frozenset({"PRN"}) if prn else frozenset())


NP = P("NP", T(("꼬냑", "ncn")))
VP = P("VP", T(("가", "pvg"), ("다", "ef")))
AUXP = P("AUXP", T(("보", "px"), ("다", "ef")))
PRN = P("NP", T(("(", "sl")), T(("Cognac", "f")), T((")", "sr")), prn=True)


def test_is_excluded_head():
    assert is_excluded_head(AUXP)
    assert is_excluded_head(P("IP", T(("아", "ii"))))
    assert is_excluded_head(PRN)
    assert is_excluded_head(T(("을", "jco")))
    assert is_excluded_head(T((".", "sf")))
    assert not is_excluded_head(T(("들이키", "pvg"), ("였", "ep"), ("다", "ef")))
    assert not is_excluded_head(NP)


@pytest.mark.parametrize("children, expected", [
    ((VP, AUXP), 0),
    ((AUXP,), 0),
    ((NP, PRN, T(("을", "jco"))), 0),
    ((NP, VP, T((".", "sf"))), 1),
    ((AUXP, PRN), 1),
    ((NP, VP), 1),
])
def test_head_child_index(children, expected):
    phrase = Phrase("S", children)
    assert head_child_index(phrase) == expected == oracle_head_child(phrase)


def rows(dep):
    return [(t.form, t.head, t.label) for t in dep]


def test_cognac_conversion():
    dep = to_dependency(to_penn(parse_tree(COGNAC_TREE)))
    assert rows(dep) == [
        ("나는", 7, "tpc"), ("꼬냑", 7, "obj"), ("(", 4, "p"), ("Cognac", 2, "prn"),
        (")", 4, "p"), ("을", 2, "ejx"), ("들이켰다", 0, "root"), (".", 7, "p")]


def test_coordination_sentence():
    dep = to_dependency(to_penn(parse_tree(COORD_TREE)))
    assert [(t.head, t.label) for t in dep] == [
        (3, "conj"), (3, "cc"), (5, "obj"), (5, "conj"), (0, "root")]


def test_single_token():
    dep = to_dependency(Phrase("S", (T(("가", "pvg"), ("다", "ef")),)))
    assert rows(dep) == [("가다", 0, "root")]


def _label_of(tree, form):
    tokens, found, _ = arcs(tree)
    heads = [0] * (len(tokens) + 1)
    for a in found:
        heads[a.dependent] = a.head
    for a in found:
        if tokens[a.dependent - 1].form == form:
            return assign_label(a, tokens, heads)
    raise KeyError(form)


def test_assign_label_examples():
    penn = to_penn(parse_tree(COGNAC_TREE))
    assert _label_of(penn, "나는") == "tpc"
    assert _label_of(penn, "Cognac") == "prn"
    assert _label_of(to_penn(parse_tree(COORD_TREE)), "파괴하고") == "conj"
    compound = Phrase("S", (P("NP", T(("버스", "ncn")), T(("정류장", "ncn"))),))
    assert _label_of(compound, "버스") == "nmod"


@pytest.mark.parametrize("tree, form, label", [
    ("(S (NP 나/npp+가/jcs) (VP 가/pvg+다/ef))", "나가", "sbj"),
    ("(S (AUXP 아/ii) (VP 가/pvg+다/ef))", "아", "aux"),
    ("(S (IP 아/ii) (VP 가/pvg+다/ef))", "아", "intj"),
    ("(S (NP 책/ncn+의/jcm) (NP 표지/ncn))", "책의", "adn"),
    ("(S (NP 집/ncn+에/jca) (VP 가/pvg+다/ef))", "집에", "adv"),
    ("(S (VP 오/pvg+아서/ecs) (VP 가/pvg+다/ef))", "오아서", "sub"),
    ("(S (ADVP 매우/mag) (ADJP 좋/paa+다/ef))", "매우", "amod"),
    ("(S (ADVP 빨리/mag) (VP 가/pvg+다/ef))", "빨리", "vmod"),
    ("(S (NP 친구/ncn+와/jct) (VP 가/pvg+다/ef))", "친구와", "comit"),
])
def test_cascade(tree, form, label):
    assert _label_of(to_penn(parse_tree(tree)), form) == label


def test_head_assignment_positions():
    penn = to_penn(parse_tree(COGNAC_TREE))
    ha = head_assignment(penn)
    assert ha.lexical_head[()] == 7
    assert ha.head_child[()] == 2


def check_dependency(tree):
    penn = to_penn(tree)
    dep = to_dependency(penn)
    assert len(dep) == len(terminals(penn))
    assert dep.heads == oracle_heads(penn)
    assert oracle_problems(dep.heads) == set()
    assert validate_dependency(dep) == []
    reg = DEFAULT_REGISTRY
    for tok in dep:
        assert tok.label in reg.dependency_labels
        if tok.head:
            all_punct = all(reg.is_punct(m.tag) for m in tok.morphemes)
            assert (tok.label == "p") == all_punct
    _check_head_final(penn)
    return dep


def _check_head_final(node):
    if isinstance(node, Terminal):
        return
    if not any(is_excluded_head(c) for c in node.children):
        assert head_child_index(node) == len(node.children) - 1
    for c in node.children:
        _check_head_final(c)


@given(seeds)
def test_random_trees_convert_to_valid_dependencies(seed):
    check_dependency(random_tree(random.Random(seed)))


@given(seeds)
def test_generated_sentences_convert_to_valid_dependencies(seed):
    check_dependency(SentenceGenerator(seed).sentence())


@given(seeds)
def test_coordination_corollary(seed):
    rng = random.Random(seed)
    conj1 = P("NP", T((f"가{rng.randint(0, 9)}", "ncn")))
    conj2 = P("NP", T(("나", rng.choice(["ncn", "npp", "nq"]))))
    and_ = P("ADVP", T(("및", "maj")))
    dep = to_dependency(Phrase("S", (conj1, and_, conj2)))
    assert dep.heads == [3, 3, 0]
    assert dep.labels[:2] == ["conj", "cc"]


def test_empty_tree_rejected():
    with pytest.raises(ValueError):
        to_dependency(None)
