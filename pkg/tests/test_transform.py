import random

from hypothesis import given

from ktreebank.model import DEFAULT_REGISTRY, Eojeol, Morpheme, eojeol
from ktreebank.synthetic import SentenceGenerator, random_tree
from ktreebank.transform import (AFFIX_RUN, BASE, PAREN_CLOSE, PAREN_OPEN, PUNCT,
                                 PRNGroup, Segment, group_parentheticals,
                                 segment_eojeol, to_penn)
from ktreebank.treeio import (Phrase, Terminal, has_affixes, iter_morphemes, parse_tree,
                              serialize_tree, terminals)

from conftest import COGNAC_TREE, seeds

COGNAC = eojeol(("꼬냑", "ncn"), ("(", "sl"), ("Cognac", "f"), (")", "sr"), ("을", "jco"))


def kinds(segments):
    return [(s.kind, s.form) for s in segments]


def test_segment_parenthetical_eojeol():
    assert kinds(segment_eojeol(COGNAC)) == [
        (BASE, "꼬냑"), (PAREN_OPEN, "("), (BASE, "Cognac"), (PAREN_CLOSE, ")"),
        (AFFIX_RUN, "을")]


def test_segment_fused_predicate():
    e = eojeol(("들이키", "pvg"), ("였", "ep"), ("다", "ef"), (".", "sf"), surface="들이켰다.")
    segs = segment_eojeol(e)
    assert kinds(segs) == [(BASE, "들이켰다"), (PUNCT, ".")]
    assert [m.form for m in segs[0].morphemes] == ["들이키", "였", "다"]


def test_segment_plain():
    assert kinds(segment_eojeol(eojeol(("나", "npp"), ("는", "jxt")))) == [(BASE, "나는")]


def test_group_parentheticals():
    items = group_parentheticals(segment_eojeol(COGNAC))
    assert len(items) == 3
    assert items[0].form == "꼬냑" and items[2].form == "을"
    group = items[1]
    assert isinstance(group, PRNGroup)
    assert [s.form for s in group.items] == ["(", "Cognac", ")"]


def test_group_without_parens_is_identity():
    segs = segment_eojeol(eojeol(("나", "npp"), ("는", "jxt"), (".", "sf")))
    assert group_parentheticals(segs) == segs


def test_group_unbalanced():
    segs = [Segment(PAREN_OPEN, (Morpheme("(", "sl"),)), Segment(BASE, (Morpheme("X", "f"),))]
    warnings = []
    assert group_parentheticals(segs, warnings) == segs
    assert [w.code for w in warnings] == ["unbalanced-paren"]


def test_group_nested():
    e = eojeol(("a", "f"), ("(", "sl"), ("b", "f"), ("(", "sl"), ("c", "f"),
               (")", "sr"), (")", "sr"))
    items = group_parentheticals(segment_eojeol(e))
    outer = items[1]
    assert isinstance(outer, PRNGroup) and isinstance(outer.items[2], PRNGroup)


def test_cognac_penn_tokens():
    penn = to_penn(parse_tree(COGNAC_TREE))
    forms = [t.form for t in terminals(penn)]
    assert forms == ["나는", "꼬냑", "(", "Cognac", ")", "을", "들이켰다", "."]
    assert "+".join(m.form for m in terminals(penn)[6].morphemes) == "들이키+였+다"
    prn = [n for n in _phrases(penn) if "PRN" in n.ftags]
    assert len(prn) == 1
    assert [t.form for t in terminals(prn[0])] == ["(", "Cognac", ")"]
    assert penn.children[-1] == Terminal(Eojeol((Morpheme(".", "sf"),)))


def test_plain_tree_is_fixed_point():
    tree = parse_tree("(S (NP 나/npp) (VP (NP 밥/ncn) (VP 먹/pvg+었/ep+다/ef)))")
    assert to_penn(tree) == tree


def test_affix_merges_onto_adjacent_terminal():
    assert serialize_tree(to_penn(parse_tree("(NP+을/jco (NP 꼬냑/ncn))"))) == \
        "(NP 꼬냑/ncn+을/jco)"


def test_affix_after_bracket_stays_standalone():
    penn = to_penn(parse_tree(r"(S (NP+을/jco (NP 꼬냑/ncn+\(/sl+C/f+\)/sr)) (VP 가/pvg+다/ef))"))
    forms = [t.form for t in terminals(penn)]
    assert forms == ["꼬냑", "(", "C", ")", "을", "가다"]


def _phrases(node):
    if isinstance(node, Phrase):
        yield node
        for c in node.children:
            yield from _phrases(c)


def _morphemes(tree):
    return list(iter_morphemes(tree))


def check_penn_invariants(tree, penn):
    reg = DEFAULT_REGISTRY
    assert _morphemes(penn) == _morphemes(tree)
    assert to_penn(penn) == penn
    assert not any(has_affixes(p) for p in _phrases(penn))
    for t in terminals(penn):
        flags = {reg.is_punct(m.tag) for m in t.morphemes}
        assert len(flags) == 1
    # PRN phrases already in the input need not be bracketed
    given_prn = sum("PRN" in p.ftags for p in _phrases(tree))
    unbracketed = 0
    for p in _phrases(penn):
        if "PRN" in p.ftags:
            leaves = terminals(p)
            assert leaves
            if not (leaves[0].form == "(" and leaves[-1].form == ")"):
                unbracketed += 1
    assert unbracketed <= given_prn
    assert len(terminals(penn)) >= len(terminals(tree))


@given(seeds)
def test_random_tree_invariants(seed):
    tree = random_tree(random.Random(seed))
    check_penn_invariants(tree, to_penn(tree, DEFAULT_REGISTRY, []))


@given(seeds)
def test_generated_sentence_invariants(seed):
    tree = SentenceGenerator(seed).sentence()
    check_penn_invariants(tree, to_penn(tree))
