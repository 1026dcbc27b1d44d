"""Swapping gold morphology for an analyzer's output, and scoring it."""
from ktreebank import (Tagset, eojeol, morph_agreement, parse_tree, substitute_morphology,
                       to_dependency, to_penn, write_conll)

gold = to_dependency(to_penn(parse_tree(
    "(S (NP+는/jxt (NP 나/npp)) (VP 간다=가/pvg+ㄴ다/ef))")))

# a Sejong-tagged analysis of the same two eojeols
auto = [eojeol(("나", "NP"), ("는", "JX")),
        eojeol(("가", "VV"), ("ㄴ다", "EF"), surface="간다")]

new, diagnostics = substitute_morphology(gold, auto, Tagset.SEJONG)
print(write_conll(new))            # heads and labels untouched, tags replaced
print(diagnostics)

# a shorter analysis cannot be lined up; the sentence comes back unchanged
same, diagnostics = substitute_morphology(gold, auto[:1])
print(same is gold, [d.code for d in diagnostics])

# agreement between two analyses of the same text
gold_morph = [[eojeol(("나", "npp"), ("는", "jxt")), eojeol(("가", "pvg"), ("ㄴ다", "ef"))]]
auto_morph = [[eojeol(("나", "npp"), ("는", "jxt")), eojeol(("간다", "pvg"))]]
print(morph_agreement(gold_morph, auto_morph).to_text())
