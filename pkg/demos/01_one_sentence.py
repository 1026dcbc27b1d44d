"""One KAIST-annotated sentence, start to finish.

"나는 꼬냑(Cognac)을 들이켰다." ("I gulped down cognac.") has its case
particles attached at phrase level, a parenthetical glued inside an
eojeol, and a sentence-final period fused to the verb.
"""
from ktreebank import parse_tree, serialize_tree, to_dependency, to_penn, write_conll
from ktreebank.treeio import terminals

kaist = parse_tree(r"(S (NP+는/jxt (NP 나/npp)) (NP+을/jco (NP 꼬냑/ncn+\(/sl+Cognac/f+\)/sr)) "
                   r"(VP 들이켰다.=들이키/pvg+였/ep+다/ef+./sf))")

# three eojeols in the original annotation
print([t.form for t in terminals(kaist)])

# Penn style: punctuation split off, the bracketed span becomes NP-PRN,
# particles are pushed down into the tokens, and the period moves up to S
penn = to_penn(kaist)
print(serialize_tree(penn))
print([t.form for t in terminals(penn)])

# head-final dependencies with labels from the particles
print(write_conll(to_dependency(penn)))
