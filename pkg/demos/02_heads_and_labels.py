"""How heads are picked and arcs are labeled."""
from ktreebank import head_child_index, parse_tree, to_dependency, to_penn
from ktreebank.depconv import is_excluded_head

# the rightmost child heads its phrase...
vp = parse_tree("(VP (NP 밥/ncn+을/jco) (VP 먹/pvg+었/ep+다/ef))")
print(head_child_index(vp))        # 1

# ...unless it is an auxiliary phrase, a parenthetical, a bare particle or
# punctuation, in which case the next one to the left is tried
vp = parse_tree("(VP (VP 먹/pvg+어/ecx) (AUXP 보/px+았/ep+다/ef))")
print(head_child_index(vp))        # 0
for child in vp.children:
    print(child.label, is_excluded_head(child))

# coordination needs no special structure: the last conjunct is the head,
# earlier conjuncts get conj and the conjunction gets cc
tree = parse_tree("(S (NP+을/jco (NP 세포/ncn) (ADVP 및/maj) (NP 세균/ncn)) "
                  "(VP (VP 파괴하/pvg+고/ecc) (VP 죽인다=죽이/pvg+ㄴ다/ef)))")
for tok in to_dependency(to_penn(tree)):
    print(tok.index, tok.form, tok.head, tok.label)
