"""A synthetic treebank through the command-line pipeline.

Generates a few thousand KAIST-style sentences, converts them, splits the
result and counts trees and tokens per split.  Everything streams, so the
same commands work on a full treebank.
"""
import os
import tempfile

from ktreebank.cli import run
from ktreebank.synthetic import SentenceGenerator
from ktreebank.treeio import serialize_tree

work = tempfile.mkdtemp(prefix="ktreebank-demo-")
src = os.path.join(work, "corpus.brackets")
with open(src, "w", encoding="utf-8") as f:
    for tree in SentenceGenerator(seed=42).take(3000):
        f.write(serialize_tree(tree) + "\n")

conll = os.path.join(work, "corpus.conll")
print("convert ->", run(["convert", "--in", src, "--out", conll]))
print("validate ->", run(["validate", "--in", conll]))

# contiguous 80/10/10 split, then per-split statistics
splits = os.path.join(work, "splits")
run(["split", "--in", conll, "--out", splits, "--ratios", ".8,.1,.1"])
run(["stats"] + [a for s in ("train", "dev", "test")
                 for a in ("--in", os.path.join(splits, s + ".conll"))])

# an explicit manifest does the same from ordinal ranges
manifest = os.path.join(work, "manifest.txt")
with open(manifest, "w", encoding="utf-8") as f:
    f.write("1-2500 train\n2501-2750 dev\n2751-3000 test\n")
run(["stats", "--in", conll, "--manifest", manifest])
print("files in", work)
