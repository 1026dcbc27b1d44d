"""The tag registries, the coarse mapping and config overrides."""
import os
import tempfile

from ktreebank import DEFAULT_REGISTRY, Tagset, TagsetRegistry, coarse_tag
from ktreebank.model import KAIST_TAGS, SEJONG_TAGS

print(len(KAIST_TAGS), "KAIST tags,", len(SEJONG_TAGS), "Sejong tags")

# coarse tags keep the first letter, except a handful of Sejong tags
for tag in ("NNG", "SN", "NF", "SL", "SH", "NV", "pvg", "jco"):
    print(tag, "->", coarse_tag(tag))

# the particle-to-label table and the label cascade are data
print(dict(DEFAULT_REGISTRY.case_labels))

cfg = os.path.join(tempfile.mkdtemp(), "registry.ini")
with open(cfg, "w", encoding="utf-8") as f:
    f.write("[general]\nmode = lenient\n\n[case_labels]\njcs = sbj\njco = obj\njxt = sbj\n")
reg = TagsetRegistry.from_config(cfg)
print(reg.strict, reg.case_label("jxt"), reg.case_label("jcr"))

# lenient mode tolerates unknown tags; strict mode would raise
print(reg.coarse_tag("zz"), reg.validate_tag(Tagset.KAIST, "zz"))
