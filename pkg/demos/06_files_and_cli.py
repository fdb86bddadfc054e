# %% [markdown]
# # Instance files and the command line
#
# Instances are JSON documents with exact rational weights. The same commands
# are available as `shiftbribery ...` or `python -m shiftbribery ...`.

# %%
import tempfile
from pathlib import Path

from shiftbribery.cli import detect_class, main
from shiftbribery.generate import generate_instance
from shiftbribery.io import dumps_instance, load_instance, save_instance

work = Path(tempfile.mkdtemp())
inst = generate_instance("path", 5, seed=7, cost="linear")
save_instance(inst, work / "path.json")
print(dumps_instance(inst)[:300], "...")
print("round trip equal:", load_instance(work / "path.json")[0] == inst)
print("detected class:", detect_class(inst))

# %%
main(["solve", str(work / "path.json")])
main(["verify", str(work / "path.json"), "--shifts", "0,0,0,0,1"])

# %% [markdown]
# `bench` runs several algorithms over a folder of instances and flags any
# disagreement on feasibility or cost.

# %%
corpus = work / "corpus"
corpus.mkdir()
for seed in range(8):
    main(["generate", "--class", "treewidth", "--n", "9", "--seed", str(seed), "--out", str(corpus / f"t{seed}.json")])
main(["bench", "--corpus", str(corpus), "--algos", "treewidth,fvs,oracle", "--csv", "-"])
