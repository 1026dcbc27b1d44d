import io
import subprocess
import sys

import pytest

from ktreebank.cli import run
from ktreebank.synthetic import SentenceGenerator
from ktreebank.treeio import serialize_tree

from conftest import COGNAC_TREE

COGNAC_CONLL = """\
1	나는	나+는	n+j	npp+jxt	_	7	tpc	_	_
2	꼬냑	꼬냑	n	ncn	_	7	obj	_	_
3	(	(	s	sl	_	4	p	_	_
4	Cognac	Cognac	f	f	_	2	prn	_	_
5	)	)	s	sr	_	4	p	_	_
6	을	을	j	jco	_	2	ejx	_	_
7	들이켰다	들이키+였+다	p+e+e	pvg+ep+ef	_	0	root	_	_
8	.	.	s	sf	_	7	p	_	_

"""


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cognac(tmp_path):
    path = tmp_path / "kaist.brackets"
    path.write_text(COGNAC_TREE + "\n", encoding="utf-8")
    return path


@pytest.fixture
def corpus(tmp_path):
    path = tmp_path / "corpus.brackets"
    trees = SentenceGenerator(5).take(40)
    path.write_text("".join(serialize_tree(t) + "\n" for t in trees), encoding="utf-8")
    return path


def test_convert_cognac(cognac, tmp_path):
    out = tmp_path / "out.conll"
    code, _, err = cli("convert", "--in", cognac, "--out", out, "--tagset", "kaist")
    assert code == 0 and err == ""
    assert out.read_text(encoding="utf-8") == COGNAC_CONLL
    code, stdout, err = cli("validate", "--in", out)
    assert code == 0 and err == ""
    assert "0 errors" in stdout


def test_stats_empty(tmp_path):
    empty = tmp_path / "empty.brackets"
    empty.write_text("", encoding="utf-8")
    code, stdout, _ = cli("stats", "--in", empty, "--format", "tsv")
    assert code == 0
    assert stdout.splitlines()[-1] == "total\t0\t0"


def test_transform(cognac):
    code, stdout, _ = cli("transform", "--in", cognac)
    assert code == 0
    assert stdout.strip().endswith(r"./sf)")
    assert "NP-PRN" in stdout


def test_usage_errors(cognac, tmp_path):
    assert cli("convert", "--in", tmp_path / "missing")[0] == 2
    assert cli("convert", "--in", cognac, "--bogus")[0] == 2
    assert cli("convert", "--in", cognac, "--strict", "--lenient")[0] == 2
    assert cli("convert", "--in", cognac, "--in", cognac)[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("split", "--in", cognac, "--out", tmp_path / "s")[0] == 2
    code, _, err = cli("convert", "--in", cognac, "--workers", "0")
    assert code == 2 and err


def test_non_utf8_input_is_io_error(tmp_path):
    bad = tmp_path / "bad.brackets"
    bad.write_bytes("(S (NP 나/npp))".encode("euc-kr"))
    code, _, err = cli("convert", "--in", bad)
    assert code == 2 and "I/O" in err


def test_error_diagnostics_exit_1(tmp_path):
    src = tmp_path / "mixed.brackets"
    src.write_text("(S (NP x/zzz))\n(S (NP 나/npp))\n(S (NP\n", encoding="utf-8")
    code, stdout, err = cli("convert", "--in", src)
    assert code == 1
    records = [line.split("\t") for line in err.splitlines()]
    assert all(len(r) == 4 and r[0] == "error" for r in records)
    assert [r[2] for r in records] == ["unknown-tag", "unbalanced-brackets"]
    assert stdout.count("\n\n") == 1
    code, _, err = cli("convert", "--lenient", "--in", src)
    assert code == 1
    assert err.splitlines()[0].startswith("warning\t")


def test_validate_reports_bad_conll(tmp_path):
    src = tmp_path / "bad.conll"
    src.write_text("1\tx\tx\tn\tncn\t_\t2\tdep\t_\t_\n2\tx\tx\tn\tncn\t_\t1\tdep\t_\t_\n\n",
                   encoding="utf-8")
    code, _, err = cli("validate", "--in", src)
    assert code == 1
    assert {line.split("\t")[2] for line in err.splitlines()} == {"no-root", "cycle"}


def test_output_is_deterministic_and_worker_independent(corpus, tmp_path):
    outs = []
    for i, workers in enumerate([1, 1, 3]):
        out = tmp_path / f"o{i}.conll"
        assert cli("convert", "--in", corpus, "--out", out, "--workers", workers)[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_verbose_logs_to_stderr_only(cognac, tmp_path):
    out = tmp_path / "o.conll"
    code, stdout, err = cli("-v", "convert", "--in", cognac, "--out", out)
    assert code == 0 and stdout == ""
    assert err.startswith("# ")
    assert out.read_text(encoding="utf-8") == COGNAC_CONLL


def test_split_ratios_and_manifest(corpus, tmp_path):
    code, _, _ = cli("split", "--in", corpus, "--out", tmp_path / "r", "--ratios", ".8,.1,.1")
    assert code == 0
    sizes = [len((tmp_path / "r" / f"{s}.brackets").read_text(encoding="utf-8").splitlines())
             for s in ("train", "dev", "test")]
    assert sizes == [32, 4, 4]
    manifest = tmp_path / "m.txt"
    manifest.write_text("1-30 train\n31-35 dev\n36-40 test\n", encoding="utf-8")
    code, stdout, _ = cli("stats", "--in", corpus, "--manifest", manifest, "--format", "tsv")
    assert code == 0
    assert [line.split("\t")[1] for line in stdout.splitlines()[1:4]] == ["30", "5", "5"]
    manifest.write_text("1-30 train\n", encoding="utf-8")
    assert cli("split", "--in", corpus, "--out", tmp_path / "m", "--manifest", manifest)[0] == 2


def test_split_conll_then_stats(corpus, tmp_path):
    conll = tmp_path / "all.conll"
    assert cli("convert", "--in", corpus, "--out", conll)[0] == 0
    assert cli("split", "--in", conll, "--out", tmp_path / "s", "--ratios", ".5,.25,.25")[0] == 0
    parts = [tmp_path / "s" / f"{s}.conll" for s in ("train", "dev", "test")]
    args = [a for p in parts for a in ("--in", p)]
    code, stdout, _ = cli("stats", *args, "--format", "tsv")
    _, whole, _ = cli("stats", "--in", conll, "--format", "tsv")
    assert code == 0
    assert stdout.splitlines()[-1] == whole.splitlines()[-1]


def test_subst_and_agree(tmp_path):
    gold = tmp_path / "gold.conll"
    gold.write_text("1\t나는\t나+는\tn+j\tnpp+jxt\t_\t0\troot\t_\t_\n\n", encoding="utf-8")
    auto = tmp_path / "auto.morph"
    auto.write_text("나는\t나/NP+는/JX\n\n", encoding="utf-8")
    code, stdout, err = cli("subst", "--in", gold, "--auto", auto, "--tagset", "sejong")
    assert code == 0, err
    assert stdout.split("\t")[3:5] == ["N+J", "NP+JX"]
    g = tmp_path / "g.morph"
    g.write_text("나는\t나/npp+는/jxt\n\n", encoding="utf-8")
    code, stdout, _ = cli("agree", "--in", g, "--auto", auto, "--format", "tsv")
    assert code == 0
    assert "accuracy\t0.000000" in stdout
    assert cli("subst", "--in", gold)[0] == 2


def test_config_file(cognac, tmp_path):
    cfg = tmp_path / "reg.ini"
    cfg.write_text("[case_labels]\njco = comp\n", encoding="utf-8")
    code, stdout, _ = cli("convert", "--in", cognac, "--config", cfg)
    assert code == 0
    assert stdout.splitlines()[1].split("\t")[7] == "comp"
    cfg.write_text("[case_labels]\njco = nonsense\n", encoding="utf-8")
    assert cli("convert", "--in", cognac, "--config", cfg)[0] == 2


def test_module_entry_point(cognac):
    proc = subprocess.run([sys.executable, "-m", "ktreebank", "convert", "--in", str(cognac)],
                          capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout == COGNAC_CONLL
