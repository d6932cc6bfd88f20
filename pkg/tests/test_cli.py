import io
import subprocess
import sys

import pytest

from vnseg import __version__
from vnseg.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, run
from vnseg.corpus import write_corpus
from vnseg.datasets import make_synthetic_language


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    lexicon, train, test = make_synthetic_language(n_train=120, n_test=20, seed=9)
    write_corpus(train, d / "train.txt")
    write_corpus(test, d / "gold.txt")
    (d / "vocab.txt").write_text("".join(" ".join(e) + "\n" for e in lexicon.entries()),
                                 encoding="utf-8")
    (d / "raw.txt").write_text("".join(" ".join(s.raw_syllables) + "\n" for s in test),
                               encoding="utf-8")
    (d / "fam.txt").write_text("Nguyễn\n", encoding="utf-8")
    (d / "mid.txt").write_text("Văn\n", encoding="utf-8")
    return d


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def model(files):
    path = files / "model.uitws"
    code, _ = call("train", "--corpus", files / "train.txt", "--lexicon", files / "vocab.txt",
                   "--family", files / "fam.txt", "--middle", files / "mid.txt",
                   "--features", "base,sep,sfx", "--c", "1.0", "--out", path)
    assert code == EXIT_OK
    return path


def test_segment_and_evaluate(files, model):
    pred = files / "pred.txt"
    code, _ = call("segment", "--model", model, "--input", files / "raw.txt", "--output", pred)
    assert code == EXIT_OK
    gold_lines = (files / "gold.txt").read_text(encoding="utf-8").splitlines()
    assert len(pred.read_text(encoding="utf-8").splitlines()) == len(gold_lines)
    code, out = call("evaluate", "--gold", files / "gold.txt", "--pred", pred,
                     "--model", model, "--csv", files / "eval.csv")
    assert code == EXIT_OK
    assert out.splitlines()[0].split() == ["words", "gold", "pred", "correct", "P", "R", "F1"]
    csv_lines = (files / "eval.csv").read_text(encoding="utf-8").splitlines()
    assert len(csv_lines) == 10 and csv_lines[2].startswith("1,")
    f1 = float(csv_lines[1].split(",")[-1])
    assert f1 > 90.0 and len(csv_lines[1].split(",")[-1].split(".")[1]) == 4


def test_segment_stdin(files, model):
    proc = subprocess.run([sys.executable, "-m", "vnseg", "segment", "--model", str(model)],
                          input="a b\n\nc_d e\n", capture_output=True, text=True)
    assert proc.returncode == 0
    lines = proc.stdout.split("\n")
    assert lines[1] == "" and lines[2] == "c_d e"
    assert "line 3" in proc.stderr


def test_segment_strict_fails(files, model):
    proc = subprocess.run([sys.executable, "-m", "vnseg", "segment", "--model", str(model),
                           "--strict"], input="a_b\n", capture_output=True, text=True)
    assert proc.returncode == EXIT_DATA


def test_cv_and_grid(files):
    code, out = call("cv", "--corpus", files / "train.txt", "--lexicon", files / "vocab.txt",
                     "--k", "3", "--features", "base", "--workers", "1",
                     "--csv", files / "cv.csv")
    assert code == EXIT_OK and "mean" in out
    assert (files / "cv.csv").read_text(encoding="utf-8").startswith("fold,P,R,F1\n")
    code, out = call("grid", "--corpus", files / "train.txt", "--lexicon", files / "vocab.txt",
                     "--k", "2", "--grid", "0.1,1", "--features", "base", "--workers", "1")
    assert code == EXIT_OK and "best C=" in out


def test_ablate(files):
    code, out = call("ablate", "--corpus", files / "train.txt", "--lexicon", files / "vocab.txt",
                     "--k", "2", "--grid", "1", "--workers", "1")
    assert code == EXIT_OK
    assert "base + long + sep + sfx" in out
    assert len(out.strip().splitlines()) == 10


def test_stats(files, tmp_path):
    code, out = call("stats", "--corpus", files / "train.txt", "--lexicon", files / "vocab.txt",
                     "--out-dir", tmp_path)
    assert code == EXIT_OK
    assert out.startswith("# distribution\n1\t")
    assert (tmp_path / "distribution.tsv").read_text(encoding="utf-8").count("\n") == 6
    assert (tmp_path / "separable.tsv").exists() and (tmp_path / "suffixes.tsv").exists()


def test_config_file_and_precedence(files, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"# defaults\ncorpus={files / 'train.txt'}\nk=2\nfeatures=base\n"
                   "workers=1\n", encoding="utf-8")
    code, out = call("--config", cfg, "cv")
    assert code == EXIT_OK
    assert len([line for line in out.splitlines() if line[:1].isdigit()]) == 2
    code, out = call("--config", cfg, "cv", "--k", "3")
    assert len([line for line in out.splitlines() if line[:1].isdigit()]) == 3


def test_usage_errors(files, capsys):
    assert call()[0] == EXIT_USAGE
    assert call("train")[0] == EXIT_USAGE
    assert call("bogus")[0] == EXIT_USAGE
    assert call("cv", "--corpus", files / "train.txt", "--features", "base,nope")[0] == EXIT_USAGE
    assert call("grid", "--corpus", files / "train.txt", "--grid", "0,1")[0] == EXIT_USAGE
    bad = files / "bad.cfg"
    bad.write_text("no equals sign\n", encoding="utf-8")
    assert call("--config", bad, "stats", "--corpus", files / "train.txt")[0] == EXIT_USAGE


def test_data_errors(files, tmp_path):
    assert call("segment", "--model", tmp_path / "missing")[0] == EXIT_DATA
    broken = tmp_path / "broken.txt"
    broken.write_text("a__b\n", encoding="utf-8")
    assert call("stats", "--corpus", broken)[0] == EXIT_DATA
    junk = tmp_path / "junk.uitws"
    junk.write_text("not a model\n", encoding="utf-8")
    assert call("segment", "--model", junk)[0] == EXIT_DATA
    assert call("evaluate", "--gold", files / "gold.txt", "--pred", files / "train.txt")[0] == \
        EXIT_DATA


def test_version():
    proc = subprocess.run([sys.executable, "-m", "vnseg", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
