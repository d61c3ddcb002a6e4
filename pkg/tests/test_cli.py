import json
from pathlib import Path

import pytest

from formkit.cli import main


def read_tree(out: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(out.iterdir())}


def gen(out: Path, *extra: str, seed: int = 7, count: int = 3) -> int:
    return main([
        "gen", "--seed", str(seed), "--count", str(count), "--out-dir", str(out), *extra
    ])


def test_gen_writes_expected_files(tmp_path):
    out = tmp_path / "corpus"
    assert gen(out, "--svg") == 0
    names = {p.name for p in out.iterdir()}
    for i in range(3):
        assert f"page_{i:05d}.gt.json" in names
        assert f"page_{i:05d}.layout.json" in names
        assert f"page_{i:05d}.svg" in names
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["schema_version"] == 1
    assert manifest["config_hash"]
    assert set(manifest["files"]) == names - {"manifest.json"}


def test_gen_reruns_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert gen(a, "--svg") == 0
    assert gen(b, "--svg") == 0
    assert read_tree(a) == read_tree(b)


def test_gen_jobs_do_not_change_output(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert gen(a, "--jobs", "1", count=4) == 0
    assert gen(b, "--jobs", "3", count=4) == 0
    assert read_tree(a) == read_tree(b)


def test_gen_count_zero_manifest_only(tmp_path):
    out = tmp_path / "empty"
    assert gen(out, count=0) == 0
    assert {p.name for p in out.iterdir()} == {"manifest.json"}


def test_eval_self_is_perfect(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    assert gen(corpus, count=2) == 0
    pred = tmp_path / "pred"
    pred.mkdir()
    for p in corpus.glob("*.gt.json"):
        (pred / p.name).write_bytes(p.read_bytes())
    report_path = tmp_path / "report.json"
    assert main(["eval", str(pred), str(corpus), "--report", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert report["schema_version"] == 1
    for rec in report["documents"]:
        assert rec["nted_x100"] == pytest.approx(0.0, abs=1e-9)
        assert rec["ganted_x100"] == pytest.approx(0.0, abs=1e-9)
        assert rec["ganted_x100"] <= rec["nted_x100"] + 1e-9
    assert report["corpus_means"]["nted_x100"] == pytest.approx(0.0, abs=1e-9)


def test_eval_repair_pipeline(tmp_path):
    corpus = tmp_path / "corpus"
    assert gen(corpus, count=1) == 0
    pred = tmp_path / "pred"
    pred.mkdir()
    (src,) = corpus.glob("*.gt.json")
    broken = src.read_text()[:-2]  # chop the tail
    (pred / src.name).write_text(broken)

    report_path = tmp_path / "report.json"
    assert main(["eval", str(pred), str(corpus), "--report", str(report_path)]) == 2
    assert main(["eval", str(pred), str(corpus), "--report", str(report_path), "--repair"]) == 0
    report = json.loads(report_path.read_text())
    assert report["documents"][0]["cleanup_log"]


def test_eval_missing_gt_is_skipped(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    assert gen(corpus, count=1) == 0
    pred = tmp_path / "pred"
    pred.mkdir()
    (src,) = corpus.glob("*.gt.json")
    (pred / src.name).write_bytes(src.read_bytes())
    (pred / "page_99999.gt.json").write_text("[]")
    report_path = tmp_path / "report.json"
    assert main(["eval", str(pred), str(corpus), "--report", str(report_path)]) == 0
    report = json.loads(report_path.read_text())
    assert len(report["documents"]) == 1


def test_clean_valid_json_unchanged(tmp_path):
    src = tmp_path / "in.json"
    dst = tmp_path / "out.json"
    src.write_text('{"A": "other"}')
    assert main(["clean", str(src), str(dst)]) == 0
    assert dst.read_text() == '{"A": "other"}'


def test_clean_collapses_and_repairs(tmp_path):
    src = tmp_path / "in.json"
    dst = tmp_path / "out.json"
    src.write_text('{"A": "question", "answers":["' + "degenerate" * 8)
    assert main(["clean", str(src), str(dst)]) == 0
    out = dst.read_text()
    json.loads(out)
    assert out.count("degenerate") == 1


def test_ted_same_file_zero(tmp_path, capsys):
    f = tmp_path / "a.json"
    f.write_text('{"Q": "question", "answers":["x"]}')
    assert main(["ted", str(f), str(f)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split()[-1] == "0.0000"
    assert lines[1].split()[-1] == "0.00"
    assert lines[2].split()[-1] == "0.00"


def test_exit_codes(tmp_path):
    assert main(["bogus-command"]) == 1
    assert main(["gen", "--seed", "1"]) == 1  # missing required flags
    f = tmp_path / "bad.json"
    f.write_text("not json at all {{{")
    assert main(["ted", str(f), str(f)]) == 2
    assert main(["clean", str(tmp_path / "missing.json"), str(tmp_path / "o")]) == 3


def test_pools_env_var(tmp_path, monkeypatch):
    pool_dir = tmp_path / "pools"
    pool_dir.mkdir()
    (pool_dir / "words.txt").write_text("\n".join(f"word{i}" for i in range(50)))
    monkeypatch.setenv("FORMKIT_POOLS", str(pool_dir))
    out = tmp_path / "corpus"
    assert gen(out, count=1) == 0
