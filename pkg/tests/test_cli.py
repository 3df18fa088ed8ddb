import json
import subprocess
import sys

import pytest

from sunada.certifiers import recheck
from sunada.cli import main
from sunada.jobs import (EXIT_CONFIRMED, EXIT_ERROR, EXIT_REFUTED, JobError, dumps_report,
                         job_hash, parse_job, run_job)

S6 = {"type": "symmetric", "n": 6}
S6_PAIR = [{"perms": [[[1, 2], [3, 4]], [[1, 3], [2, 4]]]},
           {"perms": [[[1, 2], [3, 4]], [[1, 2], [5, 6]]]}]


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def test_flat_and_nested_parse_to_same_job():
    flat = parse_job({"kind": "heisenberg_suite", "p": 2, "n": 2})
    nested = parse_job(json.dumps({"heisenberg_suite": {"p": 2, "n": 2}}))
    assert flat == nested and job_hash(flat) == job_hash(nested)
    forms = parse_job({"forms": {"field": {"minpoly": [-2, 0, 1]}, "X": "R", "n": 4,
                                 "action": "search_admissible", "height": 3}})
    assert forms.kind == "forms" and forms.n == 4


@pytest.mark.parametrize("doc,path", [
    ("{not json", ""),
    ([1, 2], ""),
    ({"kind": "nope"}, "kind"),
    ({"covers": {"group": S6}}, "subgroups"),
    ({"kind": "heisenberg_suite", "p": 2}, "n"),
    ({"kind": "heisenberg_suite", "p": 2, "n": 2, "extra": 1}, "extra"),
    ({"kind": "covers", "group": S6, "subgroups": S6_PAIR, "L": 0}, "L"),
])
def test_structured_parse_errors(doc, path):
    with pytest.raises(JobError) as exc:
        parse_job(doc if isinstance(doc, str) else doc)
    assert any(e["path"] == path for e in exc.value.errors)


def test_non_generating_phi_is_an_execution_error():
    job = parse_job({"kind": "covers", "group": S6, "subgroups": S6_PAIR, "phi": {"a": 0, "b": 1}, "L": 3})
    r = run_job(job)
    assert r["status"] == "error" and r["exit_code"] == EXIT_ERROR
    assert "surjective" in r["error"]["message"]


def test_certify_report_rechecks():
    job = parse_job({"kind": "certify", "group": S6, "subgroups": S6_PAIR})
    r = run_job(job)
    assert r["status"] == "confirmed" and r["results"]["verdicts"]["almost_conjugate"] is True
    for rel, c in r["results"]["certificates"].items():
        for cert in (c if isinstance(c, list) else [c]):
            assert recheck(cert) == cert["verdict"]


def test_expectations_drive_exit_code():
    base = {"kind": "certify", "group": {"type": "symmetric", "n": 3},
            "subgroups": [{"perms": [[[1, 2]]]}, {"perms": [[[1, 2, 3]]]}],
            "relations": ["elementwise_conjugate"]}
    ok = run_job(parse_job({**base, "expect": {"verdicts.elementwise_conjugate": False}}))
    bad = run_job(parse_job({**base, "expect": {"verdicts.elementwise_conjugate": True}}))
    assert ok["exit_code"] == EXIT_CONFIRMED
    assert bad["exit_code"] == EXIT_REFUTED and bad["status"] == "refuted"


def test_double_run_is_byte_identical(tmp_path):
    job = write(tmp_path, "covers.json", {"covers": {"group": S6, "subgroups": S6_PAIR, "L": 5}})
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert main(["--job", job, "--out", str(out1), "--seed", "3"]) == 0
    assert main(["--job", job, "--out", str(out2), "--seed", "3"]) == 0
    f1, f2 = sorted(out1.iterdir()), sorted(out2.iterdir())
    assert [f.name for f in f1] == [f.name for f in f2]
    assert f1[0].read_bytes() == f2[0].read_bytes()
    report = json.loads(f1[0].read_text())
    assert f1[0].name == report["job_hash"] + ".json"
    assert report["results"]["equal"]["multiset_all"] is True


def test_batch_exit_code_is_max(tmp_path):
    good = write(tmp_path, "good.json", {"kind": "forms", "action": "classify", "n": 2,
                                         "entries": [[1], [1], [-7]],
                                         "expect": {"verdict": "cocompact"}})
    refuted = write(tmp_path, "refuted.json", {"kind": "forms", "action": "classify", "n": 2,
                                               "entries": [[1], [1], [-7]],
                                               "expect": {"verdict": "noncocompact"}})
    broken = write(tmp_path, "broken.json", "{")
    out = tmp_path / "out"
    assert main(["--job", good, "--out", str(out)]) == EXIT_CONFIRMED
    assert main(["--job", good, "--job", broken, "--out", str(out)]) == EXIT_ERROR
    assert main(["--job", good, "--job", broken, "--job", refuted, "--out", str(out)]) == EXIT_REFUTED
    invalid = json.loads((out / "invalid-broken.json").read_text())
    assert invalid["error"]["type"] == "JobError"


def test_threads_preserve_order(tmp_path, capsys):
    jobs = [write(tmp_path, f"d{i}.json", {"kind": "distance", "x": [0, 1], "y": [s, (1 + s * s) ** 0.5]})
            for i, s in enumerate([0.0, 1.0, 2.0])]
    assert main(sum([["--job", j] for j in jobs], []) + ["--threads", "2"]) == 0
    text = capsys.readouterr().out
    reports = [json.loads(part) for part in _split_reports(text)]
    assert [r["job"]["y"][0] for r in reports] == [0.0, 1.0, 2.0]
    assert reports[0]["results"]["distance"] == 0.0


def _split_reports(text):
    out, buf = [], []
    for line in text.splitlines():
        buf.append(line)
        if line == "}":
            out.append("\n".join(buf))
            buf = []
    return out


def test_caps_file_is_applied(tmp_path):
    caps = write(tmp_path, "caps.json", {"group_order": 10})
    job = write(tmp_path, "g.json", {"kind": "group", "group": {"type": "symmetric", "n": 4}})
    out = tmp_path / "out"
    code = subprocess.run([sys.executable, "-m", "sunada.cli", "--job", job, "--out", str(out),
                           "--caps", caps], capture_output=True).returncode
    assert code == EXIT_ERROR
    report = json.loads(next(out.iterdir()).read_text())
    assert report["error"]["type"] == "CapExceeded"


def test_big_integers_are_strings():
    job = parse_job({"kind": "forms", "action": "cm_extension", "field": {"minpoly": [-2, 0, 1]}, "d": 1})
    r = run_job(job)
    assert r["status"] == "confirmed"
    text = dumps_report({"x": 2**60, "y": 5})
    assert '"x": "1152921504606846976"' in text and '"y": 5' in text


def test_missing_job_file(tmp_path):
    assert main(["--job", str(tmp_path / "absent.json")]) == EXIT_ERROR


def test_auto_phi_falls_back_for_affine_groups():
    job = parse_job({"kind": "covers", "group": {"type": "affine", "p": 3, "n": 2},
                     "subgroups": [{"subspace": [[1, 0]]}, {"subspace": [[1, 0], [0, 1]]}], "L": 4,
                     "modes": ["set_all"]})
    r = run_job(job)
    assert r["status"] == "confirmed"
    assert r["results"]["spectra"][0]["degree"] == 72 and r["results"]["equal"]["set_all"]


JOB_DIR = __import__("pathlib").Path(__file__).parent.parent / "jobs"


@pytest.mark.parametrize("path", sorted(JOB_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_sample_jobs_confirm(path):
    r = run_job(parse_job(path.read_text()))
    assert r["status"] == "confirmed", r.get("error") or r.get("expectations")
