import json

import pytest

from jescert import __version__
from jescert.cli import main, read_config, UsageError
from jescert.report import ReportEnvelope


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, code", [
    (["verify-constants"], 0),
    (["verify-constants", "--coefficient", "20"], 1),
    (["verify-constants", "--precision", "64"], 0),
    (["verify-constants", "--precision", "12"], 2),
    (["threshold"], 0),
    (["threshold", "--root-tolerance", "0.001"], 0),
    (["threshold", "--f-coefficient", "20"], 1),
    (["threshold", "--granularity", "0"], 2),
    (["bound", "3", "2", "1", "1"], 0),
    (["bound", "100", "2703", "1", "1"], 0),
    (["bound", "4", "2", "1", "1"], 2),
    (["search", "2", "1"], 0),
    (["search", "4", "2"], 2),
    (["search", "15", "2", "--max-z", "50", "--max-y", "50"], 0),
    (["search", "2", "1", "--bit-budget", "40"], 1),
    (["search"], 2),
    (["survey", "--m-max", "6"], 0),
    (["survey", "--m-max", "1"], 2),
    (["no-such-command"], 2),
    (["threshold", "--k-floor", "abc"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_verify_constants_records(capsys):
    code, out, _ = run(capsys, "verify-constants", "--format", "jsonl")
    env = ReportEnvelope.from_jsonl(out)
    certified = [r for r in env.records if r.verdict == "CertifiedTrue"]
    assert code == 0 and len(certified) >= 14
    assert env.version == __version__
    assert all(r.verdict in ("CertifiedTrue", "CertifiedFalse") for r in env.records)


def test_jsonl_round_trip(capsys):
    _, out, _ = run(capsys, "threshold", "--format", "jsonl")
    env = ReportEnvelope.from_jsonl(out)
    assert env.to_jsonl() == out
    assert env.summary["k_star"] == "30.8"


def test_structured_output_deterministic(capsys):
    _, a, _ = run(capsys, "verify-constants", "--format", "jsonl")
    _, b, _ = run(capsys, "verify-constants", "--format", "jsonl")
    # only the header line carries the timestamp
    assert a.splitlines()[1:] == b.splitlines()[1:]
    head = json.loads(a.splitlines()[0])
    assert head["kind"] == "envelope" and "timestamp" in head


def test_csv_output(capsys):
    code, out, _ = run(capsys, "search", "3", "2", "--format", "csv", "--max-z", "20", "--max-y", "20")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("id,eq,claim")
    assert "(2,2,2)" in lines[1]


def test_bound_reports_unmet_hypotheses(capsys):
    code, out, _ = run(capsys, "bound", "100", "2703", "1", "1", "--format", "jsonl")
    env = ReportEnvelope.from_jsonl(out)
    closed = [r for r in env.records if r.id.endswith("specialized-bound")][0]
    assert "hypotheses not met" in closed.claim and not closed.blocking
    general = [r for r in env.records if r.id.endswith("general-bound")][0]
    assert general.verdict == "CertifiedTrue"


def test_bound_convergent_instance(capsys):
    code, out, _ = run(capsys, "bound", "2707", "2705", "74848", "74855", "--format", "jsonl")
    env = ReportEnvelope.from_jsonl(out)
    assert code == 0
    assert all(r.verdict == "CertifiedTrue" for r in env.records if r.blocking)


def test_config_file(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nformat = jsonl\nmax-z = 1\n")
    monkeypatch.setenv("JESCERT_CONFIG", str(cfg))
    assert run(capsys, "search", "2", "1")[0] == 2
    code, out, _ = run(capsys, "search", "2", "1", "--max-z", "10")
    assert code == 0 and out.startswith("{")
    cfg.write_text("garbage line\n")
    assert run(capsys, "search", "2", "1")[0] == 2
    with pytest.raises(UsageError):
        read_config(str(cfg))


def test_survey_output_file(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "survey", "--m-max", "150", "--format", "csv", "--out", str(a), "--workers", "1")[0] == 0
    code, out, _ = run(capsys, "survey", "--m-max", "150", "--format", "csv", "--out", str(b), "--workers", "4")
    assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert out.startswith("records:")


def test_survey_summary_partition(capsys):
    code, out, err = run(capsys, "survey", "--m-max", "6", "--format", "jsonl")
    rows = [json.loads(l) for l in out.splitlines()]
    assert len(rows) == 5
    firsts = [int(l.rsplit(" ", 1)[1]) for l in err.splitlines() if "first for" in l]
    assert sum(firsts) <= 5


def test_survey_unwritable_path(tmp_path, capsys):
    code, _, err = run(capsys, "survey", "--m-max", "6", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 2 and "cannot write" in err
