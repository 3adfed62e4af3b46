import json
import math
import xml.etree.ElementTree as ET

import pytest

from signseq.cli import EXIT_BOUND, EXIT_INPUT, EXIT_OK, main
from signseq.vectorfile import loads_vectors

SVG = "{http://www.w3.org/2000/svg}"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_sign_l1_report(tmp_path, capsys):
    path = write(tmp_path, "v.txt", "[1, 0]\n[0, 1]\n")
    assert main(["sign", path, "--norm", "l1"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["max_partial_norm"] == 2.0
    assert report["certified_bound"] == 2 * (1 + 1e-9)
    assert report["n"] == 2 and report["dimension"] == 2
    assert report["norm"] == {"kind": "l1"} and report["algorithm"] == "trapping"
    assert len(report["input_sha256"]) == 64
    assert report["warnings"] == []
    assert set(report) >= {"signs", "partial_norms", "tol", "final_radius", "timing_seconds"}


def test_sign_greedy_and_output_file(tmp_path, capsys):
    path = write(tmp_path, "v.txt", "[1, 0]\n[1, 0]\n")
    out = tmp_path / "r.json"
    assert main(["sign", path, "--algorithm", "greedy", "--output", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert report["signs"] == [1, -1] and report["certified_bound"] is None


def test_sign_empty_input(tmp_path, capsys):
    path = write(tmp_path, "v.txt", "# nothing\n")
    assert main(["sign", path]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["n"] == 0 and report["signs"] == [] and report["max_partial_norm"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["sign", "{dir}/long.txt"],
        ["sign", "{dir}/missing.txt"],
        ["sign", "{dir}/ok.txt", "--norm", "l7"],
        ["sign", "{dir}/ok.txt", "--norm", "polygon:{dir}/missing.json"],
        ["adversary", "--delta", "0"],
        ["adversary", "--delta", "-1"],
        ["highdim", "--dim", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_invalid_input_exits_1(tmp_path, capsys, argv):
    write(tmp_path, "long.txt", "[3, 0]\n")
    write(tmp_path, "ok.txt", "[0.5, 0]\n")
    argv = [a.format(dir=tmp_path) for a in argv]
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_INPUT
    assert capsys.readouterr().err


def test_adversary_round_trip(tmp_path, capsys):
    out = tmp_path / "adv.txt"
    assert main(["adversary", "--delta", "0.1", "--output", str(out)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "verification: PASS" in text and "n: 4" in text
    vs = loads_vectors(out.read_text())
    assert len(vs) == 4

    assert main(["oracle", str(out), "--threshold", str(math.sqrt(3) - 0.1 - 1e-9)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert "ALL PATTERNS EXCEED: true" in lines
    value = float(next(l for l in lines if l.startswith("value:")).split()[1])
    assert value >= math.sqrt(3) - 0.1 - 1e-9

    assert main(["sign", str(out)]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert value - 1e-9 <= report["max_partial_norm"] <= report["certified_bound"]


def test_adversary_to_stdout_keeps_stdout_clean(capsys):
    assert main(["adversary", "--delta", "0.2"]) == EXIT_OK
    captured = capsys.readouterr()
    assert len(loads_vectors(captured.out)) == 4
    assert "verification: PASS" in captured.err


def test_oracle_threshold_lines(tmp_path, capsys):
    path = write(tmp_path, "v.txt", "[1, 0]\n[0, 1]\n")
    assert main(["oracle", path, "--norm", "l1", "--threshold", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "value: 2.0" in out and "ALL PATTERNS EXCEED: true" in out
    assert main(["oracle", path, "--threshold", "1.5"]) == EXIT_OK
    assert "ALL PATTERNS EXCEED: false" in capsys.readouterr().out


def test_highdim_tables(tmp_path, capsys):
    assert main(["highdim", "--norm", "max", "--dim", "6", "--verify"]) == EXIT_OK
    header, row = capsys.readouterr().out.splitlines()
    assert header.split() == ["d", "norm", "admissible", "sum_norm", "lower_bound"]
    assert row.split() == ["6", "max", "yes", "5.000000", "5.000000"]
    out = tmp_path / "fam.txt"
    assert main(["highdim", "--norm", "euclidean", "--dim", "20", "--verify", "--output", str(out)]) == EXIT_OK
    assert "unverified (cap)" in capsys.readouterr().out
    assert len(loads_vectors(out.read_text())) == 19
    main(["highdim", "--dim", "4"])
    assert "not checked" in capsys.readouterr().out


def test_svg_output(tmp_path, capsys):
    path = write(tmp_path, "v.txt", "[1, 0]\n[0, 1]\n[-0.5, 0.5]\n")
    svg = tmp_path / "p.svg"
    assert main(["sign", path, "--norm", "linf", "--svg", str(svg)]) == EXIT_OK
    root = ET.parse(svg).getroot()
    assert root.tag == SVG + "svg"
    assert len(root.findall(f".//{SVG}line")) == 3
    assert len([e for e in root.iter() if e.get("class") == "bound"]) == 1
    assert main(["sign", path, "--svg", str(svg)]) == EXIT_OK
    assert ET.parse(svg).getroot().find(f"{SVG}circle") is not None


def test_polygon_norm(tmp_path, capsys):
    poly = write(tmp_path, "hex.json", json.dumps(
        [[math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)] for k in range(6)]))
    path = write(tmp_path, "v.txt", "[0.5, 0.5]\n[-0.3, 0.6]\n[0.7, 0.1]\n")
    assert main(["sign", path, "--norm", f"polygon:{poly}"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["norm"]["kind"] == "polygon" and len(report["norm"]["vertices"]) == 6
    assert report["max_partial_norm"] <= report["certified_bound"]


def test_random_is_seeded(capsys):
    assert main(["--seed", "7", "random", "--n", "5"]) == EXIT_OK
    a = capsys.readouterr().out
    assert main(["random", "--n", "5", "--seed", "7"]) == EXIT_OK
    assert capsys.readouterr().out == a
    main(["random", "--n", "5", "--seed", "8"])
    assert capsys.readouterr().out != a
    assert len(loads_vectors(a)) == 5


def test_bound_violation_exits_2(tmp_path, capsys, monkeypatch):
    import signseq.cli as cli
    from signseq.signer import SignResult

    def broken(vectors, spec, tol):
        return SignResult([1, 1], [1.0, 2.0], 2.0, 1.5, "trapping")

    monkeypatch.setattr(cli, "sign_sequence", broken)
    path = write(tmp_path, "v.txt", "[1, 0]\n[1, 0]\n")
    assert main(["sign", path]) == EXIT_BOUND
    assert "internal error" in capsys.readouterr().err
