"""End-to-end command-line behavior: outputs, reports, witnesses, errors."""
import json

import numpy as np
import pytest

from girthlocal import cli
from girthlocal.cli import RunReport

K4_TEXT = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_evolve_is3_coarse_headline(capsys):
    code, out, _ = run_cli(capsys, "evolve", "is3", "--epsilon", "1e-5")
    assert code == 0
    assert "independent: 0.4452987" in out
    assert "fractional coloring number: 2.245" in out


def test_evolve_cut3_modes_agree(capsys):
    outs = []
    for mode in ("closed-form", "linear-solve"):
        code, out, _ = run_cli(capsys, "evolve", "cut3",
                               "--epsilon", "1e-4", "--mode", mode)
        assert code == 0
        outs.append(out)
    good = [float(line.split(": ")[1]) for text in outs
            for line in text.splitlines() if line.startswith("good")]
    assert abs(good[0] - good[1]) < 1e-9


def test_evolve_writes_json_and_trajectory(capsys, tmp_path):
    jpath = tmp_path / "r.json"
    tpath = tmp_path / "t.csv"
    code, _, _ = run_cli(capsys, "evolve", "is4", "--epsilon", "1e-5",
                         "--json", str(jpath), "--trajectory", str(tpath),
                         "--record-interval", "1000")
    assert code == 0
    report = json.loads(jpath.read_text())
    head = report["headline"]["independent"]
    assert abs(head - 0.404077141) < 1e-8
    assert report["corollaries"]["fractional_coloring_number"] * head == \
        pytest.approx(1.0, abs=1e-15)
    lines = tpath.read_text().splitlines()
    assert lines[0] == "round,independent,erase,v2,v3,v4,v5,v6,v7"
    assert len(lines) > 10


def test_evolve_rejects_improvement_flag_on_wrong_target(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["evolve", "is4", "--no-improvement"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_evolve_coarse_step_out_of_range_fails(capsys):
    code, _, err = run_cli(capsys, "evolve", "is3", "--epsilon", "1e-4")
    assert code == 1
    assert "valid range" in err


def test_simulate_is_parity_error(capsys):
    code, _, err = run_cli(capsys, "simulate", "is", "--n", "3", "--d", "3")
    assert code == 2
    assert "even" in err


def test_simulate_is_reports_valid_set(capsys, tmp_path):
    wpath = tmp_path / "set.txt"
    code, out, _ = run_cli(capsys, "simulate", "is", "--n", "2000",
                           "--d", "3", "--seed", "3",
                           "--witness", str(wpath))
    assert code == 0
    assert "valid: True" in out
    members = [int(x) for x in wpath.read_text().split()]
    assert members == sorted(members)
    assert 0.40 < len(members) / 2000 < 0.48


def test_simulate_cut_witness_has_one_line_per_vertex(capsys, tmp_path):
    wpath = tmp_path / "colors.txt"
    code, out, _ = run_cli(capsys, "simulate", "cut", "--n", "500",
                           "--seed", "1", "--witness", str(wpath))
    assert code == 0
    lines = wpath.read_text().splitlines()
    assert len(lines) == 500
    assert all(line.split()[1] in ("R", "G") for line in lines)
    assert lines[0].split()[0] == "0"


def test_simulate_seed_fanout_aggregates(capsys, tmp_path):
    jpath = tmp_path / "agg.json"
    code, out, _ = run_cli(capsys, "simulate", "cut", "--n", "600",
                           "--seed", "5", "--seeds", "3",
                           "--json", str(jpath))
    assert code == 0
    report = json.loads(jpath.read_text())
    per_seed = report["details"]["per_seed"]
    assert [r["seed"] for r in per_seed] == [5, 6, 7]
    ratios = [r["ratio"] for r in per_seed]
    assert report["headline"]["mean_ratio"] == pytest.approx(
        sum(ratios) / 3)
    assert report["headline"]["runs"] == 3
    assert all(r["valid"] for r in per_seed)


def test_simulate_witness_excludes_fanout(capsys):
    code, _, err = run_cli(capsys, "simulate", "cut", "--n", "600",
                           "--seeds", "2", "--witness", "w.txt")
    assert code == 2
    assert "single run" in err


def test_identical_command_gives_identical_report(capsys, tmp_path):
    jpath = tmp_path / "rep.json"
    texts = []
    for _ in range(2):
        run_cli(capsys, "simulate", "cut", "--n", "400", "--seed", "8",
                "--json", str(jpath))
        texts.append(jpath.read_text())
    strip = [
        "\n".join(ln for ln in t.splitlines() if "wall_time" not in ln)
        for t in texts
    ]
    assert strip[0] == strip[1]


def test_report_round_trips_losslessly(capsys, tmp_path):
    jpath = tmp_path / "rep.json"
    run_cli(capsys, "simulate", "is", "--n", "500", "--d", "4",
            "--seed", "2", "--json", str(jpath))
    data = json.loads(jpath.read_text())
    rebuilt = RunReport.from_dict(data)
    assert rebuilt.to_dict() == data
    corr = data["corollaries"]["fractional_coloring_number"]
    assert corr * data["headline"]["ratio"] == pytest.approx(1.0,
                                                             abs=1e-15)


def test_output_directory_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("GIRTHLOCAL_OUT", str(tmp_path))
    code, _, _ = run_cli(capsys, "simulate", "cut", "--n", "200",
                         "--seed", "0", "--json", "sub.json")
    assert code == 0
    assert (tmp_path / "sub.json").exists()


def test_oracle_commands(capsys, tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(K4_TEXT)
    code, out, _ = run_cli(capsys, "oracle", "mis", str(path))
    assert code == 0
    assert "maximum independent set: 1" in out
    code, out, _ = run_cli(capsys, "oracle", "maxcut", str(path))
    assert code == 0
    assert "maximum cut: 4" in out
    assert len(out.splitlines()[1].split()) == 5  # "witness:" + 4 sides


def test_oracle_size_limit(capsys, tmp_path):
    n = 40
    lines = [f"{n} {n}"] + [f"{i} {(i + 1) % n}" for i in range(n)]
    path = tmp_path / "big.txt"
    path.write_text("\n".join(lines) + "\n")
    code, _, err = run_cli(capsys, "oracle", "mis", str(path))
    assert code == 2
    assert "n <= 30" in err


def test_refine_default_ladder_reports_convergence(capsys):
    code, out, _ = run_cli(capsys, "refine", "cut3")
    assert code == 0
    assert "monotone convergence: True" in out
    assert "difference ratios:" in out


def test_refine_explicit_ladder_json(capsys, tmp_path):
    jpath = tmp_path / "ref.json"
    code, out, _ = run_cli(capsys, "refine", "is4", "--step-sizes",
                           "1e-5", "5e-6", "2.5e-6", "--json", str(jpath))
    assert code == 0
    data = json.loads(jpath.read_text())
    assert data["monotone"] is True
    assert len(data["finals"]) == 3
    assert data["ratios"][0] == pytest.approx(0.668, abs=0.05)


def test_simulate_cut_swap_flag(capsys, tmp_path):
    paths = [tmp_path / "a.txt", tmp_path / "b.txt"]
    run_cli(capsys, "simulate", "cut", "--n", "300", "--seed", "4",
            "--witness", str(paths[0]))
    run_cli(capsys, "simulate", "cut", "--n", "300", "--seed", "4",
            "--swap", "--witness", str(paths[1]))
    a, b = (p.read_text().splitlines() for p in paths)
    flipped = {"R": "G", "G": "R"}
    assert all(y.split()[1] == flipped[x.split()[1]]
               for x, y in zip(a, b))
