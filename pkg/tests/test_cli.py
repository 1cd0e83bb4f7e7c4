import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest
import yaml

from acgraph.cli import main
from test_config import P_MATRIX


@pytest.fixture
def config(tmp_path):
    def write(**extra):
        doc = {"n": 1000, "seed": 3, "retry": 200, "P": {"J": 4, "K": 4, "matrix": P_MATRIX}}
        doc.update(extra)
        path = tmp_path / f"cfg{len(list(tmp_path.iterdir()))}.yaml"
        path.write_text(yaml.safe_dump(doc))
        return str(path)

    return write


def test_generate_writes_outputs(tmp_path, config):
    cfg = config(Q={"rho": 0.8}, erase=True)
    e, v, s = (str(tmp_path / name) for name in ("e.csv", "v.csv", "s.json"))
    assert main(["generate", "--config", cfg, "--out-edges", e, "--out-nodes", v,
                 "--out-stats", s]) == 0
    doc = json.loads(open(s).read())
    assert doc["accepted"] is True and doc["n"] == 1000
    assert doc["edges_after"] <= doc["edges_before"]

    # stats on the exported files reproduces the summary of the erased graph
    s2 = str(tmp_path / "s2.json")
    assert main(["stats", "--config", cfg, "--in-edges", e, "--in-nodes", v,
                 "--out-stats", s2]) == 0
    doc2 = json.loads(open(s2).read())
    assert doc2["p_hat"] == doc["p_hat"] and doc2["rho_hat"] == doc["rho_hat"]


def test_generate_is_byte_deterministic(tmp_path, config):
    cfg = config(Q={"copula": "mixture", "lambda": 0.25})
    outputs = []
    for tag in "ab":
        paths = [str(tmp_path / f"{tag}.{ext}") for ext in ("graphml", "json")]
        assert main(["generate", "--config", cfg, "--format", "graphml",
                     "--out-edges", paths[0], "--out-stats", paths[1]]) == 0
        outputs.append([open(p, "rb").read() for p in paths])
    assert outputs[0] == outputs[1]


def test_seed_and_rho_overrides(tmp_path, config):
    cfg = config(Q={"rho": 0.0})
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    main(["generate", "--config", cfg, "--out-edges", a, "--seed", "11", "--rho", "0.8"])
    main(["generate", "--config", cfg, "--out-edges", b, "--seed", "12", "--rho", "0.8"])
    assert open(a).read() != open(b).read()


def test_variant_generate(tmp_path, config):
    q = np.zeros((4, 5))
    q[1, 2], q[3, 4] = 1 / 3, 2 / 3
    cfg = config(Qv={"matrix": q.tolist()})
    s = str(tmp_path / "s.json")
    assert main(["variant-generate", "--config", cfg, "--out-stats", s]) == 0
    doc = json.loads(open(s).read())
    assert doc["edge_types"] == "out-out"
    assert {"k", "k_prime", "value"} == set(doc["q_hat"][0])


def test_calibrate(config, capsys):
    assert main(["calibrate", "--config", config(), "--rho", "0.8"]) == 0
    out = capsys.readouterr().out.splitlines()
    lam = float(out[1].split("=")[1])
    assert abs(lam - 2 / 15) < 1e-12
    assert len(out) == 3 + 4


def test_sweep_rows(tmp_path, config):
    out = str(tmp_path / "sweep.csv")
    cfg = config(Q={"rho": 0.8})
    assert main(["sweep", "--config", cfg, "--sizes", "1000", "--reps", "1", "--out", out]) == 0
    rows = list(csv.reader(open(out)))
    assert rows[0] == ["n", "rep", "seed", "rho_hat", "deviation", "accepted", "runtime_seconds"]
    assert len(rows) == 2


@pytest.mark.parametrize(
    "argv_tail, category",
    [
        (["--seed", "-1"], "validation"),
        (["--retry", "0"], "validation"),
        (["--rho", "3"], "distribution"),
        (["--out-edges", "/nonexistent/dir/e.csv"], "io"),
    ],
)
def test_errors_are_categorised(config, capsys, argv_tail, category):
    assert main(["generate", "--config", config(Q={"rho": 0.8}), *argv_tail]) == 2
    assert capsys.readouterr().err.startswith(f"{category}: ")


def test_config_errors(tmp_path, config, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("n: [1,\n")
    assert main(["generate", "--config", str(bad)]) == 2
    assert capsys.readouterr().err.startswith("parse: ")
    assert main(["generate", "--config", config(Q={"rho": 0.8}, n=20)]) == 2
    assert capsys.readouterr().err.startswith("size: ")
    assert main(["generate", "--config", str(tmp_path / "none.yaml")]) == 2
    assert capsys.readouterr().err.startswith("io: ")


def test_module_entry_point(config):
    proc = subprocess.run(
        [sys.executable, "-m", "acgraph", "calibrate", "--config", config(), "--rho", "0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "rho_bounds" in proc.stdout
