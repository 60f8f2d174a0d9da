import json
import subprocess
import sys

import pytest

BIN = [sys.executable, "-m", "combench.cli"]


def run(*argv, expect=0):
    proc = subprocess.run(BIN + list(argv), capture_output=True, text=True)
    assert proc.returncode == expect, proc.stdout + proc.stderr
    return proc.stdout


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def c6(tmp_path):
    return write(tmp_path, "c6.json", {
        "n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)]})


class TestContracts:
    def test_generate_deterministic_bytes(self, tmp_path):
        argv = ["graph", "generate", "--kind", "random_er",
                "--params", '{"n": 8, "p": 0.4}']
        assert run(*argv) == run(*argv)

    def test_malformed_json_is_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        out = run("tda", "vr", "--graph", str(bad), expect=1)
        assert json.loads(out)["code"] == "ParseError"

    def test_domain_error_json(self, tmp_path):
        h = write(tmp_path, "h.json",
                  {"n": 4, "s": 0, "t": 3, "edges": [[0, 1, 2, 3]]})
        w = write(tmp_path, "w.json", {"w": [0, 1, 5]})
        out = run("hypercut", "solve", "--hypergraph", h, "--weights", w,
                  "--method", "gadget", expect=1)
        payload = json.loads(out)
        assert payload["code"] == "WeightOutOfRange"
        assert "context" in payload and "message" in payload

    def test_usage_error_exit_2(self):
        proc = subprocess.run(BIN + ["hypercut", "solve"],
                              capture_output=True, text=True)
        assert proc.returncode == 2

    def test_validate_only(self, c6):
        out = run("--validate-only", "tda", "vr", "--graph", c6)
        assert json.loads(out) == {"valid": True}


class TestSubcommands:
    def test_vr_diagram(self, c6):
        pts = json.loads(run("tda", "vr", "--graph", c6))
        ones = [p for p in pts if p["dim"] == 1]
        assert ones == [{"dim": 1, "birth": 1.0, "death": 2.0}]

    def test_witness_diagram(self, tmp_path):
        c8 = write(tmp_path, "c8.json",
                   {"n": 8, "edges": [[i, (i + 1) % 8] for i in range(8)]})
        pts = json.loads(run("tda", "witness", "--graph", c8,
                             "--landmarks", "0,2,4,6", "--witnesses", "all",
                             "--alpha", "2"))
        assert any(p["dim"] == 1 for p in pts)

    def test_bottleneck(self, tmp_path):
        pd1 = write(tmp_path, "pd1.json",
                    [{"dim": 1, "birth": 1.0, "death": 2.0}])
        pd2 = write(tmp_path, "pd2.json",
                    [{"dim": 1, "birth": 1.0, "death": 3.0}])
        out = json.loads(run("tda", "bottleneck", "--pd1", pd1, "--pd2", pd2,
                             "--dim", "1"))
        assert out["bottleneck"] == 1.0

    def test_zf_check_and_min(self, c6):
        verdict = json.loads(run("zf", "check", "--graph", c6, "--set", "0,1",
                                 "--k", "0"))
        assert verdict == {"set": [0, 1], "size": 2, "verified": True}
        best = json.loads(run("zf", "min", "--graph", c6, "--k", "0"))
        assert best["size"] == 2 and best["verified"]
        leaky = json.loads(run("zf", "check", "--graph", c6, "--set", "0,1",
                               "--k", "2", "--leaky"))
        assert leaky["verified"] is False

    def test_hypercut_methods_agree(self, tmp_path):
        h = write(tmp_path, "h.json", {
            "n": 6, "s": 0, "t": 5,
            "edges": [[0, 1, 2, 5], [1, 2, 3, 4], [0, 3, 4, 5]]})
        w = write(tmp_path, "w.json", {"w": [0, 1, 1.5]})
        brute = json.loads(run("hypercut", "solve", "--hypergraph", h,
                               "--weights", w, "--method", "brute"))
        gadget = json.loads(run("hypercut", "solve", "--hypergraph", h,
                                "--weights", w, "--method", "gadget"))
        assert brute["value"] == gadget["value"]

    def test_elim_and_jacobian(self, tmp_path):
        dag = write(tmp_path, "dag.json", {
            "n": 1, "p": 1, "m": 1, "arcs": [[1, 2, 2.0], [2, 3, 3.0]]})
        jac = json.loads(run("elim", "jacobian", "--dag", dag))
        assert jac == {"jacobian": [[6.0]]}
        steps = write(tmp_path, "steps.json", [["vertex", 2]])
        res = json.loads(run("elim", "run", "--dag", dag, "--steps", steps))
        assert res["complete"] and res["cost"] == 1
        assert res["jacobian"] == [[6.0]]
        opt = json.loads(run("elim", "optimal", "--dag", dag, "--mode", "edge"))
        assert opt["cost"] == 1

    def test_reversal_pipeline(self, tmp_path):
        dag = write(tmp_path, "dag.json", {
            "n": 1, "p": 3, "m": 1,
            "arcs": [[1, 2], [2, 3], [3, 4], [4, 5]]})
        sched = json.loads(run("reversal", "schedule", "--dag", dag,
                               "--policy", "recompute_all"))
        assert sched["computational_cost"] == 3
        sfile = write(tmp_path, "sched.json", sched["schedule"])
        sim = json.loads(run("reversal", "simulate", "--dag", dag,
                             "--schedule", sfile, "--memory", "1"))
        assert sim["computational_cost"] == 3
        rev = json.loads(run("reversal", "revolve", "--p", "10",
                             "--checkpoints", "2"))
        assert rev["computational_cost"] == rev["dp_cost"]
        opt = json.loads(run("reversal", "optimal", "--dag", dag,
                             "--memory", "1"))
        assert opt["cost"] == 3

    def test_async_experiment_csv(self, tmp_path):
        cfg = write(tmp_path, "cfg.json", {
            "ensemble": "goe", "block_jacobi": True, "n": 8, "ell": 4,
            "trials": 2, "seed": 3,
            "delay_pattern": {"kind": "uniform", "value": 1},
            "c_grid": [0.25, 0.5]})
        out_path = tmp_path / "rows.csv"
        run("--out", str(out_path), "async", "experiment", "--config", cfg)
        lines = out_path.read_text().splitlines()
        assert lines[0] == "ensemble,jacobi,trial,seed,c,rho,bound"
        assert len(lines) == 1 + 2 * 2
        again = tmp_path / "rows2.csv"
        run("--out", str(again), "async", "experiment", "--config", cfg)
        assert out_path.read_bytes() == again.read_bytes()
        workers = tmp_path / "rows3.csv"
        run("--workers", "3", "--out", str(workers),
            "async", "experiment", "--config", cfg)
        assert out_path.read_bytes() == workers.read_bytes()

    def test_express_methods(self, tmp_path):
        ident = json.loads(run("express", "prob", "--n", "2", "--t", "2",
                               "--method", "identity"))
        assert ident == {"num": 9, "den": 64}
        a = write(tmp_path, "a.json", ["10", "01"])
        brute = json.loads(run("express", "prob", "--A", a, "--t", "2",
                               "--method", "brute"))
        assert brute == ident
        phases = json.loads(run("express", "phases", "--A", a, "--theta",
                                write(tmp_path, "th.json", [0.5, 0.5])))
        assert phases["phases"] == [1.0, 0.0, 0.0, -1.0]

    def test_epsnet(self, tmp_path):
        c8 = write(tmp_path, "c8.json",
                   {"n": 8, "edges": [[i, (i + 1) % 8] for i in range(8)]})
        out = json.loads(run("--seed", "0", "graph", "epsnet", "--graph", c8,
                             "--epsilon", "2"))
        assert out["landmarks"] == [0, 4] and out["is_net"]
