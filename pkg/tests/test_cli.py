"""End-to-end command tests: golden output, exit codes, determinism."""

import json

import pytest

from nodebalance import parse_instance
from nodebalance.cli import main

K3_100 = "instances/k3_100.txt"
PUZZLE = "instances/puzzle_c6.txt"
P4 = "instances/p4.txt"
TRIPLE = "instances/triple_cover.txt"


def run(capsys, *argv):
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def golden(capsys, expected: dict, *argv):
    """Exit 0 and byte-exact canonical JSON on stdout."""
    rc, out, _ = run(capsys, *argv)
    assert rc == 0
    assert out == json.dumps(expected, indent=2) + "\n"


class TestGolden:
    def test_equate_k3(self, capsys):
        # [DERIVED: oracle-confirmed]
        golden(
            capsys,
            {
                "equatable": True,
                "beta": 1,
                "plan": [{"edge": [1, 2], "count": 1}],
                "certificate": None,
            },
            "equate",
            K3_100,
        )

    def test_equate_puzzle(self, capsys):
        # [KNOWN: the puzzle answer is no]
        golden(
            capsys,
            {
                "equatable": False,
                "beta": None,
                "plan": None,
                "certificate": {"type": "parity"},
            },
            "equate",
            PUZZLE,
        )

    def test_bipartite_p4(self, capsys):
        golden(
            capsys,
            {
                "bipartite": True,
                "L": [0, 2],
                "R": [1, 3],
                "balanced": True,
                "strict_hall": False,
                "hall_witness": [0],
                "witness_assignment": [0, 1, 1, 0],
            },
            "bipartite",
            P4,
        )

    def test_bipartite_non_bipartite(self, capsys):
        golden(
            capsys,
            {
                "bipartite": False,
                "L": None,
                "R": None,
                "balanced": None,
                "strict_hall": None,
                "hall_witness": None,
                "witness_assignment": None,
            },
            "bipartite",
            K3_100,
        )

    def test_classify_k3(self, capsys):
        golden(
            capsys,
            {"universal": True, "reason": None, "witness": None},
            "classify",
            K3_100,
        )

    def test_hyper_equate_divisibility(self, capsys):
        golden(
            capsys,
            {
                "equatable": False,
                "beta": None,
                "plan": None,
                "certificate": {"type": "divisibility"},
            },
            "hyper-equate",
            TRIPLE,
        )

    def test_hyper_equate_on_plain_graph(self, capsys):
        # graph instances are read as 2-uniform hypergraphs
        rc, out, _ = run(capsys, "hyper-equate", K3_100)
        assert rc == 0
        doc = json.loads(out)
        assert doc["equatable"] and doc["beta"] == 1

    def test_oracle_min_beta(self, capsys):
        golden(capsys, {"beta": 1}, "oracle", "min-beta", K3_100)
        golden(capsys, {"beta": 0}, "oracle", "min-beta", P4)  # all weights zero
        golden(capsys, {"beta": None}, "oracle", "min-beta", PUZZLE)

    def test_oracle_backtrack(self, capsys):
        golden(
            capsys,
            {"beta": 1, "feasible": True, "plan": [{"edge": [1, 2], "count": 1}]},
            "oracle",
            "backtrack",
            K3_100,
            "--beta",
            "1",
        )
        golden(
            capsys,
            {"beta": 2, "feasible": False, "plan": None},
            "oracle",
            "backtrack",
            K3_100,
            "--beta",
            "2",
        )


class TestDeterminism:
    def test_repeat_runs_identical(self, capsys):
        rc1, out1, _ = run(capsys, "equate", PUZZLE)
        rc2, out2, _ = run(capsys, "equate", PUZZLE)
        assert (rc1, out1) == (rc2, out2)

    def test_seed_flag_accepted_and_ignored(self, capsys):
        _, plain, _ = run(capsys, "equate", K3_100)
        rc, before, _ = run(capsys, "--seed", "7", "equate", K3_100)
        assert rc == 0 and before == plain
        rc, after, _ = run(capsys, "equate", K3_100, "--seed", "99")
        assert rc == 0 and after == plain


class TestExitCodes:
    def test_missing_file(self, capsys):
        # [TRIVIAL: error path, nothing on stdout]
        rc, out, err = run(capsys, "equate", "nosuchfile.txt")
        assert rc == 2 and out == "" and "error" in err

    def test_graph_command_on_hypergraph(self, capsys):
        rc, out, err = run(capsys, "equate", TRIPLE)
        assert rc == 2 and out == "" and "hyperedge" in err

    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate", K3_100)[0] == 1

    def test_missing_required_option(self, capsys):
        assert run(capsys, "oracle", "backtrack", K3_100)[0] == 1
        assert run(capsys, "reduce", TRIPLE)[0] == 1

    def test_no_subcommand(self, capsys):
        assert run(capsys)[0] == 1

    def test_budget_exit(self, capsys, tmp_path):
        lines = ["graph 21"]
        lines += [f"e {i} {i + 1}" for i in range(20)]
        lines += ["w 0 1"]
        big = tmp_path / "path21.txt"
        big.write_text("\n".join(lines) + "\n")
        rc, out, err = run(capsys, "oracle", "min-beta", str(big))
        assert rc == 3 and out == "" and "limit" in err

    def test_malformed_instance(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("graph 2\ne 0 5\n")
        rc, out, err = run(capsys, "equate", str(bad))
        assert rc == 2 and out == "" and "line 2" in err


class TestVerify:
    def test_roundtrip_result_document(self, capsys, tmp_path):
        rc, out, _ = run(capsys, "equate", K3_100)
        assert rc == 0
        res = tmp_path / "res.json"
        res.write_text(out)
        golden(
            capsys,
            {"ok": True, "value": 1, "steps": 1, "beta": 1},
            "verify",
            K3_100,
            "--plan",
            str(res),
        )

    def test_bare_plan_array(self, capsys, tmp_path):
        plan = tmp_path / "plan.json"
        plan.write_text('[{"edge": [1, 2], "count": 1}]')
        rc, out, _ = run(capsys, "verify", K3_100, "--plan", str(plan))
        assert rc == 0
        doc = json.loads(out)
        assert doc["ok"] and doc["value"] == 1 and doc["beta"] is None

    def test_infeasible_result_rejected(self, capsys, tmp_path):
        rc, out, _ = run(capsys, "equate", PUZZLE)
        res = tmp_path / "res.json"
        res.write_text(out)
        rc, out, err = run(capsys, "verify", PUZZLE, "--plan", str(res))
        assert rc == 2 and out == "" and "no plan" in err

    def test_wrong_plan_not_ok(self, capsys, tmp_path):
        plan = tmp_path / "plan.json"
        plan.write_text('[{"edge": [0, 1], "count": 3}]')
        rc, out, _ = run(capsys, "verify", K3_100, "--plan", str(plan))
        assert rc == 0
        assert not json.loads(out)["ok"]


class TestReduce:
    def test_writes_reduced_instance(self, capsys, tmp_path):
        out_path = tmp_path / "reduced.txt"
        rc, out, _ = run(capsys, "reduce", TRIPLE, "-o", str(out_path))
        assert rc == 0
        doc = json.loads(out)
        assert doc == {"n": 9, "edges": 4, "new_vertices": [6, 7, 8]}
        host, w = parse_instance(out_path.read_text())
        assert host.n == 9 and host.m == 4
        assert host.edges[2:] == ((6, 7), (7, 8))  # gadget edges last
        assert w == (0, 0, 0, 0, 0, 0, 1, 1, 1)

    def test_reduce_accepts_plain_graph(self, capsys, tmp_path):
        out_path = tmp_path / "reduced.txt"
        rc, out, _ = run(capsys, "reduce", K3_100, "-o", str(out_path))
        assert rc == 0
        assert json.loads(out)["n"] == 6
