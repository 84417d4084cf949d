import json

import pytest

from syncmonoid.cli import main
from syncmonoid.formats import parse_graph


@pytest.fixture
def cerny_file(tmp_path):
    path = tmp_path / "cerny4.tm"
    path.write_text("# shift and a merge\n2 3 4 1\n2 2 3 4\n")
    return str(path)


@pytest.fixture
def edge_file(tmp_path):
    path = tmp_path / "edge_n4.g"
    path.write_text("4 1\n1 2\n")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMapCommands:
    def test_sync(self, capsys, cerny_file):
        code, out, _ = run(capsys, ["sync", "--maps", cerny_file])
        assert code == 0
        assert json.loads(out) == {"synchronizing": True}

    def test_gr_null_graph(self, capsys, cerny_file):
        code, out, _ = run(capsys, ["gr", "--maps", cerny_file])
        assert code == 0
        assert out == "4 0\n"

    def test_gr_round_trips(self, capsys, tmp_path):
        path = tmp_path / "perm.tm"
        path.write_text("2 3 1\n")
        code, out, _ = run(capsys, ["gr", "--maps", str(path)])
        assert code == 0
        assert parse_graph(out).num_edges() == 3  # permutations separate everything

    def test_minrank(self, capsys, cerny_file):
        code, out, _ = run(capsys, ["minrank", "--maps", cerny_file])
        assert code == 0
        record = json.loads(out)
        assert record["rank"] == 1
        assert len(record["map"]) == 4

    def test_word_shortest(self, capsys, cerny_file):
        code, out, _ = run(capsys, ["word", "--maps", cerny_file, "--shortest"])
        record = json.loads(out)
        assert code == 0
        assert record["length"] == 9
        assert all(1 <= gi <= 2 for gi in record["word"])

    def test_word_greedy_none_for_permutations(self, capsys, tmp_path):
        path = tmp_path / "perm.tm"
        path.write_text("2 3 1\n")
        code, out, _ = run(capsys, ["word", "--maps", str(path)])
        assert code == 0
        assert json.loads(out) == {"word": None, "length": None}


class TestGraphCommands:
    def test_endos_count(self, capsys, edge_file):
        code, out, _ = run(capsys, ["endos", "--graph", edge_file, "--count-only"])
        assert code == 0
        assert json.loads(out) == {"count": "32"}

    def test_endos_listing_sorted(self, capsys, edge_file):
        code, out, _ = run(capsys, ["endos", "--graph", edge_file])
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 32
        assert lines == sorted(lines)

    def test_hull_round_trip(self, capsys, edge_file):
        code, out, _ = run(capsys, ["hull", "--graph", edge_file])
        assert code == 0
        assert out == "4 1\n1 2\n"

    def test_derived(self, capsys, tmp_path):
        path = tmp_path / "tri_pendant.g"
        path.write_text("4 4\n1 2\n1 3\n2 3\n3 4\n")
        code, out, _ = run(capsys, ["derived", "--graph", str(path)])
        assert code == 0
        assert out == "4 3\n1 2\n1 3\n2 3\n"

    def test_nearcon(self, capsys, edge_file):
        code, out, _ = run(capsys, ["nearcon", "--graph", edge_file])
        assert code == 0
        record = json.loads(out)
        assert record["passes"] is True
        assert record["omega"] == record["chi"] == 2


class TestExperimentsCommands:
    def test_exact(self, capsys):
        code, out, _ = run(capsys, ["exact", "--n", "3", "--perms", "0", "--maps-count", "1"])
        assert code == 0
        assert json.loads(out) == {"exact": "1/3"}

    def test_estimate_deterministic_bytes(self, capsys):
        argv = ["estimate", "--n", "6", "--k", "2", "--trials", "300", "--seed", "9"]
        code1, out1, _ = run(capsys, argv)
        code2, out2, _ = run(capsys, argv)
        assert code1 == code2 == 0
        assert out1 == out2
        record = json.loads(out1)
        assert record["r"] == 0 and record["s"] == 2

    def test_estimate_requires_generator_spec(self, capsys):
        code, _, err = run(capsys, ["estimate", "--n", "5", "--trials", "10", "--seed", "1"])
        assert code == 2
        assert "usage error" in err

    def test_estimate_requires_a_generator(self, capsys):
        code, _, err = run(
            capsys,
            ["estimate", "--n", "5", "--perms", "0", "--maps-count", "0",
             "--trials", "10", "--seed", "1"],
        )
        assert code == 2
        assert "usage error" in err

    def test_sweep_json_lines(self, capsys):
        argv = [
            "sweep", "--n", "4,5", "--perms", "0", "--maps-count", "2",
            "--trials", "200", "--seed", "3",
        ]
        code, out, _ = run(capsys, argv)
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["n"] for r in records] == [4, 5]

    def test_sweep_empty_n_list(self, capsys):
        argv = [
            "sweep", "--n", "", "--perms", "0", "--maps-count", "2",
            "--trials", "10", "--seed", "3",
        ]
        code, out, _ = run(capsys, argv)
        assert code == 0
        assert out == ""

    def test_explore(self, capsys):
        code, out, _ = run(capsys, ["explore", "--n", "3"])
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert len(records) == 8

    def test_explore_rejects_big_n(self, capsys):
        code, _, err = run(capsys, ["explore", "--n", "7"])
        assert code == 2
        code, _, _ = run(capsys, ["explore", "--n", "8", "--canonical"])
        assert code == 2

    def test_dixon(self, capsys):
        code, out, _ = run(capsys, ["dixon", "--max-n", "4"])
        assert code == 0
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["c_n"] for r in rows] == ["3", "26", "426"]
        assert rows[2]["prob_transitive"] == "71/96"


class TestErrorHandling:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["sync", "--maps", "/nonexistent/file.tm"])
        assert code == 1
        assert "error" in err

    def test_malformed_file_reports_line(self, capsys, tmp_path):
        path = tmp_path / "bad.tm"
        path.write_text("1 2\n9 1\n")
        code, _, err = run(capsys, ["sync", "--maps", str(path)])
        assert code == 1
        assert "line 2" in err

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as exc:
            main(["sync"])  # missing --maps
        assert exc.value.code == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        assert "syncmonoid" in capsys.readouterr().out

    def test_out_flag_redirects_machine_output(self, capsys, cerny_file, tmp_path):
        target = tmp_path / "result.json"
        code, out, err = run(capsys, ["sync", "--maps", cerny_file, "--out", str(target)])
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text()) == {"synchronizing": True}
        assert "synchronizing: yes" in err

    def test_stderr_carries_summaries(self, capsys, edge_file):
        _, out, err = run(capsys, ["endos", "--graph", edge_file, "--count-only"])
        assert json.loads(out) == {"count": "32"}
        assert "32 endomorphisms" in err

    def test_non_positive_n_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["estimate", "--n", "0", "--k", "1", "--trials", "5", "--seed", "1"])
        assert exc.value.code == 2
