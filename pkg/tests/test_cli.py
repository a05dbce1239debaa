import json

import pytest

from app.cli import run
from app.cli.common import EXIT_OK, EXIT_PROPERTY_FALSE, EXIT_RESOURCE, EXIT_USAGE
from app.models.graph import load_graph, save_graph
from app.models.schemas import CSV_COLUMNS
from app.service.classify_service import is_AS, is_CFS
from tests.corpus import complete, cycle, dc6


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="g.txt"):
        path = tmp_path / name
        save_graph(g, str(path))
        return str(path)
    return write


class TestGen:
    def test_complete(self, tmp_path, capsys):
        out = tmp_path / "k4.txt"
        assert run(["gen", "--n", "4", "--p", "1.0", "--seed", "0", "--out", str(out)]) == EXIT_OK
        assert out.read_text() == "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
        assert "p = 1.0" in capsys.readouterr().err

    def test_stdout(self, capsys):
        assert run(["gen", "--n", "3", "--p", "0.0"]) == EXIT_OK
        assert capsys.readouterr().out == "3 0\n"

    def test_alpha_rule(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        assert run(["gen", "--n", "1000", "--alpha", "0.8", "--rule", "as", "--seed", "1",
                    "--out", str(out)]) == EXIT_OK
        err = capsys.readouterr().err
        p = float(err.split("p = ")[1].split()[0])
        assert p == pytest.approx(0.152359, abs=1e-6)
        assert load_graph(str(out)).n == 1000

    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            run(["gen", "--n", "60", "--p", "0.2", "--seed", "9", "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()

    @pytest.mark.parametrize("argv", [
        ["gen", "--n", "5", "--p", "1.5"],
        ["gen", "--n", "5"],
        ["gen", "--n", "5", "--p", "0.5", "--alpha", "1.0", "--rule", "as"],
        ["gen", "--n", "5", "--alpha", "1.0"],
        ["gen", "--n", "5", "--p", "0.5", "--seed", "-1"],
        ["gen"],
    ])
    def test_usage_errors(self, argv):
        assert run(argv) == EXIT_USAGE

    def test_memory_cap(self):
        assert run(["gen", "--n", "1000", "--p", "0.5", "--memory-cap", "10"]) == EXIT_RESOURCE


class TestCheck:
    def test_c4_as(self, graph_file, capsys):
        assert run(["check", "--in", graph_file(cycle(4)), "--property", "as"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ends=(0, 2)" in out
        assert "blocks_examined: 1" in out

    def test_json_report(self, graph_file, capsys):
        assert run(["check", "--in", graph_file(cycle(4)), "--property", "as", "--json",
                    "--count-good-blocks"]) == EXIT_OK
        line = capsys.readouterr().out.strip()
        assert "\n" not in line
        report = json.loads(line)
        assert report["schema_version"] == 1
        assert report["witness"]["ends"] == [0, 2]
        assert report["blocks_examined"] == 1
        assert report["good_blocks"] == 2

    def test_dc6(self, graph_file):
        path = graph_file(dc6())
        assert run(["check", "--in", path, "--property", "as"]) == EXIT_PROPERTY_FALSE
        assert run(["check", "--in", path, "--property", "cfs"]) == EXIT_OK
        assert run(["check", "--in", path, "--property", "join"]) == EXIT_PROPERTY_FALSE
        assert run(["check", "--in", path, "--property", "coxeter"]) == EXIT_OK

    def test_dc6_cfs_json(self, graph_file, capsys):
        run(["check", "--in", graph_file(dc6()), "--property", "cfs", "--json"])
        report = json.loads(capsys.readouterr().out)
        assert report["support"] == list(range(12))
        assert report["witness_component"] == [0, 1]

    def test_k5_reason(self, graph_file, capsys):
        assert run(["check", "--in", graph_file(complete(5)), "--property", "cfs", "--json"]) \
            == EXIT_PROPERTY_FALSE
        report = json.loads(capsys.readouterr().out)
        assert report["reason"] == "no induced 4-cycles outside clique factor"

    def test_coxeter_always_succeeds(self, graph_file, capsys):
        assert run(["check", "--in", graph_file(cycle(5)), "--property", "coxeter", "--json"]) \
            == EXIT_OK
        assert json.loads(capsys.readouterr().out)["label"] == "Inconclusive"

    def test_join_bipartition(self, graph_file, capsys):
        assert run(["check", "--in", graph_file(cycle(4)), "--property", "join", "--json"]) \
            == EXIT_OK
        assert json.loads(capsys.readouterr().out)["bipartition"] == [[0, 2], [1, 3]]

    def test_exit_codes_match_library(self, corpus, graph_file):
        for name, g in corpus.items():
            path = graph_file(g, f"{name}.txt")
            expected_as = EXIT_OK if is_AS(g).verdict else EXIT_PROPERTY_FALSE
            expected_cfs = EXIT_OK if is_CFS(g).verdict else EXIT_PROPERTY_FALSE
            assert run(["check", "--in", path, "--property", "as"]) == expected_as
            assert run(["check", "--in", path, "--property", "cfs"]) == expected_cfs

    def test_parse_error(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("4 1\n0 9\n")
        assert run(["check", "--in", str(path), "--property", "as"]) == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert run(["check", "--in", str(tmp_path / "none.txt"), "--property", "as"]) == EXIT_USAGE


class TestSweepCommand:
    def test_inline(self, tmp_path):
        out = tmp_path / "s.csv"
        code = run(["sweep", "--property", "connected", "--rule", "absolute", "--n", "5", "8",
                    "--alpha", "0.5", "--trials", "10", "--seed", "3", "--threads", "1",
                    "--no-progress", "--out", str(out)])
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert [line.split(",")[:3] for line in lines[1:]] == [
            ["CONNECTED", "5", "0.5"], ["CONNECTED", "8", "0.5"]]

    def test_config_file_and_threads(self, tmp_path):
        config = tmp_path / "c.json"
        config.write_text(json.dumps({
            "property": "CFS", "density_rule": "absolute", "n_values": [8],
            "alpha_values": [0.5, 0.6], "trials_per_cell": 6, "base_seed": 1,
            "metrics": ["support_fraction"],
        }))
        outputs = []
        for threads in ("1", "2"):
            out = tmp_path / f"s{threads}.csv"
            assert run(["sweep", "--config", str(config), "--threads", threads,
                        "--no-progress", "--out", str(out)]) == EXIT_OK
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_stdout(self, capsys):
        assert run(["sweep", "--property", "AS", "--rule", "absolute", "--n", "4",
                    "--alpha", "1.0", "--trials", "1", "--threads", "1", "--no-progress"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert lines[1].split(",")[4:7] == ["1", "0", "0.0"]

    def test_missing_inline_args(self):
        assert run(["sweep", "--property", "AS", "--no-progress"]) == EXIT_USAGE

    def test_bad_config(self, tmp_path):
        config = tmp_path / "c.json"
        config.write_text(json.dumps({"property": "AS", "density_rule": "as", "n_values": []}))
        assert run(["sweep", "--config", str(config), "--no-progress"]) == EXIT_USAGE

    def test_resource_error_keeps_partial_rows(self, tmp_path):
        out = tmp_path / "s.csv"
        code = run(["sweep", "--property", "CONNECTED", "--rule", "absolute", "--n", "6", "200000",
                    "--alpha", "0.5", "--trials", "2", "--threads", "1", "--no-progress",
                    "--memory-cap", "100000", "--out", str(out)])
        assert code == EXIT_RESOURCE
        assert len(out.read_text().splitlines()) == 2


class TestThresholds:
    def test_table(self, capsys):
        assert run(["thresholds", "--n", "1000"]) == EXIT_OK
        rows = dict(line.split() for line in capsys.readouterr().out.splitlines())
        assert rows["AS"] == "0.190449"
        assert rows["CfsConjectured"] == "0.0236971"
        assert len(rows) == 5

    def test_domain(self):
        assert run(["thresholds", "--n", "1"]) == EXIT_USAGE
