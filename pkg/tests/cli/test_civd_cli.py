import json
from pathlib import Path
from textwrap import dedent

from click.testing import CliRunner

from civd.__main__ import main

PLANAR = "0.0,0.0\n1.0,0.2\n0.1,1.1\n5.0,5.0\n5.3,4.8\n"


def _json_lines(output: str) -> list[dict]:
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


def test_build_query_render():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("points.csv").write_text(PLANAR)
        result = runner.invoke(
            main,
            ["build", "-i", "points.csv", "-o", "civd.json", "--beta", "0.45", "--render", "civd.svg"],
        )
        assert result.exit_code == 0
        stats = _json_lines(result.output)[-1]
        assert stats["n"] == 5
        assert stats["model"] == "density"
        assert Path("civd.json").exists()
        assert "evenodd" in Path("civd.svg").read_text()

        result = runner.invoke(main, ["query", "civd.json", "-p", "100,100", "-p", "2.5,2.5"])
        assert result.exit_code == 0
        answers = _json_lines(result.output)
        assert answers[0]["site_kind"] == "all"
        assert answers[0]["site"] == [0, 1, 2, 3, 4]
        assert len(answers) == 2

        result = runner.invoke(main, ["render", "civd.json", "-o", "again.svg"])
        assert result.exit_code == 0
        assert Path("again.svg").read_bytes() == Path("civd.svg").read_bytes()


def test_build_from_config_and_validate():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("points.json").write_text(json.dumps({"dim": 1, "points": [[0.0], [0.3], [0.5], [4.0], [9.0]]}))
        Path("run.toml").write_text(
            dedent(
                """
                [civd]
                model = "vector"
                t = 1
                epsilon = 0.3
                input = "points.json"
                output = "civd.json"
                samples = 40
                """,
            ),
        )
        result = runner.invoke(main, ["build", "-c", "run.toml"])
        assert result.exit_code == 0

        result = runner.invoke(main, ["validate", "civd.json", "-c", "run.toml", "--threads", "2", "-r", "report.json"])
        assert result.exit_code == 0
        summary = _json_lines(result.output)[-1]
        assert summary["pass"] is True
        assert summary["samples"] == 40
        report = json.loads(Path("report.json").read_text())
        assert len(report["reports"]) == 40

        # 1-D diagrams cannot be drawn
        result = runner.invoke(main, ["render", "civd.json", "-o", "civd.svg"])
        assert result.exit_code == 3


def test_input_errors():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("dup.csv").write_text("0,0\n1,1\n0,0\n")
        result = runner.invoke(main, ["build", "-i", "dup.csv", "-o", "civd.json"])
        assert result.exit_code == 3
        assert not Path("civd.json").exists()

        Path("bad.csv").write_text("0,0\n1,x\n")
        result = runner.invoke(main, ["build", "-i", "bad.csv"])
        assert result.exit_code == 3

        result = runner.invoke(main, ["build", "-i", "dup.csv", "--epsilon", "2"])
        assert result.exit_code == 3


def test_log_file():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("points.csv").write_text(PLANAR)
        result = runner.invoke(main, ["--log", "civd.log", "build", "-i", "points.csv", "--beta", "0.45"])
        assert result.exit_code == 0
        assert Path("civd.log").exists()
        assert "Building CIVD of 5 points" in Path("civd.log").read_text()


def test_malformed_arguments_exit_with_input_error():
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("points.csv").write_text(PLANAR)
        assert runner.invoke(main, ["build", "-i", "points.csv", "-o", "civd.json", "--beta", "0.45"]).exit_code == 0

        for point in ["1,x", "nan,0", "1"]:
            result = runner.invoke(main, ["query", "civd.json", "-p", point])
            assert result.exit_code == 3, point
            assert _json_lines(result.output) == []

        assert runner.invoke(main, ["query", "absent.json", "-p", "1,1"]).exit_code == 3
        assert runner.invoke(main, ["render", "absent.json", "-o", "civd.svg"]).exit_code == 3
        assert runner.invoke(main, ["build", "-c", "absent.toml"]).exit_code == 3
        assert runner.invoke(main, ["validate", "civd.json", "-c", "absent.toml"]).exit_code == 3

        Path("inf.csv").write_text("0,0\n1,inf\n")
        assert runner.invoke(main, ["build", "-i", "inf.csv"]).exit_code == 3

        assert runner.invoke(main, ["build", "-i", "points.csv", "--epsilon", "abc"]).exit_code == 3
        assert runner.invoke(main, ["build", "--no-such-flag"]).exit_code == 3
        assert runner.invoke(main, ["query", "civd.json"]).exit_code == 3
