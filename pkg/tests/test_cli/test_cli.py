"""Tests for the reptype command line."""

import io
import json

import pytest

from reptype.cli import build_parser, main


@pytest.fixture
def write_doc(tmp_path):
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return _write


class TestNumbers:
    def test_rho(self, capsys):
        assert main(["rho", "5", "2", "1"]) == 0
        assert capsys.readouterr().out == "4\n"

    def test_mu_needs_three(self):
        with pytest.raises(SystemExit) as exc:
            main(["mu", "1", "1"])
        assert exc.value.code == 2

    def test_triangle(self, capsys):
        assert main(["triangle", "2", "3", "5"]) == 0
        assert capsys.readouterr().out == "120\n"

    def test_bad_number(self, capsys):
        assert main(["rho", "minus-one"]) == 2
        assert capsys.readouterr().err.startswith("error: ")


class TestRelations:
    def test_p_decimal(self, capsys, write_doc):
        path = write_doc("nhat.json", {"kind": "relation", "matrix": ["1101", "0100", "0011", "0001"]})
        assert main(["p", path, "--decimal"]) == 0
        assert capsys.readouterr().out == "P = 12/5 (2.4)\n"

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO('{"kind": "relation", "matrix": ["1"]}'))
        assert main(["norm", "-"]) == 0
        assert capsys.readouterr().out == "norm = 1\nP = 1\n"

    def test_missing_file(self, capsys, tmp_path):
        assert main(["norm", str(tmp_path / "absent.json")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        assert main(["norm", str(path)]) == 2


class TestClassify:
    def test_tame(self, capsys, write_doc):
        path = write_doc("k1.json", {"kind": "poset", "n": 4})
        assert main(["classify", "poset", path]) == 0
        assert capsys.readouterr().out == "Tame; rho = 4\n"

    def test_wild_exit_code(self, write_doc):
        path = write_doc("n0.json", {"kind": "poset", "n": 5})
        assert main(["classify", "poset", path]) == 1

    def test_kind_mismatch(self, capsys, write_doc):
        path = write_doc("k1.json", {"kind": "poset", "n": 4})
        assert main(["classify", "graph", path]) == 2
        assert "expected graph" in capsys.readouterr().err

    def test_cap_exit_code(self, write_doc):
        path = write_doc("big.json", {"kind": "poset", "n": 6})
        assert main(["classify", "poset", path, "--cap", "5"]) == 3

    def test_dyadic_flags(self, capsys, write_doc):
        doc = {
            "kind": "dyadic",
            "n": 6,
            "covers": [[0, 1], [1, 2], [2, 3], [4, 5]],
            "labels": ["x1", "x2", "x3", "x4", "c1", "c2"],
            "classes": [[0, 2], [1, 3]],
            "pair_classes": [[[0, 1], [2, 3]]],
        }
        path = write_doc("equipped.json", doc)
        assert main(["classify", "dyadic", path]) == 1
        assert "reference case 2" in capsys.readouterr().out
        assert main(["classify", "dyadic", path, "--condA-scope", "long"]) == 0

    def test_graph(self, capsys, write_doc):
        doc = {"kind": "graph", "edges": [{"ends": ["a", "b"], "f": 4}]}
        path = write_doc("b2.json", doc)
        assert main(["classify", "graph", path, "--mode", "coxeter"]) == 0
        assert capsys.readouterr().out.startswith("finite type B2")


class TestReferenceCommands:
    def test_catalog(self, capsys):
        assert main(["catalog", "II", "--bound", "3"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("list II: Extended Dynkin schemes")
        assert "~A0: 1 vertices" in out

    def test_mu4_cases(self, capsys):
        assert main(["mu4-cases"]) == 0
        assert "case 17: found" in capsys.readouterr().out

    def test_verify_faithful(self, capsys):
        assert main(["verify-faithful", "--max-n", "3"]) == 0
        assert "n = 3: 3 connected posets" in capsys.readouterr().out

    def test_output_is_deterministic(self, capsys, write_doc):
        path = write_doc("chain.json", {"kind": "relation", "n": 2, "pairs": [[0, 0], [1, 1], [0, 1]]})
        main(["norm", path, "--witness"])
        first = capsys.readouterr().out
        main(["norm", path, "--witness"])
        assert capsys.readouterr().out == first


class TestParser:
    def test_unknown_kind(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["classify", "triadic", "x.json"])

    def test_defaults(self):
        args = build_parser().parse_args(["catalog", "I"])
        assert args.bound == 8
        assert args.mode == "integral"
