import json

import pytest

from actopos.cli import main
from actopos.files import (
    monoid_to_text,
    mset_to_text,
    read_monoid_file,
    read_mset_file,
)
from actopos.mset import regular

from monoids import C2, E2, END2, RZ3

C2_TEXT = "2\n0\n0 1\n1 0\n"
BAD_ASSOC = "3\n0\n0 1 2\n1 0 1\n2 1 0\n"


@pytest.fixture
def c2_file(tmp_path):
    path = tmp_path / "c2.monoid"
    path.write_text(C2_TEXT)
    return path


@pytest.fixture
def end2_file(tmp_path):
    path = tmp_path / "end2.monoid"
    path.write_text(monoid_to_text(END2))
    return path


class TestFiles:
    def test_monoid_roundtrip(self, tmp_path):
        for M in (C2, E2, RZ3, END2):
            path = tmp_path / "m.monoid"
            path.write_text(monoid_to_text(M))
            assert read_monoid_file(path) == M

    def test_mset_roundtrip(self, tmp_path):
        (tmp_path / "m.monoid").write_text(monoid_to_text(RZ3))
        path = tmp_path / "x.mset"
        path.write_text(mset_to_text(regular(RZ3), "m.monoid"))
        X = read_mset_file(path)
        assert X.action == RZ3.table and X.monoid == RZ3


class TestValidateCommand:
    def test_valid(self, c2_file, capsys):
        assert main(["validate", str(c2_file)]) == 0
        assert "valid monoid" in capsys.readouterr().out

    def test_assoc_violation_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.monoid"
        path.write_text(BAD_ASSOC)
        assert main(["validate", str(path)]) == 2
        assert "associativity" in capsys.readouterr().err

    def test_missing_file_exit_1(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.monoid")]) == 1


class TestProfileCommand:
    def test_human(self, c2_file, capsys):
        assert main(["profile", str(c2_file)]) == 0
        out = capsys.readouterr().out
        assert "boolean_atomic" in out and "de_morgan" in out

    def test_json_document(self, end2_file, capsys):
        assert main(["profile", str(end2_file), "--json", "--mset-bound", "3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {"monoid", "profile", "theorems", "bounds", "versions"}
        assert doc["profile"]["local"] is True
        assert doc["profile"]["de_morgan"] is False
        assert any(t["id"] == "de_morgan" for t in doc["theorems"])


class TestStructureCommands:
    def test_omega(self, tmp_path, capsys):
        path = tmp_path / "e2.monoid"
        path.write_text(monoid_to_text(E2))
        assert main(["omega", str(path)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("3 right ideals")

    def test_exp(self, c2_file, tmp_path, capsys):
        p = tmp_path / "p.mset"
        p.write_text(mset_to_text(regular(C2), c2_file.name))
        assert main(["exp", str(c2_file), str(p), str(p)]) == 0
        out = capsys.readouterr().out
        assert "4 equivariant maps" in out

    def test_points(self, end2_file, capsys):
        assert main(["points", str(end2_file), "--bound", "4"]) == 0
        out = capsys.readouterr().out
        assert "initial: " in out
        assert "initial: None" not in out


class TestHarnessCommand:
    def test_writes_outputs(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(
            ["harness", "--max-order", "2", "--mset-bound", "3", "--out", str(out)]
        )
        assert code == 0
        assert out.is_file()
        assert out.with_suffix(".csv").is_file()
        assert out.with_suffix(".png").is_file()
        doc = json.loads(out.read_text())
        assert doc["disagreement_count"] == 0
        assert len(doc["monoids"]) == 3

    def test_json_byte_stable(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for out in (a, b):
            main(
                [
                    "harness",
                    "--max-order",
                    "2",
                    "--mset-bound",
                    "3",
                    "--out",
                    str(out),
                    "--no-figures",
                ]
            )
        assert a.read_bytes() == b.read_bytes()
        assert a.with_suffix(".csv").read_bytes() == b.with_suffix(".csv").read_bytes()


class TestEnumerateCommand:
    def test_roundtrip(self, tmp_path, capsys):
        out_dir = tmp_path / "monoids"
        assert main(["enumerate", "--order", "2", "--out", str(out_dir)]) == 0
        files = sorted(out_dir.glob("*.monoid"))
        assert len(files) == 2
        for path in files:
            M = read_monoid_file(path)
            # file name is the canonical form, and the table re-parses to it
            flat = bytes(v for row in M.table for v in row)
            assert path.stem == flat.hex()
            assert main(["validate", str(path)]) == 0

    def test_cap_exit_4(self, tmp_path):
        assert main(["enumerate", "--order", "20", "--out", str(tmp_path)]) == 4
