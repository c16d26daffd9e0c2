"""Command-line surface: outputs, JSON reports, exit codes."""

import json

import pytest

from dualseq.cli import main

DOC = """
field 2

seq S01 { interval 0 1 }
seq S00 { interval 0 0 }
seq MRay { interval -inf 0 }

complex Contractible {
  degree 0
  ranks 1 1
  d1 0 [[1]]
}

mor e00 : S00 -> S00 {
  window 0 0
  eps 0 [[1]]
}

mor deep : MRay -> S00 {
  window 0 0
  eps 0 [[1]]
}

diagram D {
  objects S00
  gen e : S00 -> S00 = e00
}

derivation T on D { D e = e00 }
derivation Z on D { }
"""


@pytest.fixture()
def doc_path(tmp_path):
    p = tmp_path / "doc.txt"
    p.write_text(DOC)
    return str(p)


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_human(doc_path, capsys):
    code, out, _ = run(capsys, "decompose", doc_path, "S01")
    assert code == 0
    assert "[0,1] x1" in out
    assert "certificate: OK" in out


def test_cohomology_human(doc_path, capsys):
    code, out, _ = run(capsys, "cohomology", doc_path, "S01")
    assert code == 0
    assert "H^0: 1, H^1: 1" in out


def test_minimize_human(doc_path, capsys):
    code, out, _ = run(capsys, "minimize", doc_path, "Contractible")
    assert code == 0
    assert "minimal model: 0; certificates: OK" in out


def test_classify_human(doc_path, capsys):
    code, out, _ = run(capsys, "classify", doc_path, "S01")
    assert code == 0
    assert "h-projective: yes" in out


def test_hom_human(doc_path, capsys):
    code, out, _ = run(capsys, "hom", doc_path, "S00", "S00")
    assert code == 0
    assert "dim Hom_1: 1" in out and "dim Hom_eps: 1" in out


def test_cone_human(doc_path, capsys):
    code, out, _ = run(capsys, "cone", doc_path, "e00")
    assert code == 0
    assert "[0,1] x1" in out


def test_truncate_human(doc_path, capsys):
    code, out, _ = run(capsys, "truncate", doc_path, "S01", "1")
    assert code == 0
    assert "[1,1] x1" in out


def test_phantom_human(doc_path, capsys):
    code, out, _ = run(capsys, "phantom", doc_path, "e00")
    assert code == 0
    assert "phantom: no" in out


def test_derivation_check_and_solve(doc_path, capsys):
    code, out, _ = run(capsys, "derivation-check", doc_path, "D", "T")
    assert code == 0 and "OK" in out
    code, out, _ = run(capsys, "inner-solve", doc_path, "D", "T")
    assert code == 0 and "not inner" in out
    code, out, _ = run(capsys, "inner-solve", doc_path, "D", "Z")
    assert code == 0 and out.startswith("inner")


def test_json_reports(doc_path, capsys):
    for args, key in [
        (("decompose", doc_path, "S01", "--json"), "barcode"),
        (("classify", doc_path, "S01", "--json"), "h_projective"),
        (("hom", doc_path, "S00", "S00", "--json"), "dim_eps"),
        (("cone", doc_path, "e00", "--json"), "cone"),
        (("minimize", doc_path, "Contractible", "--json"), "minimal"),
        (("cohomology", doc_path, "S01", "--json"), "cohomology"),
        (("phantom", doc_path, "e00", "--json"), "phantom"),
        (("truncate", doc_path, "S01", "0", "--json"), "truncation"),
        (("derivation-check", doc_path, "D", "T", "--json"), "ok"),
        (("inner-solve", doc_path, "D", "Z", "--json"), "theta"),
    ]:
        code, out, _ = run(capsys, *args)
        assert code == 0, args
        data = json.loads(out)
        assert data["schema"] == 1
        assert key in data, args


def test_json_decompose_roundtrips(doc_path, capsys):
    from dualseq.io import barcode_from_json, seq_from_json
    from dualseq.linalg import Field
    code, out, _ = run(capsys, "decompose", doc_path, "S01", "--json")
    data = json.loads(out)
    bc = barcode_from_json(data["barcode"], Field(2))
    assert [str(iv) for iv in bc.intervals] == ["[0,1]"]
    code, out, _ = run(capsys, "truncate", doc_path, "S01", "1", "--json")
    data = json.loads(out)
    t = seq_from_json(data["truncation"], Field(2))
    assert (t.lo, t.hi) == (1, 1)


def test_exit_one_on_validation(doc_path, capsys):
    code, _, err = run(capsys, "decompose", doc_path, "Missing")
    assert code == 1 and "unknown sequence" in err


def test_exit_one_on_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("field 2\nseq A { window 0 1 dims 1 }\n")
    code, _, err = run(capsys, "decompose", str(p), "A")
    assert code == 1 and "line" in err


def test_exit_one_on_missing_file(capsys):
    code, _, err = run(capsys, "decompose", "/nonexistent/x.txt", "A")
    assert code == 1


def test_exit_one_on_bad_flag(doc_path, capsys):
    code, _, err = run(capsys, "decompose", doc_path, "S01", "--wat")
    assert code == 1


def test_exit_two_on_depth_exceeded(doc_path, capsys):
    code, _, err = run(capsys, "phantom", doc_path, "deep", "--depth", "1")
    assert code == 2
    assert "stabilize" in err


def test_depth_flag_default_succeeds(doc_path, capsys):
    code, out, _ = run(capsys, "phantom", doc_path, "deep")
    assert code == 0
    assert "phantom: no" in out
