import json
import os
import shutil

import pytest

from artifact.cli import main


@pytest.fixture
def work(tmp_path, data_dir):
    for name in os.listdir(data_dir):
        shutil.copy(os.path.join(data_dir, name), tmp_path / name)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_bubble(work, capsys):
    code, out, _ = run(capsys, "validate", work / "k33.bub")
    assert code == 0 and out == "ok bubble D=3 V=3\n"


def test_optimal_pairings_of_k33(work, capsys):
    code, out, _ = run(capsys, "pairings", work / "k33.bub", "--optimal")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert all(line.split("\t")[1:] == ["6", "1"] for line in lines)


def test_bijection_round_trip_is_byte_identical(work, capsys):
    g = work / "g.gcg"
    g.write_text("k33.bub\n2 0\n5 4 6 2 1 3\n")
    code, _, _ = run(capsys, "bijection", "fwd", g, "--pairing", "1 3 2", "-o", work / "out.swm")
    assert code == 0
    code, _, _ = run(capsys, "bijection", "inv", work / "out.swm", "-o", work / "back.gcg")
    assert code == 0
    assert (work / "back.gcg").read_bytes() == g.read_bytes()


def test_faces_agree_across_the_bijection(work, capsys):
    g = work / "g.gcg"
    g.write_text("necklace.bub\n2 1\n2 0 4 1\n")
    run(capsys, "bijection", "fwd", g, "--pairing", "1 2", "--template", "edges", "-o", work / "w.swm")
    _, graph_faces, _ = run(capsys, "faces", g)
    _, walsh_faces, _ = run(capsys, "faces", work / "w.swm")
    assert graph_faces == walsh_faces


def test_build_map_boundary(work, capsys):
    code, out, _ = run(capsys, "build-map", work / "k33.bub", "--pairing", "2 1 3", "--reduce", "star")
    assert code == 0
    (work / "m.ecm").write_text(out)
    code, out, _ = run(capsys, "boundary", work / "m.ecm")
    assert code == 0 and out.splitlines()[0] == "3 3"
    code, out, _ = run(capsys, "stats", work / "m.ecm")
    assert code == 0 and out.startswith("part\tE\tV\tF\tk\tg\tl\n")


def test_enumerate_and_max_faces(work, capsys):
    code, out, _ = run(capsys, "--threads", "1", "enumerate", work / "k33.bub", "--copies", "2", "--max-faces")
    assert code == 0
    assert out == "gluings\t720\nconnected\t684\nmax_faces\t9\nmaximizers\t84\n"


def test_enumerate_csv_and_thread_independence(work, capsys):
    run(capsys, "--threads", "1", "enumerate", work / "quartic.bub", "--copies", "2", "--csv", work / "a.csv")
    run(capsys, "--threads", "2", "enumerate", work / "quartic.bub", "--copies", "2", "--csv", work / "b.csv")
    a = (work / "a.csv").read_text()
    assert a == (work / "b.csv").read_text()
    assert a.splitlines()[0] == "mu,connected,F1,F2,F3"
    assert len(a.splitlines()) == 25


def test_dominant(work, capsys):
    w = work / "cell.swm"
    g = work / "cell.gcg"
    g.write_text("k33.bub\n1 0\n1 3 2\n")
    run(capsys, "bijection", "fwd", g, "--pairing", "2 1 3", "-o", w)
    code, out, _ = run(capsys, "dominant", "k33", w)
    assert code == 0 and out.splitlines()[0] == "dominant"
    code, _, err = run(capsys, "dominant", "melonic", w)
    assert code == 2 and err.startswith("error:")


def test_amplitude_text_and_json(work, capsys):
    code, out, _ = run(capsys, "amplitude", work / "quartic.bub", "--pairing", "1 2", "--order", "1")
    assert code == 0
    assert out == "tensor\t-1*N^3 -1*N^2\nmatrix\t-1*N^3 -1*N^2\nequal\ttrue\n"
    code, out, _ = run(capsys, "--json", "amplitude", work / "quartic.bub", "--pairing", "1 2", "--order", "1",
                       "--convention", "literal")
    assert code == 0
    assert json.loads(out)["equal"] is True  # p*V is even here


def test_export_dot(work, capsys):
    code, out, _ = run(capsys, "export-dot", work / "k33.bub", "--covering")
    assert code == 0 and "dashed" in out
    code, out, _ = run(capsys, "export-dot", work / "k33.bub")
    assert code == 0 and out.startswith("graph bubble")


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and out.startswith("selftest ok")


@pytest.mark.parametrize("argv,code", [
    (["validate", "missing.bub"], 1),
    (["validate", "file.txt"], 1),
    (["nonsense"], 1),
    (["pairings"], 1),
])
def test_parse_errors(work, capsys, monkeypatch, argv, code):
    monkeypatch.chdir(work)
    assert run(capsys, *argv)[0] == code


def test_bad_pairing_and_precondition(work, capsys):
    assert run(capsys, "build-map", work / "k33.bub", "--pairing", "1 1 2")[0] == 1
    (work / "bad.bub").write_text("2 2\n1 2\n1 2\n")
    assert run(capsys, "validate", work / "bad.bub")[0] == 2


def test_deterministic_output(work, capsys):
    first = run(capsys, "pairings", work / "meander6.bub")[1]
    assert run(capsys, "pairings", work / "meander6.bub")[1] == first
