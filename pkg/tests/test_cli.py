import csv
import io
import json

import pytest

from sturmperm import PermutationPrefix, build_from_word, max_pattern_complexity_bounded
from sturmperm.cli import main

FIB_SIGMA = "(3-1*sqrt(5))/2"
STURM = ["--family", "sturmian", "--sigma", FIB_SIGMA, "--rho", FIB_SIGMA]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_gen_word_fibonacci(capsys):
    code, out, _ = run(capsys, "gen-word", "--variant", "lower", "--sigma", FIB_SIGMA, "--rho", FIB_SIGMA, "--length", "8")
    assert code == 0 and out == "01001010\n"


def test_gen_word_rotation(capsys, tmp_path):
    part = tmp_path / "part.tsv"
    part.write_text(f"0\t1\n{FIB_SIGMA}\t0\n")
    code, out, _ = run(
        capsys, "gen-word", "--kind", "rotation", "--partition", str(part), "--xi", FIB_SIGMA,
        "--x0", "3-sqrt(5)", "--length", "8",
    )
    assert code == 0 and out == "01001010\n"


def test_gen_word_lattice_notice(capsys):
    code, out, err = run(capsys, "gen-word", "--sigma", "1/2", "--length", "4")
    assert code == 0 and out == "0101\n" and "notice" in err


def test_complexity_sturmian(capsys):
    code, out, _ = run(capsys, "complexity", *STURM, "--length", "500", "--kmax", "3", "--max-offset", "20")
    assert code == 0
    table = rows(out)
    assert [int(r["p_star_bounded"]) for r in table] == [1, 2, 3]
    assert table[2]["witness_window"] == "0 1 2"


def test_complexity_tables(tmp_path, capsys):
    out = tmp_path / "tables"
    code, _, _ = run(capsys, "complexity", *STURM, "--length", "300", "--kmax", "2", "--output-dir", str(out))
    assert code == 0
    fa = rows((out / "fa.csv").read_text())
    assert list(fa[0]) == ["n", "f_alpha"]
    assert all(int(r["f_alpha"]) == int(r["n"]) for r in fa)
    assert list(rows((out / "pstar.csv").read_text())[0]) == ["k", "max_offset", "p_star_bounded", "witness_window"]


def test_round_trip_through_file(tmp_path, capsys):
    path = tmp_path / "perm.txt"
    assert main(["gen-perm", *STURM, "--d", "1/5", "--length", "400", "--output", str(path)]) == 0
    capsys.readouterr()
    code, direct, _ = run(capsys, "complexity", *STURM, "--d", "1/5", "--length", "400", "--kmax", "3")
    code2, via_file, _ = run(capsys, "complexity", "--family", "file", "--input", str(path), "--kmax", "3")
    assert code == code2 == 0 and direct == via_file
    prefix = PermutationPrefix.read(path)
    assert prefix.origin["sigma_struct"] == "(-1+1*sqrt(5))/2"
    assert max_pattern_complexity_bounded(prefix, 3, 20)[0] == 3


def test_verify_periodic_example(capsys):
    code, out, _ = run(capsys, "verify", "--family", "periodic-example", "--nparam", "2", "--length", "200")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1
    assert rep["periodicity"]["verdict"] == "periodic" and rep["periodicity"]["period"] == 2


def test_verify_sturmian_threshold(capsys):
    code, out, _ = run(capsys, "verify", *STURM, "--d", "1/5", "--length", "600", "--kmax", "3", "--max-offset", "10")
    rep = json.loads(out)
    assert code == 0 and rep["ok"]
    assert rep["sm"]["S"] == [1, 2]
    assert rep["reconstruction"]["isomorphic"]


def test_verify_fails_exit_1(capsys, tmp_path):
    # a Sturmian prefix analysed with the wrong slope fails the threshold checks
    path = tmp_path / "p.txt"
    assert main(["gen-perm", *STURM, "--d", "1/5", "--length", "600", "--output", str(path)]) == 0
    code, out, _ = run(
        capsys, "verify", "--family", "file", "--input", str(path), "--sigma-struct", FIB_SIGMA,
        "--kmax", "2", "--max-offset", "6",
    )
    assert code == 1 and not json.loads(out)["ok"]


def test_classify_table(capsys):
    code, out, _ = run(capsys, "classify", *STURM, "--d", "1/5", "--length", "3000", "--max-i", "7")
    table = rows(out)
    assert code == 0
    assert [r["class"] for r in table] == ["S", "S", "M", "M", "M", "M", "M"]
    assert table[4]["ratio_exact"] == "(13-5*sqrt(5))/10" and table[4]["ratio_decimal_hint"] == "0.181966"


def test_report_bundle_deterministic(tmp_path, capsys):
    argv = ["report", "--family", "low-complexity", "--length", "600", "--kmax", "3", "--max-offset", "8"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main([*argv, "--output-dir", str(a)]) == 0
    assert main([*argv, "--output-dir", str(b)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == ["fa.csv", "prefix.txt", "pstar.csv", "report.json", "sm.csv"]
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()
    assert not [p for p in a.iterdir() if p.name.startswith(".")]


@pytest.mark.parametrize(
    "argv",
    [
        ["gen-word", "--sigma", "0.38", "--length", "8"],
        ["verify", "--family", "sturmian", "--sigma", "1.5", "--length", "10"],
        ["verify", "--family", "nonsense"],
        ["complexity", "-f", "sturmian"],
        ["verify", "--family", "file", "--input", "/nonexistent/file"],
    ],
)
def test_parse_errors_exit_2(capsys, argv):
    assert main(argv) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--family", "periodic-example", "--length", "100", "--max-period", "80"],
        ["gen-perm", "--family", "sturmian", "--sigma", "1/2", "--x", "1/2", "--y", "1/2", "--length", "8"],
        ["gen-word", "--sigma", "3/2", "--length", "4"],
        ["classify", "--family", "periodic-example", "--length", "100", "--max-i", "2"],
    ],
)
def test_precondition_exit_3(capsys, argv):
    assert main(argv) == 3
