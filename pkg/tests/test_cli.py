import json

import pytest

from latt.cli import run


def test_gen_and_con_round_trip(run_cli, tmp_path):
    out = tmp_path / "n5.json"
    dot = tmp_path / "n5.dot"
    code, text, _ = run_cli("gen", "chain:3|chain:4", "--out", out, "--dot", dot)
    assert code == 0 and text.strip() == "n=5 covers=5"
    first = out.read_bytes()
    assert dot.read_text().startswith("digraph")
    code, text, _ = run_cli("con", out, "--shape")
    assert code == 0
    assert text.splitlines()[0] == "count: 5"
    assert text.splitlines()[-1] == "shape: C2 (+) C2^2"
    # load and write again: same bytes
    from latt.lattice import from_json, to_json

    assert (to_json(from_json(first.decode())) + "\n").encode() == first
    code, again, _ = run_cli("gen", "chain:3|chain:4")
    assert again.encode() == first


def test_gen_to_stdout(run_cli):
    code, text, _ = run_cli("gen", "chain:2*chain:2")
    assert code == 0 and json.loads(text) == {"n": 4, "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]}


@pytest.fixture
def c2xc3(run_cli, tmp_path):
    path = tmp_path / "c.json"
    run_cli("gen", "chain:2*chain:3", "--out", path)
    return path


def test_wdc_count(run_cli, c2xc3):
    code, text, _ = run_cli("wdc", c2xc3, "--count")
    assert code == 0 and text.strip() == "delta=3 nabla=3 pairs=9"
    code, text, _ = run_cli("wdc", c2xc3, "--count", "--representable")
    assert text.strip().endswith("representable_delta=3 representable_nabla=3")


def test_wdc_list(run_cli, c2xc3):
    code, text, _ = run_cli("wdc", c2xc3, "--list")
    lines = text.splitlines()
    assert [ln.split(":")[0] for ln in lines] == ["delta[0]", "delta[1]", "delta[2]", "nabla[0]", "nabla[1]", "nabla[2]"]
    assert lines[0] == "delta[0]: 0->1 a1->1 a2->1 a3->1 a4->1 1->0"


def test_con_with_operation_index(run_cli, c2xc3):
    sizes = []
    for i in range(3):
        code, text, _ = run_cli("con", c2xc3, "--wcl", "--delta", i)
        assert code == 0
        sizes.append(int(text.splitlines()[1].split()[1]))
    assert sorted(sizes) == [3, 3, 6]
    code, text, err = run_cli("con", c2xc3, "--wcl", "--delta", 7)
    assert code == 4 and err.startswith("E4:")


def test_con_filters(run_cli, tmp_path):
    path = tmp_path / "c4.json"
    run_cli("gen", "chain:4", "--out", path)
    counts = {}
    for flags in ([], ["--fix0"], ["--fix1"], ["--fix0", "--fix1"]):
        _, text, _ = run_cli("con", path, *flags)
        counts[tuple(flags)] = int(text.splitlines()[0].split()[1])
    assert counts == {(): 8, ("--fix0",): 4, ("--fix1",): 4, ("--fix0", "--fix1"): 2}


def test_con_wdl_and_wdcl(run_cli, c2xc3):
    code, text, _ = run_cli("con", c2xc3, "--wdl", "--delta", 8, "--shape")
    assert code == 0 and "count: 4" in text and text.strip().endswith("shape: C2^2")
    code, text, _ = run_cli("con", c2xc3, "--wdcl")
    assert code == 0 and "count: 3" in text


def test_quot(run_cli, tmp_path):
    path = tmp_path / "c4.json"
    run_cli("gen", "chain:4", "--out", path)
    code, text, _ = run_cli("quot", path, "--collapse", "a2,1", "--wcl")
    assert code == 0 and "size: 4 -> 1" in text
    code, text, _ = run_cli("quot", path, "--collapse", "a2,1")
    lines = text.splitlines()
    assert lines[0] == "classes: {0}{a1}{a2,1}" and lines[1] == "size: 4 -> 3"


def test_fca(run_cli, tmp_path):
    cxt = tmp_path / "c.cxt"
    cxt.write_text("B\n\n3\n3\n\ng1\ng2\ng3\nm1\nm2\nm3\n.XX\nX.X\nXX.\n")
    out = tmp_path / "alg.json"
    code, text, _ = run_cli("fca", cxt, "--algebra", "--out", out)
    assert code == 0 and text.startswith("concepts: 8")
    data = json.loads(out.read_text())
    assert data["n"] == 8 and data["delta"] == [7, 6, 5, 4, 3, 2, 1, 0]


def test_enum(run_cli, tmp_path):
    assert run_cli("enum", "--n", 6, "--count")[1].strip() == "15"
    dump = tmp_path / "l.jsonl"
    code, text, _ = run_cli("enum", "--n", 5, "--dump", dump)
    assert code == 0 and len(dump.read_text().splitlines()) == 5


def test_verify_exit_codes(run_cli, tmp_path):
    report = tmp_path / "r.json"
    code, text, _ = run_cli("verify", "--suite", "lat", "--max-n", 5, "--json", report)
    assert code == 0 and text.startswith("suite lat")
    assert json.loads(report.read_text())["passed"] is True
    code, text, _ = run_cli("verify", "--suite", "quotients", "--max-n", 5)
    assert code == 1 and "FAIL CgW drop (3) gamma" in text


@pytest.mark.parametrize(
    "argv, code",
    [
        (["gen", "chain:"], 2),
        (["frobnicate"], 2),
        (["con", "x.json", "--wcl", "--wdl"], 2),
        (["wdc", "x.json", "--list", "--count"], 2),
        (["con", "/nonexistent/x.json"], 3),
        (["verify", "--suite", "lat", "--max-n", 99], 4),
        (["enum", "--n", 0], 4),
    ],
)
def test_error_codes(run_cli, argv, code):
    got, out, err = run_cli(*argv)
    assert got == code
    assert err.startswith(f"E{code}:") and len(err.strip().splitlines()) == 1


def test_bad_json_and_bad_lattice(run_cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("con", bad)[0] == 3
    notlat = tmp_path / "v.json"
    notlat.write_text(json.dumps({"n": 4, "covers": [[0, 1], [0, 2]]}))
    assert run_cli("con", notlat)[0] == 4
    wrongop = tmp_path / "w.json"
    wrongop.write_text(json.dumps({"n": 3, "covers": [[0, 1], [1, 2]], "delta": [2, 1, 0]}))
    assert run_cli("con", wrongop, "--wcl")[0] == 4


def test_delta_flag_needs_kind(run_cli, c2xc3):
    assert run_cli("con", c2xc3, "--delta", 0)[0] == 2


def test_run_returns_code_without_exiting():
    assert run(["enum", "--n", "3"]) == 0
