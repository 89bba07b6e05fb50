"""End-to-end tests for the command-line surface.

Every invocation goes through main() in-process; stdin is monkeypatched
for pipe-style tests so outputs of one subcommand feed the next exactly
as they would in a shell.
"""

import io
import json

import pytest

from orderdim.cli import main
from orderdim.homogeneity import Certificate
from orderdim.geometry import PointCloud
from orderdim.poset import FinitePoset, OrderedStructure

RAMSEY_SINGLETON_VALUE = 3  # least r with every 2-coloring of points of
# the r-chain containing a monochromatic 2-chain: pigeonhole at r=3


def run(capsys, monkeypatch, args, stdin_text=None):
    if stdin_text is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin_text))
    code = main(args)
    return code, capsys.readouterr().out


class TestGen:
    def test_crown_round_trips(self, capsys, monkeypatch):
        code, out = run(capsys, monkeypatch, ["gen", "crown", "--n", "3"])
        assert code == 0
        p = FinitePoset.from_json(json.loads(out))
        assert len(p) == 6
        assert p.to_json() == json.loads(out)

    def test_grid_round_trips(self, capsys, monkeypatch):
        code, out = run(
            capsys, monkeypatch, ["gen", "grid", "--m", "2", "--n", "2"]
        )
        assert code == 0
        s = OrderedStructure.from_json(json.loads(out))
        assert s.elements == ("1,1", "1,2", "2,1", "2,2")
        assert s.n == 2

    def test_sample_round_trips_exactly(self, capsys, monkeypatch):
        code, out = run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "3", "--count", "4", "--seed", "9"],
        )
        assert code == 0
        payload = json.loads(out)
        c = PointCloud.from_json(payload)
        assert c.dim == 3 and len(c) == 4
        # fraction strings are canonical, so re-serialization is identity
        assert c.to_json() == payload

    def test_sample_count_zero_is_empty_cloud(self, capsys, monkeypatch):
        code, out = run(
            capsys, monkeypatch, ["gen", "sample", "--n", "2", "--count", "0"]
        )
        assert code == 0
        assert json.loads(out) == {"dim": 2, "points": []}

    def test_symmetric_sample_closed_under_swap(self, capsys, monkeypatch):
        code, out = run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "2", "--count", "2", "--symmetric"],
        )
        assert code == 0
        pts = {tuple(p) for p in json.loads(out)["points"]}
        assert {(b, a) for a, b in pts} == pts

    def test_out_writes_file(self, capsys, monkeypatch, tmp_path):
        target = tmp_path / "crown.json"
        code, out = run(
            capsys,
            monkeypatch,
            ["gen", "crown", "--n", "2", "--out", str(target)],
        )
        assert code == 0
        assert out == ""
        assert FinitePoset.from_json(json.loads(target.read_text()))


class TestPipes:
    def test_crown_dim_is_n(self, capsys, monkeypatch):
        _, crown_json = run(capsys, monkeypatch, ["gen", "crown", "--n", "3"])
        code, out = run(capsys, monkeypatch, ["dim"], stdin_text=crown_json)
        assert code == 0
        payload = json.loads(out)
        assert payload["dim"] == 3
        assert len(payload["witness"]) == 3

    def test_dim_witness_realizes_input(self, capsys, monkeypatch):
        _, crown_json = run(capsys, monkeypatch, ["gen", "crown", "--n", "2"])
        _, out = run(capsys, monkeypatch, ["dim"], stdin_text=crown_json)
        from orderdim.poset import RealizerTuple, is_realizer

        p = FinitePoset.from_json(json.loads(crown_json))
        t = RealizerTuple.from_json(json.loads(out)["witness"])
        assert is_realizer(p, t)

    def test_grid_realizer_census(self, capsys, monkeypatch):
        _, grid_json = run(
            capsys, monkeypatch, ["gen", "grid", "--m", "2", "--n", "2"]
        )
        code, out = run(
            capsys, monkeypatch, ["flow", "realizers"], stdin_text=grid_json
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["census"] == 2
        assert sorted(payload["sigmas"]) == [[0, 1], [1, 0]]

    def test_sample_check_dpo_clean(self, capsys, monkeypatch):
        _, cloud_json = run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "2", "--count", "4", "--seed", "3"],
        )
        code, out = run(capsys, monkeypatch, ["check", "dpo"], stdin_text=cloud_json)
        assert code == 0
        payload = json.loads(out)
        assert payload["universal_ok"]
        # a finite fragment always has empty cells: defects are reported,
        # not treated as failures
        assert isinstance(payload["density_defects"], list)

    def test_symmetric_decompose_exact(self, capsys, monkeypatch):
        _, cloud_json = run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "2", "--count", "2", "--symmetric"],
        )
        code, out = run(
            capsys, monkeypatch, ["flow", "decompose"], stdin_text=cloud_json
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["exact"]
        assert payload["group_size"] == 2
        assert payload["stabilizer_size"] == 1
        assert payload["axis_permutations"] == 2
        sigmas = sorted(f["sigma"] for f in payload["factorizations"])
        assert sigmas == [[0, 1], [1, 0]]


class TestEmbedExtendIso:
    def test_rigid_embed_matches_ranks(self, capsys, monkeypatch):
        _, grid_json = run(
            capsys, monkeypatch, ["gen", "grid", "--m", "2", "--n", "2"]
        )
        code, out = run(capsys, monkeypatch, ["embed", "rigid"], stdin_text=grid_json)
        assert code == 0
        payload = json.loads(out)
        s = OrderedStructure.from_json(json.loads(grid_json))
        for e, coord in zip(payload["elements"], payload["coordinates"]):
            assert coord == [o.rank[e] for o in s.realizers.orders]

    def test_forth_covers_all_elements(self, capsys, monkeypatch, tmp_path):
        struct = tmp_path / "s.json"
        cloud = tmp_path / "c.json"
        run(
            capsys,
            monkeypatch,
            ["gen", "grid", "--m", "2", "--n", "2", "--out", str(struct)],
        )
        run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "2", "--count", "0", "--out", str(cloud)],
        )
        code, out = run(
            capsys,
            monkeypatch,
            ["extend", "forth", "--struct", str(struct), "--cloud", str(cloud)],
        )
        assert code == 0
        payload = json.loads(out)
        assert sorted(payload["mapping"]) == ["1,1", "1,2", "2,1", "2,2"]
        assert len(payload["cloud"]["points"]) == 4

    def test_iso_table_is_bijective(self, capsys, monkeypatch, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "2", "--count", "2", "--seed", "1",
             "--out", str(a)],
        )
        run(
            capsys,
            monkeypatch,
            ["gen", "sample", "--n", "2", "--count", "3", "--seed", "2",
             "--out", str(b)],
        )
        code, out = run(
            capsys,
            monkeypatch,
            ["iso", "bnf", "--a", str(a), "--b", str(b), "--steps", "6"],
        )
        assert code == 0
        payload = json.loads(out)
        lefts = [row[0] for row in payload["table"]]
        rights = [row[1] for row in payload["table"]]
        assert len(set(lefts)) == len(lefts)
        assert len(set(rights)) == len(rights)
        # every original point of both inputs got matched within 6 steps
        assert {"p0", "p1"} <= set(lefts)
        assert {"p0", "p1", "p2"} <= set(rights)


class TestCertify:
    @pytest.mark.parametrize("kind", ["ap", "nonhom", "qnlex", "twohom"])
    def test_certificates_replay(self, capsys, monkeypatch, kind):
        code, out = run(capsys, monkeypatch, ["certify", kind, "--n", "2"])
        assert code == 0
        cert = Certificate.from_json(json.loads(out))
        assert cert.replay()

    def test_nonhom_n3_replays(self, capsys, monkeypatch):
        code, out = run(capsys, monkeypatch, ["certify", "nonhom", "--n", "3"])
        assert code == 0
        assert Certificate.from_json(json.loads(out)).replay()


class TestRamsey:
    def test_singleton_number(self, capsys, monkeypatch):
        code, out = run(
            capsys,
            monkeypatch,
            ["ramsey", "number", "--k", "2", "--l", "1", "--m", "2",
             "--n", "1", "--rmax", "5"],
        )
        assert code == 0
        assert json.loads(out) == {"value": RAMSEY_SINGLETON_VALUE}

    def test_number_none_past_rmax(self, capsys, monkeypatch):
        code, out = run(
            capsys,
            monkeypatch,
            ["ramsey", "number", "--k", "2", "--l", "1", "--m", "2",
             "--n", "1", "--rmax", "2"],
        )
        assert code == 0
        assert json.loads(out) == {"value": None}

    def test_witness_check(self, capsys, monkeypatch, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(
            capsys,
            monkeypatch,
            ["gen", "grid", "--m", "1", "--n", "1", "--out", str(a)],
        )
        run(
            capsys,
            monkeypatch,
            ["gen", "grid", "--m", "2", "--n", "1", "--out", str(b)],
        )
        code, out = run(
            capsys,
            monkeypatch,
            ["ramsey", "witness", "--a", str(a), "--b", str(b),
             "--k", "2", "--r", "3"],
        )
        assert code == 0
        assert json.loads(out) == {"holds": True}


class TestExport:
    def test_dot_edges_are_covers(self, capsys, monkeypatch):
        _, crown_json = run(capsys, monkeypatch, ["gen", "crown", "--n", "3"])
        code, out = run(capsys, monkeypatch, ["export", "dot"], stdin_text=crown_json)
        assert code == 0
        p = FinitePoset.from_json(json.loads(crown_json))
        want = set()
        for a in p.elements:
            for b in p.elements:
                if p.less(a, b) and not any(
                    p.less(a, c) and p.less(c, b) for c in p.elements
                ):
                    want.add((a, b))
        got = set()
        for line in out.splitlines():
            if "->" in line:
                left, right = line.strip().rstrip(";").split(" -> ")
                got.add((left.strip('"'), right.strip('"')))
        assert got == want

    def test_dot_quotes_grid_labels(self, capsys, monkeypatch):
        _, grid_json = run(
            capsys, monkeypatch, ["gen", "grid", "--m", "2", "--n", "2"]
        )
        poset_only = json.loads(grid_json)
        poset_only.pop("orders")
        code, out = run(
            capsys, monkeypatch, ["export", "dot"],
            stdin_text=json.dumps(poset_only),
        )
        assert code == 0
        assert '"1,1" -> "1,2";' in out


class TestDeterminismAndErrors:
    def test_byte_identical_reruns(self, capsys, monkeypatch):
        args = ["gen", "sample", "--n", "3", "--count", "5", "--seed", "7"]
        _, first = run(capsys, monkeypatch, args)
        _, second = run(capsys, monkeypatch, args)
        assert first == second

    def test_dim_deterministic(self, capsys, monkeypatch):
        _, crown_json = run(capsys, monkeypatch, ["gen", "crown", "--n", "3"])
        _, first = run(capsys, monkeypatch, ["dim"], stdin_text=crown_json)
        _, second = run(capsys, monkeypatch, ["dim"], stdin_text=crown_json)
        assert first == second

    def test_library_error_is_single_line_json(self, capsys, monkeypatch):
        bad = json.dumps({"elements": ["a"], "lt": [[True]]})
        code, out = run(capsys, monkeypatch, ["dim"], stdin_text=bad)
        assert code == 1
        assert out.count("\n") == 1
        payload = json.loads(out)
        assert payload["error"] == "ReflexiveViolation"
        assert payload["detail"]

    def test_toosmall_error(self, capsys, monkeypatch):
        code, out = run(
            capsys, monkeypatch, ["gen", "sample", "--n", "1", "--count", "2"]
        )
        assert code == 1
        assert json.loads(out)["error"] == "TooSmall"

    def test_usage_error_exits_two(self, capsys, monkeypatch):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_missing_subcommand_exits_two(self, capsys, monkeypatch):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
        capsys.readouterr()
