import json
import math

import numpy as np

from cyclic6j.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestInfo:
    def test_constants(self, capsys):
        code, out, _ = run_cli(["info", "--N", "5"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["N"] == 5 and doc["P"] == 2
        assert doc["omega_half_power"] == 3
        assert abs(doc["abs_g1"] - math.sqrt(5)) < 1e-12


class TestVerify:
    def test_pass_exit_zero(self, capsys):
        code, out, _ = run_cli(["verify", "g1-norm", "--N", "3", "--samples", "3",
                                "--seed", "7"], capsys)
        assert code == 0
        assert "PASS" in out

    def test_fail_exit_one(self, capsys):
        code, out, _ = run_cli(["verify", "g1-norm", "--N", "3", "--samples", "2",
                                "--seed", "7", "--tol", "1e-30"], capsys)
        assert code == 1
        assert "FAIL" in out

    def test_unknown_relation_usage_error(self, capsys):
        code, _, _ = run_cli(["verify", "no-such-relation", "--N", "3"], capsys)
        assert code == 2

    def test_env_tolerance_override(self, capsys, monkeypatch):
        monkeypatch.setenv("CYCLIC6J_TOL", "1e-30")
        code, _, _ = run_cli(["verify", "g1-norm", "--N", "3", "--samples", "2"], capsys)
        assert code == 1

    def test_deterministic_reports(self, tmp_path, capsys):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        for f in (f1, f2):
            code, _, _ = run_cli(["verify", "ocg-duality", "--N", "3", "--samples", "4",
                                  "--seed", "3", "--format", "json", "--out", str(f)],
                                 capsys)
            assert code == 0
        assert f1.read_bytes() == f2.read_bytes()


class TestSixJ:
    VALUES = ["1.2+0.3j", "0.8-0.2j", "0.9+0.1j", "1.1+0.4j", "1.0-0.3j", "0.7+0.6j"]

    def test_dump_schema(self, tmp_path, capsys):
        out_file = tmp_path / "t.json"
        code, _, _ = run_cli(["sixj", "--N", "3", "--values", *self.VALUES,
                              "--out", str(out_file)], capsys)
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert doc["shape"] == [3, 3, 3, 3]
        assert doc["index_order"] == "gamma,delta,alpha,beta"
        assert len(doc["entries"]) == 81

    def test_roundtrip_bit_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for f in (a, b):
            run_cli(["sixj", "--N", "3", "--values", *self.VALUES, "--out", str(f)],
                    capsys)
        assert a.read_bytes() == b.read_bytes()

    def test_reload_support_and_orthogonality(self, tmp_path, capsys):
        out_file = tmp_path / "c.json"
        code, _, _ = run_cli(["sixj", "--N", "3", "--values", *self.VALUES,
                              "--charges", "1,2", "--out", str(out_file)], capsys)
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert doc["charges"] == {"a": 1, "c": 2}
        entries = np.array([complex(re, im) for re, im in doc["entries"]]).reshape(3, 3, 3, 3)
        for ga in range(3):
            for de in range(3):
                for be in range(3):
                    if (ga + de - be) % 3 != 0:
                        assert np.all(entries[ga, de, :, be] == 0)
        # reloaded tensor reproduces the orthogonality residual
        inv_doc = json.loads(out_file.read_text())
        run_cli(["sixj", "--N", "3", "--values", *self.VALUES,
                 "--charges", "2,1", "--out", str(out_file)], capsys)
        other = json.loads(out_file.read_text())
        inv = np.array([complex(re, im) for re, im in other["inverse_entries"]]
                       ).reshape(3, 3, 3, 3)
        M = entries.transpose(2, 3, 0, 1).reshape(9, 9)
        Minv = inv.transpose(2, 3, 0, 1).reshape(9, 9)
        prod = M @ Minv
        scale = prod[0, 0]
        assert np.abs(prod - scale * np.eye(9)).max() < 1e-9 * abs(scale)


class TestTetraEval:
    def _doc(self):
        return {
            "orientation": 1,
            "vertex_order": [0, 1, 2, 3],
            "cocycle": {
                "e01": {"t": [1.1, 0.2], "x": [0.7, 0.4]},
                "e12": {"t": [0.9, -0.3], "x": [1.2, 0.1]},
                "e23": {"t": [1.0, 0.5], "x": [-0.6, 0.8]},
            },
            "charges": {"e01": 0, "e12": 0, "e23": 0, "e02": 1, "e13": 1, "e03": 0},
            "state": [1, 1, 0, 1],
            "root_branches": {},
        }

    def test_eval(self, tmp_path, capsys):
        f = tmp_path / "tet.json"
        f.write_text(json.dumps(self._doc()))
        code, out, _ = run_cli(["tetra-eval", str(f), "--N", "3", "--charged"], capsys)
        assert code == 0
        doc = json.loads(out)
        assert complex(*doc["xi"]) != 0
        assert doc["diagnostics"]["psi_multiplicativity"] < 1e-10

    def test_structural_zero(self, tmp_path, capsys):
        d = self._doc()
        d["state"] = [1, 0, 0, 1]
        f = tmp_path / "tet.json"
        f.write_text(json.dumps(d))
        code, out, _ = run_cli(["tetra-eval", str(f), "--N", "3"], capsys)
        assert code == 0
        assert complex(*json.loads(out)["xi"]) == 0

    def test_malformed_charges_named_face(self, tmp_path, capsys):
        d = self._doc()
        d["charges"]["e03"] = 7
        f = tmp_path / "tet.json"
        f.write_text(json.dumps(d))
        code, _, err = run_cli(["tetra-eval", str(f), "--N", "3", "--charged"], capsys)
        assert code == 2
        assert "face f" in err
