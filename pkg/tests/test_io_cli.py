"""Matrix-file interchange and the command-line surface."""

import json
import math

import numpy as np
import pytest

from nclp import (AlgebraElement, BlockAlgebra, FileFormatError,
                  PositiveFunctional, default_eps_rel, lp_norm)
from nclp import io
from nclp.cli import main


def write_diag(path, entries, kind="functional"):
    alg = BlockAlgebra((len(entries),))
    io.save_matrix_file(path, alg.diagonal(entries), kind)
    return path


class TestMatrixFile:
    def test_roundtrip_semantically_identical(self, tmp_path):
        alg = BlockAlgebra((2, 3))
        rng = np.random.default_rng(71)
        x = AlgebraElement(alg, [
            rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            for n in alg.block_dims])
        path = tmp_path / "x.json"
        io.save_matrix_file(path, x, "element")
        back = io.load_matrix_file(path)
        assert back.kind == "element"
        assert (back.element - x).frobenius() == 0.0  # exact float roundtrip

    def test_functional_kind_validates_psd(self, tmp_path):
        path = tmp_path / "bad.json"
        alg = BlockAlgebra((2,))
        doc = io.matrix_document(alg.diagonal([-0.5, 1.0]), "functional")
        path.write_text(json.dumps(doc))
        with pytest.raises(FileFormatError):
            io.load_matrix_file(path)

    def test_functional_kind_validates_hermitian(self, tmp_path):
        path = tmp_path / "bad.json"
        alg = BlockAlgebra((2,))
        x = AlgebraElement(alg, [np.array([[1.0, 1.0], [0.0, 1.0]])])
        path.write_text(json.dumps(io.matrix_document(x, "functional")))
        with pytest.raises(FileFormatError):
            io.load_matrix_file(path)

    def test_rejects_bad_structures(self, tmp_path):
        cases = [
            "[]",
            '{"algebra": {"blocks": [2]}, "kind": "element"}',
            '{"algebra": {"blocks": [0]}, "matrix": {"blocks": []}, '
            '"kind": "element"}',
            '{"algebra": {"blocks": [2]}, "matrix": {"blocks": '
            '[{"re": [[1, 2]], "im": [[0, 0]]}]}, "kind": "element"}',
            '{"algebra": {"blocks": [1]}, "matrix": {"blocks": '
            '[{"re": [[1]], "im": [[0]]}]}, "kind": "wat"}',
        ]
        for i, text in enumerate(cases):
            path = tmp_path / f"bad{i}.json"
            path.write_text(text)
            with pytest.raises(FileFormatError):
                io.load_matrix_file(path)

    def test_rejects_nonfinite_literals(self, tmp_path):
        path = tmp_path / "inf.json"
        path.write_text(
            '{"algebra": {"blocks": [1]}, "matrix": {"blocks": '
            '[{"re": [[Infinity]], "im": [[0]]}]}, "kind": "element"}')
        with pytest.raises(FileFormatError):
            io.load_matrix_file(path)

    def test_report_is_json_with_inf_as_string(self):
        doc = io.build_run_report(config={"seed": 1},
                                  results={"v": math.inf},
                                  residuals={"r": 0.5}, status="ok")
        text = io.dumps_report(doc)
        parsed = json.loads(text)
        assert parsed["results"]["v"] == "inf"
        assert parsed["config"]["log_base"] == "nat"
        assert parsed["config"]["prng"]
        assert parsed["config"]["eigensolver"]


class TestEpsRelEnv:
    def test_default(self, monkeypatch):
        monkeypatch.delenv("NCLP_EPS_REL", raising=False)
        assert default_eps_rel() == 1e-12

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("NCLP_EPS_REL", "1e-9")
        assert default_eps_rel() == 1e-9

    def test_env_invalid(self, monkeypatch):
        monkeypatch.setenv("NCLP_EPS_REL", "-1")
        with pytest.raises(ValueError):
            default_eps_rel()


class TestCliDivergence:
    def test_identical_states(self, tmp_path, capsys):
        psi = write_diag(tmp_path / "psi.json", [0.5, 0.5])
        code = main(["divergence", "--kind", "sandwiched", "--alpha", "2",
                     "--psi", str(psi), "--phi", str(psi)])
        out = capsys.readouterr().out
        assert code == 0
        q_line, d_line = out.strip().splitlines()
        assert abs(float(q_line.split("=", 1)[1]) - 1.0) < 1e-10
        assert abs(float(d_line.split("=", 1)[1])) < 1e-10

    def test_classical_pair_alpha_z(self, tmp_path, capsys):
        psi = write_diag(tmp_path / "psi.json", [0.5, 0.5])
        phi = write_diag(tmp_path / "phi.json", [1 / 3, 2 / 3])
        code = main(["divergence", "--kind", "alpha-z", "--alpha", "2",
                     "--z", "2", "--psi", str(psi), "--phi", str(phi)])
        out = capsys.readouterr().out
        assert code == 0
        q_line, d_line = out.strip().splitlines()
        assert abs(float(q_line.split("=", 1)[1]) - 1.125) < 1e-12
        assert abs(float(d_line.split("=", 1)[1]) - math.log(9 / 8)) < 1e-12

    def test_orthogonal_supports_inf_exit_zero(self, tmp_path, capsys):
        psi = write_diag(tmp_path / "psi.json", [1.0, 0.0])
        phi = write_diag(tmp_path / "phi.json", [0.0, 1.0])
        code = main(["divergence", "--kind", "sandwiched", "--alpha", "2",
                     "--psi", str(psi), "--phi", str(phi)])
        out = capsys.readouterr().out
        assert code == 0
        assert "Q=inf reason=support_violation" in out

    def test_json_output(self, tmp_path, capsys):
        psi = write_diag(tmp_path / "psi.json", [0.5, 0.5])
        phi = write_diag(tmp_path / "phi.json", [1 / 3, 2 / 3])
        code = main(["divergence", "--kind", "alpha-z", "--alpha", "2",
                     "--psi", str(psi), "--phi", str(phi), "--json"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["status"] == "ok"
        assert doc["results"]["Q"]["value"] == pytest.approx(1.125)
        assert doc["config"]["alpha"] == 2.0
        assert doc["config"]["eps_rel"] == 1e-12

    def test_exit_codes(self, tmp_path, capsys):
        psi = write_diag(tmp_path / "psi.json", [0.5, 0.5])
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        # malformed input -> 1
        assert main(["divergence", "--kind", "sandwiched", "--alpha", "2",
                     "--psi", str(bad), "--phi", str(psi)]) == 1
        # missing file -> 1
        assert main(["divergence", "--kind", "sandwiched", "--alpha", "2",
                     "--psi", str(tmp_path / "none.json"),
                     "--phi", str(psi)]) == 1
        # alpha = 1 -> precondition violation -> 2
        assert main(["divergence", "--kind", "sandwiched", "--alpha", "1",
                     "--psi", str(psi), "--phi", str(psi)]) == 2
        # psi = 0 -> 2
        zero = write_diag(tmp_path / "zero.json", [0.0, 0.0])
        assert main(["divergence", "--kind", "sandwiched", "--alpha", "2",
                     "--psi", str(zero), "--phi", str(psi)]) == 2
        # --z with sandwiched -> usage -> 1
        assert main(["divergence", "--kind", "sandwiched", "--alpha", "2",
                     "--z", "2", "--psi", str(psi), "--phi", str(psi)]) == 1
        capsys.readouterr()


class TestCliLpNorm:
    def test_plain_norm(self, tmp_path, capsys):
        x = write_diag(tmp_path / "x.json", [3.0, 4.0], kind="element")
        assert main(["lp-norm", "--p", "2", "--x", str(x)]) == 0
        out = capsys.readouterr().out
        assert abs(float(out.split("=", 1)[1]) - 5.0) < 1e-12

    def test_kosaki_p1_equals_trace_norm(self, tmp_path, capsys):
        x = write_diag(tmp_path / "x.json", [0.25, 0.5], kind="element")
        phi = write_diag(tmp_path / "phi.json", [0.5, 0.5])
        assert main(["lp-norm", "--p", "1", "--x", str(x), "--kosaki",
                     "--phi", str(phi), "--eta", "0.5"]) == 0
        out = capsys.readouterr().out
        assert abs(float(out.split("=", 1)[1]) - 0.75) < 1e-12

    def test_kosaki_state_norm_one(self, tmp_path, capsys):
        phi = write_diag(tmp_path / "phi.json", [0.5, 0.5])
        assert main(["lp-norm", "--p", "3", "--x", str(phi), "--kosaki",
                     "--phi", str(phi), "--eta", "0.25"]) == 0
        out = capsys.readouterr().out
        assert abs(float(out.split("=", 1)[1]) - 1.0) < 1e-11

    def test_conditioning_exit_code(self, tmp_path, capsys):
        x = write_diag(tmp_path / "x.json", [1.0, 1.0], kind="element")
        phi = write_diag(tmp_path / "phi.json", [1.0, 0.0])
        assert main(["lp-norm", "--p", "2", "--x", str(x), "--kosaki",
                     "--phi", str(phi)]) == 3
        capsys.readouterr()


class TestCliTensor:
    def test_identity_product(self, tmp_path, capsys):
        a = write_diag(tmp_path / "a.json", [1.0, 1.0], kind="element")
        out = tmp_path / "prod.json"
        assert main(["tensor", "--left", str(a), "--right", str(a),
                     "-o", str(out)]) == 0
        product = io.load_matrix_file(out)
        assert product.algebra.block_dims == (4,)
        assert np.allclose(product.element.blocks[0], np.eye(4))
        capsys.readouterr()

    def test_diag_example(self, tmp_path, capsys):
        a = write_diag(tmp_path / "a.json", [1.0, 2.0], kind="element")
        b = write_diag(tmp_path / "b.json", [3.0], kind="element")
        out = tmp_path / "prod.json"
        assert main(["tensor", "--left", str(a), "--right", str(b),
                     "-o", str(out)]) == 0
        product = io.load_matrix_file(out)
        assert np.allclose(product.element.blocks[0], np.diag([3.0, 6.0]))
        capsys.readouterr()

    def test_roundtrip_norm_multiplicativity(self, tmp_path, capsys):
        rng = np.random.default_rng(72)
        alg = BlockAlgebra((3,))
        x = AlgebraElement(alg, [rng.standard_normal((3, 3))
                                 + 1j * rng.standard_normal((3, 3))])
        y = AlgebraElement(alg, [rng.standard_normal((3, 3))
                                 + 1j * rng.standard_normal((3, 3))])
        xp, yp = tmp_path / "x.json", tmp_path / "y.json"
        io.save_matrix_file(xp, x, "element")
        io.save_matrix_file(yp, y, "element")
        out = tmp_path / "k.json"
        assert main(["tensor", "--left", str(xp), "--right", str(yp),
                     "-o", str(out)]) == 0
        k = io.load_matrix_file(out).element
        assert lp_norm(k, 2) == pytest.approx(
            lp_norm(x, 2) * lp_norm(y, 2), rel=1e-10)
        capsys.readouterr()

    def test_functional_kind_propagates(self, tmp_path, capsys):
        a = write_diag(tmp_path / "a.json", [0.5, 0.5])
        out = tmp_path / "prod.json"
        assert main(["tensor", "--left", str(a), "--right", str(a),
                     "-o", str(out)]) == 0
        assert io.load_matrix_file(out).kind == "functional"
        capsys.readouterr()


class TestCliSuite:
    def test_suite_runs_green(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["suite", "--name", "theorem6", "--trials", "5",
                     "--seed", "1", "--dims", "2x2,3x2",
                     "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["status"] == "ok"
        assert len(doc["results"]) == 10
        assert doc["config"]["eps_rel"] == 1e-12
        capsys.readouterr()

    def test_unknown_suite_exit_one(self, capsys):
        assert main(["suite", "--name", "nope", "--trials", "1",
                     "--seed", "1"]) == 1
        err = capsys.readouterr().err
        assert "unknown suite" in err

    def test_rerun_byte_identical(self, tmp_path, capsys):
        args = ["suite", "--name", "lemma9", "--trials", "4", "--seed", "9",
                "--dims", "2,3"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        capsys.readouterr()

    def test_tol_override_echoed_and_applied(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["suite", "--name", "theorem6", "--trials", "2",
                     "--seed", "1", "--dims", "2x2",
                     "--tol-override", "relative=0.5", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["config"]["tolerance_overrides"]["relative"] == 0.5
        capsys.readouterr()

    def test_usage_errors_exit_one(self, capsys):
        assert main(["suite", "--name", "theorem6", "--trials", "2",
                     "--seed", "1", "--dims", "bogus"]) == 1
        assert main(["no-such-command"]) == 1
        assert main(["suite"]) == 1  # missing --name
        capsys.readouterr()
