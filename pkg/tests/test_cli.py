import json

import numpy as np
import pytest

from cellvar.cli import CSV_HEADER, main
from cellvar.config import ConfigError, load_config


REST_CONFIG = """
# minimal periodic rod at rest
grid.ds = 0.1
grid.dt = 0.05
grid.elements = 8
steps = 6
initial.kind = rest
initial.r0 = 0.0 0.0 0.0
"""

GRAVITY_CONFIG = """
grid.ds = 0.1
grid.dt = 0.05
grid.elements = 8
steps = 5
material.rho = 1.0
material.potential = linear 0 0 -9.8
initial.kind = near-rest
initial.amplitude = 0.01
initial.r0 = 0.0 0.0 1.0
seed = 3
"""


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestCheckComplex:
    @pytest.mark.parametrize("kind", ["cubic", "cfk"])
    def test_passes_small_window(self, kind, capsys):
        assert main(["check-complex", kind, "2", "--window", "2"]) == 0
        out = capsys.readouterr().out
        assert "RESULT: PASS" in out
        assert "axiom audit" in out

    def test_dimension_out_of_range_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["check-complex", "cfk", "5"])
        assert err.value.code == 2

    def test_unknown_kind_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["check-complex", "simplicial", "2"])
        assert err.value.code == 2


class TestSimulateCommand:
    def test_rest_run_writes_outputs(self, tmp_path, capsys):
        cfg = write(tmp_path / "rest.cfg", REST_CONFIG)
        out_dir = tmp_path / "out"
        assert main(["simulate", "--config", cfg, "--out-dir", str(out_dir)]) == 0
        trajectory = (out_dir / "trajectory.csv").read_text().splitlines()
        assert trajectory[0] == CSV_HEADER
        # rest: all positions stay at the origin
        for line in trajectory[1:]:
            fields = line.split(",")
            assert float(fields[4]) == 0.0
            assert float(fields[5]) == 0.0
            assert float(fields[6]) == 0.0
        payload = json.loads((out_dir / "conservation.json").read_text())
        assert all(row["max_el_residual"] <= 1e-10 for row in payload["rows"])
        assert all(all(row["symmetric"]) for row in payload["rows"])
        assert set(payload["rows"][0]) == {
            "diagonal",
            "currents",
            "symmetric",
            "max_el_residual",
        }
        for name in ("conservation_currents.png", "el_residual.png", "trajectory.png"):
            assert (out_dir / name).stat().st_size > 0

    def test_outputs_are_deterministic(self, tmp_path):
        cfg = write(tmp_path / "run.cfg", GRAVITY_CONFIG)
        main(["simulate", "--config", cfg, "--out-dir", str(tmp_path / "a")])
        main(["simulate", "--config", cfg, "--out-dir", str(tmp_path / "b")])
        for name in ("trajectory.csv", "conservation.json"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_gravity_flags_in_report(self, tmp_path):
        cfg = write(tmp_path / "g.cfg", GRAVITY_CONFIG)
        out_dir = tmp_path / "out"
        assert main(["simulate", "--config", cfg, "--out-dir", str(out_dir)]) == 0
        payload = json.loads((out_dir / "conservation.json").read_text())
        assert payload["rows"][0]["symmetric"] == [True, True, False, False, False, True]

    def test_malformed_stiffness_is_reported(self, tmp_path, capsys):
        cfg = write(
            tmp_path / "bad.cfg",
            "grid.elements = 8\nmaterial.C1 = 1 0.5 0 0 1 0 0 0 1\n",
        )
        assert main(["simulate", "--config", cfg, "--out-dir", str(tmp_path)]) == 1
        assert "material.C1 not symmetric" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        code = main(
            ["simulate", "--config", str(tmp_path / "nope.cfg"), "--out-dir", str(tmp_path)]
        )
        assert code == 1
        assert "config error" in capsys.readouterr().err


class TestConfigParsing:
    def test_defaults_fill_in(self, tmp_path):
        cfg = load_config(write(tmp_path / "d.cfg", "grid.elements = 4\n"))
        assert cfg.grid.s_period == 4
        assert cfg.steps == 50
        assert cfg.solver.tol == 1e-12

    def test_unknown_key_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="not a recognized setting"):
            load_config(write(tmp_path / "u.cfg", "grid.dz = 1\n"))

    def test_full_matrix_and_diagonal_forms(self, tmp_path):
        text = "material.C1 = 2 1 0 1 2 0 0 0 3\nmaterial.C2 = 1 2 3\n"
        cfg = load_config(write(tmp_path / "m.cfg", text))
        assert np.allclose(cfg.material.c1(0.0), [[2, 1, 0], [1, 2, 0], [0, 0, 3]])
        assert np.allclose(cfg.material.c2(0.0), np.diag([1.0, 2.0, 3.0]))

    def test_bad_potential_spec(self, tmp_path):
        with pytest.raises(ConfigError, match="material.potential"):
            load_config(write(tmp_path / "p.cfg", "material.potential = quadratic\n"))

    def test_translating_band_from_config(self, tmp_path):
        text = (
            "grid.elements = 4\ninitial.kind = translating\n"
            "initial.velocity = 0.1 0 0\n"
        )
        cfg = load_config(write(tmp_path / "t.cfg", text))
        band = cfg.initial_band()
        v = (1, 0)
        t = cfg.grid.node(v)[1]
        assert np.allclose(band[v][0], [0.1 * t, 0.0, 0.0])

    def test_table_initial_condition_round_trip(self, tmp_path):
        base = load_config(write(tmp_path / "r.cfg", REST_CONFIG.replace("steps = 6", "steps = 0")))
        band = base.initial_band()
        lines = ["i,j,rx,ry,rz,R00,R01,R02,R10,R11,R12,R20,R21,R22"]
        for v in band:
            r, rot = band[v]
            lines.append(
                ",".join(
                    [str(v[0]), str(v[1])]
                    + [repr(float(x)) for x in r]
                    + [repr(float(x)) for x in np.asarray(rot).reshape(-1)]
                )
            )
        table = tmp_path / "band.csv"
        table.write_text("\n".join(lines) + "\n", encoding="utf-8")
        cfg = load_config(
            write(
                tmp_path / "f.cfg",
                f"grid.elements = 8\ninitial.kind = file\ninitial.file = {table}\n",
            )
        )
        loaded = cfg.initial_band()
        assert set(loaded) == set(band)

    def test_table_missing_vertex_rejected(self, tmp_path):
        table = tmp_path / "short.csv"
        table.write_text(
            "i,j,rx,ry,rz,R00,R01,R02,R10,R11,R12,R20,R21,R22\n"
            "0,0,0,0,0,1,0,0,0,1,0,0,0,1\n",
            encoding="utf-8",
        )
        cfg = load_config(
            write(
                tmp_path / "f.cfg",
                f"grid.elements = 4\ninitial.kind = file\ninitial.file = {table}\n",
            )
        )
        with pytest.raises(ConfigError, match="does not cover band vertex"):
            cfg.initial_band()
