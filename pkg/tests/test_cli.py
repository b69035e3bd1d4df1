import math
import os

import numpy as np
import pytest

from kgflow.cli import run

from .conftest import QUARTIC_TEXT, SHEAR_TEXT


def read(path):
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def test_expand_stdout(capsys):
    assert run(["expand", "--hamiltonian", "cos(2*pi*x)"]) == 0
    out = capsys.readouterr().out
    assert "# version:" in out
    assert "2 0 1/2 0/1 0" in out


def test_expand_rejects_antiperiodic(capsys):
    assert run(["expand", "--hamiltonian", "sin(pi*x)"]) == 3
    err = capsys.readouterr().err
    assert "not 1-periodic" in err


def test_syntax_error_exit_code(capsys):
    assert run(["expand", "--hamiltonian", "1 +"]) == 3
    assert "position" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        run(["expand", "--no-such-flag"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        run([])


def test_missing_hamiltonian(capsys):
    assert run(["expand"]) == 3
    assert "Hamiltonian" in capsys.readouterr().err


def test_hamiltonian_file(tmp_path, capsys):
    path = tmp_path / "h.txt"
    path.write_text("cos(2*pi*x)\n")
    assert run(["expand", "--hamiltonian-file", str(path)]) == 0
    assert "2 0 1/2" in capsys.readouterr().out


def test_field_zero_hamiltonian(tmp_path):
    out = tmp_path / "field.csv"
    code = run(["field", "--hamiltonian", "0", "--t", "0.3", "--grid", "10",
                "--output", str(out)])
    assert code == 0
    lines = read(out).splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    assert lines[0].startswith("# version:")
    assert any(ln.startswith("# hamiltonian: 0") for ln in header)
    assert any(ln.startswith("# t: 0.3") for ln in header)
    body = [ln for ln in lines if not ln.startswith("#")]
    assert body[0] == "x,y,re_h,im_residual,denom_abs,blowup"
    assert len(body) == 1 + 100
    assert all(row.split(",")[2] == "1" for row in body[1:])
    # row-major, y fastest
    assert body[1].startswith("0,0,")
    assert body[2].startswith("0,0.10000000000000001,")


def test_field_deterministic_across_threads(tmp_path):
    paths = []
    for threads in ("1", "2", "8"):
        path = tmp_path / f"f{threads}.csv"
        code = run(["field", "--hamiltonian", QUARTIC_TEXT, "--order", "3",
                    "--t", "0.1", "--grid", "12", "--threads", threads,
                    "--output", str(path)])
        assert code == 0
        paths.append(path)
    texts = [read(p) for p in paths]
    # metadata echoes the thread count; the data must be byte-identical
    datas = ["\n".join(ln for ln in t.splitlines()
                       if not ln.startswith("# threads")) for t in texts]
    assert datas[0] == datas[1] == datas[2]


def test_repeat_run_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["field", "--hamiltonian", SHEAR_TEXT, "--order", "4", "--t",
            "0.2", "--grid", "8", "--threads", "2"]
    assert run(argv + ["--output", str(a)]) == 0
    assert run(argv + ["--output", str(b)]) == 0
    assert read(a) == read(b)


def test_no_partial_files_on_success(tmp_path):
    out = tmp_path / "field.csv"
    run(["field", "--hamiltonian", "0", "--t", "0.1", "--grid", "4",
         "--output", str(out)])
    assert sorted(os.listdir(tmp_path)) == ["field.csv"]


def test_signmap_pgm_and_csv(tmp_path):
    pgm = tmp_path / "map.pgm"
    csv = tmp_path / "map.csv"
    code = run(["signmap", "--hamiltonian", SHEAR_TEXT, "--order", "6",
                "--t", "0.3", "--grid", "20", "--output", str(pgm),
                "--csv", str(csv)])
    assert code == 0
    lines = read(pgm).splitlines()
    assert lines[0] == "P2"
    assert lines[1].startswith("# version:")
    size_idx = next(i for i, ln in enumerate(lines)
                    if not ln.startswith("#") and i > 0)
    assert lines[size_idx] == "20 20"
    assert lines[size_idx + 1] == "255"
    raster = lines[size_idx + 2:]
    assert len(raster) == 20
    values = {int(v) for row in raster for v in row.split()}
    assert values <= {0, 128, 255}
    assert {0, 255} <= values
    body = [ln for ln in read(csv).splitlines() if not ln.startswith("#")]
    assert body[0] == "x,y,class"
    assert len(body) == 401


def test_errmap_sentinels(tmp_path):
    out = tmp_path / "errmap.csv"
    code = run(["errmap", "--hamiltonian", QUARTIC_TEXT, "--order", "4",
                "--samples-s", "5", "--samples-t", "5", "--t-min", "-1",
                "--t-max", "1", "--output", str(out)])
    assert code == 0
    body = [ln for ln in read(out).splitlines() if not ln.startswith("#")]
    assert body[0] == "s,t,indicator"
    zero_rows = [ln for ln in body[1:] if ln.split(",")[1] == "0"]
    assert zero_rows and all(ln.endswith(",-inf") for ln in zero_rows)


def test_critical_shear(capsys):
    code = run(["critical", "--hamiltonian", SHEAR_TEXT, "--order", "6",
                "--grid", "50", "--direction", "pos"])
    assert code == 0
    value = float(capsys.readouterr().out.strip())
    assert math.isclose(value, 1.0 / (2 * math.pi), rel_tol=5e-3)


def test_critical_no_degeneration(capsys):
    code = run(["critical", "--hamiltonian", "0", "--order", "3",
                "--grid", "10"])
    assert code == 0
    assert "no degeneration in range" in capsys.readouterr().out


def test_flow_shear(capsys):
    code = run(["flow", "--hamiltonian", SHEAR_TEXT, "--x0", "0.3",
                "--y0", "0.8", "--t", "0.7"])
    assert code == 0
    x, y = map(float, capsys.readouterr().out.split())
    assert abs(x - 0.3) < 1e-9
    want_y = (0.8 - 0.7 * math.cos(2 * math.pi * 0.3)) % 1.0
    assert abs(y - want_y) < 1e-9


def test_flow_requires_point(capsys):
    assert run(["flow", "--hamiltonian", "0", "--t", "1"]) == 3


def test_series_dump(tmp_path):
    out = tmp_path / "series.txt"
    code = run(["series", "--hamiltonian", SHEAR_TEXT, "--order", "3",
                "--which", "z", "--output", str(out)])
    assert code == 0
    text = read(out)
    assert "# w_1" in text and "# w_3" in text
    assert "-2 0 0/1 -1/2 0" in text


def test_config_file_merge(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        f"hamiltonian={SHEAR_TEXT}\norder=4\nt=0.1\ngrid=6\n"
    )
    out = tmp_path / "f.csv"
    assert run(["field", "--config", str(cfg), "--output", str(out)]) == 0
    assert "# order: 4" in read(out)
    # explicit flag wins over the config value
    out2 = tmp_path / "f2.csv"
    assert run(["field", "--config", str(cfg), "--order", "2",
                "--output", str(out2)]) == 0
    assert "# order: 2" in read(out2)


def test_config_file_bad_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nonsense=1\n")
    assert run(["expand", "--hamiltonian", "0", "--config", str(cfg)]) == 3


def test_field_requires_t(capsys):
    assert run(["field", "--hamiltonian", "0"]) == 3
    assert "--t" in capsys.readouterr().err


def test_signmap_pgm_orientation(tmp_path):
    # raster rows run over y (downward), columns over x
    pgm = tmp_path / "m.pgm"
    run(["signmap", "--hamiltonian", SHEAR_TEXT, "--order", "6",
         "--t", "0.3", "--grid", "8", "--output", str(pgm)])
    lines = [ln for ln in read(pgm).splitlines()][1:]
    lines = [ln for ln in lines if not ln.startswith("#")][2:]
    grid = np.array([[int(v) for v in row.split()] for row in lines])
    # shear field depends on x only: every raster row is identical
    assert (grid == grid[0]).all()
    # and columns vary (sign changes along x at t=0.3)
    assert len(set(grid[0])) > 1
