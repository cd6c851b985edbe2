import csv
from pathlib import Path

import numpy as np
import pytest

from rkcplots.cli import main
from rkcplots.figures import (
    STABILITY_THRESHOLD,
    FigureSpec,
    load_columns,
    pivot_raster,
    render,
    stable_mask,
)

FIXTURES = Path(__file__).parent / "fixtures"


def spec_for(kind, inputs, out, **kwargs):
    return FigureSpec(inputs=[str(FIXTURES / p) for p in inputs], kind=kind,
                      output=str(out), **kwargs)


class TestRenderKinds:
    def test_heatmap(self, tmp_path):
        out = render(spec_for("heatmap", ["arkc_domain.csv"], tmp_path / "h.png"))
        assert Path(out).stat().st_size > 0

    def test_contour(self, tmp_path):
        out = render(spec_for("contour", ["rkc_domain.csv"], tmp_path / "c.png"))
        assert Path(out).stat().st_size > 0

    def test_timeseries(self, tmp_path):
        out = render(
            spec_for(
                "timeseries",
                ["model_norms.csv", "model_norms_rkc.csv"],
                tmp_path / "t.png",
                labels=["multirate", "single-rate"],
            )
        )
        assert Path(out).stat().st_size > 0

    def test_loglog(self, tmp_path):
        out = render(spec_for("loglog", ["heat_convergence.csv"], tmp_path / "l.png"))
        assert Path(out).stat().st_size > 0

    def test_vector_output(self, tmp_path):
        out = render(spec_for("heatmap", ["arkc_domain.csv"], tmp_path / "h.pdf"))
        assert Path(out).stat().st_size > 0


class TestStableMask:
    def test_agrees_with_csv_classification_cell_for_cell(self):
        path = FIXTURES / "arkc_domain.csv"
        cols = load_columns(str(path), ("z", "w", "rho"))
        _, _, rho = pivot_raster(cols["z"], cols["w"], cols["rho"])
        mask = stable_mask(rho)

        # independent classification straight from the raw rows
        expected = {}
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            next(reader)
            for z, w, r in reader:
                expected[(float(z), float(w))] = float(r) <= 1.0 + STABILITY_THRESHOLD
        z_axis = np.unique(cols["z"])
        w_axis = np.unique(cols["w"])
        for iw, w in enumerate(w_axis):
            for iz, z in enumerate(z_axis):
                assert mask[iw, iz] == expected[(z, w)]
        # the fixture spans both classes
        assert mask.any() and (~mask).any()


class TestValidation:
    def test_rejects_wrong_columns(self, tmp_path):
        with pytest.raises(ValueError, match="expected columns"):
            render(spec_for("heatmap", ["heat_convergence.csv"], tmp_path / "x.png"))

    def test_rejects_unknown_kind(self, tmp_path):
        with pytest.raises(ValueError, match="unknown figure kind"):
            FigureSpec(inputs=["a.csv"], kind="sparkline", output=str(tmp_path / "x.png"))

    def test_rejects_missing_file(self, tmp_path):
        spec = FigureSpec(inputs=[str(tmp_path / "nope.csv")], kind="loglog",
                          output=str(tmp_path / "x.png"))
        with pytest.raises(OSError):
            render(spec)


class TestCli:
    def test_renders_and_inputs_untouched(self, tmp_path):
        src = FIXTURES / "heat_convergence.csv"
        before = src.read_bytes()
        out = tmp_path / "fig.png"
        assert main(["loglog", str(src), str(out)]) == 0
        assert out.stat().st_size > 0
        assert src.read_bytes() == before
        # idempotent re-render
        assert main(["loglog", str(src), str(out)]) == 0

    def test_missing_input_exits_1(self, tmp_path, capsys):
        code = main(["loglog", str(tmp_path / "nope.csv"), str(tmp_path / "fig.png")])
        assert code == 1
        assert "loglog" in capsys.readouterr().err

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["loglog", "only_one_path.csv"])
        assert excinfo.value.code == 2
