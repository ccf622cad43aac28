import numpy as np
import pandas as pd
import pytest
from openpyxl import load_workbook

from phenostruct import laws
from phenostruct.laws import ObservationTable, ShapeError
from phenostruct.utils import CONFIG

TOL = CONFIG["tolerances"]


def _table(law_id, hidden_M, hidden_N, seed=None):
    law = laws.get_law(law_id)
    hidden_M = {k: np.asarray(v, dtype=float) for k, v in hidden_M.items()}
    hidden_N = {k: np.asarray(v, dtype=float) for k, v in hidden_N.items()}
    return ObservationTable(law, laws.observe(law, hidden_M, hidden_N), (hidden_M, hidden_N), seed)


def test_newton_measurements():
    table = _table("newton", {"m": [1.0, 2.0]}, {"F": [3.0, 4.0]})
    assert np.allclose(table.values, [[3.0, 4.0], [1.5, 2.0]])
    assert laws.check_law_relation(table.law, table).max_abs < 1e-12


def test_ohm_measurements():
    table = _table("ohm", {"R": [1.0, 2.0, 3.0]}, {"emf": [10.0, 5.0], "r": [1.0, 2.0]})
    assert np.allclose(table.values, [[5.0, 5 / 3], [10 / 3, 5 / 4], [2.5, 1.0]])
    assert laws.check_law_relation(table.law, table).max_abs < 1e-12


def test_thick_lens_measurement():
    table = _table("thicklens", {"x": [4.0]}, {"F": [2.0], "lam": [0.1], "sigma": [0.1]})
    assert table.values[0, 0] == pytest.approx(7.99 / 2.1)


def test_relation_detects_a_change():
    values = np.array([[3.0, 4.0], [1.5, 2.0]])
    values[0, 0] *= 1.01
    assert not laws.check_law_relation(laws.get_law("newton"), values).passes(TOL["law"])


@pytest.mark.parametrize("law_id", sorted(laws.LAWS))
def test_relation_holds_on_generated_tables(law_id, rng):
    law = laws.get_law(law_id)
    for _ in range(20):
        table = laws.generate_observations(law, (law.cortege[0] + 1, 3), rng)
        assert laws.check_law_relation(law, table).passes(TOL["law"])


@pytest.mark.parametrize("law_id", ["newton", "ohm", "thicklens", "lines"])
def test_one_percent_change_is_seen(law_id, rng):
    law = laws.get_law(law_id)
    for _ in range(20):
        table = laws.generate_observations(law, (law.cortege[0] + 1, 3), rng)
        table.values[1, 1] *= 1.01
        assert laws.check_law_relation(law, table).max_abs > TOL["sensitivity"]


@pytest.mark.parametrize("law_id", sorted(laws.LAWS))
def test_embedding_reproduces_measurements(law_id, rng):
    law = laws.get_law(law_id)
    table = laws.generate_observations(law, (5, 4), rng)
    assert laws.embedding_error(law, table) < TOL["embedding"]


def test_canonical_embedding_of_newton():
    law = laws.get_law("newton")
    emb = laws.canonical_embedding(law)
    assert emb.catalog_id == "two/u/r22"
    assert emb.spec().id == "two/u/r22~scaled"
    values = emb.reproduce({"m": np.array([2.0])}, {"F": np.array([6.0])})
    assert values[0, 0] == pytest.approx(3.0)


def test_table_smaller_than_cortege():
    law = laws.get_law("thicklens")
    with pytest.raises(ShapeError):
        laws.generate_observations(law, (3, 2), np.random.default_rng(0))
    with pytest.raises(ShapeError):
        laws.check_law_relation(law, np.ones((3, 2)))


def test_unknown_law():
    with pytest.raises(ValueError):
        laws.get_law("hooke")


def test_lines_keep_slopes_apart(rng):
    law = laws.get_law("lines")
    table = laws.generate_observations(law, (6, 4), rng)
    hidden_M, hidden_N = table.hidden
    gaps = np.abs(np.tan(hidden_M["phi"])[:, None] - np.tan(hidden_N["theta"])[None, :])
    assert gaps.min() >= 0.1


def test_frames():
    table = _table("ohm", {"R": [1.0, 2.0, 3.0]}, {"emf": [10.0, 5.0], "r": [1.0, 2.0]})
    df = table.to_frame()
    assert df.index.name == "M"
    assert list(df.index) == ["i1", "i2", "i3"]
    assert list(df.columns) == ["a1", "a2"]
    hidden = table.hidden_frame()
    assert list(hidden.columns) == ["set", "index", "parameter", "value"]
    assert len(hidden) == 3 + 2 * 2


def test_csv_export(tmp_path):
    table = _table("newton", {"m": [1.0, 2.0]}, {"F": [3.0, 4.0]}, seed=7)
    out = tmp_path / "out" / "newton.csv"
    laws.save_observations_csv(table, str(out))
    first = out.read_text(encoding="utf-8").splitlines()[0]
    assert first == "# law=newton seed=7 units=m/s²"
    df = pd.read_csv(out, comment="#", index_col="M", encoding="utf-8")
    assert df.shape == (2, 2)
    assert df.loc["i2", "a1"] == pytest.approx(1.5)


def test_xlsx_export(tmp_path):
    table = _table("newton", {"m": [1.0, 2.0]}, {"F": [3.0, 4.0]}, seed=7)
    out = tmp_path / "newton.xlsx"
    laws.save_observations_xlsx(table, str(out))
    wb = load_workbook(out)
    assert wb.sheetnames == ["observations", "hidden"]
    assert wb["hidden"].sheet_state == "hidden"
    assert wb["hidden"].protection.sheet
    assert wb["observations"]["A1"].value == "M"
    assert wb["observations"]["B2"].value == pytest.approx(3.0)
