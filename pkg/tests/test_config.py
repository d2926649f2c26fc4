import pytest

from bituner.config import Settings, load_config, parse_overrides
from bituner.errors import ConfigError
from bituner.graph.generators import SwapBias
from tests.conftest import FIXTURES


def write(tmp_path, text: str):
    path = tmp_path / "exp.cfg"
    path.write_text(text)
    return path


def test_flat_file(tmp_path):
    cfg = load_config(write(tmp_path, (
        "# demo\n"
        "SYNTHETIC=100:5,100:10\n"
        "coverages=0.5,0.9\n"
        "thresholds=fixed:0.5;normal:0.5,0.2\n"
        "swap_biases=none,disassortative\n"
        "Seed=3\n"
        "directed=true\n"
    )))
    assert cfg.synthetic == ["100:5", "100:10"]
    assert cfg.coverages == [0.5, 0.9]
    assert cfg.thresholds == ["fixed:0.5", "normal:0.5,0.2"]
    assert cfg.swap_biases == [SwapBias.NONE, SwapBias.DISASSORTATIVE]
    assert cfg.seed == 3
    assert cfg.directed is True
    assert cfg.prec == 0.01


def test_overrides_win(tmp_path):
    path = write(tmp_path, "synthetic=100:5\nseed=3\n")
    cfg = load_config(path, parse_overrides(["SEED=8", f"out_dir={tmp_path / 'o'}"]))
    assert cfg.seed == 8
    assert cfg.out_dir == tmp_path / "o"


def test_graph_paths(tmp_path):
    cfg = load_config(overrides={"graphs": str(FIXTURES / "path10.edges")})
    assert cfg.graphs == [FIXTURES / "path10.edges"]
    with pytest.raises(ConfigError) as err:
        load_config(overrides={"graphs": str(tmp_path / "missing.edges")})
    assert err.value.key == "graphs"


def test_forest_params_mapping():
    cfg = load_config(overrides={"synthetic": "50:4", "trees": "7", "max_depth": "3"})
    params = cfg.forest_params
    assert (params.n_trees, params.max_depth, params.max_features) == (7, 3, None)


@pytest.mark.parametrize("key,value", [
    ("coverages", "0.5,1.5"),
    ("thresholds", "gamma:1"),
    ("prec", "0.3"),
    ("bin_width", "0.3"),
    ("synthetic", "5:2"),
    ("trees", "0"),
    ("sample_size", "1"),
])
def test_invalid_values_name_the_key(key, value):
    overrides = {"synthetic": "100:5", key: value}
    with pytest.raises(ConfigError) as err:
        load_config(overrides=overrides)
    if key != "sample_size":
        assert err.value.key == key


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(overrides={"seed": "1"})
    with pytest.raises(ConfigError) as err:
        load_config(overrides={"synthetic": "100:5", "colour": "red"})
    assert "colour" in str(err.value)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")
    with pytest.raises(ConfigError):
        parse_overrides(["seed"])


def test_settings_from_environment(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("BI_TUNE_THREADS", "3")
    monkeypatch.setenv("BI_TUNE_LOG_LEVEL", "DEBUG")
    settings = Settings()
    assert settings.workers == 3
    assert settings.log_level == "DEBUG"


def test_settings_from_dotenv(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("BI_TUNE_THREADS", raising=False)
    (tmp_path / ".env").write_text("BI_TUNE_THREADS=2\n")
    assert Settings().workers == 2
