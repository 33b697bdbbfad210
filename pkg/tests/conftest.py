import json
from pathlib import Path

import pytest

from awekit.sizing import Environment, WingParams

CONFIG_PATH = Path(__file__).resolve().parents[1] / "configs" / "example.json"


@pytest.fixture
def example_wing():
    """The 9 m^2 LEI kite used throughout the worked examples."""
    return WingParams(area_m2=9.0, lift_coeff=0.8, efficiency=5.6,
                      wingspan_m=2.7, height_m=1.8)


@pytest.fixture
def example_env():
    return Environment(air_density_kg_m3=1.2, wind_speed_m_s=3.4)


@pytest.fixture
def example_config_dict():
    return json.loads(CONFIG_PATH.read_text())


@pytest.fixture
def example_config_path():
    return CONFIG_PATH
