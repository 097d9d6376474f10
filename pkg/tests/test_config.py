from pathlib import Path

import pytest

from src.mapping import MappingOptions
from src.netlist import CellLibrary, GateKind
from src.utils.config_loader import ConfigLoader
from src.utils.errors import ConfigError


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    for key in ('FLUXMAP_MAPPING__K', 'FLUXMAP_VERIFICATION__ENABLED', 'FLUXMAP_LOG_LEVEL'):
        # recorded so teardown also drops values a .env file loads
        monkeypatch.setenv(key, '')
        monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
    return monkeypatch


def test_defaults(clean_env):
    config = ConfigLoader()
    assert config.get('mapping.k') == 4
    assert config.get('verification.seed') == 2023
    assert config.get('missing.key', 'fallback') == 'fallback'
    assert MappingOptions.from_config(config.section('mapping')) == MappingOptions()
    assert CellLibrary.from_mapping(config.section('cell_library')) == CellLibrary()


def test_yaml_merges_over_defaults(clean_env, tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text("mapping:\n  k: 3\ncell_library:\n  MAJ: 14\n", encoding='utf-8')
    config = ConfigLoader(str(path))
    assert config.get('mapping.k') == 3
    assert config.get('mapping.max_passes') == 8
    assert CellLibrary.from_mapping(config.section('cell_library')).jj(GateKind.MAJ3) == 14


def test_environment_overrides_yaml(clean_env, tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text("mapping:\n  k: 3\n", encoding='utf-8')
    clean_env.setenv('FLUXMAP_MAPPING__K', '2')
    clean_env.setenv('FLUXMAP_VERIFICATION__ENABLED', 'false')
    config = ConfigLoader(str(path))
    assert config.get('mapping.k') == 2
    assert config.get('verification.enabled') is False


def test_dotenv_file(clean_env, tmp_path):
    env_file = tmp_path / 'settings.env'
    env_file.write_text("FLUXMAP_MAPPING__K=3\n", encoding='utf-8')
    config = ConfigLoader(env_path=str(env_file))
    assert config.get('mapping.k') == 3


def test_set_and_required(clean_env):
    config = ConfigLoader()
    config.set('output.json', True)
    config.set('extra.nested.value', 1)
    assert config.get_required('output.json') is True
    assert config.get('extra.nested.value') == 1
    with pytest.raises(ConfigError):
        config.get_required('no.such.key')


@pytest.mark.parametrize('content', [None, "- a list\n- not a mapping\n", "mapping: [unclosed\n"])
def test_bad_config_files(clean_env, tmp_path, content):
    path = tmp_path / 'config.yaml'
    if content is not None:
        path.write_text(content, encoding='utf-8')
    with pytest.raises(ConfigError):
        ConfigLoader(str(path))


def test_shipped_config_is_valid():
    shipped = Path(__file__).resolve().parent.parent / 'config' / 'config.yaml'
    config = ConfigLoader(str(shipped))
    options = MappingOptions.from_config(config.section('mapping'))
    assert options.k == 4
